"""l1 norm of coherence in the path-occupation basis and its pair-wise split.

Every pair of superposed occupation terms carries coherence ``2|c_a c_b|``.
A pair is *local* when the two occupations differ by a single photon moved
between two paths, so the pair factors into a common Fock part times a
one-photon two-path superposition. Any other difference is *collective*.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fock import PhotonState

KIND_THRESHOLD = 1e-12


class PairKind(str, enum.Enum):
    LOCAL = "local"
    COLLECTIVE = "collective"


class StateClass(str, enum.Enum):
    LOCAL_ONLY = "local_only"
    COLLECTIVE_ONLY = "collective_only"
    MIXED = "mixed"
    INCOHERENT = "incoherent"


@dataclass(frozen=True)
class PairwiseEntry:
    index_a: int
    index_b: int
    coherence: float
    kind: PairKind


@dataclass(frozen=True)
class CoherenceReport:
    total: float
    entries: tuple[PairwiseEntry, ...]
    local_sum: float
    collective_sum: float
    state_class: StateClass

    @property
    def local_count(self) -> int:
        return sum(e.kind is PairKind.LOCAL for e in self.entries)

    @property
    def collective_count(self) -> int:
        return len(self.entries) - self.local_count

    def to_dict(self, state: PhotonState | None = None) -> dict:
        entries = []
        for e in sorted(self.entries, key=lambda e: (e.index_a, e.index_b)):
            row = {
                "index_a": e.index_a,
                "index_b": e.index_b,
                "coherence": e.coherence,
                "kind": e.kind.value,
            }
            if state is not None:
                row["occ_a"] = list(state.occupations[e.index_a])
                row["occ_b"] = list(state.occupations[e.index_b])
            entries.append(row)
        return {
            "total": self.total,
            "local_sum": self.local_sum,
            "collective_sum": self.collective_sum,
            "local_count": self.local_count,
            "collective_count": self.collective_count,
            "state_class": self.state_class.value,
            "entries": entries,
        }


def l1_coherence(state: PhotonState) -> float:
    """Sum over ordered pairs i != j of |c_i||c_j|."""
    m = state.moduli
    return float(np.sum(m) ** 2 - np.sum(m**2))


def classify_pair(a: Sequence[int], b: Sequence[int]) -> PairKind:
    if len(a) != len(b):
        raise ValueError("occupation vectors differ in length")
    if sum(a) != sum(b):
        raise ValueError("occupation vectors differ in photon number")
    diff = [y - x for x, y in zip(a, b)]
    if not any(diff):
        raise ValueError("identical occupations do not form a pair")
    nonzero = sorted(d for d in diff if d)
    return PairKind.LOCAL if nonzero == [-1, 1] else PairKind.COLLECTIVE


def decompose(state: PhotonState) -> CoherenceReport:
    moduli = state.moduli
    live = [k for k in range(len(state)) if moduli[k] > 0.0]
    entries = []
    sums = {PairKind.LOCAL: 0.0, PairKind.COLLECTIVE: 0.0}
    for pos, a in enumerate(live):
        for b in live[pos + 1 :]:
            kind = classify_pair(state.occupations[a], state.occupations[b])
            value = 2.0 * float(moduli[a] * moduli[b])
            entries.append(PairwiseEntry(a, b, value, kind))
            sums[kind] += value

    local, collective = sums[PairKind.LOCAL], sums[PairKind.COLLECTIVE]
    has_local, has_collective = local > KIND_THRESHOLD, collective > KIND_THRESHOLD
    if has_local and has_collective:
        cls = StateClass.MIXED
    elif has_local:
        cls = StateClass.LOCAL_ONLY
    elif has_collective:
        cls = StateClass.COLLECTIVE_ONLY
    else:
        cls = StateClass.INCOHERENT
    return CoherenceReport(local + collective, tuple(entries), local, collective, cls)
