"""Fixed-photon-number multi-mode Fock states.

Occupation vectors are plain tuples of ints, ``(n_1, ..., n_L)``. A
:class:`PhotonState` is an immutable superposition of occupation vectors with
a common length (number of paths ``L``) and a common total (photon number
``N``). Terms are kept in lexicographically descending order, so the state
``c1|2,0> + c2|1,1> + c3|0,2>`` stores its amplitudes as ``(c1, c2, c3)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

import numpy as np

Occupation = tuple[int, ...]

TWO_PI = 2.0 * np.pi
NORM_TOLERANCE = 1e-9


class StateError(ValueError):
    """Raised for malformed or inconsistent photon states."""


class LimitExceeded(RuntimeError):
    """A grid or basis would exceed the configured size cap."""


def check_occupation(counts: Sequence[int]) -> Occupation:
    occ = tuple(int(n) for n in counts)
    if any(int(n) != n for n in counts):
        raise StateError(f"occupation {list(counts)} has non-integer entries")
    if len(occ) < 2:
        raise StateError(f"occupation {list(occ)} needs at least two modes")
    if min(occ) < 0:
        raise StateError(f"occupation {list(occ)} has a negative entry")
    if sum(occ) < 1:
        raise StateError(f"occupation {list(occ)} holds no photons")
    return occ


def enumerate_basis(modes: int, photons: int) -> list[Occupation]:
    """All occupation vectors of ``photons`` in ``modes``, descending order."""
    if modes < 2 or photons < 1:
        raise StateError(f"need modes >= 2 and photons >= 1, got ({modes}, {photons})")
    vectors = []
    for placement in combinations_with_replacement(range(modes), photons):
        occ = [0] * modes
        for mode in placement:
            occ[mode] += 1
        vectors.append(tuple(occ))
    return sorted(vectors, reverse=True)


def basis_size(modes: int, photons: int) -> int:
    return math.comb(photons + modes - 1, modes - 1)


def as_phases(values: Iterable[float], modes: int | None = None) -> np.ndarray:
    """Validate a per-mode phase vector and reduce it into ``[0, 2pi)``."""
    phases = np.asarray(list(values), dtype=float)
    if phases.ndim != 1:
        raise StateError("phases must be a flat sequence")
    if modes is not None and phases.size != modes:
        raise StateError(f"expected {modes} phases, got {phases.size}")
    if not np.all(np.isfinite(phases)):
        raise StateError("phases must be finite")
    reduced = np.mod(phases, TWO_PI)
    # np.mod can return exactly 2pi for tiny negative inputs
    reduced[reduced >= TWO_PI] = 0.0
    return reduced


@dataclass(frozen=True, eq=False)
class PhotonState:
    """Normalized pure state of ``photons`` photons spread over ``modes`` paths.

    Build instances with :meth:`from_terms` (merges duplicates, sorts, checks
    the norm) rather than calling the constructor directly.
    """

    modes: int
    photons: int
    occupations: tuple[Occupation, ...]
    amplitudes: np.ndarray

    @classmethod
    def from_terms(
        cls,
        terms: Iterable[tuple[Sequence[int], complex]],
        renormalize: bool = False,
    ) -> "PhotonState":
        merged: dict[Occupation, complex] = {}
        modes = photons = None
        for counts, amp in terms:
            occ = check_occupation(counts)
            if modes is None:
                modes, photons = len(occ), sum(occ)
            elif len(occ) != modes:
                raise StateError(f"occupation {list(occ)} has {len(occ)} modes, expected {modes}")
            elif sum(occ) != photons:
                raise StateError(
                    f"occupation {list(occ)} holds {sum(occ)} photons, expected {photons}"
                )
            amp = complex(amp)
            if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
                raise StateError(f"amplitude of {list(occ)} is not finite")
            merged[occ] = merged.get(occ, 0j) + amp
        if modes is None:
            raise StateError("state has no terms")

        occupations = tuple(sorted(merged, reverse=True))
        amps = np.array([merged[o] for o in occupations], dtype=complex)
        norm = float(np.sum(np.abs(amps) ** 2))
        if norm == 0.0:
            raise StateError("state has no nonzero amplitude")
        if renormalize:
            amps = amps / math.sqrt(norm)
        elif abs(norm - 1.0) > NORM_TOLERANCE:
            raise StateError(f"state norm is {norm!r}, deviates from 1 by more than {NORM_TOLERANCE}")
        amps.setflags(write=False)
        return cls(modes, photons, occupations, amps)

    @classmethod
    def from_vector(
        cls, modes: int, photons: int, vector: Sequence[complex], renormalize: bool = False
    ) -> "PhotonState":
        """State whose amplitudes follow :func:`enumerate_basis` order."""
        basis = enumerate_basis(modes, photons)
        vector = np.asarray(vector, dtype=complex)
        if vector.shape != (len(basis),):
            raise StateError(f"expected {len(basis)} amplitudes, got shape {vector.shape}")
        return cls.from_terms(zip(basis, vector), renormalize=renormalize)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.amplitudes)

    @property
    def arguments(self) -> np.ndarray:
        return np.angle(self.amplitudes)

    def __len__(self) -> int:
        return len(self.occupations)

    def terms(self) -> list[tuple[Occupation, complex]]:
        return [(occ, complex(c)) for occ, c in zip(self.occupations, self.amplitudes)]

    def amplitude(self, occ: Sequence[int]) -> complex:
        try:
            return complex(self.amplitudes[self.occupations.index(tuple(occ))])
        except ValueError:
            return 0j

    def dense_vector(self) -> np.ndarray:
        """Amplitudes over the full basis of :func:`enumerate_basis`."""
        lookup = dict(zip(self.occupations, self.amplitudes))
        return np.array([lookup.get(o, 0j) for o in enumerate_basis(self.modes, self.photons)])

    def to_dict(self) -> dict:
        return {
            "modes": self.modes,
            "photons": self.photons,
            "terms": [
                {"occ": list(occ), "amp": [float(c.real), float(c.imag)]}
                for occ, c in zip(self.occupations, self.amplitudes)
            ],
        }


def parse_state(text: str) -> PhotonState:
    """Parse a JSON state document.

    Schema::

        {"modes": L, "photons": N, "renormalize": bool?,
         "terms": [{"occ": [int, ...], "amp": [re, im]}, ...]}
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateError(f"state document is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise StateError("state document must be a JSON object")
    for key in ("modes", "photons", "terms"):
        if key not in doc:
            raise StateError(f"state document is missing '{key}'")
    modes, photons = doc["modes"], doc["photons"]
    if not isinstance(modes, int) or not isinstance(photons, int) or isinstance(modes, bool):
        raise StateError("'modes' and 'photons' must be integers")
    renormalize = doc.get("renormalize", False)
    if not isinstance(renormalize, bool):
        raise StateError("'renormalize' must be a boolean")
    raw_terms = doc["terms"]
    if not isinstance(raw_terms, list) or not raw_terms:
        raise StateError("'terms' must be a non-empty list")

    terms = []
    for k, term in enumerate(raw_terms):
        if not isinstance(term, dict) or "occ" not in term or "amp" not in term:
            raise StateError(f"term {k} must be an object with 'occ' and 'amp'")
        occ, amp = term["occ"], term["amp"]
        if not isinstance(occ, list) or not all(
            isinstance(n, int) and not isinstance(n, bool) for n in occ
        ):
            raise StateError(f"term {k}: 'occ' must be a list of integers")
        if (
            not isinstance(amp, list)
            or len(amp) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in amp)
        ):
            raise StateError(f"term {k}: 'amp' must be [re, im]")
        if len(occ) != modes:
            raise StateError(f"term {k}: occupation has {len(occ)} modes, document says {modes}")
        if sum(occ) != photons:
            raise StateError(f"term {k}: occupation holds {sum(occ)} photons, document says {photons}")
        terms.append((occ, complex(amp[0], amp[1])))
    return PhotonState.from_terms(terms, renormalize=renormalize)


def dump_state(state: PhotonState) -> str:
    return json.dumps(state.to_dict(), indent=2)


def hopping_element(target: Sequence[int], source: Sequence[int], i: int, j: int) -> float:
    """Matrix element <target| a_i^dag a_j |source> for i != j."""
    if i == j:
        raise ValueError("hopping_element needs distinct modes; number operators are diagonal")
    if len(target) != len(source):
        raise ValueError("occupation vectors differ in length")
    if sum(target) != sum(source):
        raise ValueError("occupation vectors differ in photon number")
    if source[j] == 0:
        return 0.0
    for k, (t, s) in enumerate(zip(target, source)):
        expected = s + (k == i) - (k == j)
        if t != expected:
            return 0.0
    return math.sqrt((source[i] + 1) * source[j])


def hopping_table(occupations: Sequence[Occupation]) -> tuple[np.ndarray, ...]:
    """All nonzero hops ``t <- s`` within a term list.

    Returns arrays ``(t, s, i, j, weight)`` such that
    ``<occ[t]| a_i^dag a_j |occ[s]> = weight``.
    """
    index = {occ: k for k, occ in enumerate(occupations)}
    rows = []
    for s, occ in enumerate(occupations):
        for j, nj in enumerate(occ):
            if nj == 0:
                continue
            for i in range(len(occ)):
                if i == j:
                    continue
                moved = list(occ)
                moved[j] -= 1
                moved[i] += 1
                t = index.get(tuple(moved))
                if t is not None:
                    rows.append((t, s, i, j, math.sqrt((occ[i] + 1) * nj)))
    if not rows:
        empty = np.zeros(0, dtype=int)
        return empty, empty, empty, empty, np.zeros(0)
    t, s, i, j, w = zip(*rows)
    return np.array(t), np.array(s), np.array(i), np.array(j), np.array(w)


def one_body_matrix(state: PhotonState) -> np.ndarray:
    """L x L matrix of expectation values <a_i^dag a_j>."""
    c = state.amplitudes
    occ = np.array(state.occupations, dtype=float)
    matrix = np.zeros((state.modes, state.modes), dtype=complex)
    matrix[np.diag_indices(state.modes)] = np.abs(c) ** 2 @ occ
    t, s, i, j, w = hopping_table(state.occupations)
    np.add.at(matrix, (i, j), np.conj(c[t]) * c[s] * w)
    return matrix


def apply_phase_shift(state: PhotonState, phases: Sequence[float]) -> PhotonState:
    """Act with exp(i sum_j alpha_j n_j) on every term."""
    alpha = np.asarray(phases, dtype=float)
    if alpha.shape != (state.modes,):
        raise StateError(f"expected {state.modes} phases, got {alpha.size}")
    occ = np.array(state.occupations, dtype=float)
    amps = state.amplitudes * np.exp(1j * (occ @ alpha))
    amps.setflags(write=False)
    return PhotonState(state.modes, state.photons, state.occupations, amps)


def random_state(
    modes: int, photons: int, rng: np.random.Generator, keep: float = 1.0
) -> PhotonState:
    """Haar-like random state over the full basis.

    With ``keep < 1`` each amplitude is dropped with probability ``1 - keep``
    (at least one term always survives).
    """
    dim = basis_size(modes, photons)
    vector = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    if keep < 1.0:
        mask = rng.random(dim) < keep
        mask[rng.integers(dim)] = True
        vector = np.where(mask, vector, 0.0)
    return PhotonState.from_vector(modes, photons, vector, renormalize=True)
