"""Brute-force reference computations for tests.

Nothing here reuses the arithmetic of :mod:`young.interference` or the hopping
rules of :mod:`young.fock`: ladder operators are built as dense matrices
between the (N-1)- and N-photon sectors and multiplied out, and the intensity
is the literal expectation value of E- E+ on the phase-shifted state vector.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .fock import LimitExceeded, PhotonState

BASIS_CAP = 5000
GRID_CAP = 1 << 28
_CHUNK = 1 << 15


@dataclass(frozen=True)
class FockBasis:
    modes: int
    photons: int
    cap: int = BASIS_CAP

    @cached_property
    def vectors(self) -> tuple[tuple[int, ...], ...]:
        if math.comb(self.photons + self.modes - 1, self.modes - 1) > self.cap:
            raise LimitExceeded(
                f"basis for {self.modes} modes and {self.photons} photons exceeds {self.cap} vectors"
            )
        found = [
            v
            for v in itertools.product(range(self.photons + 1), repeat=self.modes)
            if sum(v) == self.photons
        ]
        return tuple(sorted(found, reverse=True))

    def __len__(self) -> int:
        return len(self.vectors)

    def index(self) -> dict:
        return {v: k for k, v in enumerate(self.vectors)}


def annihilation_matrix(upper: FockBasis, lower: FockBasis, mode: int) -> np.ndarray:
    """Dense a_mode mapping the ``upper`` sector onto the ``lower`` one."""
    out = np.zeros((len(lower), len(upper)))
    lower_index = lower.index()
    for col, v in enumerate(upper.vectors):
        if v[mode] == 0:
            continue
        w = list(v)
        w[mode] -= 1
        out[lower_index[tuple(w)], col] = math.sqrt(v[mode])
    return out


def pair_operators(basis: FockBasis) -> np.ndarray:
    """Array ``ops[i, j]`` holding the dense matrix of a_i^dag a_j."""
    lower = FockBasis(basis.modes, basis.photons - 1, basis.cap)
    lowers = [annihilation_matrix(basis, lower, m) for m in range(basis.modes)]
    ops = np.empty((basis.modes, basis.modes, len(basis), len(basis)))
    for i, j in itertools.product(range(basis.modes), repeat=2):
        ops[i, j] = lowers[i].T @ lowers[j]
    return ops


def _state_vector(state: PhotonState, basis: FockBasis) -> np.ndarray:
    psi = np.zeros(len(basis), dtype=complex)
    index = basis.index()
    for occ, amp in zip(state.occupations, state.amplitudes):
        psi[index[occ]] += amp
    return psi


def _field_operator(basis: FockBasis) -> np.ndarray:
    return pair_operators(basis).sum(axis=(0, 1))


def dense_intensity(
    state: PhotonState, phases, epsilon0: float = 1.0, cap: int = BASIS_CAP
) -> float:
    """<psi(alpha)| E- E+ |psi(alpha)> with dense matrices."""
    return float(dense_intensity_batch(state, np.atleast_2d(phases), epsilon0, cap)[0])


class _DenseProblem:
    def __init__(self, state: PhotonState, cap: int = BASIS_CAP):
        basis = FockBasis(state.modes, state.photons, cap)
        self.occ = np.array(basis.vectors, dtype=float)
        self.psi = _state_vector(state, basis)
        self.field = _field_operator(basis)

    def __call__(self, phase_rows) -> np.ndarray:
        phase_rows = np.asarray(phase_rows, dtype=float)
        shifted = self.psi[None, :] * np.exp(1j * phase_rows @ self.occ.T)
        return np.einsum("pa,ab,pb->p", np.conj(shifted), self.field, shifted).real


def dense_intensity_batch(state, phase_rows, epsilon0: float = 1.0, cap: int = BASIS_CAP):
    return abs(epsilon0) ** 2 * _DenseProblem(state, cap)(phase_rows)


def grid_search_min(state: PhotonState, resolution: int):
    """Exhaustive minimum over a uniform grid with the last phase at zero.

    Ties within 1e-12 go to the lexicographically first grid point.
    """
    if resolution < 16:
        raise ValueError("resolution must be >= 16")
    dims = state.modes - 1
    if resolution**dims > GRID_CAP:
        raise LimitExceeded(f"{resolution}^{dims} grid points exceed {GRID_CAP}")
    axis = 2.0 * np.pi * np.arange(resolution) / resolution
    total = resolution**dims
    problem = _DenseProblem(state)
    values = np.empty(total)
    for lo in range(0, total, _CHUNK):
        flat = np.arange(lo, min(lo + _CHUNK, total))
        coords = np.stack(np.unravel_index(flat, (resolution,) * dims), axis=-1)
        rows = np.concatenate([axis[coords], np.zeros((flat.size, 1))], axis=1)
        values[lo : lo + flat.size] = problem(rows)
    best = values.min()
    first = int(np.flatnonzero(values <= best + 1e-12)[0])
    coords = np.array(np.unravel_index(first, (resolution,) * dims))
    return np.append(axis[coords], 0.0), float(best)
