"""Fringe intensity and visibility for phase-shifted multi-path states.

With per-path phase shifts ``alpha`` and field ``E+ = eps0 * sum_j a_j``, the
detected intensity is

    I(alpha) = |eps0|^2 * sum_{i,j} exp(i(alpha_j - alpha_i)) <a_i^dag a_j>

which depends on ``alpha`` only through phase differences. Intensities are in
units of ``|eps0|^2`` unless ``epsilon0`` is given.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fock import TWO_PI, PhotonState, StateError, as_phases, one_body_matrix

CLAMP_BAND = 1e-12
PHASE_MATCH_TOLERANCE = 1e-9


class Method(str, enum.Enum):
    SCAN_1D = "scan_1d"
    TORUS_SEARCH = "torus_search"
    ANALYTIC = "analytic"


@dataclass(frozen=True, eq=False)
class FringeCurve:
    mode: int
    phases: np.ndarray
    intensities: np.ndarray
    base_phases: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["phase_rad", "intensity"])
        for phi, value in zip(self.phases, self.intensities):
            writer.writerow([repr(float(phi)), repr(float(value))])
        return buf.getvalue()


@dataclass(frozen=True, eq=False)
class VisibilityResult:
    i_max: float
    i_min: float
    visibility: float
    phases_at_max: np.ndarray
    phases_at_min: np.ndarray
    method: Method

    def to_dict(self) -> dict:
        return {
            "i_max": self.i_max,
            "i_min": self.i_min,
            "visibility": self.visibility,
            "phases_at_max": [round_phase(p) for p in self.phases_at_max],
            "phases_at_min": [round_phase(p) for p in self.phases_at_min],
            "method": self.method.value,
        }


def round_phase(phi: float) -> float:
    """Reduce into [0, 2pi) and keep 12 significant digits."""
    value = float(f"{float(np.mod(phi, TWO_PI)):.12g}")
    return 0.0 if value >= float(f"{TWO_PI:.12g}") else value


def visibility_from_extrema(i_max: float, i_min: float) -> float:
    if i_max <= i_min:
        return 0.0
    return (i_max - i_min) / (i_max + i_min)


def _check_epsilon(epsilon0: float) -> float:
    if not epsilon0 > 0:
        raise ValueError(f"epsilon0 must be positive, got {epsilon0}")
    return epsilon0**2


def intensity_from_matrix(matrix: np.ndarray, phases: np.ndarray) -> np.ndarray:
    """Unclamped ``w^dag M w`` with ``w = exp(i alpha)``; broadcasts over rows of phases."""
    w = np.exp(1j * np.asarray(phases, dtype=float))
    return np.real(np.einsum("...i,ij,...j->...", np.conj(w), matrix, w))


def clamp(values):
    values = np.asarray(values, dtype=float)
    out = np.where((values < 0) & (values >= -CLAMP_BAND), 0.0, values)
    if np.any(out < 0):
        raise ArithmeticError(f"intensity {float(out.min())} is negative beyond float noise")
    return out


def intensity(state: PhotonState, phases: Sequence[float], epsilon0: float = 1.0) -> float:
    alpha = np.asarray(phases, dtype=float)
    if alpha.shape != (state.modes,):
        raise StateError(f"expected {state.modes} phases, got {alpha.size}")
    scale = _check_epsilon(epsilon0)
    return float(clamp(intensity_from_matrix(one_body_matrix(state), alpha))) * scale


def fringe_curve(
    state: PhotonState,
    mode: int,
    samples: int,
    base_phases: Sequence[float] | None = None,
    epsilon0: float = 1.0,
) -> FringeCurve:
    """Sweep one path's phase over [0, 2pi) with the other phases held fixed."""
    if not 0 <= mode < state.modes:
        raise StateError(f"mode index {mode} outside 0..{state.modes - 1}")
    if samples < 2:
        raise StateError("fringe needs at least 2 samples")
    base = np.zeros(state.modes) if base_phases is None else as_phases(base_phases, state.modes)
    sweep = np.arange(samples) * (TWO_PI / samples)
    grid = np.tile(base, (samples, 1))
    grid[:, mode] = sweep
    values = clamp(intensity_from_matrix(one_body_matrix(state), grid)) * _check_epsilon(epsilon0)
    return FringeCurve(mode, sweep, values, base)


def visibility(state: PhotonState, search=None, epsilon0: float = 1.0) -> VisibilityResult:
    """Fringe visibility with I_max and I_min searched over all relative phases."""
    from . import optimize

    cfg = search if search is not None else optimize.TorusSearchConfig()
    at_min, i_min = optimize.minimize_intensity_phases(state, cfg)
    at_max, i_max = optimize.maximize_intensity_phases(state, cfg)
    if i_max - i_min <= CLAMP_BAND * max(1.0, abs(i_max)):
        # flat fringe: both searches returned float noise around the same value
        i_max = i_min = 0.5 * (i_max + i_min)
    scale = _check_epsilon(epsilon0)
    method = Method.SCAN_1D if state.modes == 2 else Method.TORUS_SEARCH
    return VisibilityResult(
        i_max * scale,
        i_min * scale,
        visibility_from_extrema(i_max, i_min),
        at_max,
        at_min,
        method,
    )


def two_path_weights(photons: int) -> np.ndarray:
    """sqrt((n-j)(j+1)) for neighbouring terms j, j+1 of a two-path state."""
    j = np.arange(photons)
    return np.sqrt((photons - j) * (j + 1.0))


def two_path_visibility_analytic(moduli: Sequence[float]) -> float:
    """Closed-form two-path visibility for phase-matched amplitudes.

    ``moduli`` are ``|c_1|..|c_{n+1}|`` for the terms ``|n,0>, |n-1,1>, ..., |0,n>``.
    """
    m = np.asarray(moduli, dtype=float)
    if m.ndim != 1 or m.size < 2:
        raise ValueError("need at least two moduli")
    if np.any(m < 0):
        raise ValueError("moduli must be non-negative")
    if abs(float(np.sum(m**2)) - 1.0) > 1e-9:
        raise ValueError("moduli are not normalized")
    return two_path_visibility_formula(m)


def two_path_visibility_formula(moduli) -> float:
    """The closed form without input validation, for finite-difference probes."""
    m = np.asarray(moduli, dtype=float)
    n = m.size - 1
    return float(2.0 / n * np.sum(two_path_weights(n) * m[:-1] * m[1:]))


def two_path_moduli(state: PhotonState) -> np.ndarray:
    """Moduli of a two-path state over the full basis |n,0>, ..., |0,n>."""
    if state.modes != 2:
        raise StateError("two-path formula needs a two-mode state")
    return np.abs(state.dense_vector())


def is_phase_matched(state: PhotonState) -> bool:
    """True when consecutive argument differences agree mod 2pi.

    Only neighbouring terms with both amplitudes nonzero carry a phase
    difference into the fringe, so pairs touching a zero amplitude are skipped.
    """
    if state.modes != 2:
        raise StateError("phase matching is defined for two-mode states")
    c = state.dense_vector()
    diffs = [
        np.angle(c[k]) - np.angle(c[k + 1])
        for k in range(c.size - 1)
        if abs(c[k]) > 0 and abs(c[k + 1]) > 0
    ]
    if len(diffs) < 2:
        return True
    ref = diffs[0]
    for d in diffs[1:]:
        gap = np.mod(d - ref + np.pi, TWO_PI) - np.pi
        if abs(gap) > PHASE_MATCH_TOLERANCE:
            return False
    return True
