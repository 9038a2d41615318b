"""Reference cases with published values, shared by ``young verify-paper`` and the tests."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import coherence, interference, optimize, oracle
from .fock import PhotonState, enumerate_basis, random_state

SQ2 = math.sqrt(2.0)

# Optimal two-path moduli over |n,0>, |n-1,1>, ..., |0,n>
TWO_PATH_OPTIMA = {
    1: (1 / SQ2, 1 / SQ2),
    2: (0.5, 1 / SQ2, 0.5),
    3: (1 / math.sqrt(8), math.sqrt(3 / 8), math.sqrt(3 / 8), 1 / math.sqrt(8)),
    4: (0.25, 0.5, math.sqrt(6) / 4, 0.5, 0.25),
}

THREE_PATH_PHASES = (4 * math.pi / 3, 2 * math.pi / 3, 0.0)
FOUR_PATH_PHASES = (0.0, 0.0, -math.pi, -math.pi)


def _amplitude_by_shape(occ: tuple[int, ...], table: dict) -> float:
    return table[tuple(sorted((n for n in occ if n), reverse=True))]


# Published optimal amplitudes keyed by the sorted nonzero occupations of each term
MULTI_PATH_OPTIMA = {
    (3, 1): ({(1,): 1 / math.sqrt(3)}, THREE_PATH_PHASES),
    (3, 2): ({(2,): 1 / 3, (1, 1): SQ2 / 3}, THREE_PATH_PHASES),
    (3, 3): ({(3,): math.sqrt(3) / 9, (2, 1): 1 / 3, (1, 1, 1): SQ2 / 3}, THREE_PATH_PHASES),
    (4, 1): ({(1,): 0.5}, FOUR_PATH_PHASES),
    (4, 2): ({(2,): 0.25, (1, 1): 1 / math.sqrt(8)}, FOUR_PATH_PHASES),
    (4, 3): (
        {(3,): 1 / 8, (2, 1): math.sqrt(3) / 8, (1, 1, 1): math.sqrt(6) / 8},
        FOUR_PATH_PHASES,
    ),
}

# (modes, photons) -> (local pairs, all pairs) for the state using every basis term
PAIR_COUNTS = {(3, 3): (18, 45), (4, 2): (24, 45), (4, 3): (60, 190)}


def two_path_state(moduli, arguments=None) -> PhotonState:
    moduli = np.asarray(moduli, dtype=float)
    args = np.zeros(moduli.size) if arguments is None else np.asarray(arguments, dtype=float)
    return PhotonState.from_vector(2, moduli.size - 1, moduli * np.exp(1j * args))


def multi_path_optimum(modes: int, photons: int) -> PhotonState:
    table, _ = MULTI_PATH_OPTIMA[modes, photons]
    basis = enumerate_basis(modes, photons)
    return PhotonState.from_terms((occ, _amplitude_by_shape(occ, table)) for occ in basis)


def noon_state(photons: int, modes: int = 2) -> PhotonState:
    first = (photons,) + (0,) * (modes - 1)
    last = (0,) * (modes - 1) + (photons,)
    return PhotonState.from_terms([(first, 1 / SQ2), (last, 1 / SQ2)])


def full_basis_state(modes: int, photons: int) -> PhotonState:
    basis = enumerate_basis(modes, photons)
    amp = 1 / math.sqrt(len(basis))
    return PhotonState.from_terms((occ, amp) for occ in basis)


def random_phase_matched_two_path(photons: int, rng: np.random.Generator) -> PhotonState:
    moduli = np.abs(rng.normal(size=photons + 1))
    moduli /= np.linalg.norm(moduli)
    start, step = rng.uniform(0, 2 * np.pi, size=2)
    args = start - step * np.arange(photons + 1)
    return two_path_state(moduli, args)


def visibility_of_moduli(modes, photons, search=None) -> Callable[[np.ndarray], float]:
    """Numeric visibility as a function of real, unnormalized amplitudes."""
    search = search or optimize.TorusSearchConfig(grid_points_per_dim=16, refine_candidates=4)

    def objective(x):
        state = PhotonState.from_vector(modes, photons, np.asarray(x, dtype=complex), renormalize=True)
        return interference.visibility(state, search).visibility

    return objective


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}  ({self.detail})"


def run_checks(tolerance: float = 1e-6, seed: int = 0) -> list[Check]:
    """Evaluate the published values; each check compares at ``tolerance``
    unless it has its own pinned threshold."""
    rng = np.random.default_rng(seed)
    checks: list[Check] = []

    def add(name, passed, detail):
        checks.append(Check(name, bool(passed), detail))

    for n, moduli in TWO_PATH_OPTIMA.items():
        v = interference.visibility(two_path_state(moduli)).visibility
        add(f"2path-{n}photon optimum V=1", abs(v - 1) <= tolerance, f"V={v:.15g}")

    worst = 0.0
    for _ in range(50):
        state = random_phase_matched_two_path(int(rng.integers(1, 7)), rng)
        closed = interference.two_path_visibility_analytic(interference.two_path_moduli(state))
        worst = max(worst, abs(interference.visibility(state).visibility - closed))
    add("2path closed form vs numeric (50 states)", worst <= tolerance, f"max diff {worst:.3g}")
    for n, moduli, expected in [(2, (1 / SQ2, 0, 1 / SQ2), 0.0)] + [
        (n, m, 1.0) for n, m in TWO_PATH_OPTIMA.items()
    ]:
        v = interference.two_path_visibility_analytic(moduli)
        add(f"2path closed form n={n} value {expected:g}", abs(v - expected) <= tolerance, f"V={v:.15g}")

    noon = noon_state(2)
    v, c = interference.visibility(noon).visibility, coherence.l1_coherence(noon)
    add("N00N 2photon V=0 and C=1", v <= tolerance and abs(c - 1) <= tolerance, f"V={v:.3g} C={c:.15g}")
    for n in (2, 3, 4):
        curve = interference.fringe_curve(noon_state(n), 0, 64)
        spread = float(np.ptp(curve.intensities))
        add(f"N00N {n}photon flat fringe", spread <= tolerance, f"spread {spread:.3g}")

    for (modes, photons), (_, phases) in MULTI_PATH_OPTIMA.items():
        state = multi_path_optimum(modes, photons)
        v = interference.visibility(state).visibility
        i0 = interference.intensity(state, phases)
        add(
            f"{modes}path-{photons}photon optimum V=1",
            abs(v - 1) <= tolerance and i0 <= tolerance,
            f"V={v:.15g} I(published phases)={i0:.3g}",
        )

    for (modes, photons), (local, total) in PAIR_COUNTS.items():
        report = coherence.decompose(full_basis_state(modes, photons))
        add(
            f"{modes}path-{photons}photon pair count {local}",
            report.local_count == local and len(report.entries) == total,
            f"local {report.local_count} of {len(report.entries)}",
        )

    gap = -math.inf
    for _ in range(200):
        state = random_state(int(rng.integers(2, 5)), int(rng.integers(1, 5)), rng, keep=0.7)
        search = optimize.TorusSearchConfig(grid_points_per_dim=16, refine_candidates=4)
        gap = max(gap, interference.visibility(state, search).visibility - coherence.l1_coherence(state))
    add("V <= C_l1 on 200 random states", gap <= 1e-9, f"max V-C {gap:.3g}")

    worst = 0.0
    for _ in range(100):
        state = random_state(int(rng.integers(2, 5)), int(rng.integers(1, 5)), rng)
        alpha = rng.uniform(0, 2 * np.pi, size=state.modes)
        worst = max(worst, abs(interference.intensity(state, alpha) - oracle.dense_intensity(state, alpha)))
    add("intensity vs dense oracle (100 draws)", worst <= 1e-10, f"max diff {worst:.3g}")

    uniform = multi_path_optimum(3, 1)

    def min_surface(b12, b13):
        return interference.intensity(uniform, (b13, b13 - b12, 0.0))

    kind = optimize.hessian_classify(min_surface, (2 * math.pi / 3, 4 * math.pi / 3))
    add("3path-1photon minimum by second-derivative test", kind is optimize.ExtremumClass.MINIMUM, kind.value)

    for n, moduli in TWO_PATH_OPTIMA.items():
        r = optimize.lagrange_residual(interference.two_path_visibility_formula, moduli)
        add(f"2path-{n}photon Lagrange stationarity", r < 1e-5, f"residual {r:.3g}")
    for modes, photons in MULTI_PATH_OPTIMA:
        point = multi_path_optimum(modes, photons).dense_vector().real
        r = optimize.lagrange_residual(visibility_of_moduli(modes, photons), point)
        add(f"{modes}path-{photons}photon Lagrange stationarity", r < 1e-5, f"residual {r:.3g}")
    off = np.array([1.0, 1.0, 1.0]) / math.sqrt(3)
    r = optimize.lagrange_residual(interference.two_path_visibility_formula, off)
    add("2path-2photon non-optimal point rejected", r > 1e-3, f"residual {r:.3g}")
    return checks
