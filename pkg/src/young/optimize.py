"""Phase searches on the torus and coefficient searches for maximal visibility.

Intensity depends on phase differences only, so the last path's phase is
pinned to zero and searches run over the remaining ``L - 1`` phases. Extrema
are located by an exhaustive uniform grid followed by Newton/gradient descent
with the exact trigonometric derivatives.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

from . import interference
from .fock import (
    TWO_PI,
    LimitExceeded,
    PhotonState,
    as_phases,
    enumerate_basis,
    hopping_table,
    one_body_matrix,
)

TIE_BAND = 1e-12
MAX_GRID_POINTS = 1 << 22


@dataclass(frozen=True)
class TorusSearchConfig:
    grid_points_per_dim: int = 64
    refine_iterations: int = 200
    refine_tolerance: float = 1e-12
    seed: int = 0
    # number of discrete grid minima handed to the local refinement
    refine_candidates: int = 16

    def __post_init__(self):
        if self.grid_points_per_dim < 8:
            raise ValueError("grid_points_per_dim must be >= 8")
        if self.refine_iterations < 0 or self.refine_candidates < 1:
            raise ValueError("refine_iterations must be >= 0 and refine_candidates >= 1")


@dataclass(frozen=True)
class CoeffOptConfig:
    starts: int = 16
    step_tolerance: float = 1e-10
    max_iterations: int = 5000
    seed: int = 0


class ExtremumClass(str, enum.Enum):
    MINIMUM = "minimum"
    MAXIMUM = "maximum"
    SADDLE = "saddle"
    INDETERMINATE = "indeterminate"


# --- torus search ---------------------------------------------------------


def _with_gauge(free: np.ndarray) -> np.ndarray:
    return np.concatenate([free, np.zeros(free.shape[:-1] + (1,))], axis=-1)


def _derivatives(matrix: np.ndarray, alpha: np.ndarray):
    """Intensity, gradient and Hessian w.r.t. all L phases."""
    w = np.exp(1j * alpha)
    p = np.conj(w)[:, None] * matrix * w[None, :]
    value = float(np.real(p.sum()))
    grad = -2.0 * np.imag(p.sum(axis=0))
    hess = 2.0 * np.real(p).T
    np.fill_diagonal(hess, 0.0)
    np.fill_diagonal(hess, -hess.sum(axis=0))
    return value, grad, hess


def _refine(matrix, start, sign, iterations, tolerance):
    """Damped Newton descent on ``sign * I`` over the free phases.

    Indefinite or singular Hessians (flat valleys of degenerate minima) are
    shifted to be positive definite, so every step is a descent direction.
    """
    x = start.copy()
    scale = max(1.0, float(np.abs(matrix).max()))

    def local(xf):
        value, grad, hess = _derivatives(matrix, _with_gauge(xf))
        return sign * value, sign * grad[:-1], sign * hess[:-1, :-1]

    fx, g, h = local(x)
    steps = 0
    for steps in range(1, iterations + 1):
        if np.linalg.norm(g) < tolerance:
            break
        eig = np.linalg.eigvalsh(h)
        shift = max(0.0, 1e-8 * scale - eig[0])
        direction = -np.linalg.solve(h + shift * np.eye(h.shape[0]), g)
        slope = float(g @ direction)
        if -slope < 1e-13 * scale:
            # predicted decrease is below the rounding noise of the intensity
            if shift == 0.0:
                x = x + direction
                fx, g, h = local(x)
            break
        t = 1.0
        while t > 1e-10:
            trial = x + t * direction
            ft = local(trial)[0]
            if ft <= fx + 1e-4 * t * slope:
                break
            t *= 0.5
        else:
            break
        x = trial
        fx, g, h = local(x)
    return x, fx, steps


def _grid_values(matrix, k, sign):
    """``sign * I`` on the uniform k^(L-1) grid, via one inverse FFT.

    ``I`` is a trigonometric polynomial whose frequencies are ``e_j - e_i``
    (gauge mode dropped), so its Fourier coefficients are the entries of M.
    """
    modes = matrix.shape[0]
    dims = modes - 1
    coef = np.zeros((k,) * dims, dtype=complex)
    for i in range(modes):
        for j in range(modes):
            freq = np.zeros(modes, dtype=int)
            freq[j] += 1
            freq[i] -= 1
            coef[tuple(freq[:-1] % k)] += matrix[i, j]
    values = np.real(np.fft.ifftn(coef)) * k**dims
    return sign * values


def _grid_size(cfg: TorusSearchConfig, dims: int) -> int:
    k = cfg.grid_points_per_dim
    if k**dims <= MAX_GRID_POINTS:
        return k
    reduced = int(math.floor(MAX_GRID_POINTS ** (1.0 / dims)))
    while (reduced + 1) ** dims <= MAX_GRID_POINTS:
        reduced += 1
    if reduced < 8:
        raise LimitExceeded(
            f"torus grid of 8^{dims} points exceeds the cap of {MAX_GRID_POINTS}"
        )
    return reduced


def _lex_key(phases: np.ndarray) -> tuple:
    return tuple(np.round(as_phases(phases), 9))


def torus_extremum(matrix: np.ndarray, cfg: TorusSearchConfig, sign: float = 1.0):
    """Minimize ``sign * w^dag M w`` over the phase torus.

    Returns ``(phases, sign * value, evaluated_grid_min)`` where ``phases``
    has the gauge phase (last entry) fixed to zero.
    """
    modes = matrix.shape[0]
    dims = modes - 1
    k = _grid_size(cfg, dims)
    axis = np.arange(k) * (TWO_PI / k)
    values = _grid_values(matrix, k, sign)

    is_min = np.ones(values.shape, dtype=bool)
    for ax in range(dims):
        for shift in (1, -1):
            is_min &= values <= np.roll(values, shift, axis=ax)
    flat = values.ravel()
    candidates = np.flatnonzero(is_min.ravel())
    # stable sort keeps lexicographic grid order among equal values
    candidates = candidates[np.argsort(flat[candidates], kind="stable")]
    candidates = candidates[: cfg.refine_candidates]
    grid_best = int(np.argmin(flat))

    best_x, best_f = None, math.inf
    for cell in candidates:
        start = axis[np.array(np.unravel_index(cell, values.shape))]
        x, fx, _ = _refine(matrix, start, sign, cfg.refine_iterations, cfg.refine_tolerance)
        if fx > flat[cell]:
            x, fx = start, float(flat[cell])
        if best_x is None or fx < best_f - TIE_BAND:
            best_x, best_f = x, fx
        elif abs(fx - best_f) <= TIE_BAND and _lex_key(x) < _lex_key(best_x):
            best_x, best_f = x, min(fx, best_f)
    return as_phases(_with_gauge(best_x)), best_f, float(flat[grid_best])


def minimize_intensity_phases(state: PhotonState, cfg: TorusSearchConfig | None = None):
    """Phases (last path pinned at 0) minimizing the intensity, and that minimum."""
    cfg = cfg or TorusSearchConfig()
    phases, value, _ = torus_extremum(one_body_matrix(state), cfg, 1.0)
    return phases, float(interference.clamp(value))


def maximize_intensity_phases(state: PhotonState, cfg: TorusSearchConfig | None = None):
    cfg = cfg or TorusSearchConfig()
    phases, value, _ = torus_extremum(one_body_matrix(state), cfg, -1.0)
    return phases, -value


# --- coefficient search ---------------------------------------------------


def balanced_product_state(
    modes: int, photons: int, mode_phases: Sequence[float] | None = None
) -> PhotonState:
    """Every photon independently in an equal superposition of all paths.

    Amplitude of ``|n_1..n_L>`` is ``sqrt(N!/prod n_j!) / L^(N/2) * exp(i n.phi)``.
    """
    phi = np.zeros(modes) if mode_phases is None else np.asarray(mode_phases, dtype=float)
    if phi.shape != (modes,):
        raise ValueError(f"expected {modes} mode phases")
    basis = enumerate_basis(modes, photons)
    log_norm = math.lgamma(photons + 1) - photons * math.log(modes)
    amps = []
    for occ in basis:
        log_mult = log_norm - sum(math.lgamma(n + 1) for n in occ)
        amps.append(math.exp(0.5 * log_mult) * np.exp(1j * float(np.dot(occ, phi))))
    return PhotonState.from_terms(zip(basis, amps), renormalize=True)


class _VisibilityFunctional:
    """(I(psi, a_max) - I(psi, a_min)) / (I(psi, a_max) + I(psi, a_min)).

    Homogeneous of degree zero in the unnormalized amplitude vector ``psi``;
    its maximum over phases and amplitudes is the maximal visibility.
    """

    def __init__(self, modes: int, photons: int):
        self.modes, self.photons = modes, photons
        self.basis = enumerate_basis(modes, photons)
        self.dim = len(self.basis)
        self.t, self.s, self.i, self.j, self.w = hopping_table(self.basis)

    def split(self, params):
        d, f = self.dim, self.modes - 1
        psi = params[:d] + 1j * params[d : 2 * d]
        return psi, params[2 * d : 2 * d + f], params[2 * d + f :]

    def _intensity(self, psi, free):
        alpha = np.append(free, 0.0)
        q = np.conj(psi[self.t]) * psi[self.s] * self.w * np.exp(1j * (alpha[self.j] - alpha[self.i]))
        value = self.photons * float(np.vdot(psi, psi).real) + float(np.real(q.sum()))
        # B psi, scattered over the hop targets
        terms = self.w * np.exp(1j * (alpha[self.j] - alpha[self.i])) * psi[self.s]
        b_psi = self.photons * psi + (
            np.bincount(self.t, weights=terms.real, minlength=self.dim)
            + 1j * np.bincount(self.t, weights=terms.imag, minlength=self.dim)
        )
        g_alpha = np.bincount(self.i, weights=q.imag, minlength=self.modes) - np.bincount(
            self.j, weights=q.imag, minlength=self.modes
        )
        g_psi = np.concatenate([2.0 * b_psi.real, 2.0 * b_psi.imag])
        return value, g_psi, g_alpha[:-1]

    def value(self, params) -> float:
        psi, a_max, a_min = self.split(params)
        hi = self._intensity(psi, a_max)[0]
        lo = self._intensity(psi, a_min)[0]
        return (hi - lo) / (hi + lo)

    def negative_with_grad(self, params):
        psi, a_max, a_min = self.split(params)
        hi, g_psi_hi, g_a_hi = self._intensity(psi, a_max)
        lo, g_psi_lo, g_a_lo = self._intensity(psi, a_min)
        denom = (hi + lo) ** 2
        g_psi = 2.0 * (lo * g_psi_hi - hi * g_psi_lo) / denom
        g_max = 2.0 * lo * g_a_hi / denom
        g_min = -2.0 * hi * g_a_lo / denom
        return -(hi - lo) / (hi + lo), -np.concatenate([g_psi, g_max, g_min])


@dataclass(frozen=True, eq=False)
class CoefficientOptimum:
    state: PhotonState
    visibility: "interference.VisibilityResult"
    start_visibilities: tuple[float, ...]
    iterations: tuple[int, ...]
    best_start: int
    lagrange_residual: float
    seed: int

    def __iter__(self):
        # unpacks as ``state, visibility``
        return iter((self.state, self.visibility))

    def to_dict(self) -> dict:
        return {
            "state": self.state.to_dict(),
            "visibility": self.visibility.to_dict(),
            "best_start": self.best_start,
            "start_visibilities": list(self.start_visibilities),
            "iterations": list(self.iterations),
            "lagrange_residual": self.lagrange_residual,
            "seed": self.seed,
        }


def fix_gauge(psi: np.ndarray) -> np.ndarray:
    """Normalize and rotate so the first nonzero amplitude is real positive."""
    psi = psi / np.linalg.norm(psi)
    nonzero = np.flatnonzero(np.abs(psi) > 1e-12)
    if nonzero.size:
        psi = psi * np.exp(-1j * np.angle(psi[nonzero[0]]))
    return psi


def maximize_visibility_coefficients(
    modes: int,
    photons: int,
    cfg: CoeffOptConfig | None = None,
    search: TorusSearchConfig | None = None,
) -> CoefficientOptimum:
    """Multi-start search for the input state with the largest visibility.

    Start 0 is the balanced product state; starts 1..``cfg.starts`` are drawn
    from ``cfg.seed``. The result is the best state found, which bounds the
    true optimum from below.
    """
    cfg = cfg or CoeffOptConfig()
    search = search or TorusSearchConfig()
    functional = _VisibilityFunctional(modes, photons)
    d, f = functional.dim, modes - 1
    rng = np.random.default_rng(cfg.seed)

    balanced = balanced_product_state(modes, photons)
    initial = [
        np.concatenate(
            [
                balanced.dense_vector().real,
                balanced.dense_vector().imag,
                maximize_intensity_phases(balanced, search)[0][:-1],
                minimize_intensity_phases(balanced, search)[0][:-1],
            ]
        )
    ]
    for _ in range(cfg.starts):
        psi = rng.normal(size=d) + 1j * rng.normal(size=d)
        psi /= np.linalg.norm(psi)
        alphas = rng.uniform(0.0, TWO_PI, size=2 * f)
        initial.append(np.concatenate([psi.real, psi.imag, alphas]))

    results, iterations = [], []
    for x0 in initial:
        res = minimize(
            functional.negative_with_grad,
            x0,
            jac=True,
            method="L-BFGS-B",
            options={"maxiter": cfg.max_iterations, "ftol": 0.0, "gtol": cfg.step_tolerance},
        )
        x = res.x if res.fun <= functional.negative_with_grad(x0)[0] else x0
        psi = fix_gauge(functional.split(x)[0])
        state = PhotonState.from_vector(modes, photons, psi, renormalize=True)
        results.append((state, interference.visibility(state, search), x))
        iterations.append(int(res.nit))

    best = 0
    for k, (_, vis, _) in enumerate(results):
        if vis.visibility > results[best][1].visibility + TIE_BAND:
            best = k
    state, vis, x = results[best]
    _, a_max, a_min = functional.split(x)
    scale = np.linalg.norm(functional.split(x)[0])

    def objective(v):
        return functional.value(np.concatenate([v, a_max, a_min]))

    point = np.concatenate([x[:d], x[d : 2 * d]]) / scale
    residual = lagrange_residual(objective, point)
    return CoefficientOptimum(
        state,
        vis,
        tuple(r[1].visibility for r in results),
        tuple(iterations),
        best,
        residual,
        cfg.seed,
    )


# --- stationarity checks --------------------------------------------------


def _central_gradient(func: Callable, x: np.ndarray, step: float) -> np.ndarray:
    grad = np.empty(x.size)
    for k in range(x.size):
        e = np.zeros(x.size)
        e[k] = step
        grad[k] = (func(x + e) - func(x - e)) / (2.0 * step)
    return grad


def unit_norm_constraint(x: np.ndarray) -> float:
    return float(np.sum(np.abs(x) ** 2) - 1.0)


def lagrange_residual(
    objective: Callable[[np.ndarray], float],
    point: Sequence[float],
    constraint: Callable[[np.ndarray], float] = unit_norm_constraint,
    step: float = 1e-6,
) -> float:
    """Distance of grad f from the span of grad g at a constrained point.

    A value near zero means ``point`` solves the Lagrange stationarity
    equations; it says nothing about whether the point is a maximum.
    """
    x = np.asarray(point, dtype=float)
    if abs(constraint(x)) >= 1e-9:
        raise ValueError("point violates the constraint")
    grad_f = _central_gradient(objective, x, step)
    grad_g = _central_gradient(constraint, x, step)
    lam = float(grad_f @ grad_g) / float(grad_g @ grad_g)
    return float(np.linalg.norm(grad_f - lam * grad_g))


def hessian_classify(
    f: Callable[[float, float], float],
    point: tuple[float, float],
    step: float = 1e-4,
    band: float = 1e-8,
) -> ExtremumClass:
    """Second-derivative test for a stationary point of a function of two variables."""
    if step <= 0:
        raise ValueError("step must be positive")
    x, y = point
    h = step
    grid = {
        (a, b): f(x + a * h, y + b * h)
        for a in (-1, 0, 1)
        for b in (-1, 0, 1)
    }
    if not all(math.isfinite(v) for v in grid.values()):
        raise ValueError("function is not finite around the point")
    a_xx = (grid[1, 0] - 2 * grid[0, 0] + grid[-1, 0]) / h**2
    c_yy = (grid[0, 1] - 2 * grid[0, 0] + grid[0, -1]) / h**2
    b_xy = (grid[1, 1] - grid[1, -1] - grid[-1, 1] + grid[-1, -1]) / (4 * h**2)
    disc = b_xy**2 - a_xx * c_yy
    if abs(disc) < band:
        return ExtremumClass.INDETERMINATE
    if disc > 0:
        return ExtremumClass.SADDLE
    return ExtremumClass.MINIMUM if a_xx > 0 else ExtremumClass.MAXIMUM
