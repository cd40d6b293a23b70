"""Brute-force checks for the closed-form results.

Nothing in here uses the closed-form optimum. The fidelity maximisations
search the separable threshold manifold numerically (grid pre-scan followed
by restarted Nelder-Mead), and the symplectic spectrum comes from a general
eigensolver applied to ``i Omega V``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .core import (
    OMEGA,
    CovarianceMatrix2M,
    StandardParams,
    SymplecticSpectrum,
    Verdict,
    build_cm,
    is_separable,
    partial_transpose,
)
from .entanglement import max_fidelity
from .errors import EigensolverFailure, InvalidParams, NoConvergence, NotSymmetric, OutOfRange
from .fidelity import beam_split_modes
from .transforms import to_standard_form_ii

MAX_EVALS = 5000
SIMPLEX_TOL = 1e-9
CERTIFICATE_STEP = 1e-6
MAX_RESTARTS = 8


@dataclass
class OptimizationResult:
    best_value: float
    best_point: np.ndarray
    iterations: int
    converged: bool
    evaluations: int = 0
    trace: Optional[list] = field(default=None, repr=False)


def numeric_symplectic_spectrum(cm: CovarianceMatrix2M) -> SymplecticSpectrum:
    """Symplectic eigenvalues as ``|eig(i Omega V)|``, paired and sorted."""
    try:
        ev = np.linalg.eigvals(1j * OMEGA @ cm.matrix)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    k = np.sort(np.abs(ev))[::-1]
    if not np.all(np.isfinite(k)) or abs(k[0] - k[1]) > 1e-6 * k[0] or abs(k[2] - k[3]) > 1e-6 * k[0]:
        raise EigensolverFailure(f"eigenvalues do not come in +/- pairs: {ev}")
    return SymplecticSpectrum(float(0.5 * (k[0] + k[1])), float(0.5 * (k[2] + k[3])))


def _fidelity_diag(aq, ap, bq, bp):
    """One-mode fidelity for diagonal covariance matrices, broadcasting over arrays."""
    delta = (aq + bq) * (ap + bp)
    lam = np.maximum(4.0 * (aq * ap - 0.25) * (bq * bp - 0.25), 0.0)
    return (np.sqrt(delta + lam) + np.sqrt(lam)) / delta


def _given_modes(params: StandardParams):
    if not params.is_symmetric:
        raise NotSymmetric(f"b1={params.b1} differs from b2={params.b2}")
    if is_separable(params) is not Verdict.ENTANGLED:
        raise OutOfRange("the oracle needs an entangled state")
    s1, s2 = beam_split_modes(build_cm(params))
    if abs(s1.v12) > 1e-12 or abs(s2.v12) > 1e-12:
        raise InvalidParams("given state is not in standard form")
    return (s1.v11, s1.v22), (s2.v11, s2.v22)


def _certificate(fun, x, value):
    """True if no coordinate probe at distance CERTIFICATE_STEP improves on ``value``."""
    for i in range(len(x)):
        for sgn in (-1.0, 1.0):
            y = np.array(x, dtype=float)
            y[i] += sgn * CERTIFICATE_STEP
            if -fun(y) > value + 1e-12:
                return False
    return True


def _maximize(fun, x0, trace):
    """Maximise ``-fun`` with restarted Nelder-Mead from ``x0``."""
    history = [] if trace else None

    def wrapped(x):
        v = fun(x)
        if history is not None:
            history.append((np.array(x), -v))
        return v

    options = {"xatol": SIMPLEX_TOL, "fatol": 1e-15}
    x, nit, nfev, success, best = np.asarray(x0, dtype=float), 0, 0, False, np.inf
    # restarting from the current best rebuilds a collapsed simplex
    for _ in range(MAX_RESTARTS):
        options["maxfev"] = MAX_EVALS - nfev
        if options["maxfev"] <= 0:
            break
        res = minimize(wrapped, x, method="Nelder-Mead", options=options)
        nit += int(res.nit)
        nfev += int(res.nfev)
        improved = best - res.fun
        if res.fun < best:
            x, best = res.x, float(res.fun)
        success = bool(res.success)
        if improved <= 1e-15:
            break
    value = float(-fun(x))
    converged = success and _certificate(fun, x, value)
    return OptimizationResult(value, x, nit, converged, nfev, history)


def _grid_seed(grid_fun, axes):
    mesh = np.meshgrid(*axes, indexing="ij")
    values = grid_fun(*mesh)
    idx = np.unravel_index(np.nanargmax(values), values.shape)
    return np.array([axis[i] for axis, i in zip(axes, idx)])


def maximize_fidelity_xy(params: StandardParams, *, trace: bool = False, grid: int = 50) -> OptimizationResult:
    """Maximise the product fidelity over ``(x, y)`` on the separable threshold.

    The given state is brought to standard form II and split by the 50:50
    beam splitter; candidates are the product states
    ``diag(2x, 1/2) (x) diag(1/2, 2y)`` with ``x, y >= 1/4``. The search runs
    in ``x = 1/4 + s**2``, ``y = 1/4 + t**2`` so the boundary, where pure
    states put their optimum, needs no special handling. ``best_point`` is
    ``(x, y)``; trace points are in ``(s, t)``.
    """
    (a1q, a1p), (a2q, a2p) = _given_modes(to_standard_form_ii(params))
    kp = numeric_symplectic_spectrum(build_cm(params)).k_plus
    hi = 10.0 * (kp * kp + 1.0)

    def grid_fun(s, t):
        x, y = 0.25 + s * s, 0.25 + t * t
        return _fidelity_diag(a1q, a1p, 2 * x, 0.5) * _fidelity_diag(a2q, a2p, 0.5, 2 * y)

    def fun(v):
        return -float(grid_fun(v[0], v[1]))

    for _ in range(6):
        axis = np.linspace(0.0, math.sqrt(hi - 0.25), grid)
        result = _maximize(fun, _grid_seed(grid_fun, [axis, axis]), trace)
        point = 0.25 + result.best_point ** 2
        if np.all(point < 0.25 + 0.99 * (hi - 0.25)):
            result.best_point = point
            return result
        hi *= 10.0
    raise NoConvergence("optimum keeps running into the search bound")


def _threshold_b(c, d):
    """Larger root ``b`` of ``(b - |d|)(b - c) = 1/4``."""
    return 0.5 * (c + d + np.sqrt((c - d) ** 2 + 1.0))


def maximize_fidelity_full(params: StandardParams, *, start: Optional[StandardParams] = None,
                           trace: bool = False, grid: int = 16) -> OptimizationResult:
    """Maximise the fidelity over symmetric scaled standard states on the threshold.

    Free variables are ``c' = p**2``, ``|d'| = q**2`` and ``log u'``; ``b'``
    is fixed by requiring the partially transposed spectrum to touch 1/2.
    The given state is used at its own squeeze factor. ``best_point`` is
    ``(b', c', d', u')`` with ``d' <= 0``.
    """
    (a1q, a1p), (a2q, a2p) = _given_modes(params)
    kp = numeric_symplectic_spectrum(build_cm(params)).k_plus
    c_hi = 4.0 * (kp * kp + 1.0)
    log_u0 = math.log(params.u1)
    span = 4.0

    def grid_fun(p, q, lu):
        c, d = p * p, q * q
        b = _threshold_b(c, d)
        u = np.exp(lu)
        f1 = _fidelity_diag(a1q, a1p, (b + c) * u, (b - d) / u)
        f2 = _fidelity_diag(a2q, a2p, (b - c) * u, (b + d) / u)
        return f1 * f2

    def fun(v):
        return -float(grid_fun(v[0], v[1], v[2]))

    x0 = None
    if start is not None:
        x0 = np.array([math.sqrt(start.c), math.sqrt(abs(start.d)), math.log(start.u1)])

    for _ in range(6):
        if x0 is None:
            axes = [np.linspace(0.0, math.sqrt(c_hi), grid), np.linspace(0.0, math.sqrt(c_hi), grid),
                    np.linspace(log_u0 - span, log_u0 + span, grid)]
            x0 = _grid_seed(grid_fun, axes)
        result = _maximize(fun, x0, trace)
        p, q, lu = result.best_point
        c, d = p * p, q * q
        if c < 0.99 * c_hi and d < 0.99 * c_hi and abs(lu - log_u0) < 0.99 * span:
            result.best_point = np.array([float(_threshold_b(c, d)), c, -d, math.exp(lu)])
            return result
        c_hi *= 4.0
        span *= 2.0
        x0 = None
    raise NoConvergence("optimum keeps running into the search bound")


def symmetric_entangled_grid(n_b: int = 12, n_kt: int = 12, n_r: int = 6) -> list[StandardParams]:
    """Deterministic grid of entangled symmetric standard states.

    ``b`` spans ``[0.55, 2]`` and ``kt`` spans ``(0.05, 0.45)``; the split of
    ``kt**2 = (b - |d|)(b - c)`` between the two factors is varied and
    unphysical combinations are dropped.
    """
    states = []
    for b in np.linspace(0.55, 2.0, n_b):
        for kt in np.linspace(0.06, 0.44, n_kt):
            # b - c = kt r and b - |d| = kt / r with r in (0, 1]
            r_lo = max(kt / b, (0.25 + kt * kt) / (2 * b * kt))
            if r_lo >= 1.0:
                continue
            for r in np.linspace(r_lo, 1.0, n_r + 2)[1:-1]:
                states.append(StandardParams.symmetric(float(b), float(b - kt * r), float(-(b - kt / r))))
    return states


def sample_entangled_states(n: int, seed: int) -> list[StandardParams]:
    """``n`` random entangled symmetric states drawn from the same domain as the grid."""
    rng = np.random.default_rng(seed)
    states = []
    while len(states) < n:
        b = rng.uniform(0.55, 2.0)
        kt = rng.uniform(0.05, 0.45)
        r_lo = max(kt / b, (0.25 + kt * kt) / (2 * b * kt))
        if r_lo >= 1.0:
            continue
        r = rng.uniform(r_lo, 1.0)
        states.append(StandardParams.symmetric(float(b), float(b - kt * r), float(-(b - kt / r))))
    return states


def verify_state(params: StandardParams) -> dict:
    """Closed-form maximal fidelity against the full brute-force search for one state."""
    kt = build_kt(params)
    closed = max_fidelity(kt)
    result = maximize_fidelity_full(params)
    return {
        "kt_minus": kt,
        "closed_form_value": closed,
        "oracle_value": result.best_value,
        "abs_error": abs(result.best_value - closed),
        "converged": result.converged,
    }


def build_kt(params: StandardParams) -> float:
    """Smallest PT symplectic eigenvalue via the numerical eigensolver."""
    return numeric_symplectic_spectrum(partial_transpose(build_cm(params))).k_minus


def run_campaign(states, workers: int = 1) -> list[dict]:
    """Verify every state; output order follows the input order."""
    if workers <= 1:
        return [verify_state(p) for p in states]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(verify_state, states))
