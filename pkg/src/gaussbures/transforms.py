"""Symplectic transformations of two-mode covariance matrices.

Local squeezers, the lossless beam splitter, symplectic congruences and the
reduction of a standard-form state to standard form II.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import OMEGA, CovarianceMatrix2M, StandardParams, default_tol
from .errors import DegenerateDenominator, InvalidParams, MultipleRoots, NoConvergence, NotSymmetric, NotSymplectic, OutOfRange

SYMPLECTIC_TOL = 1e-12


class SymplecticMatrix4:
    """A real 4x4 matrix ``M`` with ``M^T Omega M = Omega``."""

    __slots__ = ("_m",)

    def __init__(self, matrix, *, tol: float = SYMPLECTIC_TOL):
        m = np.array(matrix, dtype=float)
        if m.shape != (4, 4):
            raise NotSymplectic(f"expected a 4x4 matrix, got shape {m.shape}")
        scale = max(1.0, float(np.max(np.abs(m))) ** 2)
        if not np.allclose(m.T @ OMEGA @ m, OMEGA, rtol=0.0, atol=tol * scale):
            raise NotSymplectic("matrix does not preserve the symplectic form")
        m.setflags(write=False)
        self._m = m

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def is_orthogonal(self) -> bool:
        return bool(np.allclose(self._m.T @ self._m, np.eye(4), rtol=0.0, atol=SYMPLECTIC_TOL))

    def __matmul__(self, other: "SymplecticMatrix4") -> "SymplecticMatrix4":
        return SymplecticMatrix4(self._m @ other._m, tol=1e-10)

    def __repr__(self):
        return f"SymplecticMatrix4({self._m.tolist()!r})"


def rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


def beam_splitter_matrix(theta: float, phi: float) -> SymplecticMatrix4:
    """Orthogonal symplectic matrix of a lossless beam splitter.

    ``theta`` in ``[0, pi]`` sets the mixing, ``phi`` in ``(-pi, pi]`` the phase.
    ``M(pi/2, 0)`` diagonalises the covariance matrix of a symmetric,
    equally squeezed standard state.
    """
    if not 0.0 <= theta <= math.pi:
        raise OutOfRange(f"theta={theta} outside [0, pi]")
    if not -math.pi < phi <= math.pi:
        raise OutOfRange(f"phi={phi} outside (-pi, pi]")
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    m = np.block([[c * np.eye(2), -s * rotation(phi)], [s * rotation(-phi), c * np.eye(2)]])
    return SymplecticMatrix4(m)


def local_squeeze_matrix(u1: float, u2: float) -> SymplecticMatrix4:
    if u1 <= 0 or u2 <= 0:
        raise OutOfRange(f"squeeze factors must be positive, got {u1}, {u2}")
    r1, r2 = math.sqrt(u1), math.sqrt(u2)
    return SymplecticMatrix4(np.diag([r1, 1 / r1, r2, 1 / r2]))


def local_rotation_matrix(phi1: float, phi2: float) -> SymplecticMatrix4:
    """Independent phase-space rotations of the two modes."""
    z = np.zeros((2, 2))
    return SymplecticMatrix4(np.block([[rotation(phi1), z], [z, rotation(phi2)]]))


def apply_symplectic(cm: CovarianceMatrix2M, m) -> CovarianceMatrix2M:
    """Congruence ``M^T V M``.

    Physical inputs stay physical, so the result is re-validated whenever
    the input was.
    """
    if not isinstance(m, SymplecticMatrix4):
        m = SymplecticMatrix4(m)
    mm = m.matrix
    return CovarianceMatrix2M(mm.T @ cm.matrix @ mm, validate=cm.is_physical)


@dataclass(frozen=True)
class StandardFormIIScaling:
    v1: float
    v2: float


def form_ii_residuals(params: StandardParams, v1: float, v2: float) -> tuple[float, float]:
    """Residuals of the two algebraic conditions defining standard form II."""
    b1, b2, c, ad = params.b1, params.b2, params.c, abs(params.d)
    lhs = b1 * (v1 * v1 - 1) / (2 * b1 - v1)
    rhs = b2 * (v2 * v2 - 1) / (2 * b2 - v2)
    r2 = b1 * b2 * (v1 * v1 - 1) * (v2 * v2 - 1) - (c * v1 * v2 - ad) ** 2
    return lhs - rhs, r2


def standard_form_ii_symmetric(params: StandardParams, tol: float | None = None) -> StandardFormIIScaling:
    """Closed-form scaling ``v = sqrt((b - |d|)/(b - c))`` of a symmetric state."""
    if not params.is_symmetric:
        raise NotSymmetric(f"b1={params.b1} differs from b2={params.b2}")
    b, c, ad = params.b1, params.c, abs(params.d)
    if params.d > 0 or c < ad - default_tol():
        raise InvalidParams("standard form II requires c >= |d| and d <= 0")
    tol = default_tol() if tol is None else tol
    if b - c <= tol:
        raise DegenerateDenominator(f"b - c = {b - c!r} is not positive")
    v = math.sqrt((b - ad) / (b - c))
    return StandardFormIIScaling(v, v)


def to_standard_form_ii(params: StandardParams) -> StandardParams:
    """Same standard parameters rescaled to the symmetric standard form II."""
    s = standard_form_ii_symmetric(params)
    return params.with_squeeze(s.v1, s.v2)


def _cross_residuals(v, b1, b2, c, ad):
    v1, v2 = v
    r1 = b1 * (v1 * v1 - 1) * (2 * b2 - v2) - b2 * (v2 * v2 - 1) * (2 * b1 - v1)
    r2 = b1 * b2 * (v1 * v1 - 1) * (v2 * v2 - 1) - (c * v1 * v2 - ad) ** 2
    return np.array([r1, r2])


def _cross_jacobian(v, b1, b2, c, ad):
    v1, v2 = v
    g = c * v1 * v2 - ad
    return np.array([
        [2 * b1 * v1 * (2 * b2 - v2) + b2 * (v2 * v2 - 1),
         -b1 * (v1 * v1 - 1) - 2 * b2 * v2 * (2 * b1 - v1)],
        [2 * b1 * b2 * v1 * (v2 * v2 - 1) - 2 * g * c * v2,
         2 * b1 * b2 * v2 * (v1 * v1 - 1) - 2 * g * c * v1],
    ])


def _newton(v0, args, max_iter=200):
    """Damped Newton on the cross-multiplied system; returns the point or None."""
    v = np.array(v0, dtype=float)
    r = _cross_residuals(v, *args)
    for _ in range(max_iter):
        if np.all(np.abs(r) < 1e-12):
            return v
        try:
            step = np.linalg.solve(_cross_jacobian(v, *args), -r)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(step)):
            return None
        norm = np.linalg.norm(r)
        lam = 1.0
        while lam > 1e-6:
            trial = v + lam * step
            r_trial = _cross_residuals(trial, *args)
            if np.linalg.norm(r_trial) < norm:
                break
            lam *= 0.5
        v, r = trial, r_trial
        if np.max(np.abs(lam * step)) < 1e-14:
            return v
    return v if np.all(np.abs(r) < 1e-10) else None


def _eq11_branches(v1, b1, b2, c, ad):
    """The two roots in v2 of the second condition, as a quadratic, for each v1."""
    a = b1 * b2 * (v1 * v1 - 1) - c * c * v1 * v1
    b = 2 * c * ad * v1
    cq = -(b1 * b2 * (v1 * v1 - 1) + ad * ad)
    disc = b * b - 4 * a * cq
    with np.errstate(invalid="ignore", divide="ignore"):
        sq = np.sqrt(disc)
        q = -0.5 * (b + np.where(b >= 0, sq, -sq))
        r_a = q / a
        r_b = cq / q
    # cq/q stays finite where the leading coefficient changes sign; keep the
    # labels unsorted so both branches are continuous in v1
    return np.where(disc >= 0, r_b, np.nan), np.where(disc >= 0, r_a, np.nan)


def _collect_roots(params, args, hi, grid_points, newton_root):
    b1, b2, c, ad = args
    candidates = [] if newton_root is None else [newton_root]
    # geometric spacing resolves roots just above v1 = 1
    grid = 1.0 + np.concatenate([[0.0], np.geomspace(1e-10, hi - 1.0, grid_points)])
    for branch in (0, 1):
        v2 = _eq11_branches(grid, *args)[branch]
        r1 = b1 * (grid**2 - 1) * (2 * b2 - v2) - b2 * (v2**2 - 1) * (2 * b1 - grid)
        ok = np.isfinite(r1) & (v2 >= 1 - 1e-9) & (v2 <= hi)
        for i in np.nonzero(ok[:-1] & ok[1:] & (np.sign(r1[:-1]) != np.sign(r1[1:])))[0]:

            def f(x, branch=branch):
                w2 = _eq11_branches(np.array(x), *args)[branch]
                return float(b1 * (x * x - 1) * (2 * b2 - w2) - b2 * (w2 * w2 - 1) * (2 * b1 - x))

            try:
                x = brentq(f, grid[i], grid[i + 1], xtol=1e-15)
            except ValueError:
                continue
            w2 = float(_eq11_branches(np.array(x), *args)[branch])
            if not np.isfinite(w2):
                continue
            polished = _newton((x, w2), args, max_iter=20)
            if polished is not None:
                candidates.append(polished)

    roots = []
    for v in candidates:
        v1, v2 = float(v[0]), float(v[1])
        if v1 < 1 - 1e-9 or v2 < 1 - 1e-9 or v1 > hi or v2 > hi:
            continue
        if abs(2 * b1 - v1) < 1e-9 or abs(2 * b2 - v2) < 1e-9:
            continue
        r10, r11 = form_ii_residuals(params, v1, v2)
        scale = max(1.0, b1 * b2 * v1 * v1 * v2 * v2)
        if max(abs(r10), abs(r11)) > 1e-10 * scale:
            continue
        if not any(abs(v1 - w1) < 1e-7 and abs(v2 - w2) < 1e-7 for w1, w2 in roots):
            roots.append((max(v1, 1.0), max(v2, 1.0)))

    return roots


def standard_form_ii_generic(params: StandardParams, *, grid_points: int = 4000) -> StandardFormIIScaling:
    """Solve the standard-form-II system numerically for arbitrary ``(b1, b2, c, d)``.

    A damped Newton iteration from ``v1 = v2 = 1`` is complemented by a scan
    over ``v1 in [1, 10 max(b1, b2)]`` with ``v2`` eliminated through the
    second condition; sign changes of the first condition are bracketed and
    bisected. Only roots with ``v1, v2 >= 1`` are admissible. For ``b1 = b2``
    the unique root with ``v1 = v2`` is returned even if mirrored pairs of
    asymmetric roots also exist.

    Raises
    ------
    NoConvergence
        If no admissible root is found.
    MultipleRoots
        If more than one distinct admissible root exists; all are attached.
    """
    b1, b2, c, ad = params.b1, params.b2, params.c, abs(params.d)
    if params.d > 0 or c < ad - default_tol():
        raise InvalidParams("standard form II requires c >= |d| and d <= 0")
    args = (b1, b2, c, ad)
    newton_root = _newton((1.0, 1.0), args)
    hi = 10 * max(b1, b2)
    for _ in range(4):
        roots = _collect_roots(params, args, hi, grid_points, newton_root)
        if roots:
            break
        # roots grow without bound as c -> b; widen before giving up
        hi *= 10

    if not roots:
        raise NoConvergence(f"no admissible standard-form-II root for {params}")
    if len(roots) > 1 and params.is_symmetric:
        # the system is invariant under v1 <-> v2 for b1 = b2, so off-diagonal
        # roots come in mirrored pairs; only the diagonal root respects the symmetry
        diagonal = [r for r in roots if abs(r[0] - r[1]) < 1e-7]
        if len(diagonal) == 1:
            roots = diagonal
    if len(roots) > 1:
        raise MultipleRoots(f"{len(roots)} admissible standard-form-II roots for {params}", roots)
    return StandardFormIIScaling(*roots[0])
