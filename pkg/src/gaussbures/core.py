"""Two-mode Gaussian covariance matrices, symplectic spectra and the PPT test.

Conventions
-----------
Quadratures are ordered ``(q1, p1, q2, p2)`` with ``q = (a + a^dag)/sqrt(2)``
and ``p = (a - a^dag)/(sqrt(2) i)``, so the vacuum covariance matrix is
``I/2`` and every physical symplectic eigenvalue satisfies ``k >= 1/2``.
Works that normalise the vacuum to ``I`` differ from these numbers by a
factor of two.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import asdict, dataclass
from typing import NamedTuple, Union

import numpy as np

from .errors import InvalidParams, NotSymmetric, NumericalDegeneracy, UnphysicalInput, UnphysicalState

DEFAULT_TOL = 1e-9

_J = np.array([[0.0, 1.0], [-1.0, 0.0]])
#: Symplectic form ``i (sigma_2 (+) sigma_2)``.
OMEGA = np.block([[_J, np.zeros((2, 2))], [np.zeros((2, 2)), _J]])
#: Momentum mirror on mode 2; partial transposition at covariance level.
PT_MIRROR = np.diag([1.0, 1.0, 1.0, -1.0])


def default_tol() -> float:
    """Physicality tolerance, overridable through ``GAUSS_BURES_TOL``."""
    value = os.environ.get("GAUSS_BURES_TOL")
    return float(value) if value else DEFAULT_TOL


def _tol(tol):
    return default_tol() if tol is None else tol


class Verdict(str, enum.Enum):
    SEPARABLE = "SEPARABLE"
    SEPARABLE_BOUNDARY = "SEPARABLE_BOUNDARY"
    ENTANGLED = "ENTANGLED"


class SymplecticSpectrum(NamedTuple):
    k_plus: float
    k_minus: float


@dataclass(frozen=True)
class OneModeCovariance:
    """Symmetric 2x2 covariance matrix ``[[v11, v12], [v12, v22]]`` of one mode."""

    v11: float
    v12: float
    v22: float

    def __post_init__(self):
        if not (self.v11 > 0 and self.v22 > 0):
            raise UnphysicalInput(f"diagonal entries must be positive, got {self.v11}, {self.v22}")
        if self.det < 0.25 - default_tol():
            raise UnphysicalInput(f"det = {self.det!r} violates det >= 1/4")

    @classmethod
    def from_matrix(cls, m) -> "OneModeCovariance":
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise InvalidParams(f"expected a 2x2 matrix, got shape {m.shape}")
        if abs(m[0, 1] - m[1, 0]) > default_tol():
            raise InvalidParams("one-mode covariance matrix must be symmetric")
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 1]))

    @classmethod
    def diag(cls, vq: float, vp: float) -> "OneModeCovariance":
        return cls(float(vq), 0.0, float(vp))

    @classmethod
    def thermal(cls, n: float) -> "OneModeCovariance":
        """Thermal state with mean photon number ``n``."""
        return cls.diag(n + 0.5, n + 0.5)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.v11, self.v12], [self.v12, self.v22]])

    @property
    def det(self) -> float:
        return self.v11 * self.v22 - self.v12 * self.v12


class CovarianceMatrix2M:
    """Real symmetric 4x4 covariance matrix of a two-mode Gaussian state.

    The matrix is stored read-only. With ``validate=True`` (the default) the
    constructor enforces positive diagonal entries and the uncertainty
    relation ``k_minus >= 1/2 - tol``; pass ``validate=False`` for matrices
    that are not expected to be physical, such as partial transposes.
    """

    __slots__ = ("_m", "_physical")

    def __init__(self, matrix, *, validate: bool = True, tol: float | None = None):
        m = np.array(matrix, dtype=float)
        if m.shape != (4, 4):
            raise InvalidParams(f"expected a 4x4 matrix, got shape {m.shape}")
        tol = _tol(tol)
        if not np.allclose(m, m.T, rtol=0.0, atol=tol):
            raise InvalidParams("covariance matrix must be symmetric")
        m = 0.5 * (m + m.T)
        m.setflags(write=False)
        self._m = m
        self._physical = _check_physical(m, tol)
        if validate and not self._physical:
            raise UnphysicalState("covariance matrix violates the uncertainty relation V + i/2 Omega >= 0")

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def is_physical(self) -> bool:
        return self._physical

    @property
    def V1(self) -> np.ndarray:
        return self._m[:2, :2]

    @property
    def V2(self) -> np.ndarray:
        return self._m[2:, 2:]

    @property
    def C(self) -> np.ndarray:
        return self._m[:2, 2:]

    def mode(self, j: int) -> OneModeCovariance:
        """Reduced covariance matrix of mode ``j`` (1 or 2)."""
        block = self.V1 if j == 1 else self.V2
        return OneModeCovariance.from_matrix(block)

    def to_dict(self) -> dict:
        return {"matrix": [float(v) for v in self._m.ravel()]}

    @classmethod
    def from_dict(cls, data: dict, **kwargs) -> "CovarianceMatrix2M":
        return cls(np.reshape(np.asarray(data["matrix"], dtype=float), (4, 4)), **kwargs)

    def __eq__(self, other):
        if not isinstance(other, CovarianceMatrix2M):
            return NotImplemented
        return bool(np.array_equal(self._m, other._m))

    def __hash__(self):
        return hash(self._m.tobytes())

    def __repr__(self):
        return f"CovarianceMatrix2M({self._m.tolist()!r})"


@dataclass(frozen=True)
class StandardParams:
    """Standard-form parameters ``(b1, b2, c, d)`` with local squeeze factors ``(u1, u2)``."""

    b1: float
    b2: float
    c: float
    d: float
    u1: float = 1.0
    u2: float = 1.0

    def __post_init__(self):
        for name in ("b1", "b2", "c", "d", "u1", "u2"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParams(f"{name} must be finite")
        tol = default_tol()
        if self.b1 < 0.5 - tol or self.b2 < 0.5 - tol:
            raise InvalidParams(f"b below 1/2 (b1={self.b1}, b2={self.b2})")
        if self.u1 <= 0 or self.u2 <= 0:
            raise InvalidParams(f"squeeze factors must be positive (u1={self.u1}, u2={self.u2})")

    @classmethod
    def symmetric(cls, b: float, c: float, d: float, u: float = 1.0) -> "StandardParams":
        return cls(b, b, c, d, u, u)

    @property
    def is_symmetric(self) -> bool:
        return abs(self.b1 - self.b2) <= default_tol()

    @property
    def b(self) -> float:
        if not self.is_symmetric:
            raise NotSymmetric(f"b1={self.b1} differs from b2={self.b2}")
        return self.b1

    def with_squeeze(self, u1: float, u2: float | None = None) -> "StandardParams":
        return StandardParams(self.b1, self.b2, self.c, self.d, u1, u1 if u2 is None else u2)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "StandardParams":
        return cls(**{k: float(data[k]) for k in ("b1", "b2", "c", "d", "u1", "u2") if k in data})


def _invariants(m: np.ndarray):
    """Return ``(Delta, det V, disc)`` with ``disc = (k+^2 - k-^2)^2``."""
    delta = np.linalg.det(m[:2, :2]) + np.linalg.det(m[2:, 2:]) + 2.0 * np.linalg.det(m[:2, 2:])
    det_v = np.linalg.det(m)
    # -(Omega V)^2 has eigenvalues k+^2, k+^2, k-^2, k-^2; after removing the
    # mean the squared trace gives the discriminant without cancellation.
    a = -(OMEGA @ m) @ (OMEGA @ m)
    shifted = a - 0.5 * delta * np.eye(4)
    disc = float(np.sum(shifted * shifted.T))
    return float(delta), float(det_v), disc


def _spectrum(m: np.ndarray, tol: float) -> SymplecticSpectrum:
    delta, det_v, disc = _invariants(m)
    if disc < -tol * max(1.0, delta * delta):
        raise NumericalDegeneracy(f"negative discriminant {disc!r}; matrix is not a valid covariance matrix")
    kp2 = 0.5 * (delta + math.sqrt(max(disc, 0.0)))
    if kp2 <= 0 or det_v <= 0:
        raise NumericalDegeneracy("covariance matrix is not positive definite")
    return SymplecticSpectrum(math.sqrt(kp2), math.sqrt(det_v / kp2))


def _check_physical(m: np.ndarray, tol: float) -> bool:
    if np.any(np.diag(m) <= 0):
        return False
    try:
        return _spectrum(m, tol).k_minus >= 0.5 - tol
    except NumericalDegeneracy:
        return False


def build_cm(params: StandardParams, *, validate: bool = True) -> CovarianceMatrix2M:
    """Covariance matrix of the scaled standard state ``V(u1, u2)``.

    >>> build_cm(StandardParams.symmetric(0.5, 0.0, 0.0)).matrix.diagonal().tolist()
    [0.5, 0.5, 0.5, 0.5]
    """
    p = params
    s = math.sqrt(p.u1 * p.u2)
    m = np.diag([p.b1 * p.u1, p.b1 / p.u1, p.b2 * p.u2, p.b2 / p.u2])
    m[0, 2] = m[2, 0] = p.c * s
    m[1, 3] = m[3, 1] = p.d / s
    return CovarianceMatrix2M(m, validate=validate)


def characteristic_function(cm: CovarianceMatrix2M, x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.exp(-0.5 * x @ cm.matrix @ x))


def symplectic_spectrum(cm: CovarianceMatrix2M, tol: float | None = None) -> SymplecticSpectrum:
    """Symplectic eigenvalues ``(k_plus, k_minus)`` from the Sp(2)xSp(2) invariants.

    Uses ``k+^2 + k-^2 = det V1 + det V2 + 2 det C`` and ``k+^2 k-^2 = det V``.
    Raises :class:`NumericalDegeneracy` when the discriminant is negative
    beyond ``tol``.
    """
    return _spectrum(cm.matrix, _tol(tol))


def uncertainty_determinant(cm: CovarianceMatrix2M) -> float:
    """``det(V + i/2 Omega)`` evaluated directly as a complex determinant."""
    return float(np.linalg.det(cm.matrix + 0.5j * OMEGA).real)


def partial_transpose(cm: CovarianceMatrix2M) -> CovarianceMatrix2M:
    """Mirror the momentum of mode 2; the result is not validated.

    ``is_physical`` on the returned matrix is ``False`` exactly when the
    input state is entangled.
    """
    return CovarianceMatrix2M(PT_MIRROR @ cm.matrix @ PT_MIRROR, validate=False)


def _require_symmetric_convention(params: StandardParams):
    if not params.is_symmetric:
        raise NotSymmetric(f"b1={params.b1} differs from b2={params.b2}")
    if params.d > 0:
        raise InvalidParams("symmetric entanglement routines require d <= 0")
    if params.c < abs(params.d) - default_tol():
        raise InvalidParams("symmetric entanglement routines require c >= |d|")


def symmetric_spectrum(params: StandardParams) -> SymplecticSpectrum:
    """Closed-form ``(k_plus, k_minus)`` of a symmetric standard state."""
    _require_symmetric_convention(params)
    b, c, ad = params.b1, params.c, abs(params.d)
    return SymplecticSpectrum(math.sqrt((b - ad) * (b + c)), math.sqrt((b + ad) * (b - c)))


def pt_spectrum_symmetric(params: StandardParams) -> SymplecticSpectrum:
    """Closed-form symplectic spectrum of the partially transposed state."""
    _require_symmetric_convention(params)
    b, c, ad = params.b1, params.c, abs(params.d)
    return SymplecticSpectrum(math.sqrt((b + ad) * (b + c)), math.sqrt((b - ad) * (b - c)))


def verdict_from_kt(kt_minus: float, tol: float | None = None) -> Verdict:
    tol = _tol(tol)
    if abs(kt_minus - 0.5) <= tol:
        return Verdict.SEPARABLE_BOUNDARY
    return Verdict.SEPARABLE if kt_minus > 0.5 else Verdict.ENTANGLED


def is_separable(state: Union[StandardParams, CovarianceMatrix2M], tol: float | None = None) -> Verdict:
    """PPT verdict: separable iff the smallest PT symplectic eigenvalue is at least 1/2."""
    if isinstance(state, StandardParams):
        if state.is_symmetric and state.d <= 0 and state.c >= abs(state.d):
            build_cm(state)
            return verdict_from_kt(pt_spectrum_symmetric(state).k_minus, tol)
        state = build_cm(state)
    kt = symplectic_spectrum(partial_transpose(state), tol).k_minus
    return verdict_from_kt(kt, tol)
