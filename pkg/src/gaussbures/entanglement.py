"""Bures-distance Gaussian entanglement of symmetric two-mode states.

For a symmetric state the answer depends on the smallest symplectic
eigenvalue ``kt`` of the partially transposed covariance matrix alone::

    F_max = 2 kt / (kt + 1/2)**2
    E0    = 1 - sqrt(F_max) = (1 - sqrt(2 kt))**2 / (2 kt + 1)      (kt < 1/2)

``E0`` is half the squared Bures distance to the nearest separable Gaussian
state, so it lies in ``[0, 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import (
    CovarianceMatrix2M,
    StandardParams,
    SymplecticSpectrum,
    Verdict,
    build_cm,
    default_tol,
    pt_spectrum_symmetric,
    symmetric_spectrum,
    verdict_from_kt,
)
from .errors import DegenerateDenominator, InvalidParams, NotSymmetric, OutOfRange
from .transforms import standard_form_ii_symmetric, to_standard_form_ii


def _check_entangled_kt(kt_minus: float):
    if not kt_minus > 0:
        raise OutOfRange(f"kt_minus={kt_minus!r} must be positive")
    if verdict_from_kt(kt_minus) is not Verdict.ENTANGLED:
        raise OutOfRange(f"kt_minus={kt_minus!r} describes a separable state")


def max_fidelity(kt_minus: float) -> float:
    """Largest fidelity between the state and a separable Gaussian state."""
    if not kt_minus > 0:
        raise OutOfRange(f"kt_minus={kt_minus!r} must be positive")
    if kt_minus > 0.5 + default_tol():
        raise OutOfRange(f"kt_minus={kt_minus!r} describes a separable state")
    return 2.0 * kt_minus / (kt_minus + 0.5) ** 2


def e0(kt_minus: float) -> float:
    """Gaussian entanglement ``E0``; zero for separable and boundary states."""
    if not kt_minus > 0:
        raise OutOfRange(f"kt_minus={kt_minus!r} must be positive")
    if verdict_from_kt(kt_minus) is not Verdict.ENTANGLED:
        return 0.0
    t = 2.0 * kt_minus
    return (1.0 - math.sqrt(t)) ** 2 / (t + 1.0)


def optimal_xy(spectrum: SymplecticSpectrum, kt_minus: float) -> tuple[float, float]:
    """Optimal ``x = (b'+c')(b'-|d'|)`` and ``y = (b'+|d'|)(b'-c')``."""
    _check_entangled_kt(kt_minus)
    kp, km = spectrum
    return (0.25 + (kp * kp - 0.25) / (2 * kt_minus),
            0.25 + (km * km - 0.25) / (2 * kt_minus))


def closest_separable(spectrum: SymplecticSpectrum, kt_minus: float) -> StandardParams:
    """Standard parameters ``(b'', c'', d'')`` of the closest separable state (``u = 1``)."""
    _check_entangled_kt(kt_minus)
    kp, km = spectrum
    p = kt_minus + kp * kp - 0.25
    q = kt_minus + km * km - 0.25
    h = 1.0 / (2.0 * kt_minus)
    b = h * math.sqrt(p * q)
    c = h * math.sqrt(q / p) * (kp * kp - 0.25)
    d = h * math.sqrt(p / q) * (km * km - 0.25)
    return StandardParams.symmetric(b, c, -d)


def closest_separable_cm(spectrum: SymplecticSpectrum, kt_minus: float) -> CovarianceMatrix2M:
    """Full covariance matrix of the closest separable state in its own standard form II."""
    return build_cm(to_standard_form_ii(closest_separable(spectrum, kt_minus)))


def _require_symmetric(params: StandardParams):
    if not params.is_symmetric:
        raise NotSymmetric(f"b1={params.b1} differs from b2={params.b2}; closed forms need a symmetric state")
    if params.u1 != params.u2:
        raise InvalidParams("closed forms need equal local squeeze factors")


@dataclass(frozen=True)
class EntanglementReport:
    verdict: Verdict
    spectrum: SymplecticSpectrum
    pt_spectrum: SymplecticSpectrum
    e0: float
    max_fidelity: float
    x_max: Optional[float] = None
    y_max: Optional[float] = None
    closest: Optional[StandardParams] = None
    form_ii_v: Optional[float] = None

    def to_dict(self) -> dict:
        closest = self.closest
        return {
            "verdict": self.verdict.value,
            "k_plus": self.spectrum.k_plus,
            "k_minus": self.spectrum.k_minus,
            "kt_plus": self.pt_spectrum.k_plus,
            "kt_minus": self.pt_spectrum.k_minus,
            "e0": self.e0,
            "max_fidelity": self.max_fidelity,
            "x_max": self.x_max,
            "y_max": self.y_max,
            "closest_b": None if closest is None else closest.b1,
            "closest_c": None if closest is None else closest.c,
            "closest_d": None if closest is None else closest.d,
            "form_ii_v": self.form_ii_v,
        }


def analyze(params: StandardParams) -> EntanglementReport:
    """Full entanglement report for a symmetric, equally squeezed standard state.

    Separable states get ``e0 = 0`` and ``max_fidelity = 1`` (the state is
    its own closest separable state); optimum and closest-state fields are
    left empty.
    """
    _require_symmetric(params)
    build_cm(params)
    spectrum = symmetric_spectrum(params)
    pt = pt_spectrum_symmetric(params)
    verdict = verdict_from_kt(pt.k_minus)
    try:
        form_ii_v = standard_form_ii_symmetric(params).v1
    except DegenerateDenominator:
        form_ii_v = None

    if verdict is not Verdict.ENTANGLED:
        return EntanglementReport(verdict, spectrum, pt, 0.0, 1.0, form_ii_v=form_ii_v)

    kt = pt.k_minus
    x, y = optimal_xy(spectrum, kt)
    return EntanglementReport(
        verdict, spectrum, pt, e0(kt), max_fidelity(kt),
        x_max=x, y_max=y, closest=closest_separable(spectrum, kt), form_ii_v=form_ii_v,
    )
