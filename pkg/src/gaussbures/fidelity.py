"""Uhlmann fidelity between undisplaced Gaussian states and the Bures distance."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .core import CovarianceMatrix2M, OneModeCovariance, StandardParams, build_cm, default_tol
from .errors import InvalidParams, NumericalDegeneracy, OutOfRange, UnphysicalInput
from .transforms import apply_symplectic, beam_splitter_matrix, rotation


def _clamp_unit(f: float, what: str = "fidelity") -> float:
    tol = default_tol()
    if f < -tol or f > 1 + tol or not math.isfinite(f):
        raise NumericalDegeneracy(f"{what} {f!r} outside [0, 1]")
    return min(max(f, 0.0), 1.0)


def _purity_excess(a: OneModeCovariance) -> float:
    """``det V - 1/4``, snapped to zero within rounding of a pure state.

    ``sqrt(Lambda)`` turns rounding noise of order 1e-17 in a pure state's
    determinant into errors of order 1e-8 in the fidelity.
    """
    excess = a.det - 0.25
    noise = 16 * np.finfo(float).eps * (abs(a.v11 * a.v22) + a.v12 * a.v12)
    return 0.0 if excess <= noise else excess


def one_mode_fidelity(a: OneModeCovariance, b: OneModeCovariance) -> float:
    """Fidelity of two zero-mean one-mode Gaussian states.

    ``F = 1 / (sqrt(Delta + Lambda) - sqrt(Lambda))`` with
    ``Delta = det(Va + Vb)`` and ``Lambda = 4 (det Va - 1/4)(det Vb - 1/4)``.

    >>> one_mode_fidelity(OneModeCovariance.thermal(0), OneModeCovariance.thermal(1))
    0.5
    """
    tol = default_tol()
    da, db = a.det, b.det
    if da < 0.25 - tol or db < 0.25 - tol:
        raise UnphysicalInput(f"one-mode determinant below 1/4 ({da!r}, {db!r})")
    s11, s12, s22 = a.v11 + b.v11, a.v12 + b.v12, a.v22 + b.v22
    delta = s11 * s22 - s12 * s12
    lam = 4.0 * _purity_excess(a) * _purity_excess(b)
    # rationalised form avoids cancellation between the two square roots
    return _clamp_unit((math.sqrt(delta + lam) + math.sqrt(lam)) / delta)


def product_fidelity(a1: OneModeCovariance, a2: OneModeCovariance,
                     b1: OneModeCovariance, b2: OneModeCovariance) -> float:
    """Fidelity between the product states ``a1 (x) a2`` and ``b1 (x) b2``."""
    return one_mode_fidelity(a1, b1) * one_mode_fidelity(a2, b2)


def bures_distance(f: float) -> float:
    """``d_B = sqrt(2 - 2 sqrt(F))``."""
    tol = default_tol()
    if not (-tol <= f <= 1 + tol):
        raise OutOfRange(f"fidelity {f!r} outside [0, 1]")
    f = min(max(f, 0.0), 1.0)
    return math.sqrt(max(2.0 - 2.0 * math.sqrt(f), 0.0))


def transition_probability(a: OneModeCovariance, b: OneModeCovariance) -> float:
    """``Tr(rho sigma) = 1/sqrt(det(Va + Vb))`` for zero-mean one-mode Gaussians."""
    return 1.0 / math.sqrt(np.linalg.det(a.matrix + b.matrix))


def beam_split_modes(cm: CovarianceMatrix2M, tol: float = 1e-10) -> tuple[OneModeCovariance, OneModeCovariance]:
    """Reduced modes after the 50:50 beam splitter ``M(pi/2, 0)``.

    Raises :class:`InvalidParams` if the transformed state is not a product,
    i.e. the input was not a symmetric, equally squeezed state.
    """
    out = apply_symplectic(cm, beam_splitter_matrix(math.pi / 2, 0.0))
    scale = max(1.0, float(np.max(np.abs(cm.matrix))))
    if np.max(np.abs(out.C)) > tol * scale:
        raise InvalidParams("beam splitter output is correlated; state is not symmetric and equally squeezed")
    return OneModeCovariance.from_matrix(out.V1), OneModeCovariance.from_matrix(out.V2)


def symmetric_pair_fidelity(p: StandardParams, q: StandardParams) -> float:
    """Fidelity of two symmetric, equally squeezed standard states.

    Both states are mapped by the 50:50 beam splitter onto product states,
    after which the fidelity factorises into one-mode fidelities.
    """
    a1, a2 = beam_split_modes(build_cm(p))
    b1, b2 = beam_split_modes(build_cm(q))
    return product_fidelity(a1, a2, b1, b2)


def _one_mode_symplectic(phi: float, r: float) -> np.ndarray:
    return rotation(phi) @ np.diag([math.exp(r), math.exp(-r)])


def _congruence(s: np.ndarray, a: OneModeCovariance) -> OneModeCovariance:
    return OneModeCovariance.from_matrix(s.T @ a.matrix @ s)


def _purified(a: OneModeCovariance) -> OneModeCovariance:
    k = 0.5 / math.sqrt(a.det)
    return OneModeCovariance(a.v11 * k, a.v12 * k, a.v22 * k)


def check_fidelity_properties(pairs: Iterable[Sequence[OneModeCovariance]], *,
                              tol: float = 1e-10, seed: int = 0) -> dict:
    """Run executable forms of the fidelity properties P1-P5 on sample pairs.

    Returns ``{name: {"pass": bool, "worst_deviation": float}}``. P4 is
    checked for Gaussian unitaries only (one-mode rotations and squeezes
    applied to both arguments); P3 uses the transition probability
    ``1/sqrt(det(Va + Vb))`` as its lower bound and checks equality when the
    first argument is made pure.
    """
    pairs = [tuple(p) for p in pairs]
    if not pairs:
        raise InvalidParams("need at least one pair")
    rng = np.random.default_rng(seed)
    worst = dict.fromkeys(("P1", "P2", "P3", "P4", "P5"), 0.0)
    distinct_ok = True

    for a, b in pairs:
        f = one_mode_fidelity(a, b)
        worst["P1"] = max(worst["P1"], -f, f - 1.0,
                          abs(one_mode_fidelity(a, a) - 1.0), abs(one_mode_fidelity(b, b) - 1.0))
        if np.max(np.abs(a.matrix - b.matrix)) > 1e-6 and not f < 1.0:
            distinct_ok = False

        worst["P2"] = max(worst["P2"], abs(f - one_mode_fidelity(b, a)))

        pa = _purified(a)
        worst["P3"] = max(worst["P3"], transition_probability(a, b) - f,
                          abs(one_mode_fidelity(pa, b) - transition_probability(pa, b)))

        s = _one_mode_symplectic(rng.uniform(-math.pi, math.pi), rng.uniform(-1.0, 1.0))
        worst["P4"] = max(worst["P4"], abs(one_mode_fidelity(_congruence(s, a), _congruence(s, b)) - f))

    for (a1, b1), (a2, b2) in zip(pairs[::2], pairs[1::2]):
        f1, f2 = one_mode_fidelity(a1, b1), one_mode_fidelity(a2, b2)
        worst["P5"] = max(worst["P5"], abs(product_fidelity(a1, a2, b1, b2) - f1 * f2))
        # pure first arguments: the two-mode transition probability must factorise too
        p1, p2 = _purified(a1), _purified(a2)
        va = np.zeros((4, 4))
        vb = np.zeros((4, 4))
        va[:2, :2], va[2:, 2:] = p1.matrix, p2.matrix
        vb[:2, :2], vb[2:, 2:] = b1.matrix, b2.matrix
        two_mode = 1.0 / math.sqrt(np.linalg.det(va + vb))
        worst["P5"] = max(worst["P5"], abs(product_fidelity(p1, p2, b1, b2) - two_mode))

    worst = {k: max(v, 0.0) for k, v in worst.items()}
    report = {k: {"pass": v < tol, "worst_deviation": v} for k, v in worst.items()}
    report["P1"]["pass"] = report["P1"]["pass"] and distinct_ok
    return report
