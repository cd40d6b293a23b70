"""Acceptance suite: one printed PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the lines are printed even
when output capture is on.
"""

import math

import numpy as np
import pytest

from gaussbures import OneModeCovariance, build_cm, partial_transpose, symplectic_spectrum
from gaussbures.core import pt_spectrum_symmetric, symmetric_spectrum
from gaussbures.entanglement import closest_separable, closest_separable_cm, e0, max_fidelity, optimal_xy
from gaussbures.fidelity import check_fidelity_properties, one_mode_fidelity, symmetric_pair_fidelity
from gaussbures.oracle import (
    maximize_fidelity_full,
    maximize_fidelity_xy,
    numeric_symplectic_spectrum,
    symmetric_entangled_grid,
)
from gaussbures.transforms import (
    apply_symplectic,
    beam_splitter_matrix,
    form_ii_residuals,
    standard_form_ii_generic,
    standard_form_ii_symmetric,
    to_standard_form_ii,
)

from conftest import random_cm, random_symmetric_params


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {number}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")
        assert ok, f"criterion {number} failed: {detail}"
    return emit


@pytest.fixture(scope="module")
def grid():
    states = symmetric_entangled_grid()
    assert len(states) >= 200
    return states


@pytest.fixture(scope="module")
def grid_kt(grid):
    return [pt_spectrum_symmetric(p).k_minus for p in grid]


def test_c1_e0_against_brute_force(grid, grid_kt, report):
    worst, unconverged = 0.0, 0
    for p, kt in zip(grid, grid_kt):
        res = maximize_fidelity_full(p)
        unconverged += not res.converged
        worst = max(worst, abs(e0(kt) - (1 - math.sqrt(res.best_value))))
    report(1, "E0 closed form vs full optimiser", worst < 1e-5,
           f"{len(grid)} states, max |dE0| = {worst:.2e}, unconverged = {unconverged}")


def test_c2_optimum_position(grid, grid_kt, report):
    worst_pos = worst_val = excess = 0.0
    for p, kt in zip(grid, grid_kt):
        res = maximize_fidelity_xy(p)
        x, y = optimal_xy(symmetric_spectrum(p), kt)
        worst_pos = max(worst_pos, abs(res.best_point[0] - x), abs(res.best_point[1] - y))
        worst_val = max(worst_val, abs(res.best_value - max_fidelity(kt)))
        excess = max(excess, maximize_fidelity_full(p).best_value - res.best_value)
    ok = worst_pos < 1e-4 and worst_val < 1e-5 and excess <= 1e-6
    report(2, "(x, y) optimiser vs closed-form optimum", ok,
           f"max position error {worst_pos:.2e}, max value error {worst_val:.2e}, "
           f"full minus xy at most {excess:.2e}")


def test_c3_closest_state(grid, grid_kt, report):
    worst_kt = worst_f = 0.0
    for p, kt in zip(grid, grid_kt):
        spectrum = symmetric_spectrum(p)
        cm = closest_separable_cm(spectrum, kt)
        worst_kt = max(worst_kt, abs(numeric_symplectic_spectrum(partial_transpose(cm)).k_minus - 0.5),
                       abs(symplectic_spectrum(partial_transpose(cm), tol=1.0).k_minus - 0.5))
        f = symmetric_pair_fidelity(to_standard_form_ii(p), to_standard_form_ii(closest_separable(spectrum, kt)))
        worst_f = max(worst_f, abs(f - max_fidelity(kt)))
    report(3, "closest separable state on threshold and attains max fidelity",
           worst_kt < 1e-9 and worst_f < 1e-10,
           f"max |kt' - 1/2| = {worst_kt:.2e}, max |F - Fmax| = {worst_f:.2e}")


def test_c4_spectra(report):
    rng = np.random.default_rng(4)
    worst_eig = 0.0
    for _ in range(1000):
        cm = random_cm(rng)
        worst_eig = max(worst_eig, float(np.max(np.abs(np.subtract(symplectic_spectrum(cm),
                                                                   numeric_symplectic_spectrum(cm))))))
    worst_sym = 0.0
    for _ in range(1000):
        p = random_symmetric_params(rng, u=1.0)
        cm = build_cm(p)
        worst_sym = max(worst_sym,
                        float(np.max(np.abs(np.subtract(symplectic_spectrum(cm), symmetric_spectrum(p))))),
                        float(np.max(np.abs(np.subtract(symplectic_spectrum(partial_transpose(cm), tol=1.0),
                                                        pt_spectrum_symmetric(p))))))
    report(4, "invariant spectra vs eigensolver and symmetric closed forms",
           worst_eig < 1e-9 and worst_sym < 1e-12,
           f"eigensolver max diff {worst_eig:.2e} (1000 CMs), closed forms max diff {worst_sym:.2e}")


def test_c5_diagonalisation(report):
    rng = np.random.default_rng(5)
    bs = beam_splitter_matrix(math.pi / 2, 0.0)
    worst_diag = worst_mid = 0.0
    for _ in range(100):
        p = random_symmetric_params(rng)
        b, c, ad, u = p.b, p.c, abs(p.d), p.u1
        out = apply_symplectic(build_cm(p), bs).matrix
        expected = np.diag([(b + c) * u, (b - ad) / u, (b - c) * u, (b + ad) / u])
        worst_diag = max(worst_diag, float(np.max(np.abs(out - expected))))
        ii = apply_symplectic(build_cm(to_standard_form_ii(p)), bs).matrix
        kt = pt_spectrum_symmetric(p).k_minus
        worst_mid = max(worst_mid, abs(ii[1, 1] - kt), abs(ii[2, 2] - kt))
    report(5, "beam-splitter diagonalisation and form-II middle entries",
           worst_diag < 1e-12 and worst_mid < 1e-12,
           f"max diagonal error {worst_diag:.2e}, max |middle - kt| = {worst_mid:.2e}")


def test_c6_fidelity_axioms(report):
    rng = np.random.default_rng(6)

    def one_mode(pure):
        r, phi = rng.uniform(-1, 1), rng.uniform(-math.pi, math.pi)
        n = 0.0 if pure else rng.uniform(0, 3)
        cs, sn = math.cos(phi), math.sin(phi)
        rot = np.array([[cs, -sn], [sn, cs]])
        return OneModeCovariance.from_matrix(
            rot @ np.diag([(n + 0.5) * math.exp(2 * r), (n + 0.5) * math.exp(-2 * r)]) @ rot.T)

    pairs = [(one_mode(i % 5 == 0), one_mode(i % 7 == 0)) for i in range(500)]
    props = check_fidelity_properties(pairs, tol=1e-10)
    vac = OneModeCovariance.thermal(0)
    thermal = max(abs(one_mode_fidelity(vac, OneModeCovariance.thermal(n)) - 1 / (n + 1)) for n in (0, 1, 2, 5))
    ok = all(v["pass"] for v in props.values()) and thermal < 1e-12
    worst = ", ".join(f"{k} {v['worst_deviation']:.1e}" for k, v in props.items())
    report(6, "fidelity properties P1-P5 and F(vacuum, thermal n)", ok,
           f"500 pairs, worst: {worst}; thermal max error {thermal:.1e}")


def test_c7_standard_form_ii(report):
    rng = np.random.default_rng(7)
    worst_v = worst_r = 0.0
    for _ in range(300):
        p = random_symmetric_params(rng, u=1.0)
        g = standard_form_ii_generic(p)
        s = standard_form_ii_symmetric(p)
        worst_v = max(worst_v, abs(g.v1 - s.v1), abs(g.v2 - s.v2))
        worst_r = max(worst_r, *map(abs, form_ii_residuals(p, g.v1, g.v2)))
    report(7, "generic form-II solver vs closed form", worst_v < 1e-9 and worst_r < 1e-10,
           f"300 symmetric inputs, max |dv| = {worst_v:.2e}, max residual {worst_r:.2e}")


def test_c8_e0_shape(report):
    kts = np.linspace(0.5 / 1000, 0.5, 1000)
    vals = np.array([e0(k) for k in kts])
    decreasing = bool(np.all(np.diff(vals) < 0))
    near_zero = e0(1e-14)
    ok = decreasing and e0(0.5) == 0.0 and vals[0] > 0.9 and near_zero > 1 - 1e-6
    report(8, "E0 shape", ok,
           f"strictly decreasing on 1000 points: {decreasing}, E0(1/2) = {e0(0.5)}, "
           f"E0(5e-4) = {vals[0]:.4f}, E0(1e-14) = {near_zero:.8f}")
