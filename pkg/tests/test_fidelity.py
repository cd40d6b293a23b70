import json
import math

import numpy as np
import pytest

from gaussbures import OneModeCovariance, StandardParams, build_cm
from gaussbures.errors import OutOfRange, UnphysicalInput
from gaussbures.fidelity import (
    beam_split_modes,
    bures_distance,
    check_fidelity_properties,
    one_mode_fidelity,
    product_fidelity,
    symmetric_pair_fidelity,
    transition_probability,
)

VAC = OneModeCovariance.thermal(0)


def random_one_mode(rng, pure=False):
    r, phi = rng.uniform(-1, 1), rng.uniform(-math.pi, math.pi)
    n = 0.0 if pure else rng.uniform(0, 3)
    c, s = math.cos(phi), math.sin(phi)
    rot = np.array([[c, -s], [s, c]])
    m = rot @ np.diag([(n + 0.5) * math.exp(2 * r), (n + 0.5) * math.exp(-2 * r)]) @ rot.T
    return OneModeCovariance.from_matrix(m)


def test_identical_vacuum():
    assert one_mode_fidelity(VAC, VAC) == 1.0


def test_vacuum_vs_thermal():
    # one state pure: fidelity equals the overlap 1/sqrt(det(Va + Vb)) = 1/sqrt(4)
    assert one_mode_fidelity(VAC, OneModeCovariance.thermal(1)) == pytest.approx(0.5, abs=1e-15)
    assert one_mode_fidelity(OneModeCovariance.thermal(1), VAC) == pytest.approx(0.5, abs=1e-15)


def test_pure_squeezed_with_itself():
    sq = OneModeCovariance.diag(1.0, 0.25)
    assert one_mode_fidelity(sq, sq) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("n", [0, 1, 2, 5])
def test_vacuum_thermal_closed_form(n):
    assert one_mode_fidelity(VAC, OneModeCovariance.thermal(n)) == pytest.approx(1 / (n + 1), abs=1e-12)


def test_identical_mixed_states(rng):
    for _ in range(50):
        a = random_one_mode(rng)
        assert one_mode_fidelity(a, a) == pytest.approx(1.0, abs=1e-12)


def test_pure_equals_overlap(rng):
    for _ in range(100):
        a, b = random_one_mode(rng, pure=True), random_one_mode(rng)
        assert one_mode_fidelity(a, b) == pytest.approx(transition_probability(a, b), abs=1e-12)


def test_lower_bound_by_overlap(rng):
    for _ in range(200):
        a, b = random_one_mode(rng), random_one_mode(rng)
        assert one_mode_fidelity(a, b) >= transition_probability(a, b) - 1e-12


def test_product_fidelity():
    assert product_fidelity(VAC, VAC, VAC, VAC) == 1.0
    a = OneModeCovariance.diag(2.0, 0.3)
    th = OneModeCovariance.thermal(1)
    assert product_fidelity(a, VAC, a, th) == pytest.approx(one_mode_fidelity(VAC, th), abs=1e-15)


def test_product_fidelity_at_closed_form_optimum():
    # b = 1, c = |d| = 0.8 has kt = 0.2; the optimum (x, y) = (0.525, 0.525) from the oracle
    given1, given2 = OneModeCovariance.diag(1.8, 0.2), OneModeCovariance.diag(0.2, 1.8)
    sep1, sep2 = OneModeCovariance.diag(2 * 0.525, 0.5), OneModeCovariance.diag(0.5, 2 * 0.525)
    assert product_fidelity(given1, given2, sep1, sep2) == pytest.approx(0.4 / 0.49, abs=1e-12)


def test_unphysical_input():
    bad = object.__new__(OneModeCovariance)  # bypass validation
    for name, value in (("v11", 0.3), ("v12", 0.0), ("v22", 0.3)):
        object.__setattr__(bad, name, value)
    with pytest.raises(UnphysicalInput):
        one_mode_fidelity(VAC, bad)
    with pytest.raises(UnphysicalInput):
        OneModeCovariance.diag(0.3, 0.3)


class TestBures:
    def test_endpoints(self):
        assert bures_distance(1.0) == 0.0
        assert bures_distance(0.0) == pytest.approx(math.sqrt(2), abs=1e-15)

    def test_value(self):
        f = 0.4 / 0.49
        d = bures_distance(f)
        assert d == pytest.approx(math.sqrt(2 - 2 * math.sqrt(f)), abs=1e-15)
        # half squared distance is the entanglement value for kt = 0.2
        assert d * d / 2 == pytest.approx((1 - math.sqrt(0.4)) ** 2 / 1.4, abs=1e-12)

    @pytest.mark.parametrize("f", [-0.1, 1.1])
    def test_out_of_range(self, f):
        with pytest.raises(OutOfRange):
            bures_distance(f)


def test_beam_split_modes_requires_product():
    with pytest.raises(Exception):
        beam_split_modes(build_cm(StandardParams.symmetric(1, 0.5, -0.3, u=1).with_squeeze(2.0, 1.0)))


def test_symmetric_pair_fidelity_identity():
    p = StandardParams.symmetric(1, 0.8, -0.8)
    assert symmetric_pair_fidelity(p, p) == pytest.approx(1.0, abs=1e-12)


class TestPropertyChecks:
    def test_examples(self):
        report = check_fidelity_properties([(VAC, OneModeCovariance.thermal(1))])
        assert all(entry["pass"] for entry in report.values())
        json.dumps(report)

    def test_random_pairs(self, rng):
        pairs = [(random_one_mode(rng), random_one_mode(rng)) for _ in range(100)]
        report = check_fidelity_properties(pairs)
        for name, entry in report.items():
            assert entry["pass"], (name, entry)
            assert entry["worst_deviation"] < 1e-10

    def test_p4_rotation(self, rng):
        for _ in range(50):
            a, b = random_one_mode(rng), random_one_mode(rng)
            phi = rng.uniform(-math.pi, math.pi)
            rot = np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])
            ra = OneModeCovariance.from_matrix(rot.T @ a.matrix @ rot)
            rb = OneModeCovariance.from_matrix(rot.T @ b.matrix @ rot)
            assert abs(one_mode_fidelity(ra, rb) - one_mode_fidelity(a, b)) < 1e-12
