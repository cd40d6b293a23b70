import math

import numpy as np
import pytest

from gaussbures import CovarianceMatrix2M, StandardParams
from gaussbures.transforms import beam_splitter_matrix, local_rotation_matrix, local_squeeze_matrix


def random_cm(rng, max_squeeze=1.0, max_thermal=2.0):
    """Physical two-mode covariance matrix S^T diag(n1, n1, n2, n2) S with random S."""
    n1, n2 = 0.5 + rng.uniform(0, max_thermal, size=2)
    s = (local_rotation_matrix(*rng.uniform(-math.pi, math.pi, 2)).matrix
         @ local_squeeze_matrix(*np.exp(rng.uniform(-max_squeeze, max_squeeze, 2))).matrix
         @ beam_splitter_matrix(rng.uniform(0, math.pi), rng.uniform(-math.pi, math.pi)).matrix
         @ local_squeeze_matrix(*np.exp(rng.uniform(-max_squeeze, max_squeeze, 2))).matrix
         @ local_rotation_matrix(*rng.uniform(-math.pi, math.pi, 2)).matrix)
    return CovarianceMatrix2M(s.T @ np.diag([n1, n1, n2, n2]) @ s)


def random_symmetric_params(rng, u=None):
    """Physical symmetric standard state with c >= |d|, d <= 0."""
    while True:
        b = rng.uniform(0.5, 3.0)
        c = rng.uniform(0.0, b)
        d = -rng.uniform(0.0, c)
        if (b + abs(d)) * (b - c) >= 0.25 and b - c > 1e-3:
            uu = math.exp(rng.uniform(-1, 1)) if u is None else u
            return StandardParams.symmetric(b, c, d, uu)


def tmsv(r):
    """Two-mode squeezed vacuum with squeeze parameter r."""
    return StandardParams.symmetric(math.cosh(2 * r) / 2, math.sinh(2 * r) / 2, -math.sinh(2 * r) / 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
