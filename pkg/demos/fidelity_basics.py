"""
One-mode fidelity and the Bures distance
========================================

The fidelity of two zero-mean one-mode Gaussian states only needs three
determinants. When one of the states is pure, it reduces to the plain
overlap 1/sqrt(det(Va + Vb)).
"""

import numpy as np

from gaussbures import OneModeCovariance, bures_distance, one_mode_fidelity
from gaussbures.fidelity import check_fidelity_properties, transition_probability

vacuum = OneModeCovariance.thermal(0)

# vacuum against thermal states: F = 1/(n + 1)
for n in (0, 1, 2, 5):
    f = one_mode_fidelity(vacuum, OneModeCovariance.thermal(n))
    print(f"n = {n}: F = {f:.6f}, d_B = {bures_distance(f):.6f}")

# a squeezed vacuum is pure, so the overlap is exact
squeezed = OneModeCovariance.diag(0.5 * np.exp(1.0), 0.5 * np.exp(-1.0))
thermal = OneModeCovariance.thermal(0.7)
print("F       ", one_mode_fidelity(squeezed, thermal))
print("overlap ", transition_probability(squeezed, thermal))

# two mixed states: fidelity beats the overlap
a, b = OneModeCovariance(1.1, 0.2, 0.6), OneModeCovariance(0.7, -0.1, 0.9)
print("F       ", one_mode_fidelity(a, b))
print("overlap ", transition_probability(a, b))

# executable property checks on a small random sample
rng = np.random.default_rng(1)
pairs = []
for _ in range(50):
    n1, n2 = rng.uniform(0, 2, 2)
    pairs.append((OneModeCovariance.diag((n1 + 0.5) * 2, (n1 + 0.5) / 2), OneModeCovariance.thermal(n2)))
for name, res in check_fidelity_properties(pairs).items():
    print(name, "pass" if res["pass"] else "FAIL", f"{res['worst_deviation']:.1e}")
