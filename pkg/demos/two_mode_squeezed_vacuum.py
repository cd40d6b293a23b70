"""
Entanglement of the two-mode squeezed vacuum
============================================

A two-mode squeezed vacuum with squeeze parameter r has
b = cosh(2r)/2 and c = |d| = sinh(2r)/2. It is pure, so both symplectic
eigenvalues sit at 1/2, while the partially transposed spectrum drops to
exp(-2r)/2.
"""

import math

import numpy as np

from gaussbures import StandardParams, analyze, e0

# build one state and look at the full report
r = 0.5
state = StandardParams.symmetric(math.cosh(2 * r) / 2, math.sinh(2 * r) / 2, -math.sinh(2 * r) / 2)
report = analyze(state)
print("verdict     ", report.verdict.value)
print("spectrum    ", report.spectrum)
print("PT spectrum ", report.pt_spectrum)
print("E0          ", report.e0)
print("max F       ", report.max_fidelity)

# the closest separable Gaussian state of a pure TMSV is the two-mode vacuum
print("closest     ", report.closest)

# E0 depends on r only through kt = exp(-2r)/2
print()
print(f"{'r':>6} {'kt':>10} {'E0':>10}")
for r in np.linspace(0.0, 2.0, 9):
    kt = math.exp(-2 * r) / 2
    print(f"{r:6.2f} {kt:10.6f} {e0(kt):10.6f}")
