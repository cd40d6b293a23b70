"""
Where does entanglement start?
==============================

For a symmetric standard state the PPT test reduces to
(b - |d|)(b - c) >= 1/4. Fix b and c and walk |d| from 0 up to c: the
verdict flips at |d| = b - 1/(4 (b - c)).
"""

import numpy as np

from gaussbures import StandardParams, analyze
from gaussbures.errors import UnphysicalState

b, c = 1.0, 0.7
print("crossing expected at |d| =", b - 1 / (4 * (b - c)))
print()
print(f"{'d':>7} {'kt':>9} {'E0':>9}  verdict")
for d in np.linspace(-c, 0.0, 15):
    try:
        rep = analyze(StandardParams.symmetric(b, c, float(d)))
    except UnphysicalState:
        print(f"{d:7.3f}  (not a physical state)")
        continue
    print(f"{d:7.3f} {rep.pt_spectrum.k_minus:9.5f} {rep.e0:9.5f}  {rep.verdict.value}")

# local squeezing moves the matrix entries but not the PT spectrum, hence not E0
state = StandardParams.symmetric(b, c, -0.6)
for u in (0.25, 1.0, 4.0):
    print(f"u = {u:4}: E0 = {analyze(state.with_squeeze(u)).e0:.15f}")
