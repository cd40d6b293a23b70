"""
Checking the closed form against a brute-force search
=====================================================

The maximal fidelity between a symmetric entangled state and the separable
set is 2 kt / (kt + 1/2)**2. Here we search the separability threshold
numerically and compare, first for one state, then for a small random batch.
"""

from gaussbures import StandardParams, analyze
from gaussbures.oracle import maximize_fidelity_full, maximize_fidelity_xy, run_campaign, sample_entangled_states

state = StandardParams.symmetric(1.0, 0.8, -0.8)
rep = analyze(state)

xy = maximize_fidelity_xy(state)
print("closed form  ", rep.max_fidelity, (rep.x_max, rep.y_max))
print("(x, y) search", xy.best_value, tuple(xy.best_point.tolist()))

# the wider search also recovers the closest state's parameters
full = maximize_fidelity_full(state)
b, c, d, u = full.best_point.tolist()
print("closest      ", (rep.closest.b, rep.closest.c, rep.closest.d))
print("full search  ", (b, c, d), "u =", u)

records = run_campaign(sample_entangled_states(20, seed=3))
print("worst |closed - search| over 20 states:", max(r["abs_error"] for r in records))
