"""
Matching a target mean vector
=============================

For any strictly decreasing target y on the simplex there is exactly one
parameter vector with a_1 + ... + a_d = -1 whose mean is y.
"""

# %%
import numpy as np

import grd

target = [0.5, 0.3, 0.2]
p = grd.calibrate_first_moment(target)
print("parameters:", p.a)
print("mean vector:", grd.mean_vector_m1(p))

# %%
# A ranked market-share style profile with more coordinates.
shares = np.array([0.31, 0.22, 0.16, 0.12, 0.09, 0.06, 0.04])
q = grd.calibrate_first_moment(shares)
print("parameters:", np.round(q.a, 4) + 0.0)
print("max error:", np.max(np.abs(grd.mean_vector_m1(q) - shares)))

# %%
# Simulate from the fitted law and compare.
y = grd.sample(q, 500_000, rng=3)
print("simulated means:", np.round(y.mean(axis=0), 4))

# %%
# Ties cannot be matched: the tail sums would be infinite.
try:
    grd.calibrate_first_moment([0.4, 0.3, 0.3])
except grd.TiedOrZeroWeights as exc:
    print(type(exc).__name__, "-", exc)
