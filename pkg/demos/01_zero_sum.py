"""
Zero-sum parameters
===================

When a_1 + ... + a_d = 0 the law is as simple as it gets.  The log gaps
Z_k = log Y_{k-1} - log Y_k are independent exponentials with rates equal
to the tail sums, and the normalizing constant is their reciprocal product.
"""

# %%
import numpy as np

import grd

p = grd.validate_params([-5, 2, 3])
print("tail sums:", p.tail, "case:", p.case)
print("normalizing constant:", grd.normalizing_constant_zero_sum(p), "(1/15 =", 1 / 15, ")")

# %%
# The same constant by direct quadrature over the ordered simplex.
print("quadrature:", grd.oracle.quadrature_moment(p.a).value)

# %%
# Negative moments of the largest coordinate are finite composition sums.
for M in range(4):
    exact = grd.negative_moment_y1(p, M)
    quad = grd.oracle.quadrature_moment(p.a, grd.oracle.inverse_y1(M), normalize=True).value
    print(f"E[Y1^-{M}] = {exact:.12f}   quadrature {quad:.12f}")

# %%
# Sampling draws the exponential gaps and rebuilds the point.
y = grd.sample_zero_sum(p, 200_000, grd.make_rng(0))
z = np.log(y[:, :-1]) - np.log(y[:, 1:])
print("mean log gaps:", z.mean(axis=0), "expected:", 1 / p.rates)
print("gap correlation:", np.corrcoef(z.T)[0, 1])
