"""
Arbitrary first tail sum
========================

For a_1 + ... + a_d = -r with r not an integer the mixture becomes an
infinite signed series.  Scalar quantities converge well.  Truncated
mixture weights, however, take both signs.
"""

# %%
import warnings

import grd

b = grd.validate_params([-1, 1])
value, diag = grd.expected_power_y1_series(b, 0.5)
print(f"E[Y1^-1/2] = {value:.12f} after {diag.terms_used} terms")
print(f"closed form  {(2 / 3) * (2**1.5 - 1):.12f}")

# %%
# Moments for a = (-3, 0.5, 1), where r = 1.5.
p = grd.validate_params([-3, 0.5, 1])
mean_y1, _ = grd.y1_moment(p, 1.0)
ref = grd.oracle.quadrature_moment(p.a, grd.oracle.power_y1(1.0), normalize=True).value
print(f"E[Y1]: series {mean_y1:.10f}   quadrature {ref:.10f}")
for K in (10, 20, 30):
    print(f"E[Z2] with K={K}: {grd.loggap_moments_series(p, [1, 0], K):.10f}")
ref = grd.oracle.quadrature_moment(p.a, grd.oracle.loggap_monomial([1, 0]), normalize=True)
print(f"E[Z2] quadrature:  {ref.value:.10f}")

# %%
# The truncated weights used by the approximate sampler.
with warnings.catch_warnings():
    warnings.simplefilter("ignore", grd.TruncationWarning)
    for K in (5, 10, 20):
        table = grd.signed_series_weights(p, K)
        print(f"K={K:2d}: {len(table)} rows, {table.n_negative} negative, "
              f"clipped mass {table.clipped_mass:.3g}")

# %%
# Clipped mass grows with K.  Clip-and-renormalize sampling is then biased,
# and the rejection sampler is the exact alternative.
y, stats = grd.sample_rejection_oracle(p, 400_000, grd.make_rng(4))
est = grd.oracle.mc_estimate(y, "y1")
print(f"rejection E[Y1] {est.estimate:.5f} +- {est.se:.5f}, acceptance {stats.rate:.3f}")
with warnings.catch_warnings():
    warnings.simplefilter("ignore", grd.TruncationWarning)
    x = grd.sample_approximate_general(p, 400_000, K=20, rng=5)
est = grd.oracle.mc_estimate(x, "y1")
print(f"clipped K=20 E[Y1] {est.estimate:.5f} +- {est.se:.5f}")
