import math
import warnings

import mpmath
import numpy as np
import pytest

from grd import errors, oracle
from grd.core import validate_params
from grd.mixture import loggap_mgf, loggap_moments, mixture_weights
from grd.moments import negative_moment_y1
from grd.series import (
    expected_power_y1_series,
    generalized_binomials,
    level_coefficients,
    loggap_mgf_series,
    loggap_moments_series,
    negative_moments_y1_mp,
    signed_series_weights,
    y1_moment,
)

# E[Y_1^{-1/2}] for a = (-1, 1): integral of y^{-5/2} over [1/2, 1]
SQRT_GOLDEN = (2.0 / 3.0) * (2.0**1.5 - 1.0)


class TestNegativeMomentsDP:
    @pytest.mark.parametrize("a", [[-1, 1], [-5, 2, 3], [-1.2, 0.7, 0.5], [-3, 1, 1, 1]])
    def test_matches_composition_sums(self, a):
        p = validate_params(a)
        with mpmath.workdps(30):
            s = negative_moments_y1_mp(p.rates, 6)
        got = [float(x) for x in s]
        np.testing.assert_allclose(got, [negative_moment_y1(p, j) for j in range(7)], rtol=1e-12)


class TestExpectedPowerSeries:
    def test_integer_r_terminates(self):
        value, diag = expected_power_y1_series(validate_params([-1, 1]), 1.0)
        np.testing.assert_allclose(value, 1.5, rtol=1e-10)
        assert diag.converged
        assert abs(diag.last_increment) < 1e-10

    def test_r_zero(self):
        value, diag = expected_power_y1_series(validate_params([-5, 2, 3]), 0.0)
        assert value == pytest.approx(1.0, abs=1e-15)
        assert diag.converged

    def test_half(self):
        value, diag = expected_power_y1_series(validate_params([-1, 1]), 0.5)
        np.testing.assert_allclose(value, SQRT_GOLDEN, rtol=1e-9)
        assert diag.converged
        assert diag.terms_used == len(diag.partial_sums) - 1

    @pytest.mark.parametrize("r", [2, 3])
    def test_matches_exact_integer_moments(self, r):
        p = validate_params([-1.2, 0.7, 0.5])
        value, _ = expected_power_y1_series(p, float(r))
        np.testing.assert_allclose(value, negative_moment_y1(p, r), rtol=1e-10)

    @pytest.mark.parametrize("a, r", [([-1.2, 0.7, 0.5], 0.7), ([-5, 2, 3], 1.5), ([-1, 1], -2.5)])
    def test_against_quadrature(self, a, r):
        ref = oracle.quadrature_moment(a, oracle.inverse_y1(r), normalize=True).value
        value, _ = expected_power_y1_series(validate_params(a), r)
        np.testing.assert_allclose(value, ref, rtol=1e-8)

    def test_not_converged_warns(self):
        with pytest.warns(errors.NonConvergedWarning):
            value, diag = expected_power_y1_series(validate_params([-1, 1]), 0.5, max_k=3)
        assert not diag.converged
        assert diag.terms_used == 3

    def test_requires_zero_sum(self):
        with pytest.raises(errors.NotZeroSum):
            expected_power_y1_series(validate_params([-3, 2]), 0.5)

    def test_bad_settings(self):
        with pytest.raises(errors.InvalidInput):
            expected_power_y1_series(validate_params([-1, 1]), 0.5, max_k=0)

    def test_diagnostics_json(self):
        _, diag = expected_power_y1_series(validate_params([-1, 1]), 0.5)
        d = diag.to_dict()
        assert set(d) >= {"terms_used", "converged", "last_increment", "clipped_mass"}


class TestCoefficients:
    def test_generalized_binomials(self):
        got = [float(x) for x in generalized_binomials(0.5, 4)]
        np.testing.assert_allclose(got, [1, 0.5, -0.125, 0.0625, -0.0390625])

    @pytest.mark.parametrize("r", [0.5, 1.5, 2.0, 2.7])
    def test_level_coefficients_closed_form(self, r):
        # c_j(K) = binom(r, j) binom(K - r, K - j)
        K = 12
        with mpmath.workdps(40):
            got = level_coefficients(r, K)
            rr = mpmath.mpf(r)
            ref = [mpmath.binomial(rr, j) * mpmath.binomial(K - rr, K - j) for j in range(K + 1)]
            assert max(abs(x - y) for x, y in zip(got, ref)) < mpmath.mpf(10) ** -30


class TestSignedWeights:
    @pytest.mark.parametrize("a", [[-3, 2], [-4, 2], [-5, 2], [-2.5, -0.5, 2], [-4.5, 1, 1.5]])
    @pytest.mark.parametrize("extra", [0, 3])
    def test_integer_termination(self, a, extra):
        p = validate_params(a)
        M = p.negative_integer_sum
        table = signed_series_weights(p, K=M + extra)
        exact = mixture_weights(p)
        level = table.compositions.sum(axis=1)
        np.testing.assert_allclose(table.weight[level == M], exact.weight, rtol=0, atol=1e-10)
        np.testing.assert_allclose(table.weight[level != M], 0.0, atol=1e-10)
        assert table.n_negative == 0

    def test_k_zero(self):
        table = signed_series_weights(validate_params([-3, 0.5, 1]), K=0)
        assert len(table) == 1
        np.testing.assert_array_equal(table.compositions, [[0, 0, 0]])
        np.testing.assert_allclose(table.weight, [1.0])

    def test_zero_sum_table_is_trivial(self):
        table = signed_series_weights(validate_params([-1.5, 0.5, 1]), K=20)
        np.testing.assert_allclose(table.prob[0], 1.0)
        assert table.clipped_mass == 0.0

    def test_weights_sum_to_one(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", errors.TruncationWarning)
            table = signed_series_weights(validate_params([-3, 0.5, 1]), K=6)
        np.testing.assert_allclose(table.weight.sum(), 1.0, rtol=1e-12)
        np.testing.assert_allclose(table.prob.sum(), 1.0, rtol=1e-12)

    def test_fractional_clipped_mass_is_reported(self):
        # regrouped truncated weights alternate in sign for non-integer r
        p = validate_params([-3, 0.5, 1])
        masses = []
        for K in (5, 10, 20):
            with pytest.warns(errors.TruncationWarning, match="negative"):
                table = signed_series_weights(p, K=K)
            assert table.n_negative > 0
            masses.append(table.clipped_mass)
        assert masses[0] > 0.1
        assert masses == sorted(masses)

    def test_raise_mode(self):
        with pytest.raises(errors.NegativeTruncatedWeight):
            signed_series_weights(validate_params([-3, 0.5, 1]), K=5, on_negative="raise")

    def test_ignore_mode(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            signed_series_weights(validate_params([-3, 0.5, 1]), K=5, on_negative="ignore")

    def test_level_sign_is_shared(self):
        table = signed_series_weights(
            validate_params([-3, 0.5, 1]), K=8, on_negative="ignore"
        )
        level = table.compositions.sum(axis=1)
        for j in range(9):
            assert len(set(table.sign[level == j].tolist())) == 1

    def test_bad_arguments(self):
        p = validate_params([-3, 0.5, 1])
        with pytest.raises(errors.InvalidInput):
            signed_series_weights(p, K=-1)
        with pytest.raises(errors.InvalidInput):
            signed_series_weights(p, K=2, on_negative="drop")
        with pytest.raises(errors.CapExceeded):
            signed_series_weights(p, K=40, cap=100)


class TestSeriesLogGaps:
    def test_integer_case_matches_exact(self):
        p = validate_params([-3, 2])
        for K in (1, 4):
            assert loggap_moments_series(p, [1], K) == pytest.approx(13 / 30, rel=1e-10)
            assert loggap_moments_series(p, [0], K) == pytest.approx(1.0, rel=1e-10)

    def test_integer_case_d3(self):
        p = validate_params([-4.5, 1, 1.5])
        np.testing.assert_allclose(
            loggap_moments_series(p, [1, 2], 5), loggap_moments(p, [1, 2]), rtol=1e-10
        )
        np.testing.assert_allclose(
            loggap_mgf_series(p, [0.2, -0.4], 5), loggap_mgf(p, [0.2, -0.4]), rtol=1e-10
        )

    @pytest.mark.parametrize("a", [[-3, 0.5, 1], [-1.7, 1.2]])
    def test_fractional_against_quadrature(self, a):
        p = validate_params(a)
        n = [1] + [0] * (p.d - 2)
        ref = oracle.quadrature_moment(a, oracle.loggap_monomial(n), normalize=True).value
        np.testing.assert_allclose(loggap_moments_series(p, n, 30), ref, rtol=1e-6)

    def test_fractional_mgf_against_quadrature(self):
        a = [-1.7, 1.2]
        ref = oracle.quadrature_moment(
            a, lambda y: (y[0] / y[1]) ** 0.4, normalize=True
        ).value
        got = loggap_mgf_series(validate_params(a), [0.4], 30)
        np.testing.assert_allclose(got, ref, rtol=1e-6)

    def test_mgf_domain(self):
        with pytest.raises(errors.MgfDomainViolation):
            loggap_mgf_series(validate_params([-3, 0.5, 1]), [1.5, 0.0], 5)

    def test_bad_orders(self):
        with pytest.raises(errors.InvalidInput):
            loggap_moments_series(validate_params([-3, 0.5, 1]), [1], 5)


class TestY1Moment:
    @pytest.mark.parametrize(
        "a, s", [([-3, 0.5, 1], 1.0), ([-3, 0.5, 1], 2.5), ([-1.7, 1.2], -0.5)]
    )
    def test_against_quadrature(self, a, s):
        ref = oracle.quadrature_moment(a, oracle.power_y1(s), normalize=True).value
        value, diag = y1_moment(validate_params(a), s)
        assert diag.converged
        np.testing.assert_allclose(value, ref, rtol=1e-7)

    def test_integer_case(self):
        value, _ = y1_moment(validate_params([-3, 2]), 1.0)
        assert value == pytest.approx(0.6, rel=1e-10)
        assert not math.isnan(value)
