import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grd import errors, oracle
from grd.core import validate_params
from grd.mixture import loggap_cdf, loggap_law_zero_sum, loggap_mgf, loggap_moments, mixture_weights
from grd.moments import positive_moments


class TestMixtureWeights:
    def test_m1(self):
        t = mixture_weights(validate_params([-3, 2]))
        np.testing.assert_array_equal(t.compositions, [[1, 0], [0, 1]])
        np.testing.assert_allclose(t.weight, [0.6, 0.4])

    def test_m2(self):
        t = mixture_weights(validate_params([-4, 2]))
        np.testing.assert_array_equal(t.compositions, [[2, 0], [1, 1], [0, 2]])
        np.testing.assert_allclose(t.weight, [6 / 17, 8 / 17, 3 / 17])

    def test_requires_integer_sum(self):
        with pytest.raises(errors.NotNegativeIntegerSum):
            mixture_weights(validate_params([-3, 0.5, 1]))

    def test_cap(self):
        with pytest.raises(errors.CapExceeded):
            mixture_weights(validate_params([-40, 1, 1, 1, 1, 1, 1, 1, 1, 2]), cap=1000)

    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(st.floats(0.05, 5.0), min_size=1, max_size=4),
        st.integers(1, 6),
    )
    def test_weights_form_a_distribution(self, tail_rest, M):
        rates = np.sort(np.array(tail_rest))[::-1]
        a = np.empty(len(rates) + 1)
        a[0] = -M - rates[0]
        a[1:-1] = rates[:-1] - rates[1:]
        a[-1] = rates[-1]
        t = mixture_weights(validate_params(a))
        assert t.all_positive
        assert np.all(t.weight >= 0)
        np.testing.assert_allclose(t.weight.sum(), 1.0, rtol=1e-12)

    def test_first_moment_from_weights(self):
        # with M = 1 both equal the reciprocal of the composition sum
        p = validate_params([-2.5, -0.5, 2])
        t = mixture_weights(p)
        assert t.weight[0] == pytest.approx(positive_moments(p, [1, 0, 0]))


class TestLogGapMgf:
    def test_at_zero(self):
        assert loggap_mgf(validate_params([-3, 2]), [0.0]) == pytest.approx(1.0)
        assert loggap_mgf(validate_params([-4, 1, 1]), [0.0, 0.0]) == pytest.approx(1.0)

    def test_hand_value(self):
        # (3/5) 2/(2-1) + (2/5) 3/(3-1)
        assert loggap_mgf(validate_params([-3, 2]), [1.0]) == pytest.approx(9 / 5)

    def test_domain(self):
        with pytest.raises(errors.MgfDomainViolation) as info:
            loggap_mgf(validate_params([-3, 2]), [2.0])
        assert info.value.k == 2

    def test_length(self):
        with pytest.raises(errors.InvalidInput):
            loggap_mgf(validate_params([-3, 2]), [0.0, 0.0])

    @pytest.mark.parametrize("a", [[-3, 2], [-4, 2], [-2.5, -0.5, 2], [-3, 0.4, 0.6]])
    def test_against_quadrature(self, a):
        t = np.full(len(a) - 1, 0.3)

        def g(y):
            z = np.log(y[:-1]) - np.log(y[1:])
            return float(np.exp(t @ z))

        ref = oracle.quadrature_moment(a, g, normalize=True).value
        np.testing.assert_allclose(loggap_mgf(validate_params(a), t), ref, rtol=1e-7)


class TestLogGapMoments:
    def test_hand_values(self):
        p = validate_params([-3, 2])
        assert loggap_moments(p, [1]) == pytest.approx(13 / 30)
        assert loggap_moments(p, [2]) == pytest.approx(7 / 18)
        assert loggap_moments(p, [0]) == pytest.approx(1.0)

    def test_bad_order(self):
        with pytest.raises(errors.InvalidInput):
            loggap_moments(validate_params([-3, 2]), [-1])

    @pytest.mark.parametrize("a", [[-4, 2], [-2.5, -0.5, 2], [-3, 0.4, 0.6]])
    @pytest.mark.parametrize("which", [0, 1])
    def test_against_quadrature(self, a, which):
        n = [0] * (len(a) - 1)
        n[min(which, len(n) - 1)] = 1 + which
        ref = oracle.quadrature_moment(a, oracle.loggap_monomial(n), normalize=True).value
        np.testing.assert_allclose(loggap_moments(validate_params(a), n), ref, rtol=1e-7)

    @pytest.mark.parametrize("a", [[-3, 2], [-4, 2], [-2.5, -0.5, 2], [-3, 0.4, 0.6], [-5, 1, 2]])
    def test_mgf_derivative(self, a):
        p = validate_params(a)
        h = 1e-5
        for k in range(p.d - 1):
            e = np.zeros(p.d - 1)
            e[k] = h
            fd = (loggap_mgf(p, e) - loggap_mgf(p, -e)) / (2 * h)
            n = np.zeros(p.d - 1, dtype=int)
            n[k] = 1
            np.testing.assert_allclose(fd, loggap_moments(p, n), rtol=1e-6)


class TestZeroSumLaw:
    def test_rates(self):
        np.testing.assert_array_equal(loggap_law_zero_sum(validate_params([-1, 1])), [1.0])
        np.testing.assert_array_equal(loggap_law_zero_sum(validate_params([-5, 2, 3])), [5, 3])

    def test_requires_zero_sum(self):
        with pytest.raises(errors.NotZeroSum):
            loggap_law_zero_sum(validate_params([-3, 2]))


class TestLogGapCdf:
    def test_mixture_cdf(self):
        cdf = loggap_cdf(validate_params([-3, 2]), 2)
        np.testing.assert_allclose(cdf.rates, [2.0, 3.0])
        np.testing.assert_allclose(cdf.weights, [0.6, 0.4])
        z = np.array([-1.0, 0.0, 0.5, 50.0])
        expected = 0.6 * (1 - np.exp(-2 * z.clip(0))) + 0.4 * (1 - np.exp(-3 * z.clip(0)))
        np.testing.assert_allclose(cdf(z), expected)

    def test_zero_sum_cdf(self):
        cdf = loggap_cdf(validate_params([-5, 2, 3]), 3)
        np.testing.assert_allclose(cdf(1.0), 1 - np.exp(-3.0))

    def test_index(self):
        with pytest.raises(errors.InvalidInput):
            loggap_cdf(validate_params([-3, 2]), 3)
