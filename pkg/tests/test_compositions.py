import json
import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grd import errors
from grd.compositions import (
    Composition,
    MixtureTable,
    composition_array,
    composition_tails,
    count_compositions,
    enumerate_compositions,
    log_multinomial,
)


class TestEnumeration:
    def test_d2_m1(self):
        assert [c.m for c in enumerate_compositions(2, 1)] == [(1, 0), (0, 1)]

    def test_d3_m2_order(self):
        got = [c.m for c in enumerate_compositions(3, 2)]
        assert got == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]

    def test_empty_sum(self):
        assert [c.m for c in enumerate_compositions(2, 0)] == [(0, 0)]

    def test_array_matches_generator(self):
        arr = composition_array(4, 5)
        assert [tuple(r) for r in arr.tolist()] == [c.m for c in enumerate_compositions(4, 5)]

    def test_array_read_only(self):
        with pytest.raises(ValueError):
            composition_array(3, 2)[0, 0] = 9

    def test_cap(self):
        with pytest.raises(errors.CapExceeded) as info:
            enumerate_compositions(10, 20, cap=1000)
        assert info.value.required == count_compositions(10, 20)
        with pytest.raises(errors.CapExceeded):
            composition_array(10, 20, cap=1000)

    def test_bad_arguments(self):
        with pytest.raises(errors.InvalidInput):
            composition_array(0, 2)
        with pytest.raises(errors.InvalidInput):
            composition_array(2, -1)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 5), st.integers(0, 7))
    def test_count_and_uniqueness(self, d, M):
        arr = composition_array(d, M)
        assert arr.shape == (count_compositions(d, M), d)
        assert np.all(arr.sum(axis=1) == M)
        assert np.all(arr >= 0)
        assert len({tuple(r) for r in arr.tolist()}) == arr.shape[0]


class TestTails:
    def test_composition_tail(self):
        assert Composition((1, 0, 2)).tail == (3, 2, 2)
        assert Composition((1, 0, 2)).total == 3

    def test_array_tails(self):
        np.testing.assert_array_equal(composition_tails(np.array([[1, 0, 2]])), [[3, 2, 2]])


class TestLogMultinomial:
    def test_values(self):
        assert log_multinomial(1, (1, 0)) == 0.0
        assert log_multinomial(2, (1, 1)) == pytest.approx(math.log(2))
        assert log_multinomial(10, Composition((5, 3, 2))) == pytest.approx(math.log(2520))

    def test_mismatched_total(self):
        with pytest.raises(errors.MismatchedTotal):
            log_multinomial(3, (1, 1))

    def test_negative_entry(self):
        with pytest.raises(errors.InvalidInput):
            log_multinomial(0, (1, -1))

    def test_large_is_finite(self):
        # 200!/(100!)^2 overflows a double but its log does not
        assert log_multinomial(200, (100, 100)) == pytest.approx(
            math.lgamma(201) - 2 * math.lgamma(101)
        )

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(0, 12), min_size=1, max_size=5))
    def test_multinomial_identity(self, m):
        M = sum(m)
        expected = math.factorial(M)
        for x in m:
            expected //= math.factorial(x)
        assert math.exp(log_multinomial(M, m)) == pytest.approx(expected, rel=1e-10)


class TestMixtureTable:
    def test_normalization(self):
        t = MixtureTable.from_log_weights([[1, 0], [0, 1]], np.log([3.0, 2.0]))
        np.testing.assert_allclose(t.weight, [0.6, 0.4])
        np.testing.assert_allclose(t.cumulative, [0.6, 1.0])
        assert t.all_positive
        assert t.clipped_mass == 0.0

    def test_huge_log_weights(self):
        t = MixtureTable.from_log_weights([[1, 0], [0, 1]], [1000.0, 1000.0 + math.log(3)])
        np.testing.assert_allclose(t.weight, [0.25, 0.75])

    def test_clipping(self):
        t = MixtureTable.from_log_weights(
            [[2, 0], [1, 1], [0, 2]], np.log([1.0, 0.2, 0.5]), [1, -1, 1]
        )
        np.testing.assert_allclose(t.weight, [1 / 1.3, -0.2 / 1.3, 0.5 / 1.3])
        np.testing.assert_allclose(t.prob, [2 / 3, 0.0, 1 / 3])
        assert t.clipped_mass == pytest.approx(0.2 / 1.3)
        assert t.n_negative == 1
        assert not t.all_positive

    def test_non_positive_total(self):
        with pytest.raises(ArithmeticError):
            MixtureTable.from_log_weights([[1], [0]], [0.0, 1.0], [1, -1])

    def test_sample_index_frequencies(self):
        t = MixtureTable.from_log_weights([[1, 0], [0, 1]], np.log([3.0, 2.0]))
        idx = t.sample_index(np.random.default_rng(0).random(100_000))
        freq = np.bincount(idx, minlength=2) / idx.size
        np.testing.assert_allclose(freq, [0.6, 0.4], atol=0.006)

    def test_sample_index_edges(self):
        t = MixtureTable.from_log_weights([[1, 0], [0, 1]], np.log([3.0, 2.0]))
        u = np.array([0.0, 0.59, 0.61, 0.999999])
        np.testing.assert_array_equal(t.sample_index(u), [0, 0, 1, 1])

    def test_zero_probability_rows_never_drawn(self):
        t = MixtureTable.from_log_weights([[2, 0], [1, 1], [0, 2]], [0.0, 0.0, 0.0], [1, -1, 1])
        idx = t.sample_index(np.random.default_rng(1).random(50_000))
        assert Counter(idx.tolist())[1] == 0

    def test_json(self):
        t = MixtureTable.from_log_weights([[1, 0], [0, 1]], np.log([3.0, 2.0]))
        data = json.loads(t.to_json())
        assert data["order"] == [[1, 0], [0, 1]]
        np.testing.assert_allclose(data["weight"], [0.6, 0.4])
