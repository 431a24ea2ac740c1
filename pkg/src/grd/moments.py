"""Closed-form moments.

Zero-sum parameters (``abar_1 = 0``) give negative moments of ``Y_1`` and
moments of ratios ``prod Y_k^{n_k} / Y_1^M`` as finite composition sums.
When ``abar_1 = -M`` for an integer ``M >= 1`` the same sums, taken at the
zero-sum shift ``a + M e_1``, give positive moments up to total order ``M``.
All sums are accumulated in log space.
"""

from __future__ import annotations

import functools
import math

import numpy as np
from scipy.special import logsumexp

from .compositions import (
    DEFAULT_CAP,
    composition_array,
    composition_tails,
    log_multinomial_array,
)
from .core import GrdParams, ordered_point, validate_params
from .errors import (
    BadMomentOrder,
    InvalidInput,
    MomentOrderTooHigh,
    NotNegativeIntegerSum,
    TiedOrZeroWeights,
)

__all__ = [
    "log_composition_sum",
    "ratio_moment_zero_sum",
    "negative_moment_y1",
    "positive_moments",
    "mean_vector_m1",
    "calibrate_first_moment",
]


def _orders(n, d: int) -> np.ndarray:
    arr = np.asarray(n, dtype=float)
    if arr.shape != (d,):
        raise InvalidInput(f"moment orders must have length {d}, got {arr.tolist()}")
    if np.any(arr < 0) or np.any(arr != np.round(arr)):
        raise InvalidInput(f"moment orders must be nonnegative integers, got {arr.tolist()}")
    return arr.astype(np.int64)


def log_composition_sum(rates, M: int, shift=None, cap: int = DEFAULT_CAP) -> float:
    """Log of the composition sum

        sum_{m in N_0^d(M)} multinomial(M; m) prod_k rates_k / (rates_k + mbar_k + shift_k).

    ``rates`` are the tail sums ``abar_2..abar_d``; ``shift`` (same length)
    defaults to zero.
    """
    rates = np.asarray(rates, dtype=float)
    d = rates.shape[0] + 1
    m = composition_array(d, M, cap)
    mbar = composition_tails(m)[:, 1:]
    shift = 0.0 if shift is None else np.asarray(shift, dtype=float)
    log_terms = log_multinomial_array(M, m) + np.sum(
        np.log(rates) - np.log(rates + mbar + shift), axis=1
    )
    return float(logsumexp(log_terms))


@functools.lru_cache(maxsize=1024)
def _log_denominator(rates: tuple, M: int, cap: int) -> float:
    return log_composition_sum(np.array(rates), M, cap=cap)


def ratio_moment_zero_sum(p: GrdParams, n, M: int, cap: int = DEFAULT_CAP) -> float:
    """``E_a[prod_k Y_k^{n_k} / Y_1^M]`` for zero-sum ``a`` and ``M >= n_1 + ... + n_d``."""
    p.require_zero_sum()
    n = _orders(n, p.d)
    total = int(n.sum())
    if M < total:
        raise BadMomentOrder(f"need M >= n_1 + ... + n_d = {total}, got M={M}")
    nbar = composition_tails(n)[1:]
    return math.exp(log_composition_sum(p.rates, M - total, shift=nbar, cap=cap))


def negative_moment_y1(p: GrdParams, M: int, cap: int = DEFAULT_CAP) -> float:
    """``E_a[Y_1^{-M}]`` for zero-sum ``a`` and integer ``M >= 0``."""
    p.require_zero_sum()
    if M < 0 or int(M) != M:
        raise BadMomentOrder(f"M must be a nonnegative integer, got {M!r}")
    return math.exp(_log_denominator(tuple(p.rates.tolist()), int(M), cap))


def positive_moments(p: GrdParams, n, cap: int = DEFAULT_CAP) -> float:
    """``E_a[prod_k Y_k^{n_k}]`` when ``abar_1 = -M`` and ``n_1 + ... + n_d <= M``.

    Ratio of the zero-sum composition sum of order ``M - |n|`` (shifted by
    the tails of ``n``) to the one of order ``M``; the denominator is cached
    per parameter vector.
    """
    M = p.require_negative_integer_sum()
    n = _orders(n, p.d)
    total = int(n.sum())
    if total > M:
        raise MomentOrderTooHigh(
            f"moment of total order {total} requested but the closed form only "
            f"covers orders up to M={M} when a_1 + ... + a_d = -M"
        )
    nbar = composition_tails(n)[1:]
    log_num = log_composition_sum(p.rates, M - total, shift=nbar, cap=cap)
    return math.exp(log_num - _log_denominator(tuple(p.rates.tolist()), M, cap))


def mean_vector_m1(p: GrdParams) -> np.ndarray:
    """``(E[Y_1], ..., E[Y_d])`` when ``abar_1 = -1``.

    ``E[Y_k]`` is proportional to ``prod_{j=2}^k abar_j / (abar_j + 1)``.
    """
    M = p.require_negative_integer_sum()
    if M != 1:
        raise NotNegativeIntegerSum(f"requires a_1 + ... + a_d = -1, got -{M}")
    ratios = p.rates / (p.rates + 1.0)
    prods = np.concatenate([[1.0], np.cumprod(ratios)])
    return prods / prods.sum()


def calibrate_first_moment(y) -> GrdParams:
    """Parameters with ``abar_1 = -1`` whose mean vector is ``y``.

    ``y`` must be strictly decreasing with ``y_d > 0``.  The tail sums of
    the result are ``abar_k = y_k / (y_{k-1} - y_k)`` for ``k >= 2``.
    """
    y = ordered_point(y).y
    gaps = y[:-1] - y[1:]
    if np.any(gaps <= 0) or y[-1] <= 0:
        raise TiedOrZeroWeights(
            f"calibration needs y_1 > y_2 > ... > y_d > 0, got {y.tolist()}"
        )
    ratio = y[1:] / gaps
    a = np.empty_like(y)
    a[0] = -1.0 - ratio[0]
    a[1:-1] = ratio[:-1] - ratio[1:]
    a[-1] = ratio[-1]
    return validate_params(a)
