"""Finite mixture representation when ``abar_1 = -M``.

GRD(a) with ``abar_1 = -M`` is the mixture over ``m in N_0^d(M)`` of the
zero-sum laws GRD(a + m), with weights proportional to

    multinomial(M; m) * prod_{k>=2} abar_k / (abar_k + mbar_k).

Under each zero-sum component the log gaps ``Z_k = log Y_{k-1} - log Y_k``
are independent ``Exp(abar_k + mbar_k)``, so the log gaps of GRD(a) are a
finite mixture of independent exponential vectors.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln, logsumexp

from .compositions import (
    DEFAULT_CAP,
    MixtureTable,
    composition_array,
    composition_tails,
    log_multinomial_array,
)
from .core import GrdParams
from .errors import InvalidInput, MgfDomainViolation
from .moments import negative_moment_y1

__all__ = [
    "mixture_weights",
    "loggap_mgf",
    "loggap_moments",
    "loggap_law_zero_sum",
    "loggap_cdf",
]


def _component_log_terms(rates: np.ndarray, m: np.ndarray, M: int) -> np.ndarray:
    mbar = composition_tails(m)[:, 1:]
    return log_multinomial_array(M, m) + np.sum(np.log(rates) - np.log(rates + mbar), axis=1)


def mixture_weights(p: GrdParams, cap: int = DEFAULT_CAP) -> MixtureTable:
    """Mixture weights ``w_m`` over ``N_0^d(M)`` in reverse-lexicographic order."""
    M = p.require_negative_integer_sum()
    m = composition_array(p.d, M, cap)
    return MixtureTable.from_log_weights(m, _component_log_terms(p.rates, m, M))


def _log_c(p: GrdParams, M: int, cap: int) -> float:
    # C = E_{a + M e_1}[Y_1^{-M}]; a + M e_1 is zero-sum by construction.
    return math.log(negative_moment_y1(p.shifted(M).zero_sum_shift(), M, cap))


def _gap_vector(x, d: int, what: str) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if arr.shape != (d - 1,):
        raise InvalidInput(f"{what} must have length d-1={d - 1}, got {arr.tolist()}")
    return arr


def loggap_mgf(p: GrdParams, t, cap: int = DEFAULT_CAP) -> float:
    """``E_a[exp(t_2 Z_2 + ... + t_d Z_d)]``, defined for ``t_k < abar_k``."""
    M = p.require_negative_integer_sum()
    t = _gap_vector(t, p.d, "t")
    for k, (tk, rate) in enumerate(zip(t, p.rates), start=2):
        if not tk < rate:
            raise MgfDomainViolation(k, float(tk), float(rate))
    m = composition_array(p.d, M, cap)
    mbar = composition_tails(m)[:, 1:]
    log_terms = log_multinomial_array(M, m) + np.sum(
        np.log(p.rates) - np.log(p.rates - t + mbar), axis=1
    )
    return math.exp(float(logsumexp(log_terms)) - _log_c(p, M, cap))


def loggap_moments(p: GrdParams, n, cap: int = DEFAULT_CAP) -> float:
    """``E_a[prod_{k>=2} Z_k^{n_k}]`` for integer orders ``n = (n_2, ..., n_d)``."""
    M = p.require_negative_integer_sum()
    n = _gap_vector(n, p.d, "n")
    if np.any(n < 0) or np.any(n != np.round(n)):
        raise InvalidInput(f"log-gap orders must be nonnegative integers, got {n.tolist()}")
    m = composition_array(p.d, M, cap)
    mbar = composition_tails(m)[:, 1:]
    log_terms = log_multinomial_array(M, m) + np.sum(
        np.log(p.rates) + gammaln(n + 1) - (n + 1) * np.log(p.rates + mbar), axis=1
    )
    return math.exp(float(logsumexp(log_terms)) - _log_c(p, M, cap))


def loggap_law_zero_sum(p: GrdParams) -> np.ndarray:
    """Exponential rates ``(abar_2, ..., abar_d)`` of the log gaps when ``abar_1 = 0``.

    The gaps are then independent, ``Z_k ~ Exp(abar_k)``, and equivalently
    the ratios ``Y_{k-1} / Y_k`` are independent ``Pareto(1, abar_k)``.
    """
    p.require_zero_sum()
    return p.rates.copy()


def loggap_cdf(p: GrdParams, k: int, cap: int = DEFAULT_CAP):
    """Marginal CDF of ``Z_k`` (``2 <= k <= d``) as a vectorized callable.

    Zero-sum parameters give ``Exp(abar_k)``; ``abar_1 = -M`` gives the
    mixture ``sum_m w_m Exp(abar_k + mbar_k)``.
    """
    if not 2 <= k <= p.d:
        raise InvalidInput(f"log-gap index must be in 2..{p.d}, got {k}")
    if p.is_zero_sum:
        rates = np.array([p.tail[k - 1]])
        weights = np.array([1.0])
    else:
        table = mixture_weights(p, cap)
        rates = p.tail[k - 1] + table.tails[:, k - 1]
        weights = table.weight

    def cdf(z):
        z = np.asarray(z, dtype=float)
        zc = np.maximum(z, 0.0)[..., None]
        return np.sum(weights * -np.expm1(-rates * zc), axis=-1)

    cdf.rates = rates
    cdf.weights = weights
    return cdf
