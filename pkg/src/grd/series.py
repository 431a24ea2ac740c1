"""Series representations for an arbitrary first tail sum ``abar_1 = -r``.

Writing ``1 / Y_1 = d (1 + (1 - d Y_1) / (d Y_1))`` and expanding with
Newton's binomial series gives, for zero-sum ``a``,

    E_a[Y_1^{-r}] = sum_k binom(r, k) sum_{j<=k} binom(k, j) (-1)^{k-j} d^{r-j} S_j

with ``S_j = E_a[Y_1^{-j}]``.  Combined with the change of measure to the
zero-sum shift this represents GRD(a) as a signed countable mixture of
zero-sum laws GRD(a + m + (r - j) e_1) indexed by compositions ``m`` of
``j``.  Truncating the outer sum at ``K`` and regrouping by ``m`` gives a
finite signed table; :func:`signed_series_weights` builds it.

The inner alternating sums cancel catastrophically (their terms reach
``2^k`` while the result is below ``(1 - 1/d)^k``), so the scalar series
and the level coefficients are evaluated with mpmath at a working
precision that grows with the number of terms.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field

import mpmath
import numpy as np

from .compositions import (
    DEFAULT_CAP,
    MixtureTable,
    composition_array,
    composition_tails,
    count_compositions,
    log_multinomial_array,
)
from .core import GrdParams
from .errors import (
    CapExceeded,
    InvalidInput,
    MgfDomainViolation,
    NegativeTruncatedWeight,
    NonConvergedWarning,
    TruncationWarning,
)

__all__ = [
    "DEFAULT_TOL",
    "DEFAULT_MAX_K",
    "DEFAULT_K",
    "SeriesDiagnostics",
    "negative_moments_y1_mp",
    "generalized_binomials",
    "expected_power_y1_series",
    "level_coefficients",
    "signed_series_weights",
    "loggap_moments_series",
    "loggap_mgf_series",
    "y1_moment",
]

DEFAULT_TOL = 1e-10
DEFAULT_MAX_K = 60
DEFAULT_K = 20


@dataclass
class SeriesDiagnostics:
    terms_used: int
    converged: bool
    last_increment: float
    partial_sums: list[float] = field(default_factory=list)
    clipped_mass: float = 0.0
    n_negative: int = 0
    dps: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def _dps(n_terms: int) -> int:
    return 30 + int(math.ceil(n_terms * math.log10(2.0)))


def negative_moments_y1_mp(rates, J: int) -> list:
    """``[E[Y_1^0], ..., E[Y_1^{-J}]]`` for the zero-sum law with tail sums ``rates``.

    Evaluates the composition sums by a recursion over tail positions,
    ``O(d J^2)`` operations instead of ``C(J + d - 1, d - 1)`` terms.
    Values are mpmath numbers at the caller's working precision.
    """
    inv_fact = [mpmath.mpf(1)]
    for t in range(1, J + 1):
        inv_fact.append(inv_fact[-1] / t)
    h = [mpmath.mpf(1)] + [mpmath.mpf(0)] * J
    for rate in reversed([mpmath.mpf(float(x)) for x in rates]):
        h = [
            rate / (rate + s) * mpmath.fsum(inv_fact[t] * h[s - t] for t in range(s + 1))
            for s in range(J + 1)
        ]
    out = []
    fact = mpmath.mpf(1)
    for j in range(J + 1):
        if j:
            fact *= j
        out.append(fact * mpmath.fsum(inv_fact[t] * h[j - t] for t in range(j + 1)))
    return out


def generalized_binomials(r, K: int) -> list:
    """``binom(r, k)`` for ``k = 0..K`` by ``binom(r, k) = binom(r, k-1) (r - k + 1) / k``."""
    r = mpmath.mpf(r)
    out = [mpmath.mpf(1)]
    for k in range(1, K + 1):
        out.append(out[-1] * (r - k + 1) / k)
    return out


def expected_power_y1_series(
    p: GrdParams,
    r: float,
    tol: float = DEFAULT_TOL,
    max_k: int = DEFAULT_MAX_K,
) -> tuple[float, SeriesDiagnostics]:
    """``E_a[Y_1^{-r}]`` for zero-sum ``a`` and any real ``r``.

    Summation stops at the first ``K >= 1`` for which the increments of
    both step ``K`` and step ``K - 1`` are below ``tol`` in absolute value.
    If that does not happen by ``max_k`` the partial sum is returned with
    ``converged=False`` and a :class:`NonConvergedWarning`.
    """
    p.require_zero_sum()
    if max_k < 1 or not tol > 0:
        raise InvalidInput(f"need max_k >= 1 and tol > 0, got {max_k}, {tol}")
    dps = _dps(max_k)
    with mpmath.workdps(dps):
        d = p.d
        s = negative_moments_y1_mp(p.rates, max_k)
        # t_j = E[(d Y_1)^{-j}] lies in (0, 1]
        t = [s[j] / mpmath.mpf(d) ** j for j in range(max_k + 1)]
        binoms = generalized_binomials(r, max_k)
        scale = mpmath.power(d, mpmath.mpf(r))
        total = mpmath.mpf(0)
        partial = []
        prev_small = False
        converged = False
        last = 0.0
        k = 0
        for k in range(max_k + 1):
            inner = mpmath.fsum(
                mpmath.binomial(k, j) * (-1) ** (k - j) * t[j] for j in range(k + 1)
            )
            term = scale * binoms[k] * inner
            total += term
            last = float(term)
            partial.append(float(total))
            small = abs(term) < tol
            if k >= 1 and small and prev_small:
                converged = True
                break
            prev_small = small
        value = float(total)
    if not converged:
        warnings.warn(
            f"series for E[Y_1^-{r}] not converged after {max_k} terms "
            f"(last increment {last:.3g})",
            NonConvergedWarning,
            stacklevel=2,
        )
    return value, SeriesDiagnostics(
        terms_used=k, converged=converged, last_increment=last, partial_sums=partial, dps=dps
    )


def level_coefficients(r: float, K: int) -> list:
    """``c_j(K) = sum_{k=j}^K binom(r, k) binom(k, j) (-1)^(k-j)`` for ``j = 0..K`` (mpmath)."""
    binoms = generalized_binomials(r, K)
    return [
        mpmath.fsum(binoms[k] * mpmath.binomial(k, j) * (-1) ** (k - j) for k in range(j, K + 1))
        for j in range(K + 1)
    ]


def signed_series_weights(
    p: GrdParams,
    K: int = DEFAULT_K,
    cap: int = DEFAULT_CAP,
    on_negative: str = "clip",
) -> MixtureTable:
    """Truncated regrouped weights over all ``m`` with ``m_1 + ... + m_d <= K``.

    The weight of ``m`` with ``|m| = j`` is proportional to

        c_j(K) d^{r - j} multinomial(j; m) prod_{i>=2} abar_i / (abar_i + mbar_i)

    and the normalizer is the ``K``-term partial sum of the series for
    ``E_{a + r e_1}[Y_1^{-r}]``.  Rows are ordered by level ``j`` and then
    reverse-lexicographically.  Every row of level ``j`` shares the sign of
    ``c_j(K)``.

    ``table.weight`` keeps the signed values; ``table.prob`` clips negative
    entries to zero and renormalizes.  ``on_negative`` selects what happens
    when some normalized weight is below ``-1e-12``: ``"clip"`` warns with
    :class:`TruncationWarning`, ``"raise"`` raises
    :class:`NegativeTruncatedWeight`, ``"ignore"`` does neither.
    """
    if K < 0:
        raise InvalidInput(f"K must be >= 0, got {K}")
    if on_negative not in ("clip", "raise", "ignore"):
        raise InvalidInput(f"on_negative must be clip, raise or ignore, got {on_negative!r}")
    d = p.d
    size = count_compositions(d + 1, K)
    if size > cap:
        raise CapExceeded(size, cap)
    r = p.r
    with mpmath.workdps(_dps(K)):
        coeffs = level_coefficients(r, K)
        level_sign = [int(mpmath.sign(c)) for c in coeffs]
        level_log = [
            float(mpmath.log(abs(c)) + (r - j) * mpmath.log(d)) if c != 0 else -math.inf
            for j, c in enumerate(coeffs)
        ]
    blocks, logs, signs = [], [], []
    log_rates = np.log(p.rates)
    for j in range(K + 1):
        m = composition_array(d, j, cap)
        mbar = composition_tails(m)[:, 1:]
        lt = log_multinomial_array(j, m) + np.sum(log_rates - np.log(p.rates + mbar), axis=1)
        blocks.append(m)
        logs.append(lt + level_log[j])
        signs.append(np.full(m.shape[0], float(level_sign[j])))
    table = MixtureTable.from_log_weights(
        np.vstack(blocks), np.concatenate(logs), np.concatenate(signs)
    )
    if table.n_negative and on_negative != "ignore":
        msg = (
            f"{table.n_negative} truncated weights are negative (total mass "
            f"{table.clipped_mass:.3g}) for r={r!r}, K={K}"
        )
        if on_negative == "raise":
            raise NegativeTruncatedWeight(msg)
        warnings.warn(msg + "; clipped to zero for sampling", TruncationWarning, stacklevel=2)
    return table


def _component_log_factor(p: GrdParams, table: MixtureTable, log_factor) -> float:
    mbar = table.tails[:, 1:]
    comp = np.exp(log_factor(p.rates + mbar))
    return math.fsum((table.weight * comp).tolist())


def loggap_moments_series(p: GrdParams, n, K: int = DEFAULT_K, cap: int = DEFAULT_CAP) -> float:
    """``E_a[prod_{k>=2} Z_k^{n_k}]`` from the ``K``-truncated signed mixture.

    Each component contributes ``prod_k n_k! / (abar_k + mbar_k)^{n_k}``,
    weighted by the signed (unclipped) truncated weights.
    """
    n = np.atleast_1d(np.asarray(n, dtype=float))
    if n.shape != (p.d - 1,) or np.any(n < 0) or np.any(n != np.round(n)):
        raise InvalidInput(f"log-gap orders must be d-1 nonnegative integers, got {n.tolist()}")
    table = signed_series_weights(p, K, cap, on_negative="ignore")
    lgn = np.array([math.lgamma(x + 1) for x in n])
    return _component_log_factor(p, table, lambda rate: np.sum(lgn - n * np.log(rate), axis=1))


def loggap_mgf_series(p: GrdParams, t, K: int = DEFAULT_K, cap: int = DEFAULT_CAP) -> float:
    """``E_a[exp(t_2 Z_2 + ... + t_d Z_d)]`` from the ``K``-truncated signed mixture."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if t.shape != (p.d - 1,):
        raise InvalidInput(f"t must have length d-1={p.d - 1}, got {t.tolist()}")
    for k, (tk, rate) in enumerate(zip(t, p.rates), start=2):
        if not tk < rate:
            raise MgfDomainViolation(k, float(tk), float(rate))
    table = signed_series_weights(p, K, cap, on_negative="ignore")
    return _component_log_factor(
        p, table, lambda rate: np.sum(np.log(rate) - np.log(rate - t), axis=1)
    )


def y1_moment(
    p: GrdParams, s: float, tol: float = DEFAULT_TOL, max_k: int = DEFAULT_MAX_K
) -> tuple[float, SeriesDiagnostics]:
    """``E_a[Y_1^s]`` for any valid ``a`` and real ``s``.

    Uses ``E_a[Y_1^s] = E_b[Y_1^{s + abar_1}] / E_b[Y_1^{abar_1}]`` with the
    zero-sum shift ``b = a - abar_1 e_1``; both factors come from
    :func:`expected_power_y1_series`.
    """
    b = p.zero_sum_shift()
    num, dn = expected_power_y1_series(b, p.r - s, tol, max_k)
    den, dd = expected_power_y1_series(b, p.r, tol, max_k)
    diag = SeriesDiagnostics(
        terms_used=max(dn.terms_used, dd.terms_used),
        converged=dn.converged and dd.converged,
        last_increment=max(abs(dn.last_increment), abs(dd.last_increment)),
        dps=dn.dps,
    )
    return num / den, diag
