"""Independent checks: quadrature on the ordered simplex, Monte Carlo, KS tests.

Quadrature works directly with the unnormalized density in simplex
coordinates and never uses tail-sum or log-gap identities.  Points are
parameterized by ``s = 1 - y_1`` (and for ``d = 3`` by ``t = y_3 / s``):

    d = 2:  y = (1 - s, s),                 0 <= s <= 1/2
    d = 3:  y = (1 - s, s (1 - t), s t),    0 <= t <= 1/2,  0 <= s <= 1 / (2 - t)

with Jacobian ``1`` and ``s`` respectively.  Near ``s = 0`` the integrand
behaves like ``s^{a_2 + ... + a_d - 1}`` and near ``t = 0`` like
``t^{a_d - 1}``; whenever such an exponent is below zero the substitution
``v = s^{exponent + 1}`` (resp. ``u = t^{a_d}``) removes the singularity.
Integrals use adaptive Gauss-Kronrod (``scipy.integrate.quad``).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.special import kolmogi, kolmogorov

from .core import tail_sums
from .errors import (
    EmptyInput,
    InvalidInput,
    TailSumViolation,
    ToleranceNotReached,
    TooFewSamples,
    UnsupportedDimension,
)

__all__ = [
    "Integrand",
    "constant",
    "monomial",
    "ratio",
    "inverse_y1",
    "power_y1",
    "loggap_monomial",
    "QuadResult",
    "quadrature_moment",
    "boundary_exponents",
    "quadrature_is_finite",
    "MCEstimate",
    "mc_estimate",
    "KSResult",
    "ks_test",
    "ks_two_sample",
]


@dataclass(frozen=True)
class Integrand:
    """A function of ``log y`` (1-D array of length ``d``)."""

    name: str
    fn: Callable[[np.ndarray], float]

    def __call__(self, logy: np.ndarray) -> float:
        return self.fn(logy)


def constant() -> Integrand:
    return Integrand("constant", lambda logy: 1.0)


def monomial(n) -> Integrand:
    n = np.asarray(n, dtype=float)
    return Integrand(f"prod y^{n.tolist()}", lambda logy: math.exp(float(n @ logy)))


def ratio(n, M: int) -> Integrand:
    n = np.asarray(n, dtype=float)
    return Integrand(
        f"prod y^{n.tolist()} / y1^{M}",
        lambda logy: math.exp(float(n @ logy) - M * logy[0]),
    )


def inverse_y1(M: float) -> Integrand:
    return Integrand(f"y1^-{M}", lambda logy: math.exp(-M * logy[0]))


def power_y1(s: float) -> Integrand:
    return Integrand(f"y1^{s}", lambda logy: math.exp(s * logy[0]))


def loggap_monomial(n) -> Integrand:
    n = np.asarray(n, dtype=float)

    def fn(logy):
        z = logy[:-1] - logy[1:]
        return float(np.prod(z**n))

    return Integrand(f"prod z^{n.tolist()}", fn)


def _as_integrand(g) -> Integrand:
    if isinstance(g, Integrand):
        return g
    if g == "constant" or g is None:
        return constant()
    if callable(g):
        return Integrand(getattr(g, "__name__", "custom"), lambda logy: g(np.exp(logy)))
    raise InvalidInput(f"unknown integrand {g!r}")


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float

    def to_dict(self) -> dict:
        return asdict(self)


def _quad(f, lo, hi, tol, limit, args=()):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            return integrate.quad(f, lo, hi, args=args, epsabs=0.0, epsrel=tol, limit=limit)
        except integrate.IntegrationWarning as exc:
            raise ToleranceNotReached(f"quadrature did not reach rel. tol {tol}: {exc}") from None


def _s_coordinate(expo: float):
    """Return ``(to_s, log_s, jac, upper)`` for the ``s`` variable.

    The weight ``s^(expo - 1) ds`` becomes ``dv / expo`` when ``expo < 1``.
    """
    if expo < 1:
        return (
            lambda v: v ** (1.0 / expo),
            lambda v: math.log(v) / expo,
            lambda v: 1.0 / expo,
            lambda hi: hi**expo,
        )
    return (
        lambda s: s,
        math.log,
        lambda s: s ** (expo - 1.0),
        lambda hi: hi,
    )


def _integrate_2(a, g, tol, limit):
    a1, a2 = a
    to_s, log_s, jac, upper = _s_coordinate(a2)

    def f(v):
        s = to_s(v)
        logy = np.array([math.log1p(-s), log_s(v)])
        return jac(v) * math.exp((a1 - 1.0) * logy[0]) * g(logy)

    return _quad(f, 0.0, upper(0.5), tol, limit)


def _integrate_3(a, g, tol, limit):
    a1, a2, a3 = a
    to_s, log_s, jac_s, upper_s = _s_coordinate(a2 + a3)
    to_t, log_t, jac_t, upper_t = _s_coordinate(a3)
    inner_err = [0.0]

    def inner(v, t, lt):
        s = to_s(v)
        ls = log_s(v)
        logy = np.array([math.log1p(-s), ls + math.log1p(-t), ls + lt])
        return jac_s(v) * math.exp((a1 - 1.0) * logy[0]) * g(logy)

    def outer(u):
        t = to_t(u)
        lt = log_t(u)
        val, err = _quad(inner, 0.0, upper_s(1.0 / (2.0 - t)), tol, limit, (t, lt))
        inner_err[0] = max(inner_err[0], err)
        return jac_t(u) * (1.0 - t) ** (a2 - 1.0) * val

    hi = upper_t(0.5)
    val, err = _quad(outer, 0.0, hi, tol, limit)
    return val, err + inner_err[0] * hi


def quadrature_moment(a, g="constant", resolution: int = 200, tol: float = 1e-12,
                      normalize: bool = False) -> QuadResult:
    """Integrate ``g(y) prod y_k^{a_k - 1}`` over the ordered simplex, ``d in {2, 3}``.

    ``g`` is an :class:`Integrand`, ``"constant"`` or a callable of ``y``.
    ``resolution`` caps the number of adaptive subintervals per axis.
    With ``normalize=True`` the result is divided by the integral of the
    density alone, giving ``E_a[g(Y)]``.
    """
    a = np.asarray(a, dtype=float)
    d = a.shape[0]
    if d not in (2, 3):
        raise UnsupportedDimension(f"quadrature supports d in {{2, 3}}, got d={d}")
    tail = tail_sums(a)
    for k in range(2, d + 1):
        if not tail[k - 1] > 0:
            raise TailSumViolation(k, float(tail[k - 1]))
    g = _as_integrand(g)
    run = _integrate_2 if d == 2 else _integrate_3
    val, err = run(a, g, tol, resolution)
    if normalize:
        q, qerr = run(a, constant(), tol, resolution)
        val, err = val / q, abs(val / q) * (err / abs(val) + qerr / q) if val else err / q
    return QuadResult(float(val), float(err))


def _shell_exponent(f, eps: float) -> float:
    lo = integrate.quad(f, eps / 2, eps, epsabs=0.0, epsrel=1e-12)[0]
    hi = integrate.quad(f, eps, 2 * eps, epsabs=0.0, epsrel=1e-12)[0]
    return math.log2(hi / lo)


def boundary_exponents(a, eps: float = 1e-9) -> list[float]:
    """Local integrability exponents of the unnormalized density at each boundary face.

    Compares the integral over dyadic shells ``[eps/2, eps]`` and
    ``[eps, 2 eps]`` next to ``s = 0`` (and ``t = 0`` for ``d = 3``).  An
    integrand behaving like ``x^(alpha - 1)`` gives ``alpha``.
    """
    a = np.asarray(a, dtype=float)
    if a.shape[0] == 2:
        a1, a2 = a
        return [_shell_exponent(lambda s: s ** (a2 - 1) * (1 - s) ** (a1 - 1), eps)]
    if a.shape[0] == 3:
        a1, a2, a3 = a

        def dens(s, t):
            return (1 - s) ** (a1 - 1) * (s * (1 - t)) ** (a2 - 1) * (s * t) ** (a3 - 1) * s

        return [
            _shell_exponent(lambda s: dens(s, 0.25), eps),
            _shell_exponent(lambda t: dens(0.3, t), eps),
        ]
    raise UnsupportedDimension(f"boundary probe supports d in {{2, 3}}, got d={a.shape[0]}")


def quadrature_is_finite(a, threshold: float = 1e-3) -> bool:
    """Whether the unnormalized density is integrable, judged numerically."""
    return all(alpha > threshold for alpha in boundary_exponents(a))


@dataclass(frozen=True)
class MCEstimate:
    estimate: float
    se: float
    n: int

    def z_score(self, target: float) -> float:
        if self.se == 0:
            return 0.0 if self.estimate == target else math.inf
        return (self.estimate - target) / self.se

    def to_dict(self) -> dict:
        return asdict(self)


def _statistic(samples: np.ndarray, statistic) -> np.ndarray:
    if statistic is None:
        return np.asarray(samples, dtype=float).ravel()
    if callable(statistic):
        return np.asarray(statistic(samples), dtype=float)
    name = str(statistic)
    y = np.asarray(samples, dtype=float)
    if name == "one":
        return np.ones(y.shape[0])
    if name == "inv_y1":
        return 1.0 / y[:, 0]
    if name[0] in "yz" and name[1:].isdigit():
        k = int(name[1:])
        if name[0] == "y" and 1 <= k <= y.shape[1]:
            return y[:, k - 1]
        if name[0] == "z" and 2 <= k <= y.shape[1]:
            return np.log(y[:, k - 2]) - np.log(y[:, k - 1])
    raise InvalidInput(f"unknown statistic {statistic!r}")


def mc_estimate(samples, statistic=None) -> MCEstimate:
    """Sample mean of a statistic and its standard error ``std / sqrt(n)``.

    ``statistic`` is a callable of the ``(n, d)`` sample array, one of
    ``"one"``, ``"inv_y1"``, ``"y<k>"``, ``"z<k>"``, or ``None`` when
    ``samples`` already holds the statistic values.
    """
    x = _statistic(samples, statistic)
    n = x.shape[0]
    if n < 2:
        raise EmptyInput(f"need at least 2 values, got {n}")
    return MCEstimate(float(x.mean()), float(x.std(ddof=1) / math.sqrt(n)), n)


@dataclass(frozen=True)
class KSResult:
    statistic: float
    pvalue: float
    critical: float
    alpha: float
    passed: bool
    n: int

    def to_dict(self) -> dict:
        return asdict(self)


def ks_test(samples, cdf: Callable, alpha: float = 0.001) -> KSResult:
    """One-sample Kolmogorov-Smirnov test with the asymptotic critical value.

    ``cdf`` must accept an array.  Passes when ``D_n <= K^{-1}(alpha) / sqrt(n)``
    where ``K`` is the Kolmogorov survival function.
    """
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    n = x.shape[0]
    if n < 100:
        raise TooFewSamples(f"KS test needs n >= 100, got {n}")
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    stat = float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))
    crit = float(kolmogi(alpha) / math.sqrt(n))
    return KSResult(stat, float(kolmogorov(math.sqrt(n) * stat)), crit, alpha, stat <= crit, n)


def ks_two_sample(x, y, alpha: float = 0.001) -> KSResult:
    """Two-sample Kolmogorov-Smirnov test with the asymptotic critical value."""
    x = np.sort(np.asarray(x, dtype=float).ravel())
    y = np.sort(np.asarray(y, dtype=float).ravel())
    n, m = x.shape[0], y.shape[0]
    if min(n, m) < 100:
        raise TooFewSamples(f"KS test needs n >= 100 per sample, got {n} and {m}")
    grid = np.concatenate([x, y])
    fx = np.searchsorted(x, grid, side="right") / n
    fy = np.searchsorted(y, grid, side="right") / m
    stat = float(np.max(np.abs(fx - fy)))
    en = math.sqrt(n * m / (n + m))
    crit = float(kolmogi(alpha) / en)
    return KSResult(stat, float(kolmogorov(en * stat)), crit, alpha, stat <= crit, n + m)
