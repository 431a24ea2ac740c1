"""Random variate generation.

Every sampler draws log gaps ``Z_k`` as exponentials (possibly after
choosing a mixture component) and maps them back to the ordered simplex:

    Y_1 = 1 / (1 + sum_{k>=2} exp(-(Z_2 + ... + Z_k))),   Y_k = Y_{k-1} exp(-Z_k).

Randomness comes from ``numpy.random.Generator`` over ``PCG64``; see
:func:`make_rng`.  Exponentials are drawn by inverse CDF,
``-log(1 - U) / rate`` with ``U`` uniform on ``[0, 1)``, so a stream is fully
determined by the seed and the sequence of ``Generator.random`` calls.

Batch samplers return ``(n, d)`` arrays, one draw per row.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterator

import numpy as np

from .compositions import DEFAULT_CAP, MixtureTable
from .core import GrdParams
from .errors import InvalidInput, MethodCaseMismatch
from .mixture import mixture_weights
from .series import DEFAULT_K, signed_series_weights

__all__ = [
    "RNG_IDENTITY",
    "make_rng",
    "exponential",
    "reconstruct",
    "log_gaps",
    "sample_zero_sum",
    "sample_exact_negative_integer",
    "sample_approximate_general",
    "sample_rejection_oracle",
    "RejectionStats",
    "make_sampler",
    "sample",
    "iter_samples",
    "METHODS",
]

RNG_IDENTITY = f"numpy.random.PCG64 (numpy {np.__version__})"
METHODS = ("exact", "approx", "rejection", "zero-sum")


def make_rng(seed=None) -> np.random.Generator:
    """A ``Generator(PCG64(seed))``; an existing Generator is passed through."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def exponential(rng: np.random.Generator, rates: np.ndarray) -> np.ndarray:
    u = rng.random(np.shape(rates))
    return -np.log1p(-u) / rates


def reconstruct(z: np.ndarray) -> np.ndarray:
    """Map log gaps (shape ``(..., d-1)``) to ordered-simplex points."""
    z = np.asarray(z, dtype=float)
    ratios = np.exp(-z)
    shape = z.shape[:-1] + (z.shape[-1] + 1,)
    y = np.empty(shape)
    y[..., 0] = 1.0 / (1.0 + np.sum(np.cumprod(ratios, axis=-1), axis=-1))
    # sequential products keep y_k <= y_{k-1} exact in floating point
    for k in range(1, shape[-1]):
        y[..., k] = y[..., k - 1] * ratios[..., k - 1]
    return y


def log_gaps(y: np.ndarray) -> np.ndarray:
    """``Z_k = log Y_{k-1} - log Y_k`` for each row of ``y``."""
    with np.errstate(divide="ignore"):
        logy = np.log(np.asarray(y, dtype=float))
    return logy[..., :-1] - logy[..., 1:]


def _from_table(p: GrdParams, table: MixtureTable, n: int, rng) -> np.ndarray:
    idx = table.sample_index(rng.random(n))
    rates = p.rates + table.tails[idx, 1:]
    return reconstruct(exponential(rng, rates))


def _check_n(n: int) -> int:
    if int(n) != n or n < 0:
        raise InvalidInput(f"number of draws must be a nonnegative integer, got {n!r}")
    return int(n)


def sample_zero_sum(p: GrdParams, n: int, rng=None) -> np.ndarray:
    """Exact draws when ``abar_1 = 0``: independent ``Z_k ~ Exp(abar_k)``."""
    p.require_zero_sum()
    rng = make_rng(rng)
    n = _check_n(n)
    return reconstruct(exponential(rng, np.broadcast_to(p.rates, (n, p.d - 1))))


def sample_exact_negative_integer(
    p: GrdParams, n: int, rng=None, cap: int = DEFAULT_CAP, table: MixtureTable | None = None
) -> np.ndarray:
    """Exact draws when ``abar_1 = -M``.

    Picks ``m`` with probability ``w_m`` by binary search on the
    cumulative weights, then ``Z_k ~ Exp(abar_k + mbar_k)``.
    """
    p.require_negative_integer_sum()
    rng = make_rng(rng)
    n = _check_n(n)
    if table is None:
        table = mixture_weights(p, cap)
    return _from_table(p, table, n, rng)


def sample_approximate_general(
    p: GrdParams,
    n: int,
    K: int = DEFAULT_K,
    rng=None,
    cap: int = DEFAULT_CAP,
    table: MixtureTable | None = None,
) -> np.ndarray:
    """Approximate draws for any ``abar_1`` from the ``K``-truncated series mixture.

    Components with negative truncated weight are dropped (see
    :func:`grd.series.signed_series_weights`); ``table.clipped_mass``
    measures how much signed mass that removed.  ``K = 0`` samples the
    zero-sum shift ``a - abar_1 e_1`` exactly.
    """
    rng = make_rng(rng)
    n = _check_n(n)
    if table is None:
        table = signed_series_weights(p, K, cap)
    return _from_table(p, table, n, rng)


@dataclass
class RejectionStats:
    proposals: int
    accepted: int
    bound: float

    @property
    def rate(self) -> float:
        return self.accepted / self.proposals if self.proposals else math.nan

    def to_dict(self) -> dict:
        return {**asdict(self), "rate": self.rate}


def sample_rejection_oracle(
    p: GrdParams, n: int, rng=None, batch: int | None = None
) -> tuple[np.ndarray, RejectionStats]:
    """Exact draws for any valid ``a`` by rejection from the zero-sum shift.

    Proposals ``Y ~ GRD(a - abar_1 e_1)`` are accepted with probability
    ``Y_1^{abar_1} / B`` where ``B = d^{-abar_1}`` if ``abar_1 < 0`` and
    ``B = 1`` otherwise; ``1/d <= Y_1 <= 1`` makes this a valid bound.
    """
    rng = make_rng(rng)
    n = _check_n(n)
    b = p.zero_sum_shift()
    abar1 = p.abar1
    log_bound = -abar1 * math.log(p.d) if abar1 < 0 else 0.0
    batch = batch or max(1024, min(n, 1 << 20))
    chunks = []
    got = proposals = 0
    while got < n:
        y = reconstruct(exponential(rng, np.broadcast_to(b.rates, (batch, p.d - 1))))
        u = rng.random(batch)
        keep = np.log1p(-u) < abar1 * np.log(y[:, 0]) - log_bound
        proposals += batch
        acc = y[keep]
        chunks.append(acc)
        got += acc.shape[0]
    out = np.concatenate(chunks)[:n] if chunks else np.empty((0, p.d))
    return out, RejectionStats(proposals=proposals, accepted=got, bound=math.exp(log_bound))


def make_sampler(
    p: GrdParams, method: str = "auto", K: int = DEFAULT_K, cap: int = DEFAULT_CAP
) -> Callable[[int, np.random.Generator], np.ndarray]:
    """Resolve ``method`` for ``p`` once and return ``draw(n, rng)``.

    ``"auto"`` picks ``zero-sum``, ``exact`` or ``approx`` from the case of
    ``p``.  ``exact`` needs ``abar_1 = -M``; ``zero-sum`` needs
    ``abar_1 = 0``.  Mixture tables are built here, not per call.
    """
    if method == "auto":
        method = {"zero-sum": "zero-sum", "negative-integer-sum": "exact"}.get(p.case, "approx")
    if method == "zero-sum":
        if not p.is_zero_sum:
            raise MethodCaseMismatch(
                f"method zero-sum needs a_1 + ... + a_d = 0; these parameters sum to {p.abar1!r}"
            )
        return lambda n, rng: sample_zero_sum(p, n, rng)
    if method == "exact":
        if p.negative_integer_sum is None:
            raise MethodCaseMismatch(
                f"method exact needs a_1 + ... + a_d = -M for an integer M >= 1; "
                f"these parameters sum to {p.abar1!r} (use approx or rejection)"
            )
        table = mixture_weights(p, cap)
        return lambda n, rng: sample_exact_negative_integer(p, n, rng, table=table)
    if method == "approx":
        table = signed_series_weights(p, K, cap)
        return lambda n, rng: sample_approximate_general(p, n, K, rng, table=table)
    if method == "rejection":
        return lambda n, rng: sample_rejection_oracle(p, n, rng)[0]
    raise InvalidInput(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


def sample(
    p: GrdParams,
    n: int,
    method: str = "auto",
    rng=None,
    K: int = DEFAULT_K,
    cap: int = DEFAULT_CAP,
) -> np.ndarray:
    """``n`` draws by the named method; see :func:`make_sampler`."""
    return make_sampler(p, method, K, cap)(n, make_rng(rng))


def iter_samples(
    p: GrdParams,
    method: str = "auto",
    rng=None,
    K: int = DEFAULT_K,
    chunk: int = 4096,
) -> Iterator[np.ndarray]:
    """Endless stream of single draws, generated ``chunk`` at a time."""
    draw = make_sampler(p, method, K)
    rng = make_rng(rng)
    while True:
        yield from draw(chunk, rng)
