"""Weak compositions, multinomial coefficients and discrete sampling tables.

Compositions of ``M`` into ``d`` nonnegative parts are always produced in
reverse-lexicographic order, e.g. for ``d = 3, M = 2``::

    (2,0,0) (1,1,0) (1,0,1) (0,2,0) (0,1,1) (0,0,2)

Table indices, cumulative arrays and test goldens depend on this order.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import CapExceeded, InvalidInput, MismatchedTotal

__all__ = [
    "DEFAULT_CAP",
    "Composition",
    "count_compositions",
    "enumerate_compositions",
    "composition_array",
    "composition_tails",
    "log_multinomial",
    "log_multinomial_array",
    "MixtureTable",
]

DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class Composition:
    m: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.m)

    @property
    def tail(self) -> tuple[int, ...]:
        """``(m_1 + ... + m_d, m_2 + ... + m_d, ..., m_d)``."""
        out, acc = [], 0
        for x in reversed(self.m):
            acc += x
            out.append(acc)
        return tuple(reversed(out))


def count_compositions(d: int, M: int) -> int:
    return math.comb(M + d - 1, d - 1)


def _check(d: int, M: int, cap: int) -> None:
    if d < 1 or M < 0:
        raise InvalidInput(f"need d >= 1 and M >= 0, got d={d}, M={M}")
    n = count_compositions(d, M)
    if n > cap:
        raise CapExceeded(n, cap)


def _walk(d: int, M: int) -> Iterator[tuple[int, ...]]:
    if d == 1:
        yield (M,)
        return
    for first in range(M, -1, -1):
        for rest in _walk(d - 1, M - first):
            yield (first, *rest)


def enumerate_compositions(d: int, M: int, cap: int = DEFAULT_CAP) -> Iterator[Composition]:
    """Lazily yield every ``m`` in ``N_0^d`` with ``m_1 + ... + m_d = M``."""
    _check(d, M, cap)
    return (Composition(m) for m in _walk(d, M))


@functools.lru_cache(maxsize=256)
def _array(d: int, M: int) -> np.ndarray:
    if d == 1:
        out = np.array([[M]], dtype=np.int64)
    else:
        blocks = []
        for first in range(M, -1, -1):
            rest = _array(d - 1, M - first)
            blocks.append(np.column_stack([np.full(rest.shape[0], first, np.int64), rest]))
        out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def composition_array(d: int, M: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All compositions as a read-only ``(count, d)`` integer array, same order."""
    _check(d, M, cap)
    return _array(d, M)


def composition_tails(m: np.ndarray) -> np.ndarray:
    """Row-wise tail sums of a composition array."""
    return np.cumsum(m[..., ::-1], axis=-1)[..., ::-1]


def log_multinomial(M: int, m) -> float:
    """``log(M! / (m_1! ... m_d!))``."""
    parts = m.m if isinstance(m, Composition) else tuple(int(x) for x in m)
    if any(x < 0 for x in parts):
        raise InvalidInput(f"composition entries must be >= 0: {parts}")
    if sum(parts) != M:
        raise MismatchedTotal(f"composition {parts} sums to {sum(parts)}, not {M}")
    return float(gammaln(M + 1) - np.sum(gammaln(np.asarray(parts, dtype=float) + 1)))


def log_multinomial_array(M: int, m: np.ndarray) -> np.ndarray:
    return gammaln(M + 1) - np.sum(gammaln(m + 1.0), axis=-1)


@dataclass(frozen=True, eq=False)
class MixtureTable:
    """An enumerated discrete law over compositions.

    ``log_weight_abs`` and ``sign`` hold the unnormalized signed weights.
    ``weight`` is the signed normalized weight; ``prob`` is the sampling
    law obtained by clipping negative entries to zero and renormalizing.
    ``clipped_mass`` is the total normalized weight removed by clipping.
    """

    compositions: np.ndarray
    log_weight_abs: np.ndarray
    sign: np.ndarray
    weight: np.ndarray = field(init=False)
    prob: np.ndarray = field(init=False)
    cumulative: np.ndarray = field(init=False)
    log_total: float = field(init=False)
    clipped_mass: float = field(init=False)
    n_negative: int = field(init=False)

    def __post_init__(self):
        log_total, total_sign = logsumexp(self.log_weight_abs, b=self.sign, return_sign=True)
        if not total_sign > 0:
            raise ArithmeticError("mixture weights have a non-positive total")
        weight = self.sign * np.exp(self.log_weight_abs - log_total)
        neg = weight < 0
        clipped = float(-weight[neg].sum()) if neg.any() else 0.0
        prob = np.where(neg, 0.0, weight)
        prob = prob / prob.sum()
        cumulative = np.cumsum(prob)
        cumulative[-1] = 1.0
        for name, value in [
            ("weight", weight),
            ("prob", prob),
            ("cumulative", cumulative),
        ]:
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        object.__setattr__(self, "log_total", float(log_total))
        object.__setattr__(self, "clipped_mass", clipped)
        object.__setattr__(self, "n_negative", int(np.count_nonzero(weight < -1e-12)))

    @classmethod
    def from_log_weights(cls, compositions, log_weights, sign=None) -> "MixtureTable":
        log_weights = np.asarray(log_weights, dtype=float)
        if sign is None:
            sign = np.ones_like(log_weights)
        return cls(np.asarray(compositions), log_weights, np.asarray(sign, dtype=float))

    def __len__(self) -> int:
        return self.compositions.shape[0]

    @property
    def tails(self) -> np.ndarray:
        return composition_tails(self.compositions)

    @property
    def all_positive(self) -> bool:
        return bool(np.all(self.sign > 0))

    def sample_index(self, u: np.ndarray) -> np.ndarray:
        """Map uniforms on ``[0, 1)`` to table rows by inverse CDF."""
        idx = np.searchsorted(self.cumulative, u, side="right")
        return np.minimum(idx, len(self) - 1)

    def to_dict(self) -> dict:
        return {
            "order": self.compositions.tolist(),
            "weight": self.weight.tolist(),
            "sign": self.sign.astype(int).tolist(),
            "prob": self.prob.tolist(),
            "clipped_mass": self.clipped_mass,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)
