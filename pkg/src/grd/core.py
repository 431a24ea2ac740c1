"""Parameters, ordered-simplex points and the unnormalized density.

A GRD(a) law lives on the ordered simplex

    {y : y_1 >= y_2 >= ... >= y_d >= 0, y_1 + ... + y_d = 1}

with density proportional to ``prod_k y_k ** (a_k - 1)``.  It is a proper
distribution iff every tail sum ``abar_k = a_k + ... + a_d`` with ``k >= 2``
is positive; ``abar_1`` may have any sign.

Arrays are 0-based throughout, so ``tail[0]`` is ``abar_1`` and
``tail[k - 1]`` is ``abar_k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionTooSmall,
    NonFiniteInput,
    NotInOrderedSimplex,
    NotNegativeIntegerSum,
    NotZeroSum,
    TailSumViolation,
)

__all__ = [
    "ZERO_SUM_TOL",
    "SIMPLEX_TOL",
    "INTEGER_TOL",
    "GrdParams",
    "OrderedPoint",
    "validate_params",
    "ordered_point",
    "tail_sums",
    "log_density_unnormalized",
    "normalizing_constant_zero_sum",
]

ZERO_SUM_TOL = 1e-12
SIMPLEX_TOL = 1e-12
INTEGER_TOL = 1e-9


def _frozen(x) -> np.ndarray:
    arr = np.array(x, dtype=float)
    arr.setflags(write=False)
    return arr


def tail_sums(a) -> np.ndarray:
    """Return ``(a_1 + ... + a_d, a_2 + ... + a_d, ..., a_d)``."""
    a = np.asarray(a, dtype=float)
    return np.cumsum(a[::-1])[::-1]


@dataclass(frozen=True, eq=False)
class GrdParams:
    """A validated parameter vector with its cached tail sums.

    Build instances with :func:`validate_params`; the constructor itself
    does not check tail-sum positivity.
    """

    a: np.ndarray
    tail: np.ndarray = field(repr=False)

    @property
    def d(self) -> int:
        return self.a.shape[0]

    @property
    def abar1(self) -> float:
        return float(self.tail[0])

    @property
    def r(self) -> float:
        """``-abar_1``, the exponent linking ``a`` to its zero-sum shift."""
        return -float(self.tail[0])

    @property
    def rates(self) -> np.ndarray:
        """Tail sums ``abar_2, ..., abar_d`` (the log-gap rates when zero-sum)."""
        return self.tail[1:]

    @property
    def is_zero_sum(self) -> bool:
        return abs(self.tail[0]) <= ZERO_SUM_TOL

    @property
    def negative_integer_sum(self) -> int | None:
        """``M`` if ``abar_1 = -M`` for an integer ``M >= 1``, else ``None``."""
        r = -float(self.tail[0])
        M = round(r)
        if M >= 1 and abs(r - M) <= INTEGER_TOL:
            return int(M)
        return None

    @property
    def case(self) -> str:
        if self.is_zero_sum:
            return "zero-sum"
        if self.negative_integer_sum is not None:
            return "negative-integer-sum"
        return "general"

    def shifted(self, delta: float) -> "GrdParams":
        """Parameters ``a + delta * e_1``; tail sums beyond the first are unchanged."""
        a = self.a.copy()
        a[0] += delta
        tail = self.tail.copy()
        tail[0] += delta
        return GrdParams(_frozen(a), _frozen(tail))

    def zero_sum_shift(self) -> "GrdParams":
        """The zero-sum parameter ``a - abar_1 e_1`` with ``tail[0]`` set to exactly 0."""
        a = self.a.copy()
        a[0] = -float(self.tail[1])
        tail = self.tail.copy()
        tail[0] = 0.0
        return GrdParams(_frozen(a), _frozen(tail))

    def require_zero_sum(self) -> None:
        if not self.is_zero_sum:
            raise NotZeroSum(
                f"requires a_1 + ... + a_d = 0 (within {ZERO_SUM_TOL}), "
                f"got {self.abar1!r}"
            )

    def require_negative_integer_sum(self) -> int:
        M = self.negative_integer_sum
        if M is None:
            raise NotNegativeIntegerSum(
                f"requires a_1 + ... + a_d = -M for an integer M >= 1 "
                f"(within {INTEGER_TOL}), got {self.abar1!r}"
            )
        return M

    def to_list(self) -> list[float]:
        return [float(x) for x in self.a]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrdParams):
            return NotImplemented
        return bool(np.array_equal(self.a, other.a))

    def __hash__(self) -> int:
        return hash(self.a.tobytes())


def validate_params(a) -> GrdParams:
    """Check a parameter vector and cache its tail sums.

    Raises
    ------
    DimensionTooSmall
        if ``len(a) < 2``.
    NonFiniteInput
        if some entry is nan or infinite.
    TailSumViolation
        for the largest ``k >= 2`` with ``a_k + ... + a_d <= 0``; tail sums
        accumulate from the right, so this is where the violation starts.
    """
    try:
        arr = np.asarray(a, dtype=float)
    except (TypeError, ValueError) as exc:
        raise NonFiniteInput(f"parameters must be real numbers: {exc}") from None
    if arr.ndim != 1:
        raise DimensionTooSmall(f"parameters must be a flat vector, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise DimensionTooSmall(f"need d >= 2 parameters, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput(f"parameters must be finite, got {arr.tolist()}")
    tail = tail_sums(arr)
    for k in range(arr.shape[0], 1, -1):
        if not tail[k - 1] > 0:
            raise TailSumViolation(k, float(tail[k - 1]))
    return GrdParams(_frozen(arr), _frozen(tail))


@dataclass(frozen=True, eq=False)
class OrderedPoint:
    """A point of the ordered simplex.  Build with :func:`ordered_point`."""

    y: np.ndarray

    @property
    def d(self) -> int:
        return self.y.shape[0]

    def log_gaps(self) -> np.ndarray:
        """``z_k = log y_{k-1} - log y_k`` for ``k = 2..d``."""
        with np.errstate(divide="ignore"):
            logy = np.log(self.y)
        return logy[:-1] - logy[1:]


def ordered_point(y) -> OrderedPoint:
    """Validate ``y`` as a point of the closed ordered simplex.

    Ordering is checked exactly (ties allowed); the sum must be within
    ``SIMPLEX_TOL`` of one.
    """
    if isinstance(y, OrderedPoint):
        return y
    arr = np.asarray(y, dtype=float)
    if arr.ndim != 1 or arr.shape[0] < 2:
        raise NotInOrderedSimplex(f"expected a vector of length >= 2, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NotInOrderedSimplex("entries must be finite")
    if arr[-1] < 0 or arr[0] > 1:
        raise NotInOrderedSimplex(f"entries must lie in [0, 1]: {arr.tolist()}")
    if np.any(np.diff(arr) > 0):
        k = int(np.argmax(np.diff(arr) > 0)) + 1
        raise NotInOrderedSimplex(f"ordering violated: y_{k} < y_{k + 1} in {arr.tolist()}")
    total = math.fsum(arr)
    if abs(total - 1.0) > SIMPLEX_TOL:
        raise NotInOrderedSimplex(f"entries sum to {total!r}, not 1")
    return OrderedPoint(_frozen(arr))


def log_density_unnormalized(p: GrdParams, y) -> float:
    """``sum_k (a_k - 1) log y_k`` with explicit conventions at ``y_k = 0``.

    A zero coordinate contributes ``+inf`` if ``a_k < 1``, ``-inf`` if
    ``a_k > 1`` and ``0`` if ``a_k == 1``.  If zeros produce both infinities
    the value is indeterminate and ``nan`` is returned.
    """
    pt = ordered_point(y)
    if pt.d != p.d:
        raise NotInOrderedSimplex(f"point has length {pt.d}, parameters have d={p.d}")
    total = 0.0
    pos_inf = neg_inf = False
    for ak, yk in zip(p.a, pt.y):
        if yk > 0:
            total += (ak - 1.0) * math.log(yk)
        elif ak < 1:
            pos_inf = True
        elif ak > 1:
            neg_inf = True
    if pos_inf and neg_inf:
        return math.nan
    if pos_inf:
        return math.inf
    if neg_inf:
        return -math.inf
    return total


def normalizing_constant_zero_sum(p: GrdParams) -> float:
    """``Q_a = prod_{k>=2} 1 / abar_k`` for zero-sum parameters."""
    p.require_zero_sum()
    return math.exp(-float(np.sum(np.log(p.rates))))
