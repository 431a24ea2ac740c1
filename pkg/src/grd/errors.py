"""Exception hierarchy.

Every error carries a stable ``code`` string; the command line maps these
to exit statuses and prints them in its JSON error payload.
"""

from __future__ import annotations

__all__ = [
    "GrdError",
    "InvalidInput",
    "NonFiniteInput",
    "DimensionTooSmall",
    "TailSumViolation",
    "NotInOrderedSimplex",
    "NotZeroSum",
    "NotNegativeIntegerSum",
    "BadMomentOrder",
    "MomentOrderTooHigh",
    "TiedOrZeroWeights",
    "MismatchedTotal",
    "CapExceeded",
    "MgfDomainViolation",
    "NegativeTruncatedWeight",
    "UnsupportedDimension",
    "ToleranceNotReached",
    "EmptyInput",
    "TooFewSamples",
    "MethodCaseMismatch",
    "TruncationWarning",
    "NonConvergedWarning",
]


class GrdError(Exception):
    """Base class for all errors raised by :mod:`grd`."""

    code = "GRD_ERROR"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class InvalidInput(GrdError, ValueError):
    code = "INVALID_INPUT"


class NonFiniteInput(InvalidInput):
    code = "NON_FINITE_INPUT"


class DimensionTooSmall(InvalidInput):
    code = "DIMENSION_TOO_SMALL"


class TailSumViolation(GrdError, ValueError):
    """Some tail sum ``a_k + ... + a_d`` with ``k >= 2`` is not positive."""

    code = "TAIL_SUM_VIOLATION"

    def __init__(self, k: int, value: float):
        self.k = k
        self.value = value
        super().__init__(
            f"tail sum at k={k} is {value!r}; every tail sum a_k + ... + a_d "
            f"with k >= 2 must be > 0"
        )

    def to_dict(self) -> dict:
        return {**super().to_dict(), "k": self.k, "tail_sum": self.value}


class NotInOrderedSimplex(InvalidInput):
    code = "NOT_IN_ORDERED_SIMPLEX"


class NotZeroSum(GrdError, ValueError):
    code = "NOT_ZERO_SUM"


class NotNegativeIntegerSum(GrdError, ValueError):
    code = "NOT_NEGATIVE_INTEGER_SUM"


class BadMomentOrder(GrdError, ValueError):
    code = "BAD_MOMENT_ORDER"


class MomentOrderTooHigh(BadMomentOrder):
    code = "MOMENT_ORDER_TOO_HIGH"


class TiedOrZeroWeights(InvalidInput):
    code = "TIED_OR_ZERO_WEIGHTS"


class MismatchedTotal(InvalidInput):
    code = "MISMATCHED_TOTAL"


class CapExceeded(GrdError, RuntimeError):
    """An enumeration would exceed the configured size cap."""

    code = "CAP_EXCEEDED"

    def __init__(self, required: int, cap: int):
        self.required = required
        self.cap = cap
        super().__init__(f"enumeration needs {required} entries, cap is {cap}")

    def to_dict(self) -> dict:
        return {**super().to_dict(), "required": self.required, "cap": self.cap}


class MgfDomainViolation(GrdError, ValueError):
    code = "MGF_DOMAIN_VIOLATION"

    def __init__(self, k: int, t: float, rate: float):
        self.k = k
        super().__init__(f"t_{k} = {t!r} must be < {rate!r} (tail sum at k={k})")

    def to_dict(self) -> dict:
        return {**super().to_dict(), "k": self.k}


class NegativeTruncatedWeight(GrdError, ArithmeticError):
    code = "NEGATIVE_TRUNCATED_WEIGHT"


class UnsupportedDimension(GrdError, ValueError):
    code = "UNSUPPORTED_DIMENSION"


class ToleranceNotReached(GrdError, ArithmeticError):
    code = "TOLERANCE_NOT_REACHED"


class EmptyInput(InvalidInput):
    code = "EMPTY_INPUT"


class TooFewSamples(InvalidInput):
    code = "TOO_FEW_SAMPLES"


class MethodCaseMismatch(GrdError, ValueError):
    code = "METHOD_CASE_MISMATCH"


class TruncationWarning(UserWarning):
    """Negative truncated series weights were clipped before sampling."""


class NonConvergedWarning(UserWarning):
    """A series was cut at its term limit before meeting the tolerance."""
