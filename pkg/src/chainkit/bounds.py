"""Closed-form upper bounds on the stretch factor of a c-chain, the lower
bound exponent of the Cesaro family, and the best-bound selector.

All logarithms are base 2.
"""

import math
from dataclasses import asdict, dataclass

from .exceptions import InvalidParams
from .validation import check_count, check_threshold

BOUND_NAMES = ("logc", "linear", "sqrt")


def _check(c, n):
    return check_threshold(c), check_count(n, 2)


def upper_bound_logc(c, n):
    """c (n-1)^{log c}; tight for c = 1."""
    c, n = _check(c, n)
    return c * (n - 1) ** math.log2(c)


def upper_bound_linear(c, n):
    c, n = _check(c, n)
    return c * (n - 2) + 1.0


def upper_bound_sqrt(c, n, constant="stated"):
    """Explicit form of the O(c^2 sqrt(n-1)) bound.

    ``constant="stated"`` uses 8 (1 + c^2/pi), the published constant;
    ``constant="derived"`` uses 8 c^2 (1 + 1/pi), the sum of the short-edge
    and long-edge length estimates behind the bound. The two agree at c = 1.
    """
    c, n = _check(c, n)
    if constant == "stated":
        factor = 8.0 * (1.0 + c * c / math.pi)
    elif constant == "derived":
        factor = 8.0 * c * c * (1.0 + 1.0 / math.pi)
    else:
        raise InvalidParams(f"unknown constant {constant!r}")
    return factor * math.sqrt(n - 1)


def lower_bound_exponent(c):
    """Exponent of n - 1 in the stretch factor of the lower-bound family."""
    if not isinstance(c, (int, float)) or not c > 2:
        raise InvalidParams(f"c must be > 2, got {c!r}")
    return (1.0 + math.log2(c - 2.0) - math.log2(c)) / 2.0


@dataclass(frozen=True)
class BoundReport:
    c: float
    n: int
    logc_bound: float
    linear_bound: float
    sqrt_bound: float
    best: str
    lower_exponent: float = None

    @property
    def best_value(self):
        return getattr(self, f"{self.best}_bound")

    def to_dict(self):
        d = asdict(self)
        d["best_value"] = self.best_value
        return d


def best_upper_bound(c, n, constant="stated"):
    """All three bounds at (c, n) and the name of the smallest.

    Ties go to the first of logc, linear, sqrt.
    """
    c, n = _check(c, n)
    values = (upper_bound_logc(c, n), upper_bound_linear(c, n),
              upper_bound_sqrt(c, n, constant))
    best = BOUND_NAMES[min(range(3), key=lambda i: (values[i], i))]
    exponent = lower_bound_exponent(c) if c > 2 else None
    return BoundReport(c, n, *values, best, exponent)
