"""Gauss-Kuzmin cylinder intervals and target densities.

The set of x in (0, 1) whose expansion starts with a fixed digit word w
is an interval with rational endpoints (a cylinder).  Its measure under
the Gauss measure dx/((1+x) log 2) is the asymptotic density with which
w occurs in the expansion of a typical number; these are the targets the
empirical window statistics are compared against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cfe import continuant_pair

_LN2 = math.log(2)


@dataclass(frozen=True)
class RationalInterval:
    """Subinterval of [0, 1] with exact rational endpoints, lo < hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not 0 <= self.lo < self.hi <= 1:
            raise ValueError(f"need 0 <= lo < hi <= 1, got [{self.lo}, {self.hi}]")

    def width(self) -> Fraction:
        return self.hi - self.lo


def _validate_window(window: Sequence[int]) -> tuple[int, ...]:
    w = tuple(window)
    if not w:
        raise ValueError("window must be nonempty")
    if any(not isinstance(a, int) or a < 1 for a in w):
        raise ValueError(f"window digits must be integers >= 1, got {w}")
    return w


def cylinder_interval(window: Sequence[int]) -> RationalInterval:
    """The interval of x whose expansion starts with the given digits.

    Endpoints are the values of [w1..wk] and [w1..wk + 1] (the last digit
    bumped by one), ordered.  The word (1) gives (1/2, 1): the unit
    endpoint is a legitimate cylinder endpoint even though 1 itself is
    not a fraction in (0, 1).
    """
    w = _validate_window(window)
    p0, q0 = continuant_pair(w)
    p1, q1 = continuant_pair(w[:-1] + (w[-1] + 1,))
    a, b = Fraction(p0, q0), Fraction(p1, q1)
    if a > b:
        a, b = b, a
    return RationalInterval(a, b)


def gauss_measure(interval: RationalInterval) -> float:
    """Gauss measure log2((1 + hi)/(1 + lo)) of an interval.

    Evaluated as log1p of the exact rational (hi - lo)/(1 + lo) so that
    narrow cylinders far down the digit tree keep full relative accuracy.
    """
    delta = (interval.hi - interval.lo) / (1 + interval.lo)
    return math.log1p(float(delta)) / _LN2


def target_density(window: Sequence[int]) -> float:
    """Asymptotic density of a digit word: Gauss measure of its cylinder."""
    return gauss_measure(cylinder_interval(window))


def single_digit_density(a: int) -> float:
    """Closed form log2(1 + 1/(a*(a+2))) for the density of digit a."""
    if not isinstance(a, int) or a < 1:
        raise ValueError(f"digit must be an integer >= 1, got {a!r}")
    return math.log1p(1.0 / (a * (a + 2))) / _LN2


def levy_constant() -> float:
    """12 log(2) / pi**2: slope of expansion length against log q."""
    return 12.0 * _LN2 / math.pi**2
