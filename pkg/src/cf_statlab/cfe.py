"""Exact continued-fraction kernel for rationals in (0, 1).

Every rational p/q with 0 < p < q and gcd(p, q) = 1 has exactly two
continued-fraction expansions 1/(a1 + 1/(a2 + ...)); we work with the
canonical (shorter) one, whose last digit is >= 2.  Plain Euclidean
division produces it directly.  All arithmetic is exact; continuants are
checked against 2**63 - 1 so results always fit machine integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

INT63_MAX = 2**63 - 1

# Denominator cap for whole-ensemble scans.  Continuants of p/q never
# exceed q, so staying below 2**31 keeps every intermediate well inside
# the checked 63-bit range even for derived quantities like q*q.
SCAN_DENOMINATOR_CAP = 2**31


class ContinuantOverflowError(OverflowError):
    """A continuant exceeded 2**63 - 1."""


@dataclass(frozen=True, slots=True)
class ReducedFraction:
    """A rational in lowest terms with 0 < num < den <= 2**63 - 1."""

    num: int
    den: int

    def __post_init__(self) -> None:
        if not isinstance(self.num, int) or not isinstance(self.den, int):
            raise TypeError("numerator and denominator must be ints")
        if not 0 < self.num < self.den:
            raise ValueError(f"need 0 < num < den, got {self.num}/{self.den}")
        if self.den > INT63_MAX:
            raise ContinuantOverflowError(f"denominator {self.den} exceeds 2**63 - 1")
        if math.gcd(self.num, self.den) != 1:
            raise ValueError(
                f"{self.num}/{self.den} is not in lowest terms; use reduce()"
            )

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def reduce(num: int, den: int) -> ReducedFraction:
    """Divide out the gcd and return the fraction in lowest terms."""
    if den <= 0:
        raise ValueError(f"denominator must be positive, got {den}")
    g = math.gcd(num, den)
    if g == 0:
        raise ValueError("0/0 is not a fraction")
    return ReducedFraction(num // g, den // g)


def expand_pair(num: int, den: int) -> list[int]:
    """Canonical digits of num/den via Euclidean division.  No validation.

    The raw quotient sequence of the Euclidean algorithm is already
    canonical: remainders decrease strictly, so the final digit is >= 2
    (or the expansion is the single digit den when num = 1).
    """
    digits = []
    a, b = den, num
    while b:
        d, r = divmod(a, b)
        digits.append(d)
        a, b = b, r
    return digits


def expand(f: ReducedFraction) -> tuple[int, ...]:
    """Canonical continued-fraction digits of f."""
    return tuple(expand_pair(f.num, f.den))


def cf_len(f: ReducedFraction) -> int:
    """Number of digits in the canonical expansion."""
    return len(expand_pair(f.num, f.den))


def continuant_pair(digits: Sequence[int]) -> tuple[int, int]:
    """Final continuant pair (p, q) of a digit string, overflow-checked.

    Accepts any digits >= 1 (no canonicality requirement); in particular
    the value of a string ending in 1 and the unit endpoint [1] -> (1, 1)
    are representable here, unlike in ReducedFraction.
    """
    if not digits:
        raise ValueError("digit string must be nonempty")
    p_prev, q_prev = 1, 0
    p, q = 0, 1
    for i, a in enumerate(digits):
        if not isinstance(a, int) or a < 1:
            raise ValueError(f"digit #{i + 1} must be an integer >= 1, got {a!r}")
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        if q > INT63_MAX:
            raise ContinuantOverflowError(
                f"continuant exceeds 2**63 - 1 after digit #{i + 1}"
            )
    return p, q


def evaluate(digits: Sequence[int]) -> ReducedFraction:
    """Value of a digit string as a reduced fraction.

    Non-canonical input ending in 1 is accepted (both expansions of a
    rational evaluate to the same fraction).  The degenerate string [1],
    whose value is 1, is rejected.
    """
    p, q = continuant_pair(digits)
    if p == q:
        raise ValueError("digit string [1] evaluates to 1, not a fraction in (0, 1)")
    return ReducedFraction(p, q)


def convergents(f: ReducedFraction) -> tuple[tuple[int, int], ...]:
    """Convergent pairs (p_k, q_k) of f, one per canonical digit.

    Seeds (1, 0) and (0, 1) precede the recursion p_k = a_k p_{k-1} + p_{k-2};
    the returned sequence starts after the first digit is consumed, and its
    final pair equals (f.num, f.den).  Consecutive pairs satisfy the
    determinant identity |p_k q_{k-1} - p_{k-1} q_k| = 1.
    """
    out = []
    p_prev, q_prev = 1, 0
    p, q = 0, 1
    for a in expand_pair(f.num, f.den):
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        out.append((p, q))
    return tuple(out)


def mirror(f: ReducedFraction) -> ReducedFraction:
    """The reflected fraction (den - num)/den."""
    return ReducedFraction(f.den - f.num, f.den)


def neg_mod_inverse(num: int, den: int) -> int:
    """The unique p' in (Z/den)^x with num * p' = -1 (mod den)."""
    if math.gcd(num, den) != 1:
        raise ValueError(f"{num} is not invertible mod {den}")
    return (-pow(num, -1, den)) % den


def canonicalize(digits: Sequence[int]) -> tuple[int, ...]:
    """Rewrite a digit string ending in 1 into the canonical form.

    [..., a, 1] and [..., a + 1] are the two expansions of the same
    rational; the canonical one has final digit >= 2.
    """
    d = list(digits)
    if not d:
        raise ValueError("digit string must be nonempty")
    if any(not isinstance(a, int) or a < 1 for a in d):
        raise ValueError("digits must be integers >= 1")
    if d[-1] == 1:
        if len(d) == 1:
            raise ValueError("digit string [1] has no canonical form in (0, 1)")
        d.pop()
        d[-1] += 1
    return tuple(d)


def is_canonical(digits: Sequence[int]) -> bool:
    return (
        len(digits) > 0
        and all(isinstance(a, int) and a >= 1 for a in digits)
        and digits[-1] >= 2
    )


def digits_to_str(digits: Iterable[int]) -> str:
    """Serialize digits as comma-separated decimal integers, e.g. '1,1,3'."""
    return ",".join(str(a) for a in digits)


def digits_from_str(text: str) -> tuple[int, ...]:
    """Parse comma-separated digits; inverse of digits_to_str."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise ValueError(f"malformed digit string {text!r}")
    try:
        digits = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"malformed digit string {text!r}") from exc
    if any(a < 1 for a in digits):
        raise ValueError(f"digits must be >= 1, got {text!r}")
    return digits
