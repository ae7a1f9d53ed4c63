"""Zaremba numerator scans.

A numerator j is k-Zaremba for q when every digit of the canonical
expansion of j/q is at most k.  Canonical matters: 5/6 = [1, 5] fails
k = 4 even though its longer expansion [1, 4, 1] has digits <= 4.
The scans count such numerators per denominator, restrict to prime
numerators, search for counterexamples to the prime-witness conjecture,
and count the global population of bounded-digit fractions up to a
denominator bound by walking the continuant tree.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

from .cfe import SCAN_DENOMINATOR_CAP, ReducedFraction
from .ensembles import primes_below

# Continuants grow at least as fast as Fibonacci numbers, so any digit
# string with continuant <= 2**31 has well under 95 digits; the DFS cap
# below is a guard against logic errors, not a tuning knob.
_MAX_DEPTH = 95


def digits_bounded_by(num: int, den: int, k: int) -> bool:
    """True when every canonical digit of num/den is <= k.  Fast path:
    aborts at the first oversized digit.  num/den need not be reduced;
    Euclidean quotients are invariant under common factors."""
    a, b = den, num
    while b:
        d = a // b
        if d > k:
            return False
        a, b = b, a - d * b
    return True


def is_k_zaremba(f: ReducedFraction, k: int) -> bool:
    """Every digit of the canonical expansion of f is <= k."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be an integer >= 1, got {k!r}")
    return digits_bounded_by(f.num, f.den, k)


@dataclass(frozen=True)
class ZarembaRow:
    """Per-denominator counts of k-Zaremba numerators."""

    q: int
    k: int
    count_all: int
    count_prime: int
    witness_prime: int | None
    ratio_all: float | None
    ratio_prime: float | None


def _check_q_k(q: int, k: int) -> None:
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"denominator must be an integer >= 2, got {q!r}")
    if q > SCAN_DENOMINATOR_CAP:
        raise ValueError(f"denominator {q} exceeds the scan cap 2**31")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be an integer >= 1, got {k!r}")


def scan_denominator(q: int, k: int, primes: list[int] | None = None) -> ZarembaRow:
    """Count k-Zaremba numerators for one denominator.

    `primes` may carry a precomputed sorted prime list covering q; it is
    sieved on the spot otherwise.  Log-ratios log(count)/log(q) are None
    when the corresponding count is zero.
    """
    _check_q_k(q, k)
    if primes is None:
        primes = primes_below(q)
    # a first digit <= k forces j > q/(k+1); everything below fails at once
    lo = q // (k + 1)
    count_all = 0
    for j in range(lo + 1, q):
        if digits_bounded_by(j, q, k) and math.gcd(j, q) == 1:
            count_all += 1
    count_prime = 0
    witness: int | None = None
    for i in range(bisect_right(primes, lo), bisect_right(primes, q - 1)):
        p = primes[i]
        if q % p != 0 and digits_bounded_by(p, q, k):
            count_prime += 1
            if witness is None:
                witness = p
    log_q = math.log(q)
    return ZarembaRow(
        q=q,
        k=k,
        count_all=count_all,
        count_prime=count_prime,
        witness_prime=witness,
        ratio_all=math.log(count_all) / log_q if count_all else None,
        ratio_prime=math.log(count_prime) / log_q if count_prime else None,
    )


def scan_range(
    q_lo: int, q_hi: int, k: int, primes: list[int] | None = None
) -> list[ZarembaRow]:
    """scan_denominator over q_lo..q_hi inclusive, sharing one sieve."""
    if primes is None:
        primes = primes_below(q_hi)
    return [scan_denominator(q, k, primes) for q in range(q_lo, q_hi + 1)]


def _has_witness(q: int, k: int, primes_only: bool, primes: list[int]) -> bool:
    lo = q // (k + 1)
    if primes_only:
        for i in range(bisect_right(primes, lo), bisect_right(primes, q - 1)):
            p = primes[i]
            if q % p != 0 and digits_bounded_by(p, q, k):
                return True
        return False
    for j in range(lo + 1, q):
        if digits_bounded_by(j, q, k) and math.gcd(j, q) == 1:
            return True
    return False


def conjecture_scan(q_max: int, k: int, primes_only: bool = True) -> list[int]:
    """Denominators in (1, q_max] with no k-Zaremba witness.

    With primes_only the witness must be a prime numerator; q = 2 is
    skipped there as vacuous, since no prime below 2 exists for any k.
    The search exits at the first witness per denominator, which keeps
    whole-range scans cheap.
    """
    _check_q_k(max(q_max, 2), k)
    primes = primes_below(q_max) if primes_only else []
    start = 3 if primes_only else 2
    return [
        q
        for q in range(start, q_max + 1)
        if not _has_witness(q, k, primes_only, primes)
    ]


def hensley_count(q_max: int, k: int) -> int:
    """Number of reduced fractions in (0, 1) with denominator <= q_max
    and all digits <= k, counted by depth-first walk of the continuant
    tree (append digits 1..k, prune when the continuant passes q_max,
    count nodes whose final digit is >= 2)."""
    _check_q_k(q_max, k)
    count = 0
    stack = [(1, 0, 0)]  # (q_k, q_{k-1}, depth) for the digit prefix so far
    while stack:
        q0, qm1, depth = stack.pop()
        if depth >= _MAX_DEPTH:
            raise RuntimeError("continuant tree deeper than expected; bad input?")
        for a in range(1, k + 1):
            qq = a * q0 + qm1
            if qq > q_max:
                break  # continuants increase with the digit; siblings only grow
            if a >= 2:
                count += 1
            stack.append((qq, q0, depth + 1))
    return count


def brute_zaremba_count(q_max: int, k: int) -> int:
    """Independent double-loop count of the same population; quadratic,
    for cross-checking hensley_count at small bounds."""
    _check_q_k(q_max, k)
    total = 0
    for q in range(2, q_max + 1):
        lo = q // (k + 1)
        for j in range(lo + 1, q):
            if digits_bounded_by(j, q, k) and math.gcd(j, q) == 1:
                total += 1
    return total


CSV_HEADER = [
    "q",
    "k",
    "count_all",
    "count_prime",
    "witness_prime",
    "ratio_all",
    "ratio_prime",
]


def row_fields(row: ZarembaRow) -> list[str]:
    """CSV cells for one row; empty strings for absent witness/ratios."""
    return [
        str(row.q),
        str(row.k),
        str(row.count_all),
        str(row.count_prime),
        "" if row.witness_prime is None else str(row.witness_prime),
        "" if row.ratio_all is None else repr(row.ratio_all),
        "" if row.ratio_prime is None else repr(row.ratio_prime),
    ]
