"""Numerator ensembles inside (Z/qZ)^x.

An ensemble is the set of numerators j whose fractions j/q enter a scan:
all units, the primes below q, a seeded random subset of prescribed
density q**h, or an explicit list.  Realization is deterministic; the
random kind uses a partial Fisher-Yates shuffle driven by the stdlib
Mersenne Twister so equal (q, h, seed) always give identical sets.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .cfe import SCAN_DENOMINATOR_CAP

KINDS = ("all", "primes", "random", "explicit")


class EmptyEnsembleError(ValueError):
    """An ensemble realized to the empty set."""


def primes_below(n: int) -> list[int]:
    """Primes strictly below n, by sieve of Eratosthenes."""
    if n <= 2:
        return []
    flags = bytearray([1]) * n
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(n - 1) + 1):
        if flags[i]:
            flags[i * i :: i] = b"\x00" * len(range(i * i, n, i))
    return [i for i in range(n) if flags[i]]


def coprime_units(q: int) -> list[int]:
    """All 1 <= j < q with gcd(j, q) = 1, ascending."""
    if q == 2:
        return [1]
    return [j for j in range(1, q) if math.gcd(j, q) == 1]


@dataclass(frozen=True)
class EnsembleSpec:
    """Which numerators to scan for a fixed denominator q."""

    kind: str
    q: int
    h: float | None = None
    seed: int | None = None
    residues: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"denominator must be an integer >= 2, got {self.q!r}")
        if self.q > SCAN_DENOMINATOR_CAP:
            raise ValueError(
                f"denominator {self.q} exceeds the scan cap 2**31"
            )
        if self.kind == "random":
            if self.h is None or not 0 < self.h <= 1:
                raise ValueError(f"random ensemble needs 0 < h <= 1, got {self.h!r}")
            if self.seed is None:
                raise ValueError("random ensemble needs a seed")
        if self.kind == "explicit" and self.residues is None:
            raise ValueError("explicit ensemble needs residues")

    def describe(self) -> str:
        """Short echo string used in report headers."""
        if self.kind == "random":
            return f"random:h={self.h!r},seed={self.seed}"
        if self.kind == "explicit":
            return f"explicit:n={len(self.residues or ())}"
        return self.kind

    @classmethod
    def from_cli(cls, text: str, q: int) -> "EnsembleSpec":
        """Parse 'all', 'primes', 'random:h=H,seed=S' or 'file:PATH'."""
        if text == "all" or text == "primes":
            return cls(text, q)
        if text.startswith("random:"):
            h = seed = None
            for part in text[len("random:") :].split(","):
                key, _, val = part.partition("=")
                if key == "h":
                    h = float(val)
                elif key == "seed":
                    seed = int(val)
                else:
                    raise ValueError(f"unknown random-ensemble field {key!r}")
            return cls("random", q, h=h, seed=seed)
        if text.startswith("file:"):
            path = text[len("file:") :]
            with open(path, encoding="ascii") as fh:
                residues = tuple(
                    int(tok) for tok in fh.read().split() if tok.strip()
                )
            return cls("explicit", q, residues=residues)
        raise ValueError(f"cannot parse ensemble {text!r}")


def realize_ensemble(spec: EnsembleSpec) -> list[int]:
    """Materialize the ensemble as a sorted list of residues.

    Raises EmptyEnsembleError rather than returning an empty list: an
    empty scan is always a caller mistake worth surfacing.
    """
    q = spec.q
    if spec.kind == "all":
        out = coprime_units(q)
    elif spec.kind == "primes":
        out = [p for p in primes_below(q) if q % p != 0]
    elif spec.kind == "random":
        units = coprime_units(q)
        want = min(math.ceil(q**spec.h), len(units))
        rng = random.Random(spec.seed)
        # partial Fisher-Yates: only the first `want` slots are settled
        for i in range(want):
            j = rng.randrange(i, len(units))
            units[i], units[j] = units[j], units[i]
        out = sorted(units[:want])
    else:
        out = []
        seen = set()
        for r in spec.residues or ():
            r = r % q
            if r == 0 or math.gcd(r, q) != 1:
                raise ValueError(f"residue {r} is not a unit mod {q}")
            if r not in seen:
                seen.add(r)
                out.append(r)
        out.sort()
    if not out:
        raise EmptyEnsembleError(f"ensemble {spec.describe()} at q={q} is empty")
    return out
