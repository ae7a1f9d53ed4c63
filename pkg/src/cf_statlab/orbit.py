"""Diagonal-flow diagnostics for rational orbits on the lattice space.

The orbit of p/q is t -> a_t u_{p/q} Z^2 with a_t = diag(e^{t/2}, e^{-t/2})
and u_s the upper unipotent; alpha1 is the reciprocal length of the
shortest nonzero lattice vector.  The natural window is [0, 2 log q]: at
its right end the vector (0, q) has shrunk to length one, and beyond it
the orbit climbs into the cusp for good.

Everything reduces to a small family of candidate vectors.  Writing the
lattice as {(m + n p/q, n)}, best-approximation theory says the shortest
vector at every time is, up to sign, either (1, 0) or a convergent vector
(q_k p/q - p_k, q_k); the horizontal parts |q_k p - p_k q| / q are just
the Euclidean remainders of (q, p) scaled by 1/q, so the whole family
falls out of one gcd sweep.  Squared vector length along the flow is
x^2 e^t + y^2 e^{-t}, a single-minimum convex curve per vector, and any
two candidates cross at most once; the pointwise minimum is therefore a
classic lower envelope, and level-set questions (time above a height
threshold) have closed-form answers per candidate.  All of it is carried
out in log coordinates so the same code serves denominators of a few
thousand bits.

Lagrange-Gauss reduction over exact integer coefficient pairs provides
an independent check of alpha1 at arbitrary times.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .ensembles import EnsembleSpec, realize_ensemble
from .cfe import neg_mod_inverse

_NEG_INF = float("-inf")

# Hermite bound in the plane: every unimodular planar lattice has a
# nonzero vector of length <= (4/3)**(1/4), hence alpha1 >= (3/4)**(1/4).
HERMITE_ALPHA1 = (3.0 / 4.0) ** 0.25


@dataclass(frozen=True)
class OrbitSpec:
    """One rational orbit: numerator, denominator, time horizon."""

    p: int
    q: int
    T: float | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"denominator must be an integer >= 2, got {self.q!r}")
        if not isinstance(self.p, int) or not 0 < self.p < self.q:
            raise ValueError(f"numerator must satisfy 0 < p < q, got {self.p!r}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not reduced")
        if self.T is not None and not self.T > 0:
            raise ValueError(f"horizon must be positive, got {self.T!r}")

    def horizon(self) -> float:
        """The requested horizon, defaulting to 2 log q."""
        return 2.0 * math.log(self.q) if self.T is None else float(self.T)


def _candidates(p: int, q: int) -> list[tuple[float, float]]:
    """(log x, log y) for the candidate shortest vectors of p/q.

    Index 0 is (1, 0); the rest are the convergent vectors in order of
    increasing y = q_k, ending with (0, q).  When the two leading
    convergent denominators coincide (first digit 1) only the shorter
    vector is kept, so x strictly decreases and y strictly increases.
    Works unchanged for denominators far beyond float range since only
    logarithms of the integer data leave this function.
    """
    log_q = math.log(q)
    out = [(0.0, _NEG_INF), (math.log(p) - log_q, 0.0)]
    a, b = q, p
    qk, qm1 = 1, 0
    while b:
        d, r = divmod(a, b)
        a, b = b, r
        qk, qm1 = d * qk + qm1, qk
        pair = ((math.log(b) - log_q) if b else _NEG_INF, math.log(qk))
        if pair[1] == out[-1][1]:
            out[-1] = pair  # q_1 == q_0 == 1; keep the shorter vector
        else:
            out.append(pair)
    return out


def _cross(ci: tuple[float, float], cj: tuple[float, float]) -> float:
    """Time where candidate j overtakes candidate i (x_i > x_j, y_i < y_j):
    solve x_i^2 e^t + y_i^2 e^{-t} = x_j^2 e^t + y_j^2 e^{-t}."""
    lxi, lyi = ci
    lxj, lyj = cj
    if lyi == _NEG_INF:
        num = 2.0 * lyj
    else:
        num = 2.0 * lyj + math.log1p(-math.exp(2.0 * (lyi - lyj)))
    if lxj == _NEG_INF:
        den = 2.0 * lxi
    else:
        den = 2.0 * lxi + math.log1p(-math.exp(2.0 * (lxj - lxi)))
    return 0.5 * (num - den)


def _envelope(cands: list[tuple[float, float]]) -> tuple[list[int], list[float]]:
    """Lower envelope of the squared-length curves over all of t.

    Returns (indices, crossings): indices[i] is active on the interval
    (crossings[i-1], crossings[i]).  Standard single-crossing sweep in
    order of increasing y.
    """
    env = [0]
    ts: list[float] = []
    for idx in range(1, len(cands)):
        c = cands[idx]
        while True:
            t = _cross(cands[env[-1]], c)
            if ts and t <= ts[-1]:
                env.pop()
                ts.pop()
            else:
                break
        env.append(idx)
        ts.append(t)
    return env, ts


def _log_alpha1(cand: tuple[float, float], t: float) -> float:
    """log alpha1 at time t assuming cand is the active minimizer."""
    lx, ly = cand
    a = _NEG_INF if lx == _NEG_INF else 2.0 * lx + t
    b = _NEG_INF if ly == _NEG_INF else 2.0 * ly - t
    if a < b:
        a, b = b, a
    lse = a if b == _NEG_INF else a + math.log1p(math.exp(b - a))
    return -0.5 * lse


def alpha1_exact(p: int, q: int, t: float) -> float:
    """alpha1 of the orbit of p/q at time t, from the candidate family."""
    cands = _candidates(p, q)
    return math.exp(max(_log_alpha1(c, t) for c in cands))


def _level_interval(
    cand: tuple[float, float], threshold_log: float
) -> tuple[float, float] | None:
    """Open t-interval where this candidate's squared length is below
    e^{threshold_log}, i.e. where it alone would push alpha1 above the
    height M = e^{-threshold_log/2}.  None when it never does."""
    lx, ly = cand
    c = threshold_log
    if lx == _NEG_INF:
        return (2.0 * ly - c, math.inf)
    if ly == _NEG_INF:
        return (-math.inf, c - 2.0 * lx)
    ex = 2.0 * (lx + ly) - 2.0 * c
    if ex >= -math.log(4.0):
        return None  # minimum squared length 2xy already >= e^c
    s = math.sqrt(1.0 - 4.0 * math.exp(ex))
    lo = (2.0 * ly - c) + math.log(2.0 / (1.0 + s))
    hi = (c - 2.0 * lx) + math.log((1.0 + s) / 2.0)
    return (lo, hi)


def _merge_length(intervals: list[tuple[float, float]]) -> float:
    total = 0.0
    cur_lo = cur_hi = None
    for lo, hi in sorted(intervals):
        if cur_lo is None:
            cur_lo, cur_hi = lo, hi
        elif lo <= cur_hi:
            cur_hi = max(cur_hi, hi)
        else:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
    if cur_lo is not None:
        total += cur_hi - cur_lo
    return total


def _above_measure(cands: list[tuple[float, float]], M: float, T: float) -> float:
    """Lebesgue measure of {t in [0, T] : alpha1(t) > M}.

    alpha1 > M iff some candidate is shorter than 1/M, so the excursion
    set is the union of the per-candidate level intervals; no envelope
    needed for the measure alone.
    """
    c = -2.0 * math.log(M)
    clipped = []
    for cand in cands:
        iv = _level_interval(cand, c)
        if iv is None:
            continue
        lo, hi = max(iv[0], 0.0), min(iv[1], T)
        if lo < hi:
            clipped.append((lo, hi))
    return _merge_length(clipped)


@dataclass(frozen=True)
class Segment:
    """One piece of the profile: candidate `index` is shortest on [t0, t1]."""

    t0: float
    t1: float
    index: int


@dataclass(frozen=True)
class OrbitProfile:
    """Piecewise description of t -> alpha1 over [0, T] plus grid samples."""

    spec: OrbitSpec
    candidates: tuple[tuple[float, float], ...]
    breakpoints: tuple[float, ...]
    segments: tuple[Segment, ...]
    samples: tuple[tuple[float, float], ...]

    def alpha1(self, t: float) -> float:
        if not 0.0 <= t <= self.segments[-1].t1:
            raise ValueError(f"time {t} outside [0, {self.segments[-1].t1}]")
        for seg in self.segments:
            if t <= seg.t1:
                return math.exp(_log_alpha1(self.candidates[seg.index], t))
        raise AssertionError("unreachable")


def alpha1_profile(spec: OrbitSpec, n_samples: int = 1024) -> OrbitProfile:
    """Profile of alpha1 on [0, T]: active candidate per segment and
    uniformly spaced samples (n_samples + 1 points including both ends)."""
    T = spec.horizon()
    cands = _candidates(spec.p, spec.q)
    env, ts = _envelope(cands)
    segments = []
    breakpoints = []
    for i, idx in enumerate(env):
        lo = ts[i - 1] if i > 0 else -math.inf
        hi = ts[i] if i < len(ts) else math.inf
        lo, hi = max(lo, 0.0), min(hi, T)
        if lo < hi:
            if segments:
                breakpoints.append(lo)
            segments.append(Segment(lo, hi, idx))
    samples = []
    seg_i = 0
    for i in range(n_samples + 1):
        t = T * i / n_samples
        while t > segments[seg_i].t1 and seg_i + 1 < len(segments):
            seg_i += 1
        samples.append((t, math.exp(_log_alpha1(cands[segments[seg_i].index], t))))
    return OrbitProfile(
        spec=spec,
        candidates=tuple(cands),
        breakpoints=tuple(breakpoints),
        segments=tuple(segments),
        samples=tuple(samples),
    )


@dataclass(frozen=True)
class ExcursionSummary:
    """Time above height M on [0, T], with the excursion intervals."""

    M: float
    T: float
    fraction_above: float
    intervals: tuple[tuple[float, float], ...]
    grid: float
    validation_gap: float


def excursion_fraction(
    spec: OrbitSpec, M: float, grid: float = 1e-3, validate: bool = True
) -> ExcursionSummary:
    """Fraction of [0, T] with alpha1 > M, solved exactly per profile
    segment (quadratic in e^t); the grid is used only to cross-check the
    result by midpoint sampling, reported as validation_gap."""
    if M <= 0:
        raise ValueError(f"height threshold must be positive, got {M!r}")
    if grid <= 0:
        raise ValueError(f"grid must be positive, got {grid!r}")
    T = spec.horizon()
    cands = _candidates(spec.p, spec.q)
    env, ts = _envelope(cands)
    c = -2.0 * math.log(M)
    raw: list[tuple[float, float]] = []
    for i, idx in enumerate(env):
        lo = ts[i - 1] if i > 0 else -math.inf
        hi = ts[i] if i < len(ts) else math.inf
        lo, hi = max(lo, 0.0), min(hi, T)
        if lo >= hi:
            continue
        iv = _level_interval(cands[idx], c)
        if iv is None:
            continue
        a, b = max(iv[0], lo), min(iv[1], hi)
        if a < b:
            # merge with the previous segment's excursion when they
            # meet at the common breakpoint
            if raw and a <= raw[-1][1] + 1e-9 * max(1.0, T):
                raw[-1] = (raw[-1][0], b)
            else:
                raw.append((a, b))
    total = math.fsum(b - a for a, b in raw)
    gap = 0.0
    if validate:
        n = max(2, math.ceil(T / grid))
        hits = 0
        seg_i = 0
        for i in range(n):
            t = (i + 0.5) * T / n
            while seg_i < len(ts) and t > ts[seg_i]:
                seg_i += 1
            if _log_alpha1(cands[env[seg_i]], t) > math.log(M):
                hits += 1
        gap = abs(hits / n - total / T)
    return ExcursionSummary(
        M=M,
        T=T,
        fraction_above=total / T,
        intervals=tuple(raw),
        grid=grid,
        validation_gap=gap,
    )


@dataclass(frozen=True)
class DualResidual:
    """Dual-orbit identity residual at one height threshold."""

    M: float
    lhs: float
    rhs: float
    residual: float


def dual_orbit_identity(
    p: int, q: int, m_values: list[float], grid: float = 1e-3
) -> list[DualResidual]:
    """Residuals of the dual-window identity at each height M.

    The time average over [0, 2 log q] of the orbit of p/q splits into
    half the average over [0, log q] of p/q plus half that of p'/q with
    p p' = -1 mod q; duality rotates planar lattices, so alpha1 level
    sets see the two halves identically.  The residual is |lhs - rhs|
    for the indicator of {alpha1 > M}.
    """
    p2 = neg_mod_inverse(p, q)
    log_q = math.log(q)
    out = []
    for M in m_values:
        lhs = excursion_fraction(OrbitSpec(p, q), M, grid, validate=False)
        a = excursion_fraction(OrbitSpec(p, q, T=log_q), M, grid, validate=False)
        b = excursion_fraction(OrbitSpec(p2, q, T=log_q), M, grid, validate=False)
        rhs = 0.5 * (a.fraction_above + b.fraction_above)
        out.append(DualResidual(M, lhs.fraction_above, rhs, abs(lhs.fraction_above - rhs)))
    return out


def retained_fractions(q: int, residues: list[int], M: float) -> list[float]:
    """Per-orbit fraction of [0, 2 log q] spent at or below height M.
    Unit of work for parallel ensemble scans; order follows `residues`."""
    T = 2.0 * math.log(q)
    out = []
    for j in residues:
        above = _above_measure(_candidates(j, q), M, T)
        out.append(1.0 - above / T)
    return out


@dataclass(frozen=True)
class EnsembleMass:
    """Retained-mass proxy of an ensemble at height M."""

    q: int
    M: float
    retained_mass: float
    n_orbits: int
    grid: float


def ensemble_mass(spec: EnsembleSpec, M: float, grid: float = 1e-3) -> EnsembleMass:
    """Mean over the ensemble of the fraction of [0, 2 log q] at or
    below height M: the retained-mass proxy for non-escape.  fsum makes
    the mean independent of how the residues were chunked."""
    if M <= 0:
        raise ValueError(f"height threshold must be positive, got {M!r}")
    residues = realize_ensemble(spec)
    fractions = retained_fractions(spec.q, residues, M)
    return EnsembleMass(
        q=spec.q,
        M=M,
        retained_mass=math.fsum(fractions) / len(fractions),
        n_orbits=len(fractions),
        grid=grid,
    )


def haar_mass_oracle(
    M: float,
    n_points: int = 1000,
    horizon: float = 1e4,
    bits: int = 8192,
    seed: int = 20260822,
) -> float:
    """Monte Carlo reference for the Haar mass at or below height M.

    Averages long-horizon orbit retention over uniformly random starting
    points s = j / 2**bits with odd j, a dyadic stand-in for a uniform
    irrational: with 2 log(2**bits) comfortably beyond the horizon, the
    orbit never reaches its terminal cusp climb inside [0, horizon] and
    the time average estimates the Haar measure.  Deterministic per seed.
    """
    if 2.0 * bits * math.log(2.0) <= horizon * 1.1:
        raise ValueError("bits too small for the requested horizon")
    rng = random.Random(seed)
    den = 1 << bits
    acc = []
    for _ in range(n_points):
        j = rng.getrandbits(bits) | 1
        while j >= den or j < 3:
            j = rng.getrandbits(bits) | 1
        above = _above_measure(_candidates(j, den), M, horizon)
        acc.append(1.0 - above / horizon)
    return math.fsum(acc) / n_points


def lagrange_gauss_alpha1(p: int, q: int, t: float) -> float:
    """alpha1 at time t by Lagrange-Gauss reduction, independent of the
    candidate construction.

    Lattice vectors are (a/q e^{t/2}, n e^{-t/2}) for integer pairs
    (a, n) = (m q + n p, n); the reduction runs on the exact integer
    pairs, with only the quadratic form evaluated in floats, so no
    cancellation is incurred building small vectors from large ones.
    """
    if not 0 < p < q or math.gcd(p, q) != 1:
        raise ValueError(f"need a reduced fraction, got {p}/{q}")
    X = math.exp(t) / (q * q)
    Y = math.exp(-t)

    def norm2(v: tuple[int, int]) -> float:
        return v[0] * v[0] * X + v[1] * v[1] * Y

    def dot(u: tuple[int, int], v: tuple[int, int]) -> float:
        return u[0] * v[0] * X + u[1] * v[1] * Y

    b1, b2 = (q, 0), (p, 1)
    if norm2(b1) > norm2(b2):
        b1, b2 = b2, b1
    for _ in range(10_000):
        mu = round(dot(b1, b2) / norm2(b1))
        b2 = (b2[0] - mu * b1[0], b2[1] - mu * b1[1])
        if norm2(b2) >= norm2(b1):
            break
        b1, b2 = b2, b1
    else:
        raise RuntimeError("Lagrange-Gauss reduction failed to converge")
    return 1.0 / math.sqrt(norm2(b1))
