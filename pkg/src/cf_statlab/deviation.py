"""Window densities, deviation statistics and rate fits over ensembles.

For a digit word w of length k, the window density of a fraction is the
overlap-counted number of occurrences of w among the length-(n-k+1) run
of digit windows, divided by n-k+1.  A deviation report aggregates, over
every numerator of an ensemble, how far those densities sit from their
Gauss-Kuzmin targets, together with the same statistic for expansion
length against log q.

All aggregation is done in exact integer tallies (per-length sums for
the means, counters for the deviation events) so that splitting the
residue range across workers and merging in any order reproduces the
same report byte for byte; floats appear only once, in the final report.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cfe import ReducedFraction, digits_to_str, expand_pair
from .ensembles import EnsembleSpec, realize_ensemble
from .gauss_kuzmin import levy_constant, target_density


def count_window(digits: Sequence[int], window: Sequence[int]) -> int:
    """Occurrences of window in digits, counted with overlap."""
    k = len(window)
    if k == 1:
        a = window[0]
        return sum(1 for d in digits if d == a)
    w = tuple(window)
    return sum(1 for i in range(len(digits) - k + 1) if tuple(digits[i : i + k]) == w)


def window_density(f: ReducedFraction, window: Sequence[int]) -> float:
    """Overlap-counted density of a digit word in the expansion of f.

    Raises ValueError when the window is longer than the expansion;
    a density of zero would misstate 'no data' as 'never occurs'.
    """
    w = tuple(window)
    if not w or any(a < 1 for a in w):
        raise ValueError(f"window digits must be integers >= 1, got {w}")
    digits = expand_pair(f.num, f.den)
    n, k = len(digits), len(w)
    if k > n:
        raise ValueError(f"window of length {k} exceeds expansion of length {n}")
    return count_window(digits, w) / (n - k + 1)


@dataclass
class Tally:
    """Exact integer accumulators for one residue chunk.

    density_sums[i] maps window-count m = n-k+1 to the summed occurrence
    counts over residues with that m; the float mean is recovered at the
    end as sum(S_m / m) / #computable.  Everything merges associatively.
    """

    n_residues: int = 0
    len_sum: int = 0
    len_dev: list[int] = field(default_factory=list)
    density_sums: list[dict[int, int]] = field(default_factory=list)
    dev_counts: list[list[int]] = field(default_factory=list)
    too_short: list[int] = field(default_factory=list)

    @classmethod
    def empty(cls, n_windows: int, n_eps: int) -> "Tally":
        return cls(
            len_dev=[0] * n_eps,
            density_sums=[{} for _ in range(n_windows)],
            dev_counts=[[0] * n_eps for _ in range(n_windows)],
            too_short=[0] * n_windows,
        )

    def merge(self, other: "Tally") -> None:
        self.n_residues += other.n_residues
        self.len_sum += other.len_sum
        for i, c in enumerate(other.len_dev):
            self.len_dev[i] += c
        for wi, sums in enumerate(other.density_sums):
            mine = self.density_sums[wi]
            for m, s in sums.items():
                mine[m] = mine.get(m, 0) + s
        for wi, row in enumerate(other.dev_counts):
            for i, c in enumerate(row):
                self.dev_counts[wi][i] += c
        for wi, c in enumerate(other.too_short):
            self.too_short[wi] += c


def tally_residues(
    q: int,
    residues: Iterable[int],
    windows: Sequence[tuple[int, ...]],
    eps_list: Sequence[float],
    targets: Sequence[float],
    length_target: float,
) -> Tally:
    """Accumulate window and length statistics over one residue chunk."""
    t = Tally.empty(len(windows), len(eps_list))
    log_q = math.log(q)
    single = [w[0] if len(w) == 1 else None for w in windows]
    for j in residues:
        digits = expand_pair(j, q)
        n = len(digits)
        t.n_residues += 1
        t.len_sum += n
        ratio = n / log_q
        for i, eps in enumerate(eps_list):
            if abs(ratio - length_target) > eps:
                t.len_dev[i] += 1
        for wi, w in enumerate(windows):
            k = len(w)
            if k > n:
                t.too_short[wi] += 1
                continue
            if single[wi] is not None:
                c = digits.count(single[wi])
            else:
                c = count_window(digits, w)
            m = n - k + 1
            sums = t.density_sums[wi]
            sums[m] = sums.get(m, 0) + c
            dens = c / m
            target = targets[wi]
            row = t.dev_counts[wi]
            for i, eps in enumerate(eps_list):
                if abs(dens - target) > eps:
                    row[i] += 1
    return t


@dataclass(frozen=True)
class DeviationEntry:
    eps: float
    prob: float
    count: int


@dataclass(frozen=True)
class WindowStat:
    window: tuple[int, ...]
    target: float
    mean: float
    dev: tuple[DeviationEntry, ...]
    too_short: int


@dataclass(frozen=True)
class LengthStat:
    target: float
    mean_ratio: float
    dev: tuple[DeviationEntry, ...]


@dataclass(frozen=True)
class DeviationReport:
    q: int
    ensemble: str
    ensemble_size: int
    too_short: int
    windows: tuple[WindowStat, ...]
    length: LengthStat
    runtime_ms: int


def build_report(
    spec: EnsembleSpec,
    windows: Sequence[tuple[int, ...]],
    eps_list: Sequence[float],
    tally: Tally,
    runtime_ms: int = 0,
) -> DeviationReport:
    """Turn merged integer tallies into the final float report.

    Window means are taken over the residues whose expansion is long
    enough for the window; residues that are too short are tallied
    separately and counted as deviating at every eps.
    """
    n = tally.n_residues
    window_stats = []
    for wi, w in enumerate(windows):
        short = tally.too_short[wi]
        computable = n - short
        sums = tally.density_sums[wi]
        mean = (
            math.fsum(s / m for m, s in sorted(sums.items())) / computable
            if computable
            else 0.0
        )
        dev = tuple(
            DeviationEntry(eps, (tally.dev_counts[wi][i] + short) / n, tally.dev_counts[wi][i] + short)
            for i, eps in enumerate(eps_list)
        )
        window_stats.append(
            WindowStat(tuple(w), target_density(w), mean, dev, short)
        )
    length = LengthStat(
        levy_constant(),
        tally.len_sum / (n * math.log(spec.q)),
        tuple(
            DeviationEntry(eps, tally.len_dev[i] / n, tally.len_dev[i])
            for i, eps in enumerate(eps_list)
        ),
    )
    return DeviationReport(
        q=spec.q,
        ensemble=spec.describe(),
        ensemble_size=n,
        too_short=sum(tally.too_short),
        windows=tuple(window_stats),
        length=length,
        runtime_ms=runtime_ms,
    )


def deviation_report(
    spec: EnsembleSpec,
    windows: Sequence[Sequence[int]],
    eps_list: Sequence[float],
) -> DeviationReport:
    """Exhaustive deviation statistics for one ensemble, single-process."""
    ws = [tuple(w) for w in windows]
    if not ws:
        raise ValueError("need at least one window")
    eps = list(eps_list)
    if not eps or any(e <= 0 for e in eps):
        raise ValueError(f"eps values must be positive, got {eps}")
    residues = realize_ensemble(spec)
    targets = [target_density(w) for w in ws]
    tally = tally_residues(spec.q, residues, ws, eps, targets, levy_constant())
    return build_report(spec, ws, eps, tally)


def rate_fit(reports: Sequence[DeviationReport], eps: float) -> dict[tuple[int, ...], float]:
    """Least-squares slope of -log P_q against log q, per window.

    P_q is the deviation probability at the given eps; exact zeros are
    smoothed to 1/(ensemble_size + 1) before taking logs.  At least two
    distinct q are required.
    """
    if len({r.q for r in reports}) < 2:
        raise ValueError("rate fit needs reports at >= 2 distinct q")
    by_window: dict[tuple[int, ...], list[tuple[float, float]]] = {}
    for rep in reports:
        for ws in rep.windows:
            entry = next((d for d in ws.dev if d.eps == eps), None)
            if entry is None:
                raise ValueError(f"report at q={rep.q} has no eps={eps} entry")
            p = entry.prob if entry.prob > 0 else 1.0 / (rep.ensemble_size + 1)
            by_window.setdefault(ws.window, []).append((math.log(rep.q), -math.log(p)))
    out = {}
    for w, pts in by_window.items():
        if len(pts) < 2:
            raise ValueError(f"window {w} appears at fewer than 2 q values")
        xm = math.fsum(x for x, _ in pts) / len(pts)
        ym = math.fsum(y for _, y in pts) / len(pts)
        sxx = math.fsum((x - xm) ** 2 for x, _ in pts)
        sxy = math.fsum((x - xm) * (y - ym) for x, y in pts)
        out[w] = sxy / sxx
    return out


def report_to_dict(report: DeviationReport) -> dict:
    """JSON-ready dict with stable field names and ordering."""
    return {
        "q": report.q,
        "ensemble": report.ensemble,
        "ensemble_size": report.ensemble_size,
        "too_short": report.too_short,
        "windows": [
            {
                "w": list(ws.window),
                "target": ws.target,
                "mean": ws.mean,
                "too_short": ws.too_short,
                "dev": [
                    {"eps": d.eps, "prob": d.prob, "count": d.count} for d in ws.dev
                ],
            }
            for ws in report.windows
        ],
        "length": {
            "target": report.length.target,
            "mean_ratio": report.length.mean_ratio,
            "dev": [
                {"eps": d.eps, "prob": d.prob, "count": d.count}
                for d in report.length.dev
            ],
        },
        "runtime_ms": report.runtime_ms,
    }


def report_to_json(report: DeviationReport, meta: dict | None = None) -> str:
    """Serialize a report; a meta dict, if given, leads the object."""
    body = report_to_dict(report)
    if meta is not None:
        body = {"meta": meta, **body}
    return json.dumps(body, indent=2) + "\n"


def report_csv_rows(report: DeviationReport) -> list[list[str]]:
    """One row per (q, window, eps); the length statistic rides along
    as pseudo-window 'len'."""
    rows = []
    for ws in report.windows:
        for d in ws.dev:
            rows.append(
                [
                    str(report.q),
                    report.ensemble,
                    str(report.ensemble_size),
                    digits_to_str(ws.window),
                    repr(d.eps),
                    repr(ws.target),
                    repr(ws.mean),
                    repr(d.prob),
                    str(d.count),
                    str(ws.too_short),
                ]
            )
    for d in report.length.dev:
        rows.append(
            [
                str(report.q),
                report.ensemble,
                str(report.ensemble_size),
                "len",
                repr(d.eps),
                repr(report.length.target),
                repr(report.length.mean_ratio),
                repr(d.prob),
                str(d.count),
                "0",
            ]
        )
    return rows


CSV_HEADER = [
    "q",
    "ensemble",
    "ensemble_size",
    "window",
    "eps",
    "target",
    "mean",
    "prob",
    "count",
    "too_short",
]
