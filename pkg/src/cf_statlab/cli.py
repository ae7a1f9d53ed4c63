"""Command-line front end: experiment orchestration, parallel execution,
result caching, and file emission.

All parallelism lives here.  Library modules expose pure units of work
(residue-chunk tallies, q-range scan rows, per-orbit retained fractions);
the CLI chunks the input, maps the units over a worker pool, and merges
in a fixed order with exact-integer or fsum reductions, so the emitted
bytes never depend on the worker count.  Timing goes to stderr only and
runtime fields in files are pinned to zero for the same reason.

Every output file starts with `#` metadata lines (tool version, command,
canonical config echo, seed); JSON files carry the same trio under a
leading "meta" key instead, since JSON has no comments.  Results are
optionally cached under a content hash of (version, command, config) —
a hit replays the stored file bytes and stdout verbatim.

Exit codes: 0 ok, 2 usage/validation, 3 empty ensemble, 4 overflow
(after flushing partial output).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from multiprocessing import Pool

from . import __version__
from .cfe import (
    ContinuantOverflowError,
    ReducedFraction,
    digits_from_str,
    digits_to_str,
    expand,
)
from .deviation import (
    CSV_HEADER as STATS_CSV_HEADER,
    Tally,
    build_report,
    rate_fit,
    report_csv_rows,
    report_to_json,
    tally_residues,
    window_density,
)
from .ensembles import EmptyEnsembleError, EnsembleSpec, primes_below, realize_ensemble
from .gauss_kuzmin import levy_constant, target_density
from .orbit import (
    OrbitSpec,
    alpha1_profile,
    dual_orbit_identity,
    excursion_fraction,
    retained_fractions,
)
from .svgplot import Panel, Series, scatter_svg
from .zaremba import CSV_HEADER as ZAREMBA_CSV_HEADER, ZarembaRow, row_fields, scan_range

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_EMPTY_ENSEMBLE = 3
EXIT_OVERFLOW = 4

_ALL_COLOR = "#2ca02c"  # all coprime numerators
_PRIME_COLOR = "#1f77b4"  # prime numerators


# ---------------------------------------------------------------- plumbing


def _fail(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _config_echo(config: dict) -> str:
    return json.dumps(config, sort_keys=True, separators=(",", ":"))


def _header_lines(command: str, config: dict, seed: int | None) -> list[str]:
    return [
        f"# cf-statlab {__version__}",
        f"# command: {command}",
        f"# config: {_config_echo(config)}",
        f"# seed: {seed if seed is not None else 'none'}",
    ]


def _config_key(command: str, config: dict) -> str:
    text = f"cf-statlab {__version__}\n{command}\n{_config_echo(config)}"
    return hashlib.sha256(text.encode()).hexdigest()


def _csv_text(
    header: list[str],
    columns: list[str],
    rows: list[list[str]],
    trailer: list[str] | None = None,
) -> str:
    lines = header + [",".join(columns)]
    lines.extend(",".join(r) for r in rows)
    lines.extend(trailer or [])
    return "\n".join(lines) + "\n"


def _cache_root(args: argparse.Namespace) -> str | None:
    if getattr(args, "no_cache", False):
        return None
    if getattr(args, "cache_dir", None):
        return args.cache_dir
    return os.environ.get("CF_STATLAB_CACHE") or None


_STDOUT_ROLE = "stdout.txt"


def _cache_load(root: str | None, key: str, roles: list[str]) -> dict[str, bytes] | None:
    if root is None:
        return None
    d = os.path.join(root, key)
    out = {}
    for role in roles:
        path = os.path.join(d, role)
        if not os.path.isfile(path):
            return None
        with open(path, "rb") as fh:
            out[role] = fh.read()
    return out


def _cache_store(root: str | None, key: str, blobs: dict[str, bytes]) -> None:
    if root is None:
        return
    d = os.path.join(root, key)
    os.makedirs(d, exist_ok=True)
    for role, data in blobs.items():
        tmp = os.path.join(d, role + ".tmp")
        with open(tmp, "wb") as fh:
            fh.write(data)
        os.replace(tmp, os.path.join(d, role))


def _write_outputs(paths: dict[str, str], blobs: dict[str, bytes]) -> None:
    for role, path in paths.items():
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(path, "wb") as fh:
            fh.write(blobs[role])
        print(f"wrote {path}", file=sys.stderr)


def _emit(
    args: argparse.Namespace,
    command: str,
    config: dict,
    paths: dict[str, str],
    compute,
) -> int:
    """Shared emission path: cache lookup, compute, write, cache store.

    `compute` returns (blobs, stdout_text, exit_code); stdout is cached
    alongside the files so a cache hit replays the whole observable run.
    """
    root = _cache_root(args)
    key = _config_key(command, config)
    cached = _cache_load(root, key, list(paths) + [_STDOUT_ROLE])
    if cached is not None:
        print(f"cache hit {key[:16]}", file=sys.stderr)
        _write_outputs(paths, cached)
        sys.stdout.write(cached[_STDOUT_ROLE].decode())
        return EXIT_OK
    t0 = time.monotonic()
    blobs, stdout_text, code = compute()
    print(f"runtime: {int((time.monotonic() - t0) * 1000)} ms", file=sys.stderr)
    _write_outputs(paths, blobs)
    sys.stdout.write(stdout_text)
    if code == EXIT_OK:
        stored = dict(blobs)
        stored[_STDOUT_ROLE] = stdout_text.encode()
        _cache_store(root, key, stored)
    return code


def _slug(text: str) -> str:
    return "".join(c if c.isalnum() or c in "._-" else "-" for c in text)


def _chunks(items: list, n: int) -> list[list]:
    """At most n contiguous chunks covering items in order."""
    n = max(1, min(n, len(items)))
    size, rem = divmod(len(items), n)
    out, pos = [], 0
    for i in range(n):
        step = size + (1 if i < rem else 0)
        out.append(items[pos : pos + step])
        pos += step
    return [c for c in out if c]


def _pool_map(fn, jobs: list, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with Pool(processes=min(workers, len(jobs))) as pool:
        return pool.map(fn, jobs)


def _stats_unit(job) -> Tally:
    q, residues, windows, eps, targets, length_target = job
    return tally_residues(q, residues, windows, eps, targets, length_target)


def _zaremba_unit(job) -> list[ZarembaRow]:
    q_lo, q_hi, k, primes = job
    return scan_range(q_lo, q_hi, k, primes)


def _mass_unit(job) -> list[float]:
    q, residues, M = job
    return retained_fractions(q, residues, M)


def _parse_floats(text: str, flag: str) -> list[float]:
    try:
        vals = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"cannot parse {flag} value {text!r}")
    if not vals:
        raise ValueError(f"{flag} needs at least one value")
    return vals


def _parse_ints(text: str, flag: str) -> list[int]:
    try:
        vals = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"cannot parse {flag} value {text!r}")
    if not vals:
        raise ValueError(f"{flag} needs at least one value")
    return vals


def _normalized_numerator(p: int, q: int) -> int:
    """Reduce p mod q; reject residue 0 and non-units."""
    r = p % q
    if r == 0 or math.gcd(r, q) != 1:
        raise ValueError(f"numerator {p} is not a unit mod {q}")
    return r


# ---------------------------------------------------------------- commands


def cmd_cfe(args: argparse.Namespace) -> int:
    num_s, sep, den_s = args.fraction.partition("/")
    if not sep:
        return _fail(f"expected N/D, got {args.fraction!r}", EXIT_USAGE)
    try:
        f = ReducedFraction(int(num_s), int(den_s))
    except ValueError as e:
        return _fail(str(e), EXIT_USAGE)
    digits = expand(f)
    print(f"digits={digits_to_str(digits)} len={len(digits)}")
    for wtext in args.window or []:
        try:
            w = digits_from_str(wtext)
            dens = window_density(f, w)
        except ValueError as e:
            return _fail(str(e), EXIT_USAGE)
        print(f"window={digits_to_str(w)} density={dens!r}")
    return EXIT_OK


def _tally_parallel(
    spec: EnsembleSpec,
    windows: list[tuple[int, ...]],
    eps: list[float],
    workers: int,
):
    residues = realize_ensemble(spec)
    targets = [target_density(w) for w in windows]
    jobs = [
        (spec.q, chunk, windows, eps, targets, levy_constant())
        for chunk in _chunks(residues, workers)
    ]
    tallies = _pool_map(_stats_unit, jobs, workers)
    total = Tally.empty(len(windows), len(eps))
    for t in tallies:
        total.merge(t)
    return build_report(spec, windows, eps, total)


def cmd_stats(args: argparse.Namespace) -> int:
    spec = EnsembleSpec.from_cli(args.ensemble, args.q)
    windows = [digits_from_str(w) for w in (args.window or ["1"])]
    eps = _parse_floats(args.eps, "--eps")
    config = {
        "command": "stats",
        "q": args.q,
        "ensemble": spec.describe(),
        "windows": [list(w) for w in windows],
        "eps": eps,
    }
    prefix = args.out or f"stats_q{args.q}_{_slug(spec.describe())}"
    paths = {"report.json": prefix + ".json", "report.csv": prefix + ".csv"}

    def compute():
        report = _tally_parallel(spec, windows, eps, args.workers)
        meta = {
            "tool": f"cf-statlab {__version__}",
            "command": "stats",
            "config": config,
            "seed": spec.seed,
        }
        blobs = {
            "report.json": report_to_json(report, meta=meta).encode(),
            "report.csv": _csv_text(
                _header_lines("stats", config, spec.seed),
                STATS_CSV_HEADER,
                report_csv_rows(report),
            ).encode(),
        }
        lines = [
            f"q={report.q} ensemble={report.ensemble} size={report.ensemble_size}",
        ]
        for w in report.windows:
            lines.append(
                f"window={digits_to_str(w.window)} mean={w.mean!r} target={w.target!r}"
            )
        return blobs, "".join(line + "\n" for line in lines), EXIT_OK

    return _emit(args, "stats", config, paths, compute)


def cmd_rates(args: argparse.Namespace) -> int:
    q_list = _parse_ints(args.q_list, "--q-list")
    if len(set(q_list)) < 2:
        raise ValueError("--q-list needs at least two distinct denominators")
    windows = [digits_from_str(w) for w in (args.window or ["1"])]
    eps = _parse_floats(args.eps, "--eps")
    specs = [EnsembleSpec.from_cli(args.ensemble, q) for q in q_list]
    config = {
        "command": "rates",
        "q_list": q_list,
        "ensemble": args.ensemble,
        "windows": [list(w) for w in windows],
        "eps": eps,
    }
    seed = specs[0].seed
    prefix = args.out or f"rates_{_slug(args.ensemble)}"
    paths = {"rates.csv": prefix + ".csv"}

    def compute():
        reports = [_tally_parallel(s, windows, eps, args.workers) for s in specs]
        rows = []
        for e in eps:
            slopes = rate_fit(reports, e)
            for w in windows:
                rows.append(
                    [digits_to_str(w), repr(e), repr(slopes[tuple(w)]), str(len(reports))]
                )
        text = _csv_text(
            _header_lines("rates", config, seed),
            ["window", "eps", "slope", "n_q"],
            rows,
        )
        stdout = "".join(
            f"window={r[0]} eps={r[1]} slope={r[2]}\n" for r in rows
        )
        return {"rates.csv": text.encode()}, stdout, EXIT_OK

    return _emit(args, "rates", config, paths, compute)


def _zaremba_rows(
    q_lo: int, q_hi: int, k: int, workers: int
) -> tuple[list[ZarembaRow], bool]:
    """Scan rows in q order, parallel over contiguous spans.

    Returns (rows, aborted): on continuant overflow the rows collected
    so far are kept so the caller can flush partial output.
    """
    primes = primes_below(q_hi)
    n_spans = min(max(1, workers) * 4, q_hi - q_lo + 1)
    bounds = [q_lo + (q_hi + 1 - q_lo) * i // n_spans for i in range(n_spans + 1)]
    spans = [(a, b - 1, k, primes) for a, b in zip(bounds, bounds[1:]) if a < b]
    rows: list[ZarembaRow] = []
    aborted = False
    if workers <= 1 or len(spans) <= 1:
        for span in spans:
            try:
                rows.extend(_zaremba_unit(span))
            except ContinuantOverflowError as e:
                print(f"error: overflow: {e}", file=sys.stderr)
                aborted = True
                break
    else:
        with Pool(processes=min(workers, len(spans))) as pool:
            try:
                for chunk in pool.imap(_zaremba_unit, spans):
                    rows.extend(chunk)
            except ContinuantOverflowError as e:
                print(f"error: overflow: {e}", file=sys.stderr)
                aborted = True
    return rows, aborted


def cmd_zaremba(args: argparse.Namespace) -> int:
    if args.qmax < 2:
        raise ValueError(f"--qmax must be >= 2, got {args.qmax}")
    q_lo = max(2, args.qmin)
    if args.qmax < q_lo:
        raise ValueError("--qmax must be >= --qmin")
    config = {
        "command": "zaremba",
        "qmin": q_lo,
        "qmax": args.qmax,
        "k": args.k,
        "primes_only": bool(args.primes_only),
    }
    prefix = args.out or f"zaremba_q{args.qmax}_k{args.k}"
    paths = {"scan.csv": prefix + ".csv"}
    if args.svg:
        paths["scan.svg"] = args.svg

    def compute():
        rows, aborted = _zaremba_rows(q_lo, args.qmax, args.k, args.workers)
        if args.primes_only:
            # q = 2 is vacuous for prime witnesses: no prime is < 2
            counterexamples = [r.q for r in rows if r.witness_prime is None and r.q != 2]
        else:
            counterexamples = [r.q for r in rows if r.count_all == 0]
        ce_text = ",".join(str(q) for q in counterexamples) if counterexamples else "none"
        trailer = [f"# counterexamples: {ce_text}"]
        if aborted:
            trailer.append("# aborted: continuant overflow, partial output")
        text = _csv_text(
            _header_lines("zaremba", config, None),
            ZAREMBA_CSV_HEADER,
            [row_fields(r) for r in rows],
            trailer,
        )
        blobs = {"scan.csv": text.encode()}
        if args.svg:
            blobs["scan.svg"] = _zaremba_svg(rows).encode()
        stdout = "" if aborted else f"counterexamples: {ce_text}\n"
        return blobs, stdout, EXIT_OVERFLOW if aborted else EXIT_OK

    return _emit(args, "zaremba", config, paths, compute)


def _zaremba_svg(rows: list[ZarembaRow]) -> str:
    counts = Panel(
        title="numerators with all digits bounded",
        x_label="q",
        y_label="count",
        series=(
            Series("all", _ALL_COLOR, tuple((float(r.q), float(r.count_all)) for r in rows)),
            Series("prime", _PRIME_COLOR, tuple((float(r.q), float(r.count_prime)) for r in rows)),
        ),
    )
    ratios = Panel(
        title="log count / log q",
        x_label="q",
        y_label="ratio",
        series=(
            Series(
                "all",
                _ALL_COLOR,
                tuple((float(r.q), r.ratio_all) for r in rows if r.ratio_all is not None),
            ),
            Series(
                "prime",
                _PRIME_COLOR,
                tuple((float(r.q), r.ratio_prime) for r in rows if r.ratio_prime is not None),
            ),
        ),
    )
    return scatter_svg([counts, ratios])


def _parse_horizon(text: str) -> float | None:
    if text == "auto":
        return None
    T = float(text)
    if not T > 0:
        raise ValueError(f"--T must be positive or 'auto', got {text!r}")
    return T


def cmd_orbit(args: argparse.Namespace) -> int:
    p = _normalized_numerator(args.p, args.q)
    T = _parse_horizon(args.T)
    spec = OrbitSpec(p, args.q, T=T)
    config = {
        "command": "orbit",
        "q": args.q,
        "p": p,
        "T": "auto" if T is None else T,
        "M": args.M,
        "grid": args.grid,
        "n_samples": args.n_samples,
    }
    prefix = args.out or f"orbit_q{args.q}_p{p}"
    paths = {
        "profile.csv": prefix + "_profile.csv",
        "excursion.csv": prefix + "_excursion.csv",
    }

    def compute():
        profile = alpha1_profile(spec, n_samples=args.n_samples)
        exc = excursion_fraction(spec, args.M, grid=args.grid)
        header = _header_lines("orbit", config, None)
        seg_comments = [
            f"# segment: t0={s.t0!r} t1={s.t1!r} candidate={s.index}"
            for s in profile.segments
        ]
        profile_text = _csv_text(
            header,
            ["t", "alpha1"],
            [[repr(t), repr(a)] for t, a in profile.samples],
            seg_comments,
        )
        exc_columns = ["M", "T", "fraction_above", "validation_gap", "t_lo", "t_hi"]
        base = [repr(exc.M), repr(exc.T), repr(exc.fraction_above), repr(exc.validation_gap)]
        if exc.intervals:
            exc_rows = [base + [repr(lo), repr(hi)] for lo, hi in exc.intervals]
        else:
            exc_rows = [base + ["", ""]]
        excursion_text = _csv_text(header, exc_columns, exc_rows)
        blobs = {
            "profile.csv": profile_text.encode(),
            "excursion.csv": excursion_text.encode(),
        }
        return blobs, f"fraction_above={exc.fraction_above!r}\n", EXIT_OK

    return _emit(args, "orbit", config, paths, compute)


def cmd_orbit_dual(args: argparse.Namespace) -> int:
    p = _normalized_numerator(args.p, args.q)
    m_values = _parse_floats(args.M, "--M")
    config = {
        "command": "orbit-dual",
        "q": args.q,
        "p": p,
        "M": m_values,
        "grid": args.grid,
    }
    prefix = args.out or f"orbit_dual_q{args.q}_p{p}"
    paths = {"dual.csv": prefix + ".csv"}

    def compute():
        residuals = dual_orbit_identity(p, args.q, m_values, grid=args.grid)
        rows = [[repr(r.M), repr(r.lhs), repr(r.rhs), repr(r.residual)] for r in residuals]
        text = _csv_text(
            _header_lines("orbit-dual", config, None),
            ["M", "lhs", "rhs", "residual"],
            rows,
        )
        stdout = "".join(f"M={r.M!r} residual={r.residual!r}\n" for r in residuals)
        return {"dual.csv": text.encode()}, stdout, EXIT_OK

    return _emit(args, "orbit-dual", config, paths, compute)


def cmd_orbit_mass(args: argparse.Namespace) -> int:
    spec = EnsembleSpec.from_cli(args.ensemble, args.q)
    m_values = _parse_floats(args.M, "--M")
    if any(m <= 0 for m in m_values):
        raise ValueError("--M values must be positive")
    config = {
        "command": "orbit-mass",
        "q": args.q,
        "ensemble": spec.describe(),
        "M": m_values,
        "grid": args.grid,
    }
    prefix = args.out or f"orbit_mass_q{args.q}_{_slug(spec.describe())}"
    paths = {"mass.csv": prefix + ".csv"}

    def compute():
        residues = realize_ensemble(spec)
        rows = []
        lines = []
        for M in m_values:
            jobs = [(spec.q, chunk, M) for chunk in _chunks(residues, args.workers)]
            fractions = [
                f for chunk in _pool_map(_mass_unit, jobs, args.workers) for f in chunk
            ]
            mass = math.fsum(fractions) / len(fractions)
            rows.append(
                [str(spec.q), spec.describe(), repr(M), repr(mass), str(len(fractions))]
            )
            lines.append(f"M={M!r} retained_mass={mass!r}")
        text = _csv_text(
            _header_lines("orbit-mass", config, spec.seed),
            ["q", "ensemble", "M", "retained_mass", "n_orbits"],
            rows,
        )
        return {"mass.csv": text.encode()}, "".join(l + "\n" for l in lines), EXIT_OK

    return _emit(args, "orbit-mass", config, paths, compute)


def cmd_figure1(args: argparse.Namespace) -> int:
    if args.qmax < args.qmin:
        raise ValueError("--qmax must be >= --qmin")
    q_lo = max(2, args.qmin)
    config = {
        "command": "figure1",
        "qmin": q_lo,
        "qmax": args.qmax,
        "k": args.k,
    }
    prefix = args.out or "figure1"
    paths = {"scan.csv": prefix + ".csv", "figure.svg": prefix + ".svg"}

    def compute():
        rows, aborted = _zaremba_rows(q_lo, args.qmax, args.k, args.workers)
        trailer = ["# aborted: continuant overflow, partial output"] if aborted else None
        text = _csv_text(
            _header_lines("figure1", config, None),
            ZAREMBA_CSV_HEADER,
            [row_fields(r) for r in rows],
            trailer,
        )
        blobs = {"scan.csv": text.encode(), "figure.svg": _zaremba_svg(rows).encode()}
        stdout = "" if aborted else f"scanned {len(rows)} denominators\n"
        return blobs, stdout, EXIT_OVERFLOW if aborted else EXIT_OK

    return _emit(args, "figure1", config, paths, compute)


# ---------------------------------------------------------------- parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="output path prefix")
    p.add_argument(
        "--workers",
        type=int,
        default=os.cpu_count() or 1,
        help="worker processes (never changes output bytes)",
    )
    p.add_argument("--cache-dir", default=None, help="cache directory (or $CF_STATLAB_CACHE)")
    p.add_argument("--no-cache", action="store_true", help="bypass the result cache")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cf-statlab",
        description="Continued-fraction statistics of random rationals.",
    )
    ap.add_argument("--version", action="version", version=f"cf-statlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cfe", help="expand one fraction and print digit data")
    p.add_argument("fraction", help="reduced fraction N/D in (0, 1)")
    p.add_argument("--window", action="append", help="digit window, e.g. 1 or 1,2")

    p = sub.add_parser("stats", help="deviation report for one ensemble")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ensemble", default="all", help="all|primes|random:h=H,seed=S|file:PATH")
    p.add_argument("--window", action="append", help="digit window (repeatable), default 1")
    p.add_argument("--eps", default="0.05,0.1", help="comma-separated deviation thresholds")
    _add_common(p)

    p = sub.add_parser("rates", help="fit deviation-rate exponents across q")
    p.add_argument("--q-list", required=True, help="comma-separated denominators")
    p.add_argument("--ensemble", default="all")
    p.add_argument("--window", action="append")
    p.add_argument("--eps", default="0.1")
    _add_common(p)

    p = sub.add_parser("zaremba", help="bounded-digit numerator scan")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--qmin", type=int, default=2)
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--primes-only", action="store_true", help="counterexamples lack a prime witness"
    )
    p.add_argument("--svg", default=None, help="also write a scatter figure here")
    _add_common(p)

    p = sub.add_parser("orbit", help="alpha1 profile and excursion summary for one orbit")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--T", default="auto", help="horizon (default 2 log q)")
    p.add_argument("--M", type=float, default=5.0, help="height threshold")
    p.add_argument("--grid", type=float, default=1e-3, help="validation grid step")
    p.add_argument("--n-samples", type=int, default=1024)
    _add_common(p)

    p = sub.add_parser("orbit-dual", help="dual-window identity residuals")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--M", default="2,5,10", help="comma-separated height thresholds")
    p.add_argument("--grid", type=float, default=1e-3)
    _add_common(p)

    p = sub.add_parser("orbit-mass", help="ensemble retained-mass table")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ensemble", default="all")
    p.add_argument("--M", default="5", help="comma-separated height thresholds")
    p.add_argument("--grid", type=float, default=1e-3)
    _add_common(p)

    p = sub.add_parser("figure1", help="bounded-numerator counting figure (scan + SVG)")
    p.add_argument("--qmin", type=int, default=100)
    p.add_argument("--qmax", type=int, default=3000)
    p.add_argument("--k", type=int, default=5)
    _add_common(p)

    return ap


_HANDLERS = {
    "cfe": cmd_cfe,
    "stats": cmd_stats,
    "rates": cmd_rates,
    "zaremba": cmd_zaremba,
    "orbit": cmd_orbit,
    "orbit-dual": cmd_orbit_dual,
    "orbit-mass": cmd_orbit_mass,
    "figure1": cmd_figure1,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except EmptyEnsembleError as e:
        return _fail(str(e), EXIT_EMPTY_ENSEMBLE)
    except ContinuantOverflowError as e:
        return _fail(f"overflow: {e}", EXIT_OVERFLOW)
    except (ValueError, OSError) as e:
        return _fail(str(e), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
