"""Command-line front end: ``zetarecip verify|scan|zero-sum``.

Exit status is 0 when every report passes, 1 on a failed check or a
computational error, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import asymptotics, identities, quad, series
from .arith import DEFAULT_SIEVE_LIMIT, build_moebius
from .errors import ZerosFileError, ZetaRecipError
from .zetafn import DEFAULT_EVALUATOR, ZEROS_ENV_VAR, bundled_zeros_path, load_zeros

VERIFY_IDS = (
    "fourier-cosh",
    "parseval",
    "mellin-h",
    "corollary-gaussian",
    "pnt-integral",
    "perron-mertens",
    "gauss-cosh-selftest",
)
SCAN_IDS = ("h2-exponent", "mertens-growth", "weak-mertens", "hardy-littlewood", "pnt-partial-sums")

DEFAULT_TOL = {
    "fourier-cosh": 1e-4,
    "parseval": 1e-6,
    "mellin-h": 1e-6,
    "corollary-gaussian": 1e-3,
    "pnt-integral": 1e-2,
    "perron-mertens": 1e-2,
    "gauss-cosh-selftest": 1e-10,
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    sieve_limit: int = DEFAULT_SIEVE_LIMIT
    tol: float | None = None
    zeros_path: Path | None = None
    threads: int = 1
    output_format: str = "json"
    form: str = "stated"
    deterministic: bool = True

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.sieve_limit < 100:
            raise UsageError("--sieve-limit must be at least 100")
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")


# ------------------------------------------------------------------ output


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    return str(v)


def _write_csv(out, columns, rows):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(v) for v in row])


REPORT_COLUMNS = (
    "name", "params", "lhs", "rhs", "lhs_err", "rhs_err",
    "abs_diff", "rel_diff", "tol", "pass", "notes",
)


def _emit_reports(reports, fmt, out):
    if fmt == "json":
        for r in reports:
            out.write(r.to_json() + "\n")
        return
    rows = []
    for r in reports:
        d = r.to_dict()
        params = ";".join(f"{k}={v!r}" for k, v in d["params"].items())
        notes = " | ".join(n for n in d["notes"] if n)
        rows.append([d["name"], params] + [d[k] for k in REPORT_COLUMNS[2:10]] + [notes])
    _write_csv(out, REPORT_COLUMNS, rows)


def _emit_table(columns, rows, fmt, out):
    if fmt == "csv":
        _write_csv(out, columns, rows)
    else:
        for row in rows:
            out.write(json.dumps(dict(zip(columns, row))) + "\n")


# ------------------------------------------------------------------ commands


def _points(args, name):
    """Parameter tuples to evaluate for one verify id."""
    if name == "fourier-cosh":
        return [{"x": x} for x in args.x or [0.0]]
    if name == "parseval":
        return [{"x": x} for x in args.x or [1.0]]
    if name == "mellin-h":
        return [{"s": s, "x": x} for s in args.s or [1.0] for x in args.x or [1.0]]
    if name == "corollary-gaussian":
        return [{"beta": b} for b in args.beta or [1.0]]
    if name == "pnt-integral":
        return [{"N": n} for n in args.n or [2000]]
    if name == "perron-mertens":
        return [{"x": x, "T": T} for x in args.x or [0.0] for T in args.T or [1e6]]
    return [
        {"alpha": a, "beta": b, "y": y}
        for a in args.alpha or [1.0]
        for b in args.beta or [1.0]
        for y in args.y or [1.0]
    ]


def _run_check(name, p, tol, table, cfg):
    ev = DEFAULT_EVALUATOR
    if name == "fourier-cosh":
        return identities.check_fourier_cosh(table(), p["x"], tol, ev, cfg.form)
    if name == "parseval":
        return identities.check_parseval(table(), p["x"], tol)
    if name == "mellin-h":
        return identities.check_mellin_h(table(), p["s"], p["x"], tol, ev)
    if name == "corollary-gaussian":
        return identities.check_corollary_gaussian(table(), p["beta"], tol, ev, cfg.form)
    if name == "pnt-integral":
        return identities.check_pnt_integral(table(), int(p["N"]), tol).report
    if name == "perron-mertens":
        return identities.check_perron_mertens(table(), p["x"], p["T"], tol, ev, cfg.form)
    return quad.gauss_cosh_selftest(p["alpha"], p["beta"], p["y"], tol)


def _table_factory(cfg):
    cache = {}

    def get():
        if "t" not in cache:
            cache["t"] = build_moebius(cfg.sieve_limit)
        return cache["t"]

    return get


def cmd_verify(args, cfg, out) -> int:
    name = args.name
    tol = cfg.tol if cfg.tol is not None else DEFAULT_TOL[name]
    table = _table_factory(cfg)
    if name != "gauss-cosh-selftest":
        table()  # build once before worker threads start
    pts = _points(args, name)
    if cfg.threads > 1 and len(pts) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            reports = list(pool.map(lambda p: _run_check(name, p, tol, table, cfg), pts))
    else:
        reports = [_run_check(name, p, tol, table, cfg) for p in pts]
    _emit_reports(reports, cfg.output_format, out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_scan(args, cfg, out) -> int:
    name = args.name
    ev = DEFAULT_EVALUATOR
    fmt = cfg.output_format
    if name == "h2-exponent":
        params = series.H2Params(args.target) if args.target else None
        t = asymptotics.h2_exponent_scan(
            build_moebius(cfg.sieve_limit), params, args.x_lo or 1e-5, args.x_hi or 1e-2,
            args.points, cfg.threads,
        )
        fit = t.summary["fit"]
        cols = t.columns + ("slope", "intercept", "stderr", "n_points", "window_lo", "window_hi")
        rows = [tuple(r) + (None,) * 6 for r in t.rows]
        rows.append((None, None, None, fit.slope, fit.intercept, fit.stderr, fit.n_points, *fit.window))
        _emit_table(cols, rows, fmt, out)
    elif name == "mertens-growth":
        X = args.x_max or 1e8
        need = math.isqrt(int(X))
        t = asymptotics.mertens_growth_scan(build_moebius(max(need, 100)), X, args.epsilon)
        running, best = [], -1.0
        for x, r in t.rows:
            best = max(best, r)
            running.append((x, r, best))
        _emit_table(("x", "ratio", "running_max"), running, fmt, out)
    elif name == "weak-mertens":
        X = int(args.x_max or 1000)
        t = asymptotics.weak_mertens_scan(build_moebius(max(X, 100)), X, args.checkpoints)
        _emit_table(t.columns, t.rows, fmt, out)
    elif name == "hardy-littlewood":
        t = asymptotics.hardy_littlewood_scan(ev, args.x_lo or 1.0, args.x_hi or 20.0, args.points)
        _emit_table(t.columns, t.rows, fmt, out)
    else:
        n_max = args.n_max or 2000
        t = asymptotics.pnt_scan(build_moebius(max(n_max, 100)), n_max, args.step)
        _emit_table(t.columns, t.rows, fmt, out)
    return 0


def _zeros_path(cfg) -> Path:
    if cfg.zeros_path is not None:
        return cfg.zeros_path
    env = os.environ.get(ZEROS_ENV_VAR)
    return Path(env) if env else bundled_zeros_path()


def cmd_zero_sum(args, cfg, out) -> int:
    path = _zeros_path(cfg)
    if not path.is_file():
        raise UsageError(f"zeros file not found: {path}")
    try:
        zeros = load_zeros(path)
    except ZerosFileError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    if args.terms > len(zeros):
        raise UsageError(f"--terms {args.terms} exceeds the {len(zeros)} zeros in {path}")
    zs = series.zero_sum_h2(DEFAULT_EVALUATOR, zeros, args.x, args.terms)
    direct = series.h2(
        build_moebius(cfg.sieve_limit), args.x, series.H2Params(1e-6), cfg.threads
    )
    dev = abs(zs.value - direct.value) / abs(direct.value)
    cols = ("x", "terms", "zero_sum", "direct", "direct_tail", "rel_deviation")
    _emit_table(cols, [(args.x, args.terms, zs.value, direct.value, direct.tail_estimate, dev)], cfg.output_format, out)
    return 0


# ------------------------------------------------------------------ parser


def _common(p):
    p.add_argument("--tol", type=float, help="tolerance (default depends on the check)")
    p.add_argument("--sieve-limit", type=int, default=DEFAULT_SIEVE_LIMIT)
    p.add_argument("--zeros", type=Path, help=f"zeros file (default ${ZEROS_ENV_VAR}, then the bundled table)")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument(
        "--form", choices=identities.FORMS, default="stated",
        help="normalisation of the right side where the stated one disagrees with the numerics",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zetarecip", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run one identity check")
    v.add_argument("name", choices=VERIFY_IDS)
    for flag in ("--x", "--s", "--beta", "--alpha", "--y", "--T"):
        v.add_argument(flag, type=float, nargs="+")
    v.add_argument("--n", "--N", dest="n", type=int, nargs="+")
    _common(v)

    s = sub.add_parser("scan", help="tabulate a growth quantity as CSV")
    s.add_argument("name", choices=SCAN_IDS)
    s.add_argument("--x-lo", type=float)
    s.add_argument("--x-hi", type=float)
    s.add_argument("--points", type=int, default=40)
    s.add_argument("--target", type=float, help="relative h2 target for h2-exponent")
    s.add_argument("--x", dest="x_max", type=float, help="upper end X for Mertens scans")
    s.add_argument("--epsilon", type=float, default=0.05)
    s.add_argument("--checkpoints", type=int, default=25)
    s.add_argument("--n-max", type=int)
    s.add_argument("--step", type=int, default=100)
    _common(s)

    z = sub.add_parser("zero-sum", help="compare the zero expansion of h2 with direct h2")
    z.add_argument("--x", type=float, required=True)
    z.add_argument("--terms", type=int, required=True)
    _common(z)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    out = sys.stdout
    fmt = args.format or ("csv" if args.command == "scan" else "json")
    try:
        cfg = RunConfig(
            sieve_limit=args.sieve_limit,
            tol=args.tol,
            zeros_path=args.zeros,
            threads=args.threads,
            output_format=fmt,
            form=args.form,
        )
        if args.command == "verify":
            return cmd_verify(args, cfg, out)
        if args.command == "scan":
            return cmd_scan(args, cfg, out)
        return cmd_zero_sum(args, cfg, out)
    except UsageError as exc:
        print(f"zetarecip: error: {exc}", file=sys.stderr)
        return 2
    except (ZetaRecipError, ArithmeticError, ValueError, MemoryError) as exc:
        print(f"zetarecip: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
