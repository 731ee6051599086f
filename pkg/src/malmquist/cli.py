"""Command-line front end: ``malmquist <subcommand> [options]``.

Exit status is 0 on success, 2 on malformed input and 1 when a numerical
step fails. Identical arguments and seed give identical output bytes.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from malmquist import __version__
from malmquist.bernstein import bernstein_trials
from malmquist.blaschke import Sigma
from malmquist.bounds import bound_report
from malmquist.interpolator import phi, sup_norm, trace_match
from malmquist.oracle import interp_constant_estimate
from malmquist.spaces import SpaceSpec, TaylorSeries, eval_functional_norm, weighted_norm

SWEEP_COLUMNS = ["n", "r", "p", "alpha", "lower", "oracle", "upper", "lower_witness",
                 "upper_route", "exponent_expected", "phi_comparator", "runtime_ms"]


class InputError(Exception):
    """Malformed command-line input (exit status 2)."""


# ---------------------------------------------------------------- parsing helpers


def _load_sigma(text: str) -> Sigma:
    try:
        return Sigma.load(text)
    except (ValueError, TypeError, KeyError, json.JSONDecodeError) as exc:
        raise InputError(f"bad --sigma: {exc}") from exc


def _load_space(text: str) -> SpaceSpec:
    try:
        return SpaceSpec.parse(text)
    except ValueError as exc:
        raise InputError(f"bad --space: {exc}") from exc


def _load_series(text: str) -> TaylorSeries:
    """Coefficients from a JSON file, inline JSON, or a comma-separated list."""
    try:
        if os.path.isfile(text):
            with open(text) as fh:
                data = json.load(fh)
        elif text.lstrip().startswith("["):
            data = json.loads(text)
        else:
            data = [complex(t.strip().replace("i", "j")) for t in text.split(",") if t.strip()]
            data = [[c.real, c.imag] for c in data]
        return TaylorSeries.from_json(data)
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad --f: {exc}") from exc


def _float_list(text: str, name: str) -> list[float]:
    try:
        vals = [float(t) for t in text.replace("−", "-").split(",") if t.strip()]
    except ValueError as exc:
        raise InputError(f"bad --{name}: {exc}") from exc
    if not vals:
        raise InputError(f"--{name} is empty")
    return vals


def _int_list(text: str, name: str) -> list[int]:
    vals = _float_list(text, name)
    if any(v != int(v) or v < 1 for v in vals):
        raise InputError(f"--{name} must list positive integers")
    return [int(v) for v in vals]


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("MALMQUIST_THREADS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise InputError(f"MALMQUIST_THREADS must be an integer, got {env!r}")


# ---------------------------------------------------------------- output


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not serialisable: {type(obj).__name__}")


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return v


def _emit(args, rows: list[dict], columns: list[str], extra_json: dict | None = None,
          trailer: list[str] | None = None) -> None:
    if args.format == "json":
        payload = dict(extra_json or {})
        payload["rows"] = rows
        text = json.dumps(payload, indent=2, default=_json_default) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(row.get(c)) for c in columns])
        for line in trailer or []:
            buf.write(f"# {line}\n")
        text = buf.getvalue()
    _write(args, text)


def _emit_object(args, obj: dict) -> None:
    if args.format == "csv":
        scalars = {k: v for k, v in obj.items() if not isinstance(v, (list, dict))}
        _emit(args, [scalars], list(scalars))
    else:
        _write(args, json.dumps(obj, indent=2, default=_json_default) + "\n")


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_finite(*vals) -> None:
    for v in vals:
        if v is not None and isinstance(v, float) and not math.isfinite(v):
            raise ArithmeticError("non-finite result")


# ---------------------------------------------------------------- subcommands


def cmd_interpolate(args) -> int:
    sigma = _load_sigma(args.sigma)
    f = _load_series(args.f)
    X = _load_space(args.space)
    g = phi(f, sigma)
    tm = trace_match(f, g, sigma, tol=args.tol)
    sn = sup_norm(g)
    nf = weighted_norm(f, X)
    ratio = sn.refined / nf if nf > 0 else None
    _check_finite(tm.defect, sn.refined, ratio)
    coords = g.coords.astype(np.complex128)
    _emit_object(args, {
        "sigma": sigma.to_json(),
        "space": str(X),
        "coords": [[float(c.real), float(c.imag)] for c in coords],
        "trace_defect": tm.defect,
        "trace_ok": tm.matched,
        "sup_norm_grid": sn.grid,
        "sup_norm": sn.refined,
        "f_norm": nf,
        "ratio": ratio,
    })
    return 0 if tm.matched else 1


def cmd_bounds(args) -> int:
    X = _load_space(args.space)
    if args.n < 1 or not 0 <= args.r < 1:
        raise InputError("need --n >= 1 and 0 <= --r < 1")
    rep = bound_report(args.n, args.r, X, oracle=args.oracle, seed=args.seed, restarts=args.restarts)
    row = rep.as_row()
    _check_finite(row["lower"], row["upper"], row["oracle"])
    _emit(args, [row], SWEEP_COLUMNS[:-2])
    return 0 if rep.consistent else 1


def cmd_oracle(args) -> int:
    sigma = _load_sigma(args.sigma)
    X = _load_space(args.space)
    est = interp_constant_estimate(sigma, X, restarts=args.restarts, iters=args.iters, seed=args.seed)
    _check_finite(est.value, est.crosscheck_delta)
    out = est.to_json()
    out["sigma"] = sigma.to_json()
    out["space"] = str(X)
    _emit_object(args, out)
    return 0


def _sweep_point(task):
    n, r, p, alpha, oracle, seed, restarts, timing = task
    t0 = time.perf_counter()
    X = SpaceSpec(p, alpha)
    rep = bound_report(n, r, X, oracle=oracle, seed=seed, restarts=restarts)
    row = rep.as_row()
    row["phi_comparator"] = eval_functional_norm(1.0 - (1.0 - r) / n, X)
    row["runtime_ms"] = round(1000.0 * (time.perf_counter() - t0), 3) if timing else 0
    return row


def _fits(rows: list[dict]) -> list[dict]:
    """Least-squares slope of log(value) on log(n/(1-r)) per (p, alpha)."""
    fams: dict = {}
    for row in rows:
        fams.setdefault((row["p"], row["alpha"]), []).append(row)
    out = []
    for (p, a), rs in fams.items():
        src = "oracle" if all(r["oracle"] is not None for r in rs) else "lower"
        x = [math.log(r["n"] / (1.0 - r["r"])) for r in rs]
        y = [math.log(r[src]) for r in rs]
        fit = {"p": p, "alpha": a, "source": src, "points": len(rs),
               "expected": rs[0]["exponent_expected"], "slope": None}
        if len(set(x)) >= 2:
            fit["slope"] = float(np.polyfit(x, y, 1)[0])
        out.append(fit)
    return out


def cmd_sweep(args) -> int:
    ns = _int_list(args.n, "n")
    rs = _float_list(args.r, "r")
    ps = _float_list(args.p, "p")
    alphas = _float_list(args.alpha, "alpha")
    if any(not 0 <= r < 1 for r in rs):
        raise InputError("--r values must lie in [0, 1)")
    try:
        for p in ps:
            for a in alphas:
                SpaceSpec(p, a)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    tasks = [(n, r, p, a, args.oracle, args.seed, args.restarts, args.timing)
             for p in ps for a in alphas for n in ns for r in rs]
    with ThreadPoolExecutor(max_workers=_threads(args)) as pool:
        rows = list(pool.map(_sweep_point, tasks))  # map keeps grid order
    for row in rows:
        _check_finite(row["lower"], row["upper"], row["oracle"], row["phi_comparator"])
    fits = _fits(rows)
    trailer = []
    for f in fits:
        slope = "insufficient" if f["slope"] is None else repr(f["slope"])
        trailer.append(f"fit p={f['p']!r} alpha={f['alpha']!r} source={f['source']} points={f['points']} "
                       f"slope={slope} expected={f['expected']!r}")
    _emit(args, rows, SWEEP_COLUMNS, {"fits": fits}, trailer)
    return 0


def cmd_bernstein(args) -> int:
    if args.n < 1 or not 0 <= args.r < 1 or args.trials < 1 or args.k < 0:
        raise InputError("need --n >= 1, 0 <= --r < 1, --trials >= 1, --k >= 0")
    rows = bernstein_trials(args.n, args.r, args.trials, k=args.k, seed=args.seed)
    _emit(args, rows, ["trial", "ratio", "bound", "margin"])
    return 0 if all(r["margin"] >= 0 for r in rows) else 1


def cmd_verify(args) -> int:
    from malmquist.acceptance import run_criterion, CRITERIA

    lines = [f"acceptance suite  seed={args.seed}  quick={args.quick}"]
    ok = True
    for k in range(1, len(CRITERIA) + 1):
        res = run_criterion(k, seed=args.seed, quick=args.quick)
        ok &= res.passed
        lines.append(res.line(timing=args.timing))
        if not args.out:
            print(lines[-1] if k > 1 else "\n".join(lines), flush=True)
    lines.append("ALL PASS" if ok else "FAILURES PRESENT")
    if args.out:
        _write(args, "\n".join(lines) + "\n")
    else:
        print(lines[-1])
    return 0 if ok else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master random seed (default 0)")
    common.add_argument("--tol", type=float, default=1e-8, help="trace tolerance (default 1e-8)")
    common.add_argument("--format", choices=("csv", "json"), default=None, help="output format")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default $MALMQUIST_THREADS or 1)")

    parser = argparse.ArgumentParser(prog="malmquist", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interpolate", parents=[common], help="build Phi(f) and check its trace")
    p.add_argument("--sigma", required=True, help="JSON file, inline JSON or shorthand like '0.5^2;0.1i'")
    p.add_argument("--f", required=True, help="Taylor coefficients: JSON file/inline or '1,2,3'")
    p.add_argument("--space", default="2,0", help="p,alpha for the ratio (default 2,0)")
    p.set_defaults(func=cmd_interpolate, default_format="json")

    p = sub.add_parser("bounds", parents=[common], help="certified bounds at one (n, r, X)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--space", default="2,0")
    p.add_argument("--oracle", action="store_true", help="add the oracle estimate at the n-fold point r")
    p.add_argument("--restarts", type=int, default=16)
    p.set_defaults(func=cmd_bounds, default_format="csv")

    p = sub.add_parser("oracle", parents=[common], help="estimate c(sigma, X, H^inf)")
    p.add_argument("--sigma", required=True)
    p.add_argument("--space", default="2,0")
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--iters", type=int, default=200)
    p.set_defaults(func=cmd_oracle, default_format="json")

    p = sub.add_parser("sweep", parents=[common], help="bounds over a grid, with exponent fits")
    p.add_argument("--n", default="2,4,8", help="comma list (default 2,4,8)")
    p.add_argument("--r", default="0", help="comma list (default 0)")
    p.add_argument("--p", default="2", help="comma list (default 2)")
    p.add_argument("--alpha", default="0", help="comma list (default 0)")
    p.add_argument("--oracle", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--timing", action="store_true", help="fill runtime_ms (breaks byte determinism)")
    p.set_defaults(func=cmd_sweep, default_format="csv")

    p = sub.add_parser("bernstein", parents=[common], help="Monte-Carlo derivative bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_bernstein, default_format="csv")

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--quick", action="store_true", help="reduced sample counts")
    p.add_argument("--timing", action="store_true", help="show per-criterion runtimes")
    p.set_defaults(func=cmd_verify, default_format="csv")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except InputError as exc:
        print(f"malmquist: error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, np.linalg.LinAlgError, RuntimeError) as exc:
        print(f"malmquist: numerical failure: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"malmquist: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
