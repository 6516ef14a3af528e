"""Command-line front end: ``tic <command> [<sub>] [options]``.

Options may also come from ``--config file.json`` (same names, underscores
for dashes); flags on the command line win. Exit codes: 0 success, 2 bad
parameters, 3 a resource guard stopped an exact computation.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds as B
from .canonical import canonical_form
from .combinatorics import binom
from .constructions import (
    full_t_star, lex_segment, lex_t_segment, random_family, sandwich_family, star_union,
)
from .family import (
    SetFamily, decompose_size, degree_vector, find_full_t_stars, is_t_intersecting,
    load_family, min_s_cover, total_intersection, total_t_intersection,
)
from .hamming import CONVENTIONS, ConstantWeightCode, average_distance, min_avg_distance
from .shifting import compress, local_search, shift, trace_to_jsonl
from .solver import DEFAULT_NODE_LIMIT, max_total_intersection, resolve_workers

CSV_COLUMNS = ["n", "k", "t", "r", "delta_num", "delta_den", "M", "value", "reference", "verdict"]

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE = 0, 2, 3


class CLIError(Exception):
    pass


# -- option access -------------------------------------------------------

def _get(opts, name, conv, required=True, default=None):
    if name not in opts or opts[name] is None:
        if required:
            raise CLIError(f"missing required option --{name.replace('_', '-')}")
        return default
    try:
        return conv(opts[name])
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise CLIError(f"--{name.replace('_', '-')}: invalid value {opts[name]!r} ({e})") from None


def _rational(x) -> Fraction:
    if isinstance(x, float):
        raise ValueError("rationals must be given as strings like '1/3'")
    return Fraction(str(x))


def _int(x) -> int:
    if isinstance(x, bool) or isinstance(x, float):
        raise ValueError("expected an integer")
    return int(x)


def _intlist(x) -> tuple[int, ...]:
    if isinstance(x, (list, tuple)):
        return tuple(int(v) for v in x)
    return tuple(int(v) for v in str(x).replace(" ", "").split(",") if v)


def _cores(x) -> list[tuple[int, ...]]:
    if isinstance(x, (list, tuple)):
        return [_intlist(c) for c in x]
    return [_intlist(c) for c in str(x).split(";") if c.strip()]


def _family(opts) -> SetFamily:
    path = _get(opts, "family", str)
    try:
        if path == "-":
            return SetFamily.from_dict(json.loads(sys.stdin.read()))
        return load_family(path)
    except FileNotFoundError:
        raise CLIError(f"--family: no such file {path!r}") from None
    except (ValueError, json.JSONDecodeError) as e:
        raise CLIError(f"--family: {e}") from None


def _rational_str(x: Fraction) -> str:
    return str(x)


# -- handlers: each returns (payload, csv_rows, exit_code) --------------------

def h_construct(opts):
    kind = opts["sub"]
    n, k = _get(opts, "n", _int), _get(opts, "k", _int)
    if kind == "lex":
        F = lex_segment(n, k, _get(opts, "m", _int))
    elif kind == "lexT":
        F = lex_t_segment(n, k, _get(opts, "t", _int), _get(opts, "r", _int))
    elif kind == "star":
        F = full_t_star(n, k, _get(opts, "core", _intlist))
    elif kind == "starunion":
        F = star_union(n, k, _get(opts, "cores", _cores))
    elif kind == "sandwich":
        F = sandwich_family(n, k, _get(opts, "t", _int), _get(opts, "r", _int),
                            _get(opts, "m", _int))
    else:
        raise CLIError(f"unknown construct kind {kind!r}")
    return F.to_dict(), [], EXIT_OK


def h_eval(opts):
    F = _family(opts)
    t = _get(opts, "t", _int, required=False, default=1)
    payload = {
        "n": F.n, "k": F.k, "M": len(F),
        "I": total_intersection(F, check=bool(opts.get("check"))),
        "degrees": degree_vector(F),
        "t": t,
    }
    if F.k >= 1 and len(F):
        payload["t_intersection"] = total_t_intersection(F, t)
        payload["is_t_intersecting"] = is_t_intersecting(F, t)
        payload["full_t_stars"] = [list(c) for c in find_full_t_stars(F, t)]
        try:
            d = decompose_size(F.n, F.k, t, len(F))
            payload["decomposition"] = {"r": d.r, "delta": str(d.delta)}
        except ValueError:
            payload["decomposition"] = None
    return payload, [], EXIT_OK


def _solve_row(res):
    row = dict.fromkeys(CSV_COLUMNS, "")
    d = decompose_size(res.n, res.k, 1, res.M)
    ref = total_intersection(lex_segment(res.n, res.k, res.M))
    row.update(n=res.n, k=res.k, t=1, r=d.r, delta_num=d.delta.numerator,
               delta_den=d.delta.denominator, M=res.M, value=res.mi_value, reference=ref,
               verdict=("inexact" if not res.exact
                        else "lex-optimal" if ref == res.mi_value else "lex-suboptimal"))
    return row


def h_solve(opts):
    n, k, m = _get(opts, "n", _int), _get(opts, "k", _int), _get(opts, "m", _int)
    res = max_total_intersection(
        n, k, m, enumerate_all=bool(opts.get("all_optima")),
        node_limit=_get(opts, "node_limit", _int, required=False, default=DEFAULT_NODE_LIMIT),
        threads=_threads(opts))
    payload = res.to_dict(timing=not opts.get("_no_timing"))
    return payload, [_solve_row(res)], EXIT_OK if res.exact else EXIT_RESOURCE


def h_solve_distance(opts):
    n, k, m = _get(opts, "n", _int), _get(opts, "k", _int), _get(opts, "m", _int)
    res = min_avg_distance(
        n, k, m,
        node_limit=_get(opts, "node_limit", _int, required=False, default=DEFAULT_NODE_LIMIT),
        threads=_threads(opts))
    codes = opts.get("codes")
    if codes:
        Path(codes).write_text(res.code.to_text())
    row = dict.fromkeys(CSV_COLUMNS, "")
    row.update(n=n, k=k, t=1, M=m, value=str(res.average), reference=res.total_distance,
               verdict=res.convention)
    return res.to_dict(), [row], EXIT_OK if res.exact else EXIT_RESOURCE


def h_optimize(opts):
    pool = _get(opts, "pool", str, required=False, default="all")
    max_moves = _get(opts, "max_moves", _int, required=False, default=10_000)
    restarts = _get(opts, "restarts", _int, required=False, default=0)
    seed = _get(opts, "seed", _int, required=False, default=0)
    rng = random.Random(seed)
    if opts.get("family"):
        start = _family(opts)
    else:
        n, k, m = _get(opts, "n", _int), _get(opts, "k", _int), _get(opts, "m", _int)
        how = _get(opts, "start", str, required=False, default="lex")
        if how == "lex":
            start = lex_segment(n, k, m)
        elif how == "random":
            start = random_family(n, k, m, rng)
        else:
            raise CLIError(f"--start: expected lex or random, got {how!r}")
    workers = _threads(opts)
    starts = [start] + [random_family(start.n, start.k, len(start), rng) for _ in range(restarts)]
    best = None
    for i, S in enumerate(starts):
        G, trace = local_search(S, max_moves=max_moves, pool=pool, workers=workers)
        val = total_intersection(G)
        if best is None or val > best[0]:
            best = (val, i, S, G, trace)
    val, i, S, G, trace = best
    tr = opts.get("trace")
    if tr:
        Path(tr).write_text(trace_to_jsonl(trace))
    payload = {"start": S.to_dict(), "start_I": total_intersection(S), "final_I": val,
               "moves": len(trace), "restart_index": i, "family": G.to_dict(),
               "trace": [mv.to_dict() for mv in trace]}
    return payload, [], EXIT_OK


def h_shift(opts):
    F = _family(opts)
    if opts.get("compress"):
        G = compress(F)
    else:
        G = shift(F, _get(opts, "i", _int), _get(opts, "j", _int))
    return G.to_dict(), [], EXIT_OK


def h_canon(opts):
    F = _family(opts)
    c = canonical_form(F)
    return {"family": c.family.to_dict(), "certificate": list(c.certificate)}, [], EXIT_OK


def h_verify(opts):
    kind = opts["sub"]
    F = _family(opts)
    if kind == "sandwich":
        t = _get(opts, "t", _int, required=False, default=1)
        r = _get(opts, "r", _int, required=False)
        if r is None:
            v = B.sandwich_verdict(F, t)
        else:
            try:
                ok = B.verify_sandwich(F, t, r)
                v = B.SandwichVerdict("holds" if ok else "fails", t, r, None, None)
            except ValueError as e:
                v = B.SandwichVerdict("not-applicable", t, r, None, None, str(e))
        row = dict.fromkeys(CSV_COLUMNS, "")
        row.update(n=F.n, k=F.k, t=t, r="" if v.r is None else v.r, M=len(F),
                   verdict=v.verdict)
        if v.delta is not None:
            row.update(delta_num=v.delta.numerator, delta_den=v.delta.denominator)
        return v.to_dict(), [row], EXIT_OK
    if kind == "tintersect":
        t = _get(opts, "t", _int)
        return {"t": t, "t_intersecting": is_t_intersecting(F, t)}, [], EXIT_OK
    if kind == "cover":
        s = _get(opts, "s", _int)
        size = _get(opts, "max_size", _int, required=False, default=F.n)
        U = min_s_cover(F, s, size)
        return {"s": s, "cover": None if U is None else list(U)}, [], EXIT_OK
    raise CLIError(f"unknown verify kind {kind!r}")


def h_bounds(opts):
    kind = opts["sub"]
    if kind == "convexmax":
        a, b = _get(opts, "a", _rational), _get(opts, "b", _rational)
        m, v = _get(opts, "m", _rational), _get(opts, "vars", _int)
        res = B.convex_max(a, b, m, v)
        payload = {"value": str(res.value), "witness": [str(x) for x in res.witness],
                   "r0": res.r0}
        row = dict.fromkeys(CSV_COLUMNS, "")
        row.update(M=str(m), value=str(res.value), verdict="exact")
        return payload, [row], EXIT_OK
    n, k = _get(opts, "n", _int), _get(opts, "k", _int)
    if kind == "starunion":
        t, r = _get(opts, "t", _int), _get(opts, "r", _int)
        res = B.min_star_union_size(n, k, t, r)
        row = dict.fromkeys(CSV_COLUMNS, "")
        row.update(n=n, k=k, t=t, r=r, value=res.minimum, reference=res.expected,
                   verdict="matches-lex" if res.matches_lex else "differs")
        return res.to_dict(), [row], EXIT_OK
    delta = _get(opts, "delta", _rational)
    r = _get(opts, "r", _int)
    if kind == "coro2":
        rep = B.coro2_bound(n, k, r, delta)
    elif kind == "coro4":
        rep = B.coro4_bound(n, k, _get(opts, "t", _int), r, delta,
                            _get(opts, "m", _rational, required=False))
    elif kind == "hypotheses":
        rep = B.theorem_hypotheses_satisfied(n, k, _get(opts, "t", _int), r, delta)
    else:
        raise CLIError(f"unknown bounds kind {kind!r}")
    return rep.to_dict(), [rep.csv_row()], EXIT_OK


def h_convert(opts):
    kind = opts["sub"]
    if kind == "avgdist":
        F = _family(opts)
        conv = _get(opts, "convention", str, required=False, default="ordered-distinct")
        if conv not in CONVENTIONS:
            raise CLIError(f"--convention: expected one of {CONVENTIONS}, got {conv!r}")
        avg = average_distance(F, conv)
        return {"convention": conv, "M": len(F), "average": str(avg)}, [], EXIT_OK
    if kind == "code":
        if opts.get("code"):
            try:
                code = ConstantWeightCode.from_text(Path(opts["code"]).read_text(),
                                                    _get(opts, "k", _int, required=False))
            except (OSError, ValueError) as e:
                raise CLIError(f"--code: {e}") from None
            return code.to_family().to_dict(), [], EXIT_OK
        F = _family(opts)
        return ConstantWeightCode.from_family(F).to_text(), [], EXIT_OK
    raise CLIError(f"unknown convert kind {kind!r}")


HANDLERS = {
    "construct": h_construct, "eval": h_eval, "solve": h_solve,
    "solve-distance": h_solve_distance, "optimize": h_optimize, "shift": h_shift,
    "canon": h_canon, "verify": h_verify, "bounds": h_bounds, "convert": h_convert,
}


def _threads(opts) -> int:
    raw = opts.get("threads")
    try:
        return resolve_workers(None if raw is None else int(raw))
    except ValueError as e:
        raise CLIError(f"--threads: {e}") from None


# -- experiment runner -----------------------------------------------------

RUNNABLE = {"solve", "solve-distance", "bounds coro2", "bounds coro4", "bounds hypotheses",
            "bounds starunion", "bounds convexmax"}


def _validate_point(command: str, p: dict) -> None:
    def need(name):
        if name not in p:
            raise CLIError(f"grid point {p}: missing field {name!r}")
        return p[name]

    def nonneg(name):
        try:
            v = _int(need(name))
        except (TypeError, ValueError):
            raise CLIError(f"grid point {p}: field {name!r} must be an integer") from None
        if v < 0:
            raise CLIError(f"grid point {p}: field {name!r} must be >= 0")
        return v

    if command == "bounds convexmax":
        for f in ("a", "b", "m"):
            try:
                _rational(need(f))
            except (ValueError, ZeroDivisionError):
                raise CLIError(f"grid point {p}: field {f!r} is not a rational") from None
        nonneg("vars")
        return
    n, k = nonneg("n"), nonneg("k")
    if k > n:
        raise CLIError(f"grid point {p}: field 'k' exceeds n")
    if command in ("solve", "solve-distance"):
        m = nonneg("m")
        if not 1 <= m <= binom(n, k):
            raise CLIError(f"grid point {p}: field 'm' outside [1, C(n,k)]")
        return
    if command in ("bounds coro4", "bounds hypotheses", "bounds starunion"):
        if nonneg("t") < 1:
            raise CLIError(f"grid point {p}: field 't' must be >= 1")
    nonneg("r")
    if command != "bounds starunion":
        try:
            d = _rational(need("delta"))
        except (ValueError, ZeroDivisionError):
            raise CLIError(f"grid point {p}: field 'delta' is not a rational") from None
        if not 0 <= d <= 1:
            raise CLIError(f"grid point {p}: field 'delta' outside [0, 1]")


def run_experiment(spec: dict) -> int:
    """Run every point of a parameter grid; write results.json and summary.csv.

    spec = {"command": "solve", "grid": {"n": [4, 5], "k": [2], "m": [2, 3]},
            "out_dir": "runs/x", "node_limit": ..., "seed": ..., "threads": ...}
    """
    command = spec.get("command")
    if command not in RUNNABLE:
        raise CLIError(f"field 'command': expected one of {sorted(RUNNABLE)}, got {command!r}")
    grid = spec.get("grid")
    if not isinstance(grid, dict) or not grid:
        raise CLIError("field 'grid': expected a non-empty mapping of name -> list")
    for name, vals in grid.items():
        if not isinstance(vals, list) or not vals:
            raise CLIError(f"field 'grid.{name}': expected a non-empty list")
    out_dir = spec.get("out_dir")
    if not out_dir:
        raise CLIError("field 'out_dir' is required")
    names = sorted(grid)
    points = [dict(zip(names, combo)) for combo in itertools.product(*(grid[n] for n in names))]
    for p in points:
        _validate_point(command, p)

    cmd, _, sub = command.partition(" ")
    shared = {k: v for k, v in spec.items() if k not in ("command", "grid", "out_dir")}
    results, rows, worst = [], [], EXIT_OK
    for p in points:
        opts = {**shared, **p, "sub": sub or None, "_no_timing": True}
        payload, prow, code = HANDLERS[cmd](opts)
        results.append({"params": p, "result": payload})
        rows.extend(prow)
        worst = max(worst, code)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "results.json").write_text(json.dumps(
        {"command": command, "spec": {k: v for k, v in spec.items() if k != "out_dir"},
         "results": results}, indent=2, sort_keys=True) + "\n")
    (out / "summary.csv").write_text(_csv_text(rows))
    return worst


def _csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({c: row.get(c, "") for c in CSV_COLUMNS})
    return buf.getvalue()


# -- parser --------------------------------------------------------------

S = argparse.SUPPRESS


def _common(p):
    p.add_argument("--config", default=S, help="JSON file with option values")
    p.add_argument("--threads", type=int, default=S,
                   help="worker count (env TIC_THREADS as fallback)")
    p.add_argument("--out", default=S, help="write the JSON result here")
    p.add_argument("--csv", default=S, help="write a CSV summary row here")


def _opt(p, *names, **kw):
    kw.setdefault("default", S)
    p.add_argument(*names, **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tic", description=__doc__.splitlines()[0])
    sp = parser.add_subparsers(dest="cmd", required=True)

    con = sp.add_parser("construct", help="build a named family")
    csp = con.add_subparsers(dest="sub", required=True)
    for name, fields in {"lex": "n k m", "lexT": "n k t r", "star": "n k core",
                         "starunion": "n k cores", "sandwich": "n k t r m"}.items():
        p = csp.add_parser(name)
        _common(p)
        for f in fields.split():
            _opt(p, f"--{f}")

    p = sp.add_parser("eval", help="total intersection and degree data of a family")
    _common(p)
    _opt(p, "--family")
    _opt(p, "--t")
    _opt(p, "--check", action="store_true", help="cross-check with the pairwise sum")

    for name in ("solve", "solve-distance"):
        p = sp.add_parser(name)
        _common(p)
        for f in ("n", "k", "m"):
            _opt(p, f"--{f}")
        _opt(p, "--node-limit", dest="node_limit")
        if name == "solve":
            _opt(p, "--all-optima", dest="all_optima", action="store_true")
        else:
            _opt(p, "--codes", help="write the witness codewords here")

    p = sp.add_parser("optimize", help="replacement-move local search")
    _common(p)
    for f in ("family", "n", "k", "m", "start", "pool", "restarts", "seed", "trace"):
        _opt(p, f"--{f}")
    _opt(p, "--max-moves", dest="max_moves")

    p = sp.add_parser("shift", help="apply S_{i,j} or compress to a fixpoint")
    _common(p)
    for f in ("family", "i", "j"):
        _opt(p, f"--{f}")
    _opt(p, "--compress", action="store_true")

    p = sp.add_parser("canon", help="canonical form under relabeling")
    _common(p)
    _opt(p, "--family")

    ver = sp.add_parser("verify")
    vsp = ver.add_subparsers(dest="sub", required=True)
    for name, fields in {"sandwich": "family t r", "tintersect": "family t",
                         "cover": "family s"}.items():
        p = vsp.add_parser(name)
        _common(p)
        for f in fields.split():
            _opt(p, f"--{f}")
        if name == "cover":
            _opt(p, "--max-size", dest="max_size")

    bnd = sp.add_parser("bounds")
    bsp = bnd.add_subparsers(dest="sub", required=True)
    for name, fields in {"coro2": "n k r delta", "coro4": "n k t r delta m",
                         "convexmax": "a b m vars", "hypotheses": "n k t r delta",
                         "starunion": "n k t r"}.items():
        p = bsp.add_parser(name)
        _common(p)
        for f in fields.split():
            _opt(p, f"--{f}")

    cnv = sp.add_parser("convert")
    cvsp = cnv.add_subparsers(dest="sub", required=True)
    p = cvsp.add_parser("avgdist")
    _common(p)
    _opt(p, "--family")
    _opt(p, "--convention", choices=CONVENTIONS)
    p = cvsp.add_parser("code")
    _common(p)
    _opt(p, "--family")
    _opt(p, "--code", help="codeword text file to turn into family JSON")
    _opt(p, "--k")

    p = sp.add_parser("run", help="run a parameter grid from a JSON experiment spec")
    p.add_argument("--config", required=True)
    return parser


def _emit(payload, dest):
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if dest:
        Path(dest).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    given = vars(args)
    try:
        if args.cmd == "run":
            try:
                spec = json.loads(Path(args.config).read_text())
            except (OSError, json.JSONDecodeError) as e:
                raise CLIError(f"--config: {e}") from None
            return run_experiment(spec)
        opts = {}
        if "config" in given:
            try:
                cfg = json.loads(Path(given["config"]).read_text())
            except (OSError, json.JSONDecodeError) as e:
                raise CLIError(f"--config: {e}") from None
            if not isinstance(cfg, dict):
                raise CLIError("--config: expected a JSON object")
            opts.update({k.replace("-", "_"): v for k, v in cfg.items()})
        opts.update(given)
        opts.setdefault("sub", None)
        payload, rows, code = HANDLERS[args.cmd](opts)
    except CLIError as e:
        print(f"tic: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, RuntimeError) as e:
        print(f"tic: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(payload, opts.get("out"))
    if opts.get("csv"):
        Path(opts["csv"]).write_text(_csv_text(rows))
    if code == EXIT_RESOURCE:
        print("tic: node limit reached; result is not exact", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
