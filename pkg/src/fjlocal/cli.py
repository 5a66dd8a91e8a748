"""Command line front end: ``fjlocal {gen,solve,metrics,compare,bench,sweep-omega}``.

Exit codes: 0 success, 2 usage / parameter error, 3 numerical failure
(watchdog, divergence, non-convergence), 4 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import statistics
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, metrics, opinions
from .forest import DEFAULT_SAMPLES, forest_sample
from .graph import EdgeListError, read_edge_list
from .oracle import DENSE_CAP, ConvergenceError, DenseCapError, iterate_sync, solve_dense
from .push import DEFAULT_C, DEFAULT_EPSILON, DEFAULT_SIGMA, bound_local_iter, improved_bli
from .result import EstimateResult, NumericalFailure
from .sor import DEFAULT_OMEGA, improved_blisor, omega_opt_dense, omega_sweep
from .walks import DEFAULT_NUM_WALKS, DEFAULT_WALK_LEN, WalkConfig, rwb_all

EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 2, 3, 4
WORKERS_ENV = "FJLOCAL_WORKERS"
METHODS = ("exact", "sync", "bli", "bli-raw", "blisor", "rwb", "forest")
# directed graphs have no SPD guarantee; their optimum sat between 1.0 and 1.35 in practice
DIRECTED_SWEEP = dict(grid_start=1.0, grid_end=1.9, step=0.1)


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    return "NA" if x is None else str(x)


def write_csv(path, header, rows):
    fh = sys.stdout if path in (None, "-") else open(path, "w", newline="")
    try:
        w = csv.writer(fh, lineterminator="\r\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(x) for x in row])
    finally:
        if fh is not sys.stdout:
            fh.close()


# -- input resolution ------------------------------------------------------

def load_graph(args):
    G = read_edge_list(args.graph, directed=args.directed)
    return G


def load_s(args, G):
    if args.opinions:
        return opinions.read_opinions(args.opinions, G.n), {"opinions_path": args.opinions}
    s, meta = opinions.generate(args.gen, G.n, args.seed, x_min=args.x_min, alpha=args.alpha)
    return s, {"opinions": meta}


def graph_meta(args, G):
    return {"graph_path": args.graph, "graph_sha256": G.content_hash(), "directed": G.directed,
            "n": G.n, "m": G.m, "d_max": G.d_max}


def choose_omega(args, G, s):
    if args.omega_formula:
        sel = omega_opt_dense(G, cap=args.dense_cap)
    elif args.omega_sweep or (args.omega is None and G.directed):
        grid = DIRECTED_SWEEP if G.directed else {}
        sel = omega_sweep(G, s, args.epsilon, args.sigma, args.c, **grid)
    else:
        return (DEFAULT_OMEGA if args.omega is None else args.omega), {"omega_source": "fixed"}
    info = {"omega_source": sel.source}
    if sel.mu is not None:
        info["mu"] = sel.mu
    return sel.omega, info


def run_method(method, G, s, args) -> EstimateResult:
    import time

    t0 = time.perf_counter()
    if method == "exact":
        z = solve_dense(G, s, cap=args.dense_cap)
        return EstimateResult(z, "exact", wall_time=time.perf_counter() - t0)
    if method == "sync":
        r = iterate_sync(G, s)
        return EstimateResult(r.z, "sync", wall_time=time.perf_counter() - t0,
                              extra={"iterations": r.iterations})
    if method == "bli":
        return improved_bli(G, s, args.epsilon, args.sigma, args.c)
    if method == "bli-raw":
        return bound_local_iter(G, s, args.epsilon, max_pushes=args.max_pushes)
    if method == "blisor":
        omega, info = choose_omega(args, G, s)
        res = improved_blisor(G, s, args.epsilon, args.sigma, args.c, omega)
        res.extra.update(info)
        return res
    if method == "rwb":
        return rwb_all(G, s, WalkConfig(args.walk_len, args.num_walks, args.seed))
    if method == "forest":
        return forest_sample(G, s, args.samples, args.seed)
    raise UsageError(f"unknown method {method!r}")


# -- subcommands -----------------------------------------------------------

def cmd_gen(args):
    if args.n is None and args.graph is None:
        raise UsageError("gen needs --n or --graph")
    n = args.n if args.n is not None else load_graph(args).n
    s, meta = opinions.generate(args.gen, n, args.seed, x_min=args.x_min, alpha=args.alpha)
    meta["version"] = __version__
    if args.out in (None, "-"):
        sys.stdout.writelines(f"{v!r}\n" for v in map(float, s))
    else:
        opinions.write_vector(args.out, s, meta)
    return 0


def cmd_solve(args):
    G = load_graph(args)
    s, smeta = load_s(args, G)
    res = run_method(args.method, G, s, args)
    record = {"version": __version__, **graph_meta(args, G), **smeta, **res.record()}
    if args.out in (None, "-"):
        sys.stdout.writelines(f"{v!r}\n" for v in map(float, res.z_hat))
        print(json.dumps(record, sort_keys=True, default=float), file=sys.stderr)
    else:
        record["output"] = args.out
        opinions.write_vector(args.out, res.z_hat, record)
    return 0


def cmd_metrics(args):
    G = load_graph(args)
    s, smeta = load_s(args, G)
    if args.z:
        with open(args.z) as fh:
            z = np.array([float(x) for x in fh if x.strip()])
        source = {"z_path": args.z}
    else:
        res = run_method(args.method, G, s, args)
        z, source = res.z_hat, res.record()
    rep = metrics.report(G, z, s).as_dict()
    rep.update(metrics.total_stress(G, z, s))
    if args.format == "csv":
        write_csv(args.out, list(rep), [list(rep.values())])
    else:
        out = {"metrics": rep, "source": source, **graph_meta(args, G), **smeta}
        text = json.dumps(out, indent=2, sort_keys=True, default=float)
        if args.out in (None, "-"):
            print(text)
        else:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
    return 0


COMPARE_HEADER = ["method", "max_rel_err_z", "rel_err_C", "rel_err_D", "rel_err_I", "rel_err_P",
                  "wall_time"]


def max_rel_err(z_hat, z) -> float:
    mask = z > 0
    if not mask.any():
        return float(np.max(np.abs(z_hat - z), initial=0.0))
    return float(np.max(np.abs(z_hat[mask] - z[mask]) / z[mask]))


def compare_rows(G, s, methods, reference, args):
    try:
        ref = run_method(reference, G, s, args)
    except DenseCapError as exc:
        raise DenseCapError(f"{exc}; use --reference sync for large graphs") from None
    ref_m = metrics.report(G, ref.z_hat, s)
    rows = []
    for method in methods:
        try:
            res = run_method(method, G, s, args)
        except NumericalFailure as exc:
            print(f"{method}: {exc}", file=sys.stderr)
            rows.append([method] + [None] * 6)
            continue
        rel = metrics.relative_errors(metrics.report(G, res.z_hat, s), ref_m)
        rows.append([method, max_rel_err(res.z_hat, ref.z_hat), rel["controversy"],
                     rel["disagreement"], rel["internal_conflict"], rel["polarization"],
                     res.wall_time])
    return rows


def cmd_compare(args):
    G = load_graph(args)
    s, _ = load_s(args, G)
    methods = args.methods.split(",")
    write_csv(args.out, COMPARE_HEADER, compare_rows(G, s, methods, args.reference, args))
    return 0


BENCH_HEADER = ["graph", "n", "m", "d_max", "method", "distribution", "median_wall_time",
                "pushes"]


def _bench_cell(G, path, method, dist, args):
    try:
        s, _ = opinions.generate(dist, G.n, args.seed, x_min=args.x_min, alpha=args.alpha)
        times, pushes = [], set()
        for _ in range(args.reps):
            res = run_method(method, G, s, args)
            times.append(res.wall_time)
            pushes.add(res.pushes)
        push_col = pushes.pop() if len(pushes) == 1 else None
        return [path, G.n, G.m, G.d_max, method, dist, statistics.median(times), push_col]
    except (NumericalFailure, ConvergenceError, DenseCapError, ValueError) as exc:
        print(f"{path} {method} {dist}: {exc}", file=sys.stderr)
        return [path, G.n, G.m, G.d_max, method, dist, None, None]


def cmd_bench(args):
    if args.reps < 1:
        raise UsageError("--reps must be >= 1")
    cells = []
    for path in args.graph_list:
        G = read_edge_list(path, directed=args.directed)
        for method in args.methods.split(","):
            for dist in args.dists.split(","):
                cells.append((G, path, method, dist))
    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        rows = list(pool.map(lambda c: _bench_cell(*c, args), cells))
    write_csv(args.out, BENCH_HEADER, rows)
    return 0


def cmd_sweep_omega(args):
    G = load_graph(args)
    s, _ = load_s(args, G)
    grid = [float(x) for x in args.grid.split(",")] if args.grid else None
    sel = omega_sweep(G, s, args.epsilon, args.sigma, args.c, args.grid_start, args.grid_end,
                      args.step, grid=grid, max_pushes=args.max_pushes)
    write_csv(args.out, ["omega", "pushes", "touched_arcs", "wall_time"], sel.sweep_table)
    print(f"best omega {sel.omega}", file=sys.stderr)
    return 0


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--directed", action="store_true")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default="-")
    src = common.add_mutually_exclusive_group()
    src.add_argument("--opinions")
    src.add_argument("--gen", choices=sorted(opinions.GENERATORS), default="unif")
    common.add_argument("--x-min", type=float, default=1.0)
    common.add_argument("--alpha", type=float, default=2.5)
    common.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    common.add_argument("--sigma", type=float, default=DEFAULT_SIGMA)
    common.add_argument("--c", type=float, default=DEFAULT_C)
    om = common.add_mutually_exclusive_group()
    om.add_argument("--omega", type=float)
    om.add_argument("--omega-sweep", action="store_true")
    om.add_argument("--omega-formula", action="store_true")
    common.add_argument("--walk-len", type=int, default=DEFAULT_WALK_LEN)
    common.add_argument("--num-walks", type=int, default=DEFAULT_NUM_WALKS)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common.add_argument("--max-pushes", type=int, default=10**9)
    common.add_argument("--dense-cap", type=int, default=DENSE_CAP)
    common.add_argument("--workers", type=int, default=int(os.environ.get(WORKERS_ENV, "1")))

    p = argparse.ArgumentParser(prog="fjlocal", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="write an internal-opinion vector")
    g.add_argument("--n", type=int)
    g.add_argument("--graph")
    g.set_defaults(func=cmd_gen)

    sv = sub.add_parser("solve", parents=[common], help="estimate the equilibrium vector")
    sv.add_argument("--graph", required=True)
    sv.add_argument("--method", choices=METHODS, default="bli")
    sv.set_defaults(func=cmd_solve)

    mt = sub.add_parser("metrics", parents=[common], help="conflict/disagreement/polarization")
    mt.add_argument("--graph", required=True)
    mt.add_argument("--z", help="equilibrium file; omit to solve with --method")
    mt.add_argument("--method", choices=METHODS, default="bli")
    mt.add_argument("--format", choices=("json", "csv"), default="json")
    mt.set_defaults(func=cmd_metrics)

    cp = sub.add_parser("compare", parents=[common], help="relative errors against a reference")
    cp.add_argument("--graph", required=True)
    cp.add_argument("--methods", default="bli,blisor,rwb")
    cp.add_argument("--reference", choices=("exact", "sync"), default="exact")
    cp.set_defaults(func=cmd_compare)

    bn = sub.add_parser("bench", parents=[common], help="timing table over methods x distributions")
    bn.add_argument("--graph", dest="graph_list", action="append", required=True)
    bn.add_argument("--methods", default="bli,blisor")
    bn.add_argument("--dists", default="unif,exp,pow")
    bn.add_argument("--reps", type=int, default=3)
    bn.set_defaults(func=cmd_bench)

    sw = sub.add_parser("sweep-omega", parents=[common], help="push counts over an omega grid")
    sw.add_argument("--graph", required=True)
    sw.add_argument("--grid-start", type=float, default=1.0)
    sw.add_argument("--grid-end", type=float, default=1.95)
    sw.add_argument("--step", type=float, default=0.05)
    sw.add_argument("--grid", help="explicit comma-separated omega values")
    sw.set_defaults(func=cmd_sweep_omega)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, opinions.OpinionError, EdgeListError, DenseCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalFailure, ConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
