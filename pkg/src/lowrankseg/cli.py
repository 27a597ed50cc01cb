"""Experiment command line: solve, spectrum-sweep, noise-compare, bench, cluster.

Every command echoes its full parameter set into a JSON record so a run can
be reproduced from the record alone. Seeded commands are bit-reproducible
except for wall-clock fields, which all live under "timing" keys or the
started_at/finished_at envelope entries. Matrices travel as headerless CSV
(see data.load_matrix). Exit codes: 0 success, 1 usage or input error,
2 solver hit its iteration cap.

LOWRANKSEG_THREADS caps how many seed-repetitions noise-compare runs
concurrently (default 1); results do not depend on the setting.
"""

import argparse
import json
import os
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

import numpy as np

from . import __version__, data, prox, segmentation, solver
from .errors import LowRankSegError, ParameterError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_CONVERGENCE = 2


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 (not 2) on bad flags."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _utcnow():
    return datetime.now(timezone.utc).isoformat()


def _record(command, params, results, started_at):
    return {
        "command": command,
        "params": params,
        "version": __version__,
        "started_at": started_at,
        "finished_at": _utcnow(),
        "results": results,
    }


def _emit(record, out_path):
    text = json.dumps(record, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def strip_volatile(obj):
    """Copy of a record without wall-clock fields (for reproducibility diffs)."""
    volatile = {"timing", "started_at", "finished_at"}
    if isinstance(obj, dict):
        return {k: strip_volatile(v) for k, v in obj.items() if k not in volatile}
    if isinstance(obj, list):
        return [strip_volatile(v) for v in obj]
    return obj


def parse_grid(text):
    """Inclusive start:step:end grid, or a single value without colons."""
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ParameterError(f"grid must be 'start:step:end' or a single value, got {text!r}")
    start, step, end = (float(p) for p in parts)
    if step <= 0:
        raise ParameterError(f"grid step must be positive, got {step}")
    values = []
    v = start
    while v <= end + step * 1e-9:
        values.append(round(v, 12))
        v = start + (len(values)) * step
    if not values:
        raise ParameterError(f"grid {text!r} is empty")
    return values


def _spectrum_dict(rep):
    return {
        "eigenvalues": [float(v) for v in rep.eigenvalues],
        "singular_values": [float(v) for v in rep.singular_values],
        "count_above": {format(t, "g"): c for t, c in rep.count_above.items()},
    }


def _load_input(args):
    """Data matrix plus optional ground-truth labels, from --input or --toy."""
    if args.toy:
        ds = data.generate_toy(seed=args.seed)
        return ds.x, ds.labels
    if not args.input:
        raise ParameterError("either --input or --toy is required")
    return data.load_matrix(args.input), None


def _maybe_corrupt(x, args):
    if getattr(args, "noise_fraction", 0.0) in (None, 0.0):
        return x
    spec = data.CorruptionSpec(
        model=args.noise_model,
        fraction=args.noise_fraction,
        sigma_scale=args.noise_level,
        seed=args.seed + 1000,
    )
    corrupted, _ = data.corrupt(x, spec)
    return corrupted


def _solve_once(x, lam, noise_norm, psd, tol, max_iter):
    cfg = solver.AlmConfig(
        lam=lam, noise_norm=noise_norm, tol=tol, max_iter=max_iter, psd=psd
    )
    return solver.solve(x, cfg)


def cmd_solve(args):
    started = _utcnow()
    x, _ = _load_input(args)
    x = _maybe_corrupt(x, args)
    res = _solve_once(x, args.lam, args.noise, args.psd, args.tol, args.max_iter)
    rep = solver.spectrum_report(res.z)
    if args.dump_z:
        data.save_matrix(args.dump_z, res.z)
    if args.dump_e:
        data.save_matrix(args.dump_e, res.e)
    last = res.history[-1]
    results = {
        "converged": res.converged,
        "iterations": res.iterations,
        "final_primal_residual": last.primal_residual,
        "final_gap": last.gap,
        "final_objective": last.objective,
        "spectrum": _spectrum_dict(rep),
        "timing": {k: float(v) for k, v in res.timing.items()},
    }
    params = {
        "input": args.input,
        "toy": args.toy,
        "seed": args.seed,
        "lambda": args.lam,
        "noise": args.noise,
        "psd": args.psd,
        "tol": args.tol,
        "max_iter": args.max_iter,
        "noise_model": args.noise_model,
        "noise_fraction": args.noise_fraction,
        "noise_level": args.noise_level,
        "dump_z": args.dump_z,
        "dump_e": args.dump_e,
    }
    _emit(_record("solve", params, results, started), args.out)
    return EXIT_OK if res.converged else EXIT_NO_CONVERGENCE


def cmd_spectrum_sweep(args):
    started = _utcnow()
    lambdas = parse_grid(args.lambdas)
    variants = {"on": [True], "off": [False], "both": [False, True]}[args.psd]
    ds = data.generate_toy(seed=args.seed)
    x = ds.x
    if args.noise_fraction > 0:
        spec = data.CorruptionSpec(
            model=args.noise_model,
            fraction=args.noise_fraction,
            sigma_scale=args.noise_level,
            seed=args.seed + 1000,
        )
        x, _ = data.corrupt(x, spec)
    rows = []
    csv_rows = []
    for lam in lambdas:
        for psd in variants:
            res = _solve_once(x, lam, args.noise, psd, args.tol, args.max_iter)
            rep = solver.spectrum_report(res.z)
            rows.append(
                {
                    "lambda": lam,
                    "psd": psd,
                    "converged": res.converged,
                    "iterations": res.iterations,
                    "spectrum": _spectrum_dict(rep),
                }
            )
            for i, (ev, sv) in enumerate(zip(rep.eigenvalues, rep.singular_values)):
                csv_rows.append([lam, 1.0 if psd else 0.0, float(i), ev, sv])
    if args.csv:
        data.save_matrix(args.csv, np.array(csv_rows))
    params = {
        "lambdas": args.lambdas,
        "psd": args.psd,
        "noise": args.noise,
        "noise_model": args.noise_model,
        "noise_fraction": args.noise_fraction,
        "noise_level": args.noise_level,
        "seed": args.seed,
        "tol": args.tol,
        "max_iter": args.max_iter,
        "csv": args.csv,
    }
    _emit(_record("spectrum-sweep", params, {"rows": rows}, started), args.out)
    return EXIT_OK


def _noise_compare_cell(fraction, noise_norm, seed, args):
    ds = data.generate_toy(seed=seed)
    x = ds.x
    if fraction > 0:
        spec = data.CorruptionSpec(
            model="random_entries",
            fraction=fraction,
            sigma_scale=args.noise_level,
            seed=seed + 1000,
        )
        x, _ = data.corrupt(x, spec)
    res = _solve_once(x, args.lam, noise_norm, args.psd, args.tol, args.max_iter)
    mode = "psd_direct" if args.psd else "abs_sym"
    w = segmentation.affinity_from_representation(res.z, mode)
    labels = segmentation.spectral_cluster(w, args.k, seed=seed).labels
    return segmentation.segmentation_accuracy(labels, ds.labels)


def cmd_noise_compare(args):
    started = _utcnow()
    fractions = parse_grid(args.fractions)
    seeds = list(range(args.seeds))
    tasks = [
        (fraction, noise_norm, seed)
        for fraction in fractions
        for noise_norm in ("l1", "l21")
        for seed in seeds
    ]
    threads = int(os.environ.get("LOWRANKSEG_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            accs = list(
                pool.map(lambda t: _noise_compare_cell(t[0], t[1], t[2], args), tasks)
            )
    else:
        accs = [_noise_compare_cell(f, nn, s, args) for f, nn, s in tasks]
    by_cell = {}
    for (fraction, noise_norm, _), acc in zip(tasks, accs):
        by_cell.setdefault((fraction, noise_norm), []).append(acc)
    rows = []
    for fraction in fractions:
        for noise_norm in ("l1", "l21"):
            values = by_cell[(fraction, noise_norm)]
            rows.append(
                {
                    "fraction": fraction,
                    "noise_norm": noise_norm,
                    "mean_accuracy": statistics.fmean(values),
                    "std_accuracy": statistics.pstdev(values) if len(values) > 1 else 0.0,
                    "accuracies": values,
                }
            )
    params = {
        "fractions": args.fractions,
        "seeds": args.seeds,
        "lambda": args.lam,
        "psd": args.psd,
        "k": args.k,
        "noise_level": args.noise_level,
        "tol": args.tol,
        "max_iter": args.max_iter,
    }
    _emit(_record("noise-compare", params, {"rows": rows}, started), args.out)
    return EXIT_OK


def _median_seconds(fn, reps):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def cmd_bench(args):
    started = _utcnow()
    sizes = [int(s) for s in args.sizes.split(",") if s]
    if not sizes or any(n < 2 for n in sizes):
        raise ParameterError(f"--sizes must list integers >= 2, got {args.sizes!r}")
    rows = []
    for n in sizes:
        rng = np.random.default_rng(args.seed + n)
        a = rng.standard_normal((n, n))
        s = (a + a.T) / 2
        g = rng.standard_normal((n, n))
        tau = 1.0
        row_timing = {
            "eig_median_s": _median_seconds(lambda: np.linalg.eigh(s), args.reps),
            "svd_median_s": _median_seconds(lambda: np.linalg.svd(a), args.reps),
            "jstep_psd_median_s": _median_seconds(
                lambda: prox.psd_eig_threshold(g, tau), args.reps
            ),
            "jstep_svt_median_s": _median_seconds(lambda: prox.svt(g, tau), args.reps),
        }
        rows.append({"n": n, "reps": args.reps, "timing": row_timing})
    params = {"sizes": args.sizes, "reps": args.reps, "seed": args.seed}
    _emit(_record("bench", params, {"rows": rows}, started), args.out)
    return EXIT_OK


def cmd_cluster(args):
    started = _utcnow()
    x, truth = _load_input(args)
    if args.labels:
        truth = data.load_matrix(args.labels).ravel().astype(int)
    if args.method == "lrr":
        w = segmentation.affinity_from_representation(solver.lrr_closed_form(x), "abs_sym")
    elif args.method == "lrr-psd":
        w = segmentation.affinity_from_representation(
            solver.lrr_closed_form(x), "psd_direct"
        )
    elif args.method == "gauss":
        if args.sigma is None:
            raise ParameterError("--sigma is required for method 'gauss'")
        w = segmentation.gaussian_affinity(x, args.sigma)
    else:  # linear
        w = segmentation.linear_affinity(x)
    result = segmentation.spectral_cluster(w, args.k, seed=args.seed)
    accuracy = (
        segmentation.segmentation_accuracy(result.labels, truth)
        if truth is not None
        else None
    )
    results = {
        "labels": [int(v) for v in result.labels],
        "k": args.k,
        "accuracy": accuracy,
    }
    params = {
        "input": args.input,
        "toy": args.toy,
        "labels": args.labels,
        "k": args.k,
        "method": args.method,
        "sigma": args.sigma,
        "seed": args.seed,
    }
    _emit(_record("cluster", params, results, started), args.out)
    return EXIT_OK


def _add_noise_flags(p):
    p.add_argument("--noise-model", choices=("random_entries", "sample_specific"),
                   default="sample_specific", help="corruption pattern")
    p.add_argument("--noise-fraction", type=float, default=0.0,
                   help="share of entries/columns to corrupt (0 = clean)")
    p.add_argument("--noise-level", type=float, default=0.3,
                   help="total noise magnitude relative to ||X||_F")


def _add_solver_flags(p):
    p.add_argument("--lambda", dest="lam", type=float, required=True,
                   help="noise trade-off weight")
    p.add_argument("--noise", choices=("l1", "l21"), default="l21",
                   help="noise norm in the objective")
    p.add_argument("--psd", action="store_true",
                   help="constrain the representation to the PSD cone")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=1000)


def build_parser():
    parser = _Parser(prog="lowrankseg",
                     description="Low-rank subspace segmentation experiments")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("solve", help="run the robust solver on a matrix")
    p.add_argument("--input", help="CSV data matrix (columns are samples)")
    p.add_argument("--toy", action="store_true", help="use the synthetic dataset")
    p.add_argument("--seed", type=int, default=0)
    _add_solver_flags(p)
    _add_noise_flags(p)
    p.add_argument("--out", help="write the JSON record here (default stdout)")
    p.add_argument("--dump-z", help="write the coefficient matrix as CSV")
    p.add_argument("--dump-e", help="write the noise matrix as CSV")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("spectrum-sweep", help="spectra along a lambda grid")
    p.add_argument("--lambdas", required=True, help="grid start:step:end, inclusive")
    p.add_argument("--psd", choices=("on", "off", "both"), default="both")
    p.add_argument("--noise", choices=("l1", "l21"), default="l21")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=1000)
    _add_noise_flags(p)
    p.add_argument("--out", help="JSON record path (default stdout)")
    p.add_argument("--csv", help="companion CSV: lambda, psd, index, eig, sv")
    p.set_defaults(fn=cmd_spectrum_sweep)

    p = sub.add_parser("noise-compare", help="accuracy of l1 vs l21 under corruption")
    p.add_argument("--fractions", required=True, help="grid start:step:end, inclusive")
    p.add_argument("--seeds", type=int, default=5, help="number of seeds (0..N-1)")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--psd", action="store_true",
                   help="use the PSD-constrained solver")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--noise-level", type=float, default=0.3)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--out", help="JSON record path (default stdout)")
    p.set_defaults(fn=cmd_noise_compare)

    p = sub.add_parser("bench", help="eig vs SVD and PSD vs SVT step timings")
    p.add_argument("--sizes", default="100,500,1000,2000", help="comma list of n")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="JSON record path (default stdout)")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("cluster", help="cluster a matrix with a chosen affinity")
    p.add_argument("--input", help="CSV data matrix (columns are samples)")
    p.add_argument("--toy", action="store_true")
    p.add_argument("--labels", help="CSV ground-truth labels (optional)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("lrr", "lrr-psd", "gauss", "linear"),
                   default="lrr-psd")
    p.add_argument("--sigma", type=float, help="Gaussian kernel bandwidth")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="JSON record path (default stdout)")
    p.set_defaults(fn=cmd_cluster)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (LowRankSegError, OSError) as exc:
        print(f"lowrankseg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
