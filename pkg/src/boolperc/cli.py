"""Command-line front end.

Subcommands:

* ``bound {penrose,phi-b3,hall} --dim D``   rigorous bounds
* ``simulate --dim D --intensity T --radius R --runs N``   Monte-Carlo bound
* ``ci --successes S --runs N``   Wilson upper confidence limit
* ``table {table1,table3}``   recompute a full published table

Every command emits a RunRecord; ``--format json`` prints it as one JSON
object with stable field names.  Wall time is reported in text output only,
so JSON output is byte-identical for identical seeds regardless of ``--jobs``.
"""

from __future__ import annotations

import argparse
import json
import os
import secrets
import sys
import time
from dataclasses import dataclass

from . import __version__, bounds, estimator, tables
from .cluster import ExploreConfig, naive_reach_oracle
from .sampling import make_stream

JOBS_ENV_VAR = "BOOLPERC_JOBS"


@dataclass
class RunRecord:
    command: str
    parameters: dict
    results: dict
    seed: int | None
    version: str
    wall_time: float

    def to_dict(self) -> dict:
        # wall_time deliberately excluded: records must be reproducible
        # byte-for-byte from (command, parameters, seed).
        return {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "seed": self.seed,
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _default_jobs() -> int:
    env = os.environ.get(JOBS_ENV_VAR)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _emit(record: RunRecord, fmt: str, text_lines, csv_lines) -> None:
    if fmt == "json":
        print(record.to_json())
    elif fmt == "csv":
        for line in csv_lines:
            print(line)
    else:
        for line in text_lines:
            print(line)
        print(f"wall time: {record.wall_time:.3f} s")


def _cmd_bound(args) -> int:
    t0 = time.perf_counter()
    method = args.method
    d = args.dim
    results: dict = {"method": method, "d": d}
    if method == "penrose":
        value = bounds.penrose_bound(d)
        diag = "closed form, exact to floating precision"
    elif method == "phi-b3":
        value = bounds.phi_b3_bound(d, tol=args.tol)
        results["bisection_tol"] = args.tol
        diag = f"bisection to bracket width {args.tol:g}, quadrature doubling check at 1e-10"
    else:
        value, err = bounds.hall_bound_with_error(d, args.nodes)
        results["nodes"] = args.nodes
        results["richardson_error_estimate"] = err
        diag = f"Nystrom with {args.nodes} nodes, error estimate {err:.3g} from doubling"
    results["value"] = value
    record = RunRecord(
        command="bound",
        parameters={"method": method, "dim": d, "tol": args.tol, "nodes": args.nodes},
        results=results,
        seed=None,
        version=__version__,
        wall_time=time.perf_counter() - t0,
    )
    _emit(
        record,
        args.format,
        [f"{method} bound, d={d}: {value:.6g}", diag],
        ["method,d,value", f"{method},{d},{value:.9g}"],
    )
    return 0


def _cmd_simulate(args) -> int:
    t0 = time.perf_counter()
    seed = args.seed if args.seed is not None else secrets.randbits(63)
    config = ExploreConfig(
        d=args.dim, t=args.intensity, r=args.radius, size_threshold=args.threshold
    )
    if args.engine == "naive":
        successes = 0
        for i in range(args.runs):
            if naive_reach_oracle(config, make_stream(seed, i)):
                successes += 1
        theta_upper = estimator.wilson_upper_cc(successes, args.runs, args.level)
        summary_dict = {
            "runs": args.runs,
            "successes": successes,
            "threshold_hits": 0,
            "total_grains": None,
        }
        lower = estimator.lower_bound_from_theta(args.intensity, theta_upper)
    else:
        est = estimator.estimate_bound(
            config, seed, args.runs, level=args.level, parallelism=args.jobs
        )
        successes = est.summary.successes
        theta_upper = est.theta_upper
        lower = est.lower_bound
        summary_dict = {
            "runs": est.summary.runs,
            "successes": successes,
            "threshold_hits": est.summary.threshold_hits,
            "total_grains": est.summary.total_grains,
        }
    results = {
        "d": args.dim,
        "r": args.radius,
        "t": args.intensity,
        "engine": args.engine,
        "summary": summary_dict,
        "confidence_level": args.level,
        "theta_upper": theta_upper,
        "lower_bound": lower,
    }
    record = RunRecord(
        command="simulate",
        parameters={
            "dim": args.dim,
            "intensity": args.intensity,
            "radius": args.radius,
            "runs": args.runs,
            "threshold": args.threshold,
            "level": args.level,
            "engine": args.engine,
        },
        results=results,
        seed=seed,
        version=__version__,
        wall_time=time.perf_counter() - t0,
    )
    header = "d,r,t,runs,successes,theta_upper,lower_bound"
    row = (
        f"{args.dim},{args.radius:g},{args.intensity:g},{args.runs},"
        f"{successes},{theta_upper:.9g},{lower:.9g}"
    )
    _emit(
        record,
        args.format,
        [
            f"d={args.dim} r={args.radius:g} t={args.intensity:g} "
            f"runs={args.runs} success={successes} "
            f"CI={theta_upper:.9g} lower bound={lower:.9g} (seed {seed})"
        ],
        [header, row],
    )
    return 0


def _cmd_ci(args) -> int:
    t0 = time.perf_counter()
    value = estimator.wilson_upper_cc(args.successes, args.runs, args.level)
    record = RunRecord(
        command="ci",
        parameters={"successes": args.successes, "runs": args.runs, "level": args.level},
        results={"theta_upper": value},
        seed=None,
        version=__version__,
        wall_time=time.perf_counter() - t0,
    )
    _emit(
        record,
        args.format,
        [f"one-sided {args.level:g} upper limit for {args.successes}/{args.runs}: {value:.9g}"],
        ["successes,runs,level,theta_upper", f"{args.successes},{args.runs},{args.level:g},{value:.9g}"],
    )
    return 0


def _cmd_table(args) -> int:
    t0 = time.perf_counter()
    rows = []
    max_dev = 0.0
    if args.which == "table1":
        header = "d,phi_b3_bound,penrose_bound"
        for d in tables.DIMENSIONS:
            phi = bounds.phi_b3_bound(d)
            pen = bounds.penrose_bound(d)
            ref_phi, ref_pen = tables.TABLE1[d]
            max_dev = max(
                max_dev, abs(phi - ref_phi) / ref_phi, abs(pen - ref_pen) / ref_pen
            )
            rows.append((d, [phi, pen]))
    else:
        header = "d,penrose_bound,phi_b3_bound,hall_bound"
        for d in tables.DIMENSIONS:
            pen = bounds.penrose_bound(d)
            phi = bounds.phi_b3_bound(d)
            hall = bounds.hall_bound(d, args.nodes)
            refs = tables.TABLE3[d]
            for got, ref in zip((pen, phi, hall), refs):
                max_dev = max(max_dev, abs(got - ref) / ref)
            rows.append((d, [pen, phi, hall]))
    csv_lines = [header] + [
        f"{d}," + ",".join(f"{v:.6g}" for v in vals) for d, vals in rows
    ]
    record = RunRecord(
        command="table",
        parameters={"which": args.which, "nodes": args.nodes},
        results={
            "header": header,
            "rows": [[d] + vals for d, vals in rows],
            "max_relative_deviation": max_dev,
        },
        seed=None,
        version=__version__,
        wall_time=time.perf_counter() - t0,
    )
    if args.format == "csv":
        for line in csv_lines:
            print(line)
        print(f"max relative deviation from reference: {max_dev:.3g}", file=sys.stderr)
    elif args.format == "json":
        print(record.to_json())
    else:
        for line in csv_lines:
            print(line)
        print(f"max relative deviation from reference: {max_dev:.3g}")
        print(f"wall time: {record.wall_time:.3f} s")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolperc",
        description="Lower bounds for the critical intensity of the Boolean "
        "model with unit-ball grains.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")

    p = sub.add_parser("bound", help="compute a rigorous lower bound")
    p.add_argument("method", choices=("penrose", "phi-b3", "hall"))
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-9, help="bisection bracket width")
    p.add_argument("--nodes", type=int, default=bounds.DEFAULT_NODES)
    add_format(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("simulate", help="Monte-Carlo lower bound from the reach probability")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--intensity", type=float, required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--runs", type=int, required=True)
    p.add_argument("--seed", type=int, default=None, help="default: random, echoed in the record")
    p.add_argument("--threshold", type=int, default=10**6)
    p.add_argument("--level", type=float, default=0.99)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--engine", choices=("explore", "naive"), default="explore")
    add_format(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("ci", help="Wilson upper confidence limit for a success count")
    p.add_argument("--successes", type=int, required=True)
    p.add_argument("--runs", type=int, required=True)
    p.add_argument("--level", type=float, default=0.99)
    add_format(p)
    p.set_defaults(func=_cmd_ci)

    p = sub.add_parser("table", help="recompute a published table and report deviation")
    p.add_argument("which", choices=("table1", "table3"))
    p.add_argument("--nodes", type=int, default=bounds.DEFAULT_NODES)
    add_format(p)
    p.set_defaults(func=_cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", None) is None and args.subcommand == "simulate":
        args.jobs = _default_jobs()
    try:
        return args.func(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
