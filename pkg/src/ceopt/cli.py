"""Command-line front end.

  ceopt run    --scenario S.json --out trace.csv [--seed N] [--no-filter]
               [--max-rounds N] [--tolerance X]
  ceopt report --scenario S.json
  ceopt plot   --trace trace.csv [--trace other.csv ...] --out plot.svg

`run` writes the CSV trace to --out and a machine-readable summary next to it
(<out stem>.summary.json). Exit codes: 0 ok, 2 malformed input file,
3 invalid scenario configuration, 4 empty trace given to plot.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from ceopt import _kernels
from ceopt.analysis import theory_report
from ceopt.errors import (
    ConfigurationError,
    NonUniqueOptimumError,
    ScenarioFormatError,
    SingularProjectionError,
)
from ceopt.netsim import Scenario, run_simulation, solve_honest_optimum
from ceopt.scenariofile import load_scenario
from ceopt.svgplot import plot_traces
from ceopt.traceio import read_trace, write_trace

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_CONFIG = 3
EXIT_EMPTY_TRACE = 4


def _apply_overrides(scenario: Scenario, args) -> Scenario:
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.max_rounds is not None:
        changes["max_rounds"] = args.max_rounds
    if args.tolerance is not None:
        changes["tolerance"] = args.tolerance
    if args.no_filter:
        changes["filter_enabled"] = False
    return dataclasses.replace(scenario, **changes) if changes else scenario


def cmd_run(args) -> int:
    scenario = _apply_overrides(load_scenario(args.scenario), args)
    scenario.validate()
    trace = run_simulation(scenario, workers=args.workers)
    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    write_trace(trace, out_path)

    try:
        x_star = solve_honest_optimum(scenario.costs).tolist()
    except NonUniqueOptimumError:
        x_star = None
    report = theory_report(scenario.costs, scenario.n, scenario.f)
    final = trace[-1]
    summary = {
        "scenario": {
            "path": str(args.scenario),
            "n": scenario.n,
            "f": scenario.f,
            "eta": scenario.eta,
            "seed": scenario.seed,
            "filter_enabled": scenario.filter_enabled,
            "max_rounds": scenario.max_rounds,
            "tolerance": scenario.tolerance,
        },
        "backend": _kernels.BACKEND,
        "rounds_executed": final.round,
        "final_v": final.v_t,
        "x_star": x_star,
        "theory": report.to_dict(eta=scenario.eta),
    }
    summary_path = out_path.with_suffix(".summary.json")
    summary_path.write_text(json.dumps(summary, indent=2) + "\n")
    v_text = "n/a" if final.v_t is None else f"{final.v_t:.6e}"
    print(f"ran {final.round} rounds; final error {v_text}")
    print(f"trace:   {out_path}")
    print(f"summary: {summary_path}")
    return EXIT_OK


def cmd_report(args) -> int:
    scenario = load_scenario(args.scenario)
    scenario.validate()
    report = theory_report(scenario.costs, scenario.n, scenario.f)
    eta = scenario.eta
    print(f"n = {report.n}, f = {report.f}, |H| = {report.h_size}")
    print(f"mu (Lipschitz smoothness over honest costs) = {report.mu!r}")
    print(f"lambda (strong convexity of the average)    = {report.lam!r}")
    print(f"alpha (fault-tolerance margin)              = {report.alpha!r}")
    print(f"beta                                        = {report.beta!r}")
    print(f"eta_max (= beta / 2|H|^3)                   = {report.eta_max!r}")
    print(f"eta_opt (= beta / 4|H|^3)                   = {report.eta_opt!r}")
    if report.redundancy_holds is None:
        print("2f-redundancy: not checked (instance too large for brute force)")
    else:
        print(f"2f-redundancy: {'holds' if report.redundancy_holds else 'VIOLATED'}")
        if not report.redundancy_holds:
            print(
                "note: 2f-redundancy is necessary for exact fault-tolerance;"
                " no algorithm can recover the honest optimum exactly on this instance"
            )
    ok = report.eta_satisfies_bound(eta)
    print(f"configured eta = {eta!r}: 2|H|^3*eta < beta is {'satisfied' if ok else 'NOT satisfied'}")
    print(f"rho(eta) = {report.rho_at(eta)!r}")
    if report.alpha <= 0:
        print(
            "warning: alpha <= 0, the sufficient condition for guaranteed geometric"
            " convergence is not met (the run may still converge empirically)"
        )
    return EXIT_OK


def cmd_plot(args) -> int:
    series = []
    total_points = 0
    for trace_path in args.trace:
        data = read_trace(trace_path)
        total_points += len(data.rounds)
        series.append((Path(trace_path).stem, data.rounds, data.v_t))
    if total_points == 0:
        print("error: no rounds found in the given trace(s)", file=sys.stderr)
        return EXIT_EMPTY_TRACE
    plot_traces(series, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ceopt",
        description="Byzantine fault-tolerant decentralized optimization simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="simulate a scenario; write trace CSV + summary JSON")
    run_p.add_argument("--scenario", required=True, help="scenario JSON file")
    run_p.add_argument("--out", required=True, help="output trace CSV path")
    run_p.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    run_p.add_argument("--no-filter", action="store_true", help="disable the elimination filter")
    run_p.add_argument("--max-rounds", type=int, default=None, help="override the round cap")
    run_p.add_argument("--tolerance", type=float, default=None, help="override the stop tolerance")
    run_p.add_argument("--workers", type=int, default=1, help=argparse.SUPPRESS)
    run_p.set_defaults(func=cmd_run)

    report_p = sub.add_parser("report", help="print redundancy and convergence-theory constants")
    report_p.add_argument("--scenario", required=True, help="scenario JSON file")
    report_p.set_defaults(func=cmd_report)

    plot_p = sub.add_parser("plot", help="render trace(s) as a static SVG chart")
    plot_p.add_argument(
        "--trace", action="append", required=True, help="trace CSV (repeat to overlay)"
    )
    plot_p.add_argument("--out", required=True, help="output SVG path")
    plot_p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (ConfigurationError, SingularProjectionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
