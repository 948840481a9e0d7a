"""Command-line front end for fleet optimization runs and reports.

Exit codes: 0 success, 2 validation error, 3 no feasible fleet,
4 internal error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import oracle as oracle_mod
from . import report
from .abc_solver import AbcParams
from .catalog import Catalog, load_catalog
from .ice import load_riv_table
from .optimizer import (SENSITIVITY_AXES, evaluate_named_fleet, optimize,
                        sensitivity_run)
from .scenario import Scenario, ScenarioError, load_scenario

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3
EXIT_INTERNAL = 4


class CliError(ValueError):
    """Bad command-line input or configuration."""


def _parse_counts(text: str) -> dict[str, int]:
    counts: dict[str, int] = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, sep, value = item.partition("=")
        if not sep:
            raise CliError(f"bad --counts item {item!r}; expected NAME=COUNT")
        try:
            count = int(value)
        except ValueError:
            raise CliError(f"bad count {value!r} for {name.strip()!r}") from None
        if count < 0:
            raise CliError(f"negative count for {name.strip()!r}")
        counts[name.strip()] = count
    if not counts:
        raise CliError("--counts is empty")
    return counts


def _parse_multipliers(text: str) -> list[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise CliError(f"bad --multipliers: {exc}") from None
    if not values:
        raise CliError("--multipliers is empty")
    return values


def _parse_overrides(pairs: list[str]) -> dict[str, str]:
    overrides: dict[str, str] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise CliError(f"bad --set {pair!r}; expected key.path=value")
        overrides[key] = value
    return overrides


def _load_inputs(args) -> tuple[Catalog, Scenario]:
    overrides = _parse_overrides(args.set or [])
    if getattr(args, "rio_policy", None):
        policy = {"normal": "normal_only",
                  "elevated": "allow_elevated"}[args.rio_policy]
        overrides.setdefault("ice.rio_policy", policy)
    scenario = load_scenario(args.scenario, overrides)
    catalog = load_catalog(args.catalog)
    return catalog, scenario


def _abc_params(args) -> AbcParams:
    return AbcParams(colony_size=args.colony, max_cycles=args.max_cycles, limit=args.limit,
                     seed=args.seed)


def _cmd_optimize(args) -> int:
    catalog, scenario = _load_inputs(args)
    riv = load_riv_table(args.riv_table)
    solution = optimize(catalog, scenario, riv, _abc_params(args),
                        max_count_per_type=args.max_count)
    written = report.write_reports(Path(args.out), solution, scenario)
    if not solution.feasible:
        print("infeasible: no fleet satisfies the scenario constraints",
              file=sys.stderr)
        return EXIT_INFEASIBLE
    print(f"total: {solution.combined_total:,.0f} USD")
    for name, count in sorted(solution.counts_by_name().items()):
        print(f"  {count} x {name}")
    if solution.ice_plan.strategy is not None:
        print(f"ice management: {solution.ice_plan.strategy} "
              f"({sum(solution.ice_plan.counts().values())} escorts)")
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    catalog, scenario = _load_inputs(args)
    riv = load_riv_table(args.riv_table)
    counts = _parse_counts(args.counts)
    solution = evaluate_named_fleet(catalog, scenario, riv, counts)
    doc = report.solution_dict(solution, scenario)
    if solution.feasible:
        doc["breakdown"] = report.breakdown_rows(solution, scenario)
    print(json.dumps(doc, indent=2, sort_keys=True))
    if args.out:
        report.write_reports(Path(args.out), solution, scenario)
    return EXIT_OK if solution.feasible else EXIT_INFEASIBLE


def _cmd_sensitivity(args) -> int:
    catalog, scenario = _load_inputs(args)
    riv = load_riv_table(args.riv_table)
    if args.axis not in SENSITIVITY_AXES:
        raise CliError(f"unknown axis {args.axis!r}; choose from "
                       f"{', '.join(sorted(SENSITIVITY_AXES))}")
    points = sensitivity_run(catalog, scenario, riv, args.axis,
                             _parse_multipliers(args.multipliers),
                             _abc_params(args),
                             max_count_per_type=args.max_count)
    out = Path(args.out) / "sensitivity.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["axis", "multiplier", "total_usd", "change_pct",
                         "fleet"])
        for p in points:
            fleet = "; ".join(f"{n}={c}" for n, c in sorted(p.counts.items()))
            writer.writerow([p.axis, p.multiplier, f"{p.total:.2f}",
                             f"{p.change_pct:.2f}", fleet])
            print(f"{p.axis} x{p.multiplier:g}: {p.total:,.0f} USD "
                  f"({p.change_pct:+.1f}%)")
    print(f"wrote {out}")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    catalog, scenario = _load_inputs(args)
    riv = load_riv_table(args.riv_table)
    if args.types:
        catalog = catalog.subset([catalog.get(t.strip())
                                  for t in args.types.split(",") if t.strip()])
    result = oracle_mod.oracle_optimize(catalog, scenario, riv,
                                        max_count_per_type=args.max_count)
    doc = {
        "feasible": result.feasible,
        "counts": result.counts_by_name(),
        "objective": result.objective,
        "evaluations": result.evaluations,
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fleetopt",
        description="Minimum-cost support fleets for offshore drilling "
                    "in ice waters.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--scenario", required=True,
                       help="scenario TOML file")
        p.add_argument("--catalog", default=None,
                       help="vessel catalog CSV (default: bundled)")
        p.add_argument("--riv-table", default=None,
                       help="ice-regime risk value CSV (default: bundled)")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a scenario value by dotted path")
        if seed:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--colony", type=int, default=40,
                           help="bee colony size (even, >= 4)")
            p.add_argument("--max-cycles", type=int, default=12000)
            p.add_argument("--limit", type=int, default=80,
                           help="failed trials before a scout restarts a source")
        p.add_argument("--max-count", type=int, default=5,
                       help="maximum vessels per type")
        p.add_argument("--threads", type=int, default=1,
                       help="worker-parallelism cap (runs are single-process)")

    p_opt = sub.add_parser("optimize", help="search for the cheapest fleet")
    common(p_opt)
    p_opt.add_argument("--rio-policy", choices=["normal", "elevated"],
                       help="ice-regime admission policy")
    p_opt.add_argument("--out", default=".",
                       help="output directory for reports")
    p_opt.set_defaults(func=_cmd_optimize)

    p_eval = sub.add_parser("evaluate", help="cost a user-specified fleet")
    common(p_eval)
    p_eval.add_argument("--counts", required=True,
                        metavar='"Type1=1,Type10=2"',
                        help="fleet as comma-separated NAME=COUNT pairs")
    p_eval.add_argument("--out", default=None,
                        help="also write report files to this directory")
    p_eval.set_defaults(func=_cmd_evaluate)

    p_sens = sub.add_parser("sensitivity",
                            help="re-optimize under scaled inputs")
    common(p_sens)
    p_sens.add_argument("--axis", required=True,
                        help=f"one of: {', '.join(sorted(SENSITIVITY_AXES))}")
    p_sens.add_argument("--multipliers", required=True,
                        help="comma-separated scale factors, e.g. 0.5,1,2")
    p_sens.add_argument("--out", default=".",
                        help="output directory for sensitivity.csv")
    p_sens.set_defaults(func=_cmd_sensitivity)

    p_orc = sub.add_parser("oracle",
                           help="exhaustive exact optimum on a small catalog")
    common(p_orc, seed=False)
    p_orc.add_argument("--types", default=None,
                       help="comma-separated type names to restrict the search")
    p_orc.set_defaults(func=_cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ScenarioError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
