"""Solution reports: JSON summary, cost breakdown, indicator table, radar chart."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from . import costs
from .evaluator import (ANCHOR_HANDLING, FIREFIGHTING, ICE_MANAGEMENT,
                        STANDBY, SUPPLY, TOWING)
from .ice_management import escort_cost
from .optimizer import FullSolution, kpi_report
from .risks import RiskPair
from .scenario import Scenario

KPI_ORDER = ("supply", "dp", "ice_class", "fleet_age", "environmental",
             "ice_management", "towing", "firefighting")


def solution_dict(solution: FullSolution, scenario: Scenario) -> dict:
    stage1 = solution.stage1
    doc = {
        "scenario": solution.scenario_name,
        "seed": solution.seed,
        "feasible": stage1.feasible,
        "fleet": solution.counts_by_name(),
        "assignment": [
            {"vessel": a.vessel.name, "duties": list(a.duties)}
            for a in stage1.assignment
        ],
        "costs": {
            "stage1_total": stage1.objective,
            "charter": stage1.charter,
            "fuel": stage1.fuel,
            "risk_asset": stage1.risk.asset,
            "risk_human": stage1.risk.human,
            "combined_total": solution.combined_total,
        },
        "duty_assignment_exact": stage1.exact,
        "violations": [
            {"constraint": v.constraint, "message": v.message}
            for v in stage1.violations
        ],
        "ice_management": None,
        "evaluations": solution.abc.evaluations,
        "cycles": solution.abc.cycles,
    }
    if solution.ice_plan.strategy is not None:
        plan = solution.ice_plan
        doc["ice_management"] = {
            "strategy": plan.strategy,
            "fleet": plan.counts(),
            "fleet_cost": plan.fleet_cost,
            "interruption_probability": plan.interruption_probability,
            "interruption_consequence": plan.interruption_consequence,
            "risk": plan.risk,
            "total": plan.total,
        }
    if stage1.feasible:
        kpis = kpi_report(solution, scenario)
        doc["kpi"] = {k: kpis[k] for k in KPI_ORDER}
    return doc


def write_solution_json(path: Path, solution: FullSolution, scenario: Scenario) -> None:
    doc = solution_dict(solution, scenario)
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")


def breakdown_rows(solution: FullSolution, scenario: Scenario) -> list[dict]:
    """Per vessel and duty: charter, fuel, and allocated risk shares (USD)."""
    stage1 = solution.stage1
    rows: list[dict] = []
    n_tugs = max(stage1.n_tugs, 1)
    suppliers = [a for a in stage1.assignment if SUPPLY in a.duties]
    # Duty-group risks are aggregated in the evaluation; recompute the towing
    # and fire terms and attribute the remainder to the supply group, spread
    # equally within each group.
    from . import risks as _risks
    towing_pair = _risks.towing_risk(scenario, stage1.n_tugs) if stage1.n_tugs else RiskPair(0, 0)
    firefighters = [a for a in stage1.assignment if FIREFIGHTING in a.duties]
    fire_pair = (_risks.fire_risk(scenario,
                                  [a.vessel.fifi_class for a in firefighters])
                 if stage1.fire_label else RiskPair(0, 0))
    supply_pair = stage1.risk + RiskPair(-towing_pair.asset - fire_pair.asset,
                                         -towing_pair.human - fire_pair.human)

    def row(vessel, duty, charter, fuel, risk: RiskPair):
        rows.append({"vessel": vessel.name, "duty": duty,
                     "charter_usd": round(charter, 2), "fuel_usd": round(fuel, 2),
                     "risk_asset_usd": round(risk.asset, 2),
                     "risk_human_usd": round(risk.human, 2)})

    for a in stage1.assignment:
        v = a.vessel
        cr = costs.charter_rate(v, scenario)
        for duty in a.duties:
            if duty == STANDBY:
                row(v, duty, cr * scenario.season_length,
                    costs.standby_fuel_cost(scenario), RiskPair(0, 0))
            elif duty == TOWING:
                row(v, duty, cr * scenario.t_tow,
                    costs.towing_fuel_cost(scenario, stage1.n_tugs),
                    towing_pair.scaled(1.0 / n_tugs))
            elif duty == ANCHOR_HANDLING:
                row(v, duty, cr * scenario.t_ah,
                    costs.anchor_handling_fuel_cost(scenario), RiskPair(0, 0))
            elif duty == SUPPLY:
                row(v, duty, cr * scenario.t_op,
                    costs.supply_fuel_cost(v, scenario),
                    supply_pair.scaled(1.0 / max(len(suppliers), 1)))
            elif duty == FIREFIGHTING:
                row(v, duty, 0.0, 0.0,
                    fire_pair.scaled(1.0 / max(len(firefighters), 1)))
            else:  # oil recovery and other free readiness duties
                row(v, duty, 0.0, 0.0, RiskPair(0, 0))
    for v in solution.ice_plan.vessels:
        fuel = costs.ice_management_fuel_cost(scenario)
        row(v, ICE_MANAGEMENT, escort_cost(v, scenario) - fuel, fuel,
            RiskPair(0, 0))
    if solution.ice_plan.strategy is not None:
        rows.append({"vessel": "(fleet)", "duty": "ice_interruption_risk",
                     "charter_usd": 0.0, "fuel_usd": 0.0,
                     "risk_asset_usd": round(solution.ice_plan.risk, 2),
                     "risk_human_usd": 0.0})
    return rows


def write_breakdown_csv(path: Path, solution: FullSolution, scenario: Scenario) -> None:
    rows = breakdown_rows(solution, scenario)
    fields = ["vessel", "duty", "charter_usd", "fuel_usd",
              "risk_asset_usd", "risk_human_usd"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)


def write_kpi_csv(path: Path, solution: FullSolution, scenario: Scenario) -> None:
    kpis = kpi_report(solution, scenario)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["indicator", "value"])
        for name in KPI_ORDER:
            writer.writerow([name, f"{kpis[name]:.4f}"])


def write_trace_csv(path: Path, solution: FullSolution) -> None:
    names = [t.name for t in solution.types]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "cycle", "objective_million_usd"] + names)
        for step, point in enumerate(solution.abc.trace, start=1):
            writer.writerow([step, point.cycle, f"{point.objective / 1e6:.6f}"]
                            + list(point.counts))


def spider_svg(kpis: dict[str, float], title: str = "") -> str:
    """Radar chart of the indicator panel as a standalone SVG document."""
    size, margin = 480, 70
    center = size / 2.0
    radius = center - margin
    axes = list(KPI_ORDER)
    n = len(axes)

    def point(i: int, value: float) -> tuple[float, float]:
        angle = -math.pi / 2.0 + 2.0 * math.pi * i / n
        r = radius * max(0.0, min(value, 100.0)) / 100.0
        return (center + r * math.cos(angle), center + r * math.sin(angle))

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
             f'height="{size}" viewBox="0 0 {size} {size}">',
             f'<rect width="{size}" height="{size}" fill="white"/>']
    if title:
        parts.append(f'<text x="{center:.1f}" y="24" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="14">{title}</text>')
    for ring in (25, 50, 75, 100):
        ring_pts = " ".join(f"{x:.1f},{y:.1f}" for x, y in
                            (point(i, ring) for i in range(n)))
        parts.append(f'<polygon points="{ring_pts}" fill="none" '
                     f'stroke="#cccccc" stroke-width="1"/>')
    for i, name in enumerate(axes):
        x, y = point(i, 100.0)
        parts.append(f'<line x1="{center:.1f}" y1="{center:.1f}" '
                     f'x2="{x:.1f}" y2="{y:.1f}" stroke="#cccccc" stroke-width="1"/>')
        lx, ly = point(i, 118.0)
        anchor = "middle"
        if lx < center - 5:
            anchor = "end"
        elif lx > center + 5:
            anchor = "start"
        label = f"{name} ({kpis[name]:.0f})"
        parts.append(f'<text x="{lx:.1f}" y="{ly:.1f}" text-anchor="{anchor}" '
                     f'font-family="sans-serif" font-size="11">{label}</text>')
    value_pts = " ".join(f"{x:.1f},{y:.1f}" for x, y in
                         (point(i, kpis[name]) for i, name in enumerate(axes)))
    parts.append(f'<polygon points="{value_pts}" fill="#1f77b4" '
                 f'fill-opacity="0.35" stroke="#1f77b4" stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_spider_svg(path: Path, solution: FullSolution, scenario: Scenario) -> None:
    kpis = kpi_report(solution, scenario)
    path.write_text(spider_svg(kpis, title=solution.scenario_name),
                    encoding="utf-8")


def write_reports(outdir: Path, solution: FullSolution, scenario: Scenario) -> list[Path]:
    outdir.mkdir(parents=True, exist_ok=True)
    written = [outdir / "solution.json"]
    write_solution_json(written[0], solution, scenario)
    if solution.feasible:
        for name, writer in (("breakdown.csv", write_breakdown_csv),
                             ("kpi.csv", write_kpi_csv),
                             ("spider.svg", write_spider_svg)):
            path = outdir / name
            writer(path, solution, scenario)
            written.append(path)
    trace_path = outdir / "trace.csv"
    write_trace_csv(trace_path, solution)
    written.append(trace_path)
    return written
