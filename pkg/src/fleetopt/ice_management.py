"""Ice-management fleet: escort strategies and drilling-interruption risk."""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import costs
from .catalog import Catalog, IceClass, VesselType
from .ice import RivTable, min_feasible_ice_class, operable
from .scenario import Scenario

COMPLETE = "complete"   # leader + 4 secondary vessels, full protection
ACTIVE = "active"       # leader + 1 secondary, breaks up drifting ice
PASSIVE = "passive"     # single escort, monitoring and emergency support only

_STRATEGY_SIZES = {COMPLETE: 5, ACTIVE: 2, PASSIVE: 1}
_STRATEGY_ORDER = (COMPLETE, ACTIVE, PASSIVE)


@dataclass(frozen=True)
class IceManagementPlan:
    strategy: str | None
    vessels: tuple[VesselType, ...]
    fleet_cost: float               # charter + fuel of the escort group, USD
    interruption_probability: float
    interruption_consequence: float  # USD if the season is interrupted
    risk: float                      # expected interruption loss, USD

    @property
    def total(self) -> float:
        return self.fleet_cost + self.risk

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v in self.vessels:
            out[v.name] = out.get(v.name, 0) + 1
        return out


NO_ICE_PLAN = IceManagementPlan(None, (), 0.0, 0.0, 0.0, 0.0)


def thickness_reduction(h_eq: float) -> float:
    """Ice thickness remaining after active management of ``h_eq`` metres.

    Management effectiveness falls off exponentially with incoming
    thickness, and can never leave more ice than arrived.
    """
    return min(0.0204 * math.exp(1.9304 * h_eq), h_eq)


def managed_thickness(h_eq: float, strategy: str) -> float:
    """Ice thickness reaching the installation under a given strategy."""
    if strategy == ACTIVE:
        return thickness_reduction(h_eq)
    if strategy == PASSIVE:
        return h_eq
    raise ValueError(f"no managed thickness for strategy {strategy!r}")


def interruption_probability(scenario: Scenario, strategy: str) -> float:
    """Season interruption probability under an escort strategy.

    A winter bucket interrupts drilling when the ice reaching the
    installation stays thicker than the tolerable ``h_max``; icebergs add an
    independent contribution.  The complete strategy protects against both.
    """
    if strategy == COMPLETE:
        return 0.0
    f0 = sum(c.probability for c in scenario.ice_conditions
             if managed_thickness(c.equivalent_thickness, strategy) > scenario.h_max)
    return f0 + (1.0 - f0) * scenario.p_iceberg


def interruption_consequence(scenario: Scenario, traditional_total: float) -> float:
    """Season write-off: sunk support-fleet cost plus installation downtime."""
    return traditional_total + scenario.day_rate_installation * scenario.season_length


def escort_cost(vessel: VesselType, scenario: Scenario) -> float:
    return (costs.ice_management_charter_cost(vessel, scenario)
            + costs.ice_management_fuel_cost(scenario))


def optimize_ice_fleet(catalog: Catalog, scenario: Scenario, riv_table: RivTable,
                       traditional_total: float,
                       max_count_per_type: int = 5) -> IceManagementPlan:
    """Cheapest escort group over the three strategies.

    The leader (and a lone passive escort) must carry an ice class strictly
    above the minimum feasible class of the severest listed winter — it must
    be able to free the installation even in an unlikely emergency.
    Secondary vessels need an ice class and a season-operable risk index.
    """
    if not scenario.has_ice_risk():
        return NO_ICE_PLAN

    min_rank = min_feasible_ice_class(scenario, riv_table).rank
    leaders = sorted((v for v in catalog if v.ice_class.rank > min_rank),
                     key=lambda v: (v.charter_rate, v.name))
    secondaries = sorted(
        (v for v in catalog
         if v.ice_class != IceClass.NONE and operable(v.ice_class, scenario, riv_table)),
        key=lambda v: (v.charter_rate, v.name))

    consequence = interruption_consequence(scenario, traditional_total)
    best: IceManagementPlan | None = None
    for strategy in _STRATEGY_ORDER:
        group = _cheapest_group(strategy, leaders, secondaries,
                                scenario, max_count_per_type)
        if group is None:
            continue
        probability = interruption_probability(scenario, strategy)
        plan = IceManagementPlan(
            strategy=strategy,
            vessels=group,
            fleet_cost=sum(escort_cost(v, scenario) for v in group),
            interruption_probability=probability,
            interruption_consequence=consequence,
            risk=probability * consequence,
        )
        if best is None or plan.total < best.total - 1e-9:
            best = plan
    if best is None:
        raise ValueError("no vessel type qualifies for ice management")
    return best


def _cheapest_group(strategy, leaders, secondaries, scenario, max_count):
    size = _STRATEGY_SIZES[strategy]
    if not leaders:
        return None
    leader = leaders[0]
    group = [leader]
    used = {leader.name: 1}
    while len(group) < size:
        pick = next((v for v in secondaries
                     if used.get(v.name, 0) < max_count), None)
        if pick is None:
            return None
        group.append(pick)
        used[pick.name] = used.get(pick.name, 0) + 1
    return tuple(group)
