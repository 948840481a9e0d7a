"""Fleet evaluation: duty assignment, feasibility, and total expected cost.

A candidate fleet is a count per vessel type.  Evaluation finds the cheapest
legal way to run the season with those vessels: one dedicated standby vessel,
a tow-out convoy, an anchor-handling group, and a supply rotation, with
firefighting and oil-recovery readiness assigned for free to capable vessels.
Every vessel must earn its charter through at least one paid duty.

Small fleets are assigned by exhaustive enumeration over per-vessel duty
combinations (identical vessels deduplicated); larger fleets fall back to a
documented greedy assignment and are flagged as heuristic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import costs, risks
from .catalog import VesselType
from .risks import RiskPair, ZERO_RISK
from .scenario import Scenario

INFEASIBLE_PENALTY = 1.0e18

SUPPLY = "supply"
TOWING = "towing"
ANCHOR_HANDLING = "anchor_handling"
STANDBY = "standby"
FIREFIGHTING = "firefighting"
OIL_RECOVERY = "oil_recovery"
ICE_MANAGEMENT = "ice_management"

# Constraint identifiers used in violation reports.
C_SUPPLY_RATE = 1
C_TOWING_POWER = 2
C_ANCHOR_HANDLING = 3
C_STANDBY = 4
C_FIREFIGHTING = 5
C_OIL_RECOVERY = 6
C_ICE_ESCORT = 7


@dataclass(frozen=True)
class Violation:
    constraint: int
    message: str


@dataclass(frozen=True)
class VesselDuties:
    vessel: VesselType
    duties: tuple[str, ...]


@dataclass(frozen=True)
class FleetEvaluation:
    counts: tuple[int, ...]
    feasible: bool
    objective: float                 # USD; penalty constant when infeasible
    violations: tuple[Violation, ...]
    assignment: tuple[VesselDuties, ...]
    exact: bool                      # False when the greedy fallback assigned duties
    charter: float
    fuel: float
    risk: RiskPair
    n_tugs: int
    fire_label: str | None
    supply_rate_total: float
    fuel_tons: float

    @property
    def cost_breakdown(self) -> dict[str, float]:
        return {"charter": self.charter, "fuel": self.fuel,
                "risk_asset": self.risk.asset, "risk_human": self.risk.human}


def check_feasibility(assignment: Sequence[VesselDuties], scenario: Scenario,
                      min_escort_rank: int | None = None,
                      speed_model: costs.SpeedModel = costs.default_cruising_speed,
                      ) -> list[Violation]:
    """Constraint screen for an explicit duty assignment.

    The ice-escort requirement (constraint 7) applies only when the
    assignment includes ice-management vessels; ``min_escort_rank`` is the
    ladder rank such vessels must strictly exceed.
    """
    out: list[Violation] = []

    suppliers = [a.vessel for a in assignment if SUPPLY in a.duties]
    rate = sum(costs.supply_rate(v, scenario, speed_model) for v in suppliers)
    required = scenario.consumption_rate * (1.0 + scenario.supply_redundancy)
    if rate < required:
        out.append(Violation(C_SUPPLY_RATE,
                             f"supply rate {rate:.1f} m2/month below required {required:.1f}"))

    tugs = [a.vessel for a in assignment if TOWING in a.duties]
    if not tugs:
        out.append(Violation(C_TOWING_POWER, "no towing vessel assigned"))
    else:
        need = scenario.towing_power_required(len(tugs))
        weak = [v.name for v in tugs if v.power < need]
        if weak:
            out.append(Violation(
                C_TOWING_POWER,
                f"tugs below {need:.0f} kW for a {len(tugs)}-tug tow: {', '.join(weak)}"))

    handlers = [a.vessel for a in assignment if ANCHOR_HANDLING in a.duties]
    if len(handlers) < 2 or not any(v.power >= scenario.ah_min_power for v in handlers):
        out.append(Violation(
            C_ANCHOR_HANDLING,
            f"need >= 2 anchor handlers with one of >= {scenario.ah_min_power:.0f} kW"))

    standby = [a for a in assignment if STANDBY in a.duties]
    if len(standby) != 1 or len(standby[0].duties) != 1:
        out.append(Violation(C_STANDBY, "exactly one dedicated standby vessel required"))

    fifi = [a.vessel.fifi_class for a in assignment
            if FIREFIGHTING in a.duties and a.vessel.fifi_class >= 1]
    if len(fifi) < 2:
        out.append(Violation(C_FIREFIGHTING, "need >= 2 firefighting-capable vessels"))

    if not any(OIL_RECOVERY in a.duties and a.vessel.oil_recovery for a in assignment):
        out.append(Violation(C_OIL_RECOVERY, "need >= 1 oil-recovery vessel"))

    escorts = [a.vessel for a in assignment if ICE_MANAGEMENT in a.duties]
    if escorts and min_escort_rank is not None:
        if not any(v.ice_class.rank > min_escort_rank for v in escorts):
            out.append(Violation(
                C_ICE_ESCORT,
                "ice-management group lacks a vessel above the minimum feasible ice class"))
    return out


class FleetEvaluator:
    """Caches per-type duty economics and scores fleets given as type counts."""

    def __init__(self, types: Sequence[VesselType], scenario: Scenario,
                 speed_model: costs.SpeedModel = costs.default_cruising_speed,
                 enumeration_bound: int = 14, combo_limit: int = 250_000):
        self.types = tuple(types)
        self.scenario = scenario
        self.speed_model = speed_model
        self.enumeration_bound = enumeration_bound
        self.combo_limit = combo_limit
        self._cache: dict[tuple[int, ...], FleetEvaluation] = {}
        self._obj_cache: dict[tuple[int, ...], float] = {}

        sc = scenario
        self._tow_fuel_by_n: dict[int, float] = {}
        self._ah_fuel = costs.anchor_handling_fuel_cost(sc)
        self._standby_fuel = costs.standby_fuel_cost(sc)
        self._required_rate = sc.consumption_rate * (1.0 + sc.supply_redundancy)
        # Severity losses per DP class, before visit-intensity scaling.
        self._dp_pair: dict[int, RiskPair] = {}
        for dp, freqs in sc.collision_frequency.items():
            pair = ZERO_RISK
            for severity, freq in freqs.items():
                asset, fat = sc.damage_table[severity]
                factor = freq * sc.season_length / 365.0
                pair = pair + RiskPair(factor * asset,
                                       factor * fat * sc.value_of_human_life)
            self._dp_pair[dp] = pair

        self._tow_charter = [costs.towing_charter_cost(v, sc) for v in self.types]
        self._ah_cost = [costs.anchor_handling_charter_cost(v, sc) + self._ah_fuel
                         for v in self.types]
        self._sup_cost = [costs.supply_charter_cost(v, sc)
                          + costs.supply_fuel_cost(v, sc, speed_model)
                          for v in self.types]
        self._sup_rate = [costs.supply_rate(v, sc, speed_model) for v in self.types]
        self._useful = [costs.useful_deck_area(v, sc) for v in self.types]
        self._standby_cost = [costs.standby_charter_cost(v, sc) + self._standby_fuel
                              for v in self.types]
        self._cr = [costs.charter_rate(v, sc) for v in self.types]
        self._sup_fuel = [costs.supply_fuel_cost(v, sc, speed_model)
                          for v in self.types]
        self._tow_risk_by_n: dict[int, RiskPair] = {}
        self._fire_by_label = {label: risks.fire_risk(sc, classes)
                               for label, classes in
                               (("a", [3, 3]), ("b", [3, 2]), ("c", [1, 1]))}
        self._options = [self._duty_options(i) for i in range(len(self.types))]
        self._dp_total = {dp: pair.total for dp, pair in self._dp_pair.items()}
        self._per_type_cache: dict[tuple[int, int], list] = {}

    # -- per-type precomputation ------------------------------------------

    def _duty_options(self, i: int):
        """Paid-duty sets one vessel of type ``i`` may take.

        Every working (non-standby) vessel runs the supply shuttle for the
        whole drilling period — a chartered vessel is never idle — so supply
        is part of every option and towing / anchor handling are the electives.
        """
        v = self.types[i]
        extras = []
        if v.towing:
            extras.append(TOWING)
        if v.anchor_handling:
            extras.append(ANCHOR_HANDLING)
        mandatory = (SUPPLY,) if v.supply else ()
        options = []
        for r in range(0, len(extras) + 1):
            for combo in itertools.combinations(extras, r):
                duties = combo + mandatory
                if not duties:
                    continue
                fixed = 0.0
                if TOWING in duties:
                    fixed += self._tow_charter[i]
                if ANCHOR_HANDLING in duties:
                    fixed += self._ah_cost[i]
                if SUPPLY in duties:
                    fixed += self._sup_cost[i]
                options.append((fixed, duties))
        options.sort(key=lambda o: o[0])
        return options

    def tow_fuel(self, n_tugs: int) -> float:
        if n_tugs not in self._tow_fuel_by_n:
            self._tow_fuel_by_n[n_tugs] = costs.towing_fuel_cost(self.scenario, n_tugs)
        return self._tow_fuel_by_n[n_tugs]

    def tow_risk(self, n_tugs: int) -> RiskPair:
        if n_tugs not in self._tow_risk_by_n:
            self._tow_risk_by_n[n_tugs] = risks.towing_risk(self.scenario, n_tugs)
        return self._tow_risk_by_n[n_tugs]

    def _supply_risk_fast(self, dp_counts: Sequence[int], useful_sum: float) -> RiskPair:
        """Supply collision risk from supplier DP mix and total useful deck.

        Equivalent to :func:`risks.supply_risk`; the group-mean formulation
        reduces to ``7 * demand / (60 * useful_sum)`` times the summed
        per-DP severity losses.
        """
        factor = 7.0 * self.scenario.consumption_rate / (
            60.0 * self.scenario.n_spw_ref / 2.0 * useful_sum)
        pair = ZERO_RISK
        for dp, count in enumerate(dp_counts):
            if count:
                pair = pair + self._dp_pair[dp].scaled(count)
        return pair.scaled(factor)

    def _supply_risk_total(self, dp_counts: Sequence[int], useful_sum: float) -> float:
        """Scalar twin of :meth:`_supply_risk_fast` for search inner loops."""
        factor = 7.0 * self.scenario.consumption_rate / (
            60.0 * self.scenario.n_spw_ref / 2.0 * useful_sum)
        total = 0.0
        for dp, count in enumerate(dp_counts):
            if count:
                total += self._dp_total[dp] * count
        return total * factor

    # -- public API --------------------------------------------------------

    def evaluate(self, counts: Sequence[int]) -> FleetEvaluation:
        key = tuple(int(c) for c in counts)
        if len(key) != len(self.types):
            raise ValueError("counts length does not match the catalog")
        if any(c < 0 for c in key):
            raise ValueError("vessel counts must be non-negative")
        hit = self._cache.get(key)
        if hit is None:
            hit = self._evaluate_uncached(key)
            self._cache[key] = hit
        return hit

    def objective(self, counts: Sequence[int]) -> float:
        """Season cost of a fleet, skipping assignment-report construction.

        Search loops only need the scalar; the full :class:`FleetEvaluation`
        (duty roster, violations, cost split) is built lazily by
        :meth:`evaluate` when a caller asks for it.
        """
        key = tuple(int(c) for c in counts)
        hit = self._obj_cache.get(key)
        if hit is None:
            full = self._cache.get(key)
            if full is not None:
                hit = full.objective
            else:
                solved = self._solve(key, need_state=False)
                hit = INFEASIBLE_PENALTY if solved is None else solved[0]
            self._obj_cache[key] = hit
        return hit

    # -- shared pieces ------------------------------------------------------

    def _fleet_checks(self, key: tuple[int, ...], standby_idx: int | None):
        """Fire scenario and oil-recovery availability outside the standby vessel."""
        fifi = []
        oil = False
        for i, count in enumerate(key):
            n = count - (1 if i == standby_idx else 0)
            if n <= 0:
                continue
            if self.types[i].fifi_class >= 1:
                fifi.extend([self.types[i].fifi_class] * n)
            if self.types[i].oil_recovery:
                oil = True
        return risks.fire_scenario(fifi), oil, fifi

    def _infeasible(self, key: tuple[int, ...], exact: bool) -> FleetEvaluation:
        violations = self._diagnose(key)
        return FleetEvaluation(
            counts=key, feasible=False, objective=INFEASIBLE_PENALTY,
            violations=tuple(violations), assignment=(), exact=exact,
            charter=0.0, fuel=0.0, risk=ZERO_RISK, n_tugs=0, fire_label=None,
            supply_rate_total=0.0, fuel_tons=0.0)

    def _diagnose(self, key: tuple[int, ...]) -> list[Violation]:
        """Best-effort violation report for a fleet with no legal assignment."""
        out = []
        n_total = sum(key)
        max_rate = sum(self._sup_rate[i] * key[i] for i in range(len(key))
                       if self.types[i].supply)
        if max_rate < self._required_rate:
            out.append(Violation(C_SUPPLY_RATE,
                                 f"even with all vessels supplying, rate {max_rate:.1f} "
                                 f"m2/month is below required {self._required_rate:.1f}"))
        tugs = [i for i, c in enumerate(key) if c and self.types[i].towing]
        if not tugs:
            out.append(Violation(C_TOWING_POWER, "no towing-capable vessel"))
        elif all(self.types[i].power < self.scenario.towing_power_required(1)
                 for i in tugs) and sum(key[i] for i in tugs) < 2:
            out.append(Violation(C_TOWING_POWER,
                                 "towing vessels too weak for any legal tow"))
        handlers = [i for i, c in enumerate(key) if c and self.types[i].anchor_handling]
        if (sum(key[i] for i in handlers) < 2
                or not any(self.types[i].power >= self.scenario.ah_min_power
                           for i in handlers)):
            out.append(Violation(C_ANCHOR_HANDLING,
                                 "no qualifying anchor-handling pair"))
        standby_ok = any(c and self.types[i].standby and n_total >= 2
                         for i, c in enumerate(key))
        if not standby_ok:
            out.append(Violation(C_STANDBY, "no vessel available for dedicated standby"))
        best_fifi, best_oil = None, False
        for standby_idx in ([i for i, c in enumerate(key)
                             if c and self.types[i].standby] or [None]):
            label, oil, _ = self._fleet_checks(key, standby_idx)
            if label is not None:
                best_fifi = label
            best_oil = best_oil or oil
        if best_fifi is None:
            out.append(Violation(C_FIREFIGHTING, "fewer than two Fi-Fi vessels"))
        if not best_oil:
            out.append(Violation(C_OIL_RECOVERY, "no oil-recovery vessel"))
        if not out:
            out.append(Violation(C_SUPPLY_RATE,
                                 "duties cannot be combined into a legal assignment"))
        return out

    # -- exact enumeration ---------------------------------------------------

    def _evaluate_uncached(self, key: tuple[int, ...]) -> FleetEvaluation:
        exact = self._use_exact(key)
        solved = self._solve(key, exact)
        if solved is None:
            return self._infeasible(key, exact=exact)
        return self._finish(key, solved, exact=exact)

    def _use_exact(self, key: tuple[int, ...]) -> bool:
        n_total = sum(key)
        if n_total == 0:
            return True
        if n_total > self.enumeration_bound:
            return False
        size = 1
        for i, c in enumerate(key):
            if c:
                size *= _multiset_count(len(self._options[i]), c)
                if size > self.combo_limit:
                    return False
        return True

    def _solve(self, key: tuple[int, ...], exact: bool | None = None,
               need_state: bool = True):
        """Cheapest legal assignment as ``(total, state)``, or None."""
        if exact is None:
            exact = self._use_exact(key)
        if sum(key) == 0:
            return None
        if exact:
            return self._solve_exact(key)
        return self._solve_greedy(key, need_state)

    def _solve_exact(self, key: tuple[int, ...]):
        # A feasible heuristic assignment seeds the branch-and-bound cutoff;
        # the exact scan then only explores branches that can still beat it.
        best: tuple[float, object] | None = self._solve_greedy(key)
        standby_types = [i for i, c in enumerate(key) if c and self.types[i].standby]
        for standby_idx in standby_types:
            fire_label, oil_ok, fifi = self._fleet_checks(key, standby_idx)
            if fire_label is None or not oil_ok:
                continue
            fire = self._fire_by_label[fire_label]
            base = self._standby_cost[standby_idx] + fire.total
            found = self._search_assignments(key, standby_idx, base,
                                             None if best is None else best[0])
            if found is not None and (best is None or found[0] < best[0]):
                best = (found[0], (standby_idx, fire_label, fire) + found[1:])
        return best

    def _search_assignments(self, key, standby_idx, base_cost, cutoff):
        """Depth-first scan over per-type duty combinations.

        Every working vessel supplies, so the supply-side aggregates (rate,
        useful deck, DP mix) are fixed by the fleet and the standby pick;
        only the towing and anchor-handling group memberships vary.  Returns
        the cheapest aggregate below ``cutoff`` or None.
        """
        active = []
        rate = useful = 0.0
        dp_counts = [0, 0, 0, 0]
        for i, count in enumerate(key):
            n = count - (1 if i == standby_idx else 0)
            if n > 0:
                if not self.types[i].supply:
                    return None
                active.append((i, self._per_type(i, n)))
                rate += n * self._sup_rate[i]
                useful += n * self._useful[i]
                dp_counts[self.types[i].dp_class] += n
        if rate < self._required_rate - 1e-9 or useful <= 0:
            return None
        base_cost += self._supply_risk_total(dp_counts, useful)
        # Cheapest possible remaining fixed cost from each depth onward, for
        # cutoff pruning before a branch is expanded.
        suffix_min = [0.0] * (len(active) + 1)
        for d in range(len(active) - 1, -1, -1):
            suffix_min[d] = suffix_min[d + 1] + active[d][1][0][0]
        best_cost = cutoff
        best_state = None
        n_active = len(active)

        def dfs(depth, fixed, n_tow, min_tow_p, n_ah, max_ah_p, picks):
            nonlocal best_cost, best_state
            if (best_cost is not None
                    and base_cost + fixed + suffix_min[depth] >= best_cost):
                return
            if depth == n_active:
                total = self._score_tow_ah(base_cost + fixed, n_tow, min_tow_p,
                                           n_ah, max_ah_p)
                if total is not None and (best_cost is None or total < best_cost):
                    best_cost = total
                    best_state = tuple(picks)
                return
            i, per_type = active[depth]
            power = self.types[i].power
            tail_min = suffix_min[depth + 1]
            for fixed_t, tow_t, ah_t, _sup_t, chosen in per_type:
                if (best_cost is not None
                        and base_cost + fixed + fixed_t + tail_min >= best_cost):
                    break  # options sorted by cost
                picks.append((i, chosen))
                dfs(depth + 1, fixed + fixed_t,
                    n_tow + tow_t, min(min_tow_p, power) if tow_t else min_tow_p,
                    n_ah + ah_t, max(max_ah_p, power) if ah_t else max_ah_p,
                    picks)
                picks.pop()

        dfs(0, 0.0, 0, float("inf"), 0, 0.0, [])
        if best_state is None:
            return None
        return (best_cost, best_state)

    def _score_tow_ah(self, fixed, n_tow, min_tow_p, n_ah, max_ah_p):
        """Group-dependent towing cost and constraints on a complete branch."""
        if n_tow < 1 or min_tow_p < self.scenario.towing_power_required(n_tow):
            return None
        if n_ah < 2 or max_ah_p < self.scenario.ah_min_power:
            return None
        return (fixed + n_tow * self.tow_fuel(n_tow)
                + self.tow_risk(n_tow).total)

    def _per_type(self, i: int, n: int):
        """All duty-option multisets for ``n`` vessels of type ``i``, sorted."""
        hit = self._per_type_cache.get((i, n))
        if hit is None:
            per_type = []
            for chosen in itertools.combinations_with_replacement(self._options[i], n):
                fixed = sum(opt[0] for opt in chosen)
                n_tow = sum(1 for opt in chosen if TOWING in opt[1])
                n_ah = sum(1 for opt in chosen if ANCHOR_HANDLING in opt[1])
                n_sup = sum(1 for opt in chosen if SUPPLY in opt[1])
                per_type.append((fixed, n_tow, n_ah, n_sup, chosen))
            per_type.sort(key=lambda t: t[0])
            hit = self._per_type_cache[(i, n)] = per_type
        return hit

    def _solve_greedy(self, key: tuple[int, ...], need_state: bool = True):
        """Documented heuristic assignment for fleets beyond the enumeration bound.

        Standby goes to the cheapest capable vessel; every other vessel
        supplies; the towing group is the cheapest set of tugs that meets the
        per-tug power rule (all group sizes scanned); anchor handling uses
        the cheapest qualifying pair.
        """
        standby_types = [i for i, c in enumerate(key) if c and self.types[i].standby]
        if not standby_types or sum(key) < 2:
            return None
        standby_idx = min(standby_types, key=lambda i: self._standby_cost[i])
        fire_label, oil_ok, fifi = self._fleet_checks(key, standby_idx)
        if fire_label is None or not oil_ok:
            return None

        rest: list[int] = []       # type index per non-standby vessel
        for i, count in enumerate(key):
            rest.extend([i] * (count - (1 if i == standby_idx else 0)))
        if any(not self.types[i].supply for i in rest):
            return None

        rate = sum(self._sup_rate[i] for i in rest)
        if rate < self._required_rate - 1e-9:
            return None

        # cheapest towing group: for each size n, take the n cheapest
        # charters among tugs strong enough for that group size.
        candidates = sorted((i for i in rest if self.types[i].towing),
                            key=lambda i: self._tow_charter[i])
        best_group: list[int] | None = None
        best_tow_cost = float("inf")
        for n in range(1, len(candidates) + 1):
            need = self.scenario.towing_power_required(n)
            strong = [i for i in candidates if self.types[i].power >= need]
            if len(strong) < n:
                continue
            group = strong[:n]
            cost = (sum(self._tow_charter[i] for i in group)
                    + n * self.tow_fuel(n)
                    + self.tow_risk(n).total)
            if cost < best_tow_cost:
                best_tow_cost, best_group = cost, group
        if best_group is None:
            return None

        handlers = [i for i in rest if self.types[i].anchor_handling]
        big = [i for i in handlers if self.types[i].power >= self.scenario.ah_min_power]
        if not big or len(handlers) < 2:
            return None
        first = min(big, key=lambda i: self._ah_cost[i])
        others = list(handlers)
        others.remove(first)
        second = min(others, key=lambda i: self._ah_cost[i])

        n_tow = len(best_group)
        fixed = self._standby_cost[standby_idx]
        useful = 0.0
        dp_counts = [0, 0, 0, 0]
        for i in rest:
            fixed += self._sup_cost[i]
            useful += self._useful[i]
            dp_counts[self.types[i].dp_class] += 1
        fixed += sum(self._tow_charter[i] for i in best_group)
        fixed += self._ah_cost[first] + self._ah_cost[second]
        fire = self._fire_by_label[fire_label]
        total = (fixed + fire.total + n_tow * self.tow_fuel(n_tow)
                 + self.tow_risk(n_tow).total
                 + self._supply_risk_total(dp_counts, useful))
        if not need_state:
            return (total, None)

        duties: list[tuple[int, set[str]]] = [(i, {SUPPLY}) for i in rest]
        tug_pool = list(best_group)
        ah_pool = [first, second]
        for i, d in duties:
            if i in tug_pool:
                d.add(TOWING)
                tug_pool.remove(i)
            if i in ah_pool:
                d.add(ANCHOR_HANDLING)
                ah_pool.remove(i)
        picks = _instances_to_picks(duties)
        return (total, (standby_idx, fire_label, fire, tuple(picks)))

    # -- result construction ---------------------------------------------------

    def _finish(self, key: tuple[int, ...], best, exact: bool) -> FleetEvaluation:
        total, state = best
        standby_idx, fire_label, fire_pair, picks = state
        assignment = [VesselDuties(self.types[standby_idx], (STANDBY,))]
        n_tow = n_sup = 0
        useful = rate = 0.0
        dp_counts = [0, 0, 0, 0]
        charter = self._cr[standby_idx] * self.scenario.season_length
        fuel = self._standby_fuel
        for i, chosen in picks:
            v = self.types[i]
            cr = self._cr[i]
            for _, combo in (chosen if isinstance(chosen, tuple) else (chosen,)):
                duty_list = list(combo)
                if TOWING in combo:
                    n_tow += 1
                    charter += cr * self.scenario.t_tow
                if ANCHOR_HANDLING in combo:
                    charter += cr * self.scenario.t_ah
                    fuel += self._ah_fuel
                if SUPPLY in combo:
                    n_sup += 1
                    rate += self._sup_rate[i]
                    useful += self._useful[i]
                    dp_counts[v.dp_class] += 1
                    charter += cr * self.scenario.t_op
                    fuel += self._sup_fuel[i]
                if v.fifi_class >= 1:
                    duty_list.append(FIREFIGHTING)
                if v.oil_recovery:
                    duty_list.append(OIL_RECOVERY)
                assignment.append(VesselDuties(v, tuple(duty_list)))
        fuel += n_tow * self.tow_fuel(n_tow)
        risk = fire_pair + self.tow_risk(n_tow)
        if useful > 0:
            risk = risk + self._supply_risk_fast(dp_counts, useful)
        return FleetEvaluation(
            counts=key, feasible=True, objective=total,
            violations=(), assignment=tuple(assignment), exact=exact,
            charter=charter, fuel=fuel, risk=risk, n_tugs=n_tow,
            fire_label=fire_label, supply_rate_total=rate,
            fuel_tons=fuel / self.scenario.fuel_price)


def _multiset_count(n_options: int, k: int) -> int:
    import math
    return math.comb(n_options + k - 1, k)


def _instances_to_picks(duties):
    """Convert per-instance duty sets into the (type, chosen-options) layout."""
    picks = []
    for i, d in duties:
        combo = tuple(sorted(d))
        picks.append((i, ((0.0, combo),)))
    return picks
