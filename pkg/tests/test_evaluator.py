import pytest

from fleetopt.evaluator import (ANCHOR_HANDLING, C_ANCHOR_HANDLING,
                                C_FIREFIGHTING, C_ICE_ESCORT, C_OIL_RECOVERY,
                                C_STANDBY, C_SUPPLY_RATE, C_TOWING_POWER,
                                INFEASIBLE_PENALTY, STANDBY, SUPPLY, TOWING,
                                VesselDuties, check_feasibility)
from fleetopt.optimizer import make_evaluator


@pytest.fixture(scope="module")
def ev1(catalog, riv_table, case1):
    return make_evaluator(catalog, case1, riv_table)


def counts_for(ev, mapping):
    by_name = {t.name.split()[1]: i for i, t in enumerate(ev.types)}
    vec = [0] * len(ev.types)
    for short, count in mapping.items():
        vec[by_name[short]] = count
    return vec


def test_reference_fleet_objective(ev1):
    # 1x Type 1, 2x Type 10, 2x Type 11 (frozen from an independent
    # spreadsheet of the charter/fuel/risk formulas)
    e = ev1.evaluate(counts_for(ev1, {"1": 1, "10": 2, "11": 2}))
    assert e.feasible and e.exact
    assert e.objective == pytest.approx(23_890_666.78, abs=1.0)
    assert e.charter == pytest.approx(19_772_066.25, abs=1.0)
    assert e.objective == pytest.approx(e.charter + e.fuel + e.risk.total,
                                        rel=1e-9)


def test_reference_fleet_assignment(ev1):
    e = ev1.evaluate(counts_for(ev1, {"1": 1, "10": 2, "11": 2}))
    duties = {}
    for a in e.assignment:
        duties.setdefault(a.vessel.name.split()[1], []).append(set(a.duties))
    assert duties["1"] == [{STANDBY}]
    for d in duties["10"]:
        assert {TOWING, ANCHOR_HANDLING, SUPPLY} <= d
    for d in duties["11"]:
        assert SUPPLY in d and TOWING not in d
    assert e.n_tugs == 2
    assert e.fire_label == "a"


def test_every_working_vessel_supplies(ev1):
    e = ev1.evaluate(counts_for(ev1, {"1": 2, "7": 2, "10": 2}))
    assert e.feasible
    for a in e.assignment:
        assert (STANDBY in a.duties) != (SUPPLY in a.duties)


def test_empty_fleet_infeasible(ev1):
    e = ev1.evaluate([0] * len(ev1.types))
    assert not e.feasible
    assert e.objective == INFEASIBLE_PENALTY
    ids = {v.constraint for v in e.violations}
    assert {C_SUPPLY_RATE, C_ANCHOR_HANDLING, C_STANDBY, C_FIREFIGHTING,
            C_OIL_RECOVERY} <= ids


def test_single_vessel_cannot_be_standby_and_work(ev1):
    e = ev1.evaluate(counts_for(ev1, {"1": 1}))
    assert not e.feasible


def test_missing_fifi_reported(ev1):
    # Type 1 + 2x Type 10: no Fi-Fi vessel at all
    e = ev1.evaluate(counts_for(ev1, {"1": 1, "10": 2}))
    assert not e.feasible
    assert C_FIREFIGHTING in {v.constraint for v in e.violations}


def test_supply_rate_shortfall_reported(ev1, case1):
    # a two-vessel fleet cannot deliver 3000 m2/month over 810 NM
    e = ev1.evaluate(counts_for(ev1, {"1": 1, "11": 1}))
    assert not e.feasible


def test_towing_power_rule(ev1, case1):
    # a lone Type 7 tug (8.2 MW) is below the single-tug minimum (9.6 MW),
    # but two tugs only need 5.53 MW each
    e = ev1.evaluate(counts_for(ev1, {"1": 1, "7": 2, "5": 2, "10": 1}))
    assert e.feasible
    assert e.n_tugs >= 2


def test_cache_returns_same_object(ev1):
    vec = counts_for(ev1, {"1": 1, "10": 2, "11": 2})
    assert ev1.evaluate(vec) is ev1.evaluate(vec)


def test_objective_matches_evaluate(ev1):
    vec = counts_for(ev1, {"1": 1, "10": 2, "11": 2})
    assert ev1.objective(vec) == ev1.evaluate(vec).objective


def test_greedy_fallback_close_to_exact(ev1, catalog, riv_table, case1):
    # force the greedy path on a mid-size fleet and compare against the
    # exact enumeration of the same counts
    vec = counts_for(ev1, {"1": 2, "2": 1, "3": 1, "5": 1, "7": 2, "10": 2,
                           "11": 2})
    exact = make_evaluator(catalog, case1, riv_table)
    greedy = make_evaluator(catalog, case1, riv_table)
    greedy.enumeration_bound = 0
    a = exact.evaluate(vec)
    b = greedy.evaluate(vec)
    assert a.exact and not b.exact
    assert b.objective >= a.objective - 1e-6
    assert b.objective <= a.objective * 1.02


def test_check_feasibility_reference_assignment(catalog, case1):
    t1, t10, t11 = (catalog.get(n) for n in ("Type1", "Type10", "Type11"))
    assignment = [
        VesselDuties(t1, (STANDBY,)),
        VesselDuties(t10, (TOWING, ANCHOR_HANDLING, SUPPLY)),
        VesselDuties(t10, (TOWING, ANCHOR_HANDLING, SUPPLY)),
        VesselDuties(t11, (SUPPLY, "firefighting", "oil_recovery")),
        VesselDuties(t11, (SUPPLY, "firefighting", "oil_recovery")),
    ]
    report = check_feasibility(assignment, case1, min_escort_rank=None)
    assert not report


def test_check_feasibility_empty(case1):
    violations = check_feasibility([], case1, min_escort_rank=None)
    ids = {v.constraint for v in violations}
    assert {1, 3, 4, 5, 6} <= ids
    assert C_ICE_ESCORT not in ids
