import pytest

from fleetopt import costs
from fleetopt.scenario import MarketContext


def test_towing_charter_type1(catalog, case1):
    # 32,750 USD/day * 16.875 days
    v = catalog.get("Type1")
    assert costs.towing_charter_cost(v, case1) == pytest.approx(552_656.25)


def test_towing_fuel_single_tug(case1):
    # 550 * 24 * 16.875 * 0.9 * 9600 * 0.221e-3
    expected = 550 * 24 * 16.875 * 0.9 * 9600 * 0.221e-3
    assert costs.towing_fuel_cost(case1, 1) == pytest.approx(expected, rel=1e-12)
    assert costs.towing_fuel_cost(case1, 1) == pytest.approx(425_327.76, rel=1e-9)


def test_towing_fuel_decreases_with_tug_count(case1):
    per_tug = [costs.towing_fuel_cost(case1, n) for n in (1, 2, 3, 4)]
    assert per_tug == sorted(per_tug, reverse=True)


def test_anchor_handling_costs(catalog, case1):
    v = catalog.get("Type1")
    assert costs.anchor_handling_charter_cost(v, case1) == pytest.approx(32750 * 18)
    assert costs.anchor_handling_fuel_cost(case1) == pytest.approx(550 * 18 * 30)


def test_voyage_profile_type1(catalog, case1):
    v = catalog.get("Type1")
    p = costs.voyage_profile(v, case1)
    assert p.t_port == pytest.approx(1.426 + 0.0005 * 2110, rel=1e-12)      # 2.481
    assert p.t_loading == pytest.approx(0.6 + 0.00021 * 2110, rel=1e-12)    # 1.0431
    assert p.t_moving == pytest.approx(810 / (24 * 8.80), rel=1e-12)
    expected_fuel = (p.t_port * 2 + p.t_loading * 10
                     + 2 * p.t_moving * 15.1)
    assert p.fuel_per_voyage == pytest.approx(expected_fuel, rel=1e-12)
    assert p.duration == pytest.approx(p.t_port + p.t_loading + 2 * p.t_moving)


def test_useful_deck_area_is_capped(catalog, case1):
    # 0.7 * deck area, capped at the installation's receiving deck (300 m2)
    assert costs.useful_deck_area(catalog.get("Type1"), case1) == \
        pytest.approx(min(0.7 * 470, 300))
    assert costs.useful_deck_area(catalog.get("Type17"), case1) == 300


def test_supply_rate_positive_and_monotone_in_distance(catalog, case1):
    from dataclasses import replace
    v = catalog.get("Type10")
    near = replace(case1, dist_supply=100.0)
    far = replace(case1, dist_supply=1000.0)
    assert costs.supply_rate(v, near) > costs.supply_rate(v, far) > 0


def test_supply_fuel_scales_with_fuel_price(catalog, case1):
    from dataclasses import replace
    v = catalog.get("Type10")
    double = replace(case1, fuel_price=case1.fuel_price * 2)
    assert costs.supply_fuel_cost(v, double) == \
        pytest.approx(2 * costs.supply_fuel_cost(v, case1))


def test_standby_costs(catalog, case1):
    v = catalog.get("Type1")
    assert costs.standby_charter_cost(v, case1) == pytest.approx(32750 * 124.875)
    assert costs.standby_fuel_cost(case1) == pytest.approx(550 * 124.875 * 8)


def test_ice_management_costs(catalog, case1):
    v = catalog.get("Type7")
    assert costs.ice_management_charter_cost(v, case1) == \
        pytest.approx(28510 * 124.875)
    assert costs.ice_management_fuel_cost(case1) == pytest.approx(550 * 124.875 * 20)


def test_charter_rate_table_mode(catalog, case1):
    assert costs.charter_rate(catalog.get("Type11"), case1) == 38340


def test_regression_requires_coefficients(catalog, case1):
    from dataclasses import replace
    s = replace(case1, charter_mode="regression", charter_regression=None)
    with pytest.raises(ValueError):
        costs.charter_rate(catalog.get("Type1"), s)


def test_regression_icebreaking_premium(catalog, case1):
    from dataclasses import replace
    betas = (10.0,) + (0.0,) * 13       # constant-only regression
    s = replace(case1, charter_mode="regression", charter_regression=betas)
    v_none = catalog.get("Type23")      # no icebreaking capability
    v_ice = catalog.get("Type1")        # 1.8 m capability
    import math
    assert costs.charter_rate(v_none, s) == pytest.approx(math.exp(10.0))
    assert costs.charter_rate(v_ice, s) == \
        pytest.approx(math.exp((0.55 * 1.8 + 1.0) * 10.0))


def test_table_speed_loss_model(catalog, case1):
    model = costs.table_speed_loss({3: 0.1, 5: 0.3})
    from dataclasses import replace
    v = catalog.get("Type1")
    assert model(v, replace(case1, beaufort_number=3)) == pytest.approx(8.80 * 0.9)
    assert model(v, replace(case1, beaufort_number=9)) == pytest.approx(8.80 * 0.7)
    with pytest.raises(ValueError):
        costs.table_speed_loss({})
