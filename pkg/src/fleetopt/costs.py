"""Per-duty charter and fuel cost formulas."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

from .catalog import VesselType
from .scenario import Scenario

# Empirical port / loading service times as a function of deadweight (days).
_PORT_BASE, _PORT_PER_DWT = 1.426, 0.0005
_LOAD_BASE, _LOAD_PER_DWT = 0.6, 0.00021

SpeedModel = Callable[[VesselType, Scenario], float]


def default_cruising_speed(vessel: VesselType, scenario: Scenario) -> float:
    """Catalog service speed; already weather-adjusted for the study region."""
    return vessel.cruising_speed


def table_speed_loss(loss_by_beaufort: Mapping[int, float]) -> SpeedModel:
    """Speed model applying a fractional weather speed loss by Beaufort number.

    ``loss_by_beaufort`` maps a Beaufort number to the fraction of speed lost
    (0.15 = 15 % slower); numbers beyond the table reuse its last entry.
    """
    table = {int(k): float(v) for k, v in loss_by_beaufort.items()}
    if not table or any(not 0.0 <= v < 1.0 for v in table.values()):
        raise ValueError("speed-loss table must map Beaufort numbers to [0, 1) fractions")

    def model(vessel: VesselType, scenario: Scenario) -> float:
        bn = scenario.beaufort_number
        loss = table.get(bn, table[max(table)] if bn > max(table) else table[min(table)])
        return vessel.cruising_speed * (1.0 - loss)

    return model


def charter_rate(vessel: VesselType, scenario: Scenario) -> float:
    """Daily charter rate: catalog value, or the market regression if enabled."""
    if scenario.charter_mode == "table":
        return vessel.charter_rate
    return regression_charter_rate(vessel, scenario)


def regression_charter_rate(vessel: VesselType, scenario: Scenario) -> float:
    """Estimate a daily charter rate from vessel particulars and market terms.

    ``ln(rate)`` is linear in the predictors, scaled by an icebreaking
    premium ``0.55 * capability + 1``.  Units: deck area m2, power kW,
    deadweight t, age years.
    """
    betas = scenario.charter_regression
    if betas is None:
        raise ValueError("scenario defines no charter regression coefficients")
    m = scenario.market
    k_ic = 0.55 * vessel.icebreaking_capability + 1.0
    age = max(0, scenario.reference_year - vessel.year_of_delivery)
    predictors = (
        1.0,
        vessel.deck_area,
        vessel.power,
        vessel.deadweight,
        1.0 if vessel.dp_class >= 2 else 0.0,
        float(age),
        m.duration,
        m.days_forward,
        float(m.k_production),
        float(m.k_drilling),
        float(m.k_developing_market),
        m.p_oil,
        m.p_spot,
        m.o_prod,
    )
    return math.exp(k_ic * sum(b * x for b, x in zip(betas, predictors)))


# ---------------------------------------------------------------------------
# Towing

def towing_time(scenario: Scenario) -> float:
    """Round-trip days for a rig move at the scenario's towing speed."""
    return scenario.t_tow


def towing_charter_cost(vessel: VesselType, scenario: Scenario) -> float:
    return charter_rate(vessel, scenario) * scenario.t_tow


def towing_fuel_cost(scenario: Scenario, n_tugs: int) -> float:
    """Fuel bill per tug for the round trip, assuming the minimum required
    power at a reduced engine load."""
    power = scenario.towing_power_required(n_tugs)
    tons = (24.0 * scenario.t_tow * scenario.power_reduction
            * power * scenario.specific_consumption)
    return scenario.fuel_price * tons


# ---------------------------------------------------------------------------
# Anchor handling

def anchor_handling_charter_cost(vessel: VesselType, scenario: Scenario) -> float:
    return charter_rate(vessel, scenario) * scenario.t_ah


def anchor_handling_fuel_cost(scenario: Scenario) -> float:
    return scenario.fuel_price * scenario.t_ah * scenario.fuel_anchor_handling


# ---------------------------------------------------------------------------
# Supply runs

@dataclass(frozen=True)
class VoyageProfile:
    """One port / installation round trip of a supply vessel."""

    t_port: float          # days in port
    t_loading: float       # days unloading at the installation
    t_moving: float        # days underway, one way
    fuel_per_voyage: float  # tons

    @property
    def duration(self) -> float:
        return self.t_port + self.t_loading + 2.0 * self.t_moving


def voyage_profile(vessel: VesselType, scenario: Scenario,
                   speed_model: SpeedModel = default_cruising_speed) -> VoyageProfile:
    t_port = _PORT_BASE + _PORT_PER_DWT * vessel.deadweight
    t_loading = _LOAD_BASE + _LOAD_PER_DWT * vessel.deadweight
    t_moving = scenario.dist_supply / (24.0 * speed_model(vessel, scenario))
    fuel = (t_port * scenario.fuel_port
            + t_loading * scenario.fuel_loading
            + 2.0 * t_moving * vessel.cruising_fuel_rate)
    return VoyageProfile(t_port, t_loading, t_moving, fuel)


def useful_deck_area(vessel: VesselType, scenario: Scenario) -> float:
    """Deck cargo actually delivered per visit, m2."""
    return min(vessel.deck_area * scenario.useful_deck_share,
               scenario.deck_area_installation)


def supply_rate(vessel: VesselType, scenario: Scenario,
                speed_model: SpeedModel = default_cruising_speed) -> float:
    """Monthly deck-cargo delivery capacity of one vessel, m2/month."""
    profile = voyage_profile(vessel, scenario, speed_model)
    return 30.0 * useful_deck_area(vessel, scenario) / profile.duration


def supply_charter_cost(vessel: VesselType, scenario: Scenario) -> float:
    return charter_rate(vessel, scenario) * scenario.t_op


def supply_fuel_cost(vessel: VesselType, scenario: Scenario,
                     speed_model: SpeedModel = default_cruising_speed) -> float:
    """Season fuel bill of one supply vessel cycling voyages over ``t_op``."""
    profile = voyage_profile(vessel, scenario, speed_model)
    daily = profile.fuel_per_voyage / profile.duration
    return scenario.fuel_price * scenario.t_op * daily


# ---------------------------------------------------------------------------
# Whole-season duties

def standby_charter_cost(vessel: VesselType, scenario: Scenario) -> float:
    return charter_rate(vessel, scenario) * scenario.season_length


def standby_fuel_cost(scenario: Scenario) -> float:
    return scenario.fuel_price * scenario.season_length * scenario.fuel_standby


def ice_management_charter_cost(vessel: VesselType, scenario: Scenario) -> float:
    return charter_rate(vessel, scenario) * scenario.season_length


def ice_management_fuel_cost(scenario: Scenario) -> float:
    return (scenario.fuel_price * scenario.season_length
            * scenario.fuel_ice_management)
