"""Accident-risk terms: towing loss, supply collision, installation fire.

Every term is an annual accident frequency scaled to the season length and
split into expected asset loss and monetized expected fatalities (USD).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .scenario import Scenario


@dataclass(frozen=True)
class RiskPair:
    asset: float  # expected material loss, USD
    human: float  # expected monetized fatalities, USD

    @property
    def total(self) -> float:
        return self.asset + self.human

    def __add__(self, other: "RiskPair") -> "RiskPair":
        return RiskPair(self.asset + other.asset, self.human + other.human)

    def scaled(self, factor: float) -> "RiskPair":
        return RiskPair(self.asset * factor, self.human * factor)


ZERO_RISK = RiskPair(0.0, 0.0)


def _expected(scenario: Scenario, frequency: float, severity: str,
              duration_days: float) -> RiskPair:
    asset_loss, fatalities = scenario.damage_table[severity]
    exposure = frequency * duration_days / 365.0
    return RiskPair(exposure * asset_loss,
                    exposure * fatalities * scenario.value_of_human_life)


def towing_severity(n_tugs: int) -> str:
    """Consequence class of losing tow control, by redundancy of the tow."""
    if n_tugs <= 1:
        return "severe"
    if n_tugs == 2:
        return "minor"
    return "insignificant"


def towing_risk(scenario: Scenario, n_tugs: int) -> RiskPair:
    if n_tugs < 1:
        raise ValueError("towing risk undefined without tugs")
    return _expected(scenario, scenario.f_towing, towing_severity(n_tugs),
                     scenario.season_length)


def supply_visits_per_week(scenario: Scenario, mean_useful_deck: float) -> float:
    """Weekly installation visits needed to sustain the cargo demand."""
    if mean_useful_deck <= 0:
        raise ValueError("supply vessels deliver no deck cargo")
    return 7.0 * scenario.consumption_rate / (30.0 * mean_useful_deck)


def supply_risk(scenario: Scenario, dp_classes: Sequence[int],
                mean_useful_deck: float) -> RiskPair:
    """Collision risk of the supply rotation.

    Base frequencies per DP class are scaled by visit intensity relative to
    the reference schedule, then averaged over the supply group as the mean
    per-vessel contribution.
    """
    if not dp_classes:
        return ZERO_RISK
    scale = (supply_visits_per_week(scenario, mean_useful_deck)
             / scenario.n_spw_ref)
    total = ZERO_RISK
    for dp in dp_classes:
        freqs = scenario.collision_frequency.get(dp)
        if freqs is None:
            raise ValueError(f"no collision frequencies for DP class {dp}")
        for severity, freq in freqs.items():
            total = total + _expected(scenario, freq * scale, severity,
                                      scenario.season_length)
    return total.scaled(1.0 / len(dp_classes))


def fire_scenario(fifi_classes: Iterable[int]) -> str | None:
    """Best achievable firefighting response given the fleet's Fi-Fi classes.

    Two class-3 vessels support a full response ('a'); two of class 2 or
    better a fair one ('b'); two of any class a poor one ('c'); fewer than
    two Fi-Fi vessels cannot respond at all (None).
    """
    classes = sorted((c for c in fifi_classes if c >= 1), reverse=True)
    if len(classes) < 2:
        return None
    second_best = classes[1]
    if second_best >= 3:
        return "a"
    if second_best >= 2:
        return "b"
    return "c"


def fire_risk(scenario: Scenario, fifi_classes: Iterable[int]) -> RiskPair:
    label = fire_scenario(fifi_classes)
    if label is None:
        raise ValueError("fire risk undefined with fewer than two Fi-Fi vessels")
    asset_loss, fatalities = scenario.fire_table[label]
    exposure = scenario.f_fire * scenario.season_length / 365.0
    return RiskPair(exposure * asset_loss,
                    exposure * fatalities * scenario.value_of_human_life)
