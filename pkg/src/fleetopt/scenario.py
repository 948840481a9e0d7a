"""Operating scenario: season plan, economics, risk tables, and ice climate."""
from __future__ import annotations

import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from .catalog import data_dir

SEVERITIES = ("insignificant", "minor", "severe")


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class IceCondition:
    """One winter-severity bucket of the seasonal ice climate."""

    name: str
    probability: float
    concentration: float      # areal concentration, 0..1
    level_thickness: float    # level ice thickness h_i, m
    ridging: float            # ridged-ice parameter b
    snow_thickness: float     # m

    @property
    def equivalent_thickness(self) -> float:
        """Concentration-weighted level+ridge+snow thickness, m."""
        k_sn = 0.5 if self.snow_thickness >= 0.5 else 0.33
        return self.concentration * (
            self.level_thickness
            + 0.25 * self.ridging * self.level_thickness
            + k_sn * self.snow_thickness
        )


@dataclass(frozen=True)
class MarketContext:
    """Contract-market inputs for the charter-rate regression."""

    duration: float = 180.0
    days_forward: float = 180.0
    k_production: int = 0
    k_drilling: int = 0
    k_developing_market: int = 1
    p_oil: float = 60.0
    p_spot: float = 20000.0
    o_prod: float = 400000.0


@dataclass(frozen=True)
class Scenario:
    name: str
    reference_year: int
    # operation plan
    t_op: float
    t_ah: float
    dist_tow: float
    dist_supply: float
    towing_speed: float
    consumption_rate: float
    supply_redundancy: float
    deck_area_installation: float
    day_rate_installation: float
    beaufort_number: int
    # economics
    fuel_price: float
    value_of_human_life: float
    charter_mode: str
    # fuel rates
    fuel_anchor_handling: float
    fuel_port: float
    fuel_loading: float
    fuel_standby: float
    fuel_ice_management: float
    specific_consumption: float
    power_reduction: float
    # duty requirements
    towing_min_power: dict[int, float]
    ah_min_power: float
    # risk model
    f_towing: float
    f_fire: float
    n_spw_ref: float
    useful_deck_share: float
    damage_table: dict[str, tuple[float, float]]
    collision_frequency: dict[int, dict[str, float]]
    fire_table: dict[str, tuple[float, float]]
    # ice
    h_max: float
    p_iceberg: float
    rio_policy: str
    ice_conditions: tuple[IceCondition, ...]
    market: MarketContext = field(default_factory=MarketContext)
    charter_regression: tuple[float, ...] | None = None

    @property
    def t_tow(self) -> float:
        """Round-trip towing duration, days."""
        return 2.0 * self.dist_tow / (24.0 * self.towing_speed)

    @property
    def season_length(self) -> float:
        """Total charter season: supply + towing + anchor handling, days."""
        return self.t_op + self.t_tow + self.t_ah

    def towing_power_required(self, n_tugs: int) -> float:
        """Minimum per-tug power (kW) for a given tug count."""
        if n_tugs < 1:
            raise ScenarioError("towing requires at least one tug")
        table = self.towing_min_power
        return table.get(n_tugs, table[max(table)])

    def worst_condition(self, active_only: bool = False) -> IceCondition | None:
        """Heaviest ice bucket; ``active_only`` skips zero-probability rows."""
        rows = [c for c in self.ice_conditions
                if not active_only or c.probability > 0]
        if not rows:
            return None
        return max(rows, key=lambda c: (c.equivalent_thickness,
                                        c.concentration))

    def has_ice_risk(self) -> bool:
        worst = self.worst_condition()
        heaviest = worst.equivalent_thickness if worst else 0.0
        return heaviest > 0.0 or self.p_iceberg > 0.0


def _severity_pairs(mapping: Mapping[str, Any], where: str) -> dict[str, tuple[float, float]]:
    out = {}
    for key, val in mapping.items():
        if not isinstance(val, (list, tuple)) or len(val) != 2:
            raise ScenarioError(f"{where}.{key} must be [asset_usd, fatalities]")
        out[str(key)] = (float(val[0]), float(val[1]))
    return out


def scenario_from_dict(raw: Mapping[str, Any]) -> Scenario:
    """Build and validate a Scenario from parsed config data."""
    try:
        op = raw["operation"]
        econ = raw["economics"]
        fuel = raw["fuel"]
        risk = raw["risk"]
        ice = raw["ice"]
    except KeyError as exc:
        raise ScenarioError(f"missing config section: {exc}") from None

    conditions = []
    for row in ice.get("conditions", []):
        conditions.append(IceCondition(
            name=str(row.get("name", f"condition{len(conditions) + 1}")),
            probability=float(row["probability"]),
            concentration=float(row["concentration"]),
            level_thickness=float(row["level_thickness"]),
            ridging=float(row["ridging"]),
            snow_thickness=float(row["snow_thickness"]),
        ))
    total_p = sum(c.probability for c in conditions)
    if conditions and abs(total_p - 1.0) > 1e-9:
        raise ScenarioError(f"ice condition probabilities sum to {total_p}, expected 1")
    for c in conditions:
        if not (0.0 <= c.probability <= 1.0 and 0.0 <= c.concentration <= 1.0):
            raise ScenarioError(f"ice condition {c.name}: bad probability/concentration")

    policy = str(ice.get("rio_policy", "normal_only"))
    if policy not in ("normal_only", "allow_elevated"):
        raise ScenarioError(f"unknown rio_policy: {policy!r}")

    charter_mode = str(econ.get("charter_mode", "table"))
    if charter_mode not in ("table", "regression"):
        raise ScenarioError(f"unknown charter_mode: {charter_mode!r}")

    betas = raw.get("charter_regression", {}).get("betas")
    if betas is not None:
        betas = tuple(float(b) for b in betas)
        if len(betas) != 14:
            raise ScenarioError("charter_regression.betas must list 14 coefficients")
    if charter_mode == "regression" and betas is None:
        raise ScenarioError("charter_mode 'regression' requires charter_regression.betas")

    towing_min_power = {int(k): float(v)
                        for k, v in raw.get("towing", {}).get("min_power", {}).items()}
    if not towing_min_power:
        raise ScenarioError("towing.min_power table is required")

    collision = {}
    for key, freqs in risk.get("collision_frequency", {}).items():
        dp = int(str(key).lower().removeprefix("dp"))
        table = {str(sev): float(f) for sev, f in freqs.items()}
        unknown = set(table) - set(SEVERITIES)
        if unknown:
            raise ScenarioError(f"collision_frequency dp{dp}: unknown severities {unknown}")
        collision[dp] = table

    market_raw = raw.get("market", {})
    market = MarketContext(**{k: market_raw[k] for k in market_raw})

    scenario = Scenario(
        name=str(raw.get("name", "scenario")),
        reference_year=int(raw.get("reference_year", 2020)),
        t_op=float(op["t_op"]),
        t_ah=float(op["t_ah"]),
        dist_tow=float(op["dist_tow"]),
        dist_supply=float(op["dist_supply"]),
        towing_speed=float(op["towing_speed"]),
        consumption_rate=float(op["consumption_rate"]),
        supply_redundancy=float(op.get("supply_redundancy", 0.0)),
        deck_area_installation=float(op["deck_area_installation"]),
        day_rate_installation=float(op["day_rate_installation"]),
        beaufort_number=int(op.get("beaufort_number", 4)),
        fuel_price=float(econ["fuel_price"]),
        value_of_human_life=float(econ["value_of_human_life"]),
        charter_mode=charter_mode,
        fuel_anchor_handling=float(fuel["anchor_handling"]),
        fuel_port=float(fuel["port"]),
        fuel_loading=float(fuel["loading"]),
        fuel_standby=float(fuel["standby"]),
        fuel_ice_management=float(fuel["ice_management"]),
        specific_consumption=float(fuel["specific_consumption"]),
        power_reduction=float(fuel["power_reduction"]),
        towing_min_power=towing_min_power,
        ah_min_power=float(raw.get("anchor_handling", {}).get("min_power", 12000.0)),
        f_towing=float(risk["f_towing"]),
        f_fire=float(risk["f_fire"]),
        n_spw_ref=float(risk.get("n_spw_ref", 2.0)),
        useful_deck_share=float(risk.get("useful_deck_share", 0.7)),
        damage_table=_severity_pairs(risk["damage"], "risk.damage"),
        collision_frequency=collision,
        fire_table=_severity_pairs(risk["fire"], "risk.fire"),
        h_max=float(ice["h_max"]),
        p_iceberg=float(ice["p_iceberg"]),
        rio_policy=policy,
        ice_conditions=tuple(conditions),
        market=market,
        charter_regression=betas,
    )
    _check_positive(scenario)
    return scenario


def _check_positive(s: Scenario) -> None:
    for attr in ("t_op", "t_ah", "dist_tow", "dist_supply", "towing_speed",
                 "consumption_rate", "fuel_price", "value_of_human_life"):
        if getattr(s, attr) <= 0:
            raise ScenarioError(f"{attr} must be positive")
    if s.supply_redundancy < 0 or s.p_iceberg < 0 or s.p_iceberg > 1:
        raise ScenarioError("supply_redundancy must be >= 0 and p_iceberg in [0, 1]")
    missing = set(SEVERITIES) - set(s.damage_table)
    if missing:
        raise ScenarioError(f"risk.damage missing severities: {missing}")
    if set(s.fire_table) != {"a", "b", "c"}:
        raise ScenarioError("risk.fire must define scenarios a, b, c")


def _set_path(data: dict, dotted: str, value: str) -> None:
    """Apply one ``section.key=value`` override onto parsed config data."""
    keys = dotted.split(".")
    node = data
    for key in keys[:-1]:
        node = node.setdefault(key, {})
        if not isinstance(node, dict):
            raise ScenarioError(f"cannot override through non-table key {key!r}")
    leaf = keys[-1]
    old = node.get(leaf)
    if isinstance(old, bool):
        node[leaf] = value.strip().lower() in ("1", "true", "yes")
    elif isinstance(old, int) and not isinstance(old, bool):
        node[leaf] = int(float(value))
    elif isinstance(old, float):
        node[leaf] = float(value)
    elif isinstance(old, str) or old is None:
        try:
            node[leaf] = float(value)
        except ValueError:
            node[leaf] = value
    else:
        raise ScenarioError(f"cannot override structured key {dotted!r}")


def load_scenario(path: str | Path, overrides: Mapping[str, str] | None = None) -> Scenario:
    """Load a scenario TOML file, optionally applying ``key.path=value`` overrides."""
    path = Path(path)
    if not path.exists():
        name = path.name if path.suffix else path.name + ".toml"
        candidate = data_dir() / name
        if candidate.exists():
            path = candidate
    try:
        with open(path, "rb") as fh:
            raw = _toml.load(fh)
    except FileNotFoundError:
        raise ScenarioError(f"scenario file not found: {path}") from None
    except _toml.TOMLDecodeError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc
    for dotted, value in (overrides or {}).items():
        _set_path(raw, dotted, value)
    return scenario_from_dict(raw)


def bundled_scenario(name: str, overrides: Mapping[str, str] | None = None) -> Scenario:
    return load_scenario(data_dir() / f"{name}.toml", overrides)


def with_ice_probabilities(scenario: Scenario, probabilities: Mapping[str, float]) -> Scenario:
    """Re-weight the ice-condition buckets (e.g. an all-mild-winters variant)."""
    rows = []
    for cond in scenario.ice_conditions:
        rows.append(replace(cond, probability=float(probabilities.get(cond.name,
                                                                      cond.probability))))
    total = sum(c.probability for c in rows)
    if abs(total - 1.0) > 1e-9:
        raise ScenarioError(f"re-weighted probabilities sum to {total}")
    return replace(scenario, ice_conditions=tuple(rows))
