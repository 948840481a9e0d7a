"""Ice operability screening: risk index outcomes per vessel ice class.

A seasonal ice bucket is mapped onto a simplified ice regime: the level-ice
thickness selects one WMO thickness category at the bucket's concentration,
and the remaining water is open water.  A vessel's risk index outcome (RIO)
over that regime decides whether it may operate normally, under elevated
risk, or not at all.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .catalog import IceClass, data_dir
from .scenario import IceCondition, Scenario

ICE_TYPES = (
    "ice_free",
    "open_water",
    "new_ice",
    "grey_ice",
    "grey_white_ice",
    "thin_fy_first",
    "thin_fy_second",
    "medium_fy_first",
    "medium_fy_second",
    "thick_fy",
    "second_year",
    "light_multi_year",
    "heavy_multi_year",
)

# Upper thickness bound (m, exclusive) per level-ice category.
_THICKNESS_BINS = (
    ("new_ice", 0.10),
    ("grey_ice", 0.15),
    ("grey_white_ice", 0.30),
    ("thin_fy_first", 0.50),
    ("thin_fy_second", 0.70),
    ("medium_fy_first", 1.00),
    ("medium_fy_second", 1.20),
    ("thick_fy", float("inf")),
)

NORMAL = "normal"
ELEVATED = "elevated"
SPECIAL = "special_consideration"


class RivTableError(ValueError):
    pass


@dataclass(frozen=True)
class RivTable:
    """Risk index values per (ice class, WMO ice type)."""

    values: dict[IceClass, dict[str, float]]

    def riv(self, ice_class: IceClass, ice_type: str) -> float:
        try:
            return self.values[ice_class][ice_type]
        except KeyError:
            raise RivTableError(
                f"no risk index value for {ice_class.label!r} / {ice_type!r}") from None


def load_riv_table(path: str | Path | None = None) -> RivTable:
    """Read a risk-index-value CSV (defaults to the bundled table)."""
    path = Path(path) if path is not None else data_dir() / "riv_table.csv"
    values: dict[IceClass, dict[str, float]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        columns = [c for c in (reader.fieldnames or []) if c != "ice_class"]
        unknown = set(columns) - set(ICE_TYPES)
        if unknown:
            raise RivTableError(f"{path}: unknown ice types {sorted(unknown)}")
        for row in reader:
            cls = IceClass.parse(row["ice_class"])
            values[cls] = {c: float(row[c]) for c in columns}
    missing = [cls.label for cls in IceClass if cls not in values]
    if missing:
        raise RivTableError(f"{path}: missing ice classes {missing}")
    return RivTable(values)


def thickness_category(level_thickness: float) -> str:
    """WMO thickness category containing a level-ice thickness."""
    if level_thickness <= 0:
        return "open_water"
    for name, upper in _THICKNESS_BINS:
        if level_thickness < upper:
            return name
    raise AssertionError("unreachable")


def ice_regime(condition: IceCondition) -> dict[str, float]:
    """Concentrations in tenths per ice type for one seasonal bucket."""
    tenths = condition.concentration * 10.0
    if tenths <= 0 or condition.level_thickness <= 0:
        return {"open_water": 10.0}
    regime = {thickness_category(condition.level_thickness): tenths}
    if tenths < 10.0:
        regime["open_water"] = regime.get("open_water", 0.0) + (10.0 - tenths)
    return regime


def rio(ice_class: IceClass, condition: IceCondition, riv_table: RivTable) -> float:
    """Risk index outcome of an ice class within one seasonal bucket."""
    return sum(tenths * riv_table.riv(ice_class, ice_type)
               for ice_type, tenths in ice_regime(condition).items())


def classify_rio(value: float) -> str:
    if value >= 0:
        return NORMAL
    if value >= -10:
        return ELEVATED
    return SPECIAL


def rio_acceptable(value: float, policy: str) -> bool:
    if policy == "normal_only":
        return value >= 0
    if policy == "allow_elevated":
        return value > -10
    raise ValueError(f"unknown rio policy: {policy!r}")


def operable(ice_class: IceClass, scenario: Scenario, riv_table: RivTable,
             policy: str | None = None) -> bool:
    """Whether an ice class may work the season's heaviest expected ice.

    The screening condition is the heaviest bucket that can actually occur
    (probability > 0); ice-free scenarios screen nothing out.
    """
    worst = scenario.worst_condition(active_only=True)
    if worst is None:
        return True
    return rio_acceptable(rio(ice_class, worst, riv_table),
                          policy or scenario.rio_policy)


def min_feasible_ice_class(scenario: Scenario, riv_table: RivTable,
                           policy: str | None = None) -> IceClass:
    """Weakest ice class acceptable in the scenario's severest listed bucket.

    Evaluated against the severest bucket regardless of its probability: the
    emergency ice-escort requirement must hold even in winters the season
    plan considers unlikely.
    """
    worst = scenario.worst_condition(active_only=False)
    policy = policy or scenario.rio_policy
    if worst is None or worst.equivalent_thickness <= 0:
        return IceClass.NONE
    acceptable = [cls for cls in IceClass
                  if rio_acceptable(rio(cls, worst, riv_table), policy)]
    if not acceptable:
        raise RivTableError(
            f"no ice class can operate in condition {worst.name!r}")
    return min(acceptable, key=lambda cls: cls.rank)
