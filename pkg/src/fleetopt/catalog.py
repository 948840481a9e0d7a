"""Support-vessel catalog: vessel types, ice classes, and the bundled fixture."""
from __future__ import annotations

import csv
import os
import re
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

_DATA_DIR_ENV = "FLEETOPT_DATA_DIR"


def data_dir() -> Path:
    """Directory holding bundled data files, overridable via FLEETOPT_DATA_DIR."""
    override = os.environ.get(_DATA_DIR_ENV)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


class IceClass(Enum):
    """Ice classes on a single 12-step ladder, strongest first.

    ``rank`` orders the ladder (11 = strongest, 0 = no ice class) and also
    drives the ice-class fleet indicator (100 * rank / 11).
    """

    PC1 = ("PC1", 11)
    PC2 = ("PC2", 10)
    PC3 = ("PC3", 9)
    PC4 = ("PC4", 8)
    PC5 = ("PC5", 7)
    PC6 = ("PC6", 6)
    PC7 = ("PC7", 5)
    IA_SUPER = ("IA Super", 4)
    IA = ("IA", 3)
    IB = ("IB", 2)
    IC = ("IC", 1)
    NONE = ("none", 0)

    def __init__(self, label: str, rank: int):
        self.label = label
        self.rank = rank

    @classmethod
    def parse(cls, text: str) -> "IceClass":
        token = re.sub(r"[\s\-_]+", "", (text or "").strip().lower())
        if token in ("", "0", "none", "noiceclass"):
            return cls.NONE
        for member in cls:
            if re.sub(r"[\s\-_]+", "", member.label.lower()) == token:
                return member
        raise ValueError(f"unknown ice class: {text!r}")

    def __lt__(self, other: "IceClass") -> bool:
        return self.rank < other.rank

    def __le__(self, other: "IceClass") -> bool:
        return self.rank <= other.rank

    def __gt__(self, other: "IceClass") -> bool:
        return self.rank > other.rank

    def __ge__(self, other: "IceClass") -> bool:
        return self.rank >= other.rank


@dataclass(frozen=True)
class VesselType:
    """One catalog row: capabilities, dimensions, and commercial terms."""

    name: str
    year_of_delivery: int
    deadweight: float            # t
    deck_area: float             # m2
    power: float                 # kW
    ice_class: IceClass
    icebreaking_capability: float  # m of level ice
    fifi_class: int
    dp_class: int
    oil_recovery: bool
    towing: bool
    anchor_handling: bool
    standby: bool
    displacement: float          # t
    block_coefficient: float
    charter_rate: float          # USD/day
    cruising_fuel_rate: float    # t/day while moving
    cruising_speed: float        # knots

    @property
    def supply(self) -> bool:
        """Any vessel with usable deck area can run supply voyages."""
        return self.deck_area > 0

    def with_charter_rate(self, rate: float) -> "VesselType":
        return replace(self, charter_rate=rate)


def normalize_name(name: str) -> str:
    """Canonical key for vessel lookup: lowercase alphanumerics only.

    Lets CLI users write ``Type1`` for the catalog's ``Type 1 (...)`` row;
    a bare ``typeN`` key matches the row whose name starts with ``Type N``.
    """
    return re.sub(r"[^a-z0-9]+", "", name.lower())


class CatalogError(ValueError):
    pass


class Catalog:
    """Ordered collection of vessel types with name lookup."""

    def __init__(self, vessels: Sequence[VesselType]):
        if not vessels:
            raise CatalogError("catalog is empty")
        self.vessels: tuple[VesselType, ...] = tuple(vessels)
        self._index: dict[str, VesselType] = {}
        for v in self.vessels:
            key = normalize_name(v.name)
            if key in self._index:
                raise CatalogError(f"duplicate vessel name: {v.name}")
            self._index[key] = v
            short = re.match(r"(type\d+)", key)
            if short and short.group(1) != key:
                self._index.setdefault(short.group(1), v)

    def __iter__(self):
        return iter(self.vessels)

    def __len__(self) -> int:
        return len(self.vessels)

    def get(self, name: str) -> VesselType:
        key = normalize_name(name)
        try:
            return self._index[key]
        except KeyError:
            raise CatalogError(f"unknown vessel type: {name!r}") from None

    def subset(self, keep: Iterable[VesselType]) -> "Catalog":
        wanted = {id(v) for v in keep}
        return Catalog([v for v in self.vessels if id(v) in wanted])

    def scale_charter_rates(self, factor: float) -> "Catalog":
        return Catalog([v.with_charter_rate(v.charter_rate * factor)
                        for v in self.vessels])


def _parse_flag(text: str) -> bool:
    token = text.strip().lower()
    if token in ("+", "1", "true", "yes"):
        return True
    if token in ("-", "0", "false", "no", ""):
        return False
    raise CatalogError(f"bad capability flag: {text!r}")


def load_catalog(path: str | Path | None = None) -> Catalog:
    """Read a vessel catalog CSV (defaults to the bundled 27-type fixture)."""
    path = Path(path) if path is not None else data_dir() / "vessels.csv"
    vessels = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for lineno, row in enumerate(reader, start=2):
            try:
                vessels.append(VesselType(
                    name=row["name"].strip(),
                    year_of_delivery=int(row["year_of_delivery"]),
                    deadweight=float(row["deadweight"]),
                    deck_area=float(row["deck_area"]),
                    power=float(row["power_mw"]) * 1000.0,
                    ice_class=IceClass.parse(row["ice_class"]),
                    icebreaking_capability=float(row["icebreaking_capability"]),
                    fifi_class=int(row["fifi_class"]),
                    dp_class=int(row["dp_class"]),
                    oil_recovery=_parse_flag(row["oil_recovery"]),
                    towing=_parse_flag(row["towing"]),
                    anchor_handling=_parse_flag(row["anchor_handling"]),
                    standby=_parse_flag(row["standby"]),
                    displacement=float(row["displacement"]),
                    block_coefficient=float(row["block_coefficient"]),
                    charter_rate=float(row["charter_rate"]),
                    cruising_fuel_rate=float(row["cruising_fuel_rate"]),
                    cruising_speed=float(row["cruising_speed"]),
                ))
            except (KeyError, ValueError) as exc:
                raise CatalogError(f"{path}:{lineno}: {exc}") from exc
    return Catalog(vessels)
