import pytest

from fleetopt.catalog import Catalog, CatalogError, IceClass, normalize_name


def test_catalog_has_27_types(catalog):
    assert len(catalog) == 27


def test_lookup_by_short_name(catalog):
    vessel = catalog.get("Type1")
    assert vessel.name.startswith("Type 1 ")
    assert catalog.get("type 1 (vladimir ignatiuk)") is vessel


def test_unknown_name_raises(catalog):
    with pytest.raises(CatalogError):
        catalog.get("Type 99")


def test_type1_particulars(catalog):
    v = catalog.get("Type1")
    assert v.year_of_delivery == 1982
    assert v.deadweight == 2110
    assert v.deck_area == 470
    assert v.power == 17000.0       # stored in kW
    assert v.ice_class is IceClass.PC3
    assert v.fifi_class == 0
    assert v.dp_class == 0
    assert v.towing and v.anchor_handling and v.standby
    assert not v.oil_recovery
    assert v.charter_rate == 32750
    assert v.supply                 # deck area > 0


def test_all_types_supply_capable(catalog):
    assert all(v.supply for v in catalog)


def test_ice_class_rank_ladder():
    order = [IceClass.PC1, IceClass.PC2, IceClass.PC3, IceClass.PC4,
             IceClass.PC5, IceClass.PC6, IceClass.PC7, IceClass.IA_SUPER,
             IceClass.IA, IceClass.IB, IceClass.IC, IceClass.NONE]
    ranks = [c.rank for c in order]
    assert ranks == list(range(11, -1, -1))
    assert IceClass.PC3 > IceClass.PC4
    assert IceClass.NONE < IceClass.IC


def test_ice_class_parse():
    assert IceClass.parse("PC 3") is IceClass.PC3
    assert IceClass.parse("-") is IceClass.NONE
    with pytest.raises(ValueError):
        IceClass.parse("PC 99")


def test_normalize_name():
    assert normalize_name("Type 10 (CCGS Vincent Massey)") == \
        normalize_name("type10(ccgsvincentmassey)")


def test_scale_charter_rates(catalog):
    doubled = catalog.scale_charter_rates(2.0)
    assert doubled.get("Type1").charter_rate == 2 * catalog.get("Type1").charter_rate
    # original untouched
    assert catalog.get("Type1").charter_rate == 32750


def test_subset(catalog):
    keep = [catalog.get("Type1"), catalog.get("Type7")]
    sub = catalog.subset(keep)
    assert len(sub) == 2
    assert sub.get("Type7") is catalog.get("Type7")


def test_duplicate_names_rejected(catalog):
    v = catalog.get("Type1")
    with pytest.raises(CatalogError):
        Catalog([v, v])
