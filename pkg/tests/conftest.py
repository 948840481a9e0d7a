import pytest

from fleetopt import load_catalog, load_riv_table, bundled_scenario


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def riv_table():
    return load_riv_table()


@pytest.fixture(scope="session")
def case1():
    return bundled_scenario("case1")


@pytest.fixture(scope="session")
def case2():
    return bundled_scenario("case2")


@pytest.fixture(scope="session")
def case1_evaluator(catalog, case1, riv_table):
    from fleetopt.optimizer import make_evaluator
    return make_evaluator(catalog, case1, riv_table)
