"""Minimum-cost planning of offshore drilling support fleets in ice waters."""

from .abc_solver import AbcParams, AbcResult, solve
from .catalog import Catalog, IceClass, VesselType, load_catalog
from .evaluator import FleetEvaluation, FleetEvaluator, INFEASIBLE_PENALTY
from .ice import RivTable, load_riv_table
from .ice_management import IceManagementPlan, optimize_ice_fleet
from .optimizer import (FullSolution, evaluate_named_fleet, kpi_report,
                        optimize, sensitivity_run)
from .scenario import Scenario, ScenarioError, bundled_scenario, load_scenario

__version__ = "1.0.0"

__all__ = [
    "AbcParams", "AbcResult", "Catalog", "FleetEvaluation", "FleetEvaluator",
    "FullSolution", "IceClass", "IceManagementPlan", "INFEASIBLE_PENALTY",
    "RivTable", "Scenario", "ScenarioError", "VesselType", "bundled_scenario",
    "evaluate_named_fleet", "kpi_report", "load_catalog", "load_riv_table",
    "load_scenario", "optimize", "optimize_ice_fleet", "sensitivity_run",
    "solve", "__version__",
]
