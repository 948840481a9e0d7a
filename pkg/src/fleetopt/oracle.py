"""Exhaustive reference search over small fleet spaces.

Used to validate the stochastic solver: on catalogs small enough to scan
completely, the bee colony must land on the same minimum.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .catalog import Catalog
from .evaluator import FleetEvaluator, INFEASIBLE_PENALTY
from .ice import RivTable
from .optimizer import make_evaluator
from .scenario import Scenario


@dataclass(frozen=True)
class OracleResult:
    counts: tuple[int, ...]
    objective: float
    evaluations: int
    type_names: tuple[str, ...] = ()

    @property
    def feasible(self) -> bool:
        return self.objective < INFEASIBLE_PENALTY

    def counts_by_name(self) -> dict[str, int]:
        return {name: c for name, c in zip(self.type_names, self.counts) if c}


def exhaustive_minimum(evaluator: FleetEvaluator,
                       max_count_per_type: int) -> OracleResult:
    """Scan every count vector; ties break to the lexicographically smallest."""
    dimension = len(evaluator.types)
    space = (max_count_per_type + 1) ** dimension
    if space > 5_000_000:
        raise ValueError(f"search space of {space} fleets is too large to scan")
    best_counts: tuple[int, ...] | None = None
    best_value = float("inf")
    n = 0
    for counts in itertools.product(range(max_count_per_type + 1),
                                    repeat=dimension):
        n += 1
        value = evaluator.objective(counts)
        if value < best_value:
            best_value, best_counts = value, counts
    names = tuple(t.name for t in evaluator.types)
    return OracleResult(best_counts, best_value, n, names)


def oracle_optimize(catalog: Catalog, scenario: Scenario, riv_table: RivTable,
                    max_count_per_type: int = 2) -> OracleResult:
    """Exhaustive stage-1 optimum after the usual ice-operability screen."""
    evaluator = make_evaluator(catalog, scenario, riv_table)
    return exhaustive_minimum(evaluator, max_count_per_type)
