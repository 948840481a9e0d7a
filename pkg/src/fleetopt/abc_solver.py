"""Integer artificial-bee-colony search for fleet count vectors.

Food sources are non-negative integer vectors.  Employed bees perturb one
coordinate of their source toward/away from a random peer, onlookers repeat
that on sources drawn by fitness-proportional roulette, and sources that
fail to improve for ``limit`` trials are abandoned to scouts.  All
randomness comes from one seeded generator, so runs are reproducible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

Objective = Callable[[tuple[int, ...]], float]


@dataclass(frozen=True)
class AbcParams:
    colony_size: int = 40          # employed + onlooker bees; food sources are half
    max_cycles: int = 500
    seed: int = 0
    limit: int | None = None       # scout trigger; default food_sources * dimension

    def __post_init__(self):
        if self.colony_size < 4 or self.colony_size % 2:
            raise ValueError("colony_size must be an even number >= 4")
        if self.max_cycles < 1:
            raise ValueError("max_cycles must be positive")

    @property
    def food_sources(self) -> int:
        return self.colony_size // 2


@dataclass(frozen=True)
class TracePoint:
    cycle: int
    counts: tuple[int, ...]
    objective: float


@dataclass
class AbcResult:
    best_counts: tuple[int, ...]
    best_objective: float
    trace: list[TracePoint] = field(default_factory=list)
    cycles: int = 0
    evaluations: int = 0


def fitness(value: float) -> float:
    """Map an objective value to maximization-friendly fitness."""
    if value >= 0:
        return 1.0 / (1.0 + value)
    return 1.0 + abs(value)


def neighbor(x_i: Sequence[int], j: int, x_k: Sequence[int],
             rng: random.Random, upper_bound: int | None = None) -> int:
    """New value for coordinate ``j`` of source ``x_i``, steered by peer ``x_k``.

    The coordinate moves a random fraction of its distance to the peer's
    coordinate (in either direction), is reflected to stay non-negative and
    clamped to ``upper_bound`` when one is given.
    """
    phi = rng.uniform(-1.0, 1.0)
    moved = abs(x_i[j] + round(phi * (x_i[j] - x_k[j])))
    if upper_bound is not None:
        moved = min(moved, upper_bound)
    return moved


def selection_probabilities(fitnesses: Sequence[float]) -> list[float]:
    """Roulette weights for the onlooker phase, proportional to fitness."""
    if not fitnesses:
        raise ValueError("at least one fitness value required")
    total = sum(fitnesses)
    if total <= 0:
        raise ValueError("fitness values must be positive")
    return [f / total for f in fitnesses]


def solve(objective: Objective, dimension: int,
          upper_bounds: int | Sequence[int],
          params: AbcParams | None = None) -> AbcResult:
    params = params or AbcParams()
    if dimension < 1:
        raise ValueError("dimension must be positive")
    if isinstance(upper_bounds, int):
        bounds = [upper_bounds] * dimension
    else:
        bounds = [int(b) for b in upper_bounds]
        if len(bounds) != dimension:
            raise ValueError("one upper bound per dimension required")
    if any(b < 0 for b in bounds):
        raise ValueError("upper bounds must be non-negative")

    rng = random.Random(params.seed)
    n_sources = params.food_sources
    limit = params.limit if params.limit is not None else n_sources * dimension
    result = AbcResult(best_counts=(), best_objective=float("inf"))

    def evaluate(counts: tuple[int, ...], cycle: int) -> float:
        value = objective(counts)
        result.evaluations += 1
        if value < result.best_objective:
            result.best_objective = value
            result.best_counts = counts
            result.trace.append(TracePoint(cycle, counts, value))
        return value

    def random_source(cycle: int):
        counts = tuple(rng.randint(0, b) for b in bounds)
        return [counts, evaluate(counts, cycle), 0]

    def neighbor_move(i: int, cycle: int) -> None:
        source = sources[i]
        j = rng.randrange(dimension)
        k = rng.randrange(n_sources - 1)
        if k >= i:
            k += 1
        x = source[0][j]
        moved = neighbor(source[0], j, sources[k][0], rng, bounds[j])
        if moved == x:
            source[2] += 1
            return
        candidate = source[0][:j] + (moved,) + source[0][j + 1:]
        value = evaluate(candidate, cycle)
        if fitness(value) > fitness(source[1]):
            sources[i] = [candidate, value, 0]
        else:
            source[2] += 1

    sources = [random_source(0) for _ in range(n_sources)]

    for cycle in range(1, params.max_cycles + 1):
        result.cycles = cycle
        for i in range(n_sources):          # employed bees
            neighbor_move(i, cycle)
        probs = selection_probabilities([fitness(s[1]) for s in sources])
        for _ in range(n_sources):          # onlooker bees
            pick = rng.random()
            acc = 0.0
            chosen = n_sources - 1
            for i, p in enumerate(probs):
                acc += p
                if pick <= acc:
                    chosen = i
                    break
            neighbor_move(chosen, cycle)
        for i in range(n_sources):          # scouts
            if sources[i][2] >= limit:
                sources[i] = random_source(cycle)

    return result
