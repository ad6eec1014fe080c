"""
Evolutionary scheduler over the Q x T assignment matrix.

Generational loop with tournament parent selection (size 2), single-point
row-wise/column-wise crossover, seven mutation methods, and elitist
replacement: the worst individuals are overwritten by the best children,
so the population minimum never regresses.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import _moves
from .circuit import LayeredCircuit
from .cost import (
    DEFAULT_LAMBDA,
    CostBreakdown,
    CostEvaluator,
    Schedule,
    check_feasible,
)
import numpy as np

from .network import NetworkTopology
from .annealing import _VECTOR_THRESHOLD, sequential_rows


@dataclass(frozen=True)
class EaParams:
    population_size: int = 100
    generations: int = 500
    crossover_rate: float = 0.9
    mutation_rate: float = 0.5
    offspring_rate: float = 0.5
    replace_rate: float = 0.5
    seed: int = 0
    lam: float = DEFAULT_LAMBDA

    def __post_init__(self):
        if self.population_size < 2 or self.generations < 1:
            raise ValueError("population_size >= 2 and generations >= 1 required")
        for name in ("crossover_rate", "mutation_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        for name in ("offspring_rate", "replace_rate"):
            if not 0.0 < getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in (0, 1]")
        if self.replace_rate > self.offspring_rate:
            raise ValueError("replace_rate cannot exceed offspring_rate")


def init_individual(
    lc: LayeredCircuit, net: NetworkTopology, rng: random.Random
) -> Schedule:
    """Coin flip between row-shuffled sequential fill and all-random cells."""
    if rng.random() < 0.5:
        check_feasible(lc, net)
        rows = sequential_rows(lc.num_qubits, lc.depth, net)
        rng.shuffle(rows)
        return Schedule(rows)
    return Schedule(
        [
            [rng.randrange(net.num_nodes) for _ in range(lc.depth)]
            for _ in range(lc.num_qubits)
        ]
    )


def crossover(p1: Schedule, p2: Schedule, rng: random.Random) -> Schedule:
    """Single-point crossover, row-wise or column-wise with equal odds."""
    if p1.num_qubits != p2.num_qubits or p1.num_steps != p2.num_steps:
        raise ValueError("crossover parents must have equal dimensions")
    row_wise = rng.random() < 0.5
    dim = p1.num_qubits if row_wise else p1.num_steps
    if dim < 2:
        return p1.copy()
    cut = rng.randint(1, dim - 1)
    if row_wise:
        rows = [r[:] for r in p1.rows[:cut]] + [r[:] for r in p2.rows[cut:]]
    else:
        rows = [r1[:cut] + r2[cut:] for r1, r2 in zip(p1.rows, p2.rows)]
    return Schedule(rows)


_MUTATIONS = (
    _moves.flip,
    None,  # multiple flip, handled inline
    _moves.swap_rows,
    _moves.swap_cols,
    _moves.swap_nodes,
    _moves.shuffle_rows,
    _moves.shuffle_cols,
)


def mutate(s: Schedule, rng: random.Random, num_nodes: int) -> Schedule:
    """One of seven methods, uniformly chosen; multi-flip repeats 2-5 times."""
    rows = [row[:] for row in s.rows]
    method = rng.randrange(len(_MUTATIONS))
    if method == 1:
        for _ in range(rng.randint(2, 5)):
            _moves.flip(rows, rng, num_nodes)
    else:
        _MUTATIONS[method](rows, rng, num_nodes)
    return Schedule(rows)


def evolve(
    lc: LayeredCircuit, net: NetworkTopology, p: EaParams
) -> tuple[Schedule, CostBreakdown, list[tuple[int, float, float]]]:
    """Returns (best schedule, its cost breakdown, trace of
    (generation, best_cost, mean_cost))."""
    check_feasible(lc, net)
    ev = CostEvaluator(lc, net, p.lam)
    rng = random.Random(p.seed)
    pop_size = p.population_size
    n_children = math.ceil(p.offspring_rate * pop_size)
    # the incumbent best always survives, even at replace_rate = 1
    n_replace = min(math.ceil(p.replace_rate * pop_size), pop_size - 1)

    if lc.num_qubits * lc.depth >= _VECTOR_THRESHOLD:
        def eval_all(group: list[Schedule]) -> list[float]:
            arr = np.asarray([s.rows for s in group], dtype=np.int64)
            return ev.total_batch(arr).tolist()
    else:
        def eval_all(group: list[Schedule]) -> list[float]:
            return [ev.total(s.rows) for s in group]

    population = [init_individual(lc, net, rng) for _ in range(pop_size)]
    costs = eval_all(population)

    def tournament() -> Schedule:
        a, b = rng.randrange(pop_size), rng.randrange(pop_size)
        return population[a] if costs[a] <= costs[b] else population[b]

    trace: list[tuple[int, float, float]] = []
    for gen in range(p.generations):
        children: list[Schedule] = []
        for _ in range(n_children):
            if rng.random() < p.crossover_rate:
                child = crossover(tournament(), tournament(), rng)
            else:
                child = init_individual(lc, net, rng)
            if rng.random() < p.mutation_rate:
                child = mutate(child, rng, net.num_nodes)
            children.append(child)
        child_costs = eval_all(children)
        # worst n_replace of the population make way for the best children
        best_children = sorted(range(n_children), key=lambda i: child_costs[i])
        worst_pop = sorted(range(pop_size), key=lambda i: -costs[i])
        for slot, ci in zip(worst_pop[:n_replace], best_children[:n_replace]):
            population[slot] = children[ci]
            costs[slot] = child_costs[ci]
        best = min(costs)
        trace.append((gen, best, sum(costs) / pop_size))

    best_idx = min(range(pop_size), key=lambda i: (costs[i], i))
    sched = population[best_idx]
    return sched, ev.breakdown(sched.rows), trace


def trace_csv(trace: list[tuple[int, float, float]]) -> str:
    lines = ["generation,best_cost,mean_cost"]
    lines += [f"{g},{b:g},{m:g}" for g, b, m in trace]
    return "\n".join(lines) + "\n"
