"""
Simulated-annealing scheduler over the Q x T assignment matrix.

Starts from the sequential fill (node 0 gets qubits 0..cap-1, node 1 the
next block, constant over time), perturbs with one random move per
iteration, and cools geometrically with a temperature floor. Best solution
found is tracked separately from the current one and returned.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from . import _moves
from .circuit import LayeredCircuit
from .cost import (
    DEFAULT_LAMBDA,
    CostBreakdown,
    CostEvaluator,
    Schedule,
    check_feasible,
)
from .network import NetworkTopology

_MOVES = (
    _moves.flip,
    _moves.swap_rows,
    _moves.swap_cols,
    _moves.swap_nodes,
    _moves.shuffle_rows,
    _moves.shuffle_cols,
)


@dataclass(frozen=True)
class SaParams:
    max_iterations: int = 100_000
    initial_temp: float = 50.0
    cooling_rate: float = 0.999
    temp_floor: float = 0.00001
    seed: int = 0
    lam: float = DEFAULT_LAMBDA
    trace_stride: int = 1000

    def __post_init__(self):
        if not 0.0 < self.cooling_rate < 1.0:
            raise ValueError("cooling_rate must be in (0, 1)")
        if self.temp_floor <= 0.0:
            raise ValueError("temp_floor must be positive")
        if self.max_iterations < 1 or self.initial_temp <= 0.0:
            raise ValueError("max_iterations and initial_temp must be positive")


def accept_probability(
    current_cost: float, neighbor_cost: float, temperature: float
) -> float:
    """1 for improving neighbors, exp(-(n - c)/t) otherwise."""
    if neighbor_cost < current_cost:
        return 1.0
    return math.exp(-(neighbor_cost - current_cost) / temperature)


def neighbor(s: Schedule, rng: random.Random, num_nodes: int) -> Schedule:
    """A copy of s with one uniformly chosen move applied."""
    rows = [row[:] for row in s.rows]
    rng.choice(_MOVES)(rows, rng, num_nodes)
    return Schedule(rows)


def sequential_rows(num_qubits: int, num_steps: int, net: NetworkTopology) -> list[list[int]]:
    """Constant-in-time sequential fill: consecutive qubits per node."""
    assignment: list[int] = []
    for node, cap in enumerate(net.capacities):
        assignment.extend([node] * cap)
        if len(assignment) >= num_qubits:
            break
    return [[assignment[q]] * num_steps for q in range(num_qubits)]


# below this many matrix cells, plain-Python evaluation beats numpy overhead
_VECTOR_THRESHOLD = 200


def anneal(
    lc: LayeredCircuit, net: NetworkTopology, p: SaParams
) -> tuple[Schedule, CostBreakdown, list[tuple[int, float, float]]]:
    """Returns (best schedule, its cost breakdown, trace).

    Trace rows are (iteration, current_cost, best_cost), recorded every
    trace_stride iterations plus the final iteration.
    """
    check_feasible(lc, net)
    ev = CostEvaluator(lc, net, p.lam)
    initial = sequential_rows(lc.num_qubits, lc.depth, net)
    if lc.num_qubits * lc.depth >= _VECTOR_THRESHOLD:
        best, cc, bc, trace = _anneal_array(ev, initial, net.num_nodes, p)
    else:
        best, cc, bc, trace = _anneal_lists(ev, initial, net.num_nodes, p)
    sched = Schedule(best)
    return sched, ev.breakdown(sched.rows), trace


def _anneal_lists(
    ev: CostEvaluator, initial: list[list[int]], n_nodes: int, p: SaParams
):
    rng = random.Random(p.seed)
    moves = _MOVES
    total = ev.total
    rand = rng.random
    choice = rng.choice
    exp = math.exp

    current = initial
    cc = total(current)
    best = [row[:] for row in current]
    bc = cc

    temp = p.initial_temp
    cooling = p.cooling_rate
    floor = p.temp_floor
    stride = p.trace_stride
    trace: list[tuple[int, float, float]] = []

    for i in range(p.max_iterations):
        temp *= cooling
        if temp < floor:
            temp = floor
        cand = [row[:] for row in current]
        choice(moves)(cand, rng, n_nodes)
        nc = total(cand)
        if nc <= cc or rand() < exp(-(nc - cc) / temp):
            current, cc = cand, nc
            if cc < bc:
                best = [row[:] for row in current]
                bc = cc
        if stride and i % stride == 0:
            trace.append((i, cc, bc))
    trace.append((p.max_iterations - 1, cc, bc))
    return best, cc, bc, trace


def _move_array(arr: np.ndarray, rng: random.Random, n_nodes: int) -> None:
    """Same move vocabulary as _moves, on a (Q, T) integer array."""
    q_n, t_n = arr.shape
    kind = rng.randrange(6)
    if kind == 0:  # flip
        if n_nodes < 2:
            return
        q, t = rng.randrange(q_n), rng.randrange(t_n)
        new = rng.randrange(n_nodes - 1)
        arr[q, t] = new if new < arr[q, t] else new + 1
    elif kind == 1:  # swap rows
        if q_n < 2:
            return
        a, b = _moves._two_distinct(rng, q_n)
        arr[[a, b]] = arr[[b, a]]
    elif kind == 2:  # swap columns
        if t_n < 2:
            return
        a, b = _moves._two_distinct(rng, t_n)
        arr[:, [a, b]] = arr[:, [b, a]]
    elif kind == 3:  # swap two nodes' qubit sets at one step
        if n_nodes < 2:
            return
        t = rng.randrange(t_n)
        a, b = _moves._two_distinct(rng, n_nodes)
        col = arr[:, t]
        mask_a = col == a
        col[col == b] = a
        col[mask_a] = b
    elif kind == 4:  # shuffle contiguous rows
        if q_n < 2:
            return
        a, b = sorted(_moves._two_distinct(rng, q_n + 1))
        perm = list(range(a, b))
        rng.shuffle(perm)
        arr[a:b] = arr[perm]
    else:  # shuffle contiguous columns
        if t_n < 2:
            return
        a, b = sorted(_moves._two_distinct(rng, t_n + 1))
        perm = list(range(a, b))
        rng.shuffle(perm)
        arr[:, a:b] = arr[:, perm]


def _anneal_array(
    ev: CostEvaluator, initial: list[list[int]], n_nodes: int, p: SaParams
):
    rng = random.Random(p.seed)
    total = ev.total_array
    rand = rng.random
    exp = math.exp

    current = np.asarray(initial, dtype=np.int64)
    cc = total(current)
    best = current.copy()
    bc = cc

    temp = p.initial_temp
    cooling = p.cooling_rate
    floor = p.temp_floor
    stride = p.trace_stride
    trace: list[tuple[int, float, float]] = []

    for i in range(p.max_iterations):
        temp *= cooling
        if temp < floor:
            temp = floor
        cand = current.copy()
        _move_array(cand, rng, n_nodes)
        nc = total(cand)
        if nc <= cc or rand() < exp(-(nc - cc) / temp):
            current, cc = cand, nc
            if cc < bc:
                best = current.copy()
                bc = cc
        if stride and i % stride == 0:
            trace.append((i, cc, bc))
    trace.append((p.max_iterations - 1, cc, bc))
    return [list(map(int, row)) for row in best], cc, bc, trace


def trace_csv(trace: list[tuple[int, float, float]]) -> str:
    lines = ["iteration,current_cost,best_cost"]
    lines += [f"{i},{c:g},{b:g}" for i, c, b in trace]
    return "\n".join(lines) + "\n"
