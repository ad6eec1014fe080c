"""
Static assignment baselines: graph partitioning of the qubit-interaction
graph, sequential fill, and shuffled sequential fill. Each produces a
schedule that is constant over time, so its cost has no teleportation or
capacity component.

The partitioner is recursive balanced bisection with pairwise-swap
(Kernighan-Lin style) refinement; instances here are small enough that a
multilevel tool is unnecessary.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .circuit import Circuit, GateKind, LayeredCircuit
from .cost import Schedule, check_feasible
from .network import NetworkTopology


class PartitionError(ValueError):
    """Infeasible capacities for the requested partition."""


@dataclass(frozen=True)
class InteractionGraph:
    """Qubits as vertices, CX counts (either orientation) as edge weights."""

    num_qubits: int
    weights: tuple[tuple[int, ...], ...]


def interaction_graph(c: Circuit) -> InteractionGraph:
    w = [[0] * c.num_qubits for _ in range(c.num_qubits)]
    for g in c.gates:
        if g.kind is GateKind.CX:
            i, j = g.qubits
            w[i][j] += 1
            w[j][i] += 1
    return InteractionGraph(c.num_qubits, tuple(tuple(r) for r in w))


def cut_weight(g: InteractionGraph, assignment: list[int]) -> int:
    acc = 0
    for i in range(g.num_qubits):
        for j in range(i + 1, g.num_qubits):
            if assignment[i] != assignment[j]:
                acc += g.weights[i][j]
    return acc


def partition(
    g: InteractionGraph,
    k: int,
    part_capacity: list[int] | tuple[int, ...],
    seed: int = 0,
) -> list[int]:
    """Capacity-bounded k-way min-cut partition of the interaction graph.

    Recursive bisection: split the parts into two groups, divide the qubits
    between the groups (seeded greedy start, then exhaustive improving
    swaps/moves until none remain), recurse into each group.
    """
    if len(part_capacity) != k:
        raise PartitionError("one capacity per part required")
    if sum(part_capacity) < g.num_qubits:
        raise PartitionError("parts cannot hold all qubits")
    rng = random.Random(seed)
    assignment = [-1] * g.num_qubits
    _bisect(g, list(range(g.num_qubits)), list(range(k)), list(part_capacity),
            assignment, rng)
    return assignment


def _bisect(
    g: InteractionGraph,
    qubits: list[int],
    parts: list[int],
    caps: list[int],
    assignment: list[int],
    rng: random.Random,
) -> None:
    if len(parts) == 1:
        for q in qubits:
            assignment[q] = parts[0]
        return
    mid = len(parts) // 2
    left, right = parts[:mid], parts[mid:]
    cap_l = sum(caps[parts.index(p)] for p in left)
    cap_r = sum(caps[parts.index(p)] for p in right)
    side = _bipartition(g, qubits, cap_l, cap_r, rng)
    q_left = [q for q, s in zip(qubits, side) if s == 0]
    q_right = [q for q, s in zip(qubits, side) if s == 1]
    _bisect(g, q_left, left, [caps[parts.index(p)] for p in left], assignment, rng)
    _bisect(g, q_right, right, [caps[parts.index(p)] for p in right], assignment, rng)


def _bipartition(
    g: InteractionGraph,
    qubits: list[int],
    cap_l: int,
    cap_r: int,
    rng: random.Random,
) -> list[int]:
    """Split `qubits` into sides 0/1 under the capacity bounds, minimizing
    crossing weight. Greedy seeded start, then steepest improving swap or
    move until a local optimum; refinement never increases the cut."""
    n = len(qubits)
    if cap_l + cap_r < n:
        raise PartitionError("parts cannot hold all qubits")
    order = qubits[:]
    rng.shuffle(order)
    # balanced target size for the left side, clamped by both capacities
    size_l = min(cap_l, max(n - cap_r, round(n * cap_l / (cap_l + cap_r))))
    on_left = set(order[:size_l])
    side = {q: (0 if q in on_left else 1) for q in qubits}
    w = g.weights

    def gain_swap(a: int, b: int) -> int:
        # cut reduction from exchanging sides of a and b
        acc = 0
        for q in qubits:
            if q in (a, b):
                continue
            if side[q] == side[a]:
                acc += w[b][q] - w[a][q]
            else:
                acc += w[a][q] - w[b][q]
        return acc

    def gain_move(a: int) -> int:
        acc = 0
        for q in qubits:
            if q == a:
                continue
            acc += w[a][q] if side[q] != side[a] else -w[a][q]
        return acc

    while True:
        best_gain, best_op = 0, None
        n_l = sum(1 for q in qubits if side[q] == 0)
        for i, a in enumerate(sorted(qubits)):
            for b in sorted(qubits)[i + 1 :]:
                if side[a] == side[b]:
                    continue
                gain = gain_swap(a, b)
                if gain > best_gain:
                    best_gain, best_op = gain, ("swap", a, b)
            # single move, if the destination side has slack
            dest_has_room = (n_l < cap_l) if side[a] == 1 else (n - n_l < cap_r)
            if dest_has_room:
                gain = gain_move(a)
                if gain > best_gain:
                    best_gain, best_op = gain, ("move", a, None)
        if best_op is None:
            break
        _, a, b = best_op
        if b is None:
            side[a] ^= 1
        else:
            side[a], side[b] = side[b], side[a]
    return [side[q] for q in qubits]


def _static(assignment: list[int], num_steps: int) -> Schedule:
    return Schedule([[node] * num_steps for node in assignment])


def gp_schedule(
    c: Circuit,
    lc: LayeredCircuit,
    net: NetworkTopology,
    seed: int = 0,
) -> Schedule:
    """Static schedule from the interaction-graph partition; part p is QPU p."""
    check_feasible(lc, net)
    parts = partition(interaction_graph(c), net.num_nodes, net.capacities, seed)
    return _static(parts, lc.depth)


def sequential_schedule(lc: LayeredCircuit, net: NetworkTopology) -> Schedule:
    """Qubits 0..cap-1 on node 0, the next block on node 1, and so on."""
    check_feasible(lc, net)
    assignment: list[int] = []
    for node, cap in enumerate(net.capacities):
        assignment.extend([node] * cap)
    return _static(assignment[: lc.num_qubits], lc.depth)


def random_sequential_schedule(
    lc: LayeredCircuit, net: NetworkTopology, seed: int
) -> Schedule:
    """Sequential fill with the qubit rows shuffled; per-node loads unchanged."""
    check_feasible(lc, net)
    base = sequential_schedule(lc, net)
    rng = random.Random(seed)
    rows = base.rows
    rng.shuffle(rows)
    return Schedule(rows)
