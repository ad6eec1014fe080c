"""
Evolutionary circuit optimizer: rewrites the gate sequence itself so that
the rewritten circuit prepares (within a fidelity margin) the same state as
the original while its graph-partitioned schedule costs less.

Fitness of a candidate C against original U on network net:

    penalty                          if F(run(U), C) < 1 - epsilon
    F(run(U), C) - u(C) / u(U)       otherwise

where u(.) is the total cost of the circuit's graph-partitioning baseline
schedule. Positive fitness therefore certifies both high fidelity and a
strict communication-cost reduction.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass

from .baselines import gp_schedule
from .circuit import (
    SINGLE_QUBIT_KINDS,
    Circuit,
    Gate,
    GateKind,
    cx,
    layerize,
    rz,
)
from .cost import CostEvaluator, Schedule
from .network import NetworkTopology
from .simulator import StateVector, fidelity, run


class CommunicationFreeError(ValueError):
    """Original circuit is already communication-free; nothing to optimize."""


@dataclass(frozen=True)
class QcoParams:
    population_size: int = 60
    generations: int = 200
    crossover_rate: float = 0.7
    mutation_rate: float = 0.8
    offspring_rate: float = 0.5
    replace_rate: float = 0.5
    seed: int = 0
    epsilon: float = 0.003
    penalty: float = -100.0
    max_gates: int = 100

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must be in (0, 1)")
        if self.max_gates < 1:
            raise ValueError("max_gates must be positive")
        if self.population_size < 2 or self.generations < 1:
            raise ValueError("population_size >= 2 and generations >= 1 required")
        if self.replace_rate > self.offspring_rate:
            raise ValueError("replace_rate cannot exceed offspring_rate")


@dataclass(frozen=True)
class QcoReport:
    best_fitness: float
    fidelity: float
    u_original: float
    u_optimized: float
    generations_run: int
    seed: int
    success: bool
    schedule: Schedule | None

    def to_json(self) -> str:
        return json.dumps(
            {
                "best_fitness": self.best_fitness,
                "fidelity": self.fidelity,
                "u_original": self.u_original,
                "u_optimized": self.u_optimized,
                "generations_run": self.generations_run,
                "seed": self.seed,
                "success": self.success,
            },
            indent=2,
        )


def schedule_cost(c: Circuit, net: NetworkTopology, seed: int = 0) -> float:
    """u(.): total cost of the circuit's GP baseline schedule."""
    lc = layerize(c)
    if lc.depth == 0:
        return 0.0
    sched = gp_schedule(c, lc, net, seed)
    return CostEvaluator(lc, net).total(sched.rows)


def qco_fitness(
    original: Circuit,
    candidate: Circuit,
    net: NetworkTopology,
    *,
    epsilon: float = 0.003,
    penalty: float = -100.0,
    gp_seed: int = 0,
    target: StateVector | None = None,
    u_original: float | None = None,
) -> float:
    """Penalized fidelity/cost fitness; target and u(original) may be reused
    across calls to avoid re-simulation."""
    if original.num_qubits != candidate.num_qubits:
        raise ValueError("original and candidate qubit counts differ")
    if target is None:
        target = run(original)
    if u_original is None:
        u_original = schedule_cost(original, net, gp_seed)
    if u_original == 0:
        raise CommunicationFreeError("already communication-free")
    f = fidelity(target, candidate)
    if f < 1.0 - epsilon:
        return penalty
    return f - schedule_cost(candidate, net, gp_seed) / u_original


# --- genome operations ------------------------------------------------------

Genes = list[Gate]


def random_gate(num_qubits: int, rng: random.Random) -> Gate:
    kind = rng.choice((GateKind.X, GateKind.SX, GateKind.RZ, GateKind.CX))
    if kind is GateKind.CX:
        a, b = rng.sample(range(num_qubits), 2)
        return cx(a, b)
    q = rng.randrange(num_qubits)
    if kind is GateKind.RZ:
        return rz(q, rng.uniform(0.0, 2.0 * math.pi))
    return Gate(kind, (q,))


def random_genes(num_qubits: int, max_gates: int, rng: random.Random) -> Genes:
    return [
        random_gate(num_qubits, rng) for _ in range(rng.randint(1, max_gates))
    ]


def qco_crossover(
    p1: Genes, p2: Genes, rng: random.Random, max_gates: int = 100
) -> Genes:
    """Single-point (independent cuts) or uniform crossover, equal odds;
    the child never exceeds max_gates."""
    if rng.random() < 0.5:
        cut1 = rng.randint(0, len(p1))
        cut2 = rng.randint(0, len(p2))
        child = p1[:cut1] + p2[cut2:]
    else:
        short, long_ = (p1, p2) if len(p1) <= len(p2) else (p2, p1)
        child = [
            (a if rng.random() < 0.5 else b) for a, b in zip(p1, p2)
        ]
        if len(long_) > len(short) and rng.random() < 0.5:
            child += long_[len(short):]
    return child[:max_gates]


def qco_mutate(
    genes: Genes, rng: random.Random, max_gates: int, num_qubits: int
) -> Genes:
    """One uniformly chosen method: add / remove / swap gates /
    shuffle subset / mutate gate."""
    out = genes[:]
    method = rng.randrange(5)
    if method == 0:  # add, suppressed at the cap
        if len(out) < max_gates:
            out.insert(rng.randint(0, len(out)), random_gate(num_qubits, rng))
    elif method == 1:  # remove
        if out:
            out.pop(rng.randrange(len(out)))
    elif method == 2:  # swap two positions
        if len(out) >= 2:
            a, b = rng.sample(range(len(out)), 2)
            out[a], out[b] = out[b], out[a]
    elif method == 3:  # shuffle a contiguous subset
        if len(out) >= 2:
            a, b = sorted(rng.sample(range(len(out) + 1), 2))
            chunk = out[a:b]
            rng.shuffle(chunk)
            out[a:b] = chunk
    else:  # re-randomize one gate
        if out:
            out[rng.randrange(len(out))] = random_gate(num_qubits, rng)
    return out


def qco_evolve(
    original: Circuit, net: NetworkTopology, p: QcoParams
) -> tuple[Circuit, float, QcoReport]:
    """Elitist generational EA over gate sequences.

    Returns the best circuit found, its fitness, and a report. When every
    individual ever evaluated fell below the fidelity bar, the report has
    success=False and the original circuit is returned unchanged.
    """
    if original.num_qubits < 2:
        raise ValueError("need at least 2 qubits")
    rng = random.Random(p.seed)
    target = run(original)
    u_orig = schedule_cost(original, net, p.seed)
    if u_orig == 0:
        raise CommunicationFreeError("already communication-free")

    memo: dict[tuple[Gate, ...], float] = {}

    def evaluate(genes: Genes) -> float:
        key = tuple(genes)
        hit = memo.get(key)
        if hit is not None:
            return hit
        fit = qco_fitness(
            original,
            Circuit(original.num_qubits, tuple(genes)),
            net,
            epsilon=p.epsilon,
            penalty=p.penalty,
            gp_seed=p.seed,
            target=target,
            u_original=u_orig,
        )
        memo[key] = fit
        return fit

    pop_size = p.population_size
    n_children = math.ceil(p.offspring_rate * pop_size)
    n_replace = min(math.ceil(p.replace_rate * pop_size), pop_size - 1)
    population: list[Genes] = [
        list(original.gates)
        if rng.random() < 0.5
        else random_genes(original.num_qubits, p.max_gates, rng)
        for _ in range(pop_size)
    ]
    fits = [evaluate(g) for g in population]

    def tournament() -> Genes:
        a, b = rng.randrange(pop_size), rng.randrange(pop_size)
        return population[a] if fits[a] >= fits[b] else population[b]

    for _ in range(p.generations):
        children: list[Genes] = []
        for _ in range(n_children):
            if rng.random() < p.crossover_rate:
                child = qco_crossover(tournament(), tournament(), rng, p.max_gates)
            else:
                child = random_genes(original.num_qubits, p.max_gates, rng)
            if rng.random() < p.mutation_rate:
                child = qco_mutate(child, rng, p.max_gates, original.num_qubits)
            children.append(child)
        child_fits = [evaluate(g) for g in children]
        best_children = sorted(range(n_children), key=lambda i: -child_fits[i])
        worst_pop = sorted(range(pop_size), key=lambda i: fits[i])
        for slot, ci in zip(worst_pop[:n_replace], best_children[:n_replace]):
            population[slot] = children[ci]
            fits[slot] = child_fits[ci]

    best_idx = max(range(pop_size), key=lambda i: (fits[i], -i))
    best_fit = fits[best_idx]
    success = best_fit > p.penalty
    best_circuit = (
        Circuit(original.num_qubits, tuple(population[best_idx]))
        if success
        else original
    )
    lc = layerize(best_circuit)
    if lc.depth:
        sched = gp_schedule(best_circuit, lc, net, p.seed)
        u_opt = CostEvaluator(lc, net).total(sched.rows)
    else:  # gate-free winner: nothing to schedule, nothing to communicate
        sched = None
        u_opt = 0.0
    report = QcoReport(
        best_fitness=best_fit,
        fidelity=fidelity(target, best_circuit),
        u_original=u_orig,
        u_optimized=u_opt,
        generations_run=p.generations,
        seed=p.seed,
        success=success,
        schedule=sched,
    )
    return best_circuit, best_fit, report
