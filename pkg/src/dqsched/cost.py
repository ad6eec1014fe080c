"""
Qubit schedule (Q x T matrix of QPU assignments) and its communication cost.

The cost of a schedule has three parts:
  A  hop distance between control and target of every CX, per time step
  B  hop distance of every qubit relocation between consecutive time steps
  C  flat penalty (lambda) per node and time step whose occupancy exceeds
     the node's capacity

brute_force_optimum() enumerates every schedule of a tiny instance and is
the test oracle for the optimizers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .circuit import LayeredCircuit, cx_pairs_per_layer
from .network import NetworkTopology

DEFAULT_LAMBDA = 100.0


class ScheduleError(ValueError):
    """Schedule shape or entry out of contract."""


class Schedule:
    """Q x T assignment matrix; rows[q][t] is qubit q's node at time t."""

    __slots__ = ("rows",)

    def __init__(self, rows: list[list[int]]):
        if not rows or not rows[0]:
            raise ScheduleError("schedule must be non-empty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ScheduleError("ragged schedule rows")
        self.rows = [list(r) for r in rows]

    @property
    def num_qubits(self) -> int:
        return len(self.rows)

    @property
    def num_steps(self) -> int:
        return len(self.rows[0])

    def copy(self) -> "Schedule":
        return Schedule(self.rows)

    def validate(self, num_nodes: int) -> None:
        for r in self.rows:
            for v in r:
                if not 0 <= v < num_nodes:
                    raise ScheduleError(f"node index {v} out of range")

    def __eq__(self, other) -> bool:
        return isinstance(other, Schedule) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"Schedule({self.rows!r})"

    # CSV: header t0,...,t{T-1}; one row per qubit.
    def to_csv(self) -> str:
        header = ",".join(f"t{t}" for t in range(self.num_steps))
        body = "\n".join(",".join(str(v) for v in row) for row in self.rows)
        return f"{header}\n{body}\n"

    @classmethod
    def from_csv(cls, text: str) -> "Schedule":
        lines = [l for l in text.strip().splitlines() if l.strip()]
        if not lines or not lines[0].lstrip().startswith("t"):
            raise ScheduleError("missing schedule CSV header")
        try:
            rows = [[int(v) for v in line.split(",")] for line in lines[1:]]
        except ValueError:
            raise ScheduleError("non-integer schedule entry") from None
        return cls(rows)


@dataclass(frozen=True)
class CostBreakdown:
    a: float  # remote-gate distance sum
    b: float  # teleportation distance sum
    c: float  # capacity penalty sum
    total: float

    def __iter__(self):
        yield from (self.a, self.b, self.c, self.total)


class CostEvaluator:
    """Precomputed cost function for one (layered circuit, network) instance.

    total() is the optimizer hot path: plain-Python loops over flattened
    structures, no per-call allocation beyond the occupancy counts.
    """

    def __init__(
        self,
        lc: LayeredCircuit,
        net: NetworkTopology,
        lam: float = DEFAULT_LAMBDA,
    ):
        self.num_qubits = lc.num_qubits
        self.num_steps = lc.depth
        self.num_nodes = net.num_nodes
        self.lam = lam
        self.dist = [list(row) for row in net.dist]
        self.capacities = list(net.capacities)
        # (t, control, target) for every CX
        self.cx_terms = [
            (t, i, j)
            for t, pairs in enumerate(cx_pairs_per_layer(lc))
            for (i, j) in sorted(pairs)
        ]
        # vectorized mirror of the same structures
        self._dist_np = np.asarray(self.dist, dtype=np.int64)
        self._caps_np = np.asarray(self.capacities, dtype=np.int64)
        terms = np.asarray(self.cx_terms, dtype=np.int64).reshape(-1, 3)
        self._cx_t, self._cx_i, self._cx_j = terms[:, 0], terms[:, 1], terms[:, 2]
        self._node_ids = np.arange(self.num_nodes, dtype=np.int64)
        # reusable flat occupancy buffer (step-major) for the scalar hot path
        self._counts_zero = [0] * (self.num_steps * self.num_nodes)
        self._counts_buf = list(self._counts_zero)
        self._caps_flat = self.capacities * self.num_steps

    def total(self, rows: list[list[int]]) -> float:
        dist = self.dist
        acc = 0.0
        for t, i, j in self.cx_terms:
            acc += dist[rows[i][t]][rows[j][t]]
        nn = self.num_nodes
        steps = self.num_steps
        counts = self._counts_buf
        counts[:] = self._counts_zero
        for row in rows:
            prev = row[0]
            counts[prev] += 1
            drow = dist[prev]
            base = 0
            for t in range(1, steps):
                v = row[t]
                acc += drow[v]
                drow = dist[v]
                base += nn
                counts[base + v] += 1
        lam = self.lam
        for k, cap in zip(counts, self._caps_flat):
            if k > cap:
                acc += lam
        return acc

    def total_array(self, arr: np.ndarray) -> float:
        """total() over a (Q, T) integer array; used by the optimizer hot
        loops on large instances."""
        dist = self._dist_np
        a = int(dist[arr[self._cx_i, self._cx_t], arr[self._cx_j, self._cx_t]].sum())
        b = int(dist[arr[:, :-1], arr[:, 1:]].sum())
        occupancy = (arr[:, :, None] == self._node_ids).sum(axis=0)
        c = self.lam * int((occupancy > self._caps_np).sum())
        return a + b + c

    def total_batch(self, arr: np.ndarray) -> np.ndarray:
        """total() over a (K, Q, T) stack of schedules in one pass; the
        population-based optimizers evaluate whole generations this way."""
        dist = self._dist_np
        a = dist[
            arr[:, self._cx_i, self._cx_t], arr[:, self._cx_j, self._cx_t]
        ].sum(axis=1)
        b = dist[arr[:, :, :-1], arr[:, :, 1:]].sum(axis=(1, 2))
        occupancy = (arr[:, :, :, None] == self._node_ids).sum(axis=1)
        c = self.lam * (occupancy > self._caps_np).sum(axis=(1, 2))
        return (a + b).astype(np.float64) + c

    def breakdown(self, rows: list[list[int]]) -> CostBreakdown:
        dist = self.dist
        a = 0.0
        for t, i, j in self.cx_terms:
            a += dist[rows[i][t]][rows[j][t]]
        b = 0.0
        for row in rows:
            for t in range(1, self.num_steps):
                b += dist[row[t - 1]][row[t]]
        c = 0.0
        for t in range(self.num_steps):
            cnt = [0] * self.num_nodes
            for row in rows:
                cnt[row[t]] += 1
            for n, k in enumerate(cnt):
                if k > self.capacities[n]:
                    c += self.lam
        return CostBreakdown(a, b, c, a + b + c)


def cost(
    s: Schedule,
    lc: LayeredCircuit,
    net: NetworkTopology,
    lam: float = DEFAULT_LAMBDA,
) -> CostBreakdown:
    """Full cost of a schedule: CostBreakdown(a, b, c, total)."""
    if s.num_qubits != lc.num_qubits or s.num_steps != lc.depth:
        raise ScheduleError(
            f"schedule is {s.num_qubits}x{s.num_steps}, "
            f"circuit needs {lc.num_qubits}x{lc.depth}"
        )
    s.validate(net.num_nodes)
    return CostEvaluator(lc, net, lam).breakdown(s.rows)


def brute_force_optimum(
    lc: LayeredCircuit,
    net: NetworkTopology,
    lam: float = DEFAULT_LAMBDA,
    max_states: int = 2**20,
) -> tuple[Schedule, CostBreakdown]:
    """Exhaustive minimum over all schedules; ties go to the lexicographically
    smallest flattened (row-major) matrix. Only viable for tiny instances."""
    q, t, n = lc.num_qubits, lc.depth, net.num_nodes
    n_states = n ** (q * t)
    if n_states > max_states:
        raise ScheduleError(
            f"instance too large to enumerate: {n_states} > {max_states} schedules"
        )
    ev = CostEvaluator(lc, net, lam)
    best_rows: list[list[int]] | None = None
    best = float("inf")
    for flat in itertools.product(range(n), repeat=q * t):
        rows = [list(flat[i * t : (i + 1) * t]) for i in range(q)]
        c = ev.total(rows)
        if c < best:
            best, best_rows = c, rows
    assert best_rows is not None
    sched = Schedule(best_rows)
    return sched, ev.breakdown(sched.rows)


def check_feasible(lc: LayeredCircuit, net: NetworkTopology) -> None:
    """Every scheduling run requires total capacity >= qubit count."""
    if net.total_capacity < lc.num_qubits:
        raise ScheduleError(
            f"total capacity {net.total_capacity} cannot hold "
            f"{lc.num_qubits} qubits"
        )
