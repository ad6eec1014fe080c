"""
Quantum-network topology: QPU graph with per-node qubit capacities and
precomputed all-pairs hop distances.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


class TopologyError(ValueError):
    """Invalid or disconnected topology."""


def all_pairs_hops(
    edges: set[tuple[int, int]] | frozenset[tuple[int, int]], num_nodes: int
) -> tuple[tuple[int, ...], ...]:
    """Exact hop counts via BFS from every node; rejects disconnected graphs."""
    adj: list[list[int]] = [[] for _ in range(num_nodes)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    dist: list[tuple[int, ...]] = []
    for src in range(num_nodes):
        row = [-1] * num_nodes
        row[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if row[v] < 0:
                    row[v] = row[u] + 1
                    queue.append(v)
        if any(d < 0 for d in row):
            raise TopologyError("graph is disconnected")
        dist.append(tuple(row))
    return tuple(dist)


@dataclass(frozen=True)
class NetworkTopology:
    """Connected QPU graph; immutable after construction."""

    num_nodes: int
    edges: frozenset[tuple[int, int]]
    capacities: tuple[int, ...]
    dist: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if self.num_nodes < 1:
            raise TopologyError("need at least one node")
        if len(self.capacities) != self.num_nodes:
            raise TopologyError("one capacity per node required")
        if any(c < 1 for c in self.capacities):
            raise TopologyError("capacities must be positive")
        norm = frozenset(
            (min(a, b), max(a, b)) for a, b in self.edges
        )
        for a, b in norm:
            if a == b or not (0 <= a < self.num_nodes and 0 <= b < self.num_nodes):
                raise TopologyError(f"bad edge ({a}, {b})")
        object.__setattr__(self, "edges", norm)
        if not self.dist:
            object.__setattr__(self, "dist", all_pairs_hops(norm, self.num_nodes))

    @property
    def total_capacity(self) -> int:
        return sum(self.capacities)


def build_grid(rows: int, cols: int, capacity: int) -> NetworkTopology:
    """4-neighbor lattice; node id = row*cols + col; uniform capacity."""
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise TopologyError("grid needs at least 2 nodes")
    edges = set()
    for r in range(rows):
        for c in range(cols):
            n = r * cols + c
            if c + 1 < cols:
                edges.add((n, n + 1))
            if r + 1 < rows:
                edges.add((n, n + cols))
    return NetworkTopology(rows * cols, frozenset(edges), (capacity,) * (rows * cols))


def build_star(num_nodes: int, capacity: int) -> NetworkTopology:
    """Node 0 is the hub; every other node hangs off it."""
    if num_nodes < 2:
        raise TopologyError("star needs at least 2 nodes")
    edges = frozenset((0, k) for k in range(1, num_nodes))
    return NetworkTopology(num_nodes, edges, (capacity,) * num_nodes)


# --- text format -----------------------------------------------------------
#
#   nodes <N>
#   cap <node> <k>      (defaults to default_capacity when omitted)
#   edge <a> <b>


def serialize_topology(net: NetworkTopology) -> str:
    lines = [f"nodes {net.num_nodes}"]
    lines += [f"cap {n} {c}" for n, c in enumerate(net.capacities)]
    lines += [f"edge {a} {b}" for a, b in sorted(net.edges)]
    return "\n".join(lines) + "\n"


def parse_topology(text: str, default_capacity: int = 2) -> NetworkTopology:
    num_nodes: int | None = None
    caps: dict[int, int] = {}
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            if tokens[0] == "nodes" and len(tokens) == 2:
                num_nodes = int(tokens[1])
            elif tokens[0] == "cap" and len(tokens) == 3:
                caps[int(tokens[1])] = int(tokens[2])
            elif tokens[0] == "edge" and len(tokens) == 3:
                edges.add((int(tokens[1]), int(tokens[2])))
            else:
                raise TopologyError(f"line {lineno}: unrecognized construct {line!r}")
        except ValueError:
            raise TopologyError(f"line {lineno}: expected integers in {line!r}") from None
    if num_nodes is None:
        raise TopologyError("missing nodes declaration")
    capacities = tuple(caps.get(n, default_capacity) for n in range(num_nodes))
    return NetworkTopology(num_nodes, frozenset(edges), capacities)
