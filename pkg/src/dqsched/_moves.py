"""
Shared schedule-matrix perturbations.

The annealer's neighbor moves and the scheduler EA's mutations draw from
the same vocabulary; each function mutates `rows` in place and expects a
private copy. Moves on degenerate dimensions (single row/column/node)
degrade to no-ops.
"""
from __future__ import annotations

import random


def _two_distinct(rng: random.Random, n: int) -> tuple[int, int]:
    """Two distinct indices in [0, n); cheaper than rng.sample in hot loops."""
    a = rng.randrange(n)
    b = rng.randrange(n - 1)
    if b >= a:
        b += 1
    return a, b


def flip(rows: list[list[int]], rng: random.Random, num_nodes: int) -> None:
    """Reassign one random cell to a different node."""
    if num_nodes < 2:
        return
    q = rng.randrange(len(rows))
    t = rng.randrange(len(rows[0]))
    old = rows[q][t]
    new = rng.randrange(num_nodes - 1)
    rows[q][t] = new if new < old else new + 1


def swap_rows(rows: list[list[int]], rng: random.Random, num_nodes: int) -> None:
    if len(rows) < 2:
        return
    a, b = _two_distinct(rng, len(rows))
    rows[a], rows[b] = rows[b], rows[a]


def swap_cols(rows: list[list[int]], rng: random.Random, num_nodes: int) -> None:
    width = len(rows[0])
    if width < 2:
        return
    a, b = _two_distinct(rng, width)
    for row in rows:
        row[a], row[b] = row[b], row[a]


def swap_nodes(rows: list[list[int]], rng: random.Random, num_nodes: int) -> None:
    """Exchange two nodes' qubit sets at one time step."""
    if num_nodes < 2:
        return
    t = rng.randrange(len(rows[0]))
    a, b = _two_distinct(rng, num_nodes)
    for row in rows:
        if row[t] == a:
            row[t] = b
        elif row[t] == b:
            row[t] = a


def shuffle_rows(rows: list[list[int]], rng: random.Random, num_nodes: int) -> None:
    """Permute a random contiguous row range."""
    if len(rows) < 2:
        return
    a, b = sorted(_two_distinct(rng, len(rows) + 1))
    chunk = rows[a:b]
    rng.shuffle(chunk)
    rows[a:b] = chunk


def shuffle_cols(rows: list[list[int]], rng: random.Random, num_nodes: int) -> None:
    """Permute a random contiguous column range."""
    width = len(rows[0])
    if width < 2:
        return
    a, b = sorted(_two_distinct(rng, width + 1))
    perm = list(range(a, b))
    rng.shuffle(perm)
    for q, row in enumerate(rows):
        rows[q] = row[:a] + [row[i] for i in perm] + row[b:]
