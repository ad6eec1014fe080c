import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dqsched import (
    Circuit,
    CostEvaluator,
    Schedule,
    brute_force_optimum,
    build_grid,
    build_star,
    cost,
    cx,
    layerize,
    random_circuit,
)
from dqsched.circuit import x
from dqsched.cost import ScheduleError, check_feasible


def reference_cost(rows, lc, net, lam=100.0):
    """Independent term-by-term evaluation of the three cost components;
    deliberately naive, kept free of the production evaluator's structure."""
    dist = net.dist
    T = lc.depth
    a = 0
    for t, layer in enumerate(lc.layers):
        for g in layer:
            if len(g.qubits) == 2:
                i, j = g.qubits
                a += dist[rows[i][t]][rows[j][t]]
    b = 0
    for q in range(lc.num_qubits):
        for t in range(T - 1):
            b += dist[rows[q][t]][rows[q][t + 1]]
    c = 0
    for t in range(T):
        for n in range(net.num_nodes):
            occupancy = sum(1 for q in range(lc.num_qubits) if rows[q][t] == n)
            if occupancy - net.capacities[n] > 0:
                c += lam
    return a, b, c, a + b + c


class TestCostExamples:
    def test_published_schedule(self, example_layers, two_node_path):
        # the worked example schedule: all cost comes from relocations
        s = Schedule([[0, 0, 0, 0], [0, 1, 0, 1], [1, 1, 1, 1], [1, 0, 1, 0]])
        bd = cost(s, example_layers, two_node_path)
        assert (bd.a, bd.b, bd.c, bd.total) == (0, 6, 0, 6)

    def test_static_halves(self, example_layers, two_node_path):
        # {q0,q1 | q2,q3}: the CX chain (1,2) and (0,3) both cross the cut
        s = Schedule([[0] * 4, [0] * 4, [1] * 4, [1] * 4])
        bd = cost(s, example_layers, two_node_path)
        assert (bd.a, bd.b, bd.c, bd.total) == (2, 0, 0, 2)

    def test_capacity_penalty(self):
        lc = layerize(Circuit(3, (x(0),)))
        net = build_grid(1, 2, 2)
        s = Schedule([[0], [0], [0]])
        bd = cost(s, lc, net)
        assert (bd.a, bd.b, bd.c, bd.total) == (0, 0, 100, 100)

    def test_dimension_mismatch(self, example_layers, two_node_path):
        with pytest.raises(ScheduleError):
            cost(Schedule([[0, 0]]), example_layers, two_node_path)

    def test_entry_out_of_range(self, example_layers, two_node_path):
        s = Schedule([[0, 0, 0, 5], [0] * 4, [1] * 4, [1] * 4])
        with pytest.raises(ScheduleError):
            cost(s, example_layers, two_node_path)


class TestOracleAgreement:
    @pytest.mark.parametrize("seed", range(20))
    def test_random_instances(self, seed):
        rng = random.Random(seed)
        q = rng.randint(2, 4)
        t = rng.randint(1, 4)
        circ = random_circuit(q, t, seed=seed)
        lc = layerize(circ)
        net = build_grid(1, rng.randint(2, 3), rng.randint(1, 3))
        ev = CostEvaluator(lc, net)
        for _ in range(20):
            rows = [
                [rng.randrange(net.num_nodes) for _ in range(lc.depth)]
                for _ in range(q)
            ]
            assert tuple(ev.breakdown(rows)) == reference_cost(rows, lc, net)
            assert ev.total(rows) == reference_cost(rows, lc, net)[3]

    def test_vectorized_path_matches(self):
        import numpy as np

        rng = random.Random(7)
        circ = random_circuit(6, 12, seed=7)
        lc = layerize(circ)
        net = build_star(4, 2)
        ev = CostEvaluator(lc, net)
        for _ in range(50):
            rows = [[rng.randrange(4) for _ in range(12)] for _ in range(6)]
            assert ev.total_array(np.asarray(rows)) == ev.total(rows)


class TestBruteForce:
    def test_single_qubit_zero(self):
        lc = layerize(Circuit(1, (x(0), x(0))))
        net = build_grid(1, 2, 2)
        _, bd = brute_force_optimum(lc, net)
        assert bd.total == 0

    def test_colocated_cx_zero(self):
        lc = layerize(Circuit(2, (cx(0, 1),)))
        net = build_grid(1, 2, 2)
        sched, bd = brute_force_optimum(lc, net)
        assert bd.total == 0
        assert sched.rows[0] == sched.rows[1]

    def test_example_instance_optimum(self, example_layers, two_node_path):
        # exhaustive enumeration over 2^16 schedules
        sched, bd = brute_force_optimum(example_layers, two_node_path)
        assert bd.total == 2
        assert cost(sched, example_layers, two_node_path).total == 2

    def test_size_guard(self, two_node_path):
        lc = layerize(random_circuit(8, 10, seed=0))
        with pytest.raises(ScheduleError, match="too large"):
            brute_force_optimum(lc, two_node_path)

    def test_lexicographic_tie_break(self):
        lc = layerize(Circuit(2, (x(0), x(1))))
        net = build_grid(1, 2, 2)
        sched, bd = brute_force_optimum(lc, net)
        assert bd.total == 0
        assert sched.rows == [[0], [0]]


tiny_instances = st.tuples(
    st.integers(0, 10_000), st.integers(2, 4), st.integers(1, 4), st.integers(2, 3)
)


@given(tiny_instances)
@settings(max_examples=50, deadline=None)
def test_cost_properties(params):
    seed, q, t, n = params
    rng = random.Random(seed)
    circ = random_circuit(q, t, seed=seed)
    lc = layerize(circ)
    net = build_grid(1, n, 2)
    ev = CostEvaluator(lc, net)
    rows = [[rng.randrange(n) for _ in range(lc.depth)] for _ in range(q)]
    bd = ev.breakdown(rows)
    assert bd.total == bd.a + bd.b + bd.c
    assert bd.a >= 0 and bd.b >= 0 and bd.c >= 0
    assert bd.c % 100.0 == 0
    # time-constant schedules never pay teleportation
    static = [[row[0]] * lc.depth for row in rows]
    assert ev.breakdown(static).b == 0


def test_monotone_in_cx(two_node_path):
    # adding a CX never decreases component A for a fixed schedule
    rng = random.Random(3)
    base = [cx(0, 1), x(2), x(3), cx(2, 3), x(0), x(1)]
    lc1 = layerize(Circuit(4, tuple(base)))
    lc2 = layerize(Circuit(4, tuple(base + [cx(0, 3)])))
    for _ in range(30):
        rows = [[rng.randrange(2) for _ in range(lc2.depth)] for _ in range(4)]
        rows1 = [r[: lc1.depth] for r in rows]
        a1 = CostEvaluator(lc1, two_node_path).breakdown(rows1).a
        a2 = CostEvaluator(lc2, two_node_path).breakdown(rows).a
        assert a2 >= a1


def test_automorphism_invariance():
    # reflecting the 2x2 grid leaves every breakdown unchanged
    perm = [3, 2, 1, 0]  # 180-degree rotation
    net = build_grid(2, 2, 2)
    circ = random_circuit(4, 4, seed=11)
    lc = layerize(circ)
    ev = CostEvaluator(lc, net)
    rng = random.Random(11)
    for _ in range(30):
        rows = [[rng.randrange(4) for _ in range(lc.depth)] for _ in range(4)]
        mapped = [[perm[v] for v in row] for row in rows]
        assert tuple(ev.breakdown(rows)) == tuple(ev.breakdown(mapped))


class TestScheduleCsv:
    def test_round_trip(self):
        s = Schedule([[0, 1, 2], [2, 1, 0]])
        assert Schedule.from_csv(s.to_csv()) == s

    def test_header(self):
        assert Schedule([[0, 1]]).to_csv().splitlines()[0] == "t0,t1"

    def test_missing_header_rejected(self):
        with pytest.raises(ScheduleError):
            Schedule.from_csv("0,1\n1,0")


def test_check_feasible(two_node_path):
    lc = layerize(random_circuit(5, 2, seed=0))
    with pytest.raises(ScheduleError, match="capacity"):
        check_feasible(lc, two_node_path)
