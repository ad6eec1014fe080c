import pytest

from dqsched import Circuit, build_grid, cx, layerize, parse_topology
from dqsched.circuit import rz, sx, x


@pytest.fixture
def example_circuit():
    """4-qubit circuit with the CX chain (0,1),(1,2),(2,3),(0,3) interleaved
    with single-qubit gates so that it layers into exactly 4 time steps."""
    return Circuit(
        4,
        (
            cx(0, 1), sx(2), x(3),                # t0
            x(0), cx(1, 2), sx(3),                # t1
            sx(0), x(1), cx(2, 3),                # t2
            cx(0, 3), rz(1, 0.5), rz(2, 1.5),     # t3
        ),
    )


@pytest.fixture
def example_layers(example_circuit):
    return layerize(example_circuit)


@pytest.fixture
def two_node_path():
    """Two QPUs with capacity 2, one edge."""
    return parse_topology("nodes 2\ncap 0 2\ncap 1 2\nedge 0 1")


@pytest.fixture
def grid_2x2():
    return build_grid(2, 2, 2)
