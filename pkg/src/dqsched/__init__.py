"""
dqsched: time-aware qubit assignment and circuit optimization for
distributed quantum computing.

A circuit is layered into time steps; a schedule assigns every qubit a QPU
per time step; the cost of a schedule counts remote-CX distance,
teleportation distance, and capacity violations. Simulated annealing and an
evolutionary algorithm search schedule space; a second evolutionary
optimizer rewrites the circuit itself under a fidelity constraint.
"""
from .annealing import SaParams, accept_probability, anneal, neighbor, sequential_rows
from .baselines import (
    InteractionGraph,
    cut_weight,
    gp_schedule,
    interaction_graph,
    partition,
    random_sequential_schedule,
    sequential_schedule,
)
from .bench import ExperimentConfig, RunReport, parse_topology_spec, run_experiment, write_report
from .circuit import (
    Circuit,
    CircuitError,
    Gate,
    GateKind,
    LayeredCircuit,
    cx,
    cx_pairs_per_layer,
    layerize,
    parse_circuit,
    random_circuit,
    rz,
    serialize_circuit,
    sx,
    x,
)
from .cost import (
    CostBreakdown,
    CostEvaluator,
    Schedule,
    ScheduleError,
    brute_force_optimum,
    cost,
)
from .ea import EaParams, crossover, evolve, init_individual, mutate
from .network import (
    NetworkTopology,
    TopologyError,
    all_pairs_hops,
    build_grid,
    build_star,
    parse_topology,
    serialize_topology,
)
from .qco import (
    CommunicationFreeError,
    QcoParams,
    QcoReport,
    qco_crossover,
    qco_evolve,
    qco_fitness,
    qco_mutate,
    schedule_cost,
)
from .simulator import StateVector, apply_gate, dump_amplitudes, fidelity, run, state_fidelity

__version__ = "0.1.0"
