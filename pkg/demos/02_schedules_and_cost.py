"""
Schedules and the communication cost function
=============================================

A schedule is a Q x T matrix: row q, column t says which QPU holds qubit q
at time step t.  Its cost has three parts:

  A: hop distance between the endpoints of every CX, per time step
  B: hop distance each qubit travels between consecutive time steps
  C: a flat penalty (default 100) per QPU whose capacity is exceeded
     at some time step

A static schedule pays only A; moving qubits trades A against B.
"""
from dqsched import (
    Circuit,
    Schedule,
    brute_force_optimum,
    cost,
    cx,
    layerize,
    parse_topology,
    rz,
    sx,
    x,
)

circ = Circuit(
    4,
    (
        cx(0, 1), sx(2), x(3),
        x(0), cx(1, 2), sx(3),
        sx(0), x(1), cx(2, 3),
        cx(0, 3), rz(1, 0.5), rz(2, 1.5),
    ),
)
lc = layerize(circ)

# Two QPUs, two qubits each, one link between them.
net = parse_topology("nodes 2\ncap 0 2\ncap 1 2\nedge 0 1")

# A schedule that chases each CX by teleporting qubits around.
mobile = Schedule([
    [0, 0, 0, 0],
    [0, 1, 0, 1],
    [1, 1, 1, 1],
    [1, 0, 1, 0],
])
bd = cost(mobile, lc, net)
print(f"mobile   A={bd.a:g} B={bd.b:g} C={bd.c:g} total={bd.total:g}")

# A static split: qubits 0,1 on QPU 0 and 2,3 on QPU 1, never moving.
static = Schedule([[0] * 4, [0] * 4, [1] * 4, [1] * 4])
bd = cost(static, lc, net)
print(f"static   A={bd.a:g} B={bd.b:g} C={bd.c:g} total={bd.total:g}")

# Exhaustive search over all 2^16 schedules confirms what the optimum is.
best, bbd = brute_force_optimum(lc, net)
print(f"optimum  A={bbd.a:g} B={bbd.b:g} C={bbd.c:g} total={bbd.total:g}")
print(best)

# Overloading a QPU triggers the capacity penalty instead of being illegal.
crowded = Schedule([[0] * 4, [0] * 4, [0] * 4, [1] * 4])
print(f"crowded  C={cost(crowded, lc, net).c:g}  (3 qubits on a 2-qubit QPU)")
