"""
Scheduling algorithms compared
==============================

Five ways to produce a schedule for the same instance:

  seq      fill QPUs with consecutive qubits, never move them
  randseq  the same loads, but qubit rows shuffled
  gp       partition the CX interaction graph, one part per QPU
  sa       simulated annealing over the full Q x T matrix
  ea       evolutionary search over the full Q x T matrix

The static baselines pay only the remote-CX component A; the two
metaheuristics may beat them by teleporting qubits between steps.
"""
from dqsched import (
    EaParams,
    SaParams,
    anneal,
    build_grid,
    cost,
    evolve,
    gp_schedule,
    layerize,
    random_circuit,
    random_sequential_schedule,
    sequential_schedule,
)

circ = random_circuit(num_qubits=8, target_depth=30, seed=0, p_cx=0.5)
lc = layerize(circ)
net = build_grid(2, 2, capacity=2)  # four QPUs, two qubits each

seq = sequential_schedule(lc, net)
rnd = random_sequential_schedule(lc, net, seed=0)
gp = gp_schedule(circ, lc, net, seed=0)
print(f"seq      total={cost(seq, lc, net).total:g}")
print(f"randseq  total={cost(rnd, lc, net).total:g}")
print(f"gp       total={cost(gp, lc, net).total:g}")

sa_sched, sa_bd, sa_trace = anneal(
    lc, net, SaParams(seed=0, initial_temp=1.0, cooling_rate=0.99995)
)
print(f"sa       total={sa_bd.total:g}")

ea_sched, ea_bd, ea_trace = evolve(
    lc, net, EaParams(seed=0, population_size=100, generations=500)
)
print(f"ea       total={ea_bd.total:g}  (A={ea_bd.a:g} B={ea_bd.b:g})")

# Both optimizers expose convergence traces suitable for plotting.
print("\nsa trace (iteration, current, best):")
for row in sa_trace[:: max(1, len(sa_trace) // 5)]:
    print("  ", row)
print("ea trace (generation, best, mean):")
for row in ea_trace[:: max(1, len(ea_trace) // 5)]:
    print("  ", row)
