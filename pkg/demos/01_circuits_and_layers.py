"""
Circuits, time steps, and the text format
=========================================

A circuit is an ordered gate list over the gate set {X, SX, RZ, CX}.
Splitting it into layers gives the time axis that scheduling works on:
two gates share a layer exactly when they touch disjoint qubits.
"""
from dqsched import (
    Circuit,
    cx,
    layerize,
    parse_circuit,
    random_circuit,
    rz,
    serialize_circuit,
    sx,
    x,
)

# A hand-built 4-qubit circuit. Gate order is program order.
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
print(f"{len(circ.gates)} gates layer into {lc.depth} time steps:")
for t, layer in enumerate(lc.layers):
    names = ", ".join(
        f"{g.kind.value}{list(g.qubits)}" for g in sorted(layer, key=lambda g: g.qubits)
    )
    print(f"  t{t}: {names}")

# The text format round-trips exactly, including RZ angles.
text = serialize_circuit(circ)
print("\ncircuit file:")
print(text)
assert parse_circuit(text) == circ

# Random circuits keep every qubit busy in every layer, so the requested
# depth is the layered depth.
rand = random_circuit(num_qubits=8, target_depth=5, seed=0, p_cx=0.5)
print(f"random circuit: {len(rand.gates)} gates, depth {layerize(rand).depth}")
