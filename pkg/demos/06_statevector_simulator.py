"""
The statevector simulator underneath the circuit optimizer
==========================================================

Exact amplitudes for circuits over {X, SX, RZ, CX}, with qubit 0 as the
least significant bit of the basis-state index.  The fidelity between a
target state and a candidate circuit is |<target|candidate>|^2.
"""
import numpy as np

from dqsched import Circuit, cx, fidelity, run, rz, sx, x

# SX is the square root of X ...
one_sx = run(Circuit(1, (sx(0),)))
two_sx = run(Circuit(1, (sx(0), sx(0))))
flipped = run(Circuit(1, (x(0),)))
print("sx once :", np.round(one_sx.amplitudes, 3))
print("sx twice:", np.round(two_sx.amplitudes, 3))
print("x       :", np.round(flipped.amplitudes, 3))
print(f"fidelity(sx^2, x) = {abs(np.vdot(two_sx.amplitudes, flipped.amplitudes))**2:.9f}")

# ... so sx + cx builds a Bell-like state with equal 00/11 probabilities.
bell = run(Circuit(2, (sx(0), cx(0, 1))))
print("\nbell-ish state probabilities:", np.round(np.abs(bell.amplitudes) ** 2, 3))

# RZ only shifts phases; on a basis state that is a global phase,
# so the fidelity to the unrotated state stays exactly 1.
plain = Circuit(2, (x(0),))
phased = Circuit(2, (x(0), rz(0, 1.234)))
print(f"\nfidelity(x, x+rz) = {fidelity(run(plain), phased):.9f}")

# Norm is preserved gate by gate (unitarity).
deep = Circuit(3, tuple(g for _ in range(10) for g in (sx(0), cx(0, 1), cx(1, 2))))
print(f"norm after 30 gates = {run(deep).norm():.12f}")
