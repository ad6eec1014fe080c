"""
Dense statevector simulation over {X, SX, RZ, CX} and state fidelity.

Bit ordering: qubit 0 is the least-significant bit of the amplitude index.
SX uses the convention ((1+i)/2) * [[1, -i], [-i, 1]]; RZ(theta) is
diag(e^{-i theta/2}, e^{i theta/2}).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, GateKind

DEFAULT_QUBIT_CAP = 20

_SX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


class SimulationError(ValueError):
    """Bad qubit index, size cap exceeded, or mismatched states."""


@dataclass(frozen=True)
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray  # 2**num_qubits complex amplitudes

    @classmethod
    def zero(cls, num_qubits: int) -> "StateVector":
        amps = np.zeros(2**num_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(num_qubits, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def _gate_matrix(gate: Gate) -> np.ndarray:
    if gate.kind is GateKind.X:
        return _X
    if gate.kind is GateKind.SX:
        return _SX
    theta = gate.angle
    return np.array(
        [[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex
    )


def apply_gate(sv: StateVector, gate: Gate) -> StateVector:
    """The state after `gate`; the input is left untouched."""
    n = sv.num_qubits
    for q in gate.qubits:
        if q >= n:
            raise SimulationError(f"qubit {q} out of range for {n}-qubit state")
    # reshape to one axis per qubit; qubit q = axis n-1-q (LSB convention)
    state = sv.amplitudes.reshape((2,) * n)
    if gate.kind is GateKind.CX:
        control, target = gate.qubits
        new = state.copy()
        sel: list = [slice(None)] * n
        sel[n - 1 - control] = 1
        ct0 = tuple(sel[:])
        sub = new[ct0]  # view of the control=1 block
        new[ct0] = np.flip(sub, axis=_sub_axis(n, control, target))
        return StateVector(n, new.reshape(-1))
    m = _gate_matrix(gate)
    q = gate.qubits[0]
    axis = n - 1 - q
    moved = np.moveaxis(state, axis, -1)
    out = moved @ m.T
    return StateVector(n, np.moveaxis(out, -1, axis).reshape(-1))


def _sub_axis(n: int, control: int, target: int) -> int:
    """Axis index of `target` inside the control=1 sub-block."""
    axis = n - 1 - target
    return axis if axis < n - 1 - control else axis - 1


def run(c: Circuit, qubit_cap: int = DEFAULT_QUBIT_CAP) -> StateVector:
    """All gates applied in order to |0...0>."""
    if c.num_qubits > qubit_cap:
        raise SimulationError(
            f"{c.num_qubits} qubits exceeds simulator cap of {qubit_cap}"
        )
    sv = StateVector.zero(c.num_qubits)
    for g in c.gates:
        sv = apply_gate(sv, g)
    return sv


def fidelity(target: StateVector, candidate: Circuit) -> float:
    """|<target|candidate|0>|^2; insensitive to global phase."""
    if target.num_qubits != candidate.num_qubits:
        raise SimulationError("qubit counts differ between target and candidate")
    prepared = run(candidate, qubit_cap=max(DEFAULT_QUBIT_CAP, target.num_qubits))
    return state_fidelity(target, prepared)


def state_fidelity(a: StateVector, b: StateVector) -> float:
    if a.num_qubits != b.num_qubits:
        raise SimulationError("qubit counts differ")
    # rounding can push the overlap of unit vectors a hair past 1; clamp so
    # downstream strict comparisons (fitness > 0) stay meaningful
    return min(1.0, float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2))


def dump_amplitudes(sv: StateVector) -> str:
    """CSV dump: index,re,im."""
    lines = ["index,re,im"]
    lines += [
        f"{i},{amp.real:.17g},{amp.imag:.17g}" for i, amp in enumerate(sv.amplitudes)
    ]
    return "\n".join(lines) + "\n"
