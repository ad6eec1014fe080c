import math

import numpy as np
import pytest

from dqsched import Circuit, cx, random_circuit, run
from dqsched.circuit import rz, sx, x
from dqsched.simulator import (
    SimulationError,
    StateVector,
    apply_gate,
    dump_amplitudes,
    fidelity,
    state_fidelity,
)


class TestApplyGate:
    def test_x_flips(self):
        sv = apply_gate(StateVector.zero(1), x(0))
        assert np.allclose(sv.amplitudes, [0, 1])

    def test_sx_squared_is_x(self):
        sv = StateVector.zero(1)
        sv = apply_gate(apply_gate(sv, sx(0)), sx(0))
        target = apply_gate(StateVector.zero(1), x(0))
        assert state_fidelity(target, sv) == pytest.approx(1.0, abs=1e-9)

    def test_bell_state(self):
        # SX,SX puts qubit 0 into |1>... use the superposition route instead:
        # sqrt(X) on |0> gives (|0>+i|1>)-like superposition; CX entangles.
        c = Circuit(2, (sx(0), cx(0, 1)))
        sv = run(c)
        # amplitudes only at |00> and |11>, each weight 1/2
        probs = np.abs(sv.amplitudes) ** 2
        assert probs == pytest.approx([0.5, 0, 0, 0.5], abs=1e-9)

    def test_cx_on_plus_control(self):
        plus = StateVector(2, np.array([1, 1, 0, 0], dtype=complex) / math.sqrt(2))
        sv = apply_gate(plus, cx(0, 1))
        expected = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
        assert np.allclose(sv.amplitudes, expected, atol=1e-9)

    def test_cx_orientation(self):
        # control on qubit 1: |01> (qubit0 set) is untouched
        sv = run(Circuit(2, (x(0), cx(1, 0))))
        assert np.allclose(sv.amplitudes, [0, 1, 0, 0])
        # control on qubit 0: target flips
        sv = run(Circuit(2, (x(0), cx(0, 1))))
        assert np.allclose(sv.amplitudes, [0, 0, 0, 1])

    def test_rz_phases(self):
        sv = run(Circuit(1, (x(0), rz(0, math.pi))))
        assert sv.amplitudes[1] == pytest.approx(1j, abs=1e-12)

    def test_bit_ordering(self):
        sv = run(Circuit(2, (x(0),)))
        assert np.allclose(sv.amplitudes, [0, 1, 0, 0])  # qubit 0 = LSB

    def test_out_of_range(self):
        with pytest.raises(SimulationError):
            apply_gate(StateVector.zero(1), x(1))


class TestRun:
    def test_empty_circuit(self):
        sv = run(Circuit(3, ()))
        assert sv.amplitudes[0] == 1.0

    def test_qubit_cap(self):
        with pytest.raises(SimulationError, match="cap"):
            run(random_circuit(8, 2, seed=0), qubit_cap=4)

    def test_norm_preserved(self):
        for seed in range(10):
            sv = run(random_circuit(4, 10, seed=seed))
            assert sv.norm() == pytest.approx(1.0, abs=1e-9)


class TestFidelity:
    def test_self_fidelity(self):
        c = random_circuit(3, 6, seed=2)
        assert fidelity(run(c), c) == pytest.approx(1.0, abs=1e-9)

    def test_orthogonal(self):
        assert fidelity(StateVector.zero(1), Circuit(1, (x(0),))) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_phase_on_basis_qubit_invisible(self):
        # RZ on a qubit whose reduced state is |1> only adds a global phase
        base = Circuit(2, (x(0),))
        candidate = Circuit(2, (x(0), rz(0, 0.7)))
        assert fidelity(run(base), candidate) == pytest.approx(1.0, abs=1e-9)

    def test_rz_zero_is_identity(self):
        c = random_circuit(3, 4, seed=9)
        with_rz = Circuit(3, c.gates + (rz(1, 0.0),))
        assert fidelity(run(c), with_rz) == pytest.approx(1.0, abs=1e-12)

    def test_symmetry(self):
        a, b = random_circuit(3, 5, seed=1), random_circuit(3, 5, seed=2)
        sa, sb = run(a), run(b)
        assert state_fidelity(sa, sb) == pytest.approx(state_fidelity(sb, sa))
        assert fidelity(sa, b) == pytest.approx(state_fidelity(sa, sb))

    def test_qubit_count_mismatch(self):
        with pytest.raises(SimulationError):
            fidelity(StateVector.zero(2), Circuit(3, ()))


def test_sx_convention():
    # SX = ((1+i)/2) [[1, -i], [-i, 1]]
    sv = apply_gate(StateVector.zero(1), sx(0))
    expected = np.array([(1 + 1j) / 2, (1 - 1j) / 2])
    assert np.allclose(sv.amplitudes, expected, atol=1e-12)


def test_dump_amplitudes():
    text = dump_amplitudes(run(Circuit(1, (x(0),))))
    lines = text.strip().splitlines()
    assert lines[0] == "index,re,im"
    assert lines[2].startswith("1,1,")
