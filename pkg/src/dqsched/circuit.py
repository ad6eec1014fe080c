"""
Circuit representation: gates, text-format parsing, random generation,
and decomposition into time steps (dependency layers).

Gate set is fixed to {X, SX, RZ, CX}. A time step (layer) is a maximal set
of gates acting on pairwise-disjoint qubits; layering is ASAP: every gate
goes into the earliest layer after all of its per-qubit predecessors.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum


class GateKind(Enum):
    X = "x"
    SX = "sx"
    RZ = "rz"
    CX = "cx"

    @property
    def n_qubits(self) -> int:
        return 2 if self is GateKind.CX else 1

    @property
    def has_angle(self) -> bool:
        return self is GateKind.RZ


SINGLE_QUBIT_KINDS = (GateKind.X, GateKind.SX, GateKind.RZ)


class CircuitError(ValueError):
    """Invalid gate, circuit, or circuit-file contents."""


@dataclass(frozen=True)
class Gate:
    """One gate: kind, operand qubits (control first for CX), RZ angle."""

    kind: GateKind
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if len(self.qubits) != self.kind.n_qubits:
            raise CircuitError(
                f"{self.kind.value} takes {self.kind.n_qubits} qubit(s), "
                f"got {len(self.qubits)}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"{self.kind.value} operands must be distinct")
        if any(q < 0 for q in self.qubits):
            raise CircuitError("qubit indices must be non-negative")
        if self.kind.has_angle:
            if self.angle is None or not math.isfinite(self.angle):
                raise CircuitError("rz requires a finite angle")
        elif self.angle is not None:
            raise CircuitError(f"{self.kind.value} takes no angle")


def x(q: int) -> Gate:
    return Gate(GateKind.X, (q,))


def sx(q: int) -> Gate:
    return Gate(GateKind.SX, (q,))


def rz(q: int, angle: float) -> Gate:
    return Gate(GateKind.RZ, (q,), angle)


def cx(control: int, target: int) -> Gate:
    return Gate(GateKind.CX, (control, target))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate sequence over num_qubits qubits (program order)."""

    num_qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.num_qubits < 1:
            raise CircuitError("num_qubits must be positive")
        for g in self.gates:
            for q in g.qubits:
                if q >= self.num_qubits:
                    raise CircuitError(
                        f"qubit index {q} out of range for {self.num_qubits} qubits"
                    )


@dataclass(frozen=True)
class LayeredCircuit:
    """Circuit decomposed into time steps; each layer's gates share no qubit."""

    num_qubits: int
    layers: tuple[tuple[Gate, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.layers)


def layerize(c: Circuit) -> LayeredCircuit:
    """ASAP layering: each gate lands right after its latest predecessor."""
    frontier = [0] * c.num_qubits  # earliest free layer per qubit
    layers: list[list[Gate]] = []
    for g in c.gates:
        layer = max(frontier[q] for q in g.qubits)
        if layer == len(layers):
            layers.append([])
        layers[layer].append(g)
        for q in g.qubits:
            frontier[q] = layer + 1
    return LayeredCircuit(c.num_qubits, tuple(tuple(l) for l in layers))


def cx_pairs_per_layer(lc: LayeredCircuit) -> list[set[tuple[int, int]]]:
    """Per layer, the set of (control, target) pairs of its CX gates."""
    return [
        {g.qubits for g in layer if g.kind is GateKind.CX} for layer in lc.layers
    ]


def random_circuit(
    num_qubits: int, target_depth: int, seed: int, p_cx: float = 0.5
) -> Circuit:
    """Dense random circuit with exactly target_depth layers.

    Every qubit receives a gate in every layer: with probability p_cx two
    free qubits are paired into a CX, otherwise one free qubit gets a
    uniform single-qubit gate (RZ angles uniform in [0, 2pi)). Because all
    qubits are busy each layer, layerize() reproduces the generated layers.
    """
    if num_qubits < 2:
        raise CircuitError("random_circuit requires num_qubits >= 2")
    if target_depth < 1:
        raise CircuitError("target_depth must be positive")
    rng = random.Random(seed)
    gates: list[Gate] = []
    for _ in range(target_depth):
        free = list(range(num_qubits))
        while free:
            if len(free) >= 2 and rng.random() < p_cx:
                a = free.pop(rng.randrange(len(free)))
                b = free.pop(rng.randrange(len(free)))
                gates.append(cx(a, b))
            else:
                q = free.pop(rng.randrange(len(free)))
                kind = rng.choice(SINGLE_QUBIT_KINDS)
                if kind is GateKind.RZ:
                    gates.append(rz(q, rng.uniform(0.0, 2.0 * math.pi)))
                else:
                    gates.append(Gate(kind, (q,)))
    return Circuit(num_qubits, tuple(gates))


# --- text format -----------------------------------------------------------
#
# One construct per line, '#' starts a comment:
#   qubits <N>
#   x <q> | sx <q> | rz <q> <angle-radians> | cx <control> <target>


def serialize_circuit(c: Circuit) -> str:
    lines = [f"qubits {c.num_qubits}"]
    for g in c.gates:
        if g.kind is GateKind.RZ:
            lines.append(f"rz {g.qubits[0]} {g.angle:.17g}")
        else:
            lines.append(f"{g.kind.value} {' '.join(str(q) for q in g.qubits)}")
    return "\n".join(lines) + "\n"


class CircuitSyntaxError(CircuitError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


_KINDS_BY_NAME = {k.value: k for k in GateKind}


def parse_circuit(text: str) -> Circuit:
    num_qubits: int | None = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        name, args = tokens[0].lower(), tokens[1:]
        if name == "qubits":
            if num_qubits is not None:
                raise CircuitSyntaxError(lineno, "duplicate qubits declaration")
            if len(args) != 1:
                raise CircuitSyntaxError(lineno, "qubits takes one argument")
            num_qubits = _parse_int(lineno, args[0])
            if num_qubits < 1:
                raise CircuitSyntaxError(lineno, "qubit count must be positive")
            continue
        if num_qubits is None:
            raise CircuitSyntaxError(lineno, "qubits declaration must come first")
        kind = _KINDS_BY_NAME.get(name)
        if kind is None:
            raise CircuitSyntaxError(lineno, f"unknown gate {name!r}")
        n_args = kind.n_qubits + (1 if kind.has_angle else 0)
        if len(args) != n_args:
            raise CircuitSyntaxError(
                lineno, f"{name} takes {n_args} argument(s), got {len(args)}"
            )
        qubits = tuple(_parse_int(lineno, a) for a in args[: kind.n_qubits])
        angle = _parse_float(lineno, args[-1]) if kind.has_angle else None
        for q in qubits:
            if not 0 <= q < num_qubits:
                raise CircuitSyntaxError(lineno, f"qubit index {q} out of range")
        try:
            gates.append(Gate(kind, qubits, angle))
        except CircuitError as exc:
            raise CircuitSyntaxError(lineno, str(exc)) from exc
    if num_qubits is None:
        raise CircuitError("missing qubits declaration")
    return Circuit(num_qubits, tuple(gates))


def _parse_int(lineno: int, token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise CircuitSyntaxError(lineno, f"expected integer, got {token!r}") from None


def _parse_float(lineno: int, token: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise CircuitSyntaxError(lineno, f"expected number, got {token!r}") from None
    if not math.isfinite(value):
        raise CircuitSyntaxError(lineno, "angle must be finite")
    return value
