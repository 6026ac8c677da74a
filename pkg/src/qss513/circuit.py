"""Circuit IR, execution on the state-vector backend, and resource metrics.

Metric conventions:

* a CZ counts as one CNOT plus two H gates;
* classically controlled Pauli blocks count zero gates by default
  (``conditional="zero"``); ``conditional="worst"`` counts the largest case;
* depth is ASAP layering, each op occupying every wire it touches for one
  layer. Classically controlled blocks also wait for the layer of the
  measurements they read.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .statevector import QuantumStateError, StateVector, apply_named, contract, project

NAMED_GATES = {"X": 1, "Y": 1, "Z": 1, "H": 1, "S": 1, "CNOT": 2, "CZ": 2}
PAULI_LETTERS = ("X", "Y", "Z")


class CircuitError(ValueError):
    pass


class CircuitParseError(CircuitError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class Gate:
    """Named gate, or an explicit unitary when ``name == "U"``.

    ``matrix`` is kept as nested tuples so gates stay hashable and comparable.
    """

    name: str
    wires: tuple[int, ...]
    matrix: tuple | None = None

    @property
    def touched(self) -> tuple[int, ...]:
        return self.wires

    def unitary(self) -> np.ndarray | None:
        return None if self.matrix is None else np.array(self.matrix, dtype=complex)


@dataclass(frozen=True)
class Measure:
    wire: int
    bit: int

    @property
    def touched(self) -> tuple[int, ...]:
        return (self.wire,)


@dataclass(frozen=True)
class Reset:
    wire: int

    @property
    def touched(self) -> tuple[int, ...]:
        return (self.wire,)


@dataclass(frozen=True)
class ClassicalPauli:
    """Pauli gates applied when the recorded ``bits`` equal one of the case values.

    ``cases`` is a tuple of ``(value, paulis)`` pairs where ``value`` is a bit
    tuple aligned with ``bits`` and ``paulis`` a tuple of ``(letter, wire)``.
    Patterns matching no case apply nothing.
    """

    bits: tuple[int, ...]
    cases: tuple
    label: str = ""

    @property
    def touched(self) -> tuple[int, ...]:
        return tuple(sorted({w for _, paulis in self.cases for _, w in paulis}))

    def lookup(self, pattern: tuple[int, ...]):
        for value, paulis in self.cases:
            if tuple(value) == tuple(pattern):
                return paulis
        return ()

    def max_gates(self) -> int:
        return max((len(p) for _, p in self.cases), default=0)


Op = Union[Gate, Measure, Reset, ClassicalPauli]


def gate(name: str, *wires: int) -> Gate:
    return Gate(name.upper(), tuple(int(w) for w in wires))


def unitary_gate(matrix, *wires: int) -> Gate:
    m = np.asarray(matrix, dtype=complex)
    return Gate("U", tuple(int(w) for w in wires), tuple(tuple(complex(v) for v in row) for row in m))


def conditional_x(bit: int, wire: int, label: str = "reset") -> ClassicalPauli:
    return ClassicalPauli((bit,), (((1,), (("X", wire),)),), label)


@dataclass(frozen=True)
class Circuit:
    num_wires: int
    ops: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        if self.num_wires < 1:
            raise CircuitError("a circuit needs at least one wire")
        written = 0
        for i, op in enumerate(self.ops):
            for w in op.touched:
                if not 0 <= w < self.num_wires:
                    raise CircuitError(f"op {i} references wire {w} outside 0..{self.num_wires - 1}")
            if len(set(op.touched)) != len(op.touched):
                raise CircuitError(f"op {i} repeats a wire")
            if isinstance(op, Gate):
                self._check_gate(i, op)
            elif isinstance(op, Measure):
                if op.bit != written:
                    raise CircuitError(
                        f"op {i} writes bit {op.bit}; bits must be assigned in order 0, 1, ..."
                    )
                written += 1
            elif isinstance(op, ClassicalPauli):
                for b in op.bits:
                    if not 0 <= b < written:
                        raise CircuitError(f"op {i} reads classical bit {b} before it is measured")
                for value, paulis in op.cases:
                    if len(value) != len(op.bits):
                        raise CircuitError(f"op {i} has a case value of the wrong length")
                    if any(letter not in PAULI_LETTERS for letter, _ in paulis):
                        raise CircuitError(f"op {i} contains a non-Pauli conditional gate")
            elif not isinstance(op, Reset):
                raise CircuitError(f"op {i} has unknown type {type(op).__name__}")

    @staticmethod
    def _check_gate(i: int, op: Gate):
        if op.name == "U":
            if op.matrix is None or len(op.matrix) != 2 ** len(op.wires):
                raise CircuitError(f"op {i}: unitary does not match its wires")
        elif NAMED_GATES.get(op.name) != len(op.wires):
            raise CircuitError(f"op {i}: gate {op.name} cannot act on {len(op.wires)} wires")

    @property
    def num_bits(self) -> int:
        return sum(isinstance(op, Measure) for op in self.ops)

    def __add__(self, other: "Circuit") -> "Circuit":
        if self.num_wires != other.num_wires:
            raise CircuitError("cannot concatenate circuits of different width")
        shift = self.num_bits
        return Circuit(self.num_wires, self.ops + tuple(_shift_bits(op, shift) for op in other.ops))

    def __len__(self):
        return len(self.ops)

    def remap(self, mapping: Sequence[int], num_wires: int) -> "Circuit":
        """Same circuit with wire ``w`` moved to ``mapping[w]`` inside a wider register."""
        return Circuit(num_wires, tuple(_remap_op(op, mapping) for op in self.ops))

    def is_unitary(self) -> bool:
        return all(isinstance(op, Gate) for op in self.ops)

    def unitary(self) -> np.ndarray:
        """Full 2^n x 2^n matrix of a measurement-free circuit."""
        if not self.is_unitary():
            raise CircuitError("circuit contains non-unitary operations")
        dim = 2**self.num_wires
        cols = []
        for i in range(dim):
            psi = StateVector(self.num_wires, np.eye(dim)[i])
            cols.append(run(self, psi)[0].amplitudes)
        return np.column_stack(cols)


def _shift_bits(op, shift: int):
    if isinstance(op, Measure):
        return Measure(op.wire, op.bit + shift)
    if isinstance(op, ClassicalPauli):
        return ClassicalPauli(tuple(b + shift for b in op.bits), op.cases, op.label)
    return op


def _remap_op(op, m):
    if isinstance(op, Gate):
        return Gate(op.name, tuple(m[w] for w in op.wires), op.matrix)
    if isinstance(op, Measure):
        return Measure(m[op.wire], op.bit)
    if isinstance(op, Reset):
        return Reset(m[op.wire])
    cases = tuple((v, tuple((p, m[w]) for p, w in paulis)) for v, paulis in op.cases)
    return ClassicalPauli(op.bits, cases, op.label)


def _as_rng(rng):
    if rng is None or isinstance(rng, (int, np.integer)):
        return np.random.default_rng(rng)
    return rng


def run(circuit: Circuit, state: StateVector, rng=None, forced: Sequence[int] | None = None):
    """Execute ``circuit`` on ``state``.

    Measurement and reset outcomes come from ``forced`` (consumed in op order)
    when given, otherwise from ``rng`` (a seed or numpy Generator).
    Returns ``(final_state, record)`` with ``record[k]`` the value of bit k.
    """
    if state.num_qubits != circuit.num_wires:
        raise CircuitError(
            f"state has {state.num_qubits} qubits but the circuit has {circuit.num_wires} wires"
        )
    rng = _as_rng(rng) if forced is None else None
    outcomes = iter(forced) if forced is not None else None
    record: list[int] = []
    psi = state.amplitudes.reshape([2] * state.num_qubits)
    # wires and arities were validated when the circuit was built, so the
    # unchecked tensor kernels are safe here
    for op in circuit.ops:
        if isinstance(op, Gate):
            if op.name == "U":
                psi = contract(psi, op.unitary(), op.wires)
            else:
                psi = apply_named(psi, op.name, op.wires)
        elif isinstance(op, Measure):
            bit, psi, _ = project(psi, op.wire, rng, _next_forced(outcomes))
            record.append(bit)
        elif isinstance(op, Reset):
            bit, psi, _ = project(psi, op.wire, rng, _next_forced(outcomes))
            if bit:
                psi = apply_named(psi, "X", (op.wire,))
        else:
            if any(b >= len(record) for b in op.bits):
                raise CircuitError("condition references an unset classical bit")
            for letter, wire in op.lookup(tuple(record[b] for b in op.bits)):
                psi = apply_named(psi, letter, (wire,))
    return StateVector(state.num_qubits, psi.reshape(-1)), record


def _next_forced(outcomes):
    if outcomes is None:
        return None
    try:
        return next(outcomes)
    except StopIteration:
        raise QuantumStateError("ran out of forced measurement outcomes") from None


@dataclass(frozen=True)
class Metrics:
    depth: int = 0
    width: int = 0
    cnot_count: int = 0
    x_count: int = 0
    h_count: int = 0
    measurement_count: int = 0
    reset_count: int = 0
    other_count: int = 0
    conditional_count: int = 0
    opaque_count: int = 0

    @property
    def unitary_gates(self) -> int:
        """Total unitary gate count (CNOT + X + H plus any other gates present)."""
        return (
            self.cnot_count
            + self.x_count
            + self.h_count
            + self.other_count
            + self.conditional_count
            + self.opaque_count
        )

    @property
    def synthesized(self) -> bool:
        return self.opaque_count == 0

    def as_dict(self) -> dict:
        return {
            "depth": self.depth,
            "width": self.width,
            "cnot": self.cnot_count,
            "x": self.x_count,
            "h": self.h_count,
            "measurements": self.measurement_count,
            "resets": self.reset_count,
            "other": self.other_count,
            "conditional": self.conditional_count,
            "opaque": self.opaque_count,
            "unitary_gates": self.unitary_gates,
        }


def layers(circuit: Circuit) -> list[list[int]]:
    """ASAP schedule: list of layers, each a list of op indices."""
    wire_free = [0] * circuit.num_wires
    bit_ready: dict[int, int] = {}
    schedule: list[list[int]] = []
    for i, op in enumerate(circuit.ops):
        wires = op.touched
        if not wires:
            continue
        start = max(wire_free[w] for w in wires)
        if isinstance(op, ClassicalPauli):
            start = max([start] + [bit_ready[b] for b in op.bits])
        for w in wires:
            wire_free[w] = start + 1
        if isinstance(op, Measure):
            bit_ready[op.bit] = start + 1
        while len(schedule) <= start:
            schedule.append([])
        schedule[start].append(i)
    return schedule


def metrics(circuit: Circuit, conditional: str = "zero") -> Metrics:
    if conditional not in ("zero", "worst"):
        raise ValueError("conditional must be 'zero' or 'worst'")
    counts = dict(cnot_count=0, x_count=0, h_count=0, measurement_count=0,
                  reset_count=0, other_count=0, conditional_count=0, opaque_count=0)
    for op in circuit.ops:
        if isinstance(op, Gate):
            if op.name == "CNOT":
                counts["cnot_count"] += 1
            elif op.name == "CZ":
                counts["cnot_count"] += 1
                counts["h_count"] += 2
            elif op.name == "X":
                counts["x_count"] += 1
            elif op.name == "H":
                counts["h_count"] += 1
            elif op.name == "U":
                counts["opaque_count"] += 1
            else:
                counts["other_count"] += 1
        elif isinstance(op, Measure):
            counts["measurement_count"] += 1
        elif isinstance(op, Reset):
            counts["reset_count"] += 1
        elif conditional == "worst":
            counts["conditional_count"] += op.max_gates()
    return Metrics(depth=len(layers(circuit)), width=circuit.num_wires, **counts)


# --- JSON-lines serialization -------------------------------------------------

def _op_to_dict(op) -> dict:
    if isinstance(op, Gate):
        if op.name == "U":
            return {
                "op": "unitary",
                "wires": list(op.wires),
                "matrix": [[[v.real, v.imag] for v in row] for row in op.matrix],
            }
        return {"op": op.name.lower(), "wires": list(op.wires)}
    if isinstance(op, Measure):
        return {"op": "measure", "wire": op.wire, "bit": op.bit}
    if isinstance(op, Reset):
        return {"op": "reset", "wire": op.wire}
    out = {"op": "cpauli", "cond": list(op.bits)}
    out["cases"] = [
        {"value": list(value), "paulis": [[p, w] for p, w in paulis]} for value, paulis in op.cases
    ]
    if op.label:
        out["label"] = op.label
    return out


def serialize(circuit: Circuit) -> str:
    lines = [json.dumps({"width": circuit.num_wires})]
    lines += [json.dumps(_op_to_dict(op)) for op in circuit.ops]
    return "\n".join(lines) + "\n"


def _ints(values, what: str) -> tuple[int, ...]:
    if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
        raise ValueError(f"{what} must be a list of integers")
    return tuple(values)


def _op_from_dict(d: dict):
    kind = d.get("op")
    if not isinstance(kind, str):
        raise ValueError("missing 'op' field")
    if kind == "measure":
        return Measure(int(d["wire"]), int(d["bit"]))
    if kind == "reset":
        return Reset(int(d["wire"]))
    if kind == "unitary":
        matrix = tuple(tuple(complex(re, im) for re, im in row) for row in d["matrix"])
        return Gate("U", _ints(d["wires"], "wires"), matrix)
    if kind == "cpauli":
        bits = _ints(d["cond"], "cond")
        if "cases" in d:
            cases = tuple(
                (_ints(c["value"], "value"), tuple((str(p), int(w)) for p, w in c["paulis"]))
                for c in d["cases"]
            )
        else:
            # shorthand: one case, fired when every condition bit is set unless "value" says otherwise
            value = _ints(d.get("value", [1] * len(bits)), "value")
            cases = ((value, tuple((str(p), int(w)) for p, w in d["paulis"])),)
        return ClassicalPauli(bits, cases, d.get("label", ""))
    name = kind.upper()
    if name not in NAMED_GATES:
        raise ValueError(f"unknown op {kind!r}")
    return Gate(name, _ints(d["wires"], "wires"))


def parse(text: str) -> Circuit:
    """Inverse of :func:`serialize`. Errors carry the offending line number."""
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise CircuitParseError(1, "empty document; expected a {\"width\": n} header")
    ops = []
    width = None
    for lineno, raw in lines:
        try:
            d = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise CircuitParseError(lineno, f"invalid JSON ({exc.msg})") from None
        if not isinstance(d, dict):
            raise CircuitParseError(lineno, "expected a JSON object")
        if width is None:
            if not isinstance(d.get("width"), int):
                raise CircuitParseError(lineno, "header must be {\"width\": <int>}")
            width = d["width"]
            continue
        try:
            ops.append(_op_from_dict(d))
        except (KeyError, TypeError, ValueError) as exc:
            raise CircuitParseError(lineno, str(exc) or type(exc).__name__) from None
    try:
        return Circuit(width, tuple(ops))
    except CircuitError as exc:
        raise CircuitParseError(lines[0][0], str(exc)) from None
