"""Secret reconstruction by erasure correction.

Missing shares are replaced with fresh qubits and treated as erasures at
known positions. The four generators are measured one after another through
a single auxiliary qubit, which is reset by a classically controlled X after
each readout. One "Apply Pauli" block then undoes the erasure according to
the four recorded bits, and the repaired codeword is decoded.

Wire layout of the circuit: wires 0-4 are code positions 1-5, wire 5 is the
auxiliary qubit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circuit import (
    Circuit,
    ClassicalPauli,
    Measure,
    Metrics,
    conditional_x,
    gate,
    metrics,
    run,
)
from .code513 import N, FiveQubitCode, ShareSet, default_code, to_qubits
from .pauli import PauliString
from .statevector import (
    DensityMatrix,
    StateVector,
    partial_trace,
)

AUX = N
WIDTH = N + 1


def controlled_pauli_ops(generator: PauliString, control: int):
    """Gates realizing controlled-``generator`` from ``control`` with CNOT and CZ only.

    Returns ``(ops, flip)``. A Y factor becomes CZ then CNOT, which is
    controlled-(XZ) = controlled-(-iY); the accumulated phase must be real,
    and ``flip`` is 1 when it is -1 (readout bit inverted).
    """
    ops = []
    n_y = 0
    for letter, q in generator.factors():
        if letter == "X":
            ops.append(gate("CNOT", control, q))
        elif letter == "Z":
            ops.append(gate("CZ", control, q))
        else:
            ops += [gate("CZ", control, q), gate("CNOT", control, q)]
            n_y += 1
    quarter_turns = (n_y + generator.phase) % 4
    if quarter_turns % 2:
        raise ValueError(f"{generator} needs an S gate to control; not in the gate set")
    return ops, quarter_turns // 2


def build_erasure_circuit(
    erased=(1, 2), code: FiveQubitCode | None = None, decode: bool = False
) -> Circuit:
    """Width-6 syndrome-extraction and correction circuit for two erased positions.

    With ``decode=True`` the decoder circuit is appended, leaving the secret
    on wire 0 (code position 1).
    """
    if len(set(erased)) != 2 or len(erased) != 2:
        raise ValueError(f"exactly two erased positions are required, got {erased!r}")
    return _erasure_circuit(tuple(sorted(int(p) for p in erased)), code or default_code(), decode)


@lru_cache(maxsize=None)
def _erasure_circuit(erased, code: FiveQubitCode, decode: bool) -> Circuit:
    table = code.syndrome_table(erased)
    ops = []
    flips = []
    for bit, g in enumerate(table.generators):
        body, flip = controlled_pauli_ops(g, AUX)
        flips.append(flip)
        ops += [gate("H", AUX), *body, gate("H", AUX), Measure(AUX, bit), conditional_x(bit, AUX)]
    cases = []
    for syndrome, correction in table:
        readout = tuple(s ^ f for s, f in zip(syndrome, flips))
        cases.append((readout, tuple(correction.factors())))
    ops.append(ClassicalPauli(tuple(range(len(flips))), tuple(sorted(cases)), "apply_pauli"))
    if decode:
        ops += code.decoder_circuit.ops
    return Circuit(WIDTH, tuple(ops))


@dataclass(frozen=True, eq=False)
class ErasureResult:
    secret: StateVector
    density: DensityMatrix
    bits: tuple[int, ...]
    metrics: Metrics
    circuit: Circuit


def reconstruct_erasure(
    shares: ShareSet,
    rng=None,
    forced=None,
    code: FiveQubitCode | None = None,
    fresh: tuple[StateVector, StateVector] | None = None,
) -> ErasureResult:
    """Recover the secret from three shares by erasure correction and decoding.

    Runs the full circuit (correction then decoder); the secret is read from
    the wire of code position 1.

    The simulated register holds the full original codeword (the lost shares
    stay entangled but untouched), two fresh qubits standing in for the lost
    shares, and the auxiliary qubit. ``fresh`` overrides the |0>|0> stand-ins.
    """
    code = code or default_code()
    if len(shares.positions) != 3:
        raise ValueError("the erasure procedure needs exactly three shares")
    circuit, register, wire_map, stats = _register_circuit(shares.missing, code)
    fresh = fresh or (StateVector.zeros(1), StateVector.zeros(1))
    state = shares.codeword.tensor(fresh[0]).tensor(fresh[1]).tensor(StateVector.zeros(1))
    final, bits = run(register, state, rng=rng, forced=forced)
    rho = partial_trace(final, [wire_map[0]])
    return ErasureResult(rho.dominant_state(), rho, tuple(bits), stats, circuit)


@lru_cache(maxsize=None)
def _register_circuit(erased, code: FiveQubitCode):
    # register: 0-4 original codeword, 5-6 fresh stand-ins, 7 auxiliary
    circuit = build_erasure_circuit(erased, code, decode=True)
    wire_map = list(range(N))
    for slot, q in zip((N, N + 1), to_qubits(erased)):
        wire_map[q] = slot
    wire_map.append(N + 2)
    return circuit, circuit.remap(wire_map, N + 3), wire_map, metrics(circuit)


def syndrome_branches(num_bits: int = 4):
    """All forced-outcome sequences for ``num_bits`` measurements."""
    for k in range(2**num_bits):
        yield [int(b) for b in np.binary_repr(k, num_bits)]
