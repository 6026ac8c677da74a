"""Secret reconstruction by a single unitary on the held shares.

For held positions P and lost positions T, each logical state splits as

    |s_L> = sum_j |j>_T (x) |phi_{s,j}>_P ,   j = 00, 01, 10, 11

and the eight conditional vectors phi_{s,j} are orthogonal with norm 1/2
for every 3-subset P. The recovery unitary maps 2 phi_{s,j} to |s>|j>, which
puts the secret on the first held wire and leaves the other two maximally
entangled with the lost shares.

The unitary is compiled over {H, X, CNOT}. Only the first wire matters, so
any circuit C with C^dag X_0 C = U^dag X_0 U and C^dag Z_0 C = U^dag Z_0 U
(signs included) is acceptable: C U^dag then commutes with every operator on
wire 0 and acts on the junk wires alone. A breadth-first search over such
signed Pauli pairs (see ``clifford``) finds a minimum-gate circuit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circuit import Circuit, Metrics, gate, metrics, run, unitary_gate
from .clifford import shortest_pair_circuit
from .code513 import N, FiveQubitCode, LogicalBasis, ShareSet, default_code, to_qubits
from .pauli import PauliString, all_pauli_strings, pauli_from_matrix
from .statevector import DensityMatrix, StateVector, partial_trace

WIDTH = 3


class RecoveryError(RuntimeError):
    """The conditional share vectors are not orthogonal with equal norms."""


@dataclass(frozen=True, eq=False)
class RecoveryUnitary:
    positions: tuple[int, ...]
    matrix: np.ndarray
    gram: np.ndarray

    def to_dict(self) -> dict:
        return {
            "positions": list(self.positions),
            "matrix": [[[float(v.real), float(v.imag)] for v in row] for row in self.matrix],
        }


def conditional_vectors(positions, basis: LogicalBasis | None = None) -> np.ndarray:
    """8 x 8 array whose row ``4 s + j`` is phi_{s,j} on the held positions."""
    basis = basis or LogicalBasis.default()
    held = sorted(to_qubits(positions))
    lost = [q for q in range(N) if q not in held]
    rows = []
    for v in basis.vectors():
        rows.append(v.reshape([2] * N).transpose(lost + held).reshape(2 ** len(lost), -1))
    return np.vstack(rows)


def build_recovery_unitary(positions, basis: LogicalBasis | None = None) -> RecoveryUnitary:
    positions = tuple(sorted(int(p) for p in positions))
    if len(positions) != 3:
        raise ValueError("the recovery unitary is defined for three held positions")
    phis = conditional_vectors(positions, basis)
    gram = phis.conj() @ phis.T
    if not np.allclose(gram, np.eye(8) / 4, atol=1e-12, rtol=0):
        err = np.abs(gram - np.eye(8) / 4).max()
        raise RecoveryError(
            f"conditional share vectors for {positions} are not orthogonal with norm 1/2 "
            f"(max Gram deviation {err:.3g})"
        )
    return RecoveryUnitary(positions, 2 * phis.conj(), gram)


def clifford_images(u: np.ndarray) -> dict[str, PauliString | None]:
    """``U P U^dag`` for every 3-qubit Pauli P, or None where it is not a Pauli."""
    n = int(round(np.log2(u.shape[0])))
    return {p.letters: pauli_from_matrix(u @ p.matrix() @ u.conj().T) for p in all_pauli_strings(n)}


def is_clifford(u: np.ndarray) -> bool:
    return all(v is not None for v in clifford_images(u).values())


def synthesize_circuit(recovery: RecoveryUnitary | np.ndarray) -> Circuit:
    """{H, X, CNOT} circuit agreeing with the recovery unitary on the secret wire.

    If the targets are not Pauli (non-Clifford U), the circuit is the single
    opaque 3-qubit gate U and its metrics report ``opaque_count == 1``.
    """
    u = recovery.matrix if isinstance(recovery, RecoveryUnitary) else np.asarray(recovery)
    x0 = PauliString.single(WIDTH, 0, "X").matrix()
    z0 = PauliString.single(WIDTH, 0, "Z").matrix()
    tx = pauli_from_matrix(u.conj().T @ x0 @ u)
    tz = pauli_from_matrix(u.conj().T @ z0 @ u)
    path = None
    if tx is not None and tz is not None:
        path = shortest_pair_circuit(tx, tz)
    if path is None:
        return Circuit(WIDTH, (unitary_gate(u, 0, 1, 2),))
    return Circuit(WIDTH, tuple(gate(*move) for move in path))


@lru_cache(maxsize=None)
def _cached_circuit(positions: tuple[int, ...], code: FiveQubitCode) -> Circuit:
    return synthesize_circuit(build_recovery_unitary(positions, code.basis))


def recovery_circuit(positions=(3, 4, 5), code: FiveQubitCode | None = None) -> Circuit:
    return _cached_circuit(tuple(sorted(int(p) for p in positions)), code or default_code())


@dataclass(frozen=True, eq=False)
class UnitaryResult:
    secret: StateVector
    density: DensityMatrix
    metrics: Metrics
    circuit: Circuit
    output: StateVector


def reconstruct_unitary(shares: ShareSet, code: FiveQubitCode | None = None) -> UnitaryResult:
    """Apply the recovery circuit to the held shares; the secret lands on the first held wire."""
    if len(shares.positions) != 3:
        raise ValueError("the unitary procedure needs exactly three shares")
    circuit = recovery_circuit(shares.positions, code)
    held = shares.qubits
    out, _ = run(circuit.remap(held, N), shares.codeword)
    rho = partial_trace(out, [held[0]])
    return UnitaryResult(rho.dominant_state(), rho, metrics(circuit), circuit, out)
