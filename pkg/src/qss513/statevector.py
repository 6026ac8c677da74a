"""Dense state-vector simulation for small registers (up to 10 qubits).

Qubit 0 is the most significant bit of a basis index, so the ket string
``|q0 q1 ... q_{n-1}>`` reads left to right as qubits 0..n-1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_QUBITS = 10
NORM_TOL = 1e-12
UNITARY_TOL = 1e-10

_S2 = 1 / np.sqrt(2)

GATE_MATRICES: dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _S2,
    "S": np.diag([1, 1j]).astype(complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
}


class QuantumStateError(ValueError):
    """Raised for malformed states, gates or measurement requests."""


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state on ``num_qubits`` qubits.

    The amplitude array is stored read-only; every operation returns a new
    state.
    """

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise QuantumStateError(f"num_qubits must be in 1..{MAX_QUBITS}")
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2**self.num_qubits:
            raise QuantumStateError(
                f"expected {2**self.num_qubits} amplitudes, got {amps.size}"
            )
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1) > NORM_TOL:
            raise QuantumStateError(f"state is not normalized (norm^2 = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = False) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = int(round(np.log2(amps.size)))
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return cls(n, amps)

    @classmethod
    def from_bits(cls, bits: str | Sequence[int]) -> "StateVector":
        """Computational basis state, e.g. ``from_bits("010")``."""
        bits = [int(b) for b in bits]
        amps = np.zeros(2 ** len(bits), dtype=complex)
        amps[int("".join(map(str, bits)), 2)] = 1
        return cls(len(bits), amps)

    @classmethod
    def zeros(cls, num_qubits: int) -> "StateVector":
        return cls.from_bits([0] * num_qubits)

    def tensor(self, other: "StateVector") -> "StateVector":
        return StateVector(
            self.num_qubits + other.num_qubits,
            np.kron(self.amplitudes, other.amplitudes),
        )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def to_dict(self) -> dict:
        return {
            "num_qubits": self.num_qubits,
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "StateVector":
        try:
            n = int(data["num_qubits"])
            amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise QuantumStateError(f"malformed state document: {exc}") from exc
        return cls(n, amps)

    @classmethod
    def from_json(cls, text: str) -> "StateVector":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuantumStateError(f"malformed state document: {exc}") from exc
        return cls.from_dict(data)

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    num_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        dim = 2**self.num_qubits
        if m.shape != (dim, dim):
            raise QuantumStateError(f"expected a {dim}x{dim} matrix, got {m.shape}")
        if not np.allclose(m, m.conj().T, atol=NORM_TOL, rtol=0):
            raise QuantumStateError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1) > NORM_TOL:
            raise QuantumStateError("density matrix does not have unit trace")
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise QuantumStateError("density matrix is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_state(cls, state: StateVector) -> "DensityMatrix":
        a = state.amplitudes
        return cls(state.num_qubits, np.outer(a, a.conj()))

    @classmethod
    def maximally_mixed(cls, num_qubits: int) -> "DensityMatrix":
        dim = 2**num_qubits
        return cls(num_qubits, np.eye(dim) / dim)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def dominant_state(self) -> StateVector:
        """Leading eigenvector, phase-fixed so its first nonzero amplitude is real positive."""
        vals, vecs = np.linalg.eigh(self.matrix)
        return canonical_phase(StateVector.from_amplitudes(vecs[:, -1], normalize=True))

    def __repr__(self):
        return f"DensityMatrix(num_qubits={self.num_qubits})"


@dataclass(frozen=True)
class Secret:
    """A one-qubit secret ``alpha|0> + beta|1>``."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1) > NORM_TOL:
            raise QuantumStateError(f"secret is not normalized (|a|^2+|b|^2 = {norm!r})")
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))

    @classmethod
    def random(cls, rng: np.random.Generator) -> "Secret":
        """Haar-random secret (normalized complex Gaussian pair)."""
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        return cls(v[0], v[1])

    @classmethod
    def axis_states(cls) -> list["Secret"]:
        """The six Pauli eigenstates |0>, |1>, |+>, |->, |+i>, |-i>."""
        return [
            cls(1, 0),
            cls(0, 1),
            cls(_S2, _S2),
            cls(_S2, -_S2),
            cls(_S2, 1j * _S2),
            cls(_S2, -1j * _S2),
        ]

    def state(self) -> StateVector:
        return StateVector(1, np.array([self.alpha, self.beta]))


def canonical_phase(state: StateVector) -> StateVector:
    """Rotate the global phase so the first non-negligible amplitude is real and >= 0."""
    amps = state.amplitudes
    idx = int(np.argmax(np.abs(amps) > 1e-9))
    phase = amps[idx] / abs(amps[idx])
    return StateVector(state.num_qubits, amps / phase)


def _check_targets(num_qubits: int, targets: Sequence[int]) -> list[int]:
    targets = [int(t) for t in targets]
    for t in targets:
        if not 0 <= t < num_qubits:
            raise QuantumStateError(f"qubit index {t} out of range for {num_qubits} qubits")
    if len(set(targets)) != len(targets):
        raise QuantumStateError(f"duplicate target qubits {targets}")
    return targets


def apply_matrix(
    state: StateVector, matrix: np.ndarray, targets: Sequence[int], check: bool = True
) -> StateVector:
    """Apply a 2^k x 2^k unitary to ``targets`` (first target is the most significant)."""
    n = state.num_qubits
    targets = _check_targets(n, targets)
    k = len(targets)
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape != (2**k, 2**k):
        raise QuantumStateError(f"matrix shape {matrix.shape} does not match {k} targets")
    if check and not np.allclose(matrix.conj().T @ matrix, np.eye(2**k), atol=UNITARY_TOL, rtol=0):
        raise QuantumStateError("gate matrix is not unitary")
    out = contract(state.amplitudes.reshape([2] * n), matrix, targets)
    return StateVector(n, out.reshape(-1))


def contract(psi: np.ndarray, matrix: np.ndarray, targets: Sequence[int]) -> np.ndarray:
    """Unchecked kernel: apply ``matrix`` to the target axes of a (2,)*n tensor."""
    k = len(targets)
    # contract the gate's input legs with the target axes, then move the
    # new legs (which land first) back into place
    out = np.tensordot(matrix.reshape([2] * (2 * k)), psi, axes=(list(range(k, 2 * k)), targets))
    return np.moveaxis(out, list(range(k)), targets)


def _axis_slice(ndim: int, axis: int, value: int):
    index = [slice(None)] * ndim
    index[axis] = value
    return tuple(index)


def apply_named(psi: np.ndarray, name: str, wires: Sequence[int]) -> np.ndarray:
    """Unchecked kernel for named gates on a (2,)*n tensor, with slice fast paths."""
    if name == "X":
        return np.flip(psi, axis=wires[0])
    if name in ("CNOT", "CZ"):
        c, t = wires
        out = np.array(psi)
        on = _axis_slice(psi.ndim, c, 1)
        # dropping the control axis shifts later axes down by one
        t_sub = t - 1 if t > c else t
        if name == "CNOT":
            out[on] = np.flip(psi[on], axis=t_sub)
        else:
            out[on] = psi[on] * np.where(np.arange(2) == 1, -1, 1).reshape(
                [2 if a == t_sub else 1 for a in range(psi.ndim - 1)]
            )
        return out
    if name == "H":
        q = wires[0]
        a, b = psi[_axis_slice(psi.ndim, q, 0)], psi[_axis_slice(psi.ndim, q, 1)]
        return np.stack([(a + b) * _S2, (a - b) * _S2], axis=q)
    return contract(psi, GATE_MATRICES[name], wires)


def gate_matrix(gate) -> np.ndarray:
    """Resolve a gate name or explicit matrix to a unitary matrix."""
    if isinstance(gate, str):
        try:
            return GATE_MATRICES[gate.upper()]
        except KeyError:
            raise QuantumStateError(f"unknown gate {gate!r}") from None
    return np.asarray(gate, dtype=complex)


def apply_gate(state: StateVector, gate, targets: Sequence[int]) -> StateVector:
    """Apply a named gate (X, Y, Z, H, S, CNOT, CZ) or a 1-3 qubit unitary matrix.

    For CNOT the targets are ``[control, target]``.
    """
    matrix = gate_matrix(gate)
    k = len(targets)
    if not 1 <= k <= 3:
        raise QuantumStateError("gates act on 1 to 3 qubits")
    if matrix.shape != (2**k, 2**k):
        raise QuantumStateError(f"gate arity does not match {k} targets")
    # the named table is unitary by construction
    return apply_matrix(state, matrix, targets, check=not isinstance(gate, str))


def outcome_probability(state: StateVector, qubit: int) -> float:
    """Probability of reading 1 on ``qubit``."""
    (qubit,) = _check_targets(state.num_qubits, [qubit])
    psi = state.amplitudes.reshape([2] * state.num_qubits)
    return float(np.sum(np.abs(np.take(psi, 1, axis=qubit)) ** 2))


def measure_z(state: StateVector, qubit: int, rng=None, forced: int | None = None):
    """Computational-basis measurement of one qubit.

    Returns ``(outcome, post_state, probability)``. With ``forced`` set, that
    outcome is selected and its Born probability reported; otherwise the
    outcome is sampled from ``rng`` (a numpy Generator, or anything with a
    ``random()`` method returning a float in [0, 1)).
    """
    (qubit,) = _check_targets(state.num_qubits, [qubit])
    psi = state.amplitudes.reshape([2] * state.num_qubits)
    outcome, post, prob = project(psi, qubit, rng, forced)
    return outcome, StateVector(state.num_qubits, post.reshape(-1)), prob


def project(psi: np.ndarray, qubit: int, rng=None, forced: int | None = None):
    """Unchecked kernel behind :func:`measure_z`, on a (2,)*n tensor."""
    p1 = float(np.sum(np.abs(np.take(psi, 1, axis=qubit)) ** 2))
    probs = (1 - p1, p1)
    if forced is None:
        if rng is None:
            raise QuantumStateError("measurement needs a randomness source or a forced outcome")
        outcome = 1 if rng.random() < p1 else 0
    else:
        outcome = int(forced)
        if outcome not in (0, 1):
            raise QuantumStateError(f"forced outcome must be 0 or 1, got {forced!r}")
        if probs[outcome] < 1e-12:
            raise QuantumStateError(
                f"forced outcome {outcome} on qubit {qubit} has probability {probs[outcome]:.3g}"
            )
    post = np.array(psi)
    index = [slice(None)] * psi.ndim
    index[qubit] = 1 - outcome
    post[tuple(index)] = 0
    post /= np.sqrt(probs[outcome])
    return outcome, post, probs[outcome]


def partial_trace(state: StateVector, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on ``keep`` (in the given order)."""
    keep = list(keep)
    if not keep:
        raise QuantumStateError("keep must name at least one qubit")
    n = state.num_qubits
    keep = _check_targets(n, keep)
    rest = [q for q in range(n) if q not in keep]
    psi = state.amplitudes.reshape([2] * n).transpose(keep + rest)
    psi = psi.reshape(2 ** len(keep), -1)
    return DensityMatrix(len(keep), psi @ psi.conj().T)


def fidelity(a: StateVector | DensityMatrix, b: StateVector) -> float:
    """Overlap of ``a`` (pure or mixed) with the pure state ``b``."""
    if a.num_qubits != b.num_qubits:
        raise QuantumStateError(
            f"dimension mismatch: {a.num_qubits} vs {b.num_qubits} qubits"
        )
    vb = b.amplitudes
    if isinstance(a, DensityMatrix):
        value = np.vdot(vb, a.matrix @ vb).real
    else:
        value = abs(np.vdot(a.amplitudes, vb)) ** 2
    return float(min(max(value, 0.0), 1.0))
