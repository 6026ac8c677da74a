"""Signed Pauli strings in symplectic (x|z) form.

A string is ``i**phase * P_0 (x) ... (x) P_{n-1}`` where each letter is fixed by
its bit pair: (x, z) = (0, 0) I, (1, 0) X, (1, 1) Y, (0, 1) Z. Y is the
Hermitian Pauli, so the phase of an ordinary letter string is 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .statevector import GATE_MATRICES

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {v: k for k, v in _LETTER_BITS.items()}
_PHASE_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}


@dataclass(frozen=True)
class PauliString:
    xs: tuple[int, ...]
    zs: tuple[int, ...]
    phase: int = 0  # power of i, mod 4

    def __post_init__(self):
        if len(self.xs) != len(self.zs):
            raise ValueError("xs and zs must have equal length")
        object.__setattr__(self, "xs", tuple(int(b) & 1 for b in self.xs))
        object.__setattr__(self, "zs", tuple(int(b) & 1 for b in self.zs))
        object.__setattr__(self, "phase", int(self.phase) % 4)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse strings like ``"+XZZXI"``, ``"-IYXXY"`` or ``"XIIZI"``."""
        phase = 0
        for prefix, p in (("+i", 1), ("-i", 3), ("+", 0), ("-", 2)):
            if label.startswith(prefix):
                phase, label = p, label[len(prefix):]
                break
        try:
            bits = [_LETTER_BITS[c] for c in label.upper()]
        except KeyError as exc:
            raise ValueError(f"bad Pauli letter {exc.args[0]!r}") from None
        return cls(tuple(b[0] for b in bits), tuple(b[1] for b in bits), phase)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls((0,) * n, (0,) * n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliString":
        letters = ["I"] * n
        letters[qubit] = letter
        return cls.from_label("".join(letters))

    @property
    def num_qubits(self) -> int:
        return len(self.xs)

    @property
    def letters(self) -> str:
        return "".join(_BITS_LETTER[b] for b in zip(self.xs, self.zs))

    @property
    def sign(self) -> complex:
        return 1j**self.phase

    @property
    def weight(self) -> int:
        return sum(1 for x, z in zip(self.xs, self.zs) if x or z)

    @property
    def support(self) -> list[int]:
        return [q for q, (x, z) in enumerate(zip(self.xs, self.zs)) if x or z]

    def is_hermitian(self) -> bool:
        return self.phase in (0, 2)

    def symplectic(self) -> np.ndarray:
        return np.array(self.xs + self.zs, dtype=np.uint8)

    def commutes_with(self, other: "PauliString") -> bool:
        return symplectic_product(self, other) == 0

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.num_qubits != other.num_qubits:
            raise ValueError("Pauli strings act on different numbers of qubits")
        phase = self.phase + other.phase
        for x1, z1, x2, z2 in zip(self.xs, self.zs, other.xs, other.zs):
            phase += _single_product_phase(x1, z1, x2, z2)
        xs = tuple(a ^ b for a, b in zip(self.xs, other.xs))
        zs = tuple(a ^ b for a, b in zip(self.zs, other.zs))
        return PauliString(xs, zs, phase)

    def __neg__(self) -> "PauliString":
        return PauliString(self.xs, self.zs, self.phase + 2)

    def matrix(self) -> np.ndarray:
        mats = [GATE_MATRICES[c] for c in self.letters]
        return self.sign * reduce(np.kron, mats, np.eye(1, dtype=complex))

    def apply_to(self, vector: np.ndarray) -> np.ndarray:
        """Act on a 2**n amplitude vector without building the matrix."""
        n = self.num_qubits
        idx = np.arange(2**n)
        xmask = sum(1 << (n - 1 - q) for q in range(n) if self.xs[q])
        zmask = sum(1 << (n - 1 - q) for q in range(n) if self.zs[q])
        parity = np.array([bin(i & zmask).count("1") & 1 for i in idx])
        n_y = sum(x & z for x, z in zip(self.xs, self.zs))
        out = np.zeros(2**n, dtype=complex)
        # Y = i X Z, so the string is i**(phase + #Y) times X^x Z^z
        out[idx ^ xmask] = (1j ** ((self.phase + n_y) % 4)) * (-1.0) ** parity * vector
        return out

    def factors(self) -> list[tuple[str, int]]:
        """Non-identity single-qubit factors as ``(letter, qubit)`` pairs."""
        return [(c, q) for q, c in enumerate(self.letters) if c != "I"]

    def __str__(self):
        return _PHASE_TEXT[self.phase] + self.letters


def _single_product_phase(x1, z1, x2, z2) -> int:
    # exponent of i picked up by P(x1,z1) * P(x2,z2) for Hermitian single-qubit Paulis
    a = _BITS_LETTER[(x1, z1)]
    b = _BITS_LETTER[(x2, z2)]
    if "I" in (a, b) or a == b:
        return 0
    return 1 if (a, b) in (("X", "Y"), ("Y", "Z"), ("Z", "X")) else 3


def symplectic_product(p: PauliString, q: PauliString) -> int:
    """0 if ``p`` and ``q`` commute, 1 if they anticommute."""
    return (
        sum(a * b for a, b in zip(p.xs, q.zs)) + sum(a * b for a, b in zip(p.zs, q.xs))
    ) % 2


def gf2_rank(rows) -> int:
    m = np.array(rows, dtype=np.uint8) % 2
    if m.size == 0:
        return 0
    rank = 0
    for col in range(m.shape[1]):
        pivot = next((r for r in range(rank, m.shape[0]) if m[r, col]), None)
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        for r in range(m.shape[0]):
            if r != rank and m[r, col]:
                m[r] ^= m[rank]
        rank += 1
    return rank


def all_pauli_strings(n: int):
    """Every unsigned n-qubit Pauli letter string (4**n of them)."""
    for letters in itertools.product("IXYZ", repeat=n):
        yield PauliString.from_label("".join(letters))


def pauli_from_matrix(matrix: np.ndarray, atol: float = 1e-10) -> PauliString | None:
    """Identify ``matrix`` as a phased Pauli string, or return None."""
    dim = matrix.shape[0]
    n = int(round(np.log2(dim)))
    for p in all_pauli_strings(n):
        # Pauli strings are trace-orthogonal, so one overlap pins the coefficient
        coeff = np.trace(p.matrix().conj().T @ matrix) / dim
        if abs(abs(coeff) - 1) < atol:
            for phase in range(4):
                if abs(coeff - 1j**phase) < atol:
                    candidate = PauliString(p.xs, p.zs, phase)
                    if np.allclose(candidate.matrix(), matrix, atol=atol, rtol=0):
                        return candidate
            return None
    return None
