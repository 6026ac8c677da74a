"""The [[5,1,3]] binary stabilizer code in the convention used for secret sharing.

Positions are numbered 1..5 (share k lives on qubit index k-1).

The logical basis is given as explicit 16-term expansions, each with an
overall factor -1/4. ``LISTED_ZERO_L`` / ``LISTED_ONE_L`` hold the reference
expansion verbatim. Its |1_L> carries one sign error on the |10001> term:
with it, the pair is stabilized by no Pauli besides the identity
and three shares cannot recover the secret. ``ONE_L_TERMS`` flips that single
sign, which is the only single-sign change that yields a stabilizer code, and
is the default basis used everywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .circuit import Circuit, gate
from .clifford import greedy_pair_circuit
from .pauli import PauliString, all_pauli_strings, gf2_rank, symplectic_product
from .statevector import QuantumStateError, Secret, StateVector

N, K, D = 5, 1, 3
PREFACTOR = -0.25

LISTED_ZERO_L = (
    "+11111 +01101 +10110 +01011 +10101 -00100 -11001 -00111 "
    "-00010 -11100 -00001 -10000 -01110 -10011 -01000 +11010"
).split()
LISTED_ONE_L = (
    "+00000 +10010 +01001 +10100 +01010 -11011 -00110 -11000 "
    "-11101 -00011 -11110 -01111 +10001 -01100 -10111 +00101"
).split()

ZERO_L_TERMS = list(LISTED_ZERO_L)
ONE_L_TERMS = [("-" + t[1:]) if t == "+10001" else t for t in LISTED_ONE_L]


class StabilizerSearchError(RuntimeError):
    """The logical basis does not span a [[5,1,3]] stabilizer code space."""


class CodeSpaceError(QuantumStateError):
    """A state expected to be a codeword lies outside the code space."""


@dataclass(frozen=True)
class CodeParameters:
    n: int = N
    k: int = K
    d: int = D

    @property
    def correctable_erasures(self) -> int:
        return self.d - 1


def terms_to_state(terms, prefactor: float = PREFACTOR) -> StateVector:
    """Build a 5-qubit state from signed ket strings such as ``"-00100"``."""
    amps = np.zeros(2**N, dtype=complex)
    for term in terms:
        sign = {"+": 1, "-": -1}[term[0]]
        amps[int(term[1:], 2)] += prefactor * sign
    return StateVector(N, amps)


@dataclass(frozen=True, eq=False)
class LogicalBasis:
    zero_L: StateVector
    one_L: StateVector

    @classmethod
    def default(cls) -> "LogicalBasis":
        return cls(terms_to_state(ZERO_L_TERMS), terms_to_state(ONE_L_TERMS))

    @classmethod
    def uncorrected(cls) -> "LogicalBasis":
        """The listed expansion as is, sign error included."""
        return cls(terms_to_state(LISTED_ZERO_L), terms_to_state(LISTED_ONE_L))

    def vectors(self) -> tuple[np.ndarray, np.ndarray]:
        return self.zero_L.amplitudes, self.one_L.amplitudes

    def to_dict(self) -> dict:
        return {"zero_L": self.zero_L.to_dict(), "one_L": self.one_L.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "LogicalBasis":
        try:
            return cls(StateVector.from_dict(data["zero_L"]), StateVector.from_dict(data["one_L"]))
        except (KeyError, TypeError) as exc:
            raise QuantumStateError(f"malformed basis document: {exc}") from exc


def encode(secret: Secret, basis: LogicalBasis | None = None) -> StateVector:
    """``alpha |0_L> + beta |1_L>``."""
    if not isinstance(secret, Secret):
        secret = Secret(*secret)
    basis = basis or LogicalBasis.default()
    z, o = basis.vectors()
    return StateVector(N, secret.alpha * z + secret.beta * o)


def stabilizer_group(basis: LogicalBasis) -> list[PauliString]:
    """All signed Pauli strings fixing both logical states (brute force over 2 * 4**5)."""
    z, o = basis.vectors()
    group = []
    for p in all_pauli_strings(N):
        for sign in (p, -p):
            if np.allclose(sign.apply_to(z), z, atol=1e-12) and np.allclose(
                sign.apply_to(o), o, atol=1e-12
            ):
                group.append(sign)
    return group


def _generator_key(p: PauliString):
    # Y-free generators need no phase bookkeeping in controlled-Pauli circuits
    return (p.letters.count("Y"), p.letters)


def derive_stabilizers(basis: LogicalBasis | None = None) -> list[PauliString]:
    """Four independent commuting generators of the stabilizer of ``basis``.

    Non-identity group elements are sorted by (number of Y factors, letter
    string) and picked greedily while they stay independent over GF(2).
    """
    basis = basis or LogicalBasis.default()
    group = stabilizer_group(basis)
    if len(group) != 2 ** (N - K):
        raise StabilizerSearchError(
            f"expected {2 ** (N - K)} stabilizer elements, found {len(group)}; "
            "the logical basis is not a [[5,1,3]] code space"
        )
    gens: list[PauliString] = []
    for p in sorted((g for g in group if g.weight), key=_generator_key):
        if gf2_rank([g.symplectic() for g in gens + [p]]) == len(gens) + 1:
            gens.append(p)
        if len(gens) == N - K:
            break
    for a, b in itertools.combinations(gens, 2):
        if not a.commutes_with(b):
            raise StabilizerSearchError(f"generators {a} and {b} anticommute")
    return gens


def logical_operators(basis: LogicalBasis | None = None) -> tuple[PauliString, PauliString]:
    """Lowest-weight signed Paulis acting as logical X and logical Z on ``basis``.

    Logical X swaps |0_L> and |1_L> exactly (no phase); logical Z fixes |0_L>
    and negates |1_L>.
    """
    basis = basis or LogicalBasis.default()
    z, o = basis.vectors()
    found = {"X": [], "Z": []}
    for p in all_pauli_strings(N):
        for cand in (p, -p):
            pz, po = cand.apply_to(z), cand.apply_to(o)
            if np.allclose(pz, o, atol=1e-12) and np.allclose(po, z, atol=1e-12):
                found["X"].append(cand)
            elif np.allclose(pz, z, atol=1e-12) and np.allclose(po, -o, atol=1e-12):
                found["Z"].append(cand)
    if not found["X"] or not found["Z"]:
        raise StabilizerSearchError("no Pauli logical operators for this basis")
    key = lambda p: (p.weight, p.letters.count("Y"), p.letters, p.phase)
    return min(found["X"], key=key), min(found["Z"], key=key)


def code_projector(generators) -> np.ndarray:
    """Projector onto the joint +1 eigenspace, prod (I + g) / 2."""
    proj = np.eye(2**N, dtype=complex)
    for g in generators:
        proj = proj @ (np.eye(2**N) + g.matrix()) / 2
    return proj


def to_qubits(positions) -> list[int]:
    qubits = [int(p) - 1 for p in positions]
    if any(not 0 <= q < N for q in qubits) or len(set(qubits)) != len(qubits):
        raise ValueError(f"positions must be distinct values in 1..{N}, got {list(positions)}")
    return qubits


@dataclass(frozen=True, eq=False)
class ShareSet:
    """Shares at ``positions`` of a 5-qubit ``codeword``.

    The codeword is kept whole; positions outside ``positions`` are treated
    as lost shares that reconstruction never touches.
    """

    positions: tuple[int, ...]
    codeword: StateVector

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(sorted(int(p) for p in self.positions)))
        to_qubits(self.positions)
        if self.codeword.num_qubits != N:
            raise ValueError(f"shares must come from a {N}-qubit codeword")

    @property
    def missing(self) -> tuple[int, ...]:
        return tuple(p for p in range(1, N + 1) if p not in self.positions)

    @property
    def qubits(self) -> list[int]:
        return to_qubits(self.positions)


@dataclass(frozen=True)
class SyndromeTable:
    """Map from a 4-bit syndrome to the Pauli correction on two erased positions."""

    erased: tuple[int, int]
    generators: tuple[PauliString, ...]
    entries: dict = field(hash=False)

    def correction(self, syndrome) -> PauliString:
        return self.entries[tuple(int(b) for b in syndrome)]

    def syndrome_of(self, error: PauliString) -> tuple[int, ...]:
        return tuple(symplectic_product(error, g) for g in self.generators)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(sorted(self.entries.items()))


def build_syndrome_table(generators, erased=(1, 2)) -> SyndromeTable:
    """Syndrome lookup for every Pauli error supported on the two ``erased`` positions."""
    qubits = to_qubits(erased)
    if len(qubits) != 2:
        raise ValueError("exactly two erased positions are supported")
    generators = tuple(generators)
    entries = {}
    for la, lb in itertools.product("IXYZ", repeat=2):
        letters = ["I"] * N
        letters[qubits[0]], letters[qubits[1]] = la, lb
        error = PauliString.from_label("".join(letters))
        syndrome = tuple(symplectic_product(error, g) for g in generators)
        if syndrome in entries:
            raise StabilizerSearchError(
                f"syndrome collision between {entries[syndrome]} and {error}"
            )
        # Hermitian Pauli errors are their own inverse
        entries[syndrome] = error
    return SyndromeTable(tuple(erased), generators, entries)


def decoder_matrix(basis: LogicalBasis | None = None) -> np.ndarray:
    """Fixed unitary sending ``a|0_L> + b|1_L>`` to ``(a|0> + b|1>) (x) |0000>``."""
    basis = basis or LogicalBasis.default()
    z, o = basis.vectors()
    dim = 2**N
    q, r = np.linalg.qr(np.column_stack([z, o, np.eye(dim)]))
    q = q[:, :dim] * np.sign(np.diag(r)[:dim].real + (np.diag(r)[:dim].real == 0))
    targets = [0, dim // 2] + [i for i in range(dim) if i not in (0, dim // 2)]
    dec = np.zeros((dim, dim), dtype=complex)
    for col, target in enumerate(targets):
        dec[target] = q[:, col].conj()
    return dec


def decode(codeword: StateVector, basis: LogicalBasis | None = None):
    """Split a codeword into the secret qubit and the |0000> residual."""
    basis = basis or LogicalBasis.default()
    if codeword.num_qubits != N:
        raise CodeSpaceError(f"expected a {N}-qubit codeword")
    z, o = basis.vectors()
    psi = codeword.amplitudes
    weight = abs(np.vdot(z, psi)) ** 2 + abs(np.vdot(o, psi)) ** 2
    if weight < 1 - 1e-10:
        raise CodeSpaceError(f"state lies outside the code space (overlap {weight:.6g})")
    out = decoder_matrix(basis) @ psi
    secret = np.array([out[0], out[2 ** (N - 1)]])
    secret /= np.linalg.norm(secret)
    return StateVector(1, secret), StateVector.zeros(N - 1)


class FiveQubitCode:
    """Bundle of the derived objects for one logical basis (computed lazily)."""

    params = CodeParameters()

    def __init__(self, basis: LogicalBasis | None = None):
        self.basis = basis or LogicalBasis.default()

    @cached_property
    def generators(self) -> list[PauliString]:
        return derive_stabilizers(self.basis)

    @cached_property
    def projector(self) -> np.ndarray:
        return code_projector(self.generators)

    @cached_property
    def decoder(self) -> np.ndarray:
        return decoder_matrix(self.basis)

    @cached_property
    def logicals(self) -> tuple[PauliString, PauliString]:
        return logical_operators(self.basis)

    @cached_property
    def decoder_circuit(self) -> Circuit:
        return decoder_circuit(self)

    def syndrome_table(self, erased=(1, 2)) -> SyndromeTable:
        key = tuple(sorted(erased))
        cache = self.__dict__.setdefault("_tables", {})
        if key not in cache:
            cache[key] = build_syndrome_table(self.generators, key)
        return cache[key]

    def encode(self, secret: Secret) -> StateVector:
        return encode(secret, self.basis)

    def decode(self, codeword: StateVector):
        return decode(codeword, self.basis)


@lru_cache(maxsize=None)
def default_code() -> FiveQubitCode:
    return FiveQubitCode()


def decoder_circuit(code: FiveQubitCode | None = None) -> Circuit:
    """{H, X, CNOT} circuit taking ``a|0_L> + b|1_L>`` to ``(a|0> + b|1>) (x) |junk>``.

    The junk state on wires 1-4 is fixed (independent of the secret) but is
    not |0000>; :func:`decode` is the exact version with a |0000> residual.
    """
    code = code or default_code()
    lx, lz = code.logicals
    return Circuit(N, tuple(gate(*move) for move in greedy_pair_circuit(lx, lz)))
