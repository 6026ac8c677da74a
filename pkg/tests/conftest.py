import functools

import numpy as np
import pytest

from qss513.statevector import Secret

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0 + 0j, -1.0])
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
LETTERS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def kron_label(label: str) -> np.ndarray:
    """Dense matrix of a Pauli label by explicit Kronecker products (qubit 0 leftmost)."""
    sign = {"+": 1, "-": -1}.get(label[0], None)
    if sign is None:
        sign = 1
    else:
        label = label[1:]
    return sign * functools.reduce(np.kron, (LETTERS[c] for c in label))


def embed(gate: np.ndarray, target: int, n: int) -> np.ndarray:
    """Single-qubit ``gate`` on ``target`` of an n-qubit register."""
    return np.kron(np.kron(np.eye(2**target), gate), np.eye(2 ** (n - target - 1)))


def permutation_cnot(control: int, target: int, n: int) -> np.ndarray:
    m = np.zeros((2**n, 2**n))
    for i in range(2**n):
        bits = [(i >> (n - 1 - q)) & 1 for q in range(n)]
        if bits[control]:
            bits[target] ^= 1
        j = int("".join(map(str, bits)), 2)
        m[j, i] = 1
    return m


def random_state(rng, n: int) -> np.ndarray:
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def secrets():
    gen = np.random.default_rng(99)
    return [Secret.random(gen) for _ in range(10)] + Secret.axis_states()
