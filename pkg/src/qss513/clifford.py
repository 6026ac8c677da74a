"""Real Clifford synthesis over {H, X, CNOT} by tracking conjugated Pauli pairs.

Both synthesizers work on a pair of anticommuting Hermitian Pauli strings
``(a, b)`` and find gates g_1 ... g_k (time order) with

    C a C^dag = +X_0,  C b C^dag = +Z_0,  C = g_k ... g_1.

Such a C moves the qubit whose logical operators are ``a`` and ``b`` onto
wire 0; what happens on the other wires is left free.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache

from .pauli import PauliString

# signed Pauli as (xs, zs, neg) with Y encoded as x = z = 1


def to_triple(p: PauliString):
    if not p.is_hermitian():
        raise ValueError(f"{p} is not Hermitian")
    return tuple(p.xs), tuple(p.zs), p.phase // 2


def from_triple(t) -> PauliString:
    return PauliString(t[0], t[1], 2 * t[2])


def conj_h(p, q):
    xs, zs, neg = list(p[0]), list(p[1]), p[2]
    neg ^= xs[q] & zs[q]
    xs[q], zs[q] = zs[q], xs[q]
    return tuple(xs), tuple(zs), neg


def conj_x(p, q):
    return p[0], p[1], p[2] ^ p[1][q]


def conj_cnot(p, c, t):
    xs, zs, neg = list(p[0]), list(p[1]), p[2]
    neg ^= xs[c] & zs[t] & (xs[t] ^ zs[c] ^ 1)
    xs[t] ^= xs[c]
    zs[c] ^= zs[t]
    return tuple(xs), tuple(zs), neg


def conjugate(p, move):
    """Conjugate triple ``p`` by one gate ``("H", q)``, ``("X", q)`` or ``("CNOT", c, t)``."""
    name = move[0]
    if name == "H":
        return conj_h(p, move[1])
    if name == "X":
        return conj_x(p, move[1])
    if name == "CNOT":
        return conj_cnot(p, move[1], move[2])
    raise ValueError(f"unsupported gate {name!r}")


def _moves(n: int):
    moves = [("H", q) for q in range(n)]
    moves += [("CNOT", c, t) for c, t in itertools.permutations(range(n), 2)]
    moves += [("X", q) for q in range(n)]
    return moves


def _target(n: int):
    return (
        to_triple(PauliString.single(n, 0, "X")),
        to_triple(PauliString.single(n, 0, "Z")),
    )


@lru_cache(maxsize=None)
def _bfs(start, n: int):
    target = _target(n)
    parent = {start: None}
    queue = deque([start])
    moves = _moves(n)
    while queue:
        node = queue.popleft()
        if node == target:
            path = []
            while parent[node] is not None:
                node, move = parent[node]
                path.append(move)
            return path[::-1]
        for move in moves:
            nxt = (conjugate(node[0], move), conjugate(node[1], move))
            if nxt not in parent:
                parent[nxt] = (node, move)
                queue.append(nxt)
    return None


def shortest_pair_circuit(a: PauliString, b: PauliString):
    """Minimum-gate move list sending ``(a, b)`` to ``(X_0, Z_0)``; None if unreachable.

    Exhaustive breadth-first search; meant for three or fewer qubits.
    """
    return _bfs((to_triple(a), to_triple(b)), a.num_qubits)


def _apply(moves, pair, move):
    moves.append(move)
    return conjugate(pair[0], move), conjugate(pair[1], move)


def _letter(p, q):
    return {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}[(p[0][q], p[1][q])]


def greedy_pair_circuit(a: PauliString, b: PauliString):
    """Move list sending ``(a, b)`` to ``(X_0, Z_0)`` by elimination.

    Both operators must be real, i.e. carry an even number of Y factors;
    without an S gate single Y factors are removed in pairs.
    """
    if a.commutes_with(b):
        raise ValueError("the pair must anticommute")
    for p in (a, b):
        if p.letters.count("Y") % 2:
            raise ValueError(f"{p} has an odd number of Y factors; not reachable without S")
    n = a.num_qubits
    moves: list = []
    pair = (to_triple(a), to_triple(b))

    # first operator -> product of X's, then a single X on a pivot
    ys = [q for q in range(n) if _letter(pair[0], q) == "Y"]
    for p, q in zip(ys[::2], ys[1::2]):
        pair = _apply(moves, pair, ("CNOT", p, q))  # Y Y -> X Z
    for q in range(n):
        if _letter(pair[0], q) == "Z":
            pair = _apply(moves, pair, ("H", q))
    support = [q for q in range(n) if _letter(pair[0], q) != "I"]
    pivot = 0 if 0 in support else support[0]
    for q in support:
        if q != pivot:
            pair = _apply(moves, pair, ("CNOT", pivot, q))

    # second operator -> Z on the pivot; CNOTs targeting the pivot keep X_pivot fixed
    if _letter(pair[1], pivot) == "Y":
        q = next(q for q in range(n) if q != pivot and pair[1][0][q])
        pair = _apply(moves, pair, ("CNOT", q, pivot))
    rest = [q for q in range(n) if q != pivot]
    ys = [q for q in rest if _letter(pair[1], q) == "Y"]
    for p, q in zip(ys[::2], ys[1::2]):
        pair = _apply(moves, pair, ("CNOT", p, q))
    for q in rest:
        if _letter(pair[1], q) == "X":
            pair = _apply(moves, pair, ("H", q))
    for q in rest:
        if _letter(pair[1], q) == "Z":
            pair = _apply(moves, pair, ("CNOT", q, pivot))

    if pivot != 0:
        for move in (("CNOT", 0, pivot), ("CNOT", pivot, 0), ("CNOT", 0, pivot)):
            pair = _apply(moves, pair, move)
    # signs: X flips the sign of Z_0; H X H flips the sign of X_0
    if pair[0][2]:
        for move in (("H", 0), ("X", 0), ("H", 0)):
            pair = _apply(moves, pair, move)
    if pair[1][2]:
        pair = _apply(moves, pair, ("X", 0))
    assert pair == _target(n), pair
    return moves
