"""
Sharing a qubit among five players
==================================

Encode a one-qubit secret into five shares, check that two shares reveal
nothing, then recover it from three shares in two different ways.
"""

import numpy as np

from qss513 import ShareSet, default_code, partial_trace, reconstruct_erasure, reconstruct_unitary
from qss513.statevector import Secret, fidelity

code = default_code()
secret = Secret(0.6, 0.8j)
word = code.encode(secret)
print("codeword has", np.count_nonzero(np.abs(word.amplitudes) > 1e-12), "nonzero amplitudes")

# the stabilizer generators found by brute force
for g in code.generators:
    print("  generator", g)

# players 1 and 2 pool their shares: their joint state is I/4 whatever the secret
rho = partial_trace(word, [0, 1]).matrix
print("shares {1,2} reduced state == I/4:", np.allclose(rho, np.eye(4) / 4))

# players 3, 4, 5 pool theirs
shares = ShareSet((3, 4, 5), word)

out = reconstruct_unitary(shares)
print("\nunitary procedure")
print("  recovered", np.round(out.secret.amplitudes, 6), "fidelity", round(fidelity(out.density, secret.state()), 12))
print("  circuit:", [(op.name, op.wires) for op in out.circuit.ops])

rng = np.random.default_rng(7)
out = reconstruct_erasure(shares, rng)
print("\nerasure procedure")
print("  syndrome bits", out.bits)
print("  recovered", np.round(out.secret.amplitudes, 6), "fidelity", round(fidelity(out.density, secret.state()), 12))

# every set of three players works
worst = 1.0
for held in [(1, 2, 3), (1, 2, 4), (2, 4, 5), (1, 3, 5)]:
    s = ShareSet(held, word)
    worst = min(worst, fidelity(reconstruct_unitary(s).density, secret.state()))
    worst = min(worst, fidelity(reconstruct_erasure(s, rng).density, secret.state()))
print("\nworst fidelity over a few other qualified sets:", worst)
