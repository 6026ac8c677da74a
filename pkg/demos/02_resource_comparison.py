"""
How big are the two reconstruction circuits?
============================================

Build both circuits for shares {3,4,5} and count gates, measurements, width
and depth. CZ gates are counted as one CNOT and two H.
"""

from qss513 import build_erasure_circuit, compare, metrics, recovery_circuit
from qss513.circuit import layers

report = compare((3, 4, 5))
print(report.to_table())

# the unitary circuit is short enough to print layer by layer
u = recovery_circuit((3, 4, 5))
for k, layer in enumerate(layers(u)):
    print(f"layer {k}:", ", ".join(f"{u.ops[i].name} {list(u.ops[i].wires)}" for i in layer))

# correction alone, then with the decoder appended
for decode in (False, True):
    m = metrics(build_erasure_circuit((1, 2), decode=decode))
    print(f"\nerasure circuit, decode={decode}:", m.as_dict())

# counting the Apply-Pauli block at its worst case instead of zero
print("\nworst-case conditional counting:")
print(compare((3, 4, 5), conditional="worst").erasure.as_dict())
