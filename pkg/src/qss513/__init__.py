"""((3,5)) threshold quantum secret sharing on the five-qubit perfect code.

A one-qubit secret is encoded into five shares; any three reconstruct it,
any two learn nothing. Two reconstruction procedures are provided (erasure
correction and a per-subset recovery unitary) along with circuit metrics to
compare them.
"""

from .circuit import Circuit, Metrics, metrics, parse, run, serialize
from .code513 import FiveQubitCode, LogicalBasis, ShareSet, default_code, encode
from .compare import ComparisonReport, compare
from .pauli import PauliString
from .recon_erasure import build_erasure_circuit, reconstruct_erasure
from .recon_unitary import build_recovery_unitary, reconstruct_unitary, recovery_circuit
from .security import access_report
from .statevector import DensityMatrix, Secret, StateVector, fidelity, partial_trace

__all__ = [
    "Circuit",
    "ComparisonReport",
    "DensityMatrix",
    "FiveQubitCode",
    "LogicalBasis",
    "Metrics",
    "PauliString",
    "Secret",
    "ShareSet",
    "StateVector",
    "access_report",
    "build_erasure_circuit",
    "build_recovery_unitary",
    "compare",
    "default_code",
    "encode",
    "fidelity",
    "metrics",
    "parse",
    "partial_trace",
    "reconstruct_erasure",
    "reconstruct_unitary",
    "recovery_circuit",
    "run",
    "serialize",
]
