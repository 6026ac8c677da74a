"""Side-by-side resource comparison of the two reconstruction procedures."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .circuit import Metrics, metrics
from .code513 import FiveQubitCode, default_code
from .recon_erasure import build_erasure_circuit
from .recon_unitary import recovery_circuit

# reference resource counts for shares {3,4,5}, shown alongside ours
REFERENCE = {
    "unitary": {"cnot": 9, "x": 5, "h": 2, "measurements": 0, "depth": 15, "width": 3},
    "erasure": {"cnot": 23, "x": 1, "h": 28, "measurements": 4, "depth": 38, "width": 6},
}
ROWS = ("cnot", "x", "h", "measurements", "depth", "width")
VERDICTS = ("depth", "unitary_gates", "width", "measurements")


@dataclass(frozen=True)
class ComparisonReport:
    shares: tuple[int, ...]
    unitary: Metrics
    erasure: Metrics
    erasure_correction_only: Metrics
    conditional: str = "zero"

    @property
    def verdicts(self) -> dict[str, bool]:
        """True where the unitary procedure is strictly smaller."""
        u, e = self.unitary.as_dict(), self.erasure.as_dict()
        return {key: u[key] < e[key] for key in VERDICTS}

    def to_dict(self) -> dict:
        return {
            "shares": list(self.shares),
            "conditional_counting": self.conditional,
            "unitary": self.unitary.as_dict(),
            "erasure": self.erasure.as_dict(),
            "erasure_correction_only": self.erasure_correction_only.as_dict(),
            "reference": REFERENCE,
            "verdicts": self.verdicts,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        u, e, c = (m.as_dict() for m in (self.unitary, self.erasure, self.erasure_correction_only))
        ru, re = REFERENCE["unitary"], REFERENCE["erasure"]
        head = f"{'':<14}{'unitary':>9}{'erasure':>9}{'(corr.)':>9}   {'ref U':>6}{'ref E':>6}"
        lines = [f"shares {{{','.join(map(str, self.shares))}}}", head, "-" * len(head)]
        for row in ROWS:
            lines.append(f"{row:<14}{u[row]:>9}{e[row]:>9}{c[row]:>9}   {ru[row]:>6}{re[row]:>6}")
        ref_total_u = ru["cnot"] + ru["x"] + ru["h"]
        ref_total_e = re["cnot"] + re["x"] + re["h"]
        lines.append(
            f"{'unitary gates':<14}{u['unitary_gates']:>9}{e['unitary_gates']:>9}"
            f"{c['unitary_gates']:>9}   {ref_total_u:>6}{ref_total_e:>6}"
        )
        lines.append("")
        for key, ok in self.verdicts.items():
            lines.append(f"unitary < erasure in {key}: {'yes' if ok else 'NO'}")
        return "\n".join(lines)


def compare(
    shares=(3, 4, 5), conditional: str = "zero", code: FiveQubitCode | None = None
) -> ComparisonReport:
    """Metrics for both procedures on the same share set.

    The erasure column is the complete procedure (correction and decoding
    circuit); the correction-only circuit is reported alongside.
    """
    code = code or default_code()
    shares = tuple(sorted(int(p) for p in shares))
    erased = tuple(p for p in range(1, 6) if p not in shares)
    return ComparisonReport(
        shares,
        metrics(recovery_circuit(shares, code), conditional),
        metrics(build_erasure_circuit(erased, code, decode=True), conditional),
        metrics(build_erasure_circuit(erased, code), conditional),
        conditional,
    )
