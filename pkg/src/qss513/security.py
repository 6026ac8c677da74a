"""Access-structure verification for the ((3,5)) threshold scheme.

Subsets of at most two shares must be forbidden: their reduced state is the
same for every secret. Subsets of three or more must be qualified: both
reconstruction procedures recover the secret.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .code513 import N, FiveQubitCode, ShareSet, default_code, to_qubits
from .recon_erasure import reconstruct_erasure
from .recon_unitary import reconstruct_unitary
from .statevector import DensityMatrix, Secret, fidelity, partial_trace

FORBIDDEN_TOL = 1e-10
QUALIFIED_TOL = 1e-9


def trace_distance(rho: DensityMatrix | np.ndarray, sigma: DensityMatrix | np.ndarray) -> float:
    """Half the sum of absolute eigenvalues of ``rho - sigma``."""
    a = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    b = sigma.matrix if isinstance(sigma, DensityMatrix) else np.asarray(sigma)
    return float(0.5 * np.abs(np.linalg.eigvalsh(a - b)).sum())


def trial_secrets(num_random: int = 20, seed: int = 0) -> list[Secret]:
    """Seeded random secrets followed by the six axis states."""
    rng = np.random.default_rng(seed)
    return [Secret.random(rng) for _ in range(num_random)] + Secret.axis_states()


def verify_forbidden(positions, secrets, code: FiveQubitCode | None = None) -> float:
    """Largest pairwise trace distance between the marginals on ``positions``.

    The two basis secrets are always included.
    """
    code = code or default_code()
    positions = tuple(positions)
    if not 1 <= len(positions) <= 2:
        raise ValueError("forbidden-set checks take one or two positions")
    keep = to_qubits(positions)
    pool = [Secret(1, 0), Secret(0, 1), *secrets]
    marginals = [partial_trace(code.encode(s), keep).matrix for s in pool]
    return max(
        (trace_distance(a, b) for a, b in itertools.combinations(marginals, 2)), default=0.0
    )


def verify_qualified(positions, secrets, code: FiveQubitCode | None = None, seed: int = 0) -> float:
    """Smallest reconstruction fidelity over both procedures and all ``secrets``.

    For four or five positions the first three are used (a superset of a
    qualified set is qualified).
    """
    code = code or default_code()
    positions = tuple(sorted(positions))
    if len(positions) < 3:
        raise ValueError("qualified-set checks take at least three positions")
    held = positions[:3]
    rng = np.random.default_rng(seed)
    worst = 1.0
    for s in secrets:
        shares = ShareSet(held, code.encode(s))
        target = s.state()
        for result in (reconstruct_unitary(shares, code), reconstruct_erasure(shares, rng, code=code)):
            worst = min(worst, fidelity(result.density, target))
    return worst


@dataclass(frozen=True)
class AccessEntry:
    positions: tuple[int, ...]
    classification: str
    evidence: float  # max trace distance (forbidden) or min fidelity (qualified)
    passed: bool


@dataclass(frozen=True)
class AccessReport:
    entries: tuple[AccessEntry, ...]
    trials: int
    seed: int

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def violations(self) -> list[AccessEntry]:
        return [e for e in self.entries if not e.passed]

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "entries": [
                {
                    "positions": list(e.positions),
                    "classification": e.classification,
                    "evidence": e.evidence,
                    "passed": e.passed,
                }
                for e in self.entries
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        lines = [f"{'shares':<11} {'class':<10} {'evidence':>12}  result"]
        for e in self.entries:
            label = "{" + ",".join(map(str, e.positions)) + "}"
            measure = "max D" if e.classification == "forbidden" else "min F"
            lines.append(
                f"{label:<11} {e.classification:<10} {measure} {e.evidence:.3e}  "
                f"{'ok' if e.passed else 'FAIL'}"
            )
        return "\n".join(lines)


def access_report(
    trials: int = 20, seed: int = 0, code: FiveQubitCode | None = None
) -> AccessReport:
    """Classify every nonempty subset of the five shares.

    Any failure inside a check (for instance a logical basis that is not a
    stabilizer code) is recorded as a violation of that subset.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    code = code or default_code()
    secrets = trial_secrets(trials, seed)
    entries = []
    for size in range(1, N + 1):
        for subset in itertools.combinations(range(1, N + 1), size):
            if size <= 2:
                kind = "forbidden"
                try:
                    evidence = verify_forbidden(subset, secrets, code)
                except (RuntimeError, ValueError):
                    evidence = float("nan")
                ok = evidence < FORBIDDEN_TOL
            else:
                kind = "qualified"
                try:
                    evidence = verify_qualified(subset, secrets, code, seed)
                except (RuntimeError, ValueError):
                    evidence = float("nan")
                ok = evidence > 1 - QUALIFIED_TOL
            entries.append(AccessEntry(subset, kind, float(evidence), bool(ok)))
    return AccessReport(tuple(entries), trials, seed)
