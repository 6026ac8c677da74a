"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .circuit import serialize
from .code513 import N, FiveQubitCode, LogicalBasis, ShareSet, default_code
from .compare import compare
from .recon_erasure import build_erasure_circuit, reconstruct_erasure
from .recon_unitary import build_recovery_unitary, reconstruct_unitary, recovery_circuit
from .security import access_report
from .statevector import QuantumStateError, Secret, StateVector, canonical_phase, fidelity

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3
INPUT_NORM_TOL = 1e-9
FIDELITY_TOL = 1e-9


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def parse_complex(text: str) -> complex:
    """``"re,im"`` or a bare real number."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise CliError(EXIT_INPUT, f"cannot parse amplitude {text!r}; expected re,im")


def parse_secret(alpha: str, beta: str) -> Secret:
    a, b = parse_complex(alpha), parse_complex(beta)
    norm = abs(a) ** 2 + abs(b) ** 2
    if abs(norm - 1) > INPUT_NORM_TOL:
        raise CliError(EXIT_INPUT, f"secret is not normalized: |alpha|^2 + |beta|^2 = {norm:.12g}")
    scale = np.sqrt(norm)
    return Secret(a / scale, b / scale)


def parse_shares(text: str, count: int | None = 3) -> tuple[int, ...]:
    try:
        shares = tuple(sorted(int(p) for p in text.split(",")))
    except ValueError:
        raise CliError(EXIT_INPUT, f"cannot parse share list {text!r}") from None
    if len(set(shares)) != len(shares) or not all(1 <= p <= N for p in shares):
        raise CliError(EXIT_INPUT, f"shares must be distinct positions in 1..{N}")
    if count is not None and len(shares) != count:
        raise CliError(EXIT_INPUT, f"exactly {count} shares are required, got {len(shares)}")
    return shares


def read_text(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc.strerror}") from None


def write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc.strerror}") from None


def load_state(path: str) -> StateVector:
    text = read_text(path)
    try:
        state = StateVector.from_json(text)
    except (QuantumStateError, ValueError, KeyError, TypeError) as exc:
        raise CliError(EXIT_IO, f"corrupted state file {path}: {exc}") from None
    if state.num_qubits != N:
        raise CliError(EXIT_IO, f"{path} holds {state.num_qubits} qubits, expected {N}")
    return state


def load_code(path: str | None) -> FiveQubitCode:
    if path is None:
        return default_code()
    text = read_text(path)
    try:
        return FiveQubitCode(LogicalBasis.from_dict(json.loads(text)))
    except (QuantumStateError, ValueError) as exc:
        raise CliError(EXIT_IO, f"corrupted basis file {path}: {exc}") from None


def _num(x: float) -> float:
    # drop float noise and negative zero so printed output is stable
    return round(float(x), 12) + 0.0


def _pair(z: complex) -> list[float]:
    return [_num(z.real), _num(z.imag)]


def _fmt(z: complex) -> str:
    re, im = _num(z.real), _num(z.imag)
    return f"{re:.10f}{'+' if im >= 0 else '-'}{abs(im):.10f}i"


def cmd_encode(args) -> int:
    secret = parse_secret(args.alpha, args.beta)
    code = load_code(args.basis)
    write_text(args.out, code.encode(secret).to_json() + "\n")
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    shares = parse_shares(args.shares)
    codeword = load_state(args.input)
    code = load_code(args.basis)
    held = ShareSet(shares, codeword)
    bits = None
    if args.method == "unitary":
        result = reconstruct_unitary(held, code)
    else:
        result = reconstruct_erasure(held, np.random.default_rng(args.seed), code=code)
        bits = list(result.bits)
    secret = canonical_phase(result.secret).amplitudes
    reference = None
    if args.ref_alpha is not None or args.ref_beta is not None:
        if args.ref_alpha is None or args.ref_beta is None:
            raise CliError(EXIT_INPUT, "--ref-alpha and --ref-beta go together")
        reference = parse_secret(args.ref_alpha, args.ref_beta)
    fid = None if reference is None else fidelity(result.density, reference.state())

    report = {
        "method": args.method,
        "shares": list(shares),
        "alpha": _pair(secret[0]),
        "beta": _pair(secret[1]),
        "purity": _num(result.density.purity()),
        "fidelity": None if fid is None else _num(fid),
    }
    if bits is not None:
        report["seed"] = args.seed
        report["syndrome_bits"] = bits
    if args.json:
        text = json.dumps(report, indent=2) + "\n"
    else:
        lines = [
            f"method:   {args.method}",
            f"shares:   {','.join(map(str, shares))}",
            f"alpha:    {_fmt(secret[0])}",
            f"beta:     {_fmt(secret[1])}",
            f"purity:   {report['purity']:.10f}",
        ]
        if bits is not None:
            lines.append(f"syndrome: {''.join(map(str, bits))} (seed {args.seed})")
        lines.append("fidelity: " + ("n/a" if fid is None else f"{report['fidelity']:.10f}"))
        text = "\n".join(lines) + "\n"
    write_text(args.out, text)
    if fid is not None and fid < 1 - FIDELITY_TOL:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_compare(args) -> int:
    report = compare(parse_shares(args.shares), args.conditional)
    write_text(args.out, (report.to_json() if args.json else report.to_table()) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise CliError(EXIT_INPUT, "--trials must be at least 1")
    report = access_report(args.trials, args.seed, load_code(args.basis))
    write_text(args.out, (report.to_json() if args.json else report.to_table()) + "\n")
    if not report.passed:
        print(f"access structure violated on {len(report.violations())} subsets", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_export_circuit(args) -> int:
    shares = parse_shares(args.shares)
    code = load_code(args.basis)
    if args.matrix:
        if args.method != "unitary":
            raise CliError(EXIT_INPUT, "--matrix is only available for the unitary method")
        recovery = build_recovery_unitary(shares, code.basis)
        write_text(args.out, json.dumps(recovery.to_dict(), indent=2) + "\n")
        return EXIT_OK
    if args.method == "unitary":
        circuit = recovery_circuit(shares, code)
    else:
        erased = tuple(p for p in range(1, N + 1) if p not in shares)
        circuit = build_erasure_circuit(erased, code, decode=not args.no_decode)
    write_text(args.out, serialize(circuit))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qss513", description="((3,5)) quantum secret sharing on the five-qubit code"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, shares=None):
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--basis", help="logical-basis JSON overriding the built-in codewords")
        if shares:
            p.add_argument("--shares", default=shares, help="comma-separated positions 1..5")

    p = sub.add_parser("encode", help="encode a secret into a 5-qubit state file")
    p.add_argument("--alpha", required=True, help="amplitude of |0> as re,im")
    p.add_argument("--beta", required=True, help="amplitude of |1> as re,im")
    common(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("reconstruct", help="recover the secret from three shares")
    p.add_argument("--method", choices=("erasure", "unitary"), required=True)
    p.add_argument("--in", dest="input", required=True, help="codeword state file")
    p.add_argument("--seed", type=int, default=0, help="measurement RNG seed (erasure)")
    p.add_argument("--ref-alpha", help="reference secret for the fidelity check")
    p.add_argument("--ref-beta")
    p.add_argument("--json", action="store_true")
    common(p, shares="3,4,5")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("compare", help="resource comparison of the two procedures")
    p.add_argument("--json", action="store_true")
    p.add_argument("--conditional", choices=("zero", "worst"), default="zero")
    p.add_argument("--out")
    p.add_argument("--shares", default="3,4,5")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="sweep the access structure")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-circuit", help="write a reconstruction circuit file")
    p.add_argument("--method", choices=("erasure", "unitary"), required=True)
    p.add_argument("--no-decode", action="store_true", help="erasure: omit the decoder circuit")
    p.add_argument("--matrix", action="store_true", help="unitary: write the 8x8 matrix instead")
    common(p, shares="3,4,5")
    p.set_defaults(func=cmd_export_circuit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (RuntimeError, QuantumStateError) as exc:
        # e.g. a basis override that is not a valid code
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
