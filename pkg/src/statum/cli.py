"""Command-line entry point: read a target document, write a circuit file.

Exit status: 0 on success (or verification pass), 1 on verification
failure, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .circuit import RY, CircuitError, Phase
from .formats import InputError, emit_circuit, parse_circuit, parse_input
from .sim import verify
from .state import StateError, TargetState, dense_from_symmetric
from .synth import MODES, synthesize_full

VERIFY_MAX_N = 20
VERIFY_MAX_QUBITS = 24

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="statum", description="Synthesize a state-preparation circuit.")
    p.add_argument("--input", type=Path, help="JSON target document")
    p.add_argument("--mode", choices=MODES, default="exact")
    p.add_argument("--bits", type=int, help="omega precision m (quantized and kickback modes)")
    p.add_argument("--epsilon", type=float, default=1e-6, help="verification infidelity budget")
    p.add_argument("--phases", choices=("on", "off"), help="emit the phase stage (default: on for dense and symmetric-mix inputs)")
    p.add_argument("--verify", action="store_true", help="simulate and check fidelity >= 1 - epsilon")
    p.add_argument("--out", type=Path, help="circuit file path (default: stdout)")
    p.add_argument("--seed", type=int, default=0, help="seed for --selftest")
    p.add_argument("--selftest", type=int, metavar="COUNT",
                   help="synthesize and verify COUNT random dense targets instead of reading --input")
    p.add_argument("--selftest-n", type=int, default=4, metavar="N", help="qubits per self-test target")
    return p


def _report_lines(report, circuit) -> list[str]:
    return [
        f"fidelity {report.fidelity:.12f}",
        f"status {'pass' if report.passed else 'fail'}",
        f"epsilon {report.epsilon:g}",
        f"ry_gates {circuit.count(RY)}",
        f"phase_gates {circuit.count(Phase)}",
        f"ancilla_residual {report.ancilla_residual:.3e}",
    ]


def _check_verify_size(n, bits, mode, parser):
    if n > VERIFY_MAX_N:
        parser.error(f"--verify refuses n={n} > {VERIFY_MAX_N}")
    total = n + (bits if mode == "kickback" else 0)
    if total > VERIFY_MAX_QUBITS:
        parser.error(f"--verify refuses {total} simulated qubits > {VERIFY_MAX_QUBITS}")


def _selftest(args, out) -> int:
    rng = np.random.default_rng(args.seed)
    n = args.selftest_n
    failures = 0
    for i in range(args.selftest):
        probs = rng.dirichlet(np.ones(1 << n))
        target = TargetState(n, np.sqrt(probs), rng.uniform(0, 2 * np.pi, 1 << n))
        circuit = parse_circuit(emit_circuit(synthesize_full(target, args.mode, args.bits)))
        report = verify(circuit, target, args.epsilon)
        failures += not report.passed
        print(f"case {i} fidelity {report.fidelity:.12f} {'pass' if report.passed else 'fail'}", file=out)
    print(f"selftest {args.selftest - failures}/{args.selftest} passed", file=out)
    return EXIT_FAIL if failures else EXIT_PASS


def main(argv=None, stdout=None) -> int:
    out = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.mode != "exact" and args.bits is None:
            parser.error(f"--mode {args.mode} requires --bits")
        if args.bits is not None and args.bits < 2:
            parser.error("--bits must be >= 2")
        if args.epsilon < 0:
            parser.error("--epsilon must be nonnegative")
        if args.selftest is not None:
            if args.selftest_n < 1:
                parser.error("--selftest-n must be >= 1")
            _check_verify_size(args.selftest_n, args.bits or 0, args.mode, parser)
            return _selftest(args, out)
        if args.input is None:
            parser.error("--input is required")
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        doc = parse_input(args.input.read_text())
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.verify:
        try:
            _check_verify_size(doc.n, args.bits or 0, args.mode, parser)
        except SystemExit as exc:
            return int(exc.code or 0)

    with_phases = args.phases == "on" if args.phases else doc.kind != "symmetric"
    try:
        circuit = synthesize_full(doc.target, args.mode, args.bits, with_phases=with_phases)
    except (ValueError, StateError, CircuitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    text = emit_circuit(circuit)
    if args.out is None:
        out.write(text)
    else:
        args.out.write_text(text)

    if not args.verify:
        return EXIT_PASS
    emitted = parse_circuit(text)
    target = doc.target if isinstance(doc.target, TargetState) else dense_from_symmetric(doc.target)
    report = verify(emitted, target, args.epsilon)
    for line in _report_lines(report, emitted):
        print(line, file=out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
