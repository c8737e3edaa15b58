"""Input documents (JSON) and the text circuit format.

Circuit file layout::

    # statum-circuit v1
    # qubit 1 is the most significant index bit; ancilla qubits follow the data qubits
    N 2
    ANC 0
    RY t=1 ctl=- theta=1.570796326795
    RY t=2 ctl=0 theta=3.141592653590

Angles carry 12 digits after the decimal point. ``ctl=-`` is the empty
control pattern. Mnemonics: RY, PHASE, H, V, CPB, OWR, OWRI, GPHASE.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .circuit import RY, Circuit, CircuitError, CPhaseBit, GPhase, H, OracleWrite, Phase, V
from .state import StateError, SymmetricSpec, TargetState, validate_symmetric, validate_target

MAGIC = "# statum-circuit v1"
ORDER_NOTE = "# qubit 1 is the most significant index bit; ancilla qubits follow the data qubits"
KINDS = ("dense", "symmetric", "symmetric-mix")


class InputError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class InputDocument:
    kind: str
    n: int
    target: TargetState | SymmetricSpec
    r: int | None = None


def _field(doc, name, kind):
    if name not in doc:
        raise InputError(f"missing field {name!r} for kind {kind!r}")
    return doc[name]


def _pairs(value, name, length):
    if not isinstance(value, list):
        raise InputError(f"field {name!r} must be a list of [re, im] pairs")
    if len(value) != length:
        raise InputError(f"field {name!r} must have {length} entries, got {len(value)}")
    out = np.empty(length, dtype=complex)
    for i, pair in enumerate(value):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)):
            raise InputError(f"field {name!r} entry {i} must be a [re, im] pair of numbers, got {pair!r}")
        out[i] = complex(pair[0], pair[1])
    return out


def parse_input(text: str) -> InputDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise InputError(f"field 'kind' must be one of {KINDS}, got {kind!r}")
    n = _field(doc, "n", kind)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"field 'n' must be an integer >= 1, got {n!r}")

    try:
        if kind == "dense":
            if n > 30:
                raise InputError(f"field 'n' too large for a dense document: {n}")
            amps = _pairs(_field(doc, "amplitudes", kind), "amplitudes", 1 << n)
            target = validate_target(TargetState(n, np.abs(amps), np.angle(amps)))
            return InputDocument(kind, n, target)
        if kind == "symmetric":
            r = _field(doc, "r", kind)
            if not isinstance(r, int) or isinstance(r, bool) or not 0 <= r <= n:
                raise InputError(f"field 'r' must be an integer in 0..{n}, got {r!r}")
            return InputDocument(kind, n, SymmetricSpec.basis(n, r), r=r)
        betas = _pairs(_field(doc, "betas", kind), "betas", n + 1)
        return InputDocument(kind, n, validate_symmetric(SymmetricSpec(n, betas)))
    except StateError as exc:
        field = "amplitudes" if kind == "dense" else "betas"
        raise InputError(f"field {field!r}: {exc}") from None


def format_angle(x: float) -> str:
    s = f"{x:.12f}"
    return "0.000000000000" if s == "-0.000000000000" else s


def _ctl(bits: str) -> str:
    return bits or "-"


def _gate_line(g) -> str:
    if isinstance(g, RY):
        return f"RY t={g.target} ctl={_ctl(g.ctl)} theta={format_angle(g.theta)}"
    if isinstance(g, Phase):
        return f"PHASE t={g.target} ctl={_ctl(g.ctl)} phi={format_angle(g.phi)}"
    if isinstance(g, H):
        return f"H t={g.target}"
    if isinstance(g, V):
        return f"V t={g.target}"
    if isinstance(g, CPhaseBit):
        return f"CPB c={g.control} t={g.target} phi={format_angle(g.phi)}"
    if isinstance(g, OracleWrite):
        op = "OWRI" if g.inverse else "OWR"
        return f"{op} ctl={_ctl(g.ctl)} w={g.value}"
    if isinstance(g, GPhase):
        return f"GPHASE phi={format_angle(g.phi)}"
    raise CircuitError(f"cannot serialize {g!r}")


def emit_circuit(c: Circuit) -> str:
    lines = [MAGIC, ORDER_NOTE, f"N {c.n}", f"ANC {c.ancilla_bits}"]
    lines.extend(_gate_line(g) for g in c.gates)
    return "\n".join(lines) + "\n"


_FIELDS = {
    "RY": ("t", "ctl", "theta"),
    "PHASE": ("t", "ctl", "phi"),
    "H": ("t",),
    "V": ("t",),
    "CPB": ("c", "t", "phi"),
    "OWR": ("ctl", "w"),
    "OWRI": ("ctl", "w"),
    "GPHASE": ("phi",),
}


def _parse_gate(line: str, lineno: int):
    op, *rest = line.split()
    if op not in _FIELDS:
        raise CircuitError(f"line {lineno}: unknown mnemonic {op!r}")
    kv = {}
    for tok in rest:
        key, sep, val = tok.partition("=")
        if not sep:
            raise CircuitError(f"line {lineno}: malformed field {tok!r}")
        kv[key] = val
    if tuple(kv) != _FIELDS[op]:
        raise CircuitError(f"line {lineno}: {op} expects fields {_FIELDS[op]}, got {tuple(kv)}")
    try:
        ctl = "" if kv.get("ctl") == "-" else kv.get("ctl")
        if op == "RY":
            return RY(int(kv["t"]), ctl, float(kv["theta"]))
        if op == "PHASE":
            return Phase(int(kv["t"]), ctl, float(kv["phi"]))
        if op == "H":
            return H(int(kv["t"]))
        if op == "V":
            return V(int(kv["t"]))
        if op == "CPB":
            return CPhaseBit(int(kv["c"]), int(kv["t"]), float(kv["phi"]))
        if op in ("OWR", "OWRI"):
            return OracleWrite(ctl, int(kv["w"]), inverse=op == "OWRI")
        return GPhase(float(kv["phi"]))
    except ValueError as exc:
        raise CircuitError(f"line {lineno}: {exc}") from None


def parse_circuit(text: str) -> Circuit:
    lines = text.splitlines()
    if not lines or lines[0] != MAGIC:
        raise CircuitError(f"missing header line {MAGIC!r}")
    body = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip() and not ln.startswith("#")]
    if len(body) < 2 or not body[0][1].startswith("N ") or not body[1][1].startswith("ANC "):
        raise CircuitError("expected 'N <qubits>' and 'ANC <bits>' header lines")
    try:
        n = int(body[0][1].split()[1])
        anc = int(body[1][1].split()[1])
    except (IndexError, ValueError):
        raise CircuitError("malformed N/ANC header") from None
    gates = [_parse_gate(ln, i) for i, ln in body[2:]]
    return Circuit(n, anc, gates).validate()


__all__ = [
    "InputError",
    "InputDocument",
    "parse_input",
    "emit_circuit",
    "parse_circuit",
    "format_angle",
]
