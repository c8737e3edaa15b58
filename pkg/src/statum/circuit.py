"""Gate vocabulary and the Circuit container.

Qubits are numbered from 1. Data qubits are 1..n with qubit 1 the most
significant index bit; the m ancilla qubits n+1..n+m follow and occupy the
least significant bits. A control pattern ``ctl`` on a gate is a bit string
that must match qubits 1..len(ctl).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True)
class RY:
    target: int
    ctl: str
    theta: float


@dataclass(frozen=True)
class Phase:
    """diag(1, e^{i phi}) on ``target`` where the controls match."""

    target: int
    ctl: str
    phi: float


@dataclass(frozen=True)
class H:
    target: int


@dataclass(frozen=True)
class V:
    """diag(1, -i)."""

    target: int


@dataclass(frozen=True)
class CPhaseBit:
    """diag(e^{i phi}, e^{-i phi}) on ``target`` when ``control`` is 1."""

    control: int
    target: int
    phi: float


@dataclass(frozen=True)
class OracleWrite:
    """XOR ``value`` into the ancilla register where data qubits match ``ctl``.

    XOR makes the gate its own inverse; ``inverse`` only records which side of
    an uncompute pair this instance sits on.
    """

    ctl: str
    value: int
    inverse: bool = False


@dataclass(frozen=True)
class GPhase:
    phi: float


Gate = Union[RY, Phase, H, V, CPhaseBit, OracleWrite, GPhase]


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Circuit:
    n: int
    ancilla_bits: int = 0
    gates: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    @property
    def qubits(self) -> int:
        return self.n + self.ancilla_bits

    def __add__(self, other: "Circuit") -> "Circuit":
        if (self.n, self.ancilla_bits) != (other.n, other.ancilla_bits):
            raise CircuitError("cannot concatenate circuits over different registers")
        return Circuit(self.n, self.ancilla_bits, self.gates + other.gates)

    def count(self, kind) -> int:
        return sum(isinstance(g, kind) for g in self.gates)

    def validate(self) -> "Circuit":
        n, total = self.n, self.qubits
        if n < 1 or self.ancilla_bits < 0:
            raise CircuitError(f"bad register sizes n={n} ancilla={self.ancilla_bits}")
        for i, g in enumerate(self.gates):
            _check_gate(g, n, total, self.ancilla_bits, i)
        return self


def _check_ctl(ctl: str, limit: int, where: str):
    if any(b not in "01" for b in ctl):
        raise CircuitError(f"{where}: control pattern {ctl!r} is not a bit string")
    if len(ctl) > limit:
        raise CircuitError(f"{where}: control pattern {ctl!r} longer than {limit}")


def _check_gate(g, n, total, anc, i):
    where = f"gate {i} ({type(g).__name__})"
    if isinstance(g, RY):
        if not 1 <= g.target <= n:
            raise CircuitError(f"{where}: target {g.target} outside data qubits 1..{n}")
        _check_ctl(g.ctl, g.target - 1, where)
        if len(g.ctl) != g.target - 1:
            raise CircuitError(f"{where}: RY on qubit {g.target} needs a {g.target - 1}-bit pattern")
    elif isinstance(g, Phase):
        if not 1 <= g.target <= n:
            raise CircuitError(f"{where}: target {g.target} outside data qubits 1..{n}")
        _check_ctl(g.ctl, g.target - 1, where)
    elif isinstance(g, (H, V)):
        if not 1 <= g.target <= total:
            raise CircuitError(f"{where}: target {g.target} outside 1..{total}")
    elif isinstance(g, CPhaseBit):
        for q in (g.control, g.target):
            if not 1 <= q <= total:
                raise CircuitError(f"{where}: qubit {q} outside 1..{total}")
        if g.control == g.target:
            raise CircuitError(f"{where}: control equals target")
    elif isinstance(g, OracleWrite):
        if anc == 0:
            raise CircuitError(f"{where}: oracle write needs an ancilla register")
        _check_ctl(g.ctl, n - 1, where)
        if not 0 <= g.value < (1 << anc):
            raise CircuitError(f"{where}: value {g.value} does not fit {anc} ancilla bits")
    elif not isinstance(g, GPhase):
        raise CircuitError(f"{where}: unknown gate")
