"""Dense statevector simulation and fidelity checks."""
from __future__ import annotations

from dataclasses import dataclass
from math import cos, sin, sqrt
from typing import NamedTuple

import numpy as np

from .circuit import RY, Circuit, CPhaseBit, GPhase, H, OracleWrite, Phase, V
from .state import TargetState, prefixes

ANCILLA_TOL = 1e-9
SUFFIX_TOL = 1e-10

_SQRT1_2 = 1 / sqrt(2)


class SimulationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StateVector:
    qubits: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (1 << self.qubits,):
            raise SimulationError(f"{self.qubits} qubits need {1 << self.qubits} amplitudes, got {amps.shape}")
        object.__setattr__(self, "amps", amps)

    @classmethod
    def zero(cls, qubits: int) -> "StateVector":
        return cls.basis(qubits, 0)

    @classmethod
    def basis(cls, qubits: int, index: int) -> "StateVector":
        amps = np.zeros(1 << qubits, dtype=complex)
        amps[index] = 1.0
        return cls(qubits, amps)

    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)


def _halves(amps, qubits, target, ctl=""):
    """Views of the target-bit-0 and target-bit-1 amplitudes on the branch
    whose leading bits equal ``ctl``."""
    lead = len(ctl)
    view = amps.reshape(1 << lead, 1 << (target - 1 - lead), 2, 1 << (qubits - target))
    sub = view[int(ctl, 2) if ctl else 0]
    return sub[:, 0, :], sub[:, 1, :]


def _check_qubit(q, total):
    if not 1 <= q <= total:
        raise SimulationError(f"qubit {q} out of range 1..{total}")


def _apply_inplace(amps: np.ndarray, q: int, n: int, g) -> None:
    if isinstance(g, RY):
        _check_qubit(g.target, n)
        a0, a1 = _halves(amps, q, g.target, g.ctl)
        c, s = cos(g.theta / 2), sin(g.theta / 2)
        new0 = c * a0 - s * a1
        a1 *= c
        a1 += s * a0
        a0[...] = new0
    elif isinstance(g, Phase):
        _check_qubit(g.target, n)
        _, a1 = _halves(amps, q, g.target, g.ctl)
        a1 *= np.exp(1j * g.phi)
    elif isinstance(g, H):
        _check_qubit(g.target, q)
        a0, a1 = _halves(amps, q, g.target)
        s = a0 + a1
        a1 *= -1
        a1 += a0
        a1 *= _SQRT1_2
        a0[...] = s * _SQRT1_2
    elif isinstance(g, V):
        _check_qubit(g.target, q)
        _, a1 = _halves(amps, q, g.target)
        a1 *= -1j
    elif isinstance(g, CPhaseBit):
        _check_qubit(g.control, q)
        _check_qubit(g.target, q)
        if g.control == g.target:
            raise SimulationError(f"{g} controls its own target")
        lo, hi = sorted((g.control, g.target))
        view = amps.reshape(1 << (lo - 1), 2, 1 << (hi - lo - 1), 2, 1 << (q - hi))
        if g.control < g.target:
            t0, t1 = view[:, 1, :, 0, :], view[:, 1, :, 1, :]
        else:
            t0, t1 = view[:, 0, :, 1, :], view[:, 1, :, 1, :]
        t0 *= np.exp(1j * g.phi)
        t1 *= np.exp(-1j * g.phi)
    elif isinstance(g, OracleWrite):
        m = q - n
        if not 0 <= g.value < (1 << m) or len(g.ctl) >= n:
            raise SimulationError(f"oracle write {g} does not fit n={n}, m={m}")
        if g.value:
            view = amps.reshape(1 << len(g.ctl), -1, 1 << m)
            sub = view[int(g.ctl, 2) if g.ctl else 0]
            perm = np.arange(1 << m) ^ g.value
            sub[...] = sub[:, perm]
    elif isinstance(g, GPhase):
        amps *= np.exp(1j * g.phi)
    else:
        raise SimulationError(f"unknown gate {g!r}")


def apply_gate(sv: StateVector, g, n: int | None = None) -> StateVector:
    """Return a new state with ``g`` applied. ``n`` is the data-qubit count
    (defaults to all qubits, i.e. no ancilla register)."""
    amps = sv.amps.copy()
    _apply_inplace(amps, sv.qubits, sv.qubits if n is None else n, g)
    return StateVector(sv.qubits, amps)


def run(circuit: Circuit, initial: StateVector | None = None) -> StateVector:
    q = circuit.qubits
    if initial is None:
        initial = StateVector.zero(q)
    if initial.qubits != q:
        raise SimulationError(f"circuit acts on {q} qubits, initial state has {initial.qubits}")
    amps = initial.amps.copy()
    for g in circuit.gates:
        _apply_inplace(amps, q, circuit.n, g)
    return StateVector(q, amps)


def fidelity(a: StateVector, b: StateVector) -> float:
    if a.qubits != b.qubits:
        raise SimulationError(f"dimension mismatch: {a.qubits} vs {b.qubits} qubits")
    f = abs(np.vdot(a.amps, b.amps)) ** 2
    return float(min(max(f, 0.0), 1.0))


class PrefixReadout(NamedTuple):
    amplitudes: dict
    suffix_residual: float

    @property
    def suffix_ok(self) -> bool:
        return self.suffix_residual <= SUFFIX_TOL


def prefix_amplitudes(sv: StateVector, j: int, n: int | None = None) -> PrefixReadout:
    """Square-root prefix probabilities on the leftmost ``j`` of ``n`` data qubits.

    Also reports the probability weight sitting outside the all-zero suffix;
    after j layers of a cascade this should vanish.
    """
    n = sv.qubits if n is None else n
    if not 0 <= j <= n:
        raise SimulationError(f"prefix length {j} outside 0..{n}")
    probs = (np.abs(sv.amps) ** 2).reshape(1 << j, -1)
    per_prefix = probs.sum(axis=1)
    residual = float(probs[:, 1:].sum())
    amps = {p: sqrt(float(per_prefix[i])) for i, p in enumerate(prefixes(j))}
    return PrefixReadout(amps, residual)


@dataclass(frozen=True)
class VerifyReport:
    fidelity: float
    passed: bool
    ancilla_residual: float
    epsilon: float


def data_register(sv: StateVector, n: int) -> tuple[np.ndarray, float]:
    """Data amplitudes on the ancilla-zero branch, and the weight elsewhere."""
    block = sv.amps.reshape(1 << n, -1)
    residual = float(np.sum(np.abs(block[:, 1:]) ** 2))
    return block[:, 0].copy(), residual


def verify(circuit: Circuit, target: TargetState, epsilon: float) -> VerifyReport:
    if circuit.n != target.n:
        raise SimulationError(f"circuit has {circuit.n} data qubits, target has {target.n}")
    final = run(circuit)
    data, residual = data_register(final, circuit.n)
    f = fidelity(StateVector(circuit.n, data), StateVector(target.n, target.amplitudes()))
    passed = f >= 1.0 - epsilon and residual <= ANCILLA_TOL
    return VerifyReport(f, passed, residual, epsilon)


__all__ = [
    "SimulationError",
    "StateVector",
    "apply_gate",
    "run",
    "fidelity",
    "prefix_amplitudes",
    "PrefixReadout",
    "data_register",
    "verify",
    "VerifyReport",
]
