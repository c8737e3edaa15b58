"""Compile a conditional-probability oracle into a state-preparation circuit.

The cascade rotates qubit k on every branch x_1..x_{k-1} so that it reads 0
with the oracle's conditional probability. An optional diagonal stage then
injects phases, and the kickback expansion replaces each rotation layer by an
ancilla-register network: write omega, H, controlled phases, H, V, unwrite.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import atan2, ceil, pi, remainder, sqrt

import numpy as np

from .circuit import RY, Circuit, CPhaseBit, GPhase, H, OracleWrite, Phase, V
from .oracles import ConditionalOracle, UnreachablePrefix, oracle_for
from .state import SymmetricSpec, TargetState, dense_from_symmetric, prefixes, validate_symmetric, validate_target

PRUNE_TOL = 1e-15
MODES = ("exact", "quantized", "kickback")


@dataclass(frozen=True)
class OmegaFraction:
    numerator: int
    bits: int

    def __post_init__(self):
        if self.bits < 2:
            raise ValueError(f"omega precision must be >= 2 bits, got {self.bits}")
        if not 0 <= self.numerator <= 1 << (self.bits - 2):
            raise ValueError(f"numerator {self.numerator} outside [0, 2^{self.bits - 2}]")

    @property
    def value(self) -> float:
        return self.numerator / (1 << self.bits)

    @property
    def theta(self) -> float:
        return 4 * pi * self.value


def omega_from_prob(p0: float) -> float:
    """omega in [0, 1/4] with cos^2(2 pi omega) = p0."""
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"probability {p0!r} outside [0, 1]")
    return _omega(p0, 1.0 - p0)


def _omega(p0: float, p1: float) -> float:
    # atan2 keeps full precision at both ends, where arccos(sqrt(p0)) does not
    return atan2(sqrt(p1), sqrt(p0)) / (2 * pi)


def quantize_omega(omega: float, bits: int) -> OmegaFraction:
    """Nearest multiple of 2^-bits, ties toward zero, clamped to [0, 1/4]."""
    if bits < 2:
        raise ValueError(f"omega precision must be >= 2 bits, got {bits}")
    num = ceil(omega * (1 << bits) - 0.5)
    num = min(max(num, 0), 1 << (bits - 2))
    return OmegaFraction(num, bits)


def _walk(oracle: ConditionalOracle, prune: bool):
    layers = []
    frontier = [""]
    for length in range(oracle.n):
        if not prune:
            frontier = prefixes(length)
        layer = []
        nxt = []
        for p in frontier:
            try:
                p0, p1 = oracle.cond_probs(p)
            except UnreachablePrefix:
                layer.append((p, None))
                continue
            layer.append((p, _omega(p0, p1)))
            if prune:
                if p0 > 0.0:
                    nxt.append(p + "0")
                if p1 > 0.0:
                    nxt.append(p + "1")
        layers.append(layer)
        frontier = nxt
    return layers


def _rotation_gates(oracle, mode, bits, prune):
    gates = []
    for k, layer in enumerate(_walk(oracle, prune), start=1):
        for p, omega in layer:
            if omega is None:
                theta = 0.0
            elif mode == "exact":
                theta = 4 * pi * omega
            else:
                theta = quantize_omega(omega, bits).theta
            if prune and abs(theta) < PRUNE_TOL:
                continue
            gates.append(RY(k, p, theta))
    return gates


def _check_mode(mode, bits):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode != "exact" and (bits is None or bits < 2):
        raise ValueError(f"mode {mode!r} needs bits >= 2, got {bits!r}")


def synthesize_rotations(oracle: ConditionalOracle, mode: str = "exact", bits: int | None = None,
                         prune: bool = False) -> Circuit:
    """The multiplexed RY cascade for ``oracle``.

    ``mode`` is "exact" or "quantized" (angles snapped to 4 pi k / 2^bits).
    Without pruning every prefix of every layer gets an RY, 2^n - 1 in all,
    unreachable prefixes carrying theta = 0.
    """
    if mode == "kickback":
        raise ValueError("use expand_kickback on a quantized cascade for kickback mode")
    _check_mode(mode, bits)
    return Circuit(oracle.n, 0, _rotation_gates(oracle, mode, bits, prune))


def decompose_diagonal(phases, prune: bool = False) -> tuple[list[Phase], GPhase]:
    """Prefix-controlled PHASE gates realizing |x> -> e^{i phases[x]} |x>.

    Peels one qubit at a time from the last: the phase gap between the two
    children of each prefix becomes a PHASE on that qubit, and the 0-child's
    phase moves up to the parent. What reaches the root is a global phase.
    """
    gamma = np.asarray(phases, dtype=float).copy()
    size = len(gamma)
    n = size.bit_length() - 1
    if n < 1 or size != 1 << n:
        raise ValueError(f"phase array length {size} is not 2^n with n >= 1")
    gates = []
    for k in range(n, 0, -1):
        pairs = gamma.reshape(-1, 2)
        diffs = pairs[:, 1] - pairs[:, 0]
        for i in range(len(diffs) - 1, -1, -1):
            phi = remainder(float(diffs[i]), 2 * pi)
            if prune and abs(phi) < PRUNE_TOL:
                continue
            ctl = format(i, f"0{k - 1}b") if k > 1 else ""
            gates.append(Phase(k, ctl, phi))
        gamma = pairs[:, 0].copy()
    return gates, GPhase(remainder(float(gamma[0]), 2 * pi))


def _kickback_layer(k: int, n: int, writes: list[OracleWrite], bits: int) -> list:
    gates = list(writes)
    # V-dagger makes the layer equal RY on both target inputs, not only on |0>
    gates.append(Phase(k, "", pi / 2))
    gates.append(H(k))
    for j in range(1, bits + 1):
        gates.append(CPhaseBit(n + j, k, 2 * pi / (1 << j)))
    gates.append(H(k))
    gates.append(V(k))
    gates.extend(OracleWrite(w.ctl, w.value, inverse=True) for w in reversed(writes))
    return gates


def expand_kickback(circuit: Circuit, oracle: ConditionalOracle, bits: int) -> Circuit:
    """Replace each RY layer with its ancilla phase-kickback network.

    Ancilla qubit n+j holds bit j of omega = 0.b_1 b_2 ... b_m, so the register
    reads the integer numerator. Omega values come from ``oracle`` for the
    prefixes the cascade rotates; missing prefixes get omega = 0, which makes
    the layer the identity on those branches.
    """
    if bits < 2:
        raise ValueError(f"kickback needs bits >= 2, got {bits}")
    if circuit.ancilla_bits:
        raise ValueError("circuit already has an ancilla register")
    n = circuit.n
    layers: dict[int, list[OracleWrite]] = {}
    order: list[int] = []
    for g in circuit.gates:
        if not isinstance(g, RY):
            raise ValueError(f"expand_kickback expects a pure rotation cascade, found {type(g).__name__}")
        if g.target not in layers:
            if order and g.target < order[-1]:
                raise ValueError("rotation layers are out of order")
            layers[g.target] = []
            order.append(g.target)
        try:
            p0, p1 = oracle.cond_probs(g.ctl)
        except UnreachablePrefix:
            continue
        w = quantize_omega(_omega(p0, p1), bits).numerator
        if w:
            layers[g.target].append(OracleWrite(g.ctl, w))
    gates = []
    for k in order:
        if layers[k]:
            gates.extend(_kickback_layer(k, n, layers[k], bits))
    return Circuit(n, bits, gates)


def target_phases(target) -> np.ndarray:
    if isinstance(target, TargetState):
        return target.phases
    return dense_from_symmetric(target).phases


def _validated(target):
    if isinstance(target, TargetState):
        return validate_target(target)
    if isinstance(target, SymmetricSpec):
        return validate_symmetric(target)
    raise TypeError(f"cannot synthesize from {type(target).__name__}")


def synthesize_full(target, mode: str = "exact", bits: int | None = None, with_phases: bool = True,
                    prune: bool = True) -> Circuit:
    """Circuit preparing ``target`` (a TargetState or SymmetricSpec) from |0...0>.

    Rotation cascade first, expanded into kickback form when ``mode`` is
    "kickback", then the diagonal phase stage if ``with_phases`` and the target
    carries nontrivial phases.
    """
    _check_mode(mode, bits)
    target = _validated(target)
    oracle = oracle_for(target)
    cascade_mode = "exact" if mode == "exact" else "quantized"
    circuit = synthesize_rotations(oracle, cascade_mode, bits, prune=prune)
    if mode == "kickback":
        circuit = expand_kickback(circuit, oracle, bits)
    if with_phases:
        phases = target_phases(target)
        if np.any(phases != 0.0):
            gates, gphase = decompose_diagonal(phases, prune=prune)
            tail = list(gates)
            if not (prune and abs(gphase.phi) < PRUNE_TOL):
                tail.append(gphase)
            circuit = Circuit(circuit.n, circuit.ancilla_bits, circuit.gates + tuple(tail))
    return circuit


__all__ = [
    "OmegaFraction",
    "omega_from_prob",
    "quantize_omega",
    "synthesize_rotations",
    "decompose_diagonal",
    "expand_kickback",
    "synthesize_full",
    "MODES",
]
