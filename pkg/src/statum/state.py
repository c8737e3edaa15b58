"""Target-state descriptions and prefix marginals.

Bit convention used throughout the package: qubit 1 (the first qubit the
cascade rotates) is the most significant bit of a basis-state index, so the
prefix ``"01"`` names all indices whose top two bits are 0 then 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, sqrt

import numpy as np

NORM_TOL = 1e-9
RENORM_LIMIT = 1e-6


class StateError(ValueError):
    """Raised for malformed or unnormalizable state descriptions."""


def _check_prefix(bits: str) -> str:
    if any(b not in "01" for b in bits):
        raise ValueError(f"prefix must be a bit string, got {bits!r}")
    return bits


def prefix_index(bits: str) -> int:
    return int(bits, 2) if bits else 0


def prefixes(length: int) -> list[str]:
    """All bit strings of ``length`` in ascending binary order."""
    if length == 0:
        return [""]
    return [format(i, f"0{length}b") for i in range(1 << length)]


def hamming_weight(bits: str) -> int:
    return _check_prefix(bits).count("1")


@dataclass(frozen=True, eq=False)
class TargetState:
    """Pure state sum_x exp(i*phases[x]) * magnitudes[x] |x>."""

    n: int
    magnitudes: np.ndarray
    phases: np.ndarray = None
    renormalized: bool = False

    def __post_init__(self):
        mags = np.array(self.magnitudes, dtype=float)
        phases = np.zeros_like(mags) if self.phases is None else np.array(self.phases, dtype=float)
        mags.setflags(write=False)
        phases.setflags(write=False)
        object.__setattr__(self, "magnitudes", mags)
        object.__setattr__(self, "phases", phases)

    @classmethod
    def from_amplitudes(cls, amps) -> "TargetState":
        amps = np.asarray(amps, dtype=complex)
        n = _qubits_for_length(len(amps))
        return cls(n, np.abs(amps), np.angle(amps))

    @property
    def has_phases(self) -> bool:
        return bool(np.any(self.phases[self.magnitudes > 0] != 0.0))

    def amplitudes(self) -> np.ndarray:
        return self.magnitudes * np.exp(1j * self.phases)


def _qubits_for_length(length: int) -> int:
    n = length.bit_length() - 1
    if n < 1 or length != 1 << n:
        raise StateError(f"amplitude array length {length} is not 2^n with n >= 1")
    return n


def validate_target(state: TargetState) -> TargetState:
    """Check a target state, renormalizing tiny norm drift.

    A squared norm within 1e-9 of one is accepted as is. Drift below 1e-6 is
    divided out and the returned state has ``renormalized=True``; anything
    larger is rejected.
    """
    n = state.n
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise StateError(f"n must be an integer >= 1, got {n!r}")
    size = 1 << n
    if state.magnitudes.shape != (size,):
        raise StateError(f"magnitudes must have length 2^{n} = {size}, got {state.magnitudes.shape}")
    if state.phases.shape != (size,):
        raise StateError(f"phases must have length 2^{n} = {size}, got {state.phases.shape}")
    if not (np.all(np.isfinite(state.magnitudes)) and np.all(np.isfinite(state.phases))):
        raise StateError("magnitudes and phases must be finite")
    if np.any(state.magnitudes < 0):
        bad = int(np.argmax(state.magnitudes < 0))
        raise StateError(f"negative magnitude {state.magnitudes[bad]} at index {bad}")

    norm_sq = float(np.sum(state.magnitudes**2))
    drift = abs(norm_sq - 1.0)
    if drift <= NORM_TOL:
        return state
    if drift < RENORM_LIMIT:
        return TargetState(n, state.magnitudes / sqrt(norm_sq), state.phases, renormalized=True)
    raise StateError(f"state is not normalized: sum of squared magnitudes is {norm_sq!r}")


@dataclass(frozen=True, eq=False)
class SymmetricSpec:
    """Symmetric state sum_j betas[j] |S_j> over n qubits."""

    n: int
    betas: np.ndarray
    renormalized: bool = False

    def __post_init__(self):
        betas = np.array(self.betas, dtype=complex)
        betas.setflags(write=False)
        object.__setattr__(self, "betas", betas)

    @classmethod
    def basis(cls, n: int, r: int) -> "SymmetricSpec":
        """The Dicke state |S_r>."""
        if not 0 <= r <= n:
            raise StateError(f"weight r={r} outside 0..{n}")
        betas = np.zeros(n + 1, dtype=complex)
        betas[r] = 1.0
        return cls(n, betas)

    @property
    def weights(self) -> np.ndarray:
        return np.abs(self.betas) ** 2

    def one_hot_weight(self) -> int | None:
        """r if this spec is exactly |S_r> with beta_r = 1, else None."""
        nz = np.flatnonzero(self.betas)
        if len(nz) == 1 and self.betas[nz[0]] == 1.0:
            return int(nz[0])
        return None


def validate_symmetric(spec: SymmetricSpec) -> SymmetricSpec:
    n = spec.n
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise StateError(f"n must be an integer >= 1, got {n!r}")
    if spec.betas.shape != (n + 1,):
        raise StateError(f"betas must have length n+1 = {n + 1}, got {spec.betas.shape}")
    if not np.all(np.isfinite(spec.betas)):
        raise StateError("betas must be finite")
    norm_sq = float(np.sum(spec.weights))
    drift = abs(norm_sq - 1.0)
    if drift <= NORM_TOL:
        return spec
    if drift < RENORM_LIMIT:
        return SymmetricSpec(n, spec.betas / sqrt(norm_sq), renormalized=True)
    raise StateError(f"symmetric spec is not normalized: sum of |beta|^2 is {norm_sq!r}")


def index_weights(n: int) -> np.ndarray:
    """Hamming weight of every index 0..2^n-1."""
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)


def dense_from_symmetric(spec: SymmetricSpec) -> TargetState:
    n = spec.n
    scale = np.array([1.0 / sqrt(comb(n, j)) for j in range(n + 1)])
    amps = (spec.betas * scale)[index_weights(n)]
    return TargetState(n, np.abs(amps), np.angle(amps))


class MarginalTree:
    """Prefix marginals of a state, built bottom-up from the leaves.

    ``probs[j][i]`` is the probability of reading the length-``j`` prefix with
    integer value ``i`` on the leftmost ``j`` qubits. Leaf amplitudes are the
    state's own magnitudes, not square roots of their squares.
    """

    def __init__(self, state: TargetState):
        self.n = state.n
        level = state.magnitudes**2
        probs = [level]
        for _ in range(self.n):
            level = level.reshape(-1, 2).sum(axis=1)
            probs.append(level)
        probs.reverse()
        for p in probs:
            p.setflags(write=False)
        self.probs = probs
        self._leaves = state.magnitudes

    def prob(self, prefix: str) -> float:
        return float(self.probs[len(prefix)][prefix_index(prefix)])

    def alpha(self, prefix: str) -> float:
        if len(prefix) == self.n:
            return float(self._leaves[prefix_index(prefix)])
        return sqrt(self.prob(prefix))

    def level(self, j: int) -> dict[str, float]:
        return {p: self.alpha(p) for p in prefixes(j)}


def marginal_tree(state: TargetState) -> MarginalTree:
    return MarginalTree(state)


__all__ = [
    "StateError",
    "TargetState",
    "SymmetricSpec",
    "MarginalTree",
    "validate_target",
    "validate_symmetric",
    "marginal_tree",
    "hamming_weight",
    "dense_from_symmetric",
    "prefixes",
    "prefix_index",
    "index_weights",
]
