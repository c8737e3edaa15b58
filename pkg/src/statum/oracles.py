"""Conditional-probability oracles.

Every oracle answers one question: given the bits already fixed on qubits
1..k-1, what is the probability that qubit k reads 0? Three sources are
provided: brute-force marginals of a dense state, the closed form for a
Dicke state |S_r>, and a binomial-weighted sum for mixtures of Dicke states.
"""
from __future__ import annotations

from math import comb

import numpy as np

from .state import MarginalTree, SymmetricSpec, TargetState, hamming_weight, marginal_tree, prefix_index

_CLAMP = 1e-15


class UnreachablePrefix(Exception):
    """The prefix has zero marginal probability, so its conditional is 0/0."""

    def __init__(self, prefix: str):
        super().__init__(f"prefix {prefix!r} has zero marginal probability")
        self.prefix = prefix


def _clamp(p: float) -> float:
    if p < 0.0:
        if p < -_CLAMP:
            raise ArithmeticError(f"probability {p!r} below 0")
        return 0.0
    if p > 1.0:
        if p > 1.0 + _CLAMP:
            raise ArithmeticError(f"probability {p!r} above 1")
        return 1.0
    return p


class ConditionalOracle:
    """Base class. Subclasses implement ``cond_probs``."""

    n: int

    def cond_probs(self, prefix: str) -> tuple[float, float]:
        """(P(next=0 | prefix), P(next=1 | prefix)); raises UnreachablePrefix."""
        raise NotImplementedError

    def _check(self, prefix: str):
        if len(prefix) >= self.n:
            raise ValueError(f"prefix length {len(prefix)} must be < n={self.n}")
        if any(b not in "01" for b in prefix):
            raise ValueError(f"prefix must be a bit string, got {prefix!r}")

    def cond_prob_zero(self, prefix: str) -> float:
        return self.cond_probs(prefix)[0]

    def cond_prob_one(self, prefix: str) -> float:
        return self.cond_probs(prefix)[1]

    def reachable(self, prefix: str) -> bool:
        try:
            self.cond_probs(prefix)
        except UnreachablePrefix:
            return False
        return True


class DenseOracle(ConditionalOracle):
    def __init__(self, tree: MarginalTree):
        self.tree = tree
        self.n = tree.n

    @classmethod
    def from_state(cls, state: TargetState) -> "DenseOracle":
        return cls(marginal_tree(state))

    def cond_probs(self, prefix):
        self._check(prefix)
        children = self.tree.probs[len(prefix) + 1]
        i = prefix_index(prefix) << 1
        p0, p1 = float(children[i]), float(children[i + 1])
        total = p0 + p1
        if total == 0.0:
            raise UnreachablePrefix(prefix)
        return _clamp(p0 / total), _clamp(p1 / total)


def symmetric_cond_prob_one(n: int, r: int, prefix: str) -> float:
    """P(qubit k = 1 | prefix) for |S_r>, with k = len(prefix) + 1.

    With k-1 bits fixed, n-k+1 positions remain and r-h ones are still owed,
    so the answer is (r-h)/(n-k+1). A prefix that already holds more than r
    ones yields 0; one that cannot fit the remaining ones is unreachable.
    """
    if not 0 <= r <= n:
        raise ValueError(f"weight r={r} outside 0..{n}")
    if len(prefix) >= n:
        raise ValueError(f"prefix length {len(prefix)} must be < n={n}")
    remaining = n - len(prefix)
    owed = r - hamming_weight(prefix)
    if owed > remaining:
        raise UnreachablePrefix(prefix)
    if owed <= 0:
        return 0.0
    return owed / remaining


class SymmetricBasisOracle(ConditionalOracle):
    """Closed-form oracle for the Dicke state |S_r>."""

    def __init__(self, n: int, r: int):
        if not 0 <= r <= n:
            raise ValueError(f"weight r={r} outside 0..{n}")
        self.n = n
        self.r = r

    def cond_probs(self, prefix):
        self._check(prefix)
        remaining = self.n - len(prefix)
        owed = self.r - hamming_weight(prefix)
        if owed < 0 or owed > remaining:
            raise UnreachablePrefix(prefix)
        return (remaining - owed) / remaining, owed / remaining


def symmetric_mix_marginal_sq(spec: SymmetricSpec, prefix: str) -> float:
    """Probability of reading ``prefix`` on the leftmost qubits of sum_j beta_j |S_j>.

    Of the C(n, j) strings of weight j, C(n-l, j-h) extend a length-l prefix of
    weight h. Binomial ratios are formed from exact integers.
    """
    n = spec.n
    ell = len(prefix)
    if ell > n:
        raise ValueError(f"prefix length {ell} exceeds n={n}")
    h = hamming_weight(prefix)
    rest = n - ell
    total = 0.0
    for j, w in enumerate(spec.weights):
        if w == 0.0 or not 0 <= j - h <= rest:
            continue
        total += float(w) * (comb(rest, j - h) / comb(n, j))
    return total


class SymmetricMixOracle(ConditionalOracle):
    def __init__(self, spec: SymmetricSpec):
        self.spec = spec
        self.n = spec.n
        self.weights = np.asarray(spec.weights, dtype=float)

    def cond_probs(self, prefix):
        self._check(prefix)
        m0 = symmetric_mix_marginal_sq(self.spec, prefix + "0")
        m1 = symmetric_mix_marginal_sq(self.spec, prefix + "1")
        total = m0 + m1
        if total == 0.0:
            raise UnreachablePrefix(prefix)
        return _clamp(m0 / total), _clamp(m1 / total)


def oracle_for(target) -> ConditionalOracle:
    """Pick the cheapest oracle that describes ``target``."""
    if isinstance(target, TargetState):
        return DenseOracle.from_state(target)
    if isinstance(target, SymmetricSpec):
        r = target.one_hot_weight()
        if r is not None:
            return SymmetricBasisOracle(target.n, r)
        return SymmetricMixOracle(target)
    raise TypeError(f"no oracle for {type(target).__name__}")


__all__ = [
    "UnreachablePrefix",
    "ConditionalOracle",
    "DenseOracle",
    "SymmetricBasisOracle",
    "SymmetricMixOracle",
    "symmetric_cond_prob_one",
    "symmetric_mix_marginal_sq",
    "oracle_for",
]
