from math import sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brute import bitstrings, marginal_sq, random_real_target, random_symmetric
from statum import (
    StateError,
    SymmetricSpec,
    TargetState,
    dense_from_symmetric,
    hamming_weight,
    marginal_tree,
    validate_symmetric,
    validate_target,
)
from statum.state import prefixes

R2 = 1 / sqrt(2)


def test_basis_state_accepted_unchanged():
    s = TargetState(1, [1.0, 0.0], [0.0, 0.0])
    out = validate_target(s)
    assert out is s
    assert not out.renormalized


def test_uniform_state_norm_exact():
    out = validate_target(TargetState(2, [0.5] * 4))
    assert np.sum(out.magnitudes**2) == 1.0
    assert not out.renormalized


def test_small_drift_is_renormalized():
    # 0.8^2 + 0.6000001^2 = 1.00000012000001 (exact rational arithmetic)
    out = validate_target(TargetState(1, [0.8, 0.6000001]))
    assert out.renormalized
    assert np.sum(out.magnitudes**2) == pytest.approx(1.0, abs=1e-15)
    assert out.magnitudes[1] / out.magnitudes[0] == pytest.approx(0.6000001 / 0.8, rel=1e-15)


def test_large_drift_rejected_with_norm():
    with pytest.raises(StateError, match="1.001201"):
        validate_target(TargetState(1, [0.8, 0.601]))


def test_negative_magnitude_rejected():
    with pytest.raises(StateError, match="negative"):
        validate_target(TargetState(1, [-0.6, 0.8]))


@pytest.mark.parametrize("mags", [[1.0], [1.0, 0.0, 0.0], np.ones(4)])
def test_bad_shapes_rejected(mags):
    with pytest.raises(StateError):
        validate_target(TargetState(2, mags))


def test_symmetric_spec_validation():
    assert validate_symmetric(SymmetricSpec(2, [R2, 0, R2])).betas[1] == 0
    with pytest.raises(StateError):
        validate_symmetric(SymmetricSpec(2, [1, 1, 0]))
    with pytest.raises(StateError):
        validate_symmetric(SymmetricSpec(2, [1, 0]))


@pytest.mark.parametrize("bits,weight", [("", 0), ("101", 2), ("1111", 4)])
def test_hamming_weight(bits, weight):
    assert hamming_weight(bits) == weight


def test_marginals_of_s1():
    tree = marginal_tree(TargetState(2, [0, R2, R2, 0]))
    assert tree.alpha("0") == pytest.approx(R2, abs=1e-15)
    assert tree.alpha("1") == pytest.approx(R2, abs=1e-15)
    assert tree.alpha("") == pytest.approx(1.0, abs=1e-15)


def test_marginals_of_basis_state():
    tree = marginal_tree(TargetState(2, [1, 0, 0, 0]))
    assert tree.alpha("0") == 1.0
    assert tree.alpha("1") == 0.0


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_marginals_match_brute_force(n):
    rng = np.random.default_rng(n)
    s = random_real_target(rng, n)
    tree = marginal_tree(s)
    for j in range(n + 1):
        for p in prefixes(j):
            assert tree.prob(p) == pytest.approx(marginal_sq(s.magnitudes, n, p), abs=1e-14)


def test_leaves_equal_magnitudes_exactly():
    s = random_real_target(np.random.default_rng(3), 4)
    tree = marginal_tree(s)
    for i, x in enumerate(bitstrings(4)):
        assert tree.alpha(x) == s.magnitudes[i]


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
def test_marginal_consistency_and_phase_independence(n, seed):
    rng = np.random.default_rng(seed)
    s = random_real_target(rng, n)
    tree = marginal_tree(s)
    assert abs(tree.prob("") - 1.0) <= 1e-9
    for j in range(n):
        for p in prefixes(j):
            assert abs(tree.prob(p) - tree.prob(p + "0") - tree.prob(p + "1")) <= 1e-9
    phased = marginal_tree(TargetState(n, s.magnitudes, rng.uniform(-7, 7, 1 << n)))
    for a, b in zip(tree.probs, phased.probs):
        assert np.array_equal(a, b)


def test_dense_from_dicke_s1():
    s = dense_from_symmetric(SymmetricSpec(2, [0, 1, 0]))
    assert np.allclose(s.magnitudes, [0, R2, R2, 0], atol=1e-15)
    assert np.all(s.phases == 0)


def test_dense_from_bell_mix():
    s = dense_from_symmetric(SymmetricSpec(2, [R2, 0, R2]))
    assert np.allclose(s.magnitudes, [R2, 0, 0, R2], atol=1e-15)


def test_dense_from_s0():
    s = dense_from_symmetric(SymmetricSpec(1, [1, 0]))
    assert np.array_equal(s.magnitudes, [1, 0])


def test_dense_from_symmetric_keeps_beta_phase():
    s = dense_from_symmetric(SymmetricSpec(2, [0, 1j, 0]))
    assert s.phases[1] == pytest.approx(np.pi / 2)
    assert s.phases[2] == pytest.approx(np.pi / 2)


@pytest.mark.parametrize("seed", range(10))
def test_dense_from_symmetric_needs_no_renormalization(seed):
    rng = np.random.default_rng(seed)
    spec = random_symmetric(rng, int(rng.integers(1, 11)))
    assert not validate_target(dense_from_symmetric(spec)).renormalized
