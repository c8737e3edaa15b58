"""Sequential prefix-controlled-rotation state preparation."""

from .circuit import RY, Circuit, CircuitError, CPhaseBit, GPhase, H, OracleWrite, Phase, V
from .formats import InputDocument, InputError, emit_circuit, parse_circuit, parse_input
from .oracles import (
    ConditionalOracle,
    DenseOracle,
    SymmetricBasisOracle,
    SymmetricMixOracle,
    UnreachablePrefix,
    oracle_for,
    symmetric_cond_prob_one,
    symmetric_mix_marginal_sq,
)
from .sim import StateVector, apply_gate, fidelity, prefix_amplitudes, run, verify
from .state import (
    MarginalTree,
    StateError,
    SymmetricSpec,
    TargetState,
    dense_from_symmetric,
    hamming_weight,
    marginal_tree,
    validate_symmetric,
    validate_target,
)
from .synth import (
    OmegaFraction,
    decompose_diagonal,
    expand_kickback,
    omega_from_prob,
    quantize_omega,
    synthesize_full,
    synthesize_rotations,
)

__version__ = "0.1.0"

__all__ = [
    "RY",
    "Circuit",
    "CircuitError",
    "CPhaseBit",
    "GPhase",
    "H",
    "OracleWrite",
    "Phase",
    "V",
    "InputDocument",
    "InputError",
    "emit_circuit",
    "parse_circuit",
    "parse_input",
    "ConditionalOracle",
    "DenseOracle",
    "SymmetricBasisOracle",
    "SymmetricMixOracle",
    "UnreachablePrefix",
    "oracle_for",
    "symmetric_cond_prob_one",
    "symmetric_mix_marginal_sq",
    "StateVector",
    "apply_gate",
    "fidelity",
    "prefix_amplitudes",
    "run",
    "verify",
    "MarginalTree",
    "StateError",
    "SymmetricSpec",
    "TargetState",
    "dense_from_symmetric",
    "hamming_weight",
    "marginal_tree",
    "validate_symmetric",
    "validate_target",
    "OmegaFraction",
    "decompose_diagonal",
    "expand_kickback",
    "omega_from_prob",
    "quantize_omega",
    "synthesize_full",
    "synthesize_rotations",
]
