"""Truncated-Fock-space toolkit for conditional atom-cavity nonlinearities:
sign-gate interaction-time searches, cat-state Q-functions, the qudit
sign-shift angle and the displaced-generator universality check."""

from .atomfield import (
    ConditionalOutcome,
    ImpossibleOutcomeError,
    JointOperator,
    apply_sequence,
    apply_upsilon,
    conditional_block,
    joint_evolution,
    ns_amplitudes,
    ns_gate_check,
)
from .fock import (
    CutoffTooSmallError,
    FockOperator,
    FockVector,
    NotAntiHermitianError,
    annihilation,
    coherent_leakage,
    coherent_state,
    creation,
    default_cutoff,
    displacement,
    expm_antihermitian,
    fidelity,
    fock_state,
    number_op,
    quadrature,
    sqrt_number_phase,
)
from .labparams import RamanParams, interaction_time, kappa
from .phasespace import (
    QGrid,
    cat_diagnostics,
    cat_vector,
    exact_circle_amplitude,
    gaussian_amplitude,
    q_function,
)
from .search import (
    NoThetaFoundError,
    SignPattern,
    TauSolution,
    ns_merit,
    ns_tau_candidates,
    pattern_error,
    qudit_theta_search,
    sign_pattern,
    sqrt2_convergents,
    two_atom_amplitudes,
    two_atom_search,
)
from .universality import (
    GeneratorComparison,
    TruncationGuardError,
    displaced_generator,
    generator_residual,
    residual_scaling,
    series_generator,
    unitary_consistency,
)

__version__ = "0.1.0"
