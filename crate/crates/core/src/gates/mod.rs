//! Two-qubit gate algebra on the `{vv, ve, ev, ee}` basis.
//!
//! Single-qubit rotations and the exchange propagator use the `+i`
//! exponent, `exp(+i angle n·σ)`. Forward evolution under the exchange
//! Hamiltonian for a time `t` equals [`joint_evolution`] at `-g t/ħ`; see
//! [`JointConvention`].

pub mod cnot;
pub mod pulse;
pub mod verify;

pub use cnot::{cnot, cnot_target, hadamard_like_k, CnotResult, TruthRow};
pub use pulse::{
    compile_cps, cps_sequence, cps_target, joint_evolution, rotation, JointConvention,
    PulseSequence, PulseStep, Qubit, N_J, N_K,
};
pub use verify::{
    apply_variant, fidelity, search_variants, verify_matrix, verify_sequence, SearchResult,
    SearchSpace, Variant, VerificationReport, MAX_SEARCH_STEPS, VERIFY_TOL,
};
