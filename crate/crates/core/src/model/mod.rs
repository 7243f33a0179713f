//! Hamiltonians of the three-level Raman scheme and its reductions.
//!
//! Everything is written in the frame rotating with the lasers and the
//! cavity mode, with energies in meV. For one qubit the Raman model reads
//!
//! ```text
//! H = δ₁ |ẽ⟩⟨ẽ| - δ̃ |e⟩⟨e| + Ω̃_L (|ẽ⟩⟨v| + h.c.) + Ω_C (|ẽ⟩⟨e| a + h.c.)
//! ```
//!
//! where `δ̃ = δ₂ - δ₁`. Eliminating `|ẽ⟩` gives a Jaynes-Cummings coupling
//! `Ω_eff`, and eliminating the cavity for two qubits gives an XY exchange
//! `g = Ω_eff,j Ω_eff,k / δ̃`. Stark shifts of both eliminations are dropped.
//!
//! Composite bases are ordered qubit j, qubit k, cavity, first factor
//! slowest.

pub mod builders;
pub mod compare;
pub mod scheme;

pub use builders::{
    build_drive, build_effective_jc, build_raman, build_xy, excitation_charge, exchange_coupling,
    jc_hamiltonian, total_sigma_z, xy_hamiltonian,
};
pub use compare::{
    compare_jc_vs_xy, compare_raman_vs_jc, effective_rabi_period, exchange_period,
    truncation_sensitivity, ErrorReport,
};
pub use scheme::{EffectiveQubit, LevelScheme, RegimeLimits, SystemLayout, MAX_DIMENSION};
