//! Dense complex linear algebra and time-evolution engines.
//!
//! Basis ordering is fixed crate-wide: qubit levels are `|v⟩ = 0`, `|e⟩ = 1`
//! and, for three-level qubits, `|ẽ⟩ = 2`. Composite spaces are ordered
//! `qubit_j ⊗ qubit_k ⊗ cavity` with the first factor varying slowest and
//! cavity Fock states `0..cavity_dim`.

pub mod eig;
pub mod lindblad;
pub mod matrix;
pub mod propagate;
pub mod state;

pub use eig::{hermitian_eig, HermitianEigen};
pub use lindblad::{integrate_lindblad, integrate_lindblad_with, Collapse, LindbladOptions};
pub use matrix::{kron_all, CMatrix};
pub use propagate::{propagator, propagator_from_eig, ExactEvolution, TimeGrid};
pub use state::{basis_digits, basis_index, DensityMatrix, QuantumState};
