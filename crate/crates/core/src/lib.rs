//! Simulation and analysis toolkit for a qubit built from two weakly coupled
//! quantum dots, with qubits coupled through virtual exchange of cavity
//! photons.
//!
//! Energies are in meV and times in ns unless a name says otherwise.

pub mod budget;
pub mod decoherence;
pub mod dot_model;
pub mod error;
pub mod gates;
pub mod model;
pub mod numerics;
pub mod operators;
pub mod scalar;
pub mod units;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double-precision complex matrix used by the physics modules.
pub type ComplexMatrix = numerics::CMatrix<f64>;
/// Single-precision complex matrix.
pub type ComplexMatrix32 = numerics::CMatrix<f32>;
pub type DensityMatrix = numerics::DensityMatrix<f64>;
pub type QuantumState = numerics::QuantumState<f64>;
pub type C64 = num_complex::Complex<f64>;

pub type DotPairParams = dot_model::DotPairParams<f64>;
pub type MixedPair = dot_model::MixedPair<f64>;
pub type ScalingReport = dot_model::ScalingReport<f64>;
