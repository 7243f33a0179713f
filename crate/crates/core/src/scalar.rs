//! Real scalar abstraction shared by the numerical core.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst};

/// Real floating-point type the dense linear algebra is written against.
///
/// The tolerance constants are the per-precision thresholds used for the
/// Hermiticity, unitarity and density-matrix validity checks.
pub trait Scalar:
    Float + FloatConst + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Entrywise tolerance for `M == M†`.
    const HERMITIAN_TOL: f64;
    /// Entrywise tolerance for `M†M == I`.
    const UNITARY_TOL: f64;
    /// Tolerance for trace and positivity checks on density matrices.
    const STATE_TOL: f64;
    /// Largest trace drift an integrator may accumulate before it is
    /// declared unstable.
    const DRIFT_TOL: f64;
    /// Most negative eigenvalue tolerated in an integrated density matrix.
    const POSITIVITY_TOL: f64;

    /// Converts an `f64` literal into this scalar type.
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("f64 literal representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const HERMITIAN_TOL: f64 = 1e-12;
    const UNITARY_TOL: f64 = 1e-10;
    const STATE_TOL: f64 = 1e-10;
    const DRIFT_TOL: f64 = 1e-6;
    const POSITIVITY_TOL: f64 = 1e-8;
}

impl Scalar for f32 {
    const HERMITIAN_TOL: f64 = 1e-5;
    const UNITARY_TOL: f64 = 1e-4;
    const STATE_TOL: f64 = 1e-4;
    const DRIFT_TOL: f64 = 1e-3;
    const POSITIVITY_TOL: f64 = 1e-4;
}
