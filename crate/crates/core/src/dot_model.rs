//! Level mixing of a tunnel-coupled dot pair.
//!
//! Two isolated dot orbitals `|d⟩` (energy `E_d`) and `|d̃⟩` (energy
//! `E_d̃ = E_d + Δ`) coupled by tunnelling `t` hybridise into
//!
//! ```text
//! |e⟩ = √(1-γ) |d⟩ + √γ |d̃⟩        E_- = ½[(E_d + E_d̃) - √(Δ² + 4t²)]
//! |ẽ⟩ = √(1-γ) |d̃⟩ - √γ |d⟩        E_+ = ½[(E_d + E_d̃) + √(Δ² + 4t²)]
//! ```
//!
//! Two mixing weights are carried. `gamma_paper = t²/(Δ² + t²)` is the
//! closed form used for the coherence budget; `gamma_exact = ½(1 - Δ/√(Δ²+4t²))`
//! is the actual weight of `|d̃⟩` in the lower eigenstate. They agree to
//! leading order `t²/Δ²` and differ at `Δ → 0` (1 versus ½).
//!
//! The same diagonalisation applies unchanged to a pair of valence (hole)
//! levels; the rest of the crate treats `|v⟩` as a single unmixed level.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `t/Δ` above which the weak-coupling approximations are flagged.
pub const WEAK_COUPLING_LIMIT: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DotPairParams<T> {
    /// Lower dot level `E_d` (meV).
    pub e_d: T,
    /// Upper dot level `E_d̃` (meV).
    pub e_dtilde: T,
    /// Tunnel coupling (meV).
    pub t: T,
}

impl<T: Scalar> DotPairParams<T> {
    pub fn new(e_d: T, e_dtilde: T, t: T) -> Result<Self> {
        let p = Self { e_d, e_dtilde, t };
        p.validate()?;
        Ok(p)
    }

    /// Pair with `E_d = 0` and the given detuning.
    pub fn from_detuning(t: T, delta: T) -> Result<Self> {
        Self::new(T::zero(), delta, t)
    }

    pub fn delta(&self) -> T {
        self.e_dtilde - self.e_d
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.e_d.is_finite() && self.e_dtilde.is_finite() && self.t.is_finite()) {
            return Err(Error::param("dot_pair", "energies must be finite"));
        }
        if self.t < T::zero() {
            return Err(Error::param("t", "tunnel coupling must be non-negative"));
        }
        if self.delta() < T::zero() {
            return Err(Error::param("e_dtilde", "upper dot level must not lie below e_d"));
        }
        Ok(())
    }

    /// True when `t/Δ` exceeds [`WEAK_COUPLING_LIMIT`] (always for `Δ = 0`).
    pub fn strong_coupling(&self) -> bool {
        let delta = self.delta();
        delta == T::zero() || self.t / delta > T::lit(WEAK_COUPLING_LIMIT)
    }

    /// The 2x2 Hamiltonian in the `{|d⟩, |d̃⟩}` basis.
    pub fn hamiltonian(&self) -> crate::numerics::CMatrix<T> {
        use num_complex::Complex;
        let z = T::zero();
        crate::numerics::CMatrix::from_rows(&[
            vec![Complex::new(self.e_d, z), Complex::new(self.t, z)],
            vec![Complex::new(self.t, z), Complex::new(self.e_dtilde, z)],
        ])
    }
}

/// Eigen-decomposition of a dot pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedPair<T> {
    /// `E_-`, energy of `|e⟩` (meV).
    pub e_minus: T,
    /// `E_+`, energy of `|ẽ⟩` (meV).
    pub e_plus: T,
    pub gamma_paper: T,
    pub gamma_exact: T,
    /// `√(1 - γ_exact)`
    pub amp_e_on_d: T,
    /// `√γ_exact`
    pub amp_e_on_dtilde: T,
    pub strong_coupling: bool,
}

pub fn diagonalize_pair<T: Scalar>(p: &DotPairParams<T>) -> Result<MixedPair<T>> {
    p.validate()?;
    let half = T::lit(0.5);
    let delta = p.delta();
    let t2 = p.t * p.t;
    let split = (delta * delta + T::lit(4.0) * t2).sqrt();
    let mean = (p.e_d + p.e_dtilde) * half;

    let gamma_paper = if t2 == T::zero() {
        T::zero()
    } else {
        t2 / (delta * delta + t2)
    };
    // ½(1 - Δ/s) rewritten as 2t²/(s(s + Δ)) to avoid cancellation at small t
    let gamma_exact = if t2 == T::zero() {
        T::zero()
    } else {
        T::lit(2.0) * t2 / (split * (split + delta))
    };

    let (e_minus, e_plus) = if t2 == T::zero() {
        (p.e_d, p.e_dtilde)
    } else {
        (mean - split * half, mean + split * half)
    };

    Ok(MixedPair {
        e_minus,
        e_plus,
        gamma_paper,
        gamma_exact,
        amp_e_on_d: (T::one() - gamma_exact).sqrt(),
        amp_e_on_dtilde: gamma_exact.sqrt(),
        strong_coupling: p.strong_coupling(),
    })
}

/// How the qubit couplings and decay scale relative to a single dot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport<T> {
    /// Multiplies the single-dot spontaneous-emission rate (`γ`).
    pub emission_factor: T,
    /// Multiplies a single-dot optical coupling (`√γ`).
    pub coupling_factor: T,
    /// Gain of the decoherence-time to gate-time ratio (`1/√γ`).
    pub gate_ratio_gain: T,
}

pub fn scaling_factors<T: Scalar>(gamma: T) -> Result<ScalingReport<T>> {
    if !(gamma > T::zero()) || gamma > T::one() {
        return Err(Error::param("gamma", "must lie in (0, 1]"));
    }
    let root = gamma.sqrt();
    Ok(ScalingReport {
        emission_factor: gamma,
        coupling_factor: root,
        gate_ratio_gain: T::one() / root,
    })
}
