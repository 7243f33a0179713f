//! Exact propagators for time-independent Hamiltonians.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::eig::{cis, hermitian_eig, HermitianEigen};
use crate::numerics::matrix::CMatrix;
use crate::scalar::Scalar;
use crate::units::hbar;

/// Uniform time grid in ns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub n_steps: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, n_steps: usize) -> Result<Self> {
        let g = Self {
            t_start,
            t_end,
            n_steps,
        };
        g.validate()?;
        Ok(g)
    }

    /// Grid over `[0, duration]`.
    pub fn span(duration: f64, n_steps: usize) -> Result<Self> {
        Self::new(0.0, duration, n_steps)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_start.is_finite() && self.t_end.is_finite()) {
            return Err(Error::param("grid", "endpoints must be finite"));
        }
        if self.t_end <= self.t_start {
            return Err(Error::param("grid.t_end", "must exceed grid.t_start"));
        }
        if self.n_steps == 0 {
            return Err(Error::param("grid.n_steps", "must be at least 1"));
        }
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        (self.t_end - self.t_start) / self.n_steps as f64
    }

    /// The `n_steps + 1` grid points, endpoints included.
    pub fn times(&self) -> Vec<f64> {
        let dt = self.dt();
        (0..=self.n_steps)
            .map(|k| {
                if k == self.n_steps {
                    self.t_end
                } else {
                    self.t_start + dt * k as f64
                }
            })
            .collect()
    }
}

/// `exp(-i H t / ħ)` for `H` in meV and `t` in ns.
pub fn propagator<T: Scalar>(h: &CMatrix<T>, duration: T) -> Result<CMatrix<T>> {
    if duration < T::zero() || duration.is_nan() {
        return Err(Error::param("duration", "must be non-negative"));
    }
    let eig = hermitian_eig(h)?;
    Ok(propagator_from_eig(&eig, duration))
}

/// Propagator reusing an existing eigendecomposition.
pub fn propagator_from_eig<T: Scalar>(eig: &HermitianEigen<T>, duration: T) -> CMatrix<T> {
    let hb = hbar::<T>();
    eig.apply_fn(|l| cis(-(l * duration / hb)))
}

/// Evolves a state vector under a fixed Hamiltonian, sampling at each
/// grid point. Diagonalises once.
pub struct ExactEvolution<T> {
    eig: HermitianEigen<T>,
}

impl<T: Scalar> ExactEvolution<T> {
    pub fn new(h: &CMatrix<T>) -> Result<Self> {
        Ok(Self {
            eig: hermitian_eig(h)?,
        })
    }

    pub fn eigen(&self) -> &HermitianEigen<T> {
        &self.eig
    }

    /// `ψ(t) = V exp(-iΛt/ħ) V† ψ(0)`.
    pub fn state_at(&self, psi0: &[Complex<T>], t: T) -> Vec<Complex<T>> {
        let v = &self.eig.vectors;
        let n = self.eig.values.len();
        let hb = hbar::<T>();
        let mut coeff = vec![Complex::new(T::zero(), T::zero()); n];
        for (k, c) in coeff.iter_mut().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for i in 0..n {
                acc = acc + v[(i, k)].conj() * psi0[i];
            }
            *c = acc * cis(-(self.eig.values[k] * t / hb));
        }
        (0..n)
            .map(|i| {
                (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, k| acc + v[(i, k)] * coeff[k])
            })
            .collect()
    }

    /// Basis populations `|ψ_i(t)|²` at every grid time.
    pub fn populations(&self, psi0: &[Complex<T>], grid: &TimeGrid) -> Vec<Vec<T>> {
        grid.times()
            .into_iter()
            .map(|t| {
                self.state_at(psi0, T::lit(t))
                    .iter()
                    .map(|z| z.norm_sqr())
                    .collect()
            })
            .collect()
    }
}
