//! Pure and mixed states over composed Hilbert spaces.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::eig::hermitian_eig;
use crate::numerics::matrix::CMatrix;
use crate::scalar::Scalar;

fn total_dim(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Dimension(format!("invalid subsystem dimensions {dims:?}")));
    }
    Ok(dims.iter().product())
}

/// Flat index of a product basis state; first subsystem varies slowest.
pub fn basis_index(dims: &[usize], digits: &[usize]) -> Result<usize> {
    if dims.len() != digits.len() {
        return Err(Error::Dimension(format!(
            "basis label has {} digits for {} subsystems",
            digits.len(),
            dims.len()
        )));
    }
    let mut idx = 0;
    for (&d, &k) in dims.iter().zip(digits) {
        if k >= d {
            return Err(Error::Dimension(format!("level {k} out of range for subsystem of dimension {d}")));
        }
        idx = idx * d + k;
    }
    Ok(idx)
}

/// Inverse of [`basis_index`].
pub fn basis_digits(dims: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

/// Normalised state vector with its subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState<T> {
    dims: Vec<usize>,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> QuantumState<T> {
    pub fn new(dims: Vec<usize>, amps: Vec<Complex<T>>) -> Result<Self> {
        let n = total_dim(&dims)?;
        if amps.len() != n {
            return Err(Error::Dimension(format!(
                "state of dimension {n} given {} amplitudes",
                amps.len()
            )));
        }
        let norm: T = amps.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
        if (norm - T::one()).abs() > T::lit(T::STATE_TOL) {
            return Err(Error::InvalidState(format!("state norm² is {norm}, expected 1")));
        }
        Ok(Self { dims, amps })
    }

    /// Product basis state `|k_1 k_2 ...⟩`.
    pub fn basis(dims: Vec<usize>, digits: &[usize]) -> Result<Self> {
        let n = total_dim(&dims)?;
        let idx = basis_index(&dims, digits)?;
        let mut amps = vec![Complex::zero(); n];
        amps[idx] = Complex::one();
        Ok(Self { dims, amps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn populations(&self) -> Vec<T> {
        self.amps.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn to_density(&self) -> DensityMatrix<T> {
        let n = self.dim();
        let m = CMatrix::from_fn(n, n, |i, j| self.amps[i] * self.amps[j].conj());
        DensityMatrix {
            dims: self.dims.clone(),
            matrix: m,
        }
    }

    pub fn evolve(&self, u: &CMatrix<T>) -> Result<Self> {
        if u.cols() != self.dim() || u.rows() != self.dim() {
            return Err(Error::Dimension("operator does not match state dimension".into()));
        }
        Ok(Self {
            dims: self.dims.clone(),
            amps: u.mul_vec(&self.amps),
        })
    }

    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b)
    }
}

/// Density matrix with its subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    dims: Vec<usize>,
    matrix: CMatrix<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and positivity (within `STATE_TOL`).
    pub fn new(dims: Vec<usize>, matrix: CMatrix<T>) -> Result<Self> {
        let n = total_dim(&dims)?;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Dimension(format!(
                "density matrix must be {n}x{n}, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let tol = T::lit(T::STATE_TOL);
        let defect = matrix.hermiticity_defect();
        if defect > tol {
            return Err(Error::InvalidState(format!(
                "density matrix not Hermitian (defect {defect:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let rho = Self { dims, matrix };
        let min = rho.min_eigenvalue()?;
        if min < -tol {
            return Err(Error::InvalidState(format!(
                "density matrix not positive semidefinite (min eigenvalue {min:e})"
            )));
        }
        Ok(rho)
    }

    /// Skips validation; used by integrators that check their own invariants.
    pub(crate) fn from_parts_unchecked(dims: Vec<usize>, matrix: CMatrix<T>) -> Self {
        Self { dims, matrix }
    }

    /// `I / d`.
    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let n = total_dim(&dims)?;
        let m = CMatrix::identity(n).scale_real(T::one() / T::lit(n as f64));
        Ok(Self { dims, matrix: m })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn trace(&self) -> Complex<T> {
        self.matrix.trace()
    }

    pub fn purity(&self) -> T {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn populations(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    pub fn min_eigenvalue(&self) -> Result<T> {
        let e = hermitian_eig(&self.matrix)?;
        Ok(e.values.first().copied().unwrap_or_else(T::zero))
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation_pure(&self, psi: &QuantumState<T>) -> Result<T> {
        if psi.dim() != self.dim() {
            return Err(Error::Dimension("state and density matrix dimensions differ".into()));
        }
        let rpsi = self.matrix.mul_vec(psi.amplitudes());
        Ok(psi
            .amplitudes()
            .iter()
            .zip(&rpsi)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b)
            .re)
    }

    /// `U ρ U†`.
    pub fn evolve(&self, u: &CMatrix<T>) -> Self {
        Self {
            dims: self.dims.clone(),
            matrix: &(u * &self.matrix) * &u.adjoint(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_indexing_is_slowest_first() {
        let dims = [3, 3, 2];
        assert_eq!(basis_index(&dims, &[1, 2, 1]).unwrap(), 1 * 6 + 2 * 2 + 1);
        assert_eq!(basis_digits(&dims, 11), vec![1, 2, 1]);
    }

    #[test]
    fn basis_out_of_range() {
        assert!(basis_index(&[2, 2], &[0, 2]).is_err());
    }

    #[test]
    fn rejects_unnormalised_state() {
        let r = QuantumState::<f64>::new(vec![2], vec![Complex::new(1.0, 0.0); 2]);
        assert!(r.is_err());
    }

    #[test]
    fn rejects_bad_trace() {
        let m = CMatrix::<f64>::identity(2);
        assert!(DensityMatrix::new(vec![2], m).is_err());
    }

    #[test]
    fn rejects_negative_density() {
        let m = CMatrix::<f64>::from_real_rows(&[&[1.5, 0.0], &[0.0, -0.5]]);
        assert!(DensityMatrix::new(vec![2], m).is_err());
    }

    #[test]
    fn pure_state_density() {
        let psi = QuantumState::<f64>::basis(vec![2, 3], &[1, 2]).unwrap();
        let rho = psi.to_density();
        assert!((rho.purity() - 1.0).abs() < 1e-15);
        assert!((rho.expectation_pure(&psi).unwrap() - 1.0).abs() < 1e-15);
        assert!(DensityMatrix::new(rho.dims().to_vec(), rho.matrix().clone()).is_ok());
    }
}
