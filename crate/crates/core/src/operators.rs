//! Qubit and cavity operators in the crate's basis conventions.
//!
//! Pauli operators follow the level definitions
//! `σ⁺ = |e⟩⟨v|`, `σ⁻ = |v⟩⟨e|`, `σˣ = |e⟩⟨v| + |v⟩⟨e|`,
//! `σʸ = -i|e⟩⟨v| + i|v⟩⟨e|`, `σᶻ = |e⟩⟨e| - |v⟩⟨v|`,
//! with `|v⟩` at index 0. In this ordering `σᶻ = diag(-1, 1)`.

use num_complex::Complex;

use crate::numerics::CMatrix;
use crate::scalar::Scalar;

pub const V: usize = 0;
pub const E: usize = 1;
pub const E_TILDE: usize = 2;

fn c<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// `|e⟩⟨v|` on a qubit with `levels` levels.
pub fn sigma_plus<T: Scalar>(levels: usize) -> CMatrix<T> {
    CMatrix::outer_basis(levels, E, V)
}

/// `|v⟩⟨e|` on a qubit with `levels` levels.
pub fn sigma_minus<T: Scalar>(levels: usize) -> CMatrix<T> {
    CMatrix::outer_basis(levels, V, E)
}

pub fn sigma_x<T: Scalar>() -> CMatrix<T> {
    CMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]])
}

pub fn sigma_y<T: Scalar>() -> CMatrix<T> {
    // ⟨v|σʸ|e⟩ = i, ⟨e|σʸ|v⟩ = -i
    CMatrix::from_rows(&[vec![c(0., 0.), c(0., 1.)], vec![c(0., -1.), c(0., 0.)]])
}

pub fn sigma_z<T: Scalar>() -> CMatrix<T> {
    CMatrix::diag_real(&[-T::one(), T::one()])
}

/// `n · σ` for a real 3-vector.
pub fn sigma_dot<T: Scalar>(n: [f64; 3]) -> CMatrix<T> {
    let sx = sigma_x::<T>().scale_real(T::lit(n[0]));
    let sy = sigma_y::<T>().scale_real(T::lit(n[1]));
    let sz = sigma_z::<T>().scale_real(T::lit(n[2]));
    &(&sx + &sy) + &sz
}

/// `|k⟩⟨k|` on a `levels`-dimensional space.
pub fn projector<T: Scalar>(levels: usize, k: usize) -> CMatrix<T> {
    CMatrix::outer_basis(levels, k, k)
}

/// Truncated annihilation operator on Fock states `0..dim`.
pub fn annihilation<T: Scalar>(dim: usize) -> CMatrix<T> {
    let mut a = CMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex::new(T::lit(n as f64).sqrt(), T::zero());
    }
    a
}

pub fn creation<T: Scalar>(dim: usize) -> CMatrix<T> {
    annihilation::<T>(dim).adjoint()
}

pub fn number<T: Scalar>(dim: usize) -> CMatrix<T> {
    CMatrix::diag_real(&(0..dim).map(|n| T::lit(n as f64)).collect::<Vec<_>>())
}

/// Places `op` on subsystem `site` of a product space with dimensions `dims`.
pub fn embed<T: Scalar>(op: &CMatrix<T>, site: usize, dims: &[usize]) -> CMatrix<T> {
    assert_eq!(op.rows(), dims[site], "operator does not match subsystem dimension");
    dims.iter().enumerate().fold(CMatrix::identity(1), |acc, (k, &d)| {
        if k == site {
            acc.kron(op)
        } else {
            acc.kron(&CMatrix::identity(d))
        }
    })
}

/// Product of single-site operators on two different sites.
pub fn embed_pair<T: Scalar>(
    a: &CMatrix<T>,
    site_a: usize,
    b: &CMatrix<T>,
    site_b: usize,
    dims: &[usize],
) -> CMatrix<T> {
    &embed(a, site_a, dims) * &embed(b, site_b, dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = CMatrix<f64>;

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (sigma_x::<f64>(), sigma_y::<f64>(), sigma_z::<f64>());
        let i = Complex::new(0.0, 1.0);
        assert!((&x * &y).approx_eq(&z.scale(i), 1e-15));
        assert!((&y * &z).approx_eq(&x.scale(i), 1e-15));
        assert!((&z * &x).approx_eq(&y.scale(i), 1e-15));
        assert!((&x * &x).approx_eq(&M::identity(2), 0.0));
    }

    #[test]
    fn pauli_from_ladder() {
        let sp = sigma_plus::<f64>(2);
        let sm = sigma_minus::<f64>(2);
        assert!((&sp + &sm).approx_eq(&sigma_x(), 0.0));
        let i = Complex::new(0.0, 1.0);
        let y = &sp.scale(-i) + &sm.scale(i);
        assert!(y.approx_eq(&sigma_y(), 0.0));
        let z = &projector::<f64>(2, E) - &projector(2, V);
        assert!(z.approx_eq(&sigma_z(), 0.0));
    }

    #[test]
    fn ladder_commutator_below_cutoff() {
        let d = 4;
        let a = annihilation::<f64>(d);
        let comm = a.commutator(&creation(d));
        for n in 0..d - 1 {
            assert!((comm[(n, n)].re - 1.0).abs() < 1e-14);
        }
        assert!((&creation::<f64>(d) * &a).approx_eq(&number(d), 1e-14));
    }

    #[test]
    fn embedding_order() {
        let dims = [2, 3];
        let p = embed(&projector::<f64>(2, E), 0, &dims);
        // |e⟩ ⊗ anything occupies indices 3..6
        for k in 0..6 {
            let expect = if k >= 3 { 1.0 } else { 0.0 };
            assert_eq!(p[(k, k)].re, expect);
        }
    }
}
