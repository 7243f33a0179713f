//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Jacobi is slow compared to Householder + QL for large matrices, but every
//! operator in this crate is at most 64x64 and Jacobi gives small eigenvalues
//! to high relative accuracy, which the level-repulsion checks rely on.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::Result;
use crate::numerics::matrix::CMatrix;
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: CMatrix<T>,
}

impl<T: Scalar> HermitianEigen<T> {
    /// Reassembles `V f(Λ) V†` for a complex-valued function of the eigenvalues.
    pub fn apply_fn(&self, f: impl Fn(T) -> Complex<T>) -> CMatrix<T> {
        let n = self.values.len();
        let fv: Vec<Complex<T>> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        CMatrix::from_fn(n, n, |i, j| {
            (0..n).fold(Complex::zero(), |acc, k| acc + v[(i, k)] * fv[k] * v[(j, k)].conj())
        })
    }
}

/// Diagonalises a Hermitian matrix: `H V = V diag(λ)` with `V` unitary.
pub fn hermitian_eig<T: Scalar>(h: &CMatrix<T>) -> Result<HermitianEigen<T>> {
    h.require_hermitian()?;
    let n = h.rows();
    // symmetrise so that the rotations act on an exactly Hermitian matrix
    let mut a = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex::new(h[(i, i)].re, T::zero())
        } else {
            (h[(i, j)] + h[(j, i)].conj()) * T::lit(0.5)
        }
    });
    let mut v = CMatrix::<T>::identity(n);

    let scale = a.frobenius();
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= eps * eps * scale || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == T::zero() {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // skip rotations that cannot change the diagonal in this precision
                if r <= eps * eps * (app.abs() + aqq.abs()) {
                    a[(p, q)] = Complex::zero();
                    a[(q, p)] = Complex::zero();
                    continue;
                }
                let phase = apq / r;
                let zeta = (aqq - app) / (r + r);
                let t = if zeta >= T::zero() {
                    T::one() / (zeta + (T::one() + zeta * zeta).sqrt())
                } else {
                    -T::one() / (-zeta + (T::one() + zeta * zeta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                // U restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
                let u_pp = Complex::new(c, T::zero());
                let u_pq = Complex::new(s, T::zero());
                let u_qp = phase.conj() * (-s);
                let u_qq = phase.conj() * c;

                // A <- A U
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                // A <- U† A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = Complex::zero();
                a[(q, p)] = Complex::zero();
                a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
                a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
                // V <- V U
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        a[(x, x)]
            .re
            .partial_cmp(&a[(y, y)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm<T: Scalar>(a: &CMatrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// `exp(i θ)` at precision `T`.
pub(crate) fn cis<T: Scalar>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}
