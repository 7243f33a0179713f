//! Dense row-major complex matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major entries; fails unless `rows * cols == data.len()`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row slices. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        Self::from_fn(n, m, |i, j| {
            assert_eq!(rows[i].len(), m, "ragged rows");
            Complex::new(T::lit(rows[i][j]), T::zero())
        })
    }

    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        Self::from_fn(n, m, |i, j| {
            assert_eq!(rows[i].len(), m, "ragged rows");
            rows[i][j]
        })
    }

    pub fn diag(values: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn diag_real(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = Complex::new(*v, T::zero());
        }
        m
    }

    /// `|i⟩⟨j|` on an `n`-dimensional space.
    pub fn outer_basis(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Complex::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| f(*z)).collect(),
        }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .fold(Complex::zero(), |a, b| a + b)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// `max |M - M†|` entrywise; infinite for non-square input.
    pub fn hermiticity_defect(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= T::lit(T::HERMITIAN_TOL)
    }

    /// Fails with the Hermiticity defect in the diagnostic.
    pub fn require_hermitian(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "Hermitian operator must be square, got {}x{}",
                self.rows, self.cols
            )));
        }
        let defect = self.hermiticity_defect();
        if defect > T::lit(T::HERMITIAN_TOL) || defect.is_nan() {
            return Err(Error::NotHermitian {
                defect: defect.to_f64_lossy(),
            });
        }
        Ok(())
    }

    /// `max |M†M - I|` entrywise.
    pub fn unitarity_defect(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        (&self.adjoint() * self)
            .sub_identity()
            .max_abs()
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_defect() < T::lit(T::UNITARY_TOL)
    }

    fn sub_identity(mut self) -> Self {
        for i in 0..self.rows.min(self.cols) {
            self[(i, i)] = self[(i, i)] - Complex::one();
        }
        self
    }

    /// Kronecker product; the first factor is the slowest-varying index.
    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        Self::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            self[(i / r2, j / c2)] * other[(i % r2, j % c2)]
        })
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(Complex::zero(), |acc, (a, b)| acc + *a * *b)
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Result<Complex<T>> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Complex::one();
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&x, &y| {
                    a[(x, k)]
                        .norm()
                        .partial_cmp(&a[(y, k)].norm())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(k);
            if a[(pivot, k)].norm() == T::zero() {
                return Ok(Complex::zero());
            }
            if pivot != k {
                for j in 0..n {
                    let tmp = a[(k, j)];
                    a[(k, j)] = a[(pivot, j)];
                    a[(pivot, j)] = tmp;
                }
                det = -det;
            }
            let p = a[(k, k)];
            det = det * p;
            for i in k + 1..n {
                let f = a[(i, k)] / p;
                for j in k..n {
                    let v = a[(k, j)];
                    a[(i, j)] = a[(i, j)] - f * v;
                }
            }
        }
        Ok(det)
    }

    /// Elementwise closeness in max norm.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.rows == other.rows && self.cols == other.cols && (self - other).max_abs() <= tol
    }

    /// Converts to another precision.
    pub fn cast<U: Scalar>(&self) -> CMatrix<U> {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|z| Complex::new(U::lit(z.re.to_f64_lossy()), U::lit(z.im.to_f64_lossy())))
                .collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;

    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d = *d + a * *b;
                }
            }
        }
        out
    }
}

impl<T: Scalar> Mul for CMatrix<T> {
    type Output = CMatrix<T>;

    fn mul(self, rhs: CMatrix<T>) -> CMatrix<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Add for &CMatrix<T> {
    type Output = CMatrix<T>;

    fn add(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl<T: Scalar> Add for CMatrix<T> {
    type Output = CMatrix<T>;

    fn add(self, rhs: CMatrix<T>) -> CMatrix<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;

    fn sub(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl<T: Scalar> Sub for CMatrix<T> {
    type Output = CMatrix<T>;

    fn sub(self, rhs: CMatrix<T>) -> CMatrix<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for CMatrix<T> {
    type Output = CMatrix<T>;

    fn neg(self) -> CMatrix<T> {
        self.map(|z| -z)
    }
}

impl<T: fmt::Debug> fmt::Debug for CMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = &self[(i, j)];
                write!(f, "({:?}, {:?})  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product of a list of factors, left factor slowest.
pub fn kron_all<T: Scalar>(factors: &[CMatrix<T>]) -> CMatrix<T> {
    factors
        .iter()
        .fold(CMatrix::identity(1), |acc, f| acc.kron(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = CMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn kron_identities() {
        assert_eq!(M::identity(2).kron(&M::identity(2)), M::identity(4));
    }

    #[test]
    fn kron_sigma_z_with_identity() {
        // σ^z = |e⟩⟨e| - |v⟩⟨v| with |v⟩ at index 0
        let sz = M::diag_real(&[-1.0, 1.0]);
        let k = sz.kron(&M::identity(2));
        assert_eq!(k, M::diag_real(&[-1.0, -1.0, 1.0, 1.0]));
    }

    #[test]
    fn kron_dimensions() {
        let a = M::zeros(2, 3);
        let b = M::zeros(4, 5);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (8, 15));
    }

    #[test]
    fn from_vec_rejects_bad_length() {
        assert!(M::from_vec(2, 2, vec![c(1.0, 0.0); 3]).is_err());
    }

    #[test]
    fn non_hermitian_diagnostic_carries_defect() {
        let m = M::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.5, 0.0), c(0.0, 0.0)]]);
        match m.require_hermitian() {
            Err(Error::NotHermitian { defect }) => assert!((defect - 0.5).abs() < 1e-15),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn determinant_of_permutation() {
        let m = M::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let d = m.determinant().unwrap();
        assert!((d - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn f32_instantiation() {
        let a = CMatrix::<f32>::identity(3);
        assert!(a.is_unitary());
        assert!(a.is_hermitian());
    }
}
