//! Dense complex linear algebra over a truncated Fock space.
//!
//! Matrices are stored row-major; basis index `n` labels the number state
//! `|n⟩`. Everything here is a pure function of its inputs.

mod eigen;
mod expm;
mod fock;

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eigen::{hermitian_eigen, SpectralDecomposition, MAX_SWEEPS};
pub use expm::{matrix_exp, matrix_exp_shifted};
pub use fock::{ladder_a, ladder_adag, momentum_op, number_op, position_op};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix over the number basis `{|0⟩ … |dim−1⟩}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl FockMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diag_real(&vec![1.0; dim])
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_diag_real(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be a perfect square.
    pub fn from_row_major(entries: Vec<Complex64>) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim * dim != entries.len() {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: dim * dim,
            });
        }
        Ok(Self { dim, data: entries })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.matmul(other))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn matmul(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Self { dim: n, data: out }
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Frobenius inner product `Σ conj(a_ij)·b_ij`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖m − m†‖_F`.
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `(m + m†)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// Top-left `k×k` block.
    pub fn project_sector(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.dim {
            return Err(Error::SectorOutOfRange {
                sector: k,
                dim: self.dim,
            });
        }
        Ok(Self::from_fn(k, |i, j| self[(i, j)]))
    }

    /// Embeds `self` into the top-left corner of a larger zero matrix.
    pub fn embed(&self, dim: usize) -> Result<Self> {
        if dim < self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: dim,
            });
        }
        Ok(Self::from_fn(dim, |i, j| {
            if i < self.dim && j < self.dim {
                self[(i, j)]
            } else {
                ZERO
            }
        }))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for FockMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for FockMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

// Operator sugar for internal algebra. These panic on mismatched dimensions;
// use the `Result`-returning methods when dimensions are not known to agree.

impl Add for &FockMatrix {
    type Output = FockMatrix;

    fn add(self, rhs: &FockMatrix) -> FockMatrix {
        FockMatrix::add(self, rhs).expect("dimension mismatch in matrix addition")
    }
}

impl Sub for &FockMatrix {
    type Output = FockMatrix;

    fn sub(self, rhs: &FockMatrix) -> FockMatrix {
        FockMatrix::sub(self, rhs).expect("dimension mismatch in matrix subtraction")
    }
}

impl Mul for &FockMatrix {
    type Output = FockMatrix;

    fn mul(self, rhs: &FockMatrix) -> FockMatrix {
        FockMatrix::mul(self, rhs).expect("dimension mismatch in matrix product")
    }
}

impl Mul<f64> for &FockMatrix {
    type Output = FockMatrix;

    fn mul(self, rhs: f64) -> FockMatrix {
        self.scale_real(rhs)
    }
}

impl Mul<Complex64> for &FockMatrix {
    type Output = FockMatrix;

    fn mul(self, rhs: Complex64) -> FockMatrix {
        self.scale(rhs)
    }
}

impl Neg for &FockMatrix {
    type Output = FockMatrix;

    fn neg(self) -> FockMatrix {
        self.scale_real(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn ladder_hermiticity_residual_is_sqrt_twelve() {
        let a = ladder_a(4).unwrap();
        // entrywise: ‖a − a†‖² = 2·(1 + 2 + 3)
        assert!((a.hermiticity_residual() - 12f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn project_identity_sector() {
        let id = FockMatrix::identity(8);
        assert_eq!(id.project_sector(3).unwrap(), FockMatrix::identity(3));
        assert!(id.project_sector(0).is_err());
        assert!(id.project_sector(9).is_err());
    }

    #[test]
    fn binary_ops_reject_mismatched_dims() {
        let a = FockMatrix::identity(3);
        let b = FockMatrix::identity(4);
        assert_eq!(
            a.mul(&b).unwrap_err(),
            Error::DimensionMismatch { left: 3, right: 4 }
        );
        assert!(a.add(&b).is_err());
        assert!(a.sub(&b).is_err());
        assert!(a.inner(&b).is_err());
    }

    #[test]
    fn matmul_matches_hand_product() {
        let a = FockMatrix::from_row_major(vec![c(1.0), c(2.0), c(3.0), c(4.0)]).unwrap();
        let b = FockMatrix::from_row_major(vec![c(0.0), Complex64::i(), c(1.0), c(0.0)]).unwrap();
        let p = &a * &b;
        assert_eq!(p[(0, 0)], c(2.0));
        assert_eq!(p[(0, 1)], Complex64::i());
        assert_eq!(p[(1, 0)], c(4.0));
        assert_eq!(p[(1, 1)], Complex64::new(0.0, 3.0));
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let m = FockMatrix::from_row_major(vec![c(1.0), Complex64::new(0.0, 2.0), c(3.0), c(4.0)])
            .unwrap();
        let d = m.adjoint();
        assert_eq!(d[(1, 0)], Complex64::new(0.0, -2.0));
        assert_eq!(d[(0, 1)], c(3.0));
    }

    #[test]
    fn embed_then_project_round_trips() {
        let m = ladder_a(3).unwrap();
        assert_eq!(m.embed(6).unwrap().project_sector(3).unwrap(), m);
    }
}
