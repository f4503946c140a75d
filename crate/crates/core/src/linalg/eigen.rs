//! Cyclic Jacobi eigensolver for Hermitian matrices using complex rotations.

use num_complex::Complex64;

use super::{FockMatrix, ZERO};
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const HERMITICITY_TOL: f64 = 1e-10;

/// Eigenvalues in ascending order with the matching eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: FockMatrix,
}

impl SpectralDecomposition {
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    /// `V·diag(λ)·V†`.
    pub fn reconstruct(&self) -> FockMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        FockMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * self.eigenvalues[k] * v[(j, k)].conj())
                .sum()
        })
    }
}

/// Diagonalises a Hermitian matrix by cyclic Jacobi sweeps.
///
/// Each rotation first removes the phase of `a_pq` and then applies the real
/// Jacobi rotation that zeroes it. Iteration stops when the off-diagonal
/// Frobenius mass falls below `1e-13·‖m‖_F`.
pub fn hermitian_eigen(m: &FockMatrix) -> Result<SpectralDecomposition> {
    let norm = m.frobenius_norm();
    let residual = m.hermiticity_residual();
    let allowed = HERMITICITY_TOL * norm;
    if residual > allowed {
        return Err(Error::NotHermitian { residual, allowed });
    }

    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = FockMatrix::identity(n);
    let target = OFF_DIAGONAL_TOL * norm;

    let mut converged = off_diagonal_norm(&a) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&a) <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = FockMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &FockMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn rotate(a: &mut FockMatrix, v: &mut FockMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase_bar = phase.conj();
    let n = a.dim();

    // A ← A·W with W = [[c, s], [−s·φ̄, c·φ̄]] on columns (p, q)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * phase_bar * s;
        a[(k, q)] = akp * s + akq * phase_bar * c;
    }
    // A ← W†·A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(app - t * mag, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * phase_bar * s;
        v[(k, q)] = vkp * s + vkq * phase_bar * c;
    }
}
