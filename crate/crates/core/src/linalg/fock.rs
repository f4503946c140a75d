//! Ladder, number, position and momentum operators in the truncated number basis.
//!
//! With `a = √(ω/2)·x̂ + i·p̂/√(2ω)`:
//! `x̂ = (a + a†)/√(2ω)` and `p̂ = i·√(ω/2)·(a† − a)`.
//! Identities such as `[a, a†] = 1` hold only below the truncation edge.

use num_complex::Complex64;

use super::FockMatrix;
use crate::error::{Error, Result};

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { dim, min: 2 });
    }
    Ok(())
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::NonpositiveFrequency(omega));
    }
    Ok(())
}

/// Annihilation operator: `a[n−1, n] = √n`.
pub fn ladder_a(dim: usize) -> Result<FockMatrix> {
    check_dim(dim)?;
    let mut a = FockMatrix::zeros(dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    Ok(a)
}

/// Creation operator `a†`.
pub fn ladder_adag(dim: usize) -> Result<FockMatrix> {
    Ok(ladder_a(dim)?.adjoint())
}

/// `N̂ = diag(0, 1, …, dim−1)`.
pub fn number_op(dim: usize) -> Result<FockMatrix> {
    check_dim(dim)?;
    Ok(FockMatrix::from_diag_real(
        &(0..dim).map(|n| n as f64).collect::<Vec<_>>(),
    ))
}

pub fn position_op(dim: usize, omega: f64) -> Result<FockMatrix> {
    check_dim(dim)?;
    check_omega(omega)?;
    let a = ladder_a(dim)?;
    Ok(&(&a + &a.adjoint()) * (1.0 / (2.0 * omega).sqrt()))
}

pub fn momentum_op(dim: usize, omega: f64) -> Result<FockMatrix> {
    check_dim(dim)?;
    check_omega(omega)?;
    let a = ladder_a(dim)?;
    Ok(&(&a.adjoint() - &a) * Complex64::new(0.0, (omega / 2.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_small_dims() {
        let a2 = ladder_a(2).unwrap();
        assert_eq!(a2[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(a2[(0, 0)] + a2[(1, 0)] + a2[(1, 1)], Complex64::new(0.0, 0.0));

        let a4 = ladder_a(4).unwrap();
        for n in 1..4 {
            assert_eq!(a4[(n - 1, n)].re, (n as f64).sqrt());
        }
        let nonzero = a4.as_slice().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 3);
    }

    #[test]
    fn too_small_or_bad_frequency() {
        assert_eq!(
            ladder_a(1).unwrap_err(),
            Error::DimensionTooSmall { dim: 1, min: 2 }
        );
        assert_eq!(
            position_op(4, 0.0).unwrap_err(),
            Error::NonpositiveFrequency(0.0)
        );
        assert!(momentum_op(4, -1.0).is_err());
        assert!(momentum_op(4, f64::NAN).is_err());
    }

    #[test]
    fn number_operator_is_adag_a() {
        for dim in [2, 5, 16] {
            let a = ladder_a(dim).unwrap();
            let n = &a.adjoint() * &a;
            assert!((&n - &number_op(dim).unwrap()).max_abs_entry() < 1e-14);
        }
    }

    #[test]
    fn canonical_commutators_below_edge() {
        let dim = 16;
        let a = ladder_a(dim).unwrap();
        let comm = a.commutator(&a.adjoint()).unwrap();
        let lower = comm.project_sector(dim - 1).unwrap();
        assert!((&lower - &FockMatrix::identity(dim - 1)).max_abs_entry() < 1e-14);

        let x = position_op(dim, 1.0).unwrap();
        let p = momentum_op(dim, 1.0).unwrap();
        let xp = x.commutator(&p).unwrap().project_sector(dim - 1).unwrap();
        let expected = &FockMatrix::identity(dim - 1) * Complex64::i();
        assert!((&xp - &expected).max_abs_entry() < 1e-14);
    }

    #[test]
    fn position_two_state_and_hermiticity() {
        let x = position_op(2, 1.0).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((x[(0, 1)].re - h).abs() < 1e-15 && (x[(1, 0)].re - h).abs() < 1e-15);
        for omega in [0.3, 1.0, 2.5] {
            assert_eq!(position_op(9, omega).unwrap().hermiticity_residual(), 0.0);
            assert_eq!(momentum_op(9, omega).unwrap().hermiticity_residual(), 0.0);
        }
    }
}
