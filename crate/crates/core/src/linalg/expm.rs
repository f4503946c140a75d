//! Matrix exponential by scaling and squaring around a fixed-order Taylor kernel.

use num_complex::Complex64;

use super::{FockMatrix, ONE};
use crate::error::{Error, Result};

/// Scaled 1-norm bound; the Taylor remainder at this radius is below 1e-20.
const SCALED_NORM: f64 = 0.5;
const TAYLOR_ORDER: u32 = 16;

/// `exp(m)`.
///
/// The squaring count is chosen so that `‖m‖₁ / 2^s ≤ 0.5`. Returns
/// [`Error::Overflow`] if any entry leaves the floating-point range during
/// squaring, which for metric operators means the truncation or parameters
/// make the operator unrepresentable in `f64`.
pub fn matrix_exp(m: &FockMatrix) -> Result<FockMatrix> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let norm = m.one_norm();
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as u32
    } else {
        0
    };
    let scaled = m.scale_real(0.5f64.powi(squarings as i32));

    // Horner: I + X(I + X/2(I + X/3(…)))
    let dim = m.dim();
    let mut acc = FockMatrix::identity(dim);
    for k in (1..=TAYLOR_ORDER).rev() {
        let mut next = (&scaled * &acc).scale_real(1.0 / f64::from(k));
        for i in 0..dim {
            next[(i, i)] += ONE;
        }
        acc = next;
    }

    for step in 0..squarings {
        acc = &acc * &acc;
        if !acc.is_finite() {
            return Err(Error::Overflow {
                squarings: step + 1,
            });
        }
    }
    Ok(acc)
}

/// `exp(m − shift·I)`, for reading off magnitudes of `exp(m)` in log form
/// when `exp(m)` itself would overflow.
pub fn matrix_exp_shifted(m: &FockMatrix, shift: f64) -> Result<FockMatrix> {
    let mut shifted = m.clone();
    for i in 0..m.dim() {
        shifted[(i, i)] -= Complex64::new(shift, 0.0);
    }
    matrix_exp(&shifted)
}
