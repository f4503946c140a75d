//! Linear action of `S = exp(A)` on the ladder operators.
//!
//! For quadratic `A`, `ad_A` maps `span{a, a†}` into itself, so conjugation by
//! `S` is a 2×2 matrix on that span. Products of conjugated ladder matrices are
//! exact on the leading `(dim−1)` block, whereas the truncated triple product
//! `S·X·S⁻¹` is only meaningful where the intermediate sums converge.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::closed_forms::MetricScalars;
use crate::error::Result;
use crate::linalg::{matrix_exp, FockMatrix};

/// `S·a·S⁻¹ = c[0][0]·a + c[0][1]·a†` and `S·a†·S⁻¹ = c[1][0]·a + c[1][1]·a†`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderMap {
    pub coeffs: [[Complex64; 2]; 2],
}

/// The 2×2 generator of `ad_A` on `span{a, a†}`, read off the truncated
/// commutators, plus how far those commutators stray outside the span.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdjointGenerator {
    pub matrix: [[Complex64; 2]; 2],
    pub leakage: f64,
}

impl LadderMap {
    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self {
            coeffs: [[o, z], [z, o]],
        }
    }

    /// `exp(sign·G)`; `sign = +1` gives `S(·)S⁻¹`, `sign = −1` gives `S⁻¹(·)S`.
    pub fn from_generator(generator: &AdjointGenerator, sign: f64) -> Result<Self> {
        let g = &generator.matrix;
        let m = FockMatrix::from_row_major(vec![g[0][0], g[0][1], g[1][0], g[1][1]])?;
        let e = matrix_exp(&m.scale_real(sign))?;
        Ok(Self {
            coeffs: [[e[(0, 0)], e[(0, 1)]], [e[(1, 0)], e[(1, 1)]]],
        })
    }

    /// Closed-form Bogoliubov coefficients:
    /// `SaS⁻¹ = (cosh θ − ε·sinh θ/θ)·a − 2η·sinh θ/θ·a†` and
    /// `Sa†S⁻¹ = (cosh θ + ε·sinh θ/θ)·a† + 2η·sinh θ/θ·a`.
    /// `inverse` flips `(ε, η) → (−ε, −η)`, giving `S⁻¹(·)S`.
    pub fn closed_form(scalars: &MetricScalars, inverse: bool) -> Self {
        let sign = if inverse { -1.0 } else { 1.0 };
        let (eps, eta) = (sign * scalars.epsilon, sign * scalars.eta);
        let theta = scalars.theta();
        let cosh = theta.cosh();
        let shc = sinhc(theta);
        let r = |x: f64| Complex64::new(x, 0.0);
        Self {
            coeffs: [
                [r(cosh - eps * shc), r(-2.0 * eta * shc)],
                [r(2.0 * eta * shc), r(cosh + eps * shc)],
            ],
        }
    }

    /// Images of `a` and `a†` as truncated matrices.
    pub fn apply(&self, a: &FockMatrix, adag: &FockMatrix) -> (FockMatrix, FockMatrix) {
        let c = &self.coeffs;
        let image_a = &a.scale(c[0][0]) + &adag.scale(c[0][1]);
        let image_adag = &a.scale(c[1][0]) + &adag.scale(c[1][1]);
        (image_a, image_adag)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.coeffs[i][j] - other.coeffs[i][j]).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }
}

/// `sinh θ / θ`, series below `|θ| < 1e-4`.
pub fn sinhc(theta: f64) -> f64 {
    if theta.abs() < 1e-4 {
        let t2 = theta * theta;
        1.0 + t2 / 6.0 + t2 * t2 / 120.0
    } else {
        theta.sinh() / theta
    }
}

/// `(cosh θ − 1)/θ²`, series below `|θ| < 1e-4`.
pub fn coshc(theta: f64) -> f64 {
    if theta.abs() < 1e-4 {
        let t2 = theta * theta;
        0.5 + t2 / 24.0 + t2 * t2 / 720.0
    } else {
        (theta.cosh() - 1.0) / (theta * theta)
    }
}

/// Projects `[A, a]` and `[A, a†]` onto `{a, a†}` over the leading
/// `dim − 1` states, where truncated commutators are exact.
pub fn adjoint_generator(
    generator: &FockMatrix,
    a: &FockMatrix,
    adag: &FockMatrix,
) -> Result<AdjointGenerator> {
    let block = generator.dim() - 1;
    let a_k = a.project_sector(block)?;
    let adag_k = adag.project_sector(block)?;
    let norm_a = a_k.inner(&a_k)?;
    let norm_adag = adag_k.inner(&adag_k)?;

    let mut matrix = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut leakage: f64 = 0.0;
    for (row, x) in [a, adag].into_iter().enumerate() {
        let comm = generator.commutator(x)?.project_sector(block)?;
        let ca = a_k.inner(&comm)? / norm_a;
        let cad = adag_k.inner(&comm)? / norm_adag;
        let fitted = &a_k.scale(ca) + &adag_k.scale(cad);
        let scale = comm.frobenius_norm().max(1.0);
        leakage = leakage.max((&comm - &fitted).frobenius_norm() / scale);
        matrix[row] = [ca, cad];
    }
    Ok(AdjointGenerator { matrix, leakage })
}
