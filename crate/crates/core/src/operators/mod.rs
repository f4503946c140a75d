//! The oscillator's operators in the truncated number basis: `H`, the metric
//! generator `A`, `S = exp(A)`, `S⁻¹`, `Θ = S²`, the hermitized `h_S`, the
//! transformed `x`, `p` and the observable `O`.
//!
//! `h_S`, `x` and `p` are built by conjugating the ladder operators through the
//! 2×2 action of `ad_A` on `span{a, a†}` and then forming the quadratic
//! expressions from the conjugated ladders. This agrees with `S·H·S⁻¹` wherever
//! the truncated triple product has converged and stays exact on the leading
//! `dim − 1` states where that product does not (see [`similarity_direct`]).

pub mod ladder_map;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{
    metric_scalars, MetricChoice, MetricScalars, OscillatorParams, SpecialCase,
};
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigen, ladder_a, matrix_exp, number_op, FockMatrix, SpectralDecomposition,
};

pub use ladder_map::{adjoint_generator, coshc, sinhc, AdjointGenerator, LadderMap};

pub const DEFAULT_DIM: usize = 64;
pub const MIN_DIM: usize = 4;

/// `k = dim/4`.
pub fn default_sector(dim: usize) -> usize {
    dim / 4
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < MIN_DIM {
        return Err(Error::DimensionTooSmall { dim, min: MIN_DIM });
    }
    Ok(())
}

fn half_identity(dim: usize) -> FockMatrix {
    FockMatrix::identity(dim).scale_real(0.5)
}

/// `ω(a†a + ½) + α·a² + β·a†²` for any pair of ladder matrices.
fn quadratic_hamiltonian(params: &OscillatorParams, a: &FockMatrix, adag: &FockMatrix) -> FockMatrix {
    let dim = a.dim();
    let number = &(adag * a) + &half_identity(dim);
    let mut h = number.scale_real(params.omega());
    h = &h + &(a * a).scale_real(params.alpha());
    &h + &(adag * adag).scale_real(params.beta())
}

/// `x = (a + a†)/√(2ω)` and `p = i√(ω/2)(a† − a)` for any pair of ladder matrices.
fn position_momentum(omega: f64, a: &FockMatrix, adag: &FockMatrix) -> (FockMatrix, FockMatrix) {
    let x = (a + adag).scale_real(1.0 / (2.0 * omega).sqrt());
    let p = (adag - a).scale(Complex64::new(0.0, (omega / 2.0).sqrt()));
    (x, p)
}

/// `ω²x²(1 + z) + p²(1 − z)` at the effective `z`.
fn combination(omega: f64, z_eff: f64, x: &FockMatrix, p: &FockMatrix) -> FockMatrix {
    &(x * x).scale_real(omega * omega * (1.0 + z_eff)) + &(p * p).scale_real(1.0 - z_eff)
}

/// Truncation of `x̂²`, exact in every entry: `(a² + a†² + 2N̂ + 1)/(2ω)`.
fn position_squared(dim: usize, omega: f64) -> Result<FockMatrix> {
    let (a2, n) = squares(dim)?;
    let sum = &(&a2 + &a2.adjoint()) + &(&n.scale_real(2.0) + &FockMatrix::identity(dim));
    Ok(sum.scale_real(1.0 / (2.0 * omega)))
}

/// Truncation of `p̂²`, exact in every entry: `(ω/2)(2N̂ + 1 − a² − a†²)`.
fn momentum_squared(dim: usize, omega: f64) -> Result<FockMatrix> {
    let (a2, n) = squares(dim)?;
    let sum = &(&n.scale_real(2.0) + &FockMatrix::identity(dim)) - &(&a2 + &a2.adjoint());
    Ok(sum.scale_real(omega / 2.0))
}

fn squares(dim: usize) -> Result<(FockMatrix, FockMatrix)> {
    let a = ladder_a(dim)?;
    Ok((&a * &a, number_op(dim)?))
}

/// `H = ω(a†a + ½) + α·a² + β·a†²`.
pub fn build_hamiltonian(params: &OscillatorParams, dim: usize) -> Result<FockMatrix> {
    check_dim(dim)?;
    let a = ladder_a(dim)?;
    Ok(quadratic_hamiltonian(params, &a, &a.adjoint()))
}

fn generator_from(scalars: &MetricScalars, dim: usize) -> Result<FockMatrix> {
    let (a2, n) = squares(dim)?;
    Ok(&n.scale_real(scalars.epsilon) + &(&a2 + &a2.adjoint()).scale_real(scalars.eta))
}

/// `A = ε·a†a + η·(a² + a†²)`.
pub fn build_generator(
    params: &OscillatorParams,
    choice: &MetricChoice,
    dim: usize,
) -> Result<FockMatrix> {
    check_dim(dim)?;
    generator_from(&metric_scalars(params, choice)?, dim)
}

#[derive(Clone, Debug)]
pub struct Metric {
    pub s: FockMatrix,
    pub s_inv: FockMatrix,
    pub theta: FockMatrix,
}

fn metric_from_generator(generator: &FockMatrix) -> Result<Metric> {
    let s = matrix_exp(generator)?;
    let s_inv = matrix_exp(&-generator)?;
    let theta = &s * &s;
    if !theta.is_finite() {
        return Err(Error::Overflow { squarings: 0 });
    }
    Ok(Metric { s, s_inv, theta })
}

/// `S = exp(A)`, `S⁻¹ = exp(−A)`, `Θ = S²`.
pub fn build_metric(params: &OscillatorParams, choice: &MetricChoice, dim: usize) -> Result<Metric> {
    metric_from_generator(&build_generator(params, choice, dim)?)
}

/// Ladder matrices together with the conjugation maps `S(·)S⁻¹` and `S⁻¹(·)S`.
struct Conjugation {
    scalars: MetricScalars,
    generator: FockMatrix,
    a: FockMatrix,
    adag: FockMatrix,
    forward: LadderMap,
    backward: LadderMap,
    leakage: f64,
}

impl Conjugation {
    fn new(params: &OscillatorParams, choice: &MetricChoice, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let scalars = metric_scalars(params, choice)?;
        let generator = generator_from(&scalars, dim)?;
        let a = ladder_a(dim)?;
        let adag = a.adjoint();
        let adjoint = adjoint_generator(&generator, &a, &adag)?;
        Ok(Self {
            scalars,
            forward: LadderMap::from_generator(&adjoint, 1.0)?,
            backward: LadderMap::from_generator(&adjoint, -1.0)?,
            leakage: adjoint.leakage,
            generator,
            a,
            adag,
        })
    }

    fn hermitized(&self, params: &OscillatorParams) -> FockMatrix {
        let (a, adag) = self.forward.apply(&self.a, &self.adag);
        quadratic_hamiltonian(params, &a, &adag)
    }

    fn transformed_xp(&self, omega: f64) -> (FockMatrix, FockMatrix) {
        let (a, adag) = self.backward.apply(&self.a, &self.adag);
        position_momentum(omega, &a, &adag)
    }
}

/// `h_S = S·H·S⁻¹`, assembled from the conjugated ladder operators.
pub fn hermitize(params: &OscillatorParams, choice: &MetricChoice, dim: usize) -> Result<FockMatrix> {
    Ok(Conjugation::new(params, choice, dim)?.hermitized(params))
}

/// `x = S⁻¹x̂S` and `p = S⁻¹p̂S`.
pub fn transformed_xp(
    params: &OscillatorParams,
    choice: &MetricChoice,
    dim: usize,
) -> Result<(FockMatrix, FockMatrix)> {
    Ok(Conjugation::new(params, choice, dim)?.transformed_xp(params.omega()))
}

/// `O = ω²x²(1 + z) + p²(1 − z)` from the transformed `x`, `p`
/// (`z → −z` on the mirrored branch).
pub fn observable_o(params: &OscillatorParams, choice: &MetricChoice, dim: usize) -> Result<FockMatrix> {
    let (x, p) = transformed_xp(params, choice, dim)?;
    Ok(combination(params.omega(), choice.effective_z(), &x, &p))
}

/// `Ô = ω²x̂²(1 + z) + p̂²(1 − z)`, built from exact truncations of `x̂²`, `p̂²`.
pub fn observable_o_hat(
    params: &OscillatorParams,
    choice: &MetricChoice,
    dim: usize,
) -> Result<FockMatrix> {
    check_dim(dim)?;
    let (w, z) = (params.omega(), choice.effective_z());
    let x2 = position_squared(dim, w)?;
    let p2 = momentum_squared(dim, w)?;
    Ok(&x2.scale_real(w * w * (1.0 + z)) + &p2.scale_real(1.0 - z))
}

/// `½(μ·p̂² + ν·x̂²)`.
pub fn closed_form_hermitian(omega: f64, mu: f64, nu: f64, dim: usize) -> Result<FockMatrix> {
    check_dim(dim)?;
    let x2 = position_squared(dim, omega)?;
    let p2 = momentum_squared(dim, omega)?;
    Ok(&p2.scale_real(mu / 2.0) + &x2.scale_real(nu / 2.0))
}

/// Closed-form transformed coordinates:
/// `x = cosh θ·x̂ + (i/ω)(ε − 2η)·(sinh θ/θ)·p̂` and
/// `p = cosh θ·p̂ − iω(ε + 2η)·(sinh θ/θ)·x̂`.
pub fn closed_form_xp(
    omega: f64,
    scalars: &MetricScalars,
    dim: usize,
) -> Result<(FockMatrix, FockMatrix)> {
    check_dim(dim)?;
    let a = ladder_a(dim)?;
    let (x_hat, p_hat) = position_momentum(omega, &a, &a.adjoint());
    let theta = scalars.theta();
    let (cosh, shc) = (theta.cosh(), sinhc(theta));
    let (eps, eta) = (scalars.epsilon, scalars.eta);
    let x = &x_hat.scale_real(cosh) + &p_hat.scale(Complex64::new(0.0, (eps - 2.0 * eta) * shc / omega));
    let p = &p_hat.scale_real(cosh) - &x_hat.scale(Complex64::new(0.0, omega * (eps + 2.0 * eta) * shc));
    Ok((x, p))
}

/// The closed-form metric for each special case:
/// `(α/β)^{N̂/2}`, `exp(−(α−β)/(ω−α−β)·ωx̂²)` and `exp((α−β)/(ω+α+β)·p̂²/ω)`.
///
/// The last two omit the constant `e^{−ε}` carried by `exp(2A)`; see
/// [`reference_metric_scale`].
pub fn special_case_metric(
    params: &OscillatorParams,
    case: SpecialCase,
    dim: usize,
) -> Result<FockMatrix> {
    check_dim(dim)?;
    let (w, a, b) = (params.omega(), params.alpha(), params.beta());
    match case {
        SpecialCase::Number => {
            let ratio = a / b;
            if !(ratio > 0.0 && ratio.is_finite()) {
                return Err(Error::InvalidParameters(format!(
                    "(α/β)^(N/2) needs α/β > 0, got α={a}, β={b}"
                )));
            }
            let diag: Vec<f64> = (0..dim).map(|n| ratio.powf(n as f64 / 2.0)).collect();
            Ok(FockMatrix::from_diag_real(&diag))
        }
        SpecialCase::Position => {
            let c = (a - b) / (w - a - b);
            matrix_exp(&position_squared(dim, w)?.scale_real(-c * w))
        }
        SpecialCase::Momentum => {
            let c = (a - b) / (w + a + b);
            matrix_exp(&momentum_squared(dim, w)?.scale_real(c / w))
        }
    }
}

/// `c` with `Θ = c·Θ_ref`: `1` for `z = 0`, `e^{−ε}` for `|z| = 1`.
pub fn reference_metric_scale(params: &OscillatorParams, case: SpecialCase) -> f64 {
    match case {
        SpecialCase::Number => 1.0,
        _ => (-case.epsilon(params)).exp(),
    }
}

/// The truncated triple product `S·X·S⁻¹`.
///
/// Inside the sector this equals the exact conjugation only while the sums
/// over the discarded states are negligible, which fails for strong squeezing.
pub fn similarity_direct(s: &FockMatrix, x: &FockMatrix, s_inv: &FockMatrix) -> FockMatrix {
    &(s * x) * s_inv
}

/// `h_S ≈ U·(a†a + ½) + V·a² + W·a†²` on the leading `sector` states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub u: Complex64,
    pub v: Complex64,
    pub w: Complex64,
    /// Relative weight of `h` outside the three-term basis.
    pub leakage: f64,
}

impl QuadraticForm {
    /// `|Im U| + |V − W*|` relative to `|U|`; zero when `h` is Hermitian.
    pub fn hermiticity_defect(&self) -> f64 {
        (self.u.im.abs() + (self.v - self.w.conj()).norm()) / self.u.norm().max(1.0)
    }
}

pub fn quadratic_coefficients(h: &FockMatrix, sector: usize) -> Result<QuadraticForm> {
    let dim = h.dim();
    check_dim(dim)?;
    let (a2, n) = squares(dim)?;
    let basis = [
        (&n + &half_identity(dim)).project_sector(sector)?,
        a2.project_sector(sector)?,
        a2.adjoint().project_sector(sector)?,
    ];
    let target = h.project_sector(sector)?;
    let mut coeffs = [Complex64::new(0.0, 0.0); 3];
    let mut fitted = FockMatrix::zeros(sector);
    for (c, b) in coeffs.iter_mut().zip(&basis) {
        let norm = b.inner(b)?;
        *c = if norm.norm() > 0.0 {
            b.inner(&target)? / norm
        } else {
            Complex64::new(0.0, 0.0)
        };
        fitted = &fitted + &b.scale(*c);
    }
    let leakage = (&target - &fitted).frobenius_norm() / target.frobenius_norm().max(1.0);
    Ok(QuadraticForm {
        u: coeffs[0],
        v: coeffs[1],
        w: coeffs[2],
        leakage,
    })
}

/// `‖P(X − Y)P‖_F / max(1, ‖PYP‖_F)` on the leading `sector` states.
pub fn sector_residual(x: &FockMatrix, y: &FockMatrix, sector: usize) -> Result<f64> {
    let diff = x.sub(y)?.project_sector(sector)?;
    let scale = y.project_sector(sector)?.frobenius_norm().max(1.0);
    Ok(diff.frobenius_norm() / scale)
}

/// `‖P(X − X†)P‖_F / max(1, ‖PXP‖_F)`.
pub fn sector_hermiticity(x: &FockMatrix, sector: usize) -> Result<f64> {
    let block = x.project_sector(sector)?;
    Ok(block.hermiticity_residual() / block.frobenius_norm().max(1.0))
}

/// `‖P(ΘH − H†Θ)P‖_F / max(1, ‖Θ‖_F·‖H‖_F)`.
pub fn quasi_hermiticity_residual(theta: &FockMatrix, h: &FockMatrix, sector: usize) -> Result<f64> {
    let lhs = theta.mul(h)?;
    let rhs = h.adjoint().mul(theta)?;
    let diff = lhs.sub(&rhs)?.project_sector(sector)?;
    let scale = (theta.frobenius_norm() * h.frobenius_norm()).max(1.0);
    Ok(diff.frobenius_norm() / scale)
}

/// `ln` of the eigenvalues of `Θ = exp(2A)`, ascending. Read off `A`
/// directly, since the extreme eigenvalues of `Θ` leave the `f64` range
/// long before `A` does.
pub fn metric_log_eigenvalues(generator: &FockMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(generator)?
        .eigenvalues
        .into_iter()
        .map(|l| 2.0 * l)
        .collect())
}

/// Diagonalises the Hermitian part of `h_S` built at `spectral_dim` states,
/// keeping only the leading `spectral_dim − 1` where it is exact.
pub fn hermitized_eigen(
    params: &OscillatorParams,
    choice: &MetricChoice,
    spectral_dim: usize,
) -> Result<SpectralDecomposition> {
    let h = hermitize(params, choice, spectral_dim)?;
    hermitian_eigen(&h.project_sector(spectral_dim - 1)?.hermitian_part())
}

/// All operators for one `(params, choice, dim)`.
#[derive(Clone, Debug)]
pub struct OperatorSet {
    pub params: OscillatorParams,
    pub choice: MetricChoice,
    pub dim: usize,
    pub sector: usize,
    pub scalars: MetricScalars,
    pub hamiltonian: FockMatrix,
    pub generator: FockMatrix,
    pub s: FockMatrix,
    pub s_inv: FockMatrix,
    pub theta: FockMatrix,
    pub h_s: FockMatrix,
    pub x_transformed: FockMatrix,
    pub p_transformed: FockMatrix,
    pub o_combination: FockMatrix,
    /// `S(·)S⁻¹` on `span{a, a†}`.
    pub forward: LadderMap,
    /// `S⁻¹(·)S` on `span{a, a†}`.
    pub backward: LadderMap,
    /// How far the truncated `[A, a]`, `[A, a†]` stray from `span{a, a†}`.
    pub adjoint_leakage: f64,
}

impl OperatorSet {
    /// Builds with the default sector `dim/4`.
    pub fn build(params: &OscillatorParams, choice: &MetricChoice, dim: usize) -> Result<Self> {
        Self::with_sector(params, choice, dim, default_sector(dim))
    }

    pub fn with_sector(
        params: &OscillatorParams,
        choice: &MetricChoice,
        dim: usize,
        sector: usize,
    ) -> Result<Self> {
        check_dim(dim)?;
        if sector == 0 || sector > dim {
            return Err(Error::SectorOutOfRange { sector, dim });
        }
        let conj = Conjugation::new(params, choice, dim)?;
        let metric = metric_from_generator(&conj.generator)?;
        let hamiltonian = quadratic_hamiltonian(params, &conj.a, &conj.adag);
        let h_s = conj.hermitized(params);
        let (x, p) = conj.transformed_xp(params.omega());
        let o = combination(params.omega(), choice.effective_z(), &x, &p);
        Ok(Self {
            params: *params,
            choice: *choice,
            dim,
            sector,
            scalars: conj.scalars,
            hamiltonian,
            s: metric.s,
            s_inv: metric.s_inv,
            theta: metric.theta,
            h_s,
            x_transformed: x,
            p_transformed: p,
            o_combination: o,
            forward: conj.forward,
            backward: conj.backward,
            adjoint_leakage: conj.leakage,
            generator: conj.generator,
        })
    }

    pub fn closed_form_hermitian(&self) -> Result<FockMatrix> {
        closed_form_hermitian(self.params.omega(), self.scalars.mu, self.scalars.nu, self.dim)
    }

    pub fn closed_form_xp(&self) -> Result<(FockMatrix, FockMatrix)> {
        closed_form_xp(self.params.omega(), &self.scalars, self.dim)
    }

    pub fn observable_o_hat(&self) -> Result<FockMatrix> {
        observable_o_hat(&self.params, &self.choice, self.dim)
    }

    pub fn quasi_hermiticity_residual(&self) -> Result<f64> {
        quasi_hermiticity_residual(&self.theta, &self.hamiltonian, self.sector)
    }

    pub fn quadratic_form(&self) -> Result<QuadraticForm> {
        quadratic_coefficients(&self.h_s, self.sector)
    }

    /// `S·H·S⁻¹` as a literal truncated product.
    pub fn h_s_direct(&self) -> FockMatrix {
        similarity_direct(&self.s, &self.hamiltonian, &self.s_inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::Branch;
    use crate::linalg::{momentum_op, position_op};

    fn demo() -> OscillatorParams {
        OscillatorParams::demo()
    }

    fn std(z: f64) -> MetricChoice {
        MetricChoice::standard(z).unwrap()
    }

    #[test]
    fn hamiltonian_entries() {
        let h = build_hamiltonian(&demo(), 4).unwrap();
        let s2 = 2f64.sqrt();
        assert!((h[(0, 2)].re - 0.5 * s2).abs() < 1e-15);
        assert!((h[(2, 0)].re - 0.25 * s2).abs() < 1e-15);
        assert_eq!(h[(1, 1)].re, 1.5);

        let free = OscillatorParams::new(2.0, 0.0, 0.0).unwrap();
        let h0 = build_hamiltonian(&free, 5).unwrap();
        let want = FockMatrix::from_diag_real(&[1.0, 3.0, 5.0, 7.0, 9.0]);
        assert!((&h0 - &want).max_abs_entry() < 1e-14);

        let herm = OscillatorParams::new(1.0, 0.3, 0.3).unwrap();
        assert_eq!(build_hamiltonian(&herm, 10).unwrap().hermiticity_residual(), 0.0);
        assert!(build_hamiltonian(&demo(), 10).unwrap().hermiticity_residual() > 0.1);

        assert_eq!(
            build_hamiltonian(&demo(), 3).unwrap_err(),
            Error::DimensionTooSmall { dim: 3, min: 4 }
        );
    }

    #[test]
    fn generator_special_structure() {
        let a0 = build_generator(&demo(), &std(0.0), 16).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                if i != j {
                    assert_eq!(a0[(i, j)].norm(), 0.0);
                }
            }
        }
        let herm = OscillatorParams::new(1.0, 0.3, 0.3).unwrap();
        let zero = build_generator(&herm, &std(0.4), 8).unwrap();
        assert_eq!(zero.max_abs_entry(), 0.0);

        // z = 1: A = ε(ωx̂² − ½), and 2ε is the closed-form exponent −(α−β)/(ω−α−β)
        let dim = 32;
        let p = demo();
        let a1 = build_generator(&p, &std(1.0), dim).unwrap();
        let eps = SpecialCase::Position.epsilon(&p);
        let expected = &position_squared(dim, 1.0).unwrap().scale_real(eps)
            - &FockMatrix::identity(dim).scale_real(eps / 2.0);
        assert!((&a1 - &expected).max_abs_entry() < 1e-14);
        assert!((2.0 * eps + (0.25 / 0.25)).abs() < 1e-15);

        assert!(matches!(
            build_generator(&p, &std(0.7), 8).unwrap_err(),
            Error::InvalidRegion { .. }
        ));
    }

    #[test]
    fn number_case_metric_is_diagonal_power() {
        let m = build_metric(&demo(), &std(0.0), 8).unwrap();
        for n in 0..8 {
            let want = 2f64.powf(n as f64 / 2.0);
            assert!((m.theta[(n, n)].re - want).abs() < 1e-13 * want);
        }
        let herm = OscillatorParams::new(1.0, 0.3, 0.3).unwrap();
        let mh = build_metric(&herm, &std(-0.2), 8).unwrap();
        assert_eq!(mh.s, FockMatrix::identity(8));
        assert_eq!(mh.theta, FockMatrix::identity(8));
    }

    #[test]
    fn operator_set_invariants() {
        for z in [-0.8, -0.3, 0.0, 0.45] {
            let set = OperatorSet::build(&demo(), &std(z), 32).unwrap();
            let id = &set.s * &set.s_inv;
            let scale = set.s.frobenius_norm() * set.s_inv.frobenius_norm();
            assert!((&id - &FockMatrix::identity(32)).frobenius_norm() < 1e-9 * scale);
            assert!(set.theta.hermiticity_residual() < 1e-12 * set.theta.frobenius_norm());
            let spectrum = hermitian_eigen(&set.theta.hermitian_part()).unwrap();
            assert!(spectrum.eigenvalues[0] > 0.0, "z={z}");
            assert!(set.adjoint_leakage < 1e-13);
        }
    }

    #[test]
    fn hermitized_matches_closed_form_at_reference_point() {
        let set = OperatorSet::with_sector(&demo(), &std(-0.3), 64, 16).unwrap();
        let cf = set.closed_form_hermitian().unwrap();
        assert!(sector_residual(&set.h_s, &cf, 16).unwrap() < 1e-8);
        assert!(sector_hermiticity(&set.h_s, 16).unwrap() < 1e-12);
        // where the direct product has converged it agrees
        assert!(sector_residual(&set.h_s_direct(), &set.h_s, 16).unwrap() < 1e-8);
    }

    #[test]
    fn hermitized_number_case_coefficients() {
        let p = demo();
        let h = hermitize(&p, &std(0.0), 32).unwrap();
        let r = 2.0 * (p.alpha() * p.beta()).sqrt();
        let w = p.omega();
        let want = closed_form_hermitian(w, (w - r) / w, w * (w + r), 32).unwrap();
        assert!(sector_residual(&h, &want, 8).unwrap() < 1e-13);

        let herm = OscillatorParams::new(1.0, 0.3, 0.3).unwrap();
        assert_eq!(
            hermitize(&herm, &std(0.5), 16).unwrap(),
            build_hamiltonian(&herm, 16).unwrap()
        );
    }

    #[test]
    fn quadratic_form_is_hermitian_after_conjugation() {
        let set = OperatorSet::build(&demo(), &std(-0.6), 32).unwrap();
        let q = set.quadratic_form().unwrap();
        assert!(q.hermiticity_defect() < 1e-12);
        assert!(q.leakage < 1e-12);
        let (mu, nu, w) = (set.scalars.mu, set.scalars.nu, 1.0);
        assert!((q.u.re - (mu * w / 2.0 + nu / (2.0 * w))).abs() < 1e-12);
        assert!((q.v.re - (nu / (2.0 * w) - mu * w / 2.0) / 2.0).abs() < 1e-12);

        let raw = quadratic_coefficients(&set.hamiltonian, 8).unwrap();
        assert!((raw.v.re - 0.5).abs() < 1e-15 && (raw.w.re - 0.25).abs() < 1e-15);
        assert!(raw.hermiticity_defect() > 0.1);
    }

    #[test]
    fn transformed_coordinates() {
        let p = demo();
        for z in [-0.9, -0.3, 0.2, 0.95] {
            let set = OperatorSet::build(&p, &std(z), 32).unwrap();
            let (xc, pc) = set.closed_form_xp().unwrap();
            assert!(sector_residual(&set.x_transformed, &xc, 8).unwrap() < 1e-12, "z={z}");
            assert!(sector_residual(&set.p_transformed, &pc, 8).unwrap() < 1e-12, "z={z}");
        }
        let x_hat = position_op(16, 1.0).unwrap();
        let p_hat = momentum_op(16, 1.0).unwrap();

        let (x1, p1) = transformed_xp(&p, &std(1.0), 16).unwrap();
        assert!((&x1 - &x_hat).max_abs_entry() < 1e-10);
        assert!(sector_hermiticity(&p1, 8).unwrap() > 1e-3);

        let (x2, p2) = transformed_xp(&p, &std(-1.0), 16).unwrap();
        assert!((&p2 - &p_hat).max_abs_entry() < 1e-10);
        assert!(sector_hermiticity(&x2, 8).unwrap() > 1e-3);

        let herm = OscillatorParams::new(1.0, 0.3, 0.3).unwrap();
        let (xh, ph) = transformed_xp(&herm, &std(0.1), 16).unwrap();
        assert_eq!(xh, x_hat);
        assert_eq!(ph, p_hat);
    }

    #[test]
    fn round_trip_of_conjugation() {
        let set = OperatorSet::build(&demo(), &std(-0.4), 32).unwrap();
        let x_hat = position_op(32, 1.0).unwrap();
        let forward = similarity_direct(&set.s, &x_hat, &set.s_inv);
        let back = similarity_direct(&set.s_inv, &forward, &set.s);
        assert!(sector_residual(&back, &x_hat, 8).unwrap() < 1e-9);
    }

    #[test]
    fn observable_matches_hermitian_combination() {
        let p = demo();
        let set = OperatorSet::with_sector(&p, &std(-0.3), 64, 16).unwrap();
        let o_hat = set.observable_o_hat().unwrap();
        assert!(sector_residual(&set.o_combination, &o_hat, 16).unwrap() < 1e-8);
        assert!(sector_hermiticity(&set.o_combination, 16).unwrap() < 1e-12);

        let o0 = observable_o(&p, &std(0.0), 32).unwrap();
        let n = number_op(32).unwrap();
        let want = (&n + &half_identity(32)).scale_real(2.0);
        assert!(sector_residual(&o0, &want, 8).unwrap() < 1e-12);

        let (x1, _) = transformed_xp(&p, &std(1.0), 32).unwrap();
        let o1 = observable_o(&p, &std(1.0), 32).unwrap();
        assert!((&o1 - &(&x1 * &x1).scale_real(2.0)).max_abs_entry() < 1e-15);
    }

    #[test]
    fn mirrored_branch_uses_negated_z() {
        let p = demo();
        let m = MetricChoice::new(0.3, Branch::Mirrored).unwrap();
        let a = build_generator(&p, &m, 12).unwrap();
        let b = build_generator(&p, &std(-0.3), 12).unwrap();
        assert_eq!(a, b);
        let om = observable_o(&p, &m, 16).unwrap();
        let os = observable_o(&p, &std(-0.3), 16).unwrap();
        assert_eq!(om, os);
    }

    #[test]
    fn closed_form_special_case_metrics() {
        let p = demo();
        for case in SpecialCase::ALL {
            for branch in [Branch::Standard, Branch::Mirrored] {
                let theta = build_metric(&p, &case.choice(branch), 32).unwrap().theta;
                let reference = special_case_metric(&p, case, 32).unwrap();
                let scaled = reference.scale_real(reference_metric_scale(&p, case));
                assert!(
                    sector_residual(&theta, &scaled, 8).unwrap() < 1e-9,
                    "{case:?} {branch:?}"
                );
            }
        }
        let bad = OscillatorParams::new(1.0, 0.3, -0.1).unwrap();
        assert!(special_case_metric(&bad, SpecialCase::Number, 8).is_err());
    }

    #[test]
    fn quasi_hermiticity_holds() {
        let set = OperatorSet::build(&demo(), &std(0.3), 32).unwrap();
        assert!(set.quasi_hermiticity_residual().unwrap() < 1e-12);
        let h = &set.hamiltonian;
        let id = FockMatrix::identity(32);
        assert!(quasi_hermiticity_residual(&id, h, 8).unwrap() > 1e-3);
    }

    #[test]
    fn metric_log_spectrum_matches_theta() {
        let set = OperatorSet::build(&demo(), &std(-0.2), 16).unwrap();
        let logs = metric_log_eigenvalues(&set.generator).unwrap();
        let direct = hermitian_eigen(&set.theta.hermitian_part()).unwrap();
        for (l, d) in logs.iter().zip(&direct.eigenvalues) {
            assert!((l.exp() - d).abs() < 1e-10 * d.max(1.0));
        }
    }

    #[test]
    fn low_spectrum_is_oscillator_ladder() {
        let p = demo();
        let d = hermitized_eigen(&p, &std(-0.5), 64).unwrap();
        for n in 0..8 {
            assert!((d.eigenvalues[n] - p.energy(n)).abs() < 1e-8 * p.big_omega());
        }
    }

    #[test]
    fn sector_bounds_checked() {
        assert!(matches!(
            OperatorSet::with_sector(&demo(), &std(0.0), 8, 9).unwrap_err(),
            Error::SectorOutOfRange { .. }
        ));
    }
}
