//! Scalar formulas for the metric family: Ω, ε(z), η(z), θ², μ(z), ν(z), the
//! singular band z±, the special cases z ∈ {0, ±1}, and classical quantities.
//!
//! All metric-dependent quantities are evaluated at the *effective* parameter:
//! `z` on the standard branch, `−z` on the mirrored branch.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this distance from `|z| = 1` the special-case formulas replace the
/// general expressions, which are 0/0 there.
pub const ENDPOINT_WINDOW: f64 = 1e-9;

/// Hamiltonian coefficients `H = ω(a†a + ½) + α·a² + β·a†²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OscillatorParams {
    omega: f64,
    alpha: f64,
    beta: f64,
    big_omega: f64,
}

impl OscillatorParams {
    /// Rejects `ω ≤ 0` and complex spectra (`ω² < 4αβ`). A discriminant within
    /// rounding of zero is snapped to the exceptional point.
    pub fn new(omega: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::NonpositiveFrequency(omega));
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParameters(format!(
                "alpha = {alpha}, beta = {beta} must be finite"
            )));
        }
        let disc = omega * omega - 4.0 * alpha * beta;
        let slack = 4.0 * f64::EPSILON * (omega * omega + 4.0 * (alpha * beta).abs());
        if disc < -slack {
            return Err(Error::InvalidParameters(format!(
                "omega^2 - 4 alpha beta = {disc:e} < 0: spectrum is not real"
            )));
        }
        Ok(Self {
            omega,
            alpha,
            beta,
            big_omega: disc.max(0.0).sqrt(),
        })
    }

    /// The exceptional point `ω = 2√(αβ)`, where `Ω = 0`.
    pub fn exceptional(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha * beta > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "exceptional point needs alpha*beta > 0, got {}",
                alpha * beta
            )));
        }
        Ok(Self {
            omega: 2.0 * (alpha * beta).sqrt(),
            alpha,
            beta,
            big_omega: 0.0,
        })
    }

    /// `ω = 2√(αβ)·(1 + δ)`.
    pub fn near_exceptional(alpha: f64, beta: f64, delta: f64) -> Result<Self> {
        if !(alpha * beta > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "exceptional point needs alpha*beta > 0, got {}",
                alpha * beta
            )));
        }
        Self::new(2.0 * (alpha * beta).sqrt() * (1.0 + delta), alpha, beta)
    }

    /// ω = 1, α = 1/2, β = 1/4.
    pub fn demo() -> Self {
        Self::new(1.0, 0.5, 0.25).expect("demo parameters are valid")
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `Ω = √(ω² − 4αβ) ≥ 0`.
    pub fn big_omega(&self) -> f64 {
        self.big_omega
    }

    pub fn big_omega_sq(&self) -> f64 {
        self.big_omega * self.big_omega
    }

    pub fn is_hermitian(&self) -> bool {
        self.alpha == self.beta
    }

    pub fn is_exceptional(&self) -> bool {
        self.big_omega == 0.0
    }

    /// `E_n = (n + ½)Ω`.
    pub fn energy(&self, n: usize) -> f64 {
        (n as f64 + 0.5) * self.big_omega
    }
}

/// Which of the two metric families is used. `Mirrored` applies `z → −z`
/// throughout, moving the singular band to `[−z+, −z−]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Standard,
    Mirrored,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Standard => 1.0,
            Branch::Mirrored => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Standard => "standard",
            Branch::Mirrored => "mirrored",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Branch {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "standard" => Ok(Branch::Standard),
            "mirrored" => Ok(Branch::Mirrored),
            other => Err(format!("unknown branch '{other}' (standard|mirrored)")),
        }
    }
}

/// Metric parameter `z ∈ [−1, 1]` plus branch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricChoice {
    z: f64,
    branch: Branch,
}

impl MetricChoice {
    pub fn new(z: f64, branch: Branch) -> Result<Self> {
        if !(z.abs() <= 1.0) {
            return Err(Error::ZOutOfRange(z));
        }
        Ok(Self { z, branch })
    }

    pub fn standard(z: f64) -> Result<Self> {
        Self::new(z, Branch::Standard)
    }

    pub fn mirrored(z: f64) -> Result<Self> {
        Self::new(z, Branch::Mirrored)
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn effective_z(&self) -> f64 {
        self.branch.sign() * self.z
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricScalars {
    pub epsilon: f64,
    /// `η = z_eff·ε/2`.
    pub eta: f64,
    /// `θ² = ε²(1 − z²) = ε² − 4η²`.
    pub theta_sq: f64,
    pub mu: f64,
    pub nu: f64,
    pub valid: bool,
}

impl MetricScalars {
    pub fn theta(&self) -> f64 {
        self.theta_sq.sqrt()
    }
}

/// The interval of `z` with no real ε, stored with `z_minus ≤ z_plus`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularBand {
    pub z_minus: f64,
    pub z_plus: f64,
}

impl SingularBand {
    /// Invalid interval in the user's `z` coordinate for `branch`.
    pub fn for_branch(&self, branch: Branch) -> (f64, f64) {
        match branch {
            Branch::Standard => (self.z_minus, self.z_plus),
            Branch::Mirrored => (-self.z_plus, -self.z_minus),
        }
    }

    /// Closed-interval membership; band edges count as inside.
    pub fn contains(&self, z_eff: f64) -> bool {
        z_eff >= self.z_minus && z_eff <= self.z_plus
    }

    pub fn width(&self) -> f64 {
        self.z_plus - self.z_minus
    }
}

/// `z± = ((α+β)ω ± (α−β)Ω)/(ω² + (α−β)²)`.
///
/// The roots are those of `(ω²+(α−β)²)z² − 2ω(α+β)z + 4αβ`; the smaller-magnitude
/// one is taken from the product of roots to avoid cancellation.
pub fn singular_band(params: &OscillatorParams) -> Result<SingularBand> {
    if params.is_hermitian() {
        return Err(Error::HermitianCase);
    }
    let (w, a, b, big) = (params.omega, params.alpha, params.beta, params.big_omega);
    let denom = w * w + (a - b) * (a - b);
    let centre = w * (a + b);
    if big == 0.0 {
        let z0 = centre / denom;
        return Ok(SingularBand {
            z_minus: z0,
            z_plus: z0,
        });
    }
    let spread = (a - b).abs() * big;
    let (r1, r2) = if centre == 0.0 {
        (spread / denom, -spread / denom)
    } else {
        let far = centre + centre.signum() * spread;
        (far / denom, 4.0 * a * b / far)
    };
    Ok(SingularBand {
        z_minus: r1.min(r2),
        z_plus: r1.max(r2),
    })
}

/// `(α−β)√(1−z²)/(α+β−zω)`, the argument of arctanh in ε(z); `None` when the
/// denominator vanishes.
pub fn arctanh_argument(params: &OscillatorParams, z_eff: f64) -> Option<f64> {
    let q = params.alpha + params.beta - z_eff * params.omega;
    if q == 0.0 {
        return None;
    }
    Some((params.alpha - params.beta) * (1.0 - z_eff * z_eff).max(0.0).sqrt() / q)
}

/// True iff the effective `z` lies strictly outside the singular band, or `α = β`.
pub fn is_valid(params: &OscillatorParams, choice: &MetricChoice) -> bool {
    match singular_band(params) {
        Err(_) => true,
        Ok(band) => !band.contains(choice.effective_z()),
    }
}

fn check_valid(params: &OscillatorParams, choice: &MetricChoice) -> Result<()> {
    if let Ok(band) = singular_band(params) {
        let z_eff = choice.effective_z();
        if band.contains(z_eff) {
            if params.is_exceptional() {
                return Err(Error::ExceptionalPoint { z: choice.z() });
            }
            let (lower, upper) = band.for_branch(choice.branch());
            return Err(Error::InvalidRegion {
                z: choice.z(),
                lower,
                upper,
            });
        }
    }
    Ok(())
}

fn near_endpoint(z: f64) -> bool {
    (1.0 - z * z).abs() < ENDPOINT_WINDOW
}

/// `arctanh(t)/t`, with its Taylor series near zero.
fn atanh_ratio(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        let t2 = t * t;
        1.0 + t2 / 3.0 + t2 * t2 / 5.0
    } else {
        t.atanh() / t
    }
}

/// ε at the effective parameter, without the validity check.
fn epsilon_at(params: &OscillatorParams, z: f64) -> f64 {
    let (w, a, b) = (params.omega, params.alpha, params.beta);
    if a == b {
        return 0.0;
    }
    if near_endpoint(z) {
        return SpecialCase::endpoint(z).epsilon(params);
    }
    let q = a + b - z * w;
    let t = (a - b) * (1.0 - z * z).sqrt() / q;
    // arctanh(t)/(2√(1−z²)) = (α−β)/(2Q) · arctanh(t)/t
    (a - b) / (2.0 * q) * atanh_ratio(t)
}

fn mu_nu_at(params: &OscillatorParams, z: f64) -> Result<(f64, f64)> {
    if near_endpoint(z) {
        return Ok(SpecialCase::endpoint(z).mu_nu(params));
    }
    let (w, a, b) = (params.omega, params.alpha, params.beta);
    let om2 = params.big_omega_sq();
    let p = w - z * (a + b);
    let q = a + b - z * w;
    let d = (q * q - (1.0 - z * z) * (a - b) * (a - b)).max(0.0);
    let qr = q.signum() * d.sqrt();
    let minus = p - qr;
    let plus = p + qr;
    // (P − QR)(P + QR) = (1 − z²)Ω², so whichever factor is free of
    // cancellation determines the other.
    if minus == 0.0 && plus == 0.0 {
        return Err(Error::ExceptionalPoint { z });
    }
    if minus.abs() >= plus.abs() {
        let mu = minus / ((1.0 + z) * w);
        let nu = w * (1.0 + z) * om2 / minus;
        Ok((mu, nu))
    } else {
        let nu = w * plus / (1.0 - z);
        let mu = (1.0 - z) * om2 / (w * plus);
        Ok((mu, nu))
    }
}

/// ε, η, θ², μ, ν for a valid metric choice.
pub fn metric_scalars(params: &OscillatorParams, choice: &MetricChoice) -> Result<MetricScalars> {
    check_valid(params, choice)?;
    let z = choice.effective_z();
    let epsilon = epsilon_at(params, z);
    let (mu, nu) = mu_nu_at(params, z)?;
    Ok(MetricScalars {
        epsilon,
        eta: z * epsilon / 2.0,
        theta_sq: epsilon * epsilon * (1.0 - z * z).max(0.0),
        mu,
        nu,
        valid: true,
    })
}

/// Coefficients of `h_S = ½(μ·p̂² + ν·x̂²)`.
pub fn mu_nu(params: &OscillatorParams, choice: &MetricChoice) -> Result<(f64, f64)> {
    check_valid(params, choice)?;
    mu_nu_at(params, choice.effective_z())
}

/// `tanh(2θ)/θ`, with its series near θ = 0.
pub fn tanh2_over_theta(theta: f64) -> f64 {
    if theta.abs() < 1e-4 {
        let t2 = theta * theta;
        2.0 - 8.0 * t2 / 3.0 + 64.0 * t2 * t2 / 15.0
    } else {
        (2.0 * theta).tanh() / theta
    }
}

/// Relative residual of the hermiticity condition
/// `tanh(2θ)/θ = (α−β)/((α+β)ε − 2ωη)`, cleared of its denominator.
pub fn hermiticity_condition_residual(params: &OscillatorParams, scalars: &MetricScalars) -> f64 {
    let (w, a, b) = (params.omega, params.alpha, params.beta);
    let lhs = tanh2_over_theta(scalars.theta()) * ((a + b) * scalars.epsilon - 2.0 * w * scalars.eta);
    let rhs = a - b;
    (lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE)
}

/// The three special cases with closed-form metrics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecialCase {
    /// Effective `z = 0`: `Θ = (α/β)^{N̂/2}`, the number operator is observable.
    Number,
    /// Effective `z = 1`: `Θ ∝ exp(−(α−β)/(ω−α−β)·ωx̂²)`, position is observable.
    Position,
    /// Effective `z = −1`: `Θ ∝ exp((α−β)/(ω+α+β)·p̂²/ω)`, momentum is observable.
    Momentum,
}

impl SpecialCase {
    pub const ALL: [SpecialCase; 3] = [Self::Number, Self::Position, Self::Momentum];

    fn endpoint(z: f64) -> Self {
        if z > 0.0 {
            Self::Position
        } else {
            Self::Momentum
        }
    }

    pub fn effective_z(self) -> f64 {
        match self {
            Self::Number => 0.0,
            Self::Position => 1.0,
            Self::Momentum => -1.0,
        }
    }

    /// The user-facing `z` that realises this case on `branch`.
    pub fn choice(self, branch: Branch) -> MetricChoice {
        MetricChoice::new(branch.sign() * self.effective_z(), branch).expect("|z| ≤ 1")
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Number => "i",
            Self::Position => "ii",
            Self::Momentum => "iii",
        }
    }

    pub fn epsilon(self, params: &OscillatorParams) -> f64 {
        let (w, a, b) = (params.omega, params.alpha, params.beta);
        match self {
            Self::Number => 0.25 * (a / b).ln(),
            Self::Position => -(a - b) / (2.0 * (w - a - b)),
            Self::Momentum => (a - b) / (2.0 * (w + a + b)),
        }
    }

    pub fn mu_nu(self, params: &OscillatorParams) -> (f64, f64) {
        let (w, a, b) = (params.omega, params.alpha, params.beta);
        let om2 = params.big_omega_sq();
        match self {
            Self::Number => {
                let r = 2.0 * (a * b).sqrt();
                ((w - r) / w, w * (w + r))
            }
            Self::Position => ((w - a - b) / w, w * om2 / (w - a - b)),
            Self::Momentum => (om2 / (w * (w + a + b)), w * (w + a + b)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalQuantities {
    /// `1/μ(z)`.
    pub mass: f64,
    /// `ν(z)·A²/2`.
    pub e_classical: f64,
    pub amplitude: f64,
}

impl ClassicalQuantities {
    /// The same energy written as `A²Ω²/(2μ)`.
    pub fn energy_via_mass(&self, params: &OscillatorParams) -> f64 {
        self.amplitude * self.amplitude * params.big_omega_sq() * self.mass / 2.0
    }
}

pub fn classical(
    params: &OscillatorParams,
    choice: &MetricChoice,
    amplitude: f64,
) -> Result<ClassicalQuantities> {
    if !(amplitude > 0.0 && amplitude.is_finite()) {
        return Err(Error::NonpositiveAmplitude(amplitude));
    }
    let (mu, nu) = mu_nu(params, choice)?;
    Ok(ClassicalQuantities {
        mass: 1.0 / mu,
        e_classical: nu * amplitude * amplitude / 2.0,
        amplitude,
    })
}
