//! The identity suite over a `z` grid, band-edge and exceptional-point
//! probes, and `z`-dependent transition elements.

mod edges;
mod spectra;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{
    classical, hermiticity_condition_residual, Branch, MetricChoice,
    OscillatorParams, SpecialCase,
};
use crate::error::{Error, Result};
use crate::operators::{
    closed_form_hermitian, default_sector, reference_metric_scale, sector_hermiticity,
    sector_residual, special_case_metric, LadderMap, OperatorSet, MIN_DIM,
};

pub use edges::{
    exceptional_point_scan, probe_band_edges, weakly_squeezed_z, EdgeProbe, EdgeSide,
    ExceptionalScan, SpacingPoint, EXCEPTIONAL_DELTAS, EXCEPTIONAL_LEVELS,
};
pub use spectra::{
    ground_state_width, low_spectrum, spectral_dim, transition_elements, SpectrumRow,
    TransitionTable,
};

pub const DEFAULT_GRID_POINTS: usize = 41;

pub const OPERATOR_TOL: f64 = 1e-8;
pub const SPECTRUM_TOL: f64 = 1e-8;
pub const MU_NU_TOL: f64 = 1e-11;
pub const SPECIAL_METRIC_TOL: f64 = 1e-9;
pub const SCALAR_TOL: f64 = 1e-10;
pub const CLASSICAL_TOL: f64 = 1e-12;

/// Within this distance a grid value counts as one of `z ∈ {−1, 0, 1}`.
const SPECIAL_Z_WINDOW: f64 = 1e-12;

/// `steps` uniform points on `[min, max]`, both ends included exactly.
pub fn uniform_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..steps)
            .map(|i| {
                if i == 0 {
                    min
                } else if i == steps - 1 {
                    max
                } else {
                    // symmetric ranges give exactly negated values
                    let k = (steps - 1) as f64;
                    (min * (k - i as f64) + max * i as f64) / k
                }
            })
            .collect(),
    }
}

/// The default 41-point grid on `[−1, 1]`.
pub fn default_grid() -> Vec<f64> {
    uniform_grid(-1.0, 1.0, DEFAULT_GRID_POINTS)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub check: String,
    pub z: f64,
    pub branch: Branch,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckEntry {
    fn new(check: &str, choice: &MetricChoice, residual: f64, tolerance: f64) -> Self {
        Self {
            check: check.to_string(),
            z: choice.z(),
            branch: choice.branch(),
            residual,
            tolerance,
            // NaN residuals fail
            passed: residual <= tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedPoint {
    pub z: f64,
    pub branch: Branch,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped_points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorstResidual {
    pub check: String,
    pub residual: f64,
    pub tolerance: f64,
    pub z: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub params: OscillatorParams,
    pub branch: Branch,
    pub dim: usize,
    pub sector: usize,
    pub spectral_dim: usize,
    pub grid: Vec<f64>,
    pub entries: Vec<CheckEntry>,
    pub skipped: Vec<SkippedPoint>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Largest residual per check name, in order of first appearance.
    pub fn worst_residuals(&self) -> Vec<WorstResidual> {
        let mut worst: Vec<WorstResidual> = Vec::new();
        for e in &self.entries {
            match worst.iter_mut().find(|w| w.check == e.check) {
                Some(w) => {
                    if !(e.residual <= w.residual) {
                        w.residual = e.residual;
                        w.z = e.z;
                    }
                }
                None => worst.push(WorstResidual {
                    check: e.check.clone(),
                    residual: e.residual,
                    tolerance: e.tolerance,
                    z: e.z,
                }),
            }
        }
        worst
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

enum PointOutcome {
    Checked(Vec<CheckEntry>),
    Skipped(SkippedPoint),
}

/// Runs every check at each grid point with the default sector `dim/4`.
pub fn run_suite(
    params: &OscillatorParams,
    dim: usize,
    z_grid: &[f64],
    branch: Branch,
) -> Result<VerificationReport> {
    run_suite_with_sector(params, dim, default_sector(dim), z_grid, branch)
}

/// Grid points are evaluated in parallel and merged in grid order.
pub fn run_suite_with_sector(
    params: &OscillatorParams,
    dim: usize,
    sector: usize,
    z_grid: &[f64],
    branch: Branch,
) -> Result<VerificationReport> {
    if dim < MIN_DIM {
        return Err(Error::DimensionTooSmall { dim, min: MIN_DIM });
    }
    if sector < 2 || sector > dim {
        return Err(Error::SectorOutOfRange { sector, dim });
    }
    let choices = z_grid
        .iter()
        .map(|&z| MetricChoice::new(z, branch))
        .collect::<Result<Vec<_>>>()?;

    let outcomes: Vec<PointOutcome> = choices
        .par_iter()
        .map(|choice| evaluate_point(params, choice, dim, sector))
        .collect();

    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for outcome in outcomes {
        match outcome {
            PointOutcome::Checked(e) => entries.extend(e),
            PointOutcome::Skipped(s) => skipped.push(s),
        }
    }
    let passed = entries.iter().filter(|e| e.passed).count();
    let summary = Summary {
        checks: entries.len(),
        passed,
        failed: entries.len() - passed,
        skipped_points: skipped.len(),
    };
    Ok(VerificationReport {
        params: *params,
        branch,
        dim,
        sector,
        spectral_dim: spectral_dim(dim),
        grid: z_grid.to_vec(),
        entries,
        skipped,
        summary,
    })
}

fn skip_reason(err: &Error) -> Option<String> {
    match err {
        Error::InvalidRegion { lower, upper, .. } => {
            Some(format!("singular band [{lower}, {upper}]"))
        }
        Error::ExceptionalPoint { .. } => Some("exceptional point".to_string()),
        Error::Overflow { .. } => Some(format!("metric overflow: {err}")),
        _ => None,
    }
}

fn evaluate_point(
    params: &OscillatorParams,
    choice: &MetricChoice,
    dim: usize,
    sector: usize,
) -> PointOutcome {
    match point_checks(params, choice, dim, sector) {
        Ok(entries) => PointOutcome::Checked(entries),
        Err(err) => match skip_reason(&err) {
            Some(reason) => PointOutcome::Skipped(SkippedPoint {
                z: choice.z(),
                branch: choice.branch(),
                reason,
            }),
            None => PointOutcome::Checked(vec![CheckEntry::new(
                "construction",
                choice,
                f64::INFINITY,
                0.0,
            )]),
        },
    }
}

/// The special case realised at this grid point, if any.
pub fn special_case_at(choice: &MetricChoice) -> Option<SpecialCase> {
    let z = choice.effective_z();
    SpecialCase::ALL
        .into_iter()
        .find(|c| (z - c.effective_z()).abs() <= SPECIAL_Z_WINDOW)
}

fn point_checks(
    params: &OscillatorParams,
    choice: &MetricChoice,
    dim: usize,
    sector: usize,
) -> Result<Vec<CheckEntry>> {
    let set = OperatorSet::with_sector(params, choice, dim, sector)?;
    let s = &set.scalars;
    let mut out = Vec::new();
    let mut push = |name: &str, residual: f64, tol: f64| {
        out.push(CheckEntry::new(name, choice, residual, tol));
    };

    push("quasi_hermiticity", set.quasi_hermiticity_residual()?, OPERATOR_TOL);
    push("hs_hermiticity", sector_hermiticity(&set.h_s, sector)?, OPERATOR_TOL);
    let cf = set.closed_form_hermitian()?;
    push("hs_closed_form", sector_residual(&set.h_s, &cf, sector)?, OPERATOR_TOL);
    let q = set.quadratic_form()?;
    push("quadratic_form", q.hermiticity_defect().max(q.leakage), OPERATOR_TOL);

    let omega = params.big_omega();
    let spectrum = low_spectrum(params, choice, dim, sector / 2)?;
    let worst = spectrum.iter().map(|r| r.abs_error).fold(0.0, f64::max);
    push("spectrum", worst / omega.max(f64::MIN_POSITIVE), SPECTRUM_TOL);

    let o_hat = set.observable_o_hat()?;
    push("observable_o", sector_residual(&set.o_combination, &o_hat, sector)?, OPERATOR_TOL);
    let (xc, pc) = set.closed_form_xp()?;
    let xp = sector_residual(&set.x_transformed, &xc, sector)?
        .max(sector_residual(&set.p_transformed, &pc, sector)?);
    push("transformed_xp", xp, OPERATOR_TOL);
    let reference = LadderMap::closed_form(s, false);
    push(
        "ladder_map",
        set.forward.max_abs_diff(&reference) / reference.max_abs().max(1.0),
        SCALAR_TOL,
    );

    let om2 = params.big_omega_sq();
    push("mu_nu_identity", (s.mu * s.nu - om2).abs() / om2.max(1.0), MU_NU_TOL);
    push("hermiticity_condition", hermiticity_condition_residual(params, s), SCALAR_TOL);
    let cl = classical(params, choice, 1.0)?;
    let e_mass = cl.energy_via_mass(params);
    push(
        "classical_energy",
        (cl.e_classical - e_mass).abs() / cl.e_classical.abs().max(f64::MIN_POSITIVE),
        CLASSICAL_TOL,
    );

    if let Some(case) = special_case_at(choice) {
        let (metric_res, ham_res) = special_case_residuals(params, case, &set)?;
        push("special_case_metric", metric_res, SPECIAL_METRIC_TOL);
        push("special_case_hamiltonian", ham_res, OPERATOR_TOL);
    }
    Ok(out)
}

fn special_case_residuals(
    params: &OscillatorParams,
    case: SpecialCase,
    set: &OperatorSet,
) -> Result<(f64, f64)> {
    let reference = special_case_metric(params, case, set.dim)?
        .scale_real(reference_metric_scale(params, case));
    let metric_res = sector_residual(&set.theta, &reference, set.sector)?;
    let (mu, nu) = case.mu_nu(params);
    let h = closed_form_hermitian(params.omega(), mu, nu, set.dim)?;
    Ok((metric_res, sector_residual(&set.h_s, &h, set.sector)?))
}

/// One row of the special-case comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecialCaseRow {
    pub case: SpecialCase,
    pub label: String,
    pub z: f64,
    pub branch: Branch,
    /// `‖P(Θ(z) − c·Θ_ref)P‖` relative, `None` when `z` is not valid.
    pub metric_residual: Option<f64>,
    pub hamiltonian_residual: Option<f64>,
    pub note: String,
}

/// Compares the general `Θ(z)` and `h_S(z)` with the closed forms at
/// `z = 0, ±1` for `branch`.
pub fn special_cases(
    params: &OscillatorParams,
    dim: usize,
    sector: usize,
    branch: Branch,
) -> Result<Vec<SpecialCaseRow>> {
    SpecialCase::ALL
        .into_iter()
        .map(|case| {
            let choice = case.choice(branch);
            let base = SpecialCaseRow {
                case,
                label: case.label().to_string(),
                z: choice.z(),
                branch,
                metric_residual: None,
                hamiltonian_residual: None,
                note: String::new(),
            };
            match OperatorSet::with_sector(params, &choice, dim, sector) {
                Ok(set) => {
                    let (m, h) = special_case_residuals(params, case, &set)?;
                    Ok(SpecialCaseRow {
                        metric_residual: Some(m),
                        hamiltonian_residual: Some(h),
                        ..base
                    })
                }
                Err(err) => match skip_reason(&err) {
                    Some(reason) => Ok(SpecialCaseRow {
                        note: reason,
                        ..base
                    }),
                    None => Err(err),
                },
            }
        })
        .collect()
}
