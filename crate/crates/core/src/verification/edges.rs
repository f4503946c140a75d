//! Behaviour of the metric near the singular band and near the exceptional point.

use serde::{Deserialize, Serialize};

use crate::closed_forms::{metric_scalars, singular_band, MetricChoice, OscillatorParams};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, matrix_exp, matrix_exp_shifted};
use crate::operators::build_generator;

use super::spectra::low_spectrum;

pub const EXCEPTIONAL_DELTAS: [f64; 2] = [1e-2, 1e-3];
/// Levels whose spacings are compared with `Ω`.
pub const EXCEPTIONAL_LEVELS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeSide {
    /// `z = z− − offset`, where the metric blows up.
    Lower,
    /// `z = z+ + offset`, where the metric collapses.
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeProbe {
    pub side: EdgeSide,
    pub offset: f64,
    pub z: f64,
    pub epsilon: f64,
    /// Largest `|Θ_ij|`; `f64::MAX` once `Θ` leaves the `f64` range.
    pub max_metric_entry: f64,
    pub overflow: bool,
    pub log_max_metric_entry: f64,
    /// `ln λ_min(Θ)`; `λ_min` itself underflows long before the edge.
    pub log_min_metric_eigenvalue: f64,
}

/// Approaches both band edges from the valid side on the standard branch.
pub fn probe_band_edges(
    params: &OscillatorParams,
    dim: usize,
    offsets: &[f64],
) -> Result<Vec<EdgeProbe>> {
    let band = singular_band(params)?;
    if offsets.iter().any(|&o| !(o > 0.0 && o.is_finite())) {
        return Err(Error::InvalidParameters("offsets must be positive".into()));
    }
    if offsets.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParameters("offsets must be decreasing".into()));
    }
    let mut out = Vec::with_capacity(2 * offsets.len());
    for (side, edge, sign) in [
        (EdgeSide::Lower, band.z_minus, -1.0),
        (EdgeSide::Upper, band.z_plus, 1.0),
    ] {
        for &offset in offsets {
            out.push(probe(params, dim, side, offset, edge + sign * offset)?);
        }
    }
    Ok(out)
}

fn probe(
    params: &OscillatorParams,
    dim: usize,
    side: EdgeSide,
    offset: f64,
    z: f64,
) -> Result<EdgeProbe> {
    let choice = MetricChoice::standard(z)?;
    let epsilon = metric_scalars(params, &choice)?.epsilon;
    let doubled = build_generator(params, &choice, dim)?.scale_real(2.0);
    let spectrum = hermitian_eigen(&doubled)?.eigenvalues;
    let (lo, hi) = (spectrum[0], spectrum[spectrum.len() - 1]);

    let log_max = matrix_exp_shifted(&doubled, hi)?.max_abs_entry().ln() + hi;
    let (max_metric_entry, overflow) = match matrix_exp(&doubled) {
        Ok(theta) => (theta.max_abs_entry(), false),
        Err(Error::Overflow { .. }) => (f64::MAX, true),
        Err(e) => return Err(e),
    };
    Ok(EdgeProbe {
        side,
        offset,
        z,
        epsilon,
        max_metric_entry,
        overflow,
        log_max_metric_entry: log_max,
        log_min_metric_eigenvalue: lo,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpacingPoint {
    pub delta: f64,
    pub omega: f64,
    pub big_omega: f64,
    pub z: f64,
    pub mean_spacing: f64,
    /// `max |ΔE_n/Ω − 1|` over the lowest [`EXCEPTIONAL_LEVELS`] levels.
    pub max_relative_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalScan {
    pub alpha: f64,
    pub beta: f64,
    /// `2√(αβ)`.
    pub omega: f64,
    pub z_minus: f64,
    pub z_plus: f64,
    pub points: Vec<SpacingPoint>,
}

impl ExceptionalScan {
    pub fn band_gap(&self) -> f64 {
        self.z_plus - self.z_minus
    }
}

/// A valid `z` just outside the narrow band near the exceptional point.
///
/// The spectrum of `h_S(z)` does not depend on `z`, but its squeezing in the
/// number basis does: at `z = 0` it grows like `1/δ`, while a tenth of the
/// band width outside the edge facing `z = 0` it stays of order one.
pub fn weakly_squeezed_z(params: &OscillatorParams) -> Result<f64> {
    let band = singular_band(params)?;
    let step = 0.1 * band.width();
    let z = if band.z_minus + band.z_plus > 0.0 {
        band.z_minus - step
    } else {
        band.z_plus + step
    };
    Ok(z.clamp(-1.0, 1.0))
}

/// Locates the collapsed band at `ω = 2√(αβ)` and measures level spacings of
/// `h_S` at `ω = 2√(αβ)(1 + δ)` for each of [`EXCEPTIONAL_DELTAS`].
pub fn exceptional_point_scan(alpha: f64, beta: f64, dim: usize) -> Result<ExceptionalScan> {
    if alpha == beta {
        return Err(Error::HermitianCase);
    }
    let at_ep = OscillatorParams::exceptional(alpha, beta)?;
    let band = singular_band(&at_ep)?;
    let points = EXCEPTIONAL_DELTAS
        .iter()
        .map(|&delta| {
            let params = OscillatorParams::near_exceptional(alpha, beta, delta)?;
            let choice = MetricChoice::standard(weakly_squeezed_z(&params)?)?;
            let rows = low_spectrum(&params, &choice, dim, EXCEPTIONAL_LEVELS)?;
            let omega = params.big_omega();
            let gaps: Vec<f64> = rows.windows(2).map(|w| w[1].eigenvalue - w[0].eigenvalue).collect();
            let mean_spacing = gaps.iter().sum::<f64>() / gaps.len() as f64;
            let max_relative_error = gaps
                .iter()
                .map(|g| (g / omega - 1.0).abs())
                .fold(0.0, f64::max);
            Ok(SpacingPoint {
                delta,
                omega: params.omega(),
                big_omega: omega,
                z: choice.z(),
                mean_spacing,
                max_relative_error,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExceptionalScan {
        alpha,
        beta,
        omega: at_ep.omega(),
        z_minus: band.z_minus,
        z_plus: band.z_plus,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_edges_are_monotone() {
        let p = OscillatorParams::demo();
        let probes = probe_band_edges(&p, 32, &[1e-2, 1e-3, 1e-4]).unwrap();
        let (lower, upper) = probes.split_at(3);
        for w in lower.windows(2) {
            assert!(w[1].epsilon.abs() > w[0].epsilon.abs());
            assert!(w[1].log_max_metric_entry > w[0].log_max_metric_entry);
        }
        for w in upper.windows(2) {
            assert!(w[1].log_min_metric_eigenvalue < w[0].log_min_metric_eigenvalue);
        }
    }

    #[test]
    fn edge_probe_argument_checks() {
        let p = OscillatorParams::demo();
        assert!(probe_band_edges(&p, 8, &[1e-3, 1e-2]).is_err());
        assert!(probe_band_edges(&p, 8, &[0.0]).is_err());
        let h = OscillatorParams::new(1.0, 0.2, 0.2).unwrap();
        assert_eq!(probe_band_edges(&h, 8, &[1e-2]).unwrap_err(), Error::HermitianCase);
    }

    #[test]
    fn exceptional_band_collapses() {
        let scan = exceptional_point_scan(0.5, 0.125, 16).unwrap();
        assert_eq!(scan.omega, 0.5);
        assert!(scan.band_gap().abs() <= 1e-12);
        assert!((scan.z_minus - 0.8).abs() < 1e-15);
        assert!(exceptional_point_scan(0.5, -0.125, 16).is_err());

        let scan = exceptional_point_scan(0.5, 0.125, 64).unwrap();
        for p in &scan.points {
            assert!(p.max_relative_error < 1e-9, "{p:?}");
        }
        assert!(scan.points[1].mean_spacing < scan.points[0].mean_spacing);
    }
}
