//! Low spectrum, ground-state width and transition elements of `h_S(z)`.
//!
//! Squeezed eigenstates spread over many number states, so the spectral
//! quantities for an operator set of `dim` states are read from `h_S` built
//! at `2·dim` states and cut to its exact `2·dim − 1` block.

use serde::{Deserialize, Serialize};

use crate::closed_forms::{mu_nu, Branch, MetricChoice, OscillatorParams};
use crate::error::{Error, Result};
use crate::linalg::{position_op, SpectralDecomposition};
use crate::operators::hermitized_eigen;

pub fn spectral_dim(dim: usize) -> usize {
    2 * dim
}

fn decompose(
    params: &OscillatorParams,
    choice: &MetricChoice,
    dim: usize,
) -> Result<SpectralDecomposition> {
    hermitized_eigen(params, choice, spectral_dim(dim))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub n: usize,
    pub eigenvalue: f64,
    /// `(n + ½)Ω`.
    pub exact: f64,
    pub abs_error: f64,
}

/// The lowest `count` eigenvalues of `h_S(z)` against `(n + ½)Ω`.
pub fn low_spectrum(
    params: &OscillatorParams,
    choice: &MetricChoice,
    dim: usize,
    count: usize,
) -> Result<Vec<SpectrumRow>> {
    let d = decompose(params, choice, dim)?;
    if count > d.eigenvalues.len() {
        return Err(Error::SectorOutOfRange {
            sector: count,
            dim: d.eigenvalues.len(),
        });
    }
    Ok(d.eigenvalues[..count]
        .iter()
        .enumerate()
        .map(|(n, &eigenvalue)| {
            let exact = params.energy(n);
            SpectrumRow {
                n,
                eigenvalue,
                exact,
                abs_error: (eigenvalue - exact).abs(),
            }
        })
        .collect())
}

/// `⟨ψ₀|x̂²|ψ₀⟩` for the ground state of `h_S(z)`, and the oscillator
/// prediction `μ/(2Ω)`.
pub fn ground_state_width(
    params: &OscillatorParams,
    choice: &MetricChoice,
    dim: usize,
) -> Result<(f64, f64)> {
    let d = decompose(params, choice, dim)?;
    let window = d.eigenvectors.dim();
    let x = position_op(window + 1, params.omega())?;
    let x2 = (&x * &x).project_sector(window)?;
    let psi = d.eigenvector(0);
    let x2psi = x2.apply(&psi);
    let measured: f64 = psi.iter().zip(&x2psi).map(|(a, b)| (a.conj() * b).re).sum();
    let (mu, _) = mu_nu(params, choice)?;
    Ok((measured, mu / (2.0 * params.big_omega())))
}

/// `|⟨m|x̂|n⟩|` between eigenstates of `h_S(z)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionTable {
    pub z: f64,
    pub branch: Branch,
    pub elements: Vec<Vec<f64>>,
}

impl TransitionTable {
    pub fn element(&self, m: usize, n: usize) -> f64 {
        self.elements[m][n]
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn symmetry_defect(&self) -> f64 {
        let k = self.size();
        let mut worst: f64 = 0.0;
        for m in 0..k {
            for n in 0..m {
                worst = worst.max((self.elements[m][n] - self.elements[n][m]).abs());
            }
        }
        worst
    }
}

pub fn transition_elements(
    params: &OscillatorParams,
    choice: &MetricChoice,
    dim: usize,
    sector: usize,
) -> Result<TransitionTable> {
    let d = decompose(params, choice, dim)?;
    let window = d.eigenvectors.dim();
    if sector == 0 || sector > window {
        return Err(Error::SectorOutOfRange {
            sector,
            dim: window,
        });
    }
    let x = position_op(window, params.omega())?;
    let images: Vec<_> = (0..sector).map(|n| x.apply(&d.eigenvector(n))).collect();
    let elements = (0..sector)
        .map(|m| {
            let bra = d.eigenvector(m);
            images
                .iter()
                .map(|ket| {
                    bra.iter()
                        .zip(ket)
                        .map(|(b, k)| b.conj() * k)
                        .sum::<num_complex::Complex64>()
                        .norm()
                })
                .collect()
        })
        .collect();
    Ok(TransitionTable {
        z: choice.z(),
        branch: choice.branch(),
        elements,
    })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    #[test]
    fn free_oscillator_transitions() {
        let p = OscillatorParams::new(1.0, 0.2, 0.2).unwrap();
        let t = transition_elements(&p, &MetricChoice::standard(0.0).unwrap(), 32, 4).unwrap();
        let (mu, _) = mu_nu(&p, &MetricChoice::standard(0.0).unwrap()).unwrap();
        assert!((mu - 0.6).abs() < 1e-15);
        assert!((t.element(0, 1).powi(2) - mu / (2.0 * p.big_omega())).abs() < 1e-12);
        assert!(t.element(0, 2) < 1e-12);
        assert!(t.symmetry_defect() < 1e-12);

        let free = OscillatorParams::new(1.0, 0.0, 0.0).unwrap();
        let t = transition_elements(&free, &MetricChoice::standard(0.3).unwrap(), 8, 3).unwrap();
        assert!((t.element(0, 1) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn ground_state_width_matches_mass() {
        let p = OscillatorParams::demo();
        for z in [-0.7, 0.0, 0.3] {
            let (got, want) = ground_state_width(&p, &MetricChoice::standard(z).unwrap(), 32).unwrap();
            assert!((got - want).abs() < 1e-7 * want, "z={z}");
        }
    }

    #[test]
    fn spectrum_rows() {
        let p = OscillatorParams::demo();
        let rows = low_spectrum(&p, &MetricChoice::standard(0.0).unwrap(), 32, 4).unwrap();
        assert_eq!(rows.len(), 4);
        assert!((rows[0].eigenvalue - 0.35355339059327376220).abs() < 1e-12, "{rows:?}");
        assert!(low_spectrum(&p, &MetricChoice::standard(0.0).unwrap(), 4, 9).is_err());
    }
}
