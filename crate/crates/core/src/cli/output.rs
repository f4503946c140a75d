//! CSV and JSON renderings of sweep rows, reports, spectra and special cases.

use serde::Serialize;

use super::config::Format;
use super::CliError;
use crate::closed_forms::Branch;
use crate::verification::{SpecialCaseRow, SpectrumRow, VerificationReport};

/// 17 significant digits, `.` decimal point.
pub fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn optional(x: Option<f64>) -> String {
    x.map(number).unwrap_or_default()
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

/// One grid point of a parameter sweep. Numeric fields are `None` where `z`
/// is not valid; the band fields are `None` only in the Hermitian case.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub z: f64,
    pub branch: Branch,
    pub valid: bool,
    pub epsilon: Option<f64>,
    pub eta: Option<f64>,
    pub theta_sq: Option<f64>,
    pub mu: Option<f64>,
    pub nu: Option<f64>,
    pub mu_nu_minus_omega_sq: Option<f64>,
    pub mass: Option<f64>,
    pub z_minus: Option<f64>,
    pub z_plus: Option<f64>,
}

pub const SWEEP_COLUMNS: [&str; 12] = [
    "z",
    "branch",
    "valid",
    "epsilon",
    "eta",
    "theta_sq",
    "mu",
    "nu",
    "mu_nu_minus_omega_sq",
    "mass",
    "z_minus",
    "z_plus",
];

pub fn sweep(rows: &[SweepRow], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => json(rows),
        Format::Csv => csv_table(
            &SWEEP_COLUMNS,
            rows.iter().map(|r| {
                vec![
                    number(r.z),
                    r.branch.to_string(),
                    r.valid.to_string(),
                    optional(r.epsilon),
                    optional(r.eta),
                    optional(r.theta_sq),
                    optional(r.mu),
                    optional(r.nu),
                    optional(r.mu_nu_minus_omega_sq),
                    optional(r.mass),
                    optional(r.z_minus),
                    optional(r.z_plus),
                ]
            }),
        ),
    }
}

/// Check entries followed by skipped points; skipped rows carry the reason in
/// `note` and leave the numeric fields empty.
pub fn report(report: &VerificationReport, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let entries = report.entries.iter().map(|e| {
                vec![
                    e.check.clone(),
                    number(e.z),
                    e.branch.to_string(),
                    number(e.residual),
                    number(e.tolerance),
                    e.passed.to_string(),
                    String::new(),
                ]
            });
            let skipped = report.skipped.iter().map(|s| {
                vec![
                    "skipped".to_string(),
                    number(s.z),
                    s.branch.to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                    s.reason.clone(),
                ]
            });
            csv_table(
                &["check", "z", "branch", "residual", "tolerance", "passed", "note"],
                entries.chain(skipped),
            )
        }
    }
}

pub fn spectrum(rows: &[SpectrumRow], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => json(rows),
        Format::Csv => csv_table(
            &["n", "eigenvalue", "exact", "abs_error"],
            rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    number(r.eigenvalue),
                    number(r.exact),
                    number(r.abs_error),
                ]
            }),
        ),
    }
}

pub fn special_cases(rows: &[SpecialCaseRow], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => json(rows),
        Format::Csv => csv_table(
            &["case", "z", "branch", "metric_residual", "hamiltonian_residual", "note"],
            rows.iter().map(|r| {
                vec![
                    r.label.clone(),
                    number(r.z),
                    r.branch.to_string(),
                    optional(r.metric_residual),
                    optional(r.hamiltonian_residual),
                    r.note.clone(),
                ]
            }),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(number(0.1), "1.0000000000000001e-1");
        assert_eq!(number(-1.0), "-1.0000000000000000e0");
        let x = std::f64::consts::PI;
        assert_eq!(number(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn sweep_csv_shape() {
        let row = SweepRow {
            z: 0.6,
            branch: Branch::Standard,
            valid: false,
            epsilon: None,
            eta: None,
            theta_sq: None,
            mu: None,
            nu: None,
            mu_nu_minus_omega_sq: None,
            mass: None,
            z_minus: Some(0.5),
            z_plus: Some(0.9),
        };
        let text = String::from_utf8(sweep(&[row], Format::Csv).unwrap()).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_COLUMNS.join(","));
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields.len(), 12);
        assert_eq!(fields[2], "false");
        assert!(fields[3..10].iter().all(|f| f.is_empty()));
    }
}
