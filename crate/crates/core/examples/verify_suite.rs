//! Runs the identity suite for the demo oscillator on both branches.

use swanson_metric::verification::{default_grid, run_suite};
use swanson_metric::{Branch, OscillatorParams};

fn main() -> Result<(), swanson_metric::Error> {
    let params = OscillatorParams::demo();
    for branch in [Branch::Standard, Branch::Mirrored] {
        let report = run_suite(&params, 64, &default_grid(), branch)?;
        let s = &report.summary;
        println!(
            "{branch}: {} checks, {} passed, {} failed, {} points skipped",
            s.checks, s.passed, s.failed, s.skipped_points
        );
        for w in report.worst_residuals() {
            println!("  {:<26} {:>10.3e}  (tol {:.0e}, z = {:+.2})", w.check, w.residual, w.tolerance, w.z);
        }
        for skip in &report.skipped {
            println!("  skipped z = {:+.2}: {}", skip.z, skip.reason);
        }
    }
    Ok(())
}
