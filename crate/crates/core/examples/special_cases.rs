//! Θ and h_S at z = 0, ±1 against the closed-form number, position and momentum metrics.

use swanson_metric::closed_forms::{Branch, OscillatorParams};
use swanson_metric::verification::special_cases;

fn main() -> Result<(), swanson_metric::Error> {
    let params = OscillatorParams::demo();
    for branch in [Branch::Standard, Branch::Mirrored] {
        println!("{branch}");
        for row in special_cases(&params, 64, 16, branch)? {
            let show = |r: Option<f64>| r.map_or("-".to_string(), |r| format!("{r:.2e}"));
            println!(
                "  {:<8} z = {:>4}: metric {}, h_S {} {}",
                row.label,
                row.z,
                show(row.metric_residual),
                show(row.hamiltonian_residual),
                row.note
            );
        }
    }
    Ok(())
}
