//! |⟨m|x̂|n⟩| between the low eigenstates of h_S at a few z.

use swanson_metric::closed_forms::{MetricChoice, OscillatorParams};
use swanson_metric::verification::{ground_state_width, transition_elements};

fn main() -> Result<(), swanson_metric::Error> {
    let params = OscillatorParams::demo();
    for z in [-1.0, -0.5, 0.0, 0.4] {
        let choice = MetricChoice::standard(z)?;
        let (width, exact) = ground_state_width(&params, &choice, 64)?;
        let t = transition_elements(&params, &choice, 64, 4)?;
        println!("z = {z}: ⟨x̂²⟩₀ = {width:.10} (μ/2Ω = {exact:.10}), symmetry defect {:.1e}", t.symmetry_defect());
        for m in 0..t.size() {
            let row: Vec<String> = (0..t.size()).map(|n| format!("{:.6}", t.element(m, n))).collect();
            println!("  {}", row.join("  "));
        }
    }
    Ok(())
}
