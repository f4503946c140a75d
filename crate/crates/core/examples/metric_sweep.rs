//! ε, η, θ², μ, ν across z for the demo oscillator, with the singular band.

use swanson_metric::closed_forms::{metric_scalars, singular_band, MetricChoice, OscillatorParams};
use swanson_metric::verification::uniform_grid;

fn main() -> Result<(), swanson_metric::Error> {
    let params = OscillatorParams::demo();
    let band = singular_band(&params)?;
    println!("Ω = {}, band [{:.6}, {:.6}]", params.big_omega(), band.z_minus, band.z_plus);
    println!("{:>6} {:>11} {:>11} {:>11} {:>11} {:>11}", "z", "ε", "η", "θ²", "μ", "ν");
    for z in uniform_grid(-1.0, 1.0, 21) {
        match metric_scalars(&params, &MetricChoice::standard(z)?) {
            Ok(s) => println!(
                "{z:>6.2} {:>11.6} {:>11.6} {:>11.6} {:>11.6} {:>11.6}",
                s.epsilon, s.eta, s.theta_sq, s.mu, s.nu
            ),
            Err(e) => println!("{z:>6.2} {e}"),
        }
    }
    Ok(())
}
