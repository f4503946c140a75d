//! Collapse of the singular band and of the level spacing at the exceptional point.

use swanson_metric::verification::exceptional_point_scan;

fn main() -> Result<(), swanson_metric::Error> {
    let (alpha, beta) = (0.5, 0.125);
    for dim in [32, 64] {
        let scan = exceptional_point_scan(alpha, beta, dim)?;
        println!("dim {dim}: ω = {}, z± = {} / {}", scan.omega, scan.z_minus, scan.z_plus);
        for p in &scan.points {
            println!(
                "  δ = {:.0e} (z = {:.4}): Ω = {:.6e}, mean spacing = {:.6e}, max |ΔE/Ω − 1| = {:.2e}",
                p.delta, p.z, p.big_omega, p.mean_spacing, p.max_relative_error
            );
        }
    }
    Ok(())
}
