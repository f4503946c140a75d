//! Growth of Θ as z approaches the singular band from either side.

use swanson_metric::closed_forms::OscillatorParams;
use swanson_metric::verification::{probe_band_edges, weakly_squeezed_z};

fn main() -> Result<(), swanson_metric::Error> {
    let params = OscillatorParams::demo();
    println!("least squeezed z: {:.6}", weakly_squeezed_z(&params)?);
    for p in probe_band_edges(&params, 64, &[1e-1, 1e-2, 1e-3, 1e-4, 1e-6])? {
        println!(
            "{:?} offset {:.0e} (z = {:.6}): ε = {:>8.4}, ln max|Θ| = {:>8.2}, ln λmin = {:>9.2}{}",
            p.side,
            p.offset,
            p.z,
            p.epsilon,
            p.log_max_metric_entry,
            p.log_min_metric_eigenvalue,
            if p.overflow { " (overflow)" } else { "" }
        );
    }
    Ok(())
}
