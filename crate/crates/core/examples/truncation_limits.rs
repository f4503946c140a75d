//! Why h_S is built from conjugated ladder operators: the literal product
//! S·H·S⁻¹ degrades with squeezing while the ladder route does not.

use swanson_metric::closed_forms::{MetricChoice, OscillatorParams};
use swanson_metric::operators::{sector_residual, OperatorSet};

fn main() -> Result<(), swanson_metric::Error> {
    let params = OscillatorParams::demo();
    println!("{:>6} {:>5} {:>8} {:>12} {:>12}", "z", "dim", "ε", "ladder", "product");
    for z in [0.0, -0.5, 0.5, 0.95] {
        for dim in [16, 32, 64] {
            let set = OperatorSet::with_sector(&params, &MetricChoice::standard(z)?, dim, 8)?;
            let exact = set.closed_form_hermitian()?;
            println!(
                "{z:>6} {dim:>5} {:>8.4} {:>12.2e} {:>12.2e}",
                set.scalars.epsilon,
                sector_residual(&set.h_s, &exact, 8)?,
                sector_residual(&set.h_s_direct(), &exact, 8)?
            );
        }
    }
    Ok(())
}
