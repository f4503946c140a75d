//! Builds Θ(z) and h_S(z) for one z and checks them against the closed forms.

use swanson_metric::closed_forms::{MetricChoice, OscillatorParams};
use swanson_metric::operators::{sector_hermiticity, sector_residual, OperatorSet};
use swanson_metric::verification::low_spectrum;

fn main() -> Result<(), swanson_metric::Error> {
    let params = OscillatorParams::demo();
    let z = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(-0.3);
    let choice = MetricChoice::standard(z)?;
    let set = OperatorSet::build(&params, &choice, 64)?;
    let s = &set.scalars;
    println!("z = {z}: ε = {:.6}, η = {:.6}, μ = {:.6}, ν = {:.6}", s.epsilon, s.eta, s.mu, s.nu);
    println!("ΘH − H†Θ: {:.2e}", set.quasi_hermiticity_residual()?);
    println!("h_S − h_S†: {:.2e}", sector_hermiticity(&set.h_s, set.sector)?);
    println!("h_S − ½(μp̂² + νx̂²): {:.2e}", sector_residual(&set.h_s, &set.closed_form_hermitian()?, set.sector)?);
    let q = set.quadratic_form()?;
    println!("h_S ≈ {:.6}(N+½) + {:.6}a² + {:.6}a†²", q.u, q.v, q.w);
    for row in low_spectrum(&params, &choice, 64, 5)? {
        println!("  E_{} = {:.12} (exact {:.12})", row.n, row.eigenvalue, row.exact);
    }
    Ok(())
}
