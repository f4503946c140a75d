//! Truncated ladder operators: the commutator defect in the last state and
//! the exact quadratures.

use swanson_metric::linalg::{ladder_a, ladder_adag, momentum_op, number_op, position_op, FockMatrix};

fn main() -> Result<(), swanson_metric::Error> {
    let dim = 8;
    let a = ladder_a(dim)?;
    let adag = ladder_adag(dim)?;
    let comm = a.commutator(&adag)?;
    let diag: Vec<f64> = comm.diagonal().iter().map(|c| c.re).collect();
    println!("diag [a, a†] at dim {dim}: {diag:?}");

    let n = number_op(dim)?;
    println!("|a†a − N| = {:.1e}", (&(&adag * &a) - &n).max_abs_entry());

    let omega = 1.0;
    let x = position_op(dim, omega)?;
    let p = momentum_op(dim, omega)?;
    // [x̂, p̂] = i away from the cut
    let xp = x.commutator(&p)?;
    let inner = xp.project_sector(dim - 1)?;
    let defect = (&inner - &FockMatrix::identity(dim).scale(num_complex::Complex64::i()).project_sector(dim - 1)?)
        .max_abs_entry();
    println!("[x̂, p̂] − i on the leading {} states: {defect:.1e}", dim - 1);
    println!("[x̂, p̂] in the last state: {:.3}", xp[(dim - 1, dim - 1)]);
    Ok(())
}
