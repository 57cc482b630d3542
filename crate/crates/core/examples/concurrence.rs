//! Nearest-neighbour concurrence of critical rings by exact diagonalization.

use quenchkit::exact_baselines::{concurrence_sweep, nn_concurrence, ChainSpec};
use quenchkit::SpinModel;

fn main() -> quenchkit::Result<()> {
    for (label, model) in [
        ("ising, lambda = 1", SpinModel::transverse_ising(1.0)),
        ("xxx, lambda = 0", SpinModel::xxx(0.0)),
    ] {
        println!("{label}");
        for n in [8, 10, 12] {
            let c = nn_concurrence(&ChainSpec::ring(model, n)?)?;
            println!("  N = {n:>2}: C = {:.6}", c.value);
        }
    }

    println!("\nising ring of 8 across the transition");
    for (n, field, c) in concurrence_sweep(SpinModel::transverse_ising(0.0), &[8], &[0.5, 1.0, 2.0, 5.0])? {
        println!("  N = {n}, lambda = {field}: C = {c:.5}");
    }
    Ok(())
}
