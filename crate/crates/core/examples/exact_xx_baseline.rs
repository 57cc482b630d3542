//! Ground-state block entropy of the critical XX chain from the fermion
//! correlation matrix, checked against exact diagonalization of a ring.

use quenchkit::exact_baselines::{
    block_entropy_ed, entropy_from_correlations, ground_state, ring_correlation_matrix, xx_block_entropy,
    xx_entropy_slope, ChainSpec,
};
use quenchkit::SpinModel;

fn main() -> quenchkit::Result<()> {
    println!("infinite chain, lambda = 0");
    for l in [1, 2, 4, 8, 16, 32, 64] {
        println!("  S({l:>2}) = {:.6}", xx_block_entropy(l, 0.0)?.value);
    }
    println!(
        "  slope in log2 L over [16, 64]: {:.4} (1/3 expected)",
        xx_entropy_slope(16..=64)?
    );

    let n = 10;
    let gs = ground_state(&ChainSpec::ring(SpinModel::xx(0.0), n)?)?;
    println!("\nring of {n}, E0 = {:.10}", gs.energy);
    for l in 1..=n / 2 {
        let block: Vec<usize> = (0..l).collect();
        let ed = block_entropy_ed(&gs.vector, n, &block)?.value;
        let ff = entropy_from_correlations(&ring_correlation_matrix(n, 0.0, l)?)?.value;
        println!("  L = {l}: ED {ed:.10}  fermions {ff:.10}");
    }
    Ok(())
}
