//! LMG operator identities: the pairwise sum against the collective-spin
//! form, and the regularized Hamiltonian split into an XXX part and an
//! Ising part.

use quenchkit::lmg::{
    decompose, decomposition_residual, pairwise_collective_residual, sz_commutator_norm, LmgSpec, PairSet,
};

fn main() -> quenchkit::Result<()> {
    println!(
        "{:>2} {:>6} {:>12} {:>12} {:>12}",
        "N", "lambda", "pair/coll", "ring split", "open split"
    );
    for n in 2..=6 {
        for field in [0.0, 0.5, 1.0] {
            let spec = LmgSpec::isotropic(n, field)?;
            println!(
                "{n:>2} {field:>6} {:>12.1e} {:>12.1e} {:>12.1e}",
                pairwise_collective_residual(&spec)?,
                decomposition_residual(&spec, PairSet::Ring)?,
                decomposition_residual(&spec, PairSet::Open)?
            );
        }
    }

    let spec = LmgSpec::isotropic(4, 0.5)?;
    let parts = decompose(&spec, PairSet::Ring)?;
    println!(
        "\nN = 4: fields {} + {}, [H1, Sz] = {:.1e}, [H2, Sz] = {:.1e}",
        parts.h1_field,
        parts.h2_field,
        sz_commutator_norm(&parts.h1),
        sz_commutator_norm(&parts.h2)
    );
    Ok(())
}
