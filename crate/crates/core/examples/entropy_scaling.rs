//! Quench-limited block entropy, its saturation value and the largest block
//! for which the scaling law holds.

use quenchkit::entanglement_scaling::{check_constraint, max_block_size, max_entropy, quench_entropy};
use quenchkit::QuenchModel;

fn main() -> quenchkit::Result<()> {
    for tau in [200.0, 400.0, 800.0] {
        println!("tau_q = {tau}");
        for l in [4, 16, 64] {
            let s = quench_entropy(l, tau)?;
            let chk = check_constraint(l, tau, QuenchModel::Xx)?;
            println!(
                "  L = {l:>2}: S = {:.4} bits, S/S_max(xx) = {:.3}",
                s.value, chk.ratio
            );
        }
    }
    println!();
    for model in QuenchModel::ALL {
        let tau = 400.0;
        println!(
            "{:>5}: S_max({tau}) = {:.4}, L_max = {}",
            model.name(),
            max_entropy(model, tau)?.value,
            max_block_size(model, tau)?.value
        );
    }
    Ok(())
}
