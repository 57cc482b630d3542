//! Defect densities after a linear quench through the critical point, closed
//! form against adaptive quadrature.
//!
//! ```text
//! cargo run --example kink_densities
//! ```

use quenchkit::kzm_defects::{defect_density, kz_length, DEFAULT_TOLERANCE};
use quenchkit::QuenchModel;

fn main() -> quenchkit::Result<()> {
    println!(
        "{:>8} {:>6} {:>14} {:>14} {:>9}",
        "tau_q", "model", "closed", "quadrature", "|diff|"
    );
    for tau in [1.0, 10.0, 100.0, 1000.0] {
        for model in QuenchModel::ALL {
            let r = defect_density(model, tau, DEFAULT_TOLERANCE)?;
            println!(
                "{tau:>8} {:>6} {:>14.10} {:>14.10} {:>9.1e}",
                model.name(),
                r.closed_form,
                r.quadrature,
                r.abs_diff
            );
        }
    }
    println!("\nKZ length at tau_q = 100: {:.3}", kz_length(100.0)?);
    Ok(())
}
