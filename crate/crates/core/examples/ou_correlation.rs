//! Stationary Ornstein–Uhlenbeck process for the fluctuating Berry-phase
//! factor: correlation against `½e^{-ωΔt}` and the Monte Carlo excitation
//! probability against `e^{-ωτq}`.

use quenchkit::stochastic_phase::{
    analytic_correlation, excitation_probability_mc_omega, lag_correlation, OUParams,
};

fn main() -> quenchkit::Result<()> {
    let params = OUParams::new(1.0, 0.05, 4.0, 20_000, 42);
    println!("omega = 1, {} paths", params.n_paths);
    for lag in [0.0, 0.5, 1.0, 2.0, 3.0] {
        let est = lag_correlation(&params, lag)?;
        let exact = analytic_correlation(1.0, lag);
        println!(
            "  lag {lag:>3}: {:.5} ± {:.5}  analytic {exact:.5}  z = {:+.2}",
            est.mean_product,
            est.std_error,
            est.z_score(exact)
        );
    }

    let base = OUParams::new(1.0, 0.05, 41.0, 20_000, 7);
    println!("\nexcitation probability, tau_q = 1");
    for omega in [0.5, 1.0, 2.0, 3.0] {
        let mc = excitation_probability_mc_omega(omega, 1.0, 2.0, &base)?;
        println!(
            "  omega {omega}: {:.4} ± {:.4}  vs {:.4}",
            mc.p_hat,
            mc.std_error,
            (-omega).exp()
        );
    }
    Ok(())
}
