//! Excitation probabilities and kink densities after a linear quench.
//!
//! Every local model shares the Gaussian profile `p_k = A·exp(-2π α τq k²)`;
//! the density is `(1/2π)∫_{-π}^{π} p_k dk`. The closed forms extend the
//! integral to the whole real line, so they differ from the quadrature only by
//! the Gaussian tail beyond `|k| = π`.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::models::{Dispersion, QuenchModel};
use crate::quadrature;

/// Default absolute tolerance for density quadrature.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

const MAX_INTERVALS: usize = 4000;

/// Excitation profile of one local model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KinkModelSpec {
    pub model: QuenchModel,
    /// A, the probability at `k = 0`.
    pub amplitude: f64,
    /// α, the small-k curvature of the dispersion.
    pub curvature: f64,
}

impl KinkModelSpec {
    pub fn ising() -> Self {
        Self::from_dispersion(&Dispersion::for_model(QuenchModel::Ising).expect("ising"))
    }

    pub fn xx() -> Self {
        Self::from_dispersion(&Dispersion::for_model(QuenchModel::Xx).expect("xx"))
    }

    pub fn xxx() -> Self {
        Self::from_dispersion(&Dispersion::for_model(QuenchModel::Xxx).expect("xxx"))
    }

    pub fn from_dispersion(d: &Dispersion) -> Self {
        KinkModelSpec {
            model: d.model,
            amplitude: d.amplitude,
            curvature: d.curvature,
        }
    }

    fn width(&self, tau_q: f64) -> f64 {
        2.0 * PI * self.curvature * tau_q
    }
}

/// Outcome of a density computation by both routes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KinkDensityResult {
    pub model: QuenchModel,
    pub tau_q: f64,
    pub closed_form: f64,
    pub quadrature: f64,
    pub abs_diff: f64,
    pub quadrature_tolerance: f64,
    /// Upper bound on the part of the closed form coming from `|k| > π`.
    pub tail_bound: f64,
}

/// `p_k = A·exp(-2π α τq k²)` for `k ∈ [-π, π]`, `τq > 0`.
pub fn excitation_probability(spec: &KinkModelSpec, k: f64, tau_q: f64) -> f64 {
    spec.amplitude * (-spec.width(tau_q) * k * k).exp()
}

fn check_tau(tau_q: f64) -> Result<()> {
    if tau_q > 0.0 && tau_q.is_finite() {
        Ok(())
    } else {
        Err(invalid("tau_q", format!("must be positive, got {tau_q}")))
    }
}

/// `(A/2π)·1/√(2 α τq)`.
pub fn kink_density_closed_form(spec: &KinkModelSpec, tau_q: f64) -> Result<f64> {
    check_tau(tau_q)?;
    Ok(spec.amplitude / (2.0 * PI) / (2.0 * spec.curvature * tau_q).sqrt())
}

/// `(1/2π)∫_{-π}^{π} p_k dk` by adaptive quadrature to absolute tolerance `tol`.
pub fn kink_density_quadrature(spec: &KinkModelSpec, tau_q: f64, tol: f64) -> Result<f64> {
    check_tau(tau_q)?;
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(invalid("tol", format!("must lie in (0, 1e-6], got {tol}")));
    }
    let width = spec.width(tau_q);
    // even integrand: (1/2π)∫_{-π}^{π} = (1/π)∫_0^π
    let scale = spec.amplitude / PI;
    let f = |k: f64| (-width * k * k).exp();
    // For large τq the peak is far narrower than [0, π] and can slip between
    // the first set of nodes, so the core is integrated on its own.
    let core = (8.0 / width.sqrt()).min(PI);
    let mut value = quadrature::integrate(f, 0.0, core, 0.5 * tol / scale, MAX_INTERVALS)?.value;
    if core < PI {
        value += quadrature::integrate(f, core, PI, 0.5 * tol / scale, MAX_INTERVALS)?.value;
    }
    Ok(scale * value)
}

/// `(A/π)∫_π^∞ e^{-w k²} dk ≤ (A/π)·e^{-w π²}/(2 w π)`.
pub fn tail_bound(spec: &KinkModelSpec, tau_q: f64) -> f64 {
    let w = spec.width(tau_q);
    spec.amplitude / PI * (-w * PI * PI).exp() / (2.0 * w * PI)
}

pub fn kink_density(spec: &KinkModelSpec, tau_q: f64, tol: f64) -> Result<KinkDensityResult> {
    let closed_form = kink_density_closed_form(spec, tau_q)?;
    let quadrature = kink_density_quadrature(spec, tau_q, tol)?;
    Ok(KinkDensityResult {
        model: spec.model,
        tau_q,
        closed_form,
        quadrature,
        abs_diff: (closed_form - quadrature).abs(),
        quadrature_tolerance: tol,
        tail_bound: tail_bound(spec, tau_q),
    })
}

/// LMG density `n4 = n1 + n3` (Ising part plus XXX part).
pub fn lmg_kink_density(tau_q: f64) -> Result<f64> {
    Ok(kink_density_closed_form(&KinkModelSpec::ising(), tau_q)?
        + kink_density_closed_form(&KinkModelSpec::xxx(), tau_q)?)
}

/// Density for any of the four quench models; LMG is assembled from its
/// Ising and XXX parts on both routes.
pub fn defect_density(model: QuenchModel, tau_q: f64, tol: f64) -> Result<KinkDensityResult> {
    match model {
        QuenchModel::Ising => kink_density(&KinkModelSpec::ising(), tau_q, tol),
        QuenchModel::Xx => kink_density(&KinkModelSpec::xx(), tau_q, tol),
        QuenchModel::Xxx => kink_density(&KinkModelSpec::xxx(), tau_q, tol),
        QuenchModel::Lmg => {
            let ising = kink_density(&KinkModelSpec::ising(), tau_q, tol / 2.0)?;
            let xxx = kink_density(&KinkModelSpec::xxx(), tau_q, tol / 2.0)?;
            let closed_form = lmg_kink_density(tau_q)?;
            let quadrature = ising.quadrature + xxx.quadrature;
            Ok(KinkDensityResult {
                model,
                tau_q,
                closed_form,
                quadrature,
                abs_diff: (closed_form - quadrature).abs(),
                quadrature_tolerance: tol,
                tail_bound: ising.tail_bound + xxx.tail_bound,
            })
        }
    }
}

/// Kibble–Zurek length `ξ̂ = √τq`.
pub fn kz_length(tau_q: f64) -> Result<f64> {
    check_tau(tau_q)?;
    Ok(tau_q.sqrt())
}
