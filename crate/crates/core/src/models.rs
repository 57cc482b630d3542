//! Spin-chain models, their critical dispersions and linear quench schedules.
//!
//! Lattice constant is 1, momenta live in `[-π, π]` and times are
//! dimensionless throughout.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Discriminant of [`SpinModel`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    TransverseIsing,
    Xy,
    Xx,
    Xxx,
    Xxz,
    LmgRegularized,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModelKind::TransverseIsing => "transverse_ising",
            ModelKind::Xy => "xy",
            ModelKind::Xx => "xx",
            ModelKind::Xxx => "xxx",
            ModelKind::Xxz => "xxz",
            ModelKind::LmgRegularized => "lmg_regularized",
        };
        f.write_str(s)
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "transverse_ising" | "ising" => ModelKind::TransverseIsing,
            "xy" => ModelKind::Xy,
            "xx" => ModelKind::Xx,
            "xxx" => ModelKind::Xxx,
            "xxz" => ModelKind::Xxz,
            "lmg_regularized" | "lmg" => ModelKind::LmgRegularized,
            other => return Err(invalid("model.kind", format!("unknown model `{other}`"))),
        })
    }
}

/// A spin chain Hamiltonian together with its parameters.
///
/// Sign conventions follow the usual forms:
///
/// - `TransverseIsing`: `H = -Σ (σᶻσᶻ + λ σˣ)`
/// - `Xy`: `H = -Σ ((1+γ)/2 σˣσˣ + (1-γ)/2 σʸσʸ + λ σᶻ)`
/// - `Xx`: `H = -Σ (σˣσˣ + σʸσʸ) + λ Σ σᶻ`
/// - `Xxx`: `H = Σ σ·σ + λ Σ σᶻ`
/// - `Xxz`: `H = Σ (σˣσˣ + σʸσʸ + Δ σᶻσᶻ) + λ Σ σᶻ`
/// - `LmgRegularized`: nearest-neighbour point-split LMG, see [`crate::lmg`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpinModel {
    TransverseIsing { field: f64 },
    Xy { anisotropy: f64, field: f64 },
    Xx { field: f64 },
    Xxx { field: f64 },
    Xxz { delta: f64, field: f64 },
    LmgRegularized { sites: usize, field: f64 },
}

impl SpinModel {
    pub fn transverse_ising(field: f64) -> Self {
        SpinModel::TransverseIsing { field }
    }

    /// Anisotropic XY chain. `γ = 1` is the transverse Ising chain and is
    /// returned as such.
    pub fn xy(anisotropy: f64, field: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&anisotropy) {
            return Err(invalid("anisotropy", format!("{anisotropy} not in [0, 1]")));
        }
        if anisotropy == 1.0 {
            return Ok(SpinModel::TransverseIsing { field });
        }
        Ok(SpinModel::Xy { anisotropy, field })
    }

    pub fn xx(field: f64) -> Self {
        SpinModel::Xx { field }
    }

    pub fn xxx(field: f64) -> Self {
        SpinModel::Xxx { field }
    }

    /// XXZ chain, restricted to the gapless window `Δ ∈ [-1, 1]`.
    pub fn xxz(delta: f64, field: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&delta) {
            return Err(invalid("delta", format!("{delta} not in [-1, 1]")));
        }
        Ok(SpinModel::Xxz { delta, field })
    }

    pub fn lmg_regularized(sites: usize, field: f64) -> Result<Self> {
        if sites < 2 {
            return Err(invalid(
                "sites",
                format!("LMG needs at least 2 spins, got {sites}"),
            ));
        }
        Ok(SpinModel::LmgRegularized { sites, field })
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            SpinModel::TransverseIsing { .. } => ModelKind::TransverseIsing,
            SpinModel::Xy { .. } => ModelKind::Xy,
            SpinModel::Xx { .. } => ModelKind::Xx,
            SpinModel::Xxx { .. } => ModelKind::Xxx,
            SpinModel::Xxz { .. } => ModelKind::Xxz,
            SpinModel::LmgRegularized { .. } => ModelKind::LmgRegularized,
        }
    }

    pub fn field(&self) -> f64 {
        match *self {
            SpinModel::TransverseIsing { field }
            | SpinModel::Xy { field, .. }
            | SpinModel::Xx { field }
            | SpinModel::Xxx { field }
            | SpinModel::Xxz { field, .. }
            | SpinModel::LmgRegularized { field, .. } => field,
        }
    }

    /// Same model at a different field.
    pub fn with_field(self, field: f64) -> Self {
        match self {
            SpinModel::TransverseIsing { .. } => SpinModel::TransverseIsing { field },
            SpinModel::Xy { anisotropy, .. } => SpinModel::Xy { anisotropy, field },
            SpinModel::Xx { .. } => SpinModel::Xx { field },
            SpinModel::Xxx { .. } => SpinModel::Xxx { field },
            SpinModel::Xxz { delta, .. } => SpinModel::Xxz { delta, field },
            SpinModel::LmgRegularized { sites, .. } => SpinModel::LmgRegularized { sites, field },
        }
    }

    /// LMG coupling `J = 1/(2N)`; `None` for the local chains.
    pub fn coupling(&self) -> Option<f64> {
        match *self {
            SpinModel::LmgRegularized { sites, .. } => Some(1.0 / (2.0 * sites as f64)),
            _ => None,
        }
    }

    /// The quench-model tag, for models that have quench results.
    pub fn quench_model(&self) -> Option<QuenchModel> {
        match self.kind() {
            ModelKind::TransverseIsing => Some(QuenchModel::Ising),
            ModelKind::Xx => Some(QuenchModel::Xx),
            ModelKind::Xxx => Some(QuenchModel::Xxx),
            ModelKind::LmgRegularized => Some(QuenchModel::Lmg),
            ModelKind::Xy | ModelKind::Xxz => None,
        }
    }

    /// Flat `model.key = value` pairs.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("model.kind".to_string(), self.kind().to_string()),
            ("model.field".to_string(), self.field().to_string()),
        ];
        match *self {
            SpinModel::Xy { anisotropy, .. } => out.push(("model.anisotropy".into(), anisotropy.to_string())),
            SpinModel::Xxz { delta, .. } => out.push(("model.delta".into(), delta.to_string())),
            SpinModel::LmgRegularized { sites, .. } => out.push(("model.sites".into(), sites.to_string())),
            _ => {}
        }
        out
    }

    /// Inverse of [`SpinModel::to_pairs`]. Unknown keys are ignored.
    pub fn from_pairs<'a, I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut kind = None;
        let mut field = 0.0;
        let mut anisotropy = None;
        let mut delta = None;
        let mut sites = None;
        for (key, value) in pairs {
            let num = |name: &'static str| {
                value
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| invalid(name, format!("`{value}`: {e}")))
            };
            match key.trim() {
                "model.kind" => kind = Some(value.parse::<ModelKind>()?),
                "model.field" => field = num("model.field")?,
                "model.anisotropy" => anisotropy = Some(num("model.anisotropy")?),
                "model.delta" => delta = Some(num("model.delta")?),
                "model.sites" => {
                    sites = Some(
                        value
                            .trim()
                            .parse::<usize>()
                            .map_err(|e| invalid("model.sites", format!("`{value}`: {e}")))?,
                    )
                }
                _ => {}
            }
        }
        let missing = |name: &'static str| invalid(name, "missing");
        match kind.ok_or_else(|| missing("model.kind"))? {
            ModelKind::TransverseIsing => Ok(SpinModel::transverse_ising(field)),
            ModelKind::Xy => SpinModel::xy(anisotropy.ok_or_else(|| missing("model.anisotropy"))?, field),
            ModelKind::Xx => Ok(SpinModel::xx(field)),
            ModelKind::Xxx => Ok(SpinModel::xxx(field)),
            ModelKind::Xxz => SpinModel::xxz(delta.ok_or_else(|| missing("model.delta"))?, field),
            ModelKind::LmgRegularized => {
                SpinModel::lmg_regularized(sites.ok_or_else(|| missing("model.sites"))?, field)
            }
        }
    }
}

/// The four models with quench results.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuenchModel {
    Ising,
    Xx,
    Xxx,
    Lmg,
}

impl QuenchModel {
    pub const ALL: [QuenchModel; 4] = [
        QuenchModel::Ising,
        QuenchModel::Xx,
        QuenchModel::Xxx,
        QuenchModel::Lmg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QuenchModel::Ising => "ising",
            QuenchModel::Xx => "xx",
            QuenchModel::Xxx => "xxx",
            QuenchModel::Lmg => "lmg",
        }
    }

    /// `(rate r, critical field)` of the ramp `λ(t) = -r t / τq`.
    pub fn ramp(self) -> (f64, f64) {
        match self {
            QuenchModel::Ising | QuenchModel::Lmg => (1.0, 1.0),
            QuenchModel::Xx | QuenchModel::Xxx => (2.0, 2.0),
        }
    }
}

impl fmt::Display for QuenchModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QuenchModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ising" | "transverse_ising" => Ok(QuenchModel::Ising),
            "xx" => Ok(QuenchModel::Xx),
            "xxx" => Ok(QuenchModel::Xxx),
            "lmg" | "lmg_regularized" => Ok(QuenchModel::Lmg),
            other => Err(invalid(
                "model",
                format!("unknown model `{other}` (ising|xx|xxx|lmg)"),
            )),
        }
    }
}

/// Linear ramp `λ(t) = -r t / τq` for `t ≤ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuenchSchedule {
    pub model: QuenchModel,
    pub tau_q: f64,
    pub rate: f64,
    pub critical_field: f64,
}

impl QuenchSchedule {
    pub fn new(model: QuenchModel, tau_q: f64) -> Result<Self> {
        if !(tau_q > 0.0 && tau_q.is_finite()) {
            return Err(invalid("tau_q", format!("must be positive, got {tau_q}")));
        }
        let (rate, critical_field) = model.ramp();
        Ok(QuenchSchedule {
            model,
            tau_q,
            rate,
            critical_field,
        })
    }

    /// Field at time `t ≤ 0`.
    pub fn field_at(&self, t: f64) -> Result<f64> {
        if t > 0.0 {
            return Err(invalid("t", format!("schedule only defined for t <= 0, got {t}")));
        }
        Ok(-self.rate * t / self.tau_q)
    }

    pub fn to_pairs(&self) -> Vec<(String, String)> {
        vec![
            ("quench.model".into(), self.model.to_string()),
            ("quench.tau_q".into(), self.tau_q.to_string()),
        ]
    }
}

pub fn quench_schedule(model: &SpinModel, tau_q: f64) -> Result<QuenchSchedule> {
    let tag = model.quench_model().ok_or_else(|| Error::UnsupportedModel {
        model: model.kind().to_string(),
        reason: "no quench schedule for this model".into(),
    })?;
    QuenchSchedule::new(tag, tau_q)
}

/// Critical-point quasiparticle dispersion `ε(k) = scale·(1 - cos k)`,
/// with `ε ≈ α k²` near `k = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dispersion {
    pub model: QuenchModel,
    scale: f64,
    /// Small-k curvature α.
    pub curvature: f64,
    /// Prefactor A of the excitation probability.
    pub amplitude: f64,
}

impl Dispersion {
    pub fn for_model(model: QuenchModel) -> Result<Self> {
        let (scale, curvature, amplitude) = match model {
            QuenchModel::Ising => (2.0, 1.0, 1.0),
            QuenchModel::Xx => (2.0, 1.0, 0.5),
            QuenchModel::Xxx => (4.0, 2.0, 0.5),
            QuenchModel::Lmg => {
                return Err(Error::UnsupportedModel {
                    model: "lmg".into(),
                    reason: "LMG has no single dispersion; it combines the Ising and XXX parts".into(),
                })
            }
        };
        Ok(Dispersion {
            model,
            scale,
            curvature,
            amplitude,
        })
    }

    pub fn energy(&self, k: f64) -> f64 {
        // 1 - cos k = 2 sin²(k/2), without the cancellation at small k
        let s = (0.5 * k).sin();
        2.0 * self.scale * s * s
    }

    /// Mode frequency `ω_k = 2π ε_k`.
    pub fn frequency(&self, k: f64) -> f64 {
        2.0 * PI * self.energy(k)
    }
}

pub fn dispersion(model: &SpinModel) -> Result<Dispersion> {
    match model.kind() {
        ModelKind::TransverseIsing => Dispersion::for_model(QuenchModel::Ising),
        ModelKind::Xx => Dispersion::for_model(QuenchModel::Xx),
        ModelKind::Xxx => Dispersion::for_model(QuenchModel::Xxx),
        kind => Err(Error::UnsupportedModel {
            model: kind.to_string(),
            reason: "no critical dispersion".into(),
        }),
    }
}

/// Berry phase factor `φ = (1 - cos θ)/2` of a spin tilted by `θ ∈ [0, π]`.
pub fn berry_phase_factor(theta: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(invalid("theta", format!("{theta} not in [0, π]")));
    }
    Ok(0.5 * (1.0 - theta.cos()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn dispersion_values() {
        let ising = dispersion(&SpinModel::transverse_ising(1.0)).unwrap();
        assert_eq!(ising.energy(0.0), 0.0);
        // series 2(k²/2 - k⁴/24 + k⁶/720)
        let k: f64 = 0.1;
        let series = k * k - k.powi(4) / 12.0 + k.powi(6) / 360.0;
        assert!(close(ising.energy(k), series, 1e-12));
        assert!(close(ising.energy(k), 0.00999166944394847, 1e-17));
        assert!(close(ising.energy(k), 0.0099917, 1e-7));
        assert!((ising.energy(k) - ising.curvature * k * k).abs() <= k.powi(4));

        let xxx = dispersion(&SpinModel::xxx(2.0)).unwrap();
        assert!(close(xxx.energy(PI), 8.0, 1e-14));
        assert_eq!((xxx.curvature, xxx.amplitude), (2.0, 0.5));
        let xx = dispersion(&SpinModel::xx(2.0)).unwrap();
        assert_eq!((xx.curvature, xx.amplitude), (1.0, 0.5));
    }

    #[test]
    fn dispersion_rejects_unsupported() {
        assert!(dispersion(&SpinModel::xy(0.5, 1.0).unwrap()).is_err());
        assert!(dispersion(&SpinModel::xxz(0.5, 0.0).unwrap()).is_err());
        assert!(dispersion(&SpinModel::lmg_regularized(4, 0.0).unwrap()).is_err());
        // γ = 1 collapses to the transverse Ising chain
        assert!(dispersion(&SpinModel::xy(1.0, 1.0).unwrap()).is_ok());
    }

    #[test]
    fn schedules() {
        let s = quench_schedule(&SpinModel::transverse_ising(0.0), 100.0).unwrap();
        assert_eq!(s.field_at(-100.0).unwrap(), 1.0);
        let s = quench_schedule(&SpinModel::xx(0.0), 50.0).unwrap();
        assert_eq!(s.field_at(-50.0).unwrap(), 2.0);
        assert_eq!(s.field_at(0.0).unwrap(), 0.0);
        let s = quench_schedule(&SpinModel::lmg_regularized(4, 0.0).unwrap(), 10.0).unwrap();
        assert_eq!(s.field_at(-5.0).unwrap(), 0.5);
        assert_eq!((s.rate, s.critical_field), (1.0, 1.0));
        let s = quench_schedule(&SpinModel::xxx(0.0), 10.0).unwrap();
        assert_eq!((s.rate, s.critical_field), (2.0, 2.0));

        assert!(s.field_at(1.0).is_err());
        assert!(quench_schedule(&SpinModel::xx(0.0), 0.0).is_err());
        assert!(quench_schedule(&SpinModel::xx(0.0), -1.0).is_err());
        assert!(quench_schedule(&SpinModel::xxz(0.0, 0.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn berry_factor() {
        assert_eq!(berry_phase_factor(0.0).unwrap(), 0.0);
        assert!(close(berry_phase_factor(PI / 2.0).unwrap(), 0.5, 1e-15));
        assert_eq!(berry_phase_factor(PI).unwrap(), 1.0);
        assert!(berry_phase_factor(-0.1).is_err());
        assert!(berry_phase_factor(PI + 1e-9).is_err());
    }

    #[test]
    fn constructors_validate() {
        assert!(SpinModel::xy(1.5, 0.0).is_err());
        assert!(SpinModel::xxz(1.5, 0.0).is_err());
        assert!(SpinModel::lmg_regularized(1, 0.0).is_err());
        for n in 2..=10 {
            let j = SpinModel::lmg_regularized(n, 0.0).unwrap().coupling().unwrap();
            assert_eq!(j * 2.0 * n as f64, 1.0);
        }
    }

    #[test]
    fn key_value_roundtrip() {
        let models = [
            SpinModel::transverse_ising(1.0),
            SpinModel::xy(0.3, 0.7).unwrap(),
            SpinModel::xx(0.25),
            SpinModel::xxx(0.0),
            SpinModel::xxz(-0.5, 0.1).unwrap(),
            SpinModel::lmg_regularized(6, 0.4).unwrap(),
        ];
        for m in models {
            let pairs = m.to_pairs();
            let back = SpinModel::from_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str()))).unwrap();
            assert_eq!(back, m);
        }
        assert!(SpinModel::from_pairs([("model.field", "1")]).is_err());
    }

    #[test]
    fn quench_model_parse() {
        for m in QuenchModel::ALL {
            assert_eq!(m.name().parse::<QuenchModel>().unwrap(), m);
        }
        assert!("heisenberg".parse::<QuenchModel>().is_err());
    }
}
