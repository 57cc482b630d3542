//! The fluctuating Berry-phase factor as a stationary Ornstein–Uhlenbeck
//! process, `dφ = -ω φ dt + σ dW`.
//!
//! With the default [`NoiseCalibration::Stationary`] the noise amplitude is
//! `σ = √ω`, which gives the stationary two-point function
//! `⟨φ(t)φ(t')⟩ = ½ e^{-ω|t-t'|}`. Every path owns its own ChaCha stream
//! keyed by `(seed, path index)`, so results do not depend on how paths are
//! scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::models::{dispersion, QuenchModel, SpinModel};

/// Default cap on `n_paths × n_times` stored samples (512 MiB of f64).
pub const DEFAULT_MEMORY_CAP: usize = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    EulerMaruyama,
    ExactDiscretization,
}

/// Noise amplitude convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseCalibration {
    /// `σ = √ω`; stationary variance ½ for every ω.
    Stationary,
    /// `σ = 1` (unit white noise); stationary variance `1/(2ω)`.
    Unit,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Initial {
    /// Draw `φ(0)` from the stationary Gaussian.
    Stationary,
    Fixed(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OUParams {
    pub omega: f64,
    pub dt: f64,
    pub t_max: f64,
    pub n_paths: usize,
    pub seed: u64,
    pub scheme: Scheme,
    pub calibration: NoiseCalibration,
    pub initial: Initial,
    pub memory_cap: usize,
}

impl OUParams {
    /// Exact discretization, stationary calibration and start.
    pub fn new(omega: f64, dt: f64, t_max: f64, n_paths: usize, seed: u64) -> Self {
        OUParams {
            omega,
            dt,
            t_max,
            n_paths,
            seed,
            scheme: Scheme::ExactDiscretization,
            calibration: NoiseCalibration::Stationary,
            initial: Initial::Stationary,
            memory_cap: DEFAULT_MEMORY_CAP,
        }
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_calibration(mut self, calibration: NoiseCalibration) -> Self {
        self.calibration = calibration;
        self
    }

    pub fn with_initial(mut self, initial: Initial) -> Self {
        self.initial = initial;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega >= 0.0 && self.omega.is_finite()) {
            return Err(invalid(
                "omega",
                format!("must be finite and >= 0, got {}", self.omega),
            ));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(invalid("dt", format!("must be positive, got {}", self.dt)));
        }
        if !(self.t_max >= 0.0 && self.t_max.is_finite()) {
            return Err(invalid(
                "t_max",
                format!("must be finite and >= 0, got {}", self.t_max),
            ));
        }
        if self.n_paths == 0 {
            return Err(invalid("n_paths", "must be at least 1"));
        }
        if self.scheme == Scheme::EulerMaruyama && self.omega * self.dt > 0.1 {
            return Err(invalid(
                "dt",
                format!(
                    "Euler–Maruyama needs dt <= 0.1/ω, got ω·dt = {}",
                    self.omega * self.dt
                ),
            ));
        }
        if self.calibration == NoiseCalibration::Unit
            && self.omega == 0.0
            && self.initial == Initial::Stationary
        {
            return Err(invalid(
                "initial",
                "unit-noise process has no stationary law at ω = 0",
            ));
        }
        Ok(())
    }

    pub fn n_steps(&self) -> usize {
        (self.t_max / self.dt + 1e-9).floor() as usize
    }

    pub fn n_times(&self) -> usize {
        self.n_steps() + 1
    }

    /// Variance of the stationary law.
    pub fn stationary_variance(&self) -> f64 {
        match self.calibration {
            NoiseCalibration::Stationary => 0.5,
            NoiseCalibration::Unit => 0.5 / self.omega,
        }
    }

    fn noise_amplitude(&self) -> f64 {
        match self.calibration {
            NoiseCalibration::Stationary => self.omega.sqrt(),
            NoiseCalibration::Unit => 1.0,
        }
    }

    fn lag_steps(&self, lag: f64) -> Result<usize> {
        if !(lag >= 0.0) {
            return Err(invalid("lag", format!("must be >= 0, got {lag}")));
        }
        let steps = (lag / self.dt).round();
        if (steps * self.dt - lag).abs() > 1e-9 * lag.max(1.0) {
            return Err(invalid(
                "lag",
                format!("{lag} is not a multiple of dt = {}", self.dt),
            ));
        }
        let steps = steps as usize;
        if steps > self.n_steps() {
            return Err(invalid("lag", format!("{lag} exceeds horizon {}", self.t_max)));
        }
        Ok(steps)
    }
}

/// Sequential sampler of one path.
struct PathSampler {
    rng: ChaCha8Rng,
    decay: f64,
    kick: f64,
    state: f64,
}

impl PathSampler {
    fn new(params: &OUParams, path: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(path as u64);
        let state = match params.initial {
            Initial::Fixed(x) => x,
            Initial::Stationary => {
                let z: f64 = StandardNormal.sample(&mut rng);
                params.stationary_variance().sqrt() * z
            }
        };
        let (w, dt) = (params.omega, params.dt);
        let (decay, kick) = match params.scheme {
            Scheme::ExactDiscretization => {
                let decay = (-w * dt).exp();
                let kick = if w == 0.0 {
                    params.noise_amplitude() * dt.sqrt()
                } else {
                    // σ²(1 - e^{-2ω dt})/(2ω)
                    let s = params.noise_amplitude();
                    (s * s * (-(-2.0 * w * dt).exp_m1()) / (2.0 * w)).sqrt()
                };
                (decay, kick)
            }
            Scheme::EulerMaruyama => (1.0 - w * dt, params.noise_amplitude() * dt.sqrt()),
        };
        PathSampler {
            rng,
            decay,
            kick,
            state,
        }
    }

    fn current(&self) -> f64 {
        self.state
    }

    fn advance(&mut self) -> f64 {
        let z: f64 = StandardNormal.sample(&mut self.rng);
        self.state = self.decay * self.state + self.kick * z;
        self.state
    }
}

/// Stored sample of paths; `values` is path-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PathEnsemble {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub params: OUParams,
}

impl PathEnsemble {
    pub fn n_paths(&self) -> usize {
        self.params.n_paths
    }

    pub fn n_times(&self) -> usize {
        self.times.len()
    }

    pub fn path(&self, i: usize) -> &[f64] {
        let n = self.n_times();
        &self.values[i * n..(i + 1) * n]
    }

    pub fn paths(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.n_times())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationEstimate {
    pub lag: f64,
    pub mean_product: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

impl CorrelationEstimate {
    /// Distance from `target` in standard errors.
    pub fn z_score(&self, target: f64) -> f64 {
        let d = (self.mean_product - target).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.std_error
        }
    }
}

/// `½ e^{-ω|Δt|}`.
pub fn analytic_correlation(omega: f64, lag: f64) -> f64 {
    0.5 * (-omega * lag.abs()).exp()
}

pub fn simulate(params: &OUParams) -> Result<PathEnsemble> {
    params.validate()?;
    let n_times = params.n_times();
    let requested = n_times.saturating_mul(params.n_paths);
    if requested > params.memory_cap {
        return Err(Error::MemoryCap {
            requested,
            cap: params.memory_cap,
        });
    }
    let mut values = vec![0.0; requested];
    values.par_chunks_mut(n_times).enumerate().for_each(|(i, row)| {
        let mut sampler = PathSampler::new(params, i);
        row[0] = sampler.current();
        for slot in row.iter_mut().skip(1) {
            *slot = sampler.advance();
        }
    });
    let times = (0..n_times).map(|i| i as f64 * params.dt).collect();
    Ok(PathEnsemble {
        times,
        values,
        params: *params,
    })
}

/// Per-time average over paths.
pub fn mean_path(ensemble: &PathEnsemble) -> Vec<f64> {
    let n = ensemble.n_paths() as f64;
    let mut sums = vec![0.0; ensemble.n_times()];
    for path in ensemble.paths() {
        for (s, x) in sums.iter_mut().zip(path) {
            *s += x;
        }
    }
    sums.into_iter().map(|s| s / n).collect()
}

/// Per-time unbiased sample variance (0 for a single path).
pub fn variance_path(ensemble: &PathEnsemble) -> Vec<f64> {
    let means = mean_path(ensemble);
    let n = ensemble.n_paths();
    if n < 2 {
        return vec![0.0; means.len()];
    }
    let mut sums = vec![0.0; means.len()];
    for path in ensemble.paths() {
        for ((s, x), m) in sums.iter_mut().zip(path).zip(&means) {
            *s += (x - m) * (x - m);
        }
    }
    sums.into_iter().map(|s| s / (n - 1) as f64).collect()
}

fn lag_mean(path: &[f64], steps: usize) -> f64 {
    let origins = path.len() - steps;
    let sum: f64 = path[..origins]
        .iter()
        .zip(&path[steps..])
        .map(|(a, b)| a * b)
        .sum();
    sum / origins as f64
}

fn summarize(lag: f64, per_path: &[f64]) -> CorrelationEstimate {
    let n = per_path.len();
    let mean = per_path.iter().sum::<f64>() / n as f64;
    let std_error = if n < 2 {
        0.0
    } else {
        let var = per_path.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
        (var / n as f64).sqrt()
    };
    CorrelationEstimate {
        lag,
        mean_product: mean,
        std_error,
        n_samples: n,
    }
}

/// `⟨φ(t)φ(t+Δt)⟩` averaged over paths and every time origin that fits in the
/// horizon. The standard error treats paths as the independent units.
pub fn stationary_correlation(ensemble: &PathEnsemble, lag: f64) -> Result<CorrelationEstimate> {
    let steps = ensemble.params.lag_steps(lag)?;
    let per_path: Vec<f64> = ensemble.paths().map(|p| lag_mean(p, steps)).collect();
    Ok(summarize(lag, &per_path))
}

/// Same estimator as [`stationary_correlation`] on `simulate(params)`, but
/// without storing the ensemble.
pub fn lag_correlation(params: &OUParams, lag: f64) -> Result<CorrelationEstimate> {
    params.validate()?;
    let steps = params.lag_steps(lag)?;
    let n_times = params.n_times();
    let per_path: Vec<f64> = (0..params.n_paths)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(n_times),
            |buf, i| {
                buf.clear();
                let mut sampler = PathSampler::new(params, i);
                buf.push(sampler.current());
                for _ in 1..n_times {
                    buf.push(sampler.advance());
                }
                lag_mean(buf, steps)
            },
        )
        .collect();
    Ok(summarize(lag, &per_path))
}

/// Monte Carlo excitation probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McExcitation {
    pub omega: f64,
    pub p_hat: f64,
    pub std_error: f64,
    /// Set when the raw estimate fell outside `[0, 1]` and was clamped.
    pub clamped: bool,
}

/// 2 for the Ising convention, 1 for XX/XXX.
pub fn excitation_multiplier(model: QuenchModel) -> Result<f64> {
    match model {
        QuenchModel::Ising => Ok(2.0),
        QuenchModel::Xx | QuenchModel::Xxx => Ok(1.0),
        QuenchModel::Lmg => Err(Error::UnsupportedModel {
            model: "lmg".into(),
            reason: "no single-mode excitation probability".into(),
        }),
    }
}

/// `p̂ = m·⟨φ(τq)φ(0)⟩` for a process of frequency `omega`. `params.omega` is
/// replaced; `params.t_max` must reach `tau_q` and `tau_q` must sit on the
/// time grid.
pub fn excitation_probability_mc_omega(
    omega: f64,
    tau_q: f64,
    multiplier: f64,
    params: &OUParams,
) -> Result<McExcitation> {
    if !(tau_q > 0.0) {
        return Err(invalid("tau_q", format!("must be positive, got {tau_q}")));
    }
    let params = OUParams { omega, ..*params };
    let est = lag_correlation(&params, tau_q)?;
    let raw = multiplier * est.mean_product;
    Ok(McExcitation {
        omega,
        p_hat: raw.clamp(0.0, 1.0),
        std_error: multiplier * est.std_error,
        clamped: !(0.0..=1.0).contains(&raw),
    })
}

/// Excitation probability of mode `k` with `ω_k = 2π ε_k` from the model's
/// critical dispersion.
pub fn excitation_probability_mc(
    model: &SpinModel,
    k: f64,
    tau_q: f64,
    params: &OUParams,
) -> Result<McExcitation> {
    let d = dispersion(model)?;
    let m = excitation_multiplier(d.model)?;
    excitation_probability_mc_omega(d.frequency(k), tau_q, m, params)
}
