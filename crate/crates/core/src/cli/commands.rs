use std::fmt;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::entanglement_scaling::{max_entropy, quench_entropy};
use crate::error::Error;
use crate::exact_baselines::{concurrence_sweep, xx_block_entropy};
use crate::kzm_defects::defect_density;
use crate::lmg::{
    decomposition_residual, pairwise_collective_residual, LmgSpec, PairSet, IDENTITY_TOLERANCE,
};
use crate::models::{QuenchModel, SpinModel};
use crate::row;
use crate::stochastic_phase::{lag_correlation, mean_path, simulate, variance_path, OUParams};

use super::config::{ConfigError, RunConfig};
use super::table::Table;

/// Failure classes, each with its own process exit code.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(String),
    Statistical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Statistical(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numeric(m) => write!(f, "numerical failure: {m}"),
            CliError::Statistical(m) => write!(f, "statistical check failed: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. } | Error::UnsupportedModel { .. } | Error::MemoryCap { .. } => {
                CliError::Config(e.to_string())
            }
            Error::Io(io) => CliError::Io(io.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A named CSV output.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub table: Table,
}

impl Artifact {
    fn new(name: &str, table: Table) -> Self {
        Artifact {
            name: name.to_string(),
            table,
        }
    }
}

const KINKS_TAU: [f64; 4] = [1.0, 10.0, 100.0, 1000.0];
const ENTROPY_TAU: [f64; 3] = [200.0, 400.0, 800.0];

fn kinks_table(models: &[QuenchModel], taus: &[f64], tol: f64) -> CliResult<Table> {
    let mut t = Table::new(&["model", "tau_q", "n_closed", "n_quadrature"]);
    for &model in models {
        for &tau in taus {
            let r = defect_density(model, tau, tol)?;
            t.push(row![model.name(), tau, r.closed_form, r.quadrature]);
        }
    }
    Ok(t)
}

pub fn kinks(cfg: &RunConfig) -> CliResult<Vec<Artifact>> {
    let taus = cfg.tau.clone().unwrap_or_else(|| KINKS_TAU.to_vec());
    Ok(vec![Artifact::new(
        "kinks.csv",
        kinks_table(&cfg.models, &taus, cfg.tol)?,
    )])
}

fn entropy_table(models: &[QuenchModel], taus: &[f64], ls: &[u64]) -> CliResult<Table> {
    let mut t = Table::new(&[
        "model",
        "tau_q",
        "L",
        "S_quench",
        "S_max",
        "ratio",
        "L_over_sqrt_tau",
        "S_exact_bits",
    ]);
    for &model in models {
        for &tau in taus {
            let s_max = max_entropy(model, tau)?.value;
            for &l in ls {
                let s = quench_entropy(l, tau)?.value;
                let exact = match model {
                    QuenchModel::Xx => Some(xx_block_entropy(l as usize, 0.0)?.value),
                    _ => None,
                };
                t.push(row![
                    model.name(),
                    tau,
                    l,
                    s,
                    s_max,
                    s / s_max,
                    l as f64 / tau.sqrt(),
                    exact
                ]);
            }
        }
    }
    Ok(t)
}

pub fn entropy(cfg: &RunConfig) -> CliResult<Vec<Artifact>> {
    let taus = cfg.tau.clone().unwrap_or_else(|| ENTROPY_TAU.to_vec());
    Ok(vec![Artifact::new(
        "entropy.csv",
        entropy_table(&cfg.models, &taus, &cfg.block_sizes)?,
    )])
}

/// Standard errors allowed between the estimate and the analytic curve.
pub const OU_Z_LIMIT: f64 = 4.0;

/// Correlation and ensemble tables. The statistical verdict is returned
/// separately so the files are written either way.
pub fn ou(cfg: &RunConfig) -> CliResult<(Vec<Artifact>, Option<CliError>)> {
    let o = &cfg.ou;
    let params = OUParams::new(o.omega, o.dt, o.t_max, o.n_paths, cfg.seed)
        .with_scheme(o.scheme)
        .with_calibration(o.calibration);
    params.validate()?;
    let variance = params.stationary_variance();

    let mut corr = Table::new(&["dt", "mean_product", "std_error", "analytic"]);
    let mut worst: Option<(f64, f64)> = None;
    for &lag in &o.lags {
        let est = lag_correlation(&params, lag)?;
        let analytic = variance * (-o.omega * lag).exp();
        let z = est.z_score(analytic).abs();
        if z > OU_Z_LIMIT && worst.is_none_or(|(_, w)| z > w) {
            worst = Some((lag, z));
        }
        corr.push(row![lag, est.mean_product, est.std_error, analytic]);
    }

    let ens_params = OUParams {
        n_paths: o.ensemble_paths,
        ..params
    };
    let ensemble = simulate(&ens_params)?;
    let mut ens = Table::new(&["t", "mean", "variance"]);
    for ((t, m), v) in ensemble
        .times
        .iter()
        .zip(mean_path(&ensemble))
        .zip(variance_path(&ensemble))
    {
        ens.push(row![*t, m, v]);
    }

    let verdict = worst.map(|(lag, z)| {
        CliError::Statistical(format!(
            "correlation at lag {lag} is {z:.2} standard errors from the analytic value"
        ))
    });
    Ok((
        vec![
            Artifact::new("ou_correlation.csv", corr),
            Artifact::new("ou_ensemble.csv", ens),
        ],
        verdict,
    ))
}

pub fn exact(cfg: &RunConfig) -> CliResult<Vec<Artifact>> {
    let e = &cfg.exact;
    let mut curve = Table::new(&["L", "lambda", "S_exact_bits"]);
    for &l in &e.block_sizes {
        for &field in &e.fields {
            if l == 0 {
                return Err(CliError::Config("exact.L: block sizes start at 1".into()));
            }
            curve.push(row![l, field, xx_block_entropy(l as usize, field)?.value]);
        }
    }
    let sizes: Vec<usize> = e.ring_sizes.iter().map(|&n| n as usize).collect();
    let sweep = |model: SpinModel, fields: &[f64]| -> CliResult<Table> {
        let mut t = Table::new(&["N", "lambda", "concurrence"]);
        for (n, field, c) in concurrence_sweep(model, &sizes, fields)? {
            t.push(row![n, field, c]);
        }
        Ok(t)
    };
    Ok(vec![
        Artifact::new("exact_entropy.csv", curve),
        Artifact::new(
            "concurrence_ising.csv",
            sweep(SpinModel::transverse_ising(1.0), &e.ising_fields)?,
        ),
        Artifact::new("concurrence_xxx.csv", sweep(SpinModel::xxx(0.0), &e.xxx_fields)?),
    ])
}

/// One row of the LMG identity audit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LmgAuditRow {
    pub sites: usize,
    pub field: f64,
    pub pairwise_collective: f64,
    pub decomposition_ring: f64,
    pub decomposition_open: f64,
}

impl LmgAuditRow {
    pub fn passes(&self) -> bool {
        self.pairwise_collective <= IDENTITY_TOLERANCE
            && self.decomposition_ring <= IDENTITY_TOLERANCE
            && self.decomposition_open <= IDENTITY_TOLERANCE
    }
}

pub fn lmg_audit(cfg: &RunConfig) -> CliResult<Vec<LmgAuditRow>> {
    let l = &cfg.lmg;
    if let Some(&n) = l.sizes.iter().find(|&&n| n > l.max_sites) {
        return Err(CliError::Config(format!(
            "lmg.N: {n} exceeds the cap lmg.max_N = {}",
            l.max_sites
        )));
    }
    let mut rows = Vec::new();
    for &n in &l.sizes {
        for &field in &l.fields {
            let spec = LmgSpec::isotropic(n as usize, field)?;
            rows.push(LmgAuditRow {
                sites: n as usize,
                field,
                pairwise_collective: pairwise_collective_residual(&spec)?,
                decomposition_ring: decomposition_residual(&spec, PairSet::Ring)?,
                decomposition_open: decomposition_residual(&spec, PairSet::Open)?,
            });
        }
    }
    Ok(rows)
}

pub fn format_lmg_report(rows: &[LmgAuditRow]) -> String {
    let mut out = format!(
        "{:>3} {:>8} {:>14} {:>14} {:>14}  {}\n",
        "N", "lambda", "pair-coll", "H_reg(ring)", "H_reg(open)", "status"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>3} {:>8} {:>14.3e} {:>14.3e} {:>14.3e}  {}\n",
            r.sites,
            super::table::format_number(r.field),
            r.pairwise_collective,
            r.decomposition_ring,
            r.decomposition_open,
            if r.passes() { "ok" } else { "FAIL" }
        ));
    }
    out
}

/// All figure panels, in manifest order.
pub fn figures(cfg: &RunConfig) -> CliResult<Vec<Artifact>> {
    let f = &cfg.figures;
    let xx = [QuenchModel::Xx];

    let mut fig1_left = Table::new(&["tau_q", "L", "S_quench", "S_exact_bits"]);
    let mut fig1_right = Table::new(&["tau_q", "L", "L_over_sqrt_tau", "ratio"]);
    let xx_rows = entropy_table(&xx, &f.tau, &f.block_sizes)?;
    for r in &xx_rows.rows {
        // model, tau_q, L, S_quench, S_max, ratio, L_over_sqrt_tau, S_exact_bits
        fig1_left.push(vec![r[1].clone(), r[2].clone(), r[3].clone(), r[7].clone()]);
        fig1_right.push(vec![r[1].clone(), r[2].clone(), r[6].clone(), r[5].clone()]);
    }

    let mut fig2_left = Table::new(&["tau_q", "L", "S_quench"]);
    for &tau in &f.tau {
        for &l in &f.block_sizes {
            fig2_left.push(row![tau, l, quench_entropy(l, tau)?.value]);
        }
    }
    let mut fig2_right = Table::new(&["L", "tau_q", "S_quench"]);
    for &l in &f.fig2_block_sizes {
        for &tau in &f.fig2_tau {
            fig2_right.push(row![l, tau, quench_entropy(l, tau)?.value]);
        }
    }

    let mut fig3 = Table::new(&["model", "tau_q", "L", "L_over_sqrt_tau", "S_quench"]);
    for model in QuenchModel::ALL {
        for &tau in &f.tau {
            for &l in &f.block_sizes {
                fig3.push(row![
                    model.name(),
                    tau,
                    l,
                    l as f64 / tau.sqrt(),
                    quench_entropy(l, tau)?.value
                ]);
            }
        }
    }

    let fig4_left = kinks_table(&QuenchModel::ALL, &f.kinks_tau, cfg.tol)?;

    let mut fig4_right = Table::new(&["model", "tau_q", "S_max"]);
    for model in QuenchModel::ALL {
        for &tau in &f.smax_tau {
            fig4_right.push(row![model.name(), tau, max_entropy(model, tau)?.value]);
        }
    }

    Ok(vec![
        Artifact::new("fig1_left.csv", fig1_left),
        Artifact::new("fig1_right.csv", fig1_right),
        Artifact::new("fig2_left.csv", fig2_left),
        Artifact::new("fig2_right.csv", fig2_right),
        Artifact::new("fig3.csv", fig3),
        Artifact::new("fig4_left.csv", fig4_left),
        Artifact::new("fig4_right.csv", fig4_right),
    ])
}

/// `plot` lines for a panel, one curve per value of `group`.
fn gnuplot_script(artifact: &Artifact) -> Option<String> {
    let (x, y, group, title) = match artifact.name.as_str() {
        "fig1_left.csv" => ("L", "S_quench", "tau_q", "XX block entropy"),
        "fig1_right.csv" => ("L_over_sqrt_tau", "ratio", "tau_q", "S/S_max"),
        "fig2_left.csv" => ("L", "S_quench", "tau_q", "LMG block entropy"),
        "fig2_right.csv" => ("tau_q", "S_quench", "L", "LMG entropy vs quench time"),
        "fig3.csv" => ("L_over_sqrt_tau", "S_quench", "tau_q", "S vs L/sqrt(tau_q)"),
        "fig4_left.csv" => ("tau_q", "n_closed", "model", "defect density"),
        "fig4_right.csv" => ("tau_q", "S_max", "model", "maximum entropy"),
        _ => return None,
    };
    let col = |name: &str| {
        artifact
            .table
            .header
            .iter()
            .position(|h| *h == name)
            .map(|i| i + 1)
    };
    let (xc, yc, gc) = (col(x)?, col(y)?, col(group)?);
    let mut groups: Vec<String> = Vec::new();
    for r in &artifact.table.rows {
        let g = r[gc - 1].render();
        if !groups.contains(&g) {
            groups.push(g);
        }
    }
    let plots: Vec<String> = groups
        .iter()
        .map(|g| {
            let filter = if g.parse::<f64>().is_ok() {
                format!("(column({gc}) == {g} ? column({yc}) : 1/0)")
            } else {
                format!("(strcol({gc}) eq \"{g}\" ? column({yc}) : 1/0)")
            };
            format!(
                "'{}' using {xc}:{filter} with linespoints title '{group}={g}'",
                artifact.name
            )
        })
        .collect();
    Some(format!(
        "set datafile separator ','\nset key autotitle columnhead\nset title '{title}'\nset xlabel '{x}'\nset ylabel '{y}'\nplot {}\n",
        plots.join(", \\\n     ")
    ))
}

/// `relative_path,sha256,rows` for each artifact.
pub fn manifest(artifacts: &[Artifact]) -> String {
    let mut out = String::new();
    for a in artifacts {
        let digest = Sha256::digest(a.table.to_csv().as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        out.push_str(&format!("{},{hex},{}\n", a.name, a.table.len()));
    }
    out
}

pub const MANIFEST_NAME: &str = "manifest.csv";

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Writes the artifacts into `dir`, creating it if needed.
pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut written = Vec::new();
    for a in artifacts {
        let path = dir.join(&a.name);
        std::fs::write(&path, a.table.to_csv()).map_err(|e| io_err(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

/// Figure CSVs, the manifest and, if enabled, one gnuplot script per panel.
pub fn write_figures(dir: &Path, artifacts: &[Artifact], gnuplot: bool) -> CliResult<Vec<PathBuf>> {
    let mut written = write_artifacts(dir, artifacts)?;
    let path = dir.join(MANIFEST_NAME);
    std::fs::write(&path, manifest(artifacts)).map_err(|e| io_err(&path, e))?;
    written.push(path);
    if gnuplot {
        for a in artifacts {
            if let Some(script) = gnuplot_script(a) {
                let path = dir.join(a.name.replace(".csv", ".gp"));
                std::fs::write(&path, script).map_err(|e| io_err(&path, e))?;
                written.push(path);
            }
        }
    }
    Ok(written)
}
