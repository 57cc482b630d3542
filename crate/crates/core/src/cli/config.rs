//! Flat `section.key = value` run configuration.
//!
//! Values are layered: built-in defaults, then the config file, then
//! command-line flags. Lists are comma separated; integer lists also accept
//! inclusive ranges such as `2..=64`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::models::QuenchModel;
use crate::stochastic_phase::{NoiseCalibration, Scheme};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "QUENCHKIT_OUT";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Default,
    File { path: PathBuf, line: usize },
    Flag,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Default => write!(f, "default"),
            Origin::File { path, line } => write!(f, "{}:{line}", path.display()),
            Origin::Flag => write!(f, "command line"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub origin: Origin,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.key.is_empty() {
            write!(f, "{}: {}", self.origin, self.message)
        } else {
            write!(f, "{}: `{}`: {}", self.origin, self.key, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

const DEFAULTS: &[(&str, &str)] = &[
    ("run.model", "ising,xx,xxx,lmg"),
    ("run.L", "2..=64"),
    ("run.tol", "1e-10"),
    ("run.seed", "20240601"),
    ("ou.omega", "1"),
    ("ou.dt", "0.01"),
    ("ou.t_max", "4"),
    ("ou.n_paths", "100000"),
    ("ou.lags", "0,0.5,1,2,3"),
    ("ou.scheme", "exact"),
    ("ou.calibration", "stationary"),
    ("ou.ensemble_paths", "2000"),
    ("exact.L", "1..=64"),
    ("exact.lambda", "0"),
    ("exact.N", "8,10,12"),
    ("exact.ising_lambda", "1"),
    ("exact.xxx_lambda", "0"),
    ("lmg.N", "2..=6"),
    ("lmg.lambda", "0,0.5,1"),
    ("lmg.max_N", "8"),
    ("figures.tau", "200,400,800"),
    ("figures.L", "2..=64"),
    ("figures.fig2_L", "16,32,64"),
    (
        "figures.fig2_tau",
        "250,300,350,400,450,500,600,700,800,900,1000,1250,1500,1750,2000",
    ),
    ("figures.kinks_tau", "1,2,5,10,20,50,100,200,500,1000"),
    ("figures.smax_tau", "2,5,10,20,50,100,200,500,1000"),
    ("figures.gnuplot", "false"),
];

/// Keys without a default. `run.tau` falls back to a per-command grid.
const OPTIONAL_KEYS: &[&str] = &["run.out", "run.tau"];

/// Raw key/value store with the origin of every value.
#[derive(Clone, Debug, Default)]
pub struct RawConfig {
    values: BTreeMap<String, (String, Origin)>,
}

impl RawConfig {
    pub fn with_defaults() -> Self {
        let mut raw = RawConfig::default();
        for (k, v) in DEFAULTS {
            raw.values.insert(k.to_string(), (v.to_string(), Origin::Default));
        }
        raw
    }

    pub fn known_keys() -> impl Iterator<Item = &'static str> {
        DEFAULTS
            .iter()
            .map(|(k, _)| *k)
            .chain(OPTIONAL_KEYS.iter().copied())
    }

    pub fn set(&mut self, key: &str, value: &str, origin: Origin) -> Result<(), ConfigError> {
        let key = key.trim();
        if !OPTIONAL_KEYS.contains(&key) && !DEFAULTS.iter().any(|(k, _)| *k == key) {
            return Err(ConfigError {
                origin,
                key: key.to_string(),
                message: "unknown key".into(),
            });
        }
        self.values
            .insert(key.to_string(), (value.trim().to_string(), origin));
        Ok(())
    }

    /// Applies `key = value` lines. `#` starts a comment.
    pub fn merge_text(&mut self, text: &str, path: &Path) -> Result<(), ConfigError> {
        for (i, raw_line) in text.lines().enumerate() {
            let origin = Origin::File {
                path: path.to_path_buf(),
                line: i + 1,
            };
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError {
                    origin,
                    key: String::new(),
                    message: format!("expected `section.key = value`, got `{line}`"),
                });
            };
            let key = key.trim();
            if !key.contains('.') {
                return Err(ConfigError {
                    origin,
                    key: key.to_string(),
                    message: "keys are dotted as `section.key`".into(),
                });
            }
            self.set(key, value, origin)?;
        }
        Ok(())
    }

    pub fn merge_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
            origin: Origin::Flag,
            key: "--config".into(),
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        self.merge_text(&text, path)
    }

    fn get(&self, key: &str) -> Option<&(String, Origin)> {
        self.values.get(key)
    }

    fn err(&self, key: &str, message: impl Into<String>) -> ConfigError {
        ConfigError {
            origin: self.get(key).map(|v| v.1.clone()).unwrap_or(Origin::Default),
            key: key.to_string(),
            message: message.into(),
        }
    }

    fn raw(&self, key: &str) -> Result<&str, ConfigError> {
        self.get(key)
            .map(|v| v.0.as_str())
            .ok_or_else(|| self.err(key, "missing"))
    }

    fn scalar<T: FromStr>(&self, key: &str) -> Result<T, ConfigError>
    where
        T::Err: fmt::Display,
    {
        let v = self.raw(key)?;
        v.parse::<T>().map_err(|e| self.err(key, format!("`{v}`: {e}")))
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        let v = self.raw(key)?;
        let items: Vec<&str> = v.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if items.is_empty() {
            return Err(self.err(key, "list is empty"));
        }
        items
            .into_iter()
            .map(|s| s.parse::<T>().map_err(|e| self.err(key, format!("`{s}`: {e}"))))
            .collect()
    }

    fn int_list(&self, key: &str) -> Result<Vec<u64>, ConfigError> {
        let v = self.raw(key)?;
        let mut out = Vec::new();
        for item in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if let Some((lo, hi)) = item.split_once("..=") {
                let parse = |s: &str| {
                    s.trim()
                        .parse::<u64>()
                        .map_err(|e| self.err(key, format!("`{item}`: {e}")))
                };
                let (lo, hi) = (parse(lo)?, parse(hi)?);
                if lo > hi {
                    return Err(self.err(key, format!("empty range `{item}`")));
                }
                out.extend(lo..=hi);
            } else {
                out.push(
                    item.parse::<u64>()
                        .map_err(|e| self.err(key, format!("`{item}`: {e}")))?,
                );
            }
        }
        if out.is_empty() {
            return Err(self.err(key, "list is empty"));
        }
        Ok(out)
    }

    fn positive_list(&self, key: &str) -> Result<Vec<f64>, ConfigError> {
        let v: Vec<f64> = self.list(key)?;
        if let Some(bad) = v.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(self.err(key, format!("{bad} is not a positive number")));
        }
        Ok(sorted(v))
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn sorted_ints(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}

#[derive(Clone, Debug, PartialEq)]
pub struct OuConfig {
    pub omega: f64,
    pub dt: f64,
    pub t_max: f64,
    pub n_paths: usize,
    pub lags: Vec<f64>,
    pub scheme: Scheme,
    pub calibration: NoiseCalibration,
    pub ensemble_paths: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactConfig {
    pub block_sizes: Vec<u64>,
    pub fields: Vec<f64>,
    pub ring_sizes: Vec<u64>,
    pub ising_fields: Vec<f64>,
    pub xxx_fields: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LmgConfig {
    pub sizes: Vec<u64>,
    pub fields: Vec<f64>,
    pub max_sites: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiguresConfig {
    pub tau: Vec<f64>,
    pub block_sizes: Vec<u64>,
    pub fig2_block_sizes: Vec<u64>,
    pub fig2_tau: Vec<f64>,
    pub kinks_tau: Vec<f64>,
    pub smax_tau: Vec<f64>,
    pub gnuplot: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub models: Vec<QuenchModel>,
    /// `None` when not given; each command then uses its own grid.
    pub tau: Option<Vec<f64>>,
    pub block_sizes: Vec<u64>,
    pub tol: f64,
    pub seed: u64,
    pub out: PathBuf,
    pub ou: OuConfig,
    pub exact: ExactConfig,
    pub lmg: LmgConfig,
    pub figures: FiguresConfig,
}

impl RunConfig {
    pub fn from_raw(raw: &RawConfig) -> Result<Self, ConfigError> {
        let mut models: Vec<QuenchModel> = raw.list("run.model")?;
        models.sort();
        models.dedup();

        let tol: f64 = raw.scalar("run.tol")?;
        if !(tol > 0.0 && tol <= 1e-6) {
            return Err(raw.err("run.tol", format!("{tol} not in (0, 1e-6]")));
        }

        let out = match raw.get("run.out") {
            Some((v, _)) => PathBuf::from(v),
            None => std::env::var_os(OUT_DIR_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from("out")),
        };

        let scheme = match raw.raw("ou.scheme")? {
            "exact" => Scheme::ExactDiscretization,
            "euler" | "euler-maruyama" => Scheme::EulerMaruyama,
            other => return Err(raw.err("ou.scheme", format!("`{other}`: expected exact or euler"))),
        };
        let calibration = match raw.raw("ou.calibration")? {
            "stationary" => NoiseCalibration::Stationary,
            "unit" => NoiseCalibration::Unit,
            other => {
                return Err(raw.err(
                    "ou.calibration",
                    format!("`{other}`: expected stationary or unit"),
                ))
            }
        };
        let mut lags: Vec<f64> = raw.list("ou.lags")?;
        if let Some(bad) = lags.iter().find(|x| !(**x >= 0.0)) {
            return Err(raw.err("ou.lags", format!("{bad} is negative")));
        }
        lags = sorted(lags);

        let ou = OuConfig {
            omega: raw.scalar("ou.omega")?,
            dt: raw.scalar("ou.dt")?,
            t_max: raw.scalar("ou.t_max")?,
            n_paths: raw.scalar("ou.n_paths")?,
            lags,
            scheme,
            calibration,
            ensemble_paths: raw.scalar("ou.ensemble_paths")?,
        };

        let exact = ExactConfig {
            block_sizes: sorted_ints(raw.int_list("exact.L")?),
            fields: sorted(raw.list("exact.lambda")?),
            ring_sizes: sorted_ints(raw.int_list("exact.N")?),
            ising_fields: sorted(raw.list("exact.ising_lambda")?),
            xxx_fields: sorted(raw.list("exact.xxx_lambda")?),
        };

        let lmg = LmgConfig {
            sizes: sorted_ints(raw.int_list("lmg.N")?),
            fields: sorted(raw.list("lmg.lambda")?),
            max_sites: raw.scalar("lmg.max_N")?,
        };

        let figures = FiguresConfig {
            tau: raw.positive_list("figures.tau")?,
            block_sizes: sorted_ints(raw.int_list("figures.L")?),
            fig2_block_sizes: sorted_ints(raw.int_list("figures.fig2_L")?),
            fig2_tau: raw.positive_list("figures.fig2_tau")?,
            kinks_tau: raw.positive_list("figures.kinks_tau")?,
            smax_tau: raw.positive_list("figures.smax_tau")?,
            gnuplot: raw.scalar("figures.gnuplot")?,
        };

        Ok(RunConfig {
            models,
            tau: match raw.get("run.tau") {
                Some(_) => Some(raw.positive_list("run.tau")?),
                None => None,
            },
            block_sizes: sorted_ints(raw.int_list("run.L")?),
            tol,
            seed: raw.scalar("run.seed")?,
            out,
            ou,
            exact,
            lmg,
            figures,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let mut raw = RawConfig::with_defaults();
        raw.merge_text(text, Path::new("test.cfg"))?;
        RunConfig::from_raw(&raw)
    }

    #[test]
    fn defaults_parse() {
        let cfg = parse("").unwrap();
        assert_eq!(cfg.models, QuenchModel::ALL.to_vec());
        assert_eq!(cfg.exact.block_sizes.len(), 64);
        assert_eq!(cfg.lmg.sizes, vec![2, 3, 4, 5, 6]);
        assert_eq!(cfg.ou.scheme, Scheme::ExactDiscretization);
    }

    #[test]
    fn lists_are_sorted_and_deduplicated() {
        let cfg = parse("run.tau = 100, 1, 10, 1\nrun.model = lmg, ising\n").unwrap();
        assert_eq!(cfg.tau, Some(vec![1.0, 10.0, 100.0]));
        assert_eq!(parse("").unwrap().tau, None);
        assert_eq!(cfg.models, vec![QuenchModel::Ising, QuenchModel::Lmg]);
    }

    #[test]
    fn errors_carry_line_and_key() {
        let e = parse("# comment\n\nrun.tau = 1, x\n").unwrap_err();
        assert_eq!(
            e.origin,
            Origin::File {
                path: "test.cfg".into(),
                line: 3
            }
        );
        assert_eq!(e.key, "run.tau");
        assert!(e.to_string().contains("test.cfg:3"));

        let e = parse("run.tau =\n").unwrap_err();
        assert!(e.message.contains("empty"));
        assert!(parse("nonsense\n").is_err());
        assert!(parse("run.colour = red\n").is_err());
        assert!(parse("run.tol = 0.1\n").is_err());
        assert!(parse("exact.L = 5..=2\n").is_err());
    }

    #[test]
    fn ranges() {
        let cfg = parse("figures.L = 2..=4, 8\n").unwrap();
        assert_eq!(cfg.figures.block_sizes, vec![2, 3, 4, 8]);
    }
}
