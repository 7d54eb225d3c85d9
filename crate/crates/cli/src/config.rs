//! TOML configuration: network scalars in engineering units, the fading
//! law, an optional sweep and optional labelled series.
//!
//! Every key is optional. Omitted network keys take the reference
//! deployment values; dB and dBm inputs are converted to linear SI here and
//! nowhere else.

use crate::error::CliError;
use serde::Deserialize;
use starcov::analysis::{NetworkParams, LAMBDA_B_REF, LAMBDA_R_REF};
use starcov::fading::FadingModel;
use starcov::result::{Engine, Metric, Variant};
use starcov::units;
use std::path::Path;

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub n_elements: Option<usize>,
    /// λ_B in multiples of 2 BS per km².
    pub lambda_b_ratio: Option<f64>,
    /// λ_R in multiples of 10 RIS per km².
    pub lambda_r_ratio: Option<f64>,
    pub p_b_dbm: Option<f64>,
    pub alpha: Option<f64>,
    pub c_r_db: Option<f64>,
    pub beta_t: Option<f64>,
    pub a_t: Option<f64>,
    /// Defaults to `1 - a_t`.
    pub a_c: Option<f64>,
    /// Target rates in bits per channel use; τ = 2^ρ − 1.
    pub rate_t_bpcu: Option<f64>,
    pub rate_c_bpcu: Option<f64>,
    /// Thresholds given directly; exclusive with the matching target rate.
    pub tau_t_db: Option<f64>,
    pub tau_c_db: Option<f64>,
    pub bandwidth_hz: Option<f64>,
    /// Total noise power; overrides the thermal value from the bandwidth.
    pub noise_dbm: Option<f64>,
    pub d_c: Option<f64>,
}

impl NetworkConfig {
    /// Keys set in `over` replace ours.
    pub fn merged(&self, over: &NetworkConfig) -> NetworkConfig {
        macro_rules! pick {
            ($($f:ident),*) => { NetworkConfig { $($f: over.$f.or(self.$f)),* } };
        }
        pick!(
            n_elements, lambda_b_ratio, lambda_r_ratio, p_b_dbm, alpha, c_r_db, beta_t, a_t, a_c, rate_t_bpcu,
            rate_c_bpcu, tau_t_db, tau_c_db, bandwidth_hz, noise_dbm, d_c
        )
    }

    pub fn to_params(&self, model: FadingModel) -> Result<NetworkParams, CliError> {
        let d = NetworkParams::default();
        let threshold = |rate: Option<f64>, db: Option<f64>, name: &str| -> Result<f64, CliError> {
            match (rate, db) {
                (Some(_), Some(_)) => {
                    Err(CliError::Validation(format!("give either rate_{name}_bpcu or tau_{name}_db, not both")))
                }
                (Some(r), None) => Ok(units::rate_to_sinr(r)),
                (None, Some(db)) => Ok(units::db_to_linear(db)),
                (None, None) => Ok(units::rate_to_sinr(0.1)),
            }
        };
        let a_t = self.a_t.unwrap_or(d.a_t);
        let noise = match (self.noise_dbm, self.bandwidth_hz) {
            (Some(dbm), _) => units::dbm_to_watts(dbm),
            (None, Some(w)) => {
                if !(w > 0.0) {
                    return Err(CliError::Validation(format!("bandwidth_hz must be positive, got {w}")));
                }
                units::noise_watts(w)
            }
            (None, None) => d.n0_sq,
        };
        let p = NetworkParams {
            lambda_b: self.lambda_b_ratio.map_or(d.lambda_b, |r| r * LAMBDA_B_REF),
            lambda_r: self.lambda_r_ratio.map_or(d.lambda_r, |r| r * LAMBDA_R_REF),
            p_b: self.p_b_dbm.map_or(d.p_b, units::dbm_to_watts),
            alpha: self.alpha.unwrap_or(d.alpha),
            c_r: self.c_r_db.map_or(d.c_r, units::db_to_linear),
            beta_t: self.beta_t.unwrap_or(d.beta_t),
            a_t,
            a_c: self.a_c.unwrap_or(1.0 - a_t),
            n0_sq: noise,
            tau_t: threshold(self.rate_t_bpcu, self.tau_t_db, "t")?,
            tau_c: threshold(self.rate_c_bpcu, self.tau_c_db, "c")?,
            d_c: self.d_c.unwrap_or(d.d_c),
            n_elements: self.n_elements.unwrap_or(d.n_elements),
            model,
        };
        p.validate()?;
        Ok(p)
    }
}

fn half_sqrt() -> f64 {
    0.5f64.sqrt()
}
fn one() -> f64 {
    1.0
}
fn four() -> f64 {
    4.0
}

/// Fading law; parameters default to the composite-fit reference set
/// (δ = √½, m = k = 4, everything else 1).
#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum FadingConfig {
    Rayleigh {
        #[serde(default = "half_sqrt")]
        delta: f64,
    },
    Nakagami {
        #[serde(default = "four")]
        m: f64,
        #[serde(default = "one")]
        omega: f64,
    },
    Rician {
        #[serde(default = "one")]
        k: f64,
        #[serde(default = "half_sqrt")]
        delta: f64,
        #[serde(default = "one")]
        c: f64,
    },
    Weibull {
        #[serde(default = "four")]
        shape: f64,
        #[serde(default = "one")]
        scale: f64,
    },
    DoubleRayleigh {
        #[serde(default = "half_sqrt")]
        delta_1: f64,
        #[serde(default = "half_sqrt")]
        delta_2: f64,
    },
    DoubleRician {
        #[serde(default = "one")]
        k_1: f64,
        #[serde(default = "one")]
        k_2: f64,
        #[serde(default = "half_sqrt")]
        delta_1: f64,
        #[serde(default = "half_sqrt")]
        delta_2: f64,
        #[serde(default = "one")]
        c_1: f64,
        #[serde(default = "one")]
        c_2: f64,
    },
}

impl Default for FadingConfig {
    fn default() -> Self {
        FadingConfig::DoubleRician {
            k_1: 1.0,
            k_2: 1.0,
            delta_1: half_sqrt(),
            delta_2: half_sqrt(),
            c_1: 1.0,
            c_2: 1.0,
        }
    }
}

impl FadingConfig {
    pub fn model(&self) -> FadingModel {
        match *self {
            FadingConfig::Rayleigh { delta } => FadingModel::Rayleigh { delta },
            FadingConfig::Nakagami { m, omega } => FadingModel::Nakagami { m, omega },
            FadingConfig::Rician { k, delta, c } => FadingModel::Rician { k, delta, c },
            FadingConfig::Weibull { shape, scale } => FadingModel::Weibull { shape, scale },
            FadingConfig::DoubleRayleigh { delta_1, delta_2 } => FadingModel::DoubleRayleigh { delta_1, delta_2 },
            FadingConfig::DoubleRician { k_1, k_2, delta_1, delta_2, c_1, c_2 } => {
                FadingModel::DoubleRician { k_1, k_2, delta_1, delta_2, c_1, c_2 }
            }
        }
    }
}

/// The network quantity a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVar {
    TauTDb,
    TauCDb,
    NElements,
    BetaT,
    LambdaRRatio,
    LambdaBRatio,
    AT,
}

impl SweepVar {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepVar::TauTDb => "tau_t_db",
            SweepVar::TauCDb => "tau_c_db",
            SweepVar::NElements => "n_elements",
            SweepVar::BetaT => "beta_t",
            SweepVar::LambdaRRatio => "lambda_r_ratio",
            SweepVar::LambdaBRatio => "lambda_b_ratio",
            SweepVar::AT => "a_t",
        }
    }

    /// `base` with this variable set to `v`.
    pub fn apply(self, base: &NetworkParams, v: f64) -> Result<NetworkParams, CliError> {
        let mut p = *base;
        match self {
            SweepVar::TauTDb => p.tau_t = units::db_to_linear(v),
            SweepVar::TauCDb => p.tau_c = units::db_to_linear(v),
            SweepVar::NElements => {
                if !(v >= 1.0 && v.fract() == 0.0) {
                    return Err(CliError::Validation(format!("n_elements must be a positive integer, got {v}")));
                }
                p.n_elements = v as usize;
            }
            SweepVar::BetaT => p.beta_t = v,
            SweepVar::LambdaRRatio => p.lambda_r = v * LAMBDA_R_REF,
            SweepVar::LambdaBRatio => p.lambda_b = v * LAMBDA_B_REF,
            SweepVar::AT => {
                p.a_t = v;
                p.a_c = 1.0 - v;
            }
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
enum EngineName {
    Analytic,
    #[serde(alias = "mc")]
    Montecarlo,
}

/// Sweep keys as written; merged with series overrides before use.
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    variable: Option<SweepVar>,
    values: Option<Vec<f64>>,
    start: Option<f64>,
    stop: Option<f64>,
    step: Option<f64>,
    engines: Option<Vec<EngineName>>,
    variants: Option<Vec<String>>,
    metrics: Option<Vec<String>>,
    trials: Option<u64>,
    seed: Option<u64>,
}

impl SweepConfig {
    fn merged(&self, over: &SweepConfig) -> SweepConfig {
        // an explicit list and a range replace each other as a unit
        let (values, start, stop, step) = if over.values.is_some() || over.start.is_some() {
            (over.values.clone(), over.start, over.stop, over.step)
        } else {
            (self.values.clone(), self.start, self.stop, self.step)
        };
        SweepConfig {
            variable: over.variable.or(self.variable),
            values,
            start,
            stop,
            step,
            engines: over.engines.clone().or_else(|| self.engines.clone()),
            variants: over.variants.clone().or_else(|| self.variants.clone()),
            metrics: over.metrics.clone().or_else(|| self.metrics.clone()),
            trials: over.trials.or(self.trials),
            seed: over.seed.or(self.seed),
        }
    }
}

pub const DEFAULT_TRIALS: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 42;

/// A validated sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVar,
    pub values: Vec<f64>,
    pub engines: Vec<Engine>,
    pub variants: Vec<Variant>,
    pub metrics: Vec<Metric>,
    pub trials: u64,
    pub seed: u64,
}

/// `start, start + step, …` up to `stop` inclusive, each value rounded to
/// 12 significant digits so grids print cleanly.
pub fn range_values(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0 && start.is_finite() && stop.is_finite() && stop >= start) {
        return Err(CliError::Validation(format!(
            "sweep range needs start <= stop and step > 0, got {start}..{stop} by {step}"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if n > 100_000 {
        return Err(CliError::Validation(format!("sweep range has {n} points")));
    }
    Ok((0..n)
        .map(|i| {
            let v = start + i as f64 * step;
            format!("{v:.12e}").parse().expect("formatted float parses")
        })
        .collect())
}

impl SweepSpec {
    fn from_config(c: &SweepConfig) -> Result<SweepSpec, CliError> {
        let variable = c.variable.ok_or_else(|| CliError::Validation("sweep.variable is required".into()))?;
        let values = match (&c.values, c.start, c.stop, c.step) {
            (Some(v), None, None, None) => v.clone(),
            (None, Some(a), Some(b), Some(s)) => range_values(a, b, s)?,
            (None, Some(a), None, None) => vec![a],
            _ => {
                return Err(CliError::Validation(
                    "sweep needs either values = [...] or start, stop and step".into(),
                ))
            }
        };
        if values.is_empty() {
            return Err(CliError::Validation("sweep values must not be empty".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Validation("sweep values must be finite".into()));
        }
        let engines = c
            .engines
            .as_deref()
            .unwrap_or(&[EngineName::Analytic])
            .iter()
            .map(|e| match e {
                EngineName::Analytic => Engine::Analytic,
                EngineName::Montecarlo => Engine::MonteCarlo,
            })
            .collect();
        let variants = match &c.variants {
            None => vec![Variant::StarNoma],
            Some(list) => list
                .iter()
                .map(|s| Variant::parse(s).ok_or_else(|| CliError::Validation(format!("unknown variant {s:?}"))))
                .collect::<Result<_, _>>()?,
        };
        let metrics = match &c.metrics {
            None => Metric::ALL.to_vec(),
            Some(list) => list
                .iter()
                .map(|s| Metric::parse(s).ok_or_else(|| CliError::Validation(format!("unknown metric {s:?}"))))
                .collect::<Result<_, _>>()?,
        };
        let spec = SweepSpec {
            variable,
            values,
            engines,
            variants,
            metrics,
            trials: c.trials.unwrap_or(DEFAULT_TRIALS),
            seed: c.seed.unwrap_or(DEFAULT_SEED),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.values.is_empty() {
            return Err(CliError::Validation("sweep values must not be empty".into()));
        }
        if self.engines.is_empty() || self.variants.is_empty() || self.metrics.is_empty() {
            return Err(CliError::Validation("sweep needs at least one engine, variant and metric".into()));
        }
        if self.engines.contains(&Engine::MonteCarlo) && self.trials < 1000 {
            return Err(CliError::Validation(format!(
                "Monte Carlo sweeps need at least 1000 trials, got {}",
                self.trials
            )));
        }
        Ok(())
    }
}

/// One curve of a figure: a label and its own overrides.
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SeriesConfig {
    pub label: String,
    #[serde(default)]
    pub network: NetworkConfig,
    #[serde(default)]
    pub sweep: SweepConfig,
}

/// Composite-power fit report settings.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FitConfig {
    /// Element counts to report; defaults to the network's N.
    pub elements: Option<Vec<usize>>,
    #[serde(default = "default_fit_samples")]
    pub samples: usize,
    /// Run every model of the reference set instead of the configured one.
    #[serde(default)]
    pub all_models: bool,
    pub seed: Option<u64>,
}

fn default_fit_samples() -> usize {
    100_000
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(default)]
    pub network: NetworkConfig,
    pub fading: Option<FadingConfig>,
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub series: Vec<SeriesConfig>,
    pub fit: Option<FitConfig>,
}

/// A sweep to run on one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesRun {
    /// Empty for a plain sweep.
    pub label: String,
    pub params: NetworkParams,
    pub sweep: SweepSpec,
}

/// A loaded, validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub params: NetworkParams,
    /// Empty when the file has no sweep.
    pub runs: Vec<SeriesRun>,
    pub fit: Option<FitConfig>,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config, CliError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        Config::from_raw(&raw)
    }

    pub fn from_raw(raw: &RawConfig) -> Result<Config, CliError> {
        let model = raw.fading.unwrap_or_default().model();
        let params = raw.network.to_params(model)?;
        let base_sweep = raw.sweep.clone().unwrap_or_default();
        let mut runs = Vec::new();
        if raw.series.is_empty() {
            if raw.sweep.is_some() {
                runs.push(SeriesRun { label: String::new(), params, sweep: SweepSpec::from_config(&base_sweep)? });
            }
        } else {
            for s in &raw.series {
                if s.label.is_empty() {
                    return Err(CliError::Validation("every series needs a non-empty label".into()));
                }
                let net = raw.network.merged(&s.network);
                let params = net.to_params(model).map_err(|e| e.context(&format!("series {:?}", s.label)))?;
                let sweep = SweepSpec::from_config(&base_sweep.merged(&s.sweep))
                    .map_err(|e| e.context(&format!("series {:?}", s.label)))?;
                runs.push(SeriesRun { label: s.label.clone(), params, sweep });
            }
        }
        Ok(Config { params, runs, fit: raw.fit.clone() })
    }
}

/// Reads and validates a configuration file; `None` gives the defaults.
pub fn load_config(path: Option<&Path>) -> Result<Config, CliError> {
    match path {
        None => Config::from_toml(""),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            Config::from_toml(&text).map_err(|e| e.context(&p.display().to_string()))
        }
    }
}
