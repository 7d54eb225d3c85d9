//! Sweep execution and CSV emission.

use crate::config::{SeriesRun, SweepSpec};
use crate::error::CliError;
use rayon::prelude::*;
use starcov::analysis::{self as an, AnalyticValue, Architecture, NetworkParams, Ue};
use starcov::montecarlo::{simulate, topology_of, Batch, Topology};
use starcov::result::{Engine, Flag, Metric, MetricResult, Variant};
use std::cmp::Ordering;
use std::collections::HashMap;

pub const CSV_HEADER: &str = "sweep_var,value,engine,variant,metric,result,ci95,trials,seed,flags";

/// One output line.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub sweep_var: String,
    /// `None` for single-point runs.
    pub value: Option<f64>,
    pub result: MetricResult,
}

impl Row {
    pub fn to_csv(&self) -> String {
        let r = &self.result;
        let opt = |v: Option<String>| v.unwrap_or_default();
        let mc = r.engine == Engine::MonteCarlo;
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.sweep_var,
            opt(self.value.map(|v| v.to_string())),
            r.engine,
            r.variant,
            r.metric,
            if r.value.is_nan() { String::new() } else { r.value.to_string() },
            opt(r.ci95.map(|c| c.to_string())),
            if mc { r.trials.to_string() } else { String::new() },
            opt(r.seed.map(|s| s.to_string())),
            r.flags_string(),
        )
    }
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

fn analytic_value(p: &NetworkParams, variant: Variant, metric: Metric) -> starcov::Result<AnalyticValue> {
    use Metric::*;
    use Variant::*;
    match (variant, metric) {
        (StarNoma, CoverageT) => an::coverage_typical_star(p),
        (StarNoma, CoverageC) => an::coverage_connected_star(p),
        (StarNoma, RateT) => an::rate_typical_star(p),
        (StarNoma, RateC) => an::rate_connected_star(p),
        (StarNomaMaxBeta, CoverageT) => an::coverage_typical_star_maxbeta(p),
        (StarNomaMaxBeta, CoverageC) => an::coverage_connected_star_maxbeta(p),
        (StarNomaMaxBeta, RateT) => an::rate_typical_star_maxbeta(p),
        (StarNomaMaxBeta, RateC) => an::rate_connected_star_maxbeta(p),
        (StarNomaTransmit, CoverageT) => an::coverage(p, Architecture::StarTransmit, Ue::Typical),
        (StarNomaTransmit, CoverageC) => an::coverage(p, Architecture::StarTransmit, Ue::Connected),
        (StarNomaTransmit, RateT) => an::rate_typical(p, Architecture::StarTransmit),
        (StarNomaTransmit, RateC) => an::rate_connected(p, Architecture::StarTransmit),
        (ConvNoma, CoverageT) => an::coverage_typical_conventional(p),
        (ConvNoma, CoverageC) => an::coverage_connected_conventional(p),
        (ConvNoma, RateT) => an::rate_typical_conventional(p),
        (ConvNoma, RateC) => an::rate_connected_conventional(p),
        (StarOma, CoverageT) => an::coverage_oma(p, Ue::Typical),
        (StarOma, CoverageC) => an::coverage_oma(p, Ue::Connected),
        (StarOma, RateT) => an::rate_oma(p, Ue::Typical),
        (StarOma, RateC) => an::rate_oma(p, Ue::Connected),
        (_, SumRate) => unreachable!("sum rate is assembled by the caller"),
    }
}

/// Analytic values of `metrics` for one variant, computing each rate once
/// even when the sum rate is also requested.
pub fn analytic_metrics(p: &NetworkParams, variant: Variant, metrics: &[Metric]) -> Vec<starcov::Result<MetricResult>> {
    let mut cache: HashMap<Metric, starcov::Result<AnalyticValue>> = HashMap::new();
    let mut get = |m: Metric| cache.entry(m).or_insert_with(|| analytic_value(p, variant, m)).clone();
    metrics
        .iter()
        .map(|&metric| {
            let v = if metric == Metric::SumRate {
                let t = get(Metric::RateT)?;
                let c = get(Metric::RateC)?;
                AnalyticValue { value: t.value + c.value, infeasible: t.infeasible }
            } else {
                get(metric)?
            };
            let r = MetricResult::analytic(variant, metric, v.value);
            Ok(if v.infeasible { r.with_flag(Flag::Infeasible) } else { r })
        })
        .collect()
}

fn error_result(engine: Engine, variant: Variant, metric: Metric, spec: &SweepSpec, e: &str) -> MetricResult {
    let mc = engine == Engine::MonteCarlo;
    MetricResult {
        engine,
        variant,
        metric,
        value: f64::NAN,
        ci95: None,
        trials: if mc { spec.trials } else { 0 },
        seed: mc.then_some(spec.seed),
        flags: vec![Flag::Error(e.to_string())],
    }
}

/// Simulated batches shared by every point with the same network structure.
#[derive(Default)]
pub struct BatchCache {
    batches: Vec<(String, Result<Batch, starcov::Error>)>,
}

impl BatchCache {
    fn key(p: &NetworkParams, topology: Topology, trials: u64, seed: u64) -> String {
        format!(
            "{topology:?}|{}|{:x}|{:x}|{:x}|{:x}|{:?}|{trials}|{seed}",
            p.n_elements,
            p.lambda_b.to_bits(),
            p.lambda_r.to_bits(),
            p.alpha.to_bits(),
            p.d_c.to_bits(),
            p.model
        )
    }

    fn get(&mut self, p: &NetworkParams, topology: Topology, trials: u64, seed: u64) -> &Result<Batch, starcov::Error> {
        let key = Self::key(p, topology, trials, seed);
        let pos = match self.batches.iter().position(|(k, _)| *k == key) {
            Some(i) => i,
            None => {
                self.batches.push((key, simulate(p, topology, trials, seed, None)));
                self.batches.len() - 1
            }
        };
        &self.batches[pos].1
    }
}

fn row_order(a: &Row, b: &Row) -> Ordering {
    let va = a.value.unwrap_or(f64::NEG_INFINITY);
    let vb = b.value.unwrap_or(f64::NEG_INFINITY);
    va.total_cmp(&vb)
        .then(a.result.engine.cmp(&b.result.engine))
        .then(a.result.variant.cmp(&b.result.variant))
        .then(a.result.metric.cmp(&b.result.metric))
}

/// Evaluates every (value, engine, variant, metric) of one series. Rows come
/// back sorted; failures become `error=` flags with an empty result.
/// Simulations are taken from and added to `cache`.
pub fn run_series(run: &SeriesRun, cache: &mut BatchCache) -> Result<Vec<Row>, CliError> {
    let spec = &run.sweep;
    spec.validate()?;
    if run.label.contains([',', '\n', '"']) {
        return Err(CliError::Validation(format!("series label {:?} may not contain commas or quotes", run.label)));
    }
    let sweep_var = if run.label.is_empty() {
        spec.variable.as_str().to_string()
    } else {
        format!("{}@{}", spec.variable.as_str(), run.label)
    };
    let points: Vec<(f64, Result<NetworkParams, CliError>)> = spec
        .values
        .iter()
        .map(|&v| (v, spec.variable.apply(&run.params, v).and_then(|p| p.validate().map(|_| p).map_err(Into::into))))
        .collect();
    let row = |value: f64, result: MetricResult| Row { sweep_var: sweep_var.clone(), value: Some(value), result };

    let mut rows = Vec::new();
    if spec.engines.contains(&Engine::Analytic) {
        let tasks: Vec<(usize, Variant)> =
            (0..points.len()).flat_map(|i| spec.variants.iter().map(move |&v| (i, v))).collect();
        let done: Vec<Vec<Row>> = tasks
            .par_iter()
            .map(|&(i, variant)| {
                let (value, p) = &points[i];
                match p {
                    Err(e) => spec
                        .metrics
                        .iter()
                        .map(|&m| row(*value, error_result(Engine::Analytic, variant, m, spec, &e.to_string())))
                        .collect(),
                    Ok(p) => analytic_metrics(p, variant, &spec.metrics)
                        .into_iter()
                        .zip(&spec.metrics)
                        .map(|(r, &m)| {
                            row(
                                *value,
                                r.unwrap_or_else(|e| error_result(Engine::Analytic, variant, m, spec, &e.to_string())),
                            )
                        })
                        .collect(),
                }
            })
            .collect();
        rows.extend(done.into_iter().flatten());
    }
    if spec.engines.contains(&Engine::MonteCarlo) {
        for (value, p) in &points {
            for &variant in &spec.variants {
                for &metric in &spec.metrics {
                    let result = match p {
                        Err(e) => error_result(Engine::MonteCarlo, variant, metric, spec, &e.to_string()),
                        Ok(p) => match cache.get(p, topology_of(variant), spec.trials, spec.seed) {
                            Err(e) => error_result(Engine::MonteCarlo, variant, metric, spec, &e.to_string()),
                            Ok(batch) => batch.estimate(p, variant, metric).unwrap_or_else(|e| {
                                error_result(Engine::MonteCarlo, variant, metric, spec, &e.to_string())
                            }),
                        },
                    };
                    rows.push(row(*value, result));
                }
            }
        }
    }
    rows.sort_by(row_order);
    Ok(rows)
}

/// Runs every series in order and renders one CSV.
pub fn run_sweep(runs: &[SeriesRun]) -> Result<String, CliError> {
    if runs.is_empty() {
        return Err(CliError::Validation("the configuration has no [sweep] section".into()));
    }
    let mut cache = BatchCache::default();
    let mut rows = Vec::new();
    for run in runs {
        rows.extend(run_series(run, &mut cache)?);
    }
    Ok(to_csv(&rows))
}

/// Values at a single parameter set, failing on the first engine error.
pub fn evaluate_point(
    p: &NetworkParams,
    engines: &[Engine],
    variants: &[Variant],
    metrics: &[Metric],
    trials: u64,
    seed: u64,
) -> Result<Vec<Row>, CliError> {
    p.validate()?;
    let mut rows = Vec::new();
    let mut push = |result: MetricResult| rows.push(Row { sweep_var: "none".into(), value: None, result });
    for &engine in engines {
        for &variant in variants {
            match engine {
                Engine::Analytic => {
                    for r in analytic_metrics(p, variant, metrics) {
                        push(r?);
                    }
                }
                Engine::MonteCarlo => {
                    let batch = simulate(p, topology_of(variant), trials, seed, None)?;
                    for &m in metrics {
                        push(batch.estimate(p, variant, m)?);
                    }
                }
            }
        }
    }
    rows.sort_by(row_order);
    Ok(rows)
}
