use super::geometry::{default_window_radius, sample_realization};
use super::trial::{Links, Topology, TrialOutcome, TrialPowers};
use crate::analysis::{Mode, NetworkParams};
use crate::error::{Error, Result};
use crate::fading::FadingModel;
use crate::result::{Engine, Flag, Metric, MetricResult, Variant};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// The parameters a batch's stored gains depend on. Everything else
/// (split, power allocation, thresholds, noise, transmit power) is applied
/// at evaluation time.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Structure {
    lambda_b: f64,
    lambda_r: f64,
    alpha: f64,
    n_elements: usize,
    model: FadingModel,
    d_c: f64,
}

impl Structure {
    fn of(p: &NetworkParams) -> Self {
        Structure {
            lambda_b: p.lambda_b,
            lambda_r: p.lambda_r,
            alpha: p.alpha,
            n_elements: p.n_elements,
            model: p.model,
            d_c: p.d_c,
        }
    }
}

/// Random source of trial `index`: its own ChaCha stream under `seed`, so
/// results do not depend on scheduling.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Stored per-trial gains of one simulated network ensemble.
#[derive(Debug, Clone)]
pub struct Batch {
    pub topology: Topology,
    pub seed: u64,
    pub window_radius: f64,
    pub powers: Vec<TrialPowers>,
    /// Empty-window redraws summed over all trials.
    pub resamples: u64,
    structure: Structure,
}

/// Simulates `trials` independent network snapshots.
pub fn simulate(p: &NetworkParams, topology: Topology, trials: u64, seed: u64, window_radius: Option<f64>) -> Result<Batch> {
    p.validate()?;
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let elements = match topology {
        Topology::Star => p.n_elements,
        Topology::Conventional => {
            if p.n_elements % 2 != 0 {
                return Err(Error::OddElementCount(p.n_elements));
            }
            p.n_elements / 2
        }
    };
    let window = window_radius.unwrap_or_else(|| default_window_radius(p));
    let sampler = p.model.sampler()?;
    let links = Links::new(p, &sampler, elements)?;
    let drawn: Vec<Result<(TrialPowers, u64)>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let real = sample_realization(p, window, &mut rng)?;
            let powers = TrialPowers::draw(&real, &links, window, &mut rng);
            Ok((powers, real.resamples))
        })
        .collect();
    let mut powers = Vec::with_capacity(trials as usize);
    let mut resamples = 0;
    for d in drawn {
        let (pw, r) = d?;
        powers.push(pw);
        resamples += r;
    }
    Ok(Batch { topology, seed, window_radius: window, powers, resamples, structure: Structure::of(p) })
}

fn metric_value(o: &TrialOutcome, metric: Metric) -> f64 {
    match metric {
        Metric::CoverageT => o.covered_t as u8 as f64,
        Metric::CoverageC => o.covered_c as u8 as f64,
        Metric::RateT => o.rate_t,
        Metric::RateC => o.rate_c,
        Metric::SumRate => o.rate_t + o.rate_c,
    }
}

impl Batch {
    pub fn trials(&self) -> u64 {
        self.powers.len() as u64
    }

    fn check(&self, p: &NetworkParams, variant: Variant) -> Result<NetworkParams> {
        p.validate()?;
        if Structure::of(p) != self.structure {
            return Err(Error::invalid(
                "densities, path loss, element count, fading model and d_c must match the simulated batch",
            ));
        }
        let wanted = match variant {
            Variant::ConvNoma => Topology::Conventional,
            _ => Topology::Star,
        };
        if wanted != self.topology {
            return Err(Error::invalid(format!("variant {variant} needs a {wanted:?} batch, this one is {:?}", self.topology)));
        }
        Ok(match variant {
            Variant::StarNomaMaxBeta => NetworkParams { beta_t: 0.5, ..*p },
            _ => *p,
        })
    }

    /// Per-trial outcomes under `p` for `variant`. The transmit-side variant
    /// keeps only the trials whose typical UE is served in transmission.
    pub fn outcomes(&self, p: &NetworkParams, variant: Variant) -> Result<Vec<TrialOutcome>> {
        let q = self.check(p, variant)?;
        Ok(match variant {
            Variant::StarOma => self.powers.iter().map(|w| w.oma(&q, self.topology)).collect(),
            Variant::StarNomaTransmit => self
                .powers
                .iter()
                .filter(|w| w.mode == Mode::Transmit)
                .map(|w| w.noma(&q, self.topology))
                .collect(),
            _ => self.powers.iter().map(|w| w.noma(&q, self.topology)).collect(),
        })
    }

    /// Sample mean of `metric` with its 95% normal-approximation half-width.
    pub fn estimate(&self, p: &NetworkParams, variant: Variant, metric: Metric) -> Result<MetricResult> {
        let outcomes = self.outcomes(p, variant)?;
        if outcomes.is_empty() {
            return Err(Error::invalid(format!("no trial of this batch serves the typical UE as {variant} needs")));
        }
        let n = outcomes.len() as f64;
        // fixed-order two-pass moments
        let mean = outcomes.iter().map(|o| metric_value(o, metric)).sum::<f64>() / n;
        let ss: f64 = outcomes.iter().map(|o| (metric_value(o, metric) - mean).powi(2)).sum();
        let mut r = MetricResult {
            engine: Engine::MonteCarlo,
            variant,
            metric,
            value: mean,
            ci95: None,
            trials: outcomes.len() as u64,
            seed: Some(self.seed),
            flags: Vec::new(),
        };
        if outcomes.len() > 1 {
            r.ci95 = Some(1.96 * (ss / (n - 1.0)).sqrt() / n.sqrt());
        } else {
            r = r.with_flag(Flag::CiUndefined);
        }
        if self.resamples > 0 {
            r = r.with_flag(Flag::EmptyWindowResamples(self.resamples));
        }
        let noma = variant != Variant::StarOma;
        if noma && metric != Metric::RateC && p.tau_c_star().is_none() {
            r = r.with_flag(Flag::Infeasible);
        }
        Ok(r)
    }
}

/// Topology a variant is simulated on.
pub fn topology_of(variant: Variant) -> Topology {
    match variant {
        Variant::ConvNoma => Topology::Conventional,
        _ => Topology::Star,
    }
}

/// One-shot estimate on a fresh batch with the default window.
pub fn estimate(p: &NetworkParams, variant: Variant, metric: Metric, trials: u64, seed: u64) -> Result<MetricResult> {
    simulate(p, topology_of(variant), trials, seed, None)?.estimate(p, variant, metric)
}
