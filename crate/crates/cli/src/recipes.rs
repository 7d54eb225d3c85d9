//! Checked-in figure recipes and the overrides the command line may apply.

use crate::config::{Config, FitConfig, SeriesRun};
use crate::error::CliError;
use crate::fit::fit_report;
use crate::sweep::run_sweep;
use starcov::fading::FadingModel;
use starcov::result::Engine;

pub const FIGURES: [&str; 6] = ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7"];

/// Recipe source of a figure id.
pub fn recipe_text(figure: &str) -> Option<&'static str> {
    Some(match figure {
        "fig2" => include_str!("../recipes/fig2.toml"),
        "fig3" => include_str!("../recipes/fig3.toml"),
        "fig4" => include_str!("../recipes/fig4.toml"),
        "fig5" => include_str!("../recipes/fig5.toml"),
        "fig6" => include_str!("../recipes/fig6.toml"),
        "fig7" => include_str!("../recipes/fig7.toml"),
        _ => return None,
    })
}

/// Command-line replacements for recipe or config settings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    /// Monte Carlo trials, or samples for a fit report.
    pub trials: Option<u64>,
    pub engines: Option<Vec<Engine>>,
}

impl Overrides {
    pub fn apply(&self, runs: &mut [SeriesRun]) -> Result<(), CliError> {
        for run in runs {
            if let Some(s) = self.seed {
                run.sweep.seed = s;
            }
            if let Some(t) = self.trials {
                run.sweep.trials = t;
            }
            if let Some(e) = &self.engines {
                run.sweep.engines = e.clone();
            }
            run.sweep.validate()?;
        }
        Ok(())
    }
}

/// Models and element counts a fit section asks for.
pub fn fit_targets(cfg: &Config, fit: &FitConfig) -> (Vec<FadingModel>, Vec<usize>) {
    let models = if fit.all_models { FadingModel::reference_set().to_vec() } else { vec![cfg.params.model] };
    let elements = fit.elements.clone().unwrap_or_else(|| vec![cfg.params.n_elements]);
    (models, elements)
}

/// Runs a parsed configuration: its fit section if it has one, else its
/// sweep.
pub fn run_config(cfg: &Config, ov: &Overrides) -> Result<String, CliError> {
    if let Some(fit) = &cfg.fit {
        let (models, elements) = fit_targets(cfg, fit);
        let samples = ov.trials.map_or(fit.samples, |t| t as usize);
        let seed = ov.seed.or(fit.seed).unwrap_or(crate::config::DEFAULT_SEED);
        return Ok(fit_report(&models, &elements, samples, seed)?.1);
    }
    let mut runs = cfg.runs.clone();
    ov.apply(&mut runs)?;
    run_sweep(&runs)
}

/// CSV of a figure recipe.
pub fn reproduce(figure: &str, ov: &Overrides) -> Result<String, CliError> {
    let text = recipe_text(figure).ok_or_else(|| {
        CliError::Validation(format!("unknown figure {figure:?}; expected one of {}", FIGURES.join(", ")))
    })?;
    let cfg = Config::from_toml(text).map_err(|e| e.context(figure))?;
    run_config(&cfg, ov)
}
