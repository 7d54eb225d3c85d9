use clap::{Parser, Subcommand, ValueEnum};
use starcov::result::{Engine, Metric, Variant};
use starcov_cli::config::{load_config, DEFAULT_SEED, DEFAULT_TRIALS};
use starcov_cli::recipes::{fit_targets, reproduce, run_config, Overrides};
use starcov_cli::sweep::{evaluate_point, to_csv};
use starcov_cli::{fit_report, CliError, FIGURES};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineChoice {
    Analytic,
    Mc,
    Both,
}

impl EngineChoice {
    fn engines(self) -> Vec<Engine> {
        match self {
            EngineChoice::Analytic => vec![Engine::Analytic],
            EngineChoice::Mc => vec![Engine::MonteCarlo],
            EngineChoice::Both => vec![Engine::Analytic, Engine::MonteCarlo],
        }
    }
}

/// Coverage and ergodic rate of STAR-RIS aided NOMA multi-cell networks.
#[derive(Debug, Parser)]
#[command(name = "starcov", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// TOML configuration; omitted keys take the reference values.
    #[arg(long, global = true, env = "STARCOV_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, global = true, env = "STARCOV_SEED")]
    seed: Option<u64>,
    /// Monte Carlo trials (samples for `fit`).
    #[arg(long, global = true, env = "STARCOV_TRIALS")]
    trials: Option<u64>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true, env = "STARCOV_OUT")]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = "STARCOV_ENGINE", value_enum)]
    engine: Option<EngineChoice>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Sampled composite power against its Gamma fits.
    Fit {
        /// Fit every model of the reference set instead of the configured one.
        #[arg(long)]
        all_models: bool,
        /// Element counts; defaults to the configured N.
        #[arg(long, value_delimiter = ',')]
        elements: Vec<usize>,
    },
    /// Coverage of both UEs at the configured point.
    Coverage {
        #[arg(long = "variant", value_delimiter = ',', default_value = "star_noma")]
        variants: Vec<String>,
    },
    /// Ergodic rates and sum rate at the configured point.
    Rate {
        #[arg(long = "variant", value_delimiter = ',', default_value = "star_noma")]
        variants: Vec<String>,
    },
    /// Every metric by simulation at the configured point.
    Mc {
        #[arg(long = "variant", value_delimiter = ',', default_value = "star_noma")]
        variants: Vec<String>,
    },
    /// Runs the configuration's sweep.
    Sweep,
    /// Regenerates the data of one figure from its checked-in recipe.
    Reproduce {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(FIGURES))]
        figure: String,
    },
}

fn parse_variants(names: &[String]) -> Result<Vec<Variant>, CliError> {
    names
        .iter()
        .map(|s| Variant::parse(s).ok_or_else(|| CliError::Validation(format!("unknown variant {s:?}"))))
        .collect()
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let overrides =
        Overrides { seed: cli.seed, trials: cli.trials, engines: cli.engine.map(EngineChoice::engines) };
    let point = |variants: &[String], default: EngineChoice, metrics: &[Metric]| -> Result<String, CliError> {
        let cfg = load_config(cli.config.as_deref())?;
        let engines = cli.engine.unwrap_or(default).engines();
        let rows = evaluate_point(
            &cfg.params,
            &engines,
            &parse_variants(variants)?,
            metrics,
            cli.trials.unwrap_or(DEFAULT_TRIALS),
            cli.seed.unwrap_or(DEFAULT_SEED),
        )?;
        Ok(to_csv(&rows))
    };
    match &cli.cmd {
        Cmd::Fit { all_models, elements } => {
            let mut cfg = load_config(cli.config.as_deref())?;
            let mut fit = cfg.fit.take().unwrap_or(starcov_cli::config::FitConfig {
                elements: None,
                samples: 100_000,
                all_models: false,
                seed: None,
            });
            fit.all_models |= *all_models;
            if !elements.is_empty() {
                fit.elements = Some(elements.clone());
            }
            let (models, elements) = fit_targets(&cfg, &fit);
            let samples = cli.trials.map_or(fit.samples, |t| t as usize);
            let seed = cli.seed.or(fit.seed).unwrap_or(DEFAULT_SEED);
            Ok(fit_report(&models, &elements, samples, seed)?.1)
        }
        Cmd::Coverage { variants } => point(variants, EngineChoice::Analytic, &[Metric::CoverageT, Metric::CoverageC]),
        Cmd::Rate { variants } => {
            point(variants, EngineChoice::Analytic, &[Metric::RateT, Metric::RateC, Metric::SumRate])
        }
        Cmd::Mc { variants } => {
            if cli.engine.is_some_and(|e| e != EngineChoice::Mc) {
                return Err(CliError::Validation("the mc command only runs the Monte Carlo engine".into()));
            }
            point(variants, EngineChoice::Mc, &Metric::ALL)
        }
        Cmd::Sweep => {
            let path = cli
                .config
                .as_deref()
                .ok_or_else(|| CliError::Validation("sweep needs --config with a [sweep] section".into()))?;
            let cfg = load_config(Some(path))?;
            if cfg.runs.is_empty() && cfg.fit.is_none() {
                return Err(CliError::Validation(format!("{} has no [sweep] section", path.display())));
            }
            run_config(&cfg, &overrides)
        }
        Cmd::Reproduce { figure } => reproduce(figure, &overrides),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|csv| match &cli.out {
        Some(path) => std::fs::write(path, csv).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(csv.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("starcov: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
