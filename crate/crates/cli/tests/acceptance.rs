//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero on any failure not listed in `KNOWN_RED`.

use starcov::analysis::{self as an, Architecture, NetworkParams, Ue};
use starcov::fading::FadingModel;
use starcov::gammafit::{fit_interference, fit_signal};
use starcov::montecarlo::{simulate, topology_of, Batch};
use starcov::result::{Metric, MetricResult, Variant};
use starcov::special::{xi, NeumaierSum, XiArgs};
use starcov::units;
use starcov_cli::config::Config;
use starcov_cli::recipes::{recipe_text, reproduce, Overrides};
use starcov_cli::sweep::evaluate_point;
use starcov_cli::fit_report;
use std::collections::BTreeMap;
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

type Check = Result<(bool, String), String>;

const SEED: u64 = 42;

#[derive(Debug, Clone)]
struct CsvRow {
    sweep_var: String,
    value: String,
    engine: String,
    variant: String,
    metric: String,
    result: Option<f64>,
    ci95: Option<f64>,
}

fn parse_csv(text: &str) -> Result<Vec<CsvRow>, String> {
    text.lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.splitn(10, ',').collect();
            if f.len() != 10 {
                return Err(format!("short row {line:?}"));
            }
            let num = |s: &str| if s.is_empty() { Ok(None) } else { s.parse().map(Some).map_err(|e| format!("{s:?}: {e}")) };
            Ok(CsvRow {
                sweep_var: f[0].into(),
                value: f[1].into(),
                engine: f[2].into(),
                variant: f[3].into(),
                metric: f[4].into(),
                result: num(f[5])?,
                ci95: num(f[6])?,
            })
        })
        .collect()
}

/// Analytic and simulated rows of the same point, keyed by
/// (sweep_var, value, variant, metric).
type Paired = BTreeMap<(String, String, String, String), (Option<CsvRow>, Option<CsvRow>)>;

fn pair(rows: &[CsvRow]) -> Paired {
    let mut out = Paired::new();
    for r in rows {
        let key = (r.sweep_var.clone(), r.value.clone(), r.variant.clone(), r.metric.clone());
        let slot = out.entry(key).or_default();
        match r.engine.as_str() {
            "analytic" => slot.0 = Some(r.clone()),
            _ => slot.1 = Some(r.clone()),
        }
    }
    out
}

fn run_binary_fig3() -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_starcov"))
        .args(["reproduce", "fig3", "--seed", &SEED.to_string()])
        .env_remove("STARCOV_TRIALS")
        .env_remove("STARCOV_ENGINE")
        .env_remove("STARCOV_OUT")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("starcov exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

static FIG3: OnceLock<Result<Vec<u8>, String>> = OnceLock::new();

fn fig3_output() -> Result<&'static [u8], String> {
    FIG3.get_or_init(run_binary_fig3).as_ref().map(Vec::as_slice).map_err(Clone::clone)
}

fn fig3_params() -> Result<Vec<NetworkParams>, String> {
    let cfg = Config::from_toml(recipe_text("fig3").unwrap()).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for run in &cfg.runs {
        for &v in &run.sweep.values {
            out.push(run.sweep.variable.apply(&run.params, v).map_err(|e| e.to_string())?);
        }
    }
    Ok(out)
}

fn gamma_fit_ks() -> Check {
    let models = FadingModel::reference_set();
    let (summaries, _) = fit_report(&models, &[4, 64], 100_000, SEED).map_err(|e| e.to_string())?;
    let worst = |n: usize, f: fn(&starcov_cli::fit::FitSummary) -> f64| {
        summaries.iter().filter(|s| s.n == n).map(f).fold(0.0, f64::max)
    };
    let ks4 = worst(4, |s| s.ks);
    let ks64 = worst(64, |s| s.ks);
    let asym64 = worst(64, |s| s.ks_asymptotic);
    let pass = summaries.len() == 12 && ks4 <= 0.08 && ks64 <= 0.03 && asym64 <= 0.05;
    Ok((pass, format!("6 models, 1e5 samples: max KS {ks4:.4} at N=4, {ks64:.4} at N=64, asymptotic {asym64:.4} at N=64")))
}

fn composite_moments() -> Check {
    let mut worst: f64 = 0.0;
    for model in FadingModel::reference_set() {
        let m = model.moments().map_err(|e| e.to_string())?;
        for n in 1..=1024usize {
            let nf = n as f64;
            // E[(Σh)²] = N E[h²] + N(N-1) μ²
            let mean = nf * (m.mu * m.mu + m.sigma2) + nf * (nf - 1.0) * m.mu * m.mu;
            let var = 2.0 * m.sigma2 * nf * nf * (2.0 * m.mu * m.mu * nf + m.sigma2);
            let fit = fit_signal(m, n).map_err(|e| e.to_string())?;
            let int = fit_interference(m, n).map_err(|e| e.to_string())?;
            let int_mean = nf * (m.mu * m.mu + m.sigma2);
            for (got, want) in [(fit.mean(), mean), (fit.variance(), var), (int.mean(), int_mean)] {
                worst = worst.max(((got - want) / want).abs());
            }
        }
    }
    Ok((worst <= 1e-12, format!("6 models, N=1..1024: max relative error {worst:.2e}")))
}

fn dual_engine_fig3() -> Check {
    let text = String::from_utf8(fig3_output()?.to_vec()).map_err(|e| e.to_string())?;
    let rows = parse_csv(&text)?;
    let mut worst: f64 = 0.0;
    let mut compared = 0;
    let mut at = String::new();
    for (key, (a, m)) in pair(&rows) {
        let (Some(a), Some(m)) = (a, m) else { return Err(format!("unpaired point {key:?}")) };
        let (Some(x), Some(y)) = (a.result, m.result) else { return Err(format!("missing value at {key:?}")) };
        compared += 1;
        if (x - y).abs() > worst {
            worst = (x - y).abs();
            at = format!("{}={} {}", key.0, key.1, key.3);
        }
    }
    Ok((compared > 0 && worst <= 0.02, format!("{compared} points, 1e5 trials: max |analytic - mc| {worst:.4} at {at}")))
}

fn sir_closed_form() -> Check {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for p in fig3_params()? {
        let quiet = NetworkParams { n0_sq: 0.0, ..p };
        for arch in [Architecture::Star, Architecture::Conventional] {
            let closed = an::coverage_sir(&p, arch).map_err(|e| e.to_string())?;
            let integral = an::coverage(&quiet, arch, Ue::Typical).map_err(|e| e.to_string())?;
            if closed.infeasible != integral.infeasible {
                return Err(format!("feasibility disagrees at tau_t={} tau_c={}", p.tau_t, p.tau_c));
            }
            worst = worst.max((closed.value - integral.value).abs());
            count += 1;
        }
    }
    Ok((worst <= 1e-3, format!("{count} threshold points, STAR and conventional: max gap {worst:.2e}")))
}

fn split_symmetry() -> Check {
    let text = reproduce("fig5", &Overrides::default()).map_err(|e| e.to_string())?;
    let rows = parse_csv(&text)?;
    let mut series: BTreeMap<(String, String), BTreeMap<i64, (f64, f64)>> = BTreeMap::new();
    for r in &rows {
        let beta: f64 = r.value.parse().map_err(|e| format!("{e}"))?;
        let v = r.result.ok_or_else(|| format!("missing value at beta={}", r.value))?;
        series
            .entry((r.engine.clone(), r.metric.clone()))
            .or_default()
            .insert((beta * 100.0).round() as i64, (v, r.ci95.unwrap_or(0.0)));
    }
    let mut sym: f64 = 0.0;
    let mut peak: f64 = 0.0;
    let mut mc_ok = true;
    for ((engine, metric), s) in &series {
        let half = *s.get(&50).ok_or("no beta = 0.5 point")?;
        for (&b, &(v, ci)) in s {
            let (w, ci_w) = *s.get(&(100 - b)).ok_or_else(|| format!("no mirror of beta={b}"))?;
            if engine == "analytic" {
                sym = sym.max((v - w).abs());
                peak = peak.max(v - half.0);
            } else if (v - w).abs() > ci + ci_w || v - half.0 > ci + half.1 {
                mc_ok = false;
                eprintln!("  mc {metric} at beta={b}: {v} vs mirror {w}, peak {}", half.0);
            }
        }
    }
    let pass = sym <= 1e-6 && peak <= 1e-6 && mc_ok && series.len() == 8;
    Ok((
        pass,
        format!(
            "N=16, 19 splits, 4 metrics: analytic asymmetry {sym:.1e}, excess over beta=0.5 {peak:.1e}; mc within CI: {mc_ok}"
        ),
    ))
}

/// m-th derivative of `f` at `x`: central differences extrapolated in h²
/// over a shrinking step (Ridders' tableau), keeping the entry with the
/// smallest estimated error.
fn richardson(f: &dyn Fn(f64) -> f64, x: f64, m: u32, h0: f64) -> f64 {
    let stencil = |h: f64| match m {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        2 => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
        3 => (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h),
        _ => unreachable!(),
    };
    const CON: f64 = 1.4;
    const NTAB: usize = 12;
    let mut a = [[0.0f64; NTAB]; NTAB];
    let mut h = h0;
    a[0][0] = stencil(h);
    let (mut best, mut err) = (a[0][0], f64::INFINITY);
    for i in 1..NTAB {
        h /= CON;
        a[0][i] = stencil(h);
        let mut fac = CON * CON;
        for j in 1..=i {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= CON * CON;
            let e = (a[j][i] - a[j - 1][i]).abs().max((a[j][i] - a[j - 1][i - 1]).abs());
            if e <= err {
                err = e;
                best = a[j][i];
            }
        }
        if (a[i][i] - a[i - 1][i - 1]).abs() >= 2.0 * err {
            break;
        }
    }
    best
}

/// ξ_0(1, b, c; x) from the radial interference integral, mapped onto
/// s = u^{2-b} ∈ (0, 1] and summed with composite Simpson.
fn xi0_quadrature(b: f64, c: f64, x: f64) -> f64 {
    let y = c * x;
    let p = b / (b - 2.0);
    let g = |s: f64| 1.0 / (1.0 + y * s.powf(p));
    const PANELS: usize = 20_000;
    let h = 1.0 / PANELS as f64;
    let mut sum = NeumaierSum::new();
    for i in 0..PANELS {
        let a = i as f64 * h;
        sum.add(h / 6.0 * (g(a) + 4.0 * g(a + 0.5 * h) + g(a + h)));
    }
    1.0 + 2.0 * y / (b - 2.0) * sum.value()
}

fn xi_derivatives() -> Check {
    let mut worst_d: f64 = 0.0;
    let mut worst_q: f64 = 0.0;
    for b in [2.5, 2.8, 4.0] {
        for c in [0.05, 1.0, 20.0] {
            for x in [0.3, 1.0, 5.0] {
                let f = |x: f64| xi(XiArgs::new(1.0, b, c, x, 0)).unwrap();
                for m in 1..=3 {
                    let exact = xi(XiArgs::new(1.0, b, c, x, m)).map_err(|e| e.to_string())?;
                    let fd = richardson(&f, x, m, 0.2 * x);
                    worst_d = worst_d.max(((fd - exact) / exact).abs());
                }
                worst_q = worst_q.max((f(x) - xi0_quadrature(b, c, x)).abs());
            }
        }
    }
    Ok((
        worst_d <= 1e-5 && worst_q <= 1e-8,
        format!("27 (alpha, c, x) points: m<=3 max relative error {worst_d:.1e}; xi0 vs quadrature {worst_q:.1e}"),
    ))
}

fn value(rows: &[MetricResult], engine_mc: bool, metric: Metric) -> f64 {
    rows.iter()
        .find(|r| (r.engine == starcov::result::Engine::MonteCarlo) == engine_mc && r.metric == metric)
        .map(|r| r.value)
        .unwrap()
}

fn rates_and_trends() -> Check {
    const TRIALS: u64 = 100_000;
    let mut notes = Vec::new();
    let mut pass = true;

    let narrow = NetworkParams { n_elements: 4, n0_sq: units::noise_watts(5e6), ..NetworkParams::default() };
    let rows = evaluate_point(
        &narrow,
        &[starcov::result::Engine::Analytic, starcov::result::Engine::MonteCarlo],
        &[Variant::StarNoma],
        &[Metric::RateT, Metric::RateC],
        TRIALS,
        SEED,
    )
    .map_err(|e| e.to_string())?
    .into_iter()
    .map(|r| r.result)
    .collect::<Vec<_>>();
    for (m, name) in [(Metric::RateT, "rate_t"), (Metric::RateC, "rate_c")] {
        let (a, s) = (value(&rows, false, m), value(&rows, true, m));
        let rel = (a - s).abs() / s;
        pass &= rel <= 0.05;
        notes.push(format!("N=4 5 MHz {name} {a:.4}/{s:.4} ({:.1}%)", 100.0 * rel));
    }

    let base = NetworkParams::default();
    let batches: Vec<(usize, Batch)> = [4usize, 8, 16, 32, 64]
        .iter()
        .map(|&n| {
            let p = NetworkParams { n_elements: n, ..base };
            simulate(&p, topology_of(Variant::StarNoma), TRIALS, SEED, None).map(|b| (n, b))
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let est = |b: &Batch, p: &NetworkParams, v: Variant, m: Metric| b.estimate(p, v, m).map(|r| r.value);
    let mut monotone = true;
    for m in [Metric::CoverageT, Metric::CoverageC, Metric::RateT, Metric::RateC] {
        let mut prev = f64::NEG_INFINITY;
        for (n, b) in &batches {
            let p = NetworkParams { n_elements: *n, ..base };
            let v = est(b, &p, Variant::StarNoma, m).map_err(|e| e.to_string())?;
            if v < prev {
                monotone = false;
                notes.push(format!("{m} drops at N={n}: {v} < {prev}"));
            }
            prev = v;
        }
    }
    pass &= monotone;
    notes.push(format!("nondecreasing in N over 4..64: {monotone}"));

    let star = &batches[2].1;
    let conv = simulate(&base, topology_of(Variant::ConvNoma), TRIALS, SEED, None).map_err(|e| e.to_string())?;
    let e = |b: &Batch, v, m| est(b, &base, v, m).map_err(|e| e.to_string());
    let noma_sum = e(star, Variant::StarNoma, Metric::SumRate)?;
    let oma_sum = e(star, Variant::StarOma, Metric::SumRate)?;
    pass &= noma_sum > oma_sum;
    notes.push(format!("N=16 sum rate NOMA {noma_sum:.4} vs OMA {oma_sum:.4}: {}", noma_sum > oma_sum));
    let mut star_wins = true;
    for m in [Metric::CoverageT, Metric::CoverageC, Metric::SumRate] {
        let (s, c) = (e(star, Variant::StarNoma, m)?, e(&conv, Variant::ConvNoma, m)?);
        star_wins &= s >= c;
        notes.push(format!("{m} STAR {s:.4} vs conventional {c:.4}"));
    }
    pass &= star_wins;
    notes.push(format!("STAR >= conventional: {star_wins}"));
    Ok((pass, notes.join("; ")))
}

fn reproducible_fig3() -> Check {
    let first = fig3_output()?;
    let second = run_binary_fig3()?;
    let lines = first.iter().filter(|&&b| b == b'\n').count();
    Ok((first == second.as_slice() && lines > 1, format!("two runs with seed {SEED}, {lines} lines, byte-identical: {}", first == second.as_slice())))
}

/// Criteria whose honest result is red, with the reason. The line still
/// prints FAIL; the target only errors on a failure outside this list.
const KNOWN_RED: &[(usize, &str)] = &[(
    7,
    "with the equal-time, full-power OMA baseline, OMA out-earns NOMA at lambda_R = lambda_r \
     in both engines; NOMA leads from about lambda_R = 5 lambda_r",
)];

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("Gamma fit KS distance", gamma_fit_ks),
        ("composite moments", composite_moments),
        ("analytic vs Monte Carlo coverage", dual_engine_fig3),
        ("SIR closed form vs zero-noise integral", sir_closed_form),
        ("transmit/reflect split symmetry", split_symmetry),
        ("xi derivatives and quadrature", xi_derivatives),
        ("ergodic rates and simulated trends", rates_and_trends),
        ("seeded reproducibility", reproducible_fig3),
    ];
    let mut passed = 0;
    let mut unexpected = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let (pass, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        println!(
            "criterion {id}: {} {name}: {detail} [{:.1} s]",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        match KNOWN_RED.iter().find(|(k, _)| *k == id) {
            _ if pass => passed += 1,
            Some((_, why)) => println!("  known red: {why}"),
            None => unexpected.push(id),
        }
    }
    println!("acceptance: {passed} of {} criteria passed", criteria.len());
    if !unexpected.is_empty() {
        println!("acceptance: unexpected failures {unexpected:?}");
        std::process::exit(1);
    }
}
