use super::kernel::{poisson_mix, sir_series, ModeSeries};
use super::params::{AnalyticValue, DerivedConstants, Mode, NetworkParams};
use crate::error::{Error, Result};
use crate::special::integrate_partitioned;
use std::f64::consts::PI;

/// Surface architecture evaluated by the analytic engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Architecture {
    /// STAR-RIS with the configured energy split.
    Star,
    /// STAR-RIS specialized to β_T = β_R = ½ (single equivalent mode).
    StarMaxBeta,
    /// STAR-RIS with the typical UE on the transmission side: its signal
    /// carries β_T and the connected UE's carries β_R.
    StarTransmit,
    /// Co-located reflecting-only and transmitting-only surfaces, N/2 elements each.
    Conventional,
}

/// Which member of the NOMA pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ue {
    Typical,
    Connected,
}

/// Absolute tolerances of the nested radial integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Tolerance {
    pub inner: f64,
    pub outer: f64,
}

pub(crate) const COVERAGE_TOL: Tolerance = Tolerance { inner: 1e-10, outer: 1e-9 };

/// The serving-mode mixture for one architecture at a normalized
/// threshold `t` (the ratio the serving power gain must exceed, per unit
/// of (interference + noise) / (P_B L)).
pub(crate) fn modes(p: &NetworkParams, dc: &DerivedConstants, arch: Architecture, ue: Ue, t: f64) -> Result<Vec<ModeSeries>> {
    let pl = p.p_b * p.c_r;
    match arch {
        Architecture::Star | Architecture::StarTransmit => {
            let (serving, weight): (&[Mode], f64) = match (arch, ue) {
                (Architecture::Star, _) => (&Mode::BOTH, 0.5),
                (_, Ue::Typical) => (&[Mode::Transmit], 1.0),
                (_, Ue::Connected) => (&[Mode::Reflect], 1.0),
            };
            let mut out = Vec::with_capacity(2);
            for &mode in serving {
                let beta_sig = p.beta(mode);
                if beta_sig == 0.0 {
                    // nothing reaches this side
                    continue;
                }
                let classes = [
                    (0.5, dc.d_ratio(t, p.beta_t, beta_sig)),
                    (0.5, dc.d_ratio(t, p.beta_r(), beta_sig)),
                ];
                let noise = t * p.n0_sq / (dc.gamma_sig.scale * beta_sig * pl);
                out.push(ModeSeries::new(weight, p.alpha, &classes, dc.k_bar, noise)?);
            }
            Ok(out)
        }
        Architecture::StarMaxBeta => {
            let d = dc.gamma_int.scale * t / dc.gamma_sig.scale;
            let noise = 2.0 * t * p.n0_sq / (dc.gamma_sig.scale * pl);
            Ok(vec![ModeSeries::new(1.0, p.alpha, &[(1.0, d)], dc.k_bar, noise)?])
        }
        Architecture::Conventional => {
            let (sig, int, k) = match (dc.gamma_sig_con, dc.gamma_int_con, dc.k_bar_con) {
                (Some(s), Some(i), Some(k)) => (s, i, k),
                _ => return Err(Error::OddElementCount(p.n_elements)),
            };
            let d = int.scale * t / sig.scale;
            let noise = t * p.n0_sq / (sig.scale * pl);
            Ok(vec![ModeSeries::new(1.0, p.alpha, &[(1.0, d)], k, noise)?])
        }
    }
}

/// u ∈ [0, ∞) reached from t ∈ [0, 1) with du = e^{u} dt.
#[inline]
fn unit_to_half_line(t: f64) -> (f64, f64) {
    let s = 1.0 - t;
    (-s.ln(), 1.0 / s)
}

/// Breakpoints in t = 1 − e^{-u} at decades of u from `scale`/1000 up to 10.
/// Integrands here decay at least like e^{-u}, so one decade below the
/// smallest feature scale and the panels through u = 10 pin down where the
/// mass is.
fn half_line_breaks(scale: f64) -> Vec<f64> {
    let mut out = vec![0.0];
    let mut u = scale.min(1.0) * 1e-3;
    while u < 10.0 {
        out.push(-(-u).exp_m1());
        u *= 10.0;
    }
    out.push(1.0);
    out
}

/// Smallest u-scale over the modes: where the interference factor e^{-u a_0}
/// or the noise factor e^{-κ u^{α/2}} falls off.
fn feature_scale(modes: &[ModeSeries], half: f64, kappa_per_noise: f64) -> f64 {
    modes
        .iter()
        .map(|m| {
            let mut s = (1.0 / m.a[0]).min(1.0);
            let kappa = m.noise * kappa_per_noise;
            if kappa > 0.0 {
                s = s.min(kappa.powf(-1.0 / half));
            }
            s
        })
        .fold(1.0, f64::min)
}

/// ∫∫ over the serving BS–RIS distance (u = πλ_B r₁²) and the RIS–UE
/// distance (w = πλ_R r₂²) of the mode-averaged conditional coverage.
///
/// The outer integral runs over u so the O(k̄²) series is built once per
/// node; the w integral then only reweights it by Poisson masses.
pub(crate) fn typical_integral(p: &NetworkParams, modes: &[ModeSeries], tol: Tolerance) -> Result<f64> {
    if modes.is_empty() {
        return Ok(0.0);
    }
    let half = p.alpha / 2.0;
    let scale_b = (PI * p.lambda_b).powf(-half);
    let scale_r = (PI * p.lambda_r).powf(-half);
    let noisy = modes.iter().any(|m| m.noise > 0.0);
    let mut tails: Vec<Vec<f64>> = vec![Vec::new(); modes.len()];
    let outer_breaks = half_line_breaks(feature_scale(modes, half, scale_b * scale_r));
    let max_noise = modes.iter().map(|m| m.noise).fold(0.0, f64::max);
    let mut failure = None;
    let outer = integrate_partitioned(
        |t: f64| {
            let (u, jac) = unit_to_half_line(t);
            for (m, tail) in modes.iter().zip(tails.iter_mut()) {
                m.tail_weights(u, tail);
            }
            if !noisy {
                return jac * modes.iter().zip(&tails).map(|(m, t)| m.weight * t[0]).sum::<f64>();
            }
            let u_pow = u.powf(half) * scale_b * scale_r;
            let w_scale = (max_noise * u_pow).powf(-1.0 / half).min(1.0);
            let inner = integrate_partitioned(
                |s: f64| {
                    // e^{-w} dw = ds
                    let w_pow = (-(1.0 - s).ln()).powf(half) * u_pow;
                    modes.iter().zip(&tails).map(|(m, t)| m.weight * poisson_mix(m.noise * w_pow, t)).sum::<f64>()
                },
                &half_line_breaks(w_scale),
                tol.inner,
            );
            match inner {
                Ok(q) => q.value * jac,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        &outer_breaks,
        tol.outer,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(outer?.value.clamp(0.0, 1.0))
}

/// Single integral over u with the RIS–UE distance fixed at `d`.
pub(crate) fn fixed_distance_integral(p: &NetworkParams, modes: &[ModeSeries], d: f64, tol: Tolerance) -> Result<f64> {
    if modes.is_empty() {
        return Ok(0.0);
    }
    let half = p.alpha / 2.0;
    let scale = (PI * p.lambda_b).powf(-half) * d.powf(p.alpha);
    let mut scratch = Vec::new();
    let f = |t: f64| {
        let (u, jac) = unit_to_half_line(t);
        let dist_pow = u.powf(half) * scale;
        let c: f64 = modes.iter().map(|m| m.weight * m.coverage(u, dist_pow, &mut scratch)).sum();
        c * jac
    };
    let breaks = half_line_breaks(feature_scale(modes, half, scale));
    Ok(integrate_partitioned(f, &breaks, tol.outer)?.value.clamp(0.0, 1.0))
}

/// P(normalized serving SINR of `ue` > `t`), the common core of coverage
/// and of the SINR CCDFs.
pub(crate) fn exceed_probability(
    p: &NetworkParams,
    dc: &DerivedConstants,
    arch: Architecture,
    ue: Ue,
    t: f64,
    tol: Tolerance,
) -> Result<f64> {
    if t <= 0.0 {
        return Ok(1.0);
    }
    let m = modes(p, dc, arch, ue, t)?;
    match ue {
        Ue::Typical => typical_integral(p, &m, tol),
        Ue::Connected => fixed_distance_integral(p, &m, p.d_c, tol),
    }
}

/// Coverage probability of `ue` under `arch`.
pub fn coverage(p: &NetworkParams, arch: Architecture, ue: Ue) -> Result<AnalyticValue> {
    let dc = DerivedConstants::new(p)?;
    let t = match ue {
        Ue::Typical => dc.tau_t_star,
        Ue::Connected => dc.tau_c_star,
    };
    match t {
        None => Ok(AnalyticValue::infeasible()),
        Some(t) => Ok(AnalyticValue::feasible(exceed_probability(p, &dc, arch, ue, t, COVERAGE_TOL)?)),
    }
}

/// Interference-limited closed form (noise ignored) for the typical UE.
pub fn coverage_sir(p: &NetworkParams, arch: Architecture) -> Result<AnalyticValue> {
    let dc = DerivedConstants::new(p)?;
    let Some(t) = dc.tau_t_star else {
        return Ok(AnalyticValue::infeasible());
    };
    if t <= 0.0 {
        return Ok(AnalyticValue::feasible(1.0));
    }
    let total: f64 = modes(p, &dc, arch, Ue::Typical, t)?.iter().map(|m| m.weight * sir_series(&m.a)).sum();
    Ok(AnalyticValue::feasible(total.clamp(0.0, 1.0)))
}

pub fn coverage_typical_star(p: &NetworkParams) -> Result<AnalyticValue> {
    coverage(p, Architecture::Star, Ue::Typical)
}

pub fn coverage_typical_star_maxbeta(p: &NetworkParams) -> Result<AnalyticValue> {
    coverage(p, Architecture::StarMaxBeta, Ue::Typical)
}

pub fn coverage_typical_star_sir(p: &NetworkParams) -> Result<AnalyticValue> {
    coverage_sir(p, Architecture::Star)
}

pub fn coverage_typical_conventional(p: &NetworkParams) -> Result<AnalyticValue> {
    coverage(p, Architecture::Conventional, Ue::Typical)
}

pub fn coverage_typical_conventional_sir(p: &NetworkParams) -> Result<AnalyticValue> {
    coverage_sir(p, Architecture::Conventional)
}

pub fn coverage_connected_star(p: &NetworkParams) -> Result<AnalyticValue> {
    coverage(p, Architecture::Star, Ue::Connected)
}

pub fn coverage_connected_star_maxbeta(p: &NetworkParams) -> Result<AnalyticValue> {
    coverage(p, Architecture::StarMaxBeta, Ue::Connected)
}

pub fn coverage_connected_conventional(p: &NetworkParams) -> Result<AnalyticValue> {
    coverage(p, Architecture::Conventional, Ue::Connected)
}
