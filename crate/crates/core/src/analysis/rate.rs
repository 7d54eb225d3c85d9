use super::coverage::{exceed_probability, Architecture, Tolerance, Ue};
use super::params::{AnalyticValue, DerivedConstants, NetworkParams};
use crate::error::Result;
use crate::special::integrate;
use std::f64::consts::LN_2;

/// Tolerances for CCDF evaluations nested inside the rate integral.
const CCDF_TOL: Tolerance = Tolerance { inner: 1e-9, outer: 1e-8 };
const RATE_TOL: f64 = 1e-7;
/// The typical-UE rate integral stops once the CCDF falls below this.
const TAIL_CUTOFF: f64 = 1e-9;

fn ccdf_typical(p: &NetworkParams, dc: &DerivedConstants, arch: Architecture, z: f64, tol: Tolerance) -> Result<f64> {
    exceed_probability(p, dc, arch, Ue::Typical, z / p.a_t, tol)
}

fn ccdf_connected(p: &NetworkParams, dc: &DerivedConstants, arch: Architecture, z: f64, tol: Tolerance) -> Result<f64> {
    let den = p.a_c - p.a_t * z;
    if den <= 0.0 {
        return Ok(0.0);
    }
    exceed_probability(p, dc, arch, Ue::Connected, z / den, tol)
}

/// P(γ_t > z): CCDF of the typical UE's post-SIC SINR.
pub fn ccdf_sinr_typical(z: f64, p: &NetworkParams, arch: Architecture) -> Result<f64> {
    let dc = DerivedConstants::new(p)?;
    ccdf_typical(p, &dc, arch, z, super::coverage::COVERAGE_TOL)
}

/// P(γ_c > z): CCDF of the connected UE's SINR; zero from a_c/a_t on.
pub fn ccdf_sinr_connected(z: f64, p: &NetworkParams, arch: Architecture) -> Result<f64> {
    let dc = DerivedConstants::new(p)?;
    ccdf_connected(p, &dc, arch, z, super::coverage::COVERAGE_TOL)
}

/// Run `f` inside a quadrature, surfacing the first error it reports.
fn guarded<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut failure = None;
    let q = integrate(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        a,
        b,
        tol,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(q?.value)
}

/// Ergodic rate of the typical UE, zero whenever SIC fails.
///
/// Written in v = ln(1 + z) the rate is
/// `log₂(1+z₀) F̄(z₀) + (1/ln 2) ∫_{ln(1+z₀)}^∞ F̄(e^v − 1) dv` with
/// z₀ = a_t τ_c*. The upper limit is the first v = v₀ + 2^j at which F̄
/// drops below 1e-9; since the SIR tail decays at least like z^{-2/α},
/// the dropped part is below F̄(z_max) α/2 in nats.
pub fn rate_typical(p: &NetworkParams, arch: Architecture) -> Result<AnalyticValue> {
    let dc = DerivedConstants::new(p)?;
    let Some(tc) = dc.tau_c_star else {
        return Ok(AnalyticValue::infeasible());
    };
    let z0 = p.a_t * tc;
    let v0 = z0.ln_1p();
    let f_at = |v: f64| ccdf_typical(p, &dc, arch, v.exp_m1(), CCDF_TOL);
    let start = f_at(v0)?;
    let body = tail_integral(f_at, v0)?;
    Ok(AnalyticValue::feasible((z0.ln_1p() * start + body) / LN_2))
}

/// ∫_{v0}^∞ f(v) dv for a CCDF-shaped `f`, cut where it drops below
/// [`TAIL_CUTOFF`].
fn tail_integral<F>(mut f: F, v0: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut step = 1.0;
    while f(v0 + step)? > TAIL_CUTOFF && step < 1024.0 {
        step *= 2.0;
    }
    guarded(f, v0, v0 + step, RATE_TOL)
}

/// Ergodic rate of the connected UE, `(1/ln 2) ∫_0^{a_c/a_t} F̄_c(z)/(1+z) dz`.
pub fn rate_connected(p: &NetworkParams, arch: Architecture) -> Result<AnalyticValue> {
    let dc = DerivedConstants::new(p)?;
    let z_max = p.a_c / p.a_t;
    let body = guarded(
        |z| Ok(ccdf_connected(p, &dc, arch, z, CCDF_TOL)? / (1.0 + z)),
        0.0,
        z_max,
        RATE_TOL,
    )?;
    Ok(AnalyticValue::feasible(body / LN_2))
}

pub fn rate_typical_star(p: &NetworkParams) -> Result<AnalyticValue> {
    rate_typical(p, Architecture::Star)
}

pub fn rate_typical_star_maxbeta(p: &NetworkParams) -> Result<AnalyticValue> {
    rate_typical(p, Architecture::StarMaxBeta)
}

pub fn rate_typical_conventional(p: &NetworkParams) -> Result<AnalyticValue> {
    rate_typical(p, Architecture::Conventional)
}

pub fn rate_connected_star(p: &NetworkParams) -> Result<AnalyticValue> {
    rate_connected(p, Architecture::Star)
}

pub fn rate_connected_star_maxbeta(p: &NetworkParams) -> Result<AnalyticValue> {
    rate_connected(p, Architecture::StarMaxBeta)
}

pub fn rate_connected_conventional(p: &NetworkParams) -> Result<AnalyticValue> {
    rate_connected(p, Architecture::Conventional)
}

/// SINR a UE needs under orthogonal access, where it transmits on half the
/// channel uses with full power: ½log₂(1+γ) > log₂(1+τ).
pub fn oma_threshold(tau: f64) -> f64 {
    (1.0 + tau) * (1.0 + tau) - 1.0
}

/// Coverage of `ue` on a STAR-RIS under orthogonal access. No SIC is
/// involved, so this is the full-power SINR law at [`oma_threshold`].
pub fn coverage_oma(p: &NetworkParams, ue: Ue) -> Result<AnalyticValue> {
    let dc = DerivedConstants::new(p)?;
    let tau = match ue {
        Ue::Typical => p.tau_t,
        Ue::Connected => p.tau_c,
    };
    let v = exceed_probability(p, &dc, Architecture::Star, ue, oma_threshold(tau), super::coverage::COVERAGE_TOL)?;
    Ok(AnalyticValue::feasible(v))
}

/// Ergodic rate of `ue` on a STAR-RIS under orthogonal access,
/// `(1/(2 ln 2)) ∫_0^∞ P(γ > e^v − 1) dv` with γ the full-power SINR.
pub fn rate_oma(p: &NetworkParams, ue: Ue) -> Result<AnalyticValue> {
    let dc = DerivedConstants::new(p)?;
    let body = tail_integral(|v| exceed_probability(p, &dc, Architecture::Star, ue, v.exp_m1(), CCDF_TOL), 0.0)?;
    Ok(AnalyticValue::feasible(0.5 * body / LN_2))
}
