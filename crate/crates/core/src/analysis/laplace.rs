//! Laplace transforms of the aggregate interference seen through the
//! serving surface, conditioned on the serving BS–RIS distance `r_t`.

use super::params::{DerivedConstants, Mode, NetworkParams};
use crate::error::{Error, Result};
use crate::special::xi_scaled;
use std::f64::consts::PI;

fn check(s: f64, r_t: f64, d: f64) -> Result<()> {
    if !(s >= 0.0 && r_t > 0.0 && d > 0.0) {
        return Err(Error::invalid(format!("need s >= 0 and positive distances, got s={s}, r_t={r_t}, d={d}")));
    }
    Ok(())
}

/// Two half-plane interferer classes of density λ_B/2 with splits β_T and β_R.
fn star(s: f64, r_t: f64, d: f64, p: &NetworkParams) -> Result<f64> {
    check(s, r_t, d)?;
    let dc = DerivedConstants::new(p)?;
    let eta = dc.gamma_int.scale * p.p_b * p.c_r * (r_t * d).powf(-p.alpha);
    let mut exponent = 0.0;
    for mode in Mode::BOTH {
        let xi0 = xi_scaled(p.alpha, p.beta(mode) * eta, s, 0)?;
        exponent -= 0.5 * PI * p.lambda_b * r_t * r_t * (xi0 - 1.0);
    }
    Ok(exponent.exp())
}

/// Laplace transform of the typical UE's interference at RIS–UE distance `d_t`.
pub fn laplace_typical(s: f64, r_t: f64, d_t: f64, p: &NetworkParams) -> Result<f64> {
    star(s, r_t, d_t, p)
}

/// Same for the connected UE, whose RIS distance is fixed at `d_c`.
pub fn laplace_connected(s: f64, r_t: f64, p: &NetworkParams) -> Result<f64> {
    star(s, r_t, p.d_c, p)
}

/// Conventional surfaces: every BS beyond `r_t` interferes at full power
/// through an N/2-element surface.
pub fn laplace_conventional(s: f64, r_t: f64, d: f64, p: &NetworkParams) -> Result<f64> {
    check(s, r_t, d)?;
    let dc = DerivedConstants::new(p)?;
    let theta = dc.gamma_int_con.ok_or(Error::OddElementCount(p.n_elements))?.scale;
    let eta = theta * p.p_b * p.c_r * (r_t * d).powf(-p.alpha);
    let xi0 = xi_scaled(p.alpha, eta, s, 0)?;
    Ok((-PI * p.lambda_b * r_t * r_t * (xi0 - 1.0)).exp())
}
