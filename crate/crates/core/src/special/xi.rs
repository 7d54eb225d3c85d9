use super::beta::ln_beta_inc_split;
use super::hyp2f1::hyp2f1_neg;
use super::pochhammer;
use crate::error::{Error, Result};
use statrs::function::gamma::ln_gamma;

/// Arguments of ξ_m(a, b, c; x).
///
/// `b` plays the role of a path-loss exponent and must exceed 2 so that
/// -2/b and 1 - 2/b stay clear of the hypergeometric poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiArgs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x: f64,
    pub m: u32,
}

impl XiArgs {
    pub fn new(a: f64, b: f64, c: f64, x: f64, m: u32) -> Self {
        Self { a, b, c, x, m }
    }

    fn validate(&self) -> Result<()> {
        if !(self.b > 2.0) {
            return Err(Error::invalid(format!("xi needs b > 2, got {}", self.b)));
        }
        if !(self.c >= 0.0) || !(self.x >= 0.0) {
            return Err(Error::invalid(format!(
                "xi needs c, x >= 0 (c={}, x={})",
                self.c, self.x
            )));
        }
        if !self.a.is_finite() {
            return Err(Error::invalid("xi needs finite a"));
        }
        Ok(())
    }
}

/// ξ_m(a, b, c; x), the m-th x-derivative of ₂F₁(a, -2/b; 1-2/b; -cx).
///
/// For a = 1 (the only case the coverage expressions need) this goes
/// through an incomplete-beta representation that stays accurate for
/// large m and large cx; other values of a use [`xi_hypergeometric`].
pub fn xi(args: XiArgs) -> Result<f64> {
    args.validate()?;
    if args.a != 1.0 {
        return xi_hypergeometric(args);
    }
    let scaled = xi_scaled(args.b, args.c, args.x, args.m)?;
    if args.m == 0 || scaled == 0.0 {
        return Ok(scaled);
    }
    let ln = scaled.abs().ln() + ln_gamma(args.m as f64 + 1.0);
    Ok(scaled.signum() * ln.exp())
}

/// ξ_m through its defining hypergeometric form,
/// (a)_m (-2/b)_m (-c)^m / (1-2/b)_m · ₂F₁(a+m, -2/b+m; 1-2/b+m; -cx).
pub fn xi_hypergeometric(args: XiArgs) -> Result<f64> {
    args.validate()?;
    let XiArgs { a, b, c, x, m } = args;
    let d = 2.0 / b;
    if m > 0 && c == 0.0 {
        return Ok(0.0);
    }
    let mf = m as f64;
    let prefactor =
        pochhammer(a, m) * pochhammer(-d, m) * (-c).powi(m as i32) / pochhammer(1.0 - d, m);
    Ok(prefactor * hyp2f1_neg(a + mf, -d + mf, 1.0 - d + mf, -c * x)?)
}

/// ξ_m(1, b, c; x) / m!, the m-th Taylor coefficient of ξ_0 around x.
///
/// With δ = 2/b, y = cx and v = y/(1+y):
///
/// ```text
/// ξ_0        = 1 + δ y^δ B(v; 1-δ, δ)
/// ξ_m / m!   = -(-1)^m δ y^δ x^{-m} B(v; m-δ, 1+δ),   m ≥ 1
/// ```
///
/// Both follow from writing ξ_0 - 1 as the radial interference integral
/// 2∫₁^∞ (1 - (1 + c x u^{-b})^{-1}) u du and differentiating under it.
/// The sign of ξ_m alternates as -(-1)^m.
pub fn xi_scaled(b: f64, c: f64, x: f64, m: u32) -> Result<f64> {
    XiArgs::new(1.0, b, c, x, m).validate()?;
    let d = 2.0 / b;
    if c == 0.0 {
        return Ok(if m == 0 { 1.0 } else { 0.0 });
    }
    let y = c * x;
    let mf = m as f64;
    if m == 0 {
        if y == 0.0 {
            return Ok(1.0);
        }
        let ln_b = ln_beta_inc_split(y / (1.0 + y), 1.0 / (1.0 + y), 1.0 - d, d)?;
        return Ok(1.0 + (d.ln() + d * y.ln() + ln_b).exp());
    }
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    if y == 0.0 {
        // x = 0 limit
        return Ok(sign * d * (mf * c.ln()).exp() / (mf - d));
    }
    let ln_b = ln_beta_inc_split(y / (1.0 + y), 1.0 / (1.0 + y), mf - d, 1.0 + d)?;
    let ln_mag = d.ln() + d * y.ln() - mf * x.ln() + ln_b;
    Ok(sign * ln_mag.exp())
}
