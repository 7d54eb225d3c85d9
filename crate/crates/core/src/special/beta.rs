use crate::error::{Error, Result};
use statrs::function::gamma::ln_gamma;

const MAX_ITER: usize = 10_000;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

/// ln B(p, q) for p, q > 0.
pub fn ln_beta(p: f64, q: f64) -> f64 {
    ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)
}

/// Natural log of the (unregularized) incomplete beta integral
/// B(x; p, q) = ∫₀ˣ t^{p-1} (1-t)^{q-1} dt, for x in [0, 1] and p, q > 0.
///
/// Working in logs keeps tiny values (large p, small x) representable.
pub fn ln_beta_inc(x: f64, p: f64, q: f64) -> Result<f64> {
    ln_beta_inc_split(x, 1.0 - x, p, q)
}

/// As [`ln_beta_inc`], with 1 - x supplied separately so callers that know
/// it exactly do not lose it to cancellation near x = 1.
pub(crate) fn ln_beta_inc_split(x: f64, one_minus_x: f64, p: f64, q: f64) -> Result<f64> {
    if !(p > 0.0 && q > 0.0) || !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!(
            "incomplete beta needs x in [0,1], p,q > 0 (x={x}, p={p}, q={q})"
        )));
    }
    if x == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    if x == 1.0 || one_minus_x == 0.0 {
        return Ok(ln_beta(p, q));
    }
    let ln_front = p * x.ln() + q * one_minus_x.ln();
    if x < (p + 1.0) / (p + q + 2.0) {
        let cf = continued_fraction(x, p, q)?;
        Ok(ln_front - p.ln() + cf.ln())
    } else {
        // B(x;p,q) = B(p,q) - B(1-x;q,p), the subtracted part is the smaller one here
        let cf = continued_fraction(one_minus_x, q, p)?;
        let ln_full = ln_beta(p, q);
        let ln_rest = ln_front - q.ln() + cf.ln();
        let frac = (ln_rest - ln_full).exp();
        Ok(ln_full + (-frac).ln_1p())
    }
}

/// Modified Lentz evaluation of the incomplete-beta continued fraction.
fn continued_fraction(x: f64, p: f64, q: f64) -> Result<f64> {
    let qab = p + q;
    let qap = p + 1.0;
    let qam = p - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let mf = m as f64;
        let m2 = 2.0 * mf;
        let aa = mf * (q - mf) * x / ((qam + m2) * (p + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(p + mf) * (qab + mf) * x / ((p + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(Error::NonConvergence {
        what: "incomplete beta continued fraction",
        estimate: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        // B(x;1,1) = x, B(x;2,1) = x²/2, B(x;1,2) = x - x²/2
        for &x in &[0.1, 0.5, 0.77, 0.999] {
            assert!((ln_beta_inc(x, 1.0, 1.0).unwrap().exp() - x).abs() < 1e-14);
            assert!((ln_beta_inc(x, 2.0, 1.0).unwrap().exp() - x * x / 2.0).abs() < 1e-14);
            assert!((ln_beta_inc(x, 1.0, 2.0).unwrap().exp() - (x - x * x / 2.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn endpoints() {
        assert_eq!(ln_beta_inc(0.0, 2.0, 3.0).unwrap(), f64::NEG_INFINITY);
        assert!((ln_beta_inc(1.0, 2.0, 3.0).unwrap() - (1.0f64 / 12.0).ln()).abs() < 1e-13);
    }

    #[test]
    fn matches_statrs_regularized() {
        for &(x, p, q) in &[(0.3, 0.5, 0.7), (0.9, 40.3, 1.7), (0.99, 120.0, 1.3), (0.2, 3.0, 9.0)] {
            let ours = (ln_beta_inc(x, p, q).unwrap() - ln_beta(p, q)).exp();
            let theirs = statrs::function::beta::beta_reg(p, q, x);
            assert!((ours - theirs).abs() < 1e-12, "x={x} p={p} q={q}: {ours} vs {theirs}");
        }
    }
}
