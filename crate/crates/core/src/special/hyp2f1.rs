use super::gamma_signed;
use super::sum::NeumaierSum;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 100_000;
const REL_EPS: f64 = 1e-16;
const ABS_TOL: f64 = 1e-13;

/// Below this the Pfaff-transformed series needs too many terms and the
/// 1/z connection formula takes over (when a - b is not an integer).
const FAR_FIELD: f64 = -1.0e3;

/// Gauss hypergeometric function ₂F₁(a, b; c; z) for z ≤ 0.
///
/// The power series is used directly on [-1/2, 0]. Further out the Pfaff
/// transformation maps the argument to z/(z-1) ∈ [1/3, 1); for very large
/// |z| the 1/z connection formula is used when a - b is not an integer.
pub fn hyp2f1_neg(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::invalid("hyp2f1 arguments must be finite"));
    }
    if z > 0.0 {
        return Err(Error::invalid(format!("hyp2f1_neg needs z <= 0, got {z}")));
    }
    if is_non_positive_integer(c) {
        return Err(Error::Pole(c));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z >= -0.5 {
        return series(a, b, c, z);
    }
    if z < FAR_FIELD && !is_integer(a - b) {
        return far_field(a, b, c, z);
    }
    let w = z / (z - 1.0);
    let inner = series(a, c - b, c, w)?;
    Ok((1.0 - z).powf(-a) * inner)
}

fn is_integer(x: f64) -> bool {
    x == x.round()
}

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && is_integer(x)
}

/// 1/Γ(x), zero at the poles.
fn rgamma(x: f64) -> f64 {
    if is_non_positive_integer(x) {
        0.0
    } else {
        1.0 / gamma_signed(x)
    }
}

fn far_field(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let inv = 1.0 / z;
    let gc = gamma_signed(c);
    let first = gc * gamma_signed(b - a) * rgamma(b) * rgamma(c - a) * (-z).powf(-a);
    let second = gc * gamma_signed(a - b) * rgamma(a) * rgamma(c - b) * (-z).powf(-b);
    let mut total = 0.0;
    if first != 0.0 {
        total += first * series(a, a - c + 1.0, a - b + 1.0, inv)?;
    }
    if second != 0.0 {
        total += second * series(b, b - c + 1.0, b - a + 1.0, inv)?;
    }
    Ok(total)
}

/// Plain power series; requires |z| < 1.
fn series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut sum = NeumaierSum::new();
    let mut term = 1.0;
    sum.add(term);
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        term *= ratio;
        sum.add(term);
        if term == 0.0 {
            return Ok(sum.value());
        }
        let r = ratio.abs();
        // geometric bound on what is left, valid once the ratio settles below 1
        if r < 1.0 && nf > (a.abs() + b.abs()) {
            let tail = term.abs() * r / (1.0 - r);
            let s = sum.value().abs();
            if tail <= REL_EPS * s || tail <= ABS_TOL * 1e-3 {
                return Ok(sum.value());
            }
        }
    }
    Err(Error::NonConvergence {
        what: "hypergeometric series",
        estimate: sum.value(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(hyp2f1_neg(0.3, -1.2, 2.5, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn log_identity_through_pfaff() {
        // ₂F₁(1,1;2;z) = -ln(1-z)/z
        for &z in &[-0.1, -0.5, -1.0, -3.0, -50.0, -999.0] {
            let v = hyp2f1_neg(1.0, 1.0, 2.0, z).unwrap();
            let exact = -(1.0 - z).ln() / z;
            assert!((v - exact).abs() < 1e-13, "z={z} v={v} exact={exact}");
        }
        assert!((hyp2f1_neg(1.0, 1.0, 2.0, -1.0).unwrap() - std::f64::consts::LN_2).abs() < 1e-14);
    }

    #[test]
    fn binomial_identity() {
        // ₂F₁(a,b;b;z) = (1-z)^{-a}
        for &z in &[-0.2, -0.9, -7.0, -4.0e4] {
            let v = hyp2f1_neg(0.7, 1.3, 1.3, z).unwrap();
            let exact = (1.0 - z).powf(-0.7);
            assert!(((v - exact) / exact).abs() < 1e-12, "z={z}");
        }
    }

    #[test]
    fn arctan_identity_far_field() {
        // ₂F₁(1/2,1;3/2;-x²) = atan(x)/x, a-b = -1/2
        for &x in &[0.3f64, 2.0, 40.0, 300.0] {
            let v = hyp2f1_neg(0.5, 1.0, 1.5, -x * x).unwrap();
            let exact = x.atan() / x;
            assert!(((v - exact) / exact).abs() < 1e-12, "x={x} v={v} exact={exact}");
        }
    }

    #[test]
    fn pole_rejected() {
        assert_eq!(hyp2f1_neg(1.0, 1.0, -2.0, -0.3), Err(Error::Pole(-2.0)));
        assert!(hyp2f1_neg(1.0, 1.0, 2.0, 0.5).is_err());
    }

    #[test]
    fn continuous_across_unit_argument() {
        // literal bound where |F'(-1)| · 2e-9 leaves room for it
        let l = hyp2f1_neg(1.0, 1.0, 2.0, -1.0 - 1e-9).unwrap();
        let r = hyp2f1_neg(1.0, 1.0, 2.0, -1.0 + 1e-9).unwrap();
        assert!((l - r).abs() <= 1e-9, "{l} {r}");
        // ξ parameters: F'(-1) = -1.880263 (mpmath), so the true step is
        // 3.760526e-9; only the excess over it is numerical
        let (a, b, c) = (1.0, -2.0 / 2.8, 1.0 - 2.0 / 2.8);
        let left = hyp2f1_neg(a, b, c, -1.0 - 1e-9).unwrap();
        let right = hyp2f1_neg(a, b, c, -1.0 + 1e-9).unwrap();
        assert!(((left - right) - 3.760526e-9).abs() <= 1e-9, "{left} {right}");
        // the switch from direct series to Pfaff sits at -1/2
        let l2 = hyp2f1_neg(a, b, c, -0.5 - 1e-12).unwrap();
        let r2 = hyp2f1_neg(a, b, c, -0.5 + 1e-12).unwrap();
        assert!((l2 - r2).abs() <= 1e-11, "{l2} {r2}");
    }
}
