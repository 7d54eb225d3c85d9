//! Moment-matched Gamma laws for the composite channel power gain.
//!
//! With `N` phase-aligned elements the desired-signal gain is `(Σ h_n)²`;
//! an interfering BS sees random element phases, `|Σ h_n e^{jθ_n}|²`.
//! Both are replaced by Gamma variables with the same first two moments.

use crate::error::{Error, Result};
use crate::fading::AmplitudeMoments;
use statrs::function::gamma::ln_gamma;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParams {
    pub shape: f64,
    pub scale: f64,
}

impl GammaParams {
    pub fn new(shape: f64, scale: f64) -> Result<Self> {
        if !(shape > 0.0 && scale > 0.0 && shape.is_finite() && scale.is_finite()) {
            return Err(Error::invalid(format!("gamma shape/scale must be positive, got ({shape}, {scale})")));
        }
        Ok(GammaParams { shape, scale })
    }

    pub fn mean(&self) -> f64 {
        self.shape * self.scale
    }

    pub fn variance(&self) -> f64 {
        self.shape * self.scale * self.scale
    }

    pub fn cdf(&self, x: f64) -> f64 {
        gamma_cdf(*self, x)
    }

    /// Shape rounded to the nearest positive integer, ties upward.
    pub fn rounded_shape(&self) -> usize {
        rounded_shape(self.shape)
    }
}

/// Mean and variance of the coherent composite gain `(Σ h_n)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositeMoments {
    pub mean: f64,
    pub variance: f64,
}

impl CompositeMoments {
    pub fn new(m: AmplitudeMoments, n: usize) -> Self {
        let n = n as f64;
        let mu2 = m.mu * m.mu;
        CompositeMoments {
            mean: mu2 * n * n + m.sigma2 * n,
            variance: 4.0 * mu2 * m.sigma2 * n.powi(3) + 2.0 * m.sigma2 * m.sigma2 * n * n,
        }
    }
}

fn check(m: AmplitudeMoments, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("element count must be at least 1"));
    }
    if m.sigma2 == 0.0 {
        return Err(Error::DegenerateFading);
    }
    if !(m.sigma2 > 0.0 && m.mu > 0.0) {
        return Err(Error::invalid(format!("amplitude moments must be positive, got {m:?}")));
    }
    Ok(())
}

/// Method-of-moments Gamma fit of the coherent signal gain.
pub fn fit_signal(m: AmplitudeMoments, n: usize) -> Result<GammaParams> {
    check(m, n)?;
    let c = CompositeMoments::new(m, n);
    GammaParams::new(c.mean * c.mean / c.variance, c.variance / c.mean)
}

/// Large-N form of [`fit_signal`], `Γ(μ²N/(4σ²), 4σ²N)`.
pub fn fit_signal_asymptotic(m: AmplitudeMoments, n: usize) -> Result<GammaParams> {
    check(m, n)?;
    let n = n as f64;
    GammaParams::new(m.mu * m.mu * n / (4.0 * m.sigma2), 4.0 * m.sigma2 * n)
}

/// Exponential law of a random-phase interfering gain, `Γ(1, N E[h²])`.
pub fn fit_interference(m: AmplitudeMoments, n: usize) -> Result<GammaParams> {
    if n == 0 {
        return Err(Error::invalid("element count must be at least 1"));
    }
    GammaParams::new(1.0, n as f64 * m.second_raw())
}

/// Signal and interference fits for a co-located reflecting-only plus
/// transmitting-only pair, each with `n / 2` elements.
pub fn fit_conventional(m: AmplitudeMoments, n: usize) -> Result<(GammaParams, GammaParams)> {
    if n % 2 != 0 {
        return Err(Error::OddElementCount(n));
    }
    Ok((fit_signal(m, n / 2)?, fit_interference(m, n / 2)?))
}

pub fn rounded_shape(shape: f64) -> usize {
    ((shape + 0.5).floor() as usize).max(1)
}

const GAMMA_EPS: f64 = 1e-15;
const GAMMA_MAX_ITER: usize = 100_000;

/// Regularized lower incomplete gamma P(a, x).
pub fn gamma_p(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    let ln_front = a * x.ln() - x - ln_gamma(a);
    if x < a + 1.0 {
        // series
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut ap = a;
        for _ in 0..GAMMA_MAX_ITER {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * GAMMA_EPS {
                break;
            }
        }
        (ln_front.exp() * sum).min(1.0)
    } else {
        // Lentz continued fraction for Q
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..GAMMA_MAX_ITER {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < GAMMA_EPS {
                break;
            }
        }
        (1.0 - ln_front.exp() * h).max(0.0)
    }
}

pub fn gamma_cdf(params: GammaParams, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        gamma_p(params.shape, x / params.scale)
    }
}

/// Kolmogorov–Smirnov distance between sorted samples and a Gamma law.
pub fn ks_distance(sorted: &[f64], params: GammaParams) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::EmptySamples);
    }
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = gamma_cdf(params, x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    Ok(d.clamp(0.0, 1.0))
}
