//! Per-element small-scale fading laws of the cascaded BS–RIS–UE amplitude.
//!
//! Every variant describes the distribution of the cascaded amplitude
//! `h_n = |h_BR,n| |h_RU,n|` of one surface element directly. The two
//! `Double*` variants build it as a product of two independent hops; the
//! single-hop variants are taken as the cascade law itself.

use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use statrs::function::gamma::{gamma, ln_gamma};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FadingModel {
    /// Rayleigh amplitude with scale δ.
    Rayleigh { delta: f64 },
    /// Nakagami-m amplitude with shape m ≥ ½ and spread Ω.
    Nakagami { m: f64, omega: f64 },
    /// `sqrt(K/(K+1)) c + sqrt(1/(K+1)) R`, R Rayleigh with scale δ.
    Rician { k: f64, delta: f64, c: f64 },
    Weibull { shape: f64, scale: f64 },
    /// Product of two independent Rayleigh hops.
    DoubleRayleigh { delta_1: f64, delta_2: f64 },
    /// Product of two independent Rician hops.
    DoubleRician {
        k_1: f64,
        k_2: f64,
        delta_1: f64,
        delta_2: f64,
        c_1: f64,
        c_2: f64,
    },
}

/// Mean and variance of the per-element cascaded amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeMoments {
    pub mu: f64,
    pub sigma2: f64,
}

impl AmplitudeMoments {
    pub fn second_raw(&self) -> f64 {
        self.mu * self.mu + self.sigma2
    }
}

const HALF_PI_SQRT: f64 = 1.253_314_137_315_500_3; // sqrt(pi/2)

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Mean and raw second moment of one Rician hop in the LoS + scaled-Rayleigh form.
fn rician_hop(k: f64, delta: f64, c: f64) -> (f64, f64) {
    let los = c * (k / (k + 1.0)).sqrt();
    let w = (1.0 / (k + 1.0)).sqrt();
    let mean = los + w * delta * HALF_PI_SQRT;
    let raw2 = los * los + 2.0 * los * w * delta * HALF_PI_SQRT + w * w * 2.0 * delta * delta;
    (mean, raw2)
}

impl FadingModel {
    /// Parameters used for every model in the composite-power fit figures,
    /// `δ = √½`, `m = k = 4`, everything else 1.
    pub fn reference_set() -> [FadingModel; 6] {
        let d = 0.5f64.sqrt();
        [
            FadingModel::Rayleigh { delta: d },
            FadingModel::Nakagami { m: 4.0, omega: 1.0 },
            FadingModel::Rician { k: 1.0, delta: d, c: 1.0 },
            FadingModel::Weibull { shape: 4.0, scale: 1.0 },
            FadingModel::DoubleRayleigh { delta_1: d, delta_2: d },
            FadingModel::double_rician_default(),
        ]
    }

    pub fn double_rician_default() -> Self {
        let d = 0.5f64.sqrt();
        FadingModel::DoubleRician { k_1: 1.0, k_2: 1.0, delta_1: d, delta_2: d, c_1: 1.0, c_2: 1.0 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FadingModel::Rayleigh { .. } => "rayleigh",
            FadingModel::Nakagami { .. } => "nakagami",
            FadingModel::Rician { .. } => "rician",
            FadingModel::Weibull { .. } => "weibull",
            FadingModel::DoubleRayleigh { .. } => "double_rayleigh",
            FadingModel::DoubleRician { .. } => "double_rician",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FadingModel::Rayleigh { delta } => positive("delta", delta),
            FadingModel::Nakagami { m, omega } => {
                positive("omega", omega)?;
                if !(m >= 0.5 && m.is_finite()) {
                    return Err(Error::invalid(format!("Nakagami m must be at least 1/2, got {m}")));
                }
                Ok(())
            }
            FadingModel::Rician { k, delta, c } => {
                positive("K", k)?;
                positive("delta", delta)?;
                positive("c", c)
            }
            FadingModel::Weibull { shape, scale } => {
                positive("shape", shape)?;
                positive("scale", scale)
            }
            FadingModel::DoubleRayleigh { delta_1, delta_2 } => {
                positive("delta_1", delta_1)?;
                positive("delta_2", delta_2)
            }
            FadingModel::DoubleRician { k_1, k_2, delta_1, delta_2, c_1, c_2 } => {
                positive("K_1", k_1)?;
                positive("K_2", k_2)?;
                positive("delta_1", delta_1)?;
                positive("delta_2", delta_2)?;
                positive("c_1", c_1)?;
                positive("c_2", c_2)
            }
        }
    }

    /// Closed-form mean and variance of the cascaded amplitude.
    pub fn moments(&self) -> Result<AmplitudeMoments> {
        self.validate()?;
        let (mu, sigma2) = match *self {
            FadingModel::Rayleigh { delta } => (delta * HALF_PI_SQRT, (4.0 - PI) / 2.0 * delta * delta),
            FadingModel::Nakagami { m, omega } => {
                let ratio = (ln_gamma(m + 0.5) - ln_gamma(m)).exp();
                let mu = ratio * (omega / m).sqrt();
                (mu, omega - omega / m * ratio * ratio)
            }
            FadingModel::Rician { k, delta, c } => {
                let mu = delta * HALF_PI_SQRT / (k + 1.0).sqrt() + c * (k / (k + 1.0)).sqrt();
                (mu, (4.0 - PI) / 2.0 * delta * delta / (k + 1.0))
            }
            FadingModel::Weibull { shape, scale } => {
                let g1 = gamma(1.0 + 1.0 / shape);
                let g2 = gamma(1.0 + 2.0 / shape);
                (scale * g1, scale * scale * (g2 - g1 * g1))
            }
            FadingModel::DoubleRayleigh { delta_1, delta_2 } => {
                let p = delta_1 * delta_2;
                (PI * p / 2.0, 4.0 * (1.0 - PI * PI / 16.0) * p * p)
            }
            FadingModel::DoubleRician { k_1, k_2, delta_1, delta_2, c_1, c_2 } => {
                let (m1, s1) = rician_hop(k_1, delta_1, c_1);
                let (m2, s2) = rician_hop(k_2, delta_2, c_2);
                let mu = m1 * m2;
                (mu, s1 * s2 - mu * mu)
            }
        };
        if !(sigma2 > 0.0) {
            return Err(Error::DegenerateFading);
        }
        Ok(AmplitudeMoments { mu, sigma2 })
    }

    /// E[h²] computed from the hop structure rather than from `moments()`.
    pub fn second_raw_moment(&self) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            FadingModel::Rayleigh { delta } => 2.0 * delta * delta,
            FadingModel::Nakagami { omega, .. } => omega,
            FadingModel::Rician { k, delta, c } => rician_hop(k, delta, c).1,
            FadingModel::Weibull { shape, scale } => scale * scale * gamma(1.0 + 2.0 / shape),
            FadingModel::DoubleRayleigh { delta_1, delta_2 } => 4.0 * delta_1 * delta_1 * delta_2 * delta_2,
            FadingModel::DoubleRician { k_1, k_2, delta_1, delta_2, c_1, c_2 } => {
                rician_hop(k_1, delta_1, c_1).1 * rician_hop(k_2, delta_2, c_2).1
            }
        })
    }

    /// A validated sampler for repeated draws.
    pub fn sampler(&self) -> Result<AmplitudeSampler> {
        self.validate()?;
        let kind = match *self {
            FadingModel::Rayleigh { delta } => Kind::Rayleigh(delta),
            FadingModel::Nakagami { m, omega } => Kind::Nakagami(
                Gamma::new(m, omega / m).map_err(|e| Error::invalid(e.to_string()))?,
            ),
            FadingModel::Rician { k, delta, c } => Kind::Rician(RicianHop::new(k, delta, c)),
            FadingModel::Weibull { shape, scale } => Kind::Weibull(1.0 / shape, scale),
            FadingModel::DoubleRayleigh { delta_1, delta_2 } => Kind::DoubleRayleigh(delta_1 * delta_2),
            FadingModel::DoubleRician { k_1, k_2, delta_1, delta_2, c_1, c_2 } => {
                Kind::DoubleRician(RicianHop::new(k_1, delta_1, c_1), RicianHop::new(k_2, delta_2, c_2))
            }
        };
        Ok(AmplitudeSampler { kind })
    }
}

/// Draws `n` independent cascaded amplitudes.
pub fn sample_cascade_amplitudes<R: Rng + ?Sized>(model: &FadingModel, n: usize, rng: &mut R) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("element count must be at least 1"));
    }
    let s = model.sampler()?;
    Ok((0..n).map(|_| s.sample(rng)).collect())
}

#[derive(Debug, Clone, Copy)]
struct RicianHop {
    los: f64,
    nlos_scale: f64,
}

impl RicianHop {
    fn new(k: f64, delta: f64, c: f64) -> Self {
        RicianHop { los: c * (k / (k + 1.0)).sqrt(), nlos_scale: delta / (k + 1.0).sqrt() }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.los + self.nlos_scale * rayleigh_unit(rng)
    }
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    Rayleigh(f64),
    Nakagami(Gamma<f64>),
    Rician(RicianHop),
    Weibull(f64, f64),
    DoubleRayleigh(f64),
    DoubleRician(RicianHop, RicianHop),
}

/// Unit-scale Rayleigh draw, sqrt(2 E) with E ~ Exp(1).
#[inline]
fn rayleigh_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let e: f64 = Exp1.sample(rng);
    (2.0 * e).sqrt()
}

#[derive(Debug, Clone, Copy)]
pub struct AmplitudeSampler {
    kind: Kind,
}

impl AmplitudeSampler {
    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match &self.kind {
            Kind::Rayleigh(d) => d * rayleigh_unit(rng),
            Kind::Nakagami(g) => g.sample(rng).sqrt(),
            Kind::Rician(h) => h.sample(rng),
            Kind::Weibull(inv_shape, scale) => {
                let e: f64 = Exp1.sample(rng);
                scale * e.powf(*inv_shape)
            }
            Kind::DoubleRayleigh(d) => d * rayleigh_unit(rng) * rayleigh_unit(rng),
            Kind::DoubleRician(a, b) => a.sample(rng) * b.sample(rng),
        }
    }
}
