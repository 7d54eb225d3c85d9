use crate::error::{Error, Result};
use crate::fading::FadingModel;
use crate::gammafit::{fit_conventional, fit_interference, fit_signal, GammaParams};
use crate::units;

/// Reference BS density, 2 per km².
pub const LAMBDA_B_REF: f64 = 2e-6;
/// Reference RIS density, 10 per km².
pub const LAMBDA_R_REF: f64 = 1e-5;

/// Deployment, protocol and channel scalars. All quantities linear SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkParams {
    /// BS density (m⁻²).
    pub lambda_b: f64,
    /// STAR-RIS density (m⁻²).
    pub lambda_r: f64,
    /// BS transmit power (W).
    pub p_b: f64,
    pub alpha: f64,
    /// Path-loss intercept (linear).
    pub c_r: f64,
    /// Transmitted share of the incident energy; the reflected share is `1 - beta_t`.
    pub beta_t: f64,
    pub a_t: f64,
    pub a_c: f64,
    /// Noise power (W).
    pub n0_sq: f64,
    pub tau_t: f64,
    pub tau_c: f64,
    /// Connected UE to serving-RIS distance (m).
    pub d_c: f64,
    pub n_elements: usize,
    pub model: FadingModel,
}

impl Default for NetworkParams {
    fn default() -> Self {
        let tau = units::rate_to_sinr(0.1);
        NetworkParams {
            lambda_b: LAMBDA_B_REF,
            lambda_r: LAMBDA_R_REF,
            p_b: units::dbm_to_watts(30.0),
            alpha: 2.8,
            c_r: units::db_to_linear(-30.0),
            beta_t: 0.5,
            a_t: 0.4,
            a_c: 0.6,
            n0_sq: units::noise_watts(100e6),
            tau_t: tau,
            tau_c: tau,
            d_c: 75.0,
            n_elements: 16,
            model: FadingModel::double_rician_default(),
        }
    }
}

impl NetworkParams {
    pub fn beta_r(&self) -> f64 {
        1.0 - self.beta_t
    }

    /// β of a serving mode.
    pub fn beta(&self, mode: Mode) -> f64 {
        match mode {
            Mode::Transmit => self.beta_t,
            Mode::Reflect => self.beta_r(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::invalid(format!("{name} must be positive, got {v}")))
            }
        };
        pos("lambda_b", self.lambda_b)?;
        pos("lambda_r", self.lambda_r)?;
        pos("p_b", self.p_b)?;
        pos("c_r", self.c_r)?;
        pos("d_c", self.d_c)?;
        pos("a_t", self.a_t)?;
        pos("a_c", self.a_c)?;
        if !(self.alpha > 2.0 && self.alpha.is_finite()) {
            return Err(Error::invalid(format!("path-loss exponent must exceed 2, got {}", self.alpha)));
        }
        if !(0.0..=1.0).contains(&self.beta_t) {
            return Err(Error::invalid(format!("beta_t must lie in [0, 1], got {}", self.beta_t)));
        }
        if (self.a_t + self.a_c - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "power coefficients must sum to 1, got a_t + a_c = {}",
                self.a_t + self.a_c
            )));
        }
        if self.a_t >= self.a_c {
            return Err(Error::invalid(format!(
                "the connected UE needs the larger power share, got a_t = {} >= a_c = {}",
                self.a_t, self.a_c
            )));
        }
        if !(self.n0_sq >= 0.0 && self.n0_sq.is_finite()) {
            return Err(Error::invalid(format!("noise power must be non-negative, got {}", self.n0_sq)));
        }
        if !(self.tau_t >= 0.0 && self.tau_c >= 0.0) {
            return Err(Error::invalid("SINR thresholds must be non-negative"));
        }
        if self.n_elements == 0 {
            return Err(Error::invalid("element count must be at least 1"));
        }
        self.model.validate()
    }

    /// Threshold the connected UE's own SINR must clear, τ_c / (a_c − a_t τ_c),
    /// or `None` when SIC cannot succeed (τ_c ≥ a_c / a_t).
    pub fn tau_c_star(&self) -> Option<f64> {
        let den = self.a_c - self.a_t * self.tau_c;
        (den > 0.0).then(|| self.tau_c / den)
    }

    /// Normalized-SINR threshold for the typical UE: it must decode the
    /// connected UE's message first and then its own.
    pub fn tau_t_star(&self) -> Option<f64> {
        self.tau_c_star().map(|tc| tc.max(self.tau_t / self.a_t))
    }
}

/// Serving mode of the STAR-RIS toward a UE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Transmit,
    Reflect,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::Transmit, Mode::Reflect];

    pub fn other(self) -> Mode {
        match self {
            Mode::Transmit => Mode::Reflect,
            Mode::Reflect => Mode::Transmit,
        }
    }
}

/// Gamma fits and thresholds shared by all analytic expressions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    pub gamma_sig: GammaParams,
    pub gamma_int: GammaParams,
    pub k_bar: usize,
    /// `None` when the element count is odd.
    pub gamma_sig_con: Option<GammaParams>,
    pub gamma_int_con: Option<GammaParams>,
    pub k_bar_con: Option<usize>,
    pub tau_t_star: Option<f64>,
    pub tau_c_star: Option<f64>,
}

impl DerivedConstants {
    pub fn new(p: &NetworkParams) -> Result<Self> {
        p.validate()?;
        let m = p.model.moments()?;
        let gamma_sig = fit_signal(m, p.n_elements)?;
        let gamma_int = fit_interference(m, p.n_elements)?;
        let con = fit_conventional(m, p.n_elements).ok();
        Ok(DerivedConstants {
            gamma_sig,
            gamma_int,
            k_bar: gamma_sig.rounded_shape(),
            gamma_sig_con: con.map(|c| c.0),
            gamma_int_con: con.map(|c| c.1),
            k_bar_con: con.map(|c| c.0.rounded_shape()),
            tau_t_star: p.tau_t_star(),
            tau_c_star: p.tau_c_star(),
        })
    }

    /// Interference-to-signal scale ratio D for an interferer class with
    /// split `beta_int` against a serving split `beta_sig`.
    pub fn d_ratio(&self, threshold: f64, beta_int: f64, beta_sig: f64) -> f64 {
        self.gamma_int.scale * threshold * beta_int / (self.gamma_sig.scale * beta_sig)
    }
}

/// An analytic metric with its feasibility status.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticValue {
    pub value: f64,
    /// SIC cannot succeed at these thresholds; `value` is exactly 0.
    pub infeasible: bool,
}

impl AnalyticValue {
    pub fn feasible(value: f64) -> Self {
        AnalyticValue { value, infeasible: false }
    }

    pub fn infeasible() -> Self {
        AnalyticValue { value: 0.0, infeasible: true }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let p = NetworkParams::default();
        p.validate().unwrap();
        assert!((units::watts_to_dbm(p.n0_sq) + 94.0).abs() < 1e-9);
        assert!((p.tau_t - 0.071773).abs() < 1e-6);
    }

    #[test]
    fn power_order_enforced() {
        let p = NetworkParams { a_t: 0.6, a_c: 0.4, ..Default::default() };
        assert!(p.validate().is_err());
        let p = NetworkParams { a_t: 0.3, a_c: 0.6, ..Default::default() };
        assert!(p.validate().is_err());
    }

    #[test]
    fn thresholds() {
        let p = NetworkParams { tau_c: 1.6, ..Default::default() };
        assert_eq!(p.tau_c_star(), None);
        assert_eq!(p.tau_t_star(), None);
        let p = NetworkParams { tau_t: 1.0, tau_c: 0.5, ..Default::default() };
        assert!((p.tau_c_star().unwrap() - 0.5 / 0.4).abs() < 1e-15);
        assert!((p.tau_t_star().unwrap() - 2.5).abs() < 1e-15);
    }

    #[test]
    fn k_bar_at_defaults() {
        let d = DerivedConstants::new(&NetworkParams { n_elements: 4, ..Default::default() }).unwrap();
        assert_eq!(d.k_bar, 8);
        assert_eq!(d.k_bar_con, Some(4));
    }
}
