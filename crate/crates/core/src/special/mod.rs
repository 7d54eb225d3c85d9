//! Special-function kernel: Pochhammer symbols, the Gauss hypergeometric
//! function on the negative real axis, the ξ_m family built on it, Bell
//! polynomials, and adaptive quadrature.

mod bell;
mod beta;
mod hyp2f1;
mod quadrature;
mod sum;
mod xi;

pub use bell::{bell_complete, bell_incomplete, bell_incomplete_table};
pub use beta::{ln_beta, ln_beta_inc};
pub use hyp2f1::hyp2f1_neg;
pub use quadrature::{integrate, integrate_partitioned, integrate_semi_inf, Quadrature};
pub use sum::NeumaierSum;
pub use xi::{xi, xi_hypergeometric, xi_scaled, XiArgs};

use statrs::function::gamma::ln_gamma;

/// Rising factorial (x)_m = x (x+1) ... (x+m-1), with (x)_0 = 1.
pub fn pochhammer(x: f64, m: u32) -> f64 {
    (0..m).fold(1.0, |acc, i| acc * (x + i as f64))
}

/// Γ(x) for any real x that is not a non-positive integer.
pub(crate) fn gamma_signed(x: f64) -> f64 {
    if x > 0.0 {
        ln_gamma(x).exp()
    } else {
        // reflection
        let s = (std::f64::consts::PI * x).sin();
        std::f64::consts::PI / (s * ln_gamma(1.0 - x).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(3.7, 0), 1.0);
        assert_eq!(pochhammer(1.0, 5), 120.0);
        let d = -2.0 / 2.8;
        let expected = d * (d + 1.0) * (d + 2.0);
        assert!((pochhammer(d, 3) - expected).abs() < 1e-15);
    }

    #[test]
    fn signed_gamma_reflection() {
        // Γ(-0.5) = -2√π
        let g = gamma_signed(-0.5);
        assert!((g + 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
        assert!((gamma_signed(5.0) - 24.0).abs() < 1e-10);
    }
}
