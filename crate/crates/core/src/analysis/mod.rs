//! Analytic engine: interference Laplace transforms, coverage
//! probabilities and ergodic rates of the typical and connected UE.
//!
//! All metrics reduce to integrals over the serving BS–RIS distance (and,
//! for the typical UE, the RIS–UE distance) of a conditional coverage
//! computed in [`kernel`] from the Gamma-fitted signal law.

mod coverage;
mod kernel;
mod laplace;
mod params;
mod rate;

pub use coverage::{
    coverage, coverage_connected_conventional, coverage_connected_star, coverage_connected_star_maxbeta, coverage_sir,
    coverage_typical_conventional, coverage_typical_conventional_sir, coverage_typical_star,
    coverage_typical_star_maxbeta, coverage_typical_star_sir, Architecture, Ue,
};
pub use laplace::{laplace_connected, laplace_conventional, laplace_typical};
pub use params::{AnalyticValue, DerivedConstants, Mode, NetworkParams, LAMBDA_B_REF, LAMBDA_R_REF};
pub use rate::{
    ccdf_sinr_connected, ccdf_sinr_typical, coverage_oma, oma_threshold, rate_connected, rate_connected_conventional, rate_connected_star,
    rate_connected_star_maxbeta, rate_oma, rate_typical, rate_typical_conventional, rate_typical_star,
    rate_typical_star_maxbeta,
};
