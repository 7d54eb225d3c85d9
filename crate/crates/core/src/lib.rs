//! Coverage probability and ergodic rate of STAR-RIS aided NOMA multi-cell
//! downlinks.
//!
//! Two independent engines live here:
//!
//! * [`analysis`] evaluates the stochastic-geometry expressions built on a
//!   moment-matched Gamma model of the composite channel ([`gammafit`]) and
//!   the hypergeometric / Bell-polynomial kernel in [`special`].
//! * [`montecarlo`] samples Poisson networks, draws per-element cascaded
//!   fading from [`fading`], and measures the same metrics empirically.
//!
//! Each engine is the other's oracle.

pub mod analysis;
pub mod error;
pub mod fading;
pub mod gammafit;
pub mod montecarlo;
pub mod result;
pub mod special;
pub mod units;

pub use error::{Error, Result};
