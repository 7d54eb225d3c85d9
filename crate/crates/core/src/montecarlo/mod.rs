//! Monte Carlo engine: Poisson snapshots, per-element fading, SIC.
//!
//! A [`Batch`] stores split-free gains per trial, so one simulation serves
//! every energy split, power allocation, threshold and noise level of a
//! sweep.

mod batch;
mod composite;
mod geometry;
mod trial;

pub use batch::{estimate, simulate, topology_of, trial_rng, Batch};
pub use composite::sample_composite_power_cdf;
pub use geometry::{default_window_radius, sample_realization, NetworkRealization, Point};
pub use trial::{run_trial, Links, Topology, TrialOutcome, TrialPowers};
