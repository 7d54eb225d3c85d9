use super::trial::composite_gain;
use crate::error::{Error, Result};
use crate::fading::FadingModel;
use rand::Rng;

/// Sorted draws of the composite power gain of `n` cascades: coherent
/// (Σ h_n)², or random-phase |Σ h_n e^{jθ_n}|². Feeds
/// [`crate::gammafit::ks_distance`].
pub fn sample_composite_power_cdf<R: Rng + ?Sized>(
    model: &FadingModel,
    n: usize,
    coherent: bool,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("element count must be at least 1"));
    }
    if samples == 0 {
        return Err(Error::EmptySamples);
    }
    let s = model.sampler()?;
    let mut out: Vec<f64> = (0..samples).map(|_| composite_gain(&s, n, coherent, rng)).collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}
