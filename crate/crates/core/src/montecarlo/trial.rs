use super::geometry::NetworkRealization;
use crate::analysis::{Mode, NetworkParams};
use crate::fading::AmplitudeSampler;
use rand::Rng;
use std::f64::consts::PI;

/// Surface hardware simulated for a batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    /// One STAR-RIS with N elements and the configured energy split.
    Star,
    /// A reflecting-only and a transmitting-only surface, N/2 elements each,
    /// co-located; every link through them carries full energy.
    Conventional,
}

fn mode_index(m: Mode) -> usize {
    match m {
        Mode::Transmit => 0,
        Mode::Reflect => 1,
    }
}

/// Split-free received gains of one trial, per unit of P_B C_r.
///
/// Interference is kept per BS side (`[transmissive, reflective]` as seen
/// from the typical UE), so any energy split, power allocation, threshold
/// or noise level can be applied afterwards without redrawing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialPowers {
    pub mode: Mode,
    pub sig_t: f64,
    pub int_t: [f64; 2],
    pub sig_c: f64,
    pub int_c: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub sinr_t: f64,
    pub sinr_c: f64,
    /// SINR of the connected UE's message at the typical UE (the SIC stage).
    pub sinr_t_to_c: f64,
    pub covered_t: bool,
    pub covered_c: bool,
    pub rate_t: f64,
    pub rate_c: f64,
}

/// Coherent gain (Σ h_n)² of `n` fresh cascades.
#[inline]
fn coherent<R: Rng + ?Sized>(s: &AmplitudeSampler, n: usize, rng: &mut R) -> f64 {
    let sum: f64 = (0..n).map(|_| s.sample(rng)).sum();
    sum * sum
}

/// Random-phase gain |Σ h_n e^{jθ_n}|².
#[inline]
fn random_phase<R: Rng + ?Sized>(s: &AmplitudeSampler, n: usize, rng: &mut R) -> f64 {
    let (mut re, mut im) = (0.0, 0.0);
    for _ in 0..n {
        let h = s.sample(rng);
        let (sn, cs) = (2.0 * PI * rng.random::<f64>()).sin_cos();
        re += h * cs;
        im += h * sn;
    }
    re * re + im * im
}

pub(crate) fn composite_gain<R: Rng + ?Sized>(s: &AmplitudeSampler, n: usize, coherent_phase: bool, rng: &mut R) -> f64 {
    if coherent_phase {
        coherent(s, n, rng)
    } else {
        random_phase(s, n, rng)
    }
}

/// Per-batch link parameters shared by every trial.
#[derive(Debug, Clone, Copy)]
pub struct Links<'a> {
    pub sampler: &'a AmplitudeSampler,
    /// Elements per surface: N for STAR, N/2 for conventional.
    pub elements: usize,
    pub alpha: f64,
    pub d_c: f64,
    pub lambda_b: f64,
    /// Mean random-phase gain, `elements` times E[h²].
    pub mean_gain: f64,
}

impl<'a> Links<'a> {
    pub fn new(p: &NetworkParams, sampler: &'a AmplitudeSampler, elements: usize) -> crate::Result<Self> {
        let m = p.model.moments()?;
        Ok(Links {
            sampler,
            elements,
            alpha: p.alpha,
            d_c: p.d_c,
            lambda_b: p.lambda_b,
            mean_gain: elements as f64 * m.second_raw(),
        })
    }

    /// Mean interference per side of the surface from BSs farther than
    /// `radius` from the serving RIS, at RIS-UE distance `d`.
    ///
    /// With α close to 2 the aggregate converges slowly: beyond a few km it
    /// still moves coverage by several points, so no practical window can
    /// simply drop it. Its relative spread falls like radius^{1-α}, so the
    /// mean stands in for it.
    pub fn far_field(&self, radius: f64, d: f64) -> f64 {
        if !radius.is_finite() {
            return 0.0;
        }
        let half = 0.5 * self.lambda_b;
        half * 2.0 * PI * self.mean_gain * d.powf(-self.alpha) * radius.powf(2.0 - self.alpha) / (self.alpha - 2.0)
    }
}

impl TrialPowers {
    /// Draws fading for every link of `real` inside `window` and adds the
    /// mean of everything beyond it.
    pub fn draw<R: Rng + ?Sized>(real: &NetworkRealization, links: &Links, window: f64, rng: &mut R) -> Self {
        Self::draw_truncated(real, links, window, window, rng)
    }

    /// [`TrialPowers::draw`] with interferers farther than `cutoff` from the
    /// serving RIS replaced by the far-field mean. Fading is still drawn for
    /// them, so two calls with the same random state differ only in how the
    /// outer ring is treated; this is how window sufficiency is measured.
    pub fn draw_truncated<R: Rng + ?Sized>(
        real: &NetworkRealization,
        links: &Links,
        window: f64,
        cutoff: f64,
        rng: &mut R,
    ) -> Self {
        let cutoff = cutoff.min(window);
        let (n, alpha, d_c) = (links.elements, links.alpha, links.d_c);
        let d_t = real.ris_distance();
        let r_serv = real.bs_distance(real.serving_bs);
        let sig_t = coherent(links.sampler, n, rng) * (r_serv * d_t).powf(-alpha);
        let sig_c = coherent(links.sampler, n, rng) * (r_serv * d_c).powf(-alpha);
        let far_t = links.far_field(cutoff, d_t);
        let far_c = links.far_field(cutoff, d_c);
        let mut int_t = [far_t; 2];
        let mut int_c = [far_c; 2];
        for i in 0..real.bs_points.len() {
            if i == real.serving_bs {
                continue;
            }
            let r = real.bs_distance(i);
            let k = mode_index(real.side_labels[i]);
            let g_t = random_phase(links.sampler, n, rng);
            let g_c = random_phase(links.sampler, n, rng);
            if r <= cutoff {
                int_t[k] += g_t * (r * d_t).powf(-alpha);
                int_c[k] += g_c * (r * d_c).powf(-alpha);
            }
        }
        TrialPowers { mode: real.serving_mode(), sig_t, int_t, sig_c, int_c }
    }

    /// Received powers (signal, interference) at both UEs in watts-per-unit
    /// form: (S_t, I_t, S_c, I_c), scaled by P_B C_r.
    fn received(&self, p: &NetworkParams, topology: Topology) -> (f64, f64, f64, f64) {
        let pc = p.p_b * p.c_r;
        match topology {
            Topology::Star => {
                let bt = p.beta_t;
                let br = p.beta_r();
                let s_t = p.beta(self.mode) * self.sig_t;
                let i_t = bt * self.int_t[0] + br * self.int_t[1];
                // the connected UE sits behind the surface: roles swap
                let s_c = p.beta(self.mode.other()) * self.sig_c;
                let i_c = br * self.int_c[0] + bt * self.int_c[1];
                (pc * s_t, pc * i_t, pc * s_c, pc * i_c)
            }
            Topology::Conventional => (
                pc * self.sig_t,
                pc * (self.int_t[0] + self.int_t[1]),
                pc * self.sig_c,
                pc * (self.int_c[0] + self.int_c[1]),
            ),
        }
    }

    /// NOMA pair with SIC at the typical UE.
    pub fn noma(&self, p: &NetworkParams, topology: Topology) -> TrialOutcome {
        let (s_t, i_t, s_c, i_c) = self.received(p, topology);
        let n0 = p.n0_sq;
        let sinr_t_to_c = p.a_c * s_t / (p.a_t * s_t + i_t + n0);
        let sinr_t = p.a_t * s_t / (i_t + n0);
        let sinr_c = p.a_c * s_c / (p.a_t * s_c + i_c + n0);
        let sic_ok = sinr_t_to_c > p.tau_c;
        TrialOutcome {
            sinr_t,
            sinr_c,
            sinr_t_to_c,
            covered_t: sic_ok && sinr_t > p.tau_t,
            covered_c: sinr_c > p.tau_c,
            rate_t: if sic_ok { sinr_t.ln_1p() / std::f64::consts::LN_2 } else { 0.0 },
            rate_c: sinr_c.ln_1p() / std::f64::consts::LN_2,
        }
    }

    /// Orthogonal baseline: each UE gets half the channel uses at full
    /// power, so a target rate log₂(1+τ) needs SINR above (1+τ)² − 1.
    pub fn oma(&self, p: &NetworkParams, topology: Topology) -> TrialOutcome {
        let (s_t, i_t, s_c, i_c) = self.received(p, topology);
        let sinr_t = s_t / (i_t + p.n0_sq);
        let sinr_c = s_c / (i_c + p.n0_sq);
        let need = crate::analysis::oma_threshold;
        TrialOutcome {
            sinr_t,
            sinr_c,
            sinr_t_to_c: 0.0,
            covered_t: sinr_t > need(p.tau_t),
            covered_c: sinr_c > need(p.tau_c),
            rate_t: 0.5 * sinr_t.ln_1p() / std::f64::consts::LN_2,
            rate_c: 0.5 * sinr_c.ln_1p() / std::f64::consts::LN_2,
        }
    }
}

/// Draws fading on `real`, sampled in a disc of radius `window`, and evaluates the STAR-RIS NOMA outcome.
pub fn run_trial<R: Rng + ?Sized>(real: &NetworkRealization, p: &NetworkParams, window: f64, rng: &mut R) -> crate::Result<TrialOutcome> {
    let sampler = p.model.sampler()?;
    let links = Links::new(p, &sampler, p.n_elements)?;
    let powers = TrialPowers::draw(real, &links, window, rng);
    Ok(powers.noma(p, Topology::Star))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn powers() -> TrialPowers {
        TrialPowers { mode: Mode::Reflect, sig_t: 1e-6, int_t: [2e-9, 3e-9], sig_c: 4e-7, int_c: [1e-9, 1e-9] }
    }

    #[test]
    fn interference_free_and_noiseless_sic() {
        let p = NetworkParams { n0_sq: 0.0, ..Default::default() };
        let q = TrialPowers { int_t: [0.0; 2], int_c: [0.0; 2], ..powers() };
        let o = q.noma(&p, Topology::Star);
        assert!(o.sinr_t.is_infinite());
        assert!((o.sinr_t_to_c - p.a_c / p.a_t).abs() < 1e-12);
        assert_eq!(o.covered_t, p.tau_c < p.a_c / p.a_t);
    }

    #[test]
    fn dead_mode_has_no_signal() {
        let p = NetworkParams { beta_t: 1.0, ..Default::default() };
        let o = powers().noma(&p, Topology::Star);
        assert_eq!(o.sinr_t, 0.0);
        assert!(!o.covered_t);
        assert_eq!(o.rate_t, 0.0);
        // the connected UE is then served in transmission with full energy
        assert!(o.sinr_c > 0.0);
    }

    #[test]
    fn split_roles_swap_for_connected_ue() {
        let p = NetworkParams { beta_t: 0.3, n0_sq: 0.0, ..Default::default() };
        let q = powers();
        let (s_t, i_t, s_c, i_c) = q.received(&p, Topology::Star);
        let pc = p.p_b * p.c_r;
        assert!((s_t - pc * 0.7 * q.sig_t).abs() < 1e-24);
        assert!((i_t - pc * (0.3 * 2e-9 + 0.7 * 3e-9)).abs() < 1e-24);
        assert!((s_c - pc * 0.3 * q.sig_c).abs() < 1e-24);
        assert!((i_c - pc * (0.7 * 1e-9 + 0.3 * 1e-9)).abs() < 1e-24);
    }

    #[test]
    fn conventional_ignores_split() {
        let q = powers();
        let a = q.noma(&NetworkParams { beta_t: 0.2, ..Default::default() }, Topology::Conventional);
        let b = q.noma(&NetworkParams { beta_t: 0.9, ..Default::default() }, Topology::Conventional);
        assert_eq!(a, b);
    }

    #[test]
    fn oma_halves_rates() {
        let p = NetworkParams::default();
        let q = powers();
        let o = q.oma(&p, Topology::Star);
        let (s_t, i_t, _, _) = q.received(&p, Topology::Star);
        let g = s_t / (i_t + p.n0_sq);
        assert!((o.rate_t - 0.5 * (1.0 + g).log2()).abs() < 1e-12);
        assert_eq!(o.covered_t, 0.5 * (1.0 + g).log2() > (1.0 + p.tau_t).log2());
    }
}
