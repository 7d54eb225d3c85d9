//! Conditional coverage given the serving geometry.
//!
//! With the Gamma signal law rounded to integer shape k̄ and the
//! normalized threshold Z = s (I + n₀²), the conditional coverage is
//! `Σ_{m<k̄} (-1)^m/m! · d^m/dx^m exp(V(x)) |_{x=1}` where
//! `V(x) = -σ x - u Σ_i w_i ξ_0(1, α, D_i; x)` collects the noise term and
//! the Laplace transform of each interferer class i (u = πλ_B r₁²).
//!
//! Every derivative V^{(j)}, j ≥ 1, has sign (-1)^j, so with
//! `q_j = |V^{(j)}| / j!` the Taylor coefficients b_m of `exp(Σ q_j t^j)`
//! are all positive and the sum becomes `e^{V(1)} Σ_{m<k̄} b_m`. No
//! cancellation happens, which is what lets large k̄ run in plain f64.

use crate::error::Result;
use crate::special::xi_scaled;

/// One serving mode: a probability weight and the interferer mixture seen
/// through it.
#[derive(Debug, Clone)]
pub(crate) struct ModeSeries {
    pub weight: f64,
    /// `a[j] = Σ_i w_i |ξ_j(1, α, D_i; 1)| / j!`, j < k̄.
    pub a: Vec<f64>,
    /// σ per unit of (distance product)^α.
    pub noise: f64,
}

impl ModeSeries {
    /// `classes` lists (w_i, D_i) pairs; weights of the Laplace exponents.
    pub fn new(weight: f64, alpha: f64, classes: &[(f64, f64)], k_bar: usize, noise: f64) -> Result<Self> {
        let mut a = vec![0.0; k_bar.max(1)];
        for &(w, d) in classes {
            for (j, slot) in a.iter_mut().enumerate() {
                *slot += w * xi_scaled(alpha, d, 1.0, j as u32)?.abs();
            }
        }
        Ok(ModeSeries { weight, a, noise })
    }

    /// Conditional coverage of this mode. `u = πλ_B r₁²`, `dist_pow` is the
    /// serving path's (r₁ d)^α. The serving-distance density e^{-u} is
    /// included.
    pub fn coverage(&self, u: f64, dist_pow: f64, scratch: &mut Vec<f64>) -> f64 {
        let sigma = self.noise * dist_pow;
        let l0 = -sigma - u * self.a[0];
        let k = self.a.len();
        scratch.clear();
        scratch.push(0.0);
        if k > 1 {
            scratch.push(sigma + u * self.a[1]);
            for j in 2..k {
                scratch.push(u * self.a[j]);
            }
        }
        positive_exp_series(l0, scratch, k)
    }

    /// Splits the conditional coverage into its noise-free part and a
    /// Poisson-weighted noise part: `coverage(u, dp)` equals
    /// `Σ_{i<k̄} e^{-x} x^i/i! · T_i(u)` with x = noise·dp. This fills
    /// `out` with T_i(u), all nonnegative.
    pub fn tail_weights(&self, u: f64, out: &mut Vec<f64>) {
        let k = self.a.len();
        out.clear();
        out.resize(k, 0.0);
        let base = -u * self.a[0];
        let mut ln_lambda = f64::NEG_INFINITY;
        for j in 1..k {
            let q = u * self.a[j];
            if q > 0.0 {
                ln_lambda = ln_lambda.max(q.ln() / j as f64);
            }
        }
        if ln_lambda == f64::NEG_INFINITY {
            out.fill(base.exp());
            return;
        }
        let qs: Vec<f64> = (0..k)
            .map(|j| {
                let q = u * self.a[j];
                if j > 0 && q > 0.0 {
                    (q.ln() - j as f64 * ln_lambda).exp()
                } else {
                    0.0
                }
            })
            .collect();
        let mut g = vec![0.0; k];
        g[0] = 1.0;
        let mut running = base.exp();
        out[k - 1] = running;
        for m in 0..k - 1 {
            let mut acc = 0.0;
            for i in 0..=m {
                acc += (i + 1) as f64 * qs[i + 1] * g[m - i];
            }
            g[m + 1] = acc / (m + 1) as f64;
            if g[m + 1] > 0.0 {
                running += (base + (m + 1) as f64 * ln_lambda + g[m + 1].ln()).exp();
            }
            out[k - 2 - m] = running;
        }
    }
}

/// `Σ_i e^{-x} x^i/i! · t[i]`.
pub(crate) fn poisson_mix(x: f64, t: &[f64]) -> f64 {
    let mut p = (-x).exp();
    if p == 0.0 {
        // all retained Poisson masses are below e^{-400}
        return 0.0;
    }
    let mut total = p * t[0];
    for (i, &ti) in t.iter().enumerate().skip(1) {
        p *= x / i as f64;
        total += p * ti;
    }
    total
}

/// `Σ_{m<k} e^{l0} b_m` with b the Taylor coefficients of exp(Σ_{j≥1} q_j t^j).
///
/// `q[0]` is ignored. The coefficients are computed for t scaled by
/// λ = max_j q_j^{1/j} so that they stay O(1), and each term is
/// recombined in logs.
pub(crate) fn positive_exp_series(l0: f64, q: &[f64], k: usize) -> f64 {
    let mut ln_lambda = f64::NEG_INFINITY;
    for (j, &qj) in q.iter().enumerate().skip(1).take(k.saturating_sub(1)) {
        if qj > 0.0 {
            ln_lambda = ln_lambda.max(qj.ln() / j as f64);
        }
    }
    if ln_lambda == f64::NEG_INFINITY {
        return l0.exp();
    }
    let mut qs = vec![0.0; k];
    for j in 1..k {
        qs[j] = if q[j] > 0.0 { (q[j].ln() - j as f64 * ln_lambda).exp() } else { 0.0 };
    }
    let mut b = vec![0.0; k];
    b[0] = 1.0;
    let mut total = l0.exp();
    for m in 0..k - 1 {
        let mut acc = 0.0;
        for i in 0..=m {
            acc += (i + 1) as f64 * qs[i + 1] * b[m - i];
        }
        b[m + 1] = acc / (m + 1) as f64;
        if b[m + 1] > 0.0 {
            total += (l0 + (m + 1) as f64 * ln_lambda + b[m + 1].ln()).exp();
        }
    }
    total
}

/// Interference-limited coverage of one mode after the serving distance
/// has been integrated out: Σ_{m<k̄} c_m with c the Taylor coefficients of
/// 1 / (a_0 − Σ_{j≥1} a_j t^j).
pub(crate) fn sir_series(a: &[f64]) -> f64 {
    let k = a.len();
    let mut c = vec![0.0; k];
    c[0] = 1.0 / a[0];
    for m in 1..k {
        let mut acc = 0.0;
        for j in 1..=m {
            acc += a[j] * c[m - j];
        }
        c[m] = acc / a[0];
    }
    c.iter().sum()
}
