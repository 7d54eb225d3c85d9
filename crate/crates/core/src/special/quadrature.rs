use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Abscissae of the 15-point Kronrod rule on [-1, 1] (non-negative half);
/// odd indices are the embedded 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const MAX_INTERVALS: usize = 5_000;

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * half;
    resasc *= half.abs();
    resabs *= half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Segment { a, b, value, error }
}

/// Globally adaptive Gauss–Kronrod (7/15) quadrature of `f` over [a, b]
/// to absolute tolerance `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    integrate_partitioned(f, &[a, b], tol)
}

/// [`integrate`] over `[breaks[0], breaks[last]]` with the initial
/// partition given by the sorted `breaks`. Pre-splitting at the scales where
/// the integrand lives keeps a narrow peak from slipping between the nodes
/// of a single coarse panel.
pub fn integrate_partitioned<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64], tol: f64) -> Result<Quadrature> {
    if !(tol > 0.0) || breaks.len() < 2 || breaks.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("integrate needs finite bounds and tol > 0"));
    }
    if breaks.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("integration breakpoints must be sorted"));
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(kronrod15(&mut f, w[0], w[1]));
            evaluations += 15;
        }
    }
    if heap.is_empty() {
        return Ok(Quadrature { value: 0.0, abs_error: 0.0, evaluations: 0 });
    }
    let mut value: f64 = heap.iter().map(|s| s.value).sum();
    let mut error: f64 = heap.iter().map(|s| s.error).sum();
    while error > tol {
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::NonConvergence { what: "adaptive quadrature (non-finite integrand)", estimate: value });
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::NonConvergence { what: "adaptive quadrature", estimate: value });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval cannot be split further in floating point
            return Err(Error::NonConvergence { what: "adaptive quadrature (roundoff)", estimate: value });
        }
        let left = kronrod15(&mut f, worst.a, mid);
        let right = kronrod15(&mut f, mid, worst.b);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // resum to shed drift from the running updates
        if heap.len() % 64 == 0 {
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
    let value: f64 = heap.iter().map(|s| s.value).sum();
    Ok(Quadrature { value, abs_error: error, evaluations })
}

/// ∫_lower^∞ f(u) du, computed on t ∈ [0, 1) after u = lower + t/(1-t).
pub fn integrate_semi_inf<F: FnMut(f64) -> f64>(mut f: F, lower: f64, tol: f64) -> Result<f64> {
    let mapped = |t: f64| {
        let s = 1.0 - t;
        let u = lower + t / s;
        if !u.is_finite() {
            // a node rounded onto t = 1
            return 0.0;
        }
        let v = f(u);
        if v == 0.0 {
            0.0
        } else {
            v / (s * s)
        }
    };
    integrate(mapped, 0.0, 1.0, tol).map(|q| q.value)
}
