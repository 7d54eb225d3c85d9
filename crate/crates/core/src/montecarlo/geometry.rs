use crate::analysis::{Mode, NetworkParams};
use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use std::f64::consts::PI;

pub type Point = [f64; 2];

/// Default simulation window: five mean spacings of either process, and
/// never less than 3 km.
pub fn default_window_radius(p: &NetworkParams) -> f64 {
    (5.0 / p.lambda_b.sqrt()).max(5.0 / p.lambda_r.sqrt()).max(3000.0)
}

/// One snapshot of the two Poisson processes around the typical UE at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkRealization {
    pub ris_points: Vec<Point>,
    pub bs_points: Vec<Point>,
    /// Index into `ris_points` of the RIS nearest the origin.
    pub serving_ris: usize,
    /// Index into `bs_points` of the BS nearest the serving RIS.
    pub serving_bs: usize,
    /// Angle of the serving surface's line, in [0, π).
    pub orientation: f64,
    /// Per-BS mode toward the typical UE: `Reflect` when the BS shares the
    /// typical UE's side of the surface. The serving BS's entry is the
    /// typical UE's serving mode.
    pub side_labels: Vec<Mode>,
    pub connected_ue: Point,
    /// Draws discarded because the window held no RIS or no BS.
    pub resamples: u64,
}

fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

impl NetworkRealization {
    pub fn ris(&self) -> Point {
        self.ris_points[self.serving_ris]
    }

    pub fn serving_mode(&self) -> Mode {
        self.side_labels[self.serving_bs]
    }

    /// Serving RIS to typical UE.
    pub fn ris_distance(&self) -> f64 {
        dist(self.ris(), [0.0, 0.0])
    }

    /// Distance from BS `i` to the serving RIS.
    pub fn bs_distance(&self, i: usize) -> f64 {
        dist(self.bs_points[i], self.ris())
    }

    /// Signed side of `q` relative to the surface line; positive on the left
    /// of its direction vector.
    pub fn side_of(&self, q: Point) -> f64 {
        let r = self.ris();
        let (s, c) = self.orientation.sin_cos();
        c * (q[1] - r[1]) - s * (q[0] - r[0])
    }
}

fn uniform_disc<R: Rng + ?Sized>(count: usize, radius: f64, center: Point, rng: &mut R) -> Vec<Point> {
    (0..count)
        .map(|_| {
            let r = radius * rng.random::<f64>().sqrt();
            let (s, c) = (2.0 * PI * rng.random::<f64>()).sin_cos();
            [center[0] + r * c, center[1] + r * s]
        })
        .collect()
}

fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> Result<usize> {
    let d = Poisson::new(mean).map_err(|e| Error::invalid(format!("Poisson mean {mean}: {e}")))?;
    Ok(d.sample(rng) as usize)
}

fn nearest(points: &[Point], to: Point) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, &q) in points.iter().enumerate() {
        let d = (q[0] - to[0]).powi(2) + (q[1] - to[1]).powi(2);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

/// Draws the RIS process in a disc of `window_radius` centered on the
/// typical UE and the BS process in an equal disc centered on the serving
/// RIS, associates, orients the serving surface uniformly, labels
/// every BS by side and places the connected UE `d_c` behind the surface.
pub fn sample_realization<R: Rng + ?Sized>(p: &NetworkParams, window_radius: f64, rng: &mut R) -> Result<NetworkRealization> {
    if !(window_radius > 0.0 && window_radius.is_finite()) {
        return Err(Error::invalid(format!("window radius must be positive, got {window_radius}")));
    }
    if !(p.lambda_b > 0.0 && p.lambda_r > 0.0 && p.d_c > 0.0) {
        return Err(Error::invalid("densities and d_c must be positive"));
    }
    let area = PI * window_radius * window_radius;
    let mut resamples = 0;
    let (ris_points, bs_points) = loop {
        let n_ris = poisson_count(p.lambda_r * area, rng)?;
        let n_bs = poisson_count(p.lambda_b * area, rng)?;
        if n_ris > 0 && n_bs > 0 {
            let ris_points = uniform_disc(n_ris, window_radius, [0.0, 0.0], rng);
            // every BS path runs through the serving RIS, so the BS window is
            // centered there; this keeps the two sides of the surface equal
            let center = ris_points[nearest(&ris_points, [0.0, 0.0])];
            break (ris_points, uniform_disc(n_bs, window_radius, center, rng));
        }
        resamples += 1;
        if resamples > 1000 {
            return Err(Error::invalid("window is too small for the densities: 1000 consecutive empty draws"));
        }
    };
    let serving_ris = nearest(&ris_points, [0.0, 0.0]);
    let ris = ris_points[serving_ris];
    let serving_bs = nearest(&bs_points, ris);
    let orientation = PI * rng.random::<f64>();
    let mut real = NetworkRealization {
        ris_points,
        bs_points,
        serving_ris,
        serving_bs,
        orientation,
        side_labels: Vec::new(),
        connected_ue: ris,
        resamples,
    };
    // a UE exactly on the line has probability zero; count it as the left side
    let ue_side = if real.side_of([0.0, 0.0]) >= 0.0 { 1.0 } else { -1.0 };
    real.side_labels = real
        .bs_points
        .iter()
        .map(|&b| if real.side_of(b) * ue_side > 0.0 { Mode::Reflect } else { Mode::Transmit })
        .collect();
    let (s, c) = orientation.sin_cos();
    // left normal is (-sin, cos); step to the side away from the typical UE
    real.connected_ue = [ris[0] + ue_side * p.d_c * s, ris[1] - ue_side * p.d_c * c];
    Ok(real)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn association_and_sides() {
        let p = NetworkParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let r = sample_realization(&p, 3000.0, &mut rng).unwrap();
            let d0 = r.ris_distance();
            assert!(r.ris_points.iter().all(|&q| dist(q, [0.0, 0.0]) >= d0));
            let rb = r.bs_distance(r.serving_bs);
            assert!((0..r.bs_points.len()).all(|i| r.bs_distance(i) >= rb));
            assert_eq!(r.side_labels.len(), r.bs_points.len());
            assert!((dist(r.connected_ue, r.ris()) - p.d_c).abs() < 1e-9);
            assert!(r.side_of(r.connected_ue) * r.side_of([0.0, 0.0]) < 0.0);
            assert!((0.0..PI).contains(&r.orientation));
        }
    }

    #[test]
    fn tiny_window_resamples() {
        let p = NetworkParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // λπR² ≈ 0.3 for RIS and 0.06 for BS: most draws are empty
        let total: u64 = (0..50).map(|_| sample_realization(&p, 100.0, &mut rng).unwrap().resamples).sum();
        assert!(total > 50);
        assert!(sample_realization(&p, 1.0, &mut rng).is_err());
    }
}
