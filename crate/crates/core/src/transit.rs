//! Planetary transit light curves and inflection-point detection with the
//! skewed (`θ = 1`) fractional derivative.
//!
//! The eclipsed area during ingress is the circular segment
//! `A = (R²/2)(φ - sin φ)` with `φ = 2 arccos(1 - v t / R)`, and the
//! relative brightness is `1 - A / (π Rs²)`. Egress mirrors ingress and the
//! curve is flat at `1 - (R/Rs)²` in between. The steepest points of the
//! curve sit at the middle of ingress and egress, where the segment chord is
//! a full diameter.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::engine::{apply_window, differintegrate_1d, Signal1D, WindowKind};
use crate::error::{Error, Result};
use crate::spectral::DiffintParams;

/// Geometry and sampling of a central transit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitParams {
    pub star_radius: f64,
    /// Radius of the planet's disk as projected onto the star.
    pub planet_radius: f64,
    /// Transit speed, in radius units per time unit.
    pub speed: f64,
    pub n_samples: usize,
    /// Fraction of the observation window spent at baseline on each side.
    pub padding: f64,
}

impl Default for TransitParams {
    fn default() -> Self {
        Self {
            star_radius: 1.0,
            planet_radius: 0.1,
            speed: 1.0,
            n_samples: 1024,
            padding: 0.4,
        }
    }
}

impl TransitParams {
    pub fn validate(&self) -> Result<()> {
        let Self {
            star_radius: rs,
            planet_radius: r,
            speed: v,
            n_samples: n,
            padding,
        } = *self;
        if !(r.is_finite() && rs.is_finite() && r > 0.0 && r < rs) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < planet radius < star radius, got R={r}, Rs={rs}"
            )));
        }
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidParameter(format!("speed must be positive, got {v}")));
        }
        if n < 64 {
            return Err(Error::InvalidSize(format!("need at least 64 samples, got {n}")));
        }
        if !(0.0..0.5).contains(&padding) {
            return Err(Error::InvalidParameter(format!(
                "padding must lie in [0, 0.5), got {padding}"
            )));
        }
        Ok(())
    }

    /// First to last contact.
    pub fn transit_duration(&self) -> f64 {
        2.0 * (self.star_radius + self.planet_radius) / self.speed
    }

    pub fn ingress_duration(&self) -> f64 {
        2.0 * self.planet_radius / self.speed
    }

    /// Length of the observation window.
    pub fn duration(&self) -> f64 {
        self.transit_duration() / (1.0 - 2.0 * self.padding)
    }

    pub fn sample_spacing(&self) -> f64 {
        self.duration() / self.n_samples as f64
    }

    pub fn first_contact(&self) -> f64 {
        self.padding * self.duration()
    }

    /// `(R / Rs)²`
    pub fn depth(&self) -> f64 {
        (self.planet_radius / self.star_radius).powi(2)
    }

    /// Fractional sample positions of the steepest descent and ascent.
    pub fn inflection_indices(&self) -> (f64, f64) {
        let half_ingress = self.planet_radius / self.speed;
        let t0 = self.first_contact();
        let dt = self.sample_spacing();
        (
            (t0 + half_ingress) / dt,
            (t0 + self.transit_duration() - half_ingress) / dt,
        )
    }

    /// Noiseless relative brightness at time `t`.
    pub fn brightness(&self, t: f64) -> f64 {
        let s = t - self.first_contact();
        let total = self.transit_duration();
        if s <= 0.0 || s >= total {
            return 1.0;
        }
        let r = self.planet_radius;
        let ingress = self.ingress_duration();
        let area = if s < ingress {
            segment_area(r, self.speed * s)
        } else if s > total - ingress {
            segment_area(r, self.speed * (total - s))
        } else {
            std::f64::consts::PI * r * r
        };
        1.0 - area / (std::f64::consts::PI * self.star_radius.powi(2))
    }
}

/// Area of a disk of radius `r` cut off by a chord at penetration depth `h`.
fn segment_area(r: f64, h: f64) -> f64 {
    let phi = 2.0 * (1.0 - h / r).clamp(-1.0, 1.0).acos();
    0.5 * r * r * (phi - phi.sin())
}

/// Additive Gaussian noise; `sigma` is in units of the transit depth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub sigma: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn none() -> Self {
        Self { sigma: 0.0, seed: 0 }
    }
}

/// Samples the light curve at `t_k = k Δt` and adds seeded noise.
///
/// Noise comes from ChaCha8 seeded with `noise.seed`, so the same inputs
/// always give the same curve.
pub fn eclipse_lightcurve(p: &TransitParams, noise: &NoiseSpec) -> Result<Signal1D> {
    p.validate()?;
    if !(noise.sigma.is_finite() && noise.sigma >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "noise sigma must be nonnegative, got {}",
            noise.sigma
        )));
    }
    let dt = p.sample_spacing();
    let mut samples: Vec<f64> = (0..p.n_samples).map(|k| p.brightness(k as f64 * dt)).collect();
    if noise.sigma > 0.0 {
        let normal = Normal::new(0.0, noise.sigma * p.depth())
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
        for s in &mut samples {
            *s += normal.sample(&mut rng);
        }
    }
    Signal1D::new(samples)?.with_sample_rate(1.0 / dt)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Detection {
    /// The two strongest responses, in ascending sample order.
    Found { first: usize, second: usize },
    Failed { peaks_found: usize },
}

impl Detection {
    pub fn indices(&self) -> Option<[usize; 2]> {
        match *self {
            Detection::Found { first, second } => Some([first, second]),
            Detection::Failed { .. } => None,
        }
    }
}

/// Magnitude of the Feller differintegral of the mean-removed, Hann-windowed
/// curve. This is the response whose peaks [`crone_inflection_detect`] reports.
pub fn crone_response(curve: &Signal1D, q: f64, theta: f64) -> Result<Vec<f64>> {
    let n = curve.len();
    if n < 64 {
        return Err(Error::InvalidSize(format!(
            "detection needs at least 64 samples, got {n}"
        )));
    }
    let mean = curve.samples().iter().sum::<f64>() / n as f64;
    let centered = Signal1D::new(curve.samples().iter().map(|v| v - mean).collect())?;
    let windowed = apply_window(&centered, WindowKind::Hann);
    let d = differintegrate_1d(&windowed, &DiffintParams::feller(q, theta))?;
    Ok(d.samples().iter().map(|v| v.abs()).collect())
}

/// Locates the two transitions of a transit curve.
///
/// Local maxima of the response are ranked by height and accepted greedily
/// if they are at least `n/16` samples from every peak already accepted.
pub fn crone_inflection_detect(curve: &Signal1D, q: f64, theta: f64) -> Result<Detection> {
    let response = crone_response(curve, q, theta)?;
    let n = response.len();
    let min_separation = n / 16;

    let mut maxima: Vec<usize> = (0..n)
        .filter(|&i| {
            let v = response[i];
            let left = response[(i + n - 1) % n];
            let right = response[(i + 1) % n];
            v > 0.0 && v >= left && v > right
        })
        .collect();
    maxima.sort_by(|&a, &b| response[b].total_cmp(&response[a]).then(a.cmp(&b)));

    let mut picked: Vec<usize> = Vec::with_capacity(2);
    for i in maxima {
        if picked.iter().all(|&p| p.abs_diff(i) >= min_separation) {
            picked.push(i);
            if picked.len() == 2 {
                break;
            }
        }
    }
    Ok(match picked.as_slice() {
        &[a, b] => Detection::Found {
            first: a.min(b),
            second: a.max(b),
        },
        _ => Detection::Failed {
            peaks_found: picked.len(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baseline_and_plateau() {
        let p = TransitParams::default();
        let c = eclipse_lightcurve(&p, &NoiseSpec::none()).unwrap();
        assert_eq!(c.samples()[0], 1.0);
        assert_eq!(c.samples()[p.n_samples - 1], 1.0);
        let mid = c.samples()[p.n_samples / 2];
        assert!((mid - 0.99).abs() < 1e-15);
        let min = c.samples().iter().copied().fold(f64::INFINITY, f64::min);
        assert!((min - 0.99).abs() < 1e-15);
    }

    #[test]
    fn ingress_midpoint_is_half_covered() {
        let p = TransitParams::default();
        let t = p.first_contact() + p.planet_radius / p.speed;
        let want = 1.0 - p.planet_radius.powi(2) / (2.0 * p.star_radius.powi(2));
        assert!((p.brightness(t) - want).abs() < 1e-15);
    }

    #[test]
    fn curve_is_monotone_through_ingress() {
        let p = TransitParams::default();
        let dt = p.sample_spacing();
        let t0 = p.first_contact();
        let steps = 200;
        let mut prev = 1.0;
        for k in 0..=steps {
            let b = p.brightness(t0 + p.ingress_duration() * k as f64 / steps as f64);
            assert!(b <= prev + 1e-15);
            prev = b;
        }
        assert!(dt > 0.0);
    }

    #[test]
    fn same_seed_same_curve() {
        let p = TransitParams::default();
        let noise = NoiseSpec { sigma: 0.2, seed: 99 };
        let a = eclipse_lightcurve(&p, &noise).unwrap();
        let b = eclipse_lightcurve(&p, &noise).unwrap();
        assert!(a
            .samples()
            .iter()
            .zip(b.samples())
            .all(|(x, y)| x.to_bits() == y.to_bits()));
        let c = eclipse_lightcurve(&p, &NoiseSpec { sigma: 0.2, seed: 100 }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn invalid_geometry() {
        let bad = [
            TransitParams { planet_radius: 1.5, ..Default::default() },
            TransitParams { planet_radius: 0.0, ..Default::default() },
            TransitParams { speed: -1.0, ..Default::default() },
            TransitParams { n_samples: 32, ..Default::default() },
            TransitParams { padding: 0.5, ..Default::default() },
        ];
        for p in bad {
            assert!(eclipse_lightcurve(&p, &NoiseSpec::none()).is_err(), "{p:?}");
        }
        let p = TransitParams::default();
        assert!(eclipse_lightcurve(&p, &NoiseSpec { sigma: -1.0, seed: 0 }).is_err());
    }

    #[test]
    fn noiseless_detection_hits_the_inflections() {
        let p = TransitParams::default();
        let c = eclipse_lightcurve(&p, &NoiseSpec::none()).unwrap();
        let (a, b) = p.inflection_indices();
        for q in [0.5, 1.0] {
            let [i, j] = crone_inflection_detect(&c, q, 1.0).unwrap().indices().unwrap();
            assert!((i as f64 - a).abs() <= 2.0, "q={q}: {i} vs {a}");
            assert!((j as f64 - b).abs() <= 2.0, "q={q}: {j} vs {b}");
        }
    }

    #[test]
    fn flat_curve_fails_gracefully() {
        let flat = Signal1D::new(vec![1.0; 128]).unwrap();
        assert_eq!(
            crone_inflection_detect(&flat, 0.5, 1.0).unwrap(),
            Detection::Failed { peaks_found: 0 }
        );
        let short = Signal1D::new(vec![1.0; 10]).unwrap();
        assert!(crone_inflection_detect(&short, 0.5, 1.0).is_err());
    }
}
