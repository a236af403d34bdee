//! Slow reference implementations used to check the engine.
//!
//! None of these go through the FFT: transforms are direct `O(n²)` sums,
//! filtering is circular convolution with the impulse response, and the
//! Riesz integral is evaluated by product quadrature of the two-sided
//! Riemann–Liouville kernel.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use crate::engine::Signal1D;
use crate::error::{Error, Result};
use crate::spectral::{
    bin_frequency, cos_pi, feller_coefficients, gamma, sin_pi, DiffintParams, Mode, Multiplier,
};

fn twiddles(n: usize, sign: f64) -> Vec<Complex64> {
    (0..n)
        .map(|m| {
            let a = sign * 2.0 * PI * m as f64 / n as f64;
            Complex64::new(a.cos(), a.sin())
        })
        .collect()
}

/// `X_k = Σ_m x_m exp(∓j 2π k m / n)`; the inverse includes `1/n`.
pub fn direct_dft_complex(input: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let n = input.len();
    let tw = twiddles(n, if inverse { 1.0 } else { -1.0 });
    let scale = if inverse { 1.0 / n as f64 } else { 1.0 };
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut idx = 0usize;
            for x in input {
                acc += x * tw[idx];
                idx += k;
                if idx >= n {
                    idx -= n;
                }
            }
            acc * scale
        })
        .collect()
}

/// Direct `O(n²)` DFT of a real signal.
pub fn direct_dft(signal: &Signal1D) -> Vec<Complex64> {
    let input: Vec<Complex64> = signal
        .samples()
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    direct_dft_complex(&input, false)
}

/// Filters by circular convolution with `h = IDFT(H)`, in `O(n²)`.
pub fn convolution_apply(signal: &Signal1D, multiplier: &Multiplier) -> Result<Signal1D> {
    let n = signal.len();
    if multiplier.shape() != [n] {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: multiplier.len(),
        });
    }
    let h = direct_dft_complex(multiplier.values(), true);
    let f = signal.samples();
    let out: Vec<f64> = (0..n)
        .map(|t| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, hm) in h.iter().enumerate() {
                let idx = if t >= m { t - m } else { t + n - m };
                acc += hm * f[idx];
            }
            acc.re
        })
        .collect();
    let out = Signal1D::new(out)?;
    match signal.sample_rate() {
        Some(fs) => out.with_sample_rate(fs),
        None => Ok(out),
    }
}

/// Sampling of a function on `[a, b)` for the Riemann–Liouville quadrature:
/// node `k` sits at `a + k (b - a) / n_points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Integration order, `0 < q < 1`.
    pub q: f64,
    pub support: (f64, f64),
    pub n_points: usize,
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::UnsupportedOrder(self.q));
        }
        let (a, b) = self.support;
        if !(a.is_finite() && b.is_finite() && b > a) {
            return Err(Error::InvalidParameter(format!("bad support [{a}, {b}]")));
        }
        if self.n_points < 2 {
            return Err(Error::InvalidSize(format!(
                "quadrature needs at least 2 points, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.support.1 - self.support.0) / self.n_points as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.n_points)
            .map(|k| self.support.0 + k as f64 * h)
            .collect()
    }
}

/// Riesz fractional integral of order `q` evaluated at every node:
///
/// `D^{-q} g(t) = 1 / (2 Γ(q) cos(qπ/2)) ∫ |t - τ|^{q-1} g(τ) dτ`.
///
/// `g` is interpolated linearly between nodes and taken as zero outside the
/// sampled range. Each cell is integrated in closed form against the kernel,
/// so the integrable singularity at `τ = t` needs no special treatment
/// beyond that.
pub fn rl_riesz_integral_quadrature(f: &[f64], config: &QuadratureConfig) -> Result<Vec<f64>> {
    config.validate()?;
    let n = config.n_points;
    if f.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: f.len(),
        });
    }
    let q = config.q;
    let h = config.spacing();

    // For a cell whose near end is m steps from t, with s = |τ - t| running
    // over [m h, (m+1) h]:
    //   i0[m] = ∫ s^(q-1) ds
    //   i1[m] = ∫ s^(q-1) (s - m h) / h ds
    // The near node gets weight i0 - i1 and the far node i1.
    let pq: Vec<f64> = (0..=n).map(|m| (m as f64 * h).powf(q)).collect();
    let pq1: Vec<f64> = (0..=n).map(|m| (m as f64 * h).powf(q + 1.0)).collect();
    let mut near = vec![0.0; n];
    let mut far = vec![0.0; n];
    for m in 0..n {
        let s0 = m as f64 * h;
        let i0 = (pq[m + 1] - pq[m]) / q;
        let i1 = ((pq1[m + 1] - pq1[m]) / (q + 1.0) - s0 * i0) / h;
        near[m] = i0 - i1;
        far[m] = i1;
    }

    let norm = 1.0 / (2.0 * gamma(q)? * cos_pi(0.5 * q));
    let out = (0..n)
        .map(|j| {
            let mut acc = 0.0;
            // cells to the right: [j + m, j + m + 1]
            for m in 0..n.saturating_sub(j + 1) {
                acc += near[m] * f[j + m] + far[m] * f[j + m + 1];
            }
            // cells to the left: [j - m - 1, j - m]
            for m in 0..j {
                acc += near[m] * f[j - m] + far[m] * f[j - m - 1];
            }
            norm * acc
        })
        .collect();
    Ok(out)
}

/// A single-bin cosine and its exact differintegral.
///
/// The input is `cos(2π bin t / n)`. Its image under a multiplier is
/// `Re(H_+ exp(jφ))` where `H_+` is the gain at the positive bin. The two
/// cases used as fixed references were worked out by hand:
///
/// * Riesz: `H_+ = |ω|^q`, output `|ω|^q cos φ`.
/// * Feller at `θ = 1`: `H_+ = -j |ω|^q`, output `|ω|^q sin φ`.
///
/// Other skews are assembled from the Feller coefficients.
pub fn analytic_sinusoid(
    params: &DiffintParams,
    bin: usize,
    n: usize,
) -> Result<(Signal1D, Signal1D)> {
    params.validate()?;
    if bin == 0 || 2 * bin >= n {
        return Err(Error::InvalidParameter(format!(
            "bin must satisfy 1 <= bin < n/2, got bin={bin}, n={n}"
        )));
    }
    let q = params.q;
    let phase = |t: usize| 2.0 * PI * ((bin * t) % n) as f64 / n as f64;
    let input: Vec<f64> = (0..n).map(|t| phase(t).cos()).collect();
    if q == 0.0 {
        let s = Signal1D::new(input)?;
        return Ok((s.clone(), s));
    }

    let mag = bin_frequency(bin, n).powf(q) * params.scale.gain(q);
    let (a, b) = match params.mode {
        Mode::Riesz => (mag, 0.0),
        Mode::Feller if params.theta == 1.0 => (0.0, -mag),
        Mode::Feller => {
            let c = feller_coefficients(params.theta, q)?;
            (
                mag * (c.c1 + c.c2) * cos_pi(0.5 * q),
                mag * (c.c1 - c.c2) * sin_pi(0.5 * q),
            )
        }
    };
    let expected: Vec<f64> = (0..n)
        .map(|t| a * phase(t).cos() - b * phase(t).sin())
        .collect();
    Ok((Signal1D::new(input)?, Signal1D::new(expected)?))
}

/// Periodic central difference `(f[k+1] - f[k-1]) / (2 Δt)`.
///
/// `Δt` is `1 / sample_rate` when the signal has one. Otherwise it is `π`,
/// the sample spacing that matches normalized frequency: a bin at normalized
/// frequency `ω` oscillates as `exp(j π ω k)`.
pub fn finite_difference_derivative(signal: &Signal1D) -> Result<Signal1D> {
    let n = signal.len();
    if n < 3 {
        return Err(Error::InvalidSize(format!(
            "central differences need at least 3 samples, got {n}"
        )));
    }
    let dt = signal.sample_rate().map_or(PI, |fs| 1.0 / fs);
    let f = signal.samples();
    let out = (0..n)
        .map(|k| (f[(k + 1) % n] - f[(k + n - 1) % n]) / (2.0 * dt))
        .collect();
    let out = Signal1D::new(out)?;
    match signal.sample_rate() {
        Some(fs) => out.with_sample_rate(fs),
        None => Ok(out),
    }
}
