//! Applying differintegral multipliers: forward DFT, pointwise product,
//! inverse DFT.
//!
//! The forward transform is unnormalized and the inverse carries the `1/n`
//! factor (`1/(w h)` in 2D). The DFT treats its input as one period of a
//! periodic signal, so non-periodic data shows wraparound artifacts at the
//! ends; [`apply_window`] tapers the ends to reduce them.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{multiplier_for, DiffintParams, FrequencyGrid, Multiplier};

/// Imaginary residual allowed after the inverse transform, relative to the
/// RMS of the real output.
pub const IMAG_RESIDUAL_REL_TOL: f64 = 1e-8;

/// Absolute slack on the residual, relative to `max|H| * rms(input)`. Covers
/// outputs that are zero up to roundoff, e.g. constant inputs.
const IMAG_RESIDUAL_ROUNDOFF: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Signal1D {
    samples: Vec<f64>,
    sample_rate: Option<f64>,
}

impl Signal1D {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidSize(format!(
                "a signal needs at least 2 samples, got {}",
                samples.len()
            )));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self {
            samples,
            sample_rate: None,
        })
    }

    pub fn with_sample_rate(mut self, sample_rate: f64) -> Result<Self> {
        if !(sample_rate.is_finite() && sample_rate > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "sample rate must be positive, got {sample_rate}"
            )));
        }
        self.sample_rate = Some(sample_rate);
        Ok(self)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sample_rate(&self) -> Option<f64> {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    fn with_samples(&self, samples: Vec<f64>) -> Self {
        Self {
            samples,
            sample_rate: self.sample_rate,
        }
    }
}

/// One real-valued image plane, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel2D {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl Channel2D {
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidSize(format!("empty channel {width}x{height}")));
        }
        if values.len() != width * height {
            return Err(Error::LengthMismatch {
                expected: width * height,
                actual: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self {
            width,
            height,
            values,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowKind {
    #[default]
    None,
    Hann,
}

/// Imaginary part left over after the inverse transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub imag_rms: f64,
    pub real_rms: f64,
    pub tolerance: f64,
}

impl Residual {
    /// `imag_rms / real_rms`, or 0 when both vanish.
    pub fn ratio(&self) -> f64 {
        if self.imag_rms == 0.0 {
            0.0
        } else {
            self.imag_rms / self.real_rms
        }
    }
}

pub(crate) fn rms(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    (values.iter().map(|v| v * v).sum::<f64>() / values.len() as f64).sqrt()
}

/// In-place unnormalized forward DFT.
pub fn fft_forward(buf: &mut [Complex64]) {
    FftPlanner::new().plan_fft_forward(buf.len()).process(buf);
}

/// In-place inverse DFT including the `1/n` factor.
pub fn fft_inverse(buf: &mut [Complex64]) {
    let n = buf.len();
    FftPlanner::new().plan_fft_inverse(n).process(buf);
    let scale = 1.0 / n as f64;
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

/// Row-major 2D transform: all rows, then all columns. The inverse includes
/// the `1/(w h)` factor.
pub fn fft_2d(buf: &mut [Complex64], width: usize, height: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let (row_fft, col_fft) = if inverse {
        (planner.plan_fft_inverse(width), planner.plan_fft_inverse(height))
    } else {
        (planner.plan_fft_forward(width), planner.plan_fft_forward(height))
    };
    row_fft.process(buf);
    let mut column = vec![Complex64::new(0.0, 0.0); height];
    for x in 0..width {
        for (y, c) in column.iter_mut().enumerate() {
            *c = buf[y * width + x];
        }
        col_fft.process(&mut column);
        for (y, c) in column.iter().enumerate() {
            buf[y * width + x] = *c;
        }
    }
    if inverse {
        let scale = 1.0 / (width * height) as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }
}

fn to_complex(values: &[f64]) -> Vec<Complex64> {
    values.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

fn split_real(buf: Vec<Complex64>, input_rms: f64, max_gain: f64) -> Result<(Vec<f64>, Residual)> {
    let imag: Vec<f64> = buf.iter().map(|v| v.im).collect();
    let real: Vec<f64> = buf.into_iter().map(|v| v.re).collect();
    let imag_rms = rms(&imag);
    let real_rms = rms(&real);
    let tolerance =
        IMAG_RESIDUAL_REL_TOL * real_rms + IMAG_RESIDUAL_ROUNDOFF * max_gain * input_rms;
    if imag_rms > tolerance {
        return Err(Error::SymmetryViolation {
            residual: imag_rms,
            tolerance,
        });
    }
    Ok((
        real,
        Residual {
            imag_rms,
            real_rms,
            tolerance,
        },
    ))
}

/// Filters a real signal by an arbitrary 1D multiplier.
pub fn apply_multiplier_1d(
    signal: &Signal1D,
    multiplier: &Multiplier,
) -> Result<(Signal1D, Residual)> {
    if multiplier.shape() != [signal.len()] {
        return Err(Error::LengthMismatch {
            expected: signal.len(),
            actual: multiplier.len(),
        });
    }
    let mut buf = to_complex(signal.samples());
    fft_forward(&mut buf);
    for (b, h) in buf.iter_mut().zip(multiplier.values()) {
        *b *= h;
    }
    fft_inverse(&mut buf);
    let (out, residual) = split_real(buf, rms(signal.samples()), multiplier.max_gain())?;
    Ok((signal.with_samples(out), residual))
}

/// Filters a real channel by an arbitrary 2D multiplier of shape `[height, width]`.
pub fn apply_multiplier_2d(
    channel: &Channel2D,
    multiplier: &Multiplier,
) -> Result<(Channel2D, Residual)> {
    let (w, h) = (channel.width, channel.height);
    if multiplier.shape() != [h, w] {
        return Err(Error::InvalidSize(format!(
            "multiplier shape {:?} does not match {h}x{w} channel",
            multiplier.shape()
        )));
    }
    let mut buf = to_complex(&channel.values);
    fft_2d(&mut buf, w, h, false);
    for (b, m) in buf.iter_mut().zip(multiplier.values()) {
        *b *= m;
    }
    fft_2d(&mut buf, w, h, true);
    let (values, residual) = split_real(buf, rms(&channel.values), multiplier.max_gain())?;
    Ok((
        Channel2D {
            width: w,
            height: h,
            values,
        },
        residual,
    ))
}

/// `D^q` of a 1D signal, together with the discarded imaginary residual.
pub fn differintegrate_1d_detailed(
    signal: &Signal1D,
    params: &DiffintParams,
) -> Result<(Signal1D, Residual)> {
    let grid = FrequencyGrid::new_1d(signal.len())?;
    let multiplier = multiplier_for(&grid, params)?;
    apply_multiplier_1d(signal, &multiplier)
}

/// `D^q` of a 1D signal.
pub fn differintegrate_1d(signal: &Signal1D, params: &DiffintParams) -> Result<Signal1D> {
    differintegrate_1d_detailed(signal, params).map(|(s, _)| s)
}

pub fn differintegrate_2d_detailed(
    channel: &Channel2D,
    params: &DiffintParams,
) -> Result<(Channel2D, Residual)> {
    let grid = FrequencyGrid::new_2d(channel.height, channel.width)?;
    let multiplier = multiplier_for(&grid, params)?;
    apply_multiplier_2d(channel, &multiplier)
}

/// `D^q` of an image plane using the radial frequency `sqrt(ω1² + ω2²)`.
pub fn differintegrate_2d(channel: &Channel2D, params: &DiffintParams) -> Result<Channel2D> {
    differintegrate_2d_detailed(channel, params).map(|(c, _)| c)
}

/// Hann weights `0.5 (1 - cos(2πk/(n-1)))` with both endpoints exactly zero.
pub fn hann_weights(n: usize) -> Vec<f64> {
    let denom = (n - 1) as f64;
    (0..n)
        .map(|k| {
            if k == 0 || k == n - 1 {
                0.0
            } else {
                0.5 * (1.0 - (2.0 * std::f64::consts::PI * k as f64 / denom).cos())
            }
        })
        .collect()
}

pub fn apply_window(signal: &Signal1D, kind: WindowKind) -> Signal1D {
    match kind {
        WindowKind::None => signal.clone(),
        WindowKind::Hann => {
            let w = hann_weights(signal.len());
            signal.with_samples(signal.samples.iter().zip(w).map(|(s, w)| s * w).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{DcPolicy, Scale};
    use std::f64::consts::PI;

    fn cosine(n: usize, bin: usize) -> Vec<f64> {
        (0..n)
            .map(|t| (2.0 * PI * (bin * t) as f64 / n as f64).cos())
            .collect()
    }

    #[test]
    fn single_bin_cosine_is_scaled_by_the_multiplier() {
        let n = 64;
        let f = Signal1D::new(cosine(n, 3)).unwrap();
        let out = differintegrate_1d(&f, &DiffintParams::riesz(0.5)).unwrap();
        let gain = (6.0f64 / 64.0).sqrt();
        for (o, i) in out.samples().iter().zip(f.samples()) {
            assert!((o - gain * i).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_order_is_identity() {
        let f = Signal1D::new(vec![0.3, -1.2, 4.0, 2.5, 0.0, 9.1, -3.3]).unwrap();
        for p in [DiffintParams::riesz(0.0), DiffintParams::feller(0.0, 0.4)] {
            let out = differintegrate_1d(&f, &p).unwrap();
            for (a, b) in out.samples().iter().zip(f.samples()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn constant_signal_is_annihilated() {
        let f = Signal1D::new(vec![5.0; 32]).unwrap();
        let out = differintegrate_1d(&f, &DiffintParams::riesz(0.5)).unwrap();
        assert!(out.samples().iter().all(|v| v.abs() < 1e-13));
        let kept = differintegrate_1d(
            &f,
            &DiffintParams::riesz(0.5).with_dc_policy(DcPolicy::Keep),
        )
        .unwrap();
        assert!(kept.samples().iter().all(|v| (v - 5.0).abs() < 1e-12));
    }

    #[test]
    fn sample_rate_survives() {
        let f = Signal1D::new(cosine(16, 2)).unwrap().with_sample_rate(100.0).unwrap();
        let p = DiffintParams::riesz(1.0).with_scale(Scale::Physical { sample_rate: 100.0 });
        let out = differintegrate_1d(&f, &p).unwrap();
        assert_eq!(out.sample_rate(), Some(100.0));
        // d/dt cos(2π f0 t) has amplitude 2π f0, f0 = 2 * 100 / 16
        let amp = out.samples().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!((amp - 2.0 * PI * 12.5).abs() < 1e-9);
    }

    #[test]
    fn channel_examples() {
        let c = Channel2D::new(5, 4, vec![0.7; 20]).unwrap();
        let out = differintegrate_2d(&c, &DiffintParams::riesz(-1.3)).unwrap();
        assert!(out.values().iter().all(|v| v.abs() < 1e-12));

        let (w, h) = (8, 8);
        let vals: Vec<f64> = (0..h)
            .flat_map(|y| {
                (0..w).map(move |x| {
                    (2.0 * PI * x as f64 / w as f64).cos() * (2.0 * PI * y as f64 / h as f64).cos()
                })
            })
            .collect();
        let c = Channel2D::new(w, h, vals.clone()).unwrap();
        let out = differintegrate_2d(&c, &DiffintParams::riesz(2.0)).unwrap();
        for (o, i) in out.values().iter().zip(&vals) {
            assert!((o - 0.125 * i).abs() < 1e-12);
        }
        let same = differintegrate_2d(&c, &DiffintParams::riesz(0.0)).unwrap();
        for (o, i) in same.values().iter().zip(&vals) {
            assert!((o - i).abs() < 1e-12);
        }
    }

    #[test]
    fn non_hermitian_multiplier_is_rejected() {
        let f = Signal1D::new(cosine(8, 1)).unwrap();
        let mut vals = vec![Complex64::new(1.0, 0.0); 8];
        vals[1] = Complex64::new(0.0, 1.0);
        let m = Multiplier::new(vec![8], vals).unwrap();
        assert!(matches!(
            apply_multiplier_1d(&f, &m),
            Err(Error::SymmetryViolation { .. })
        ));
    }

    #[test]
    fn short_or_invalid_input() {
        assert!(matches!(Signal1D::new(vec![1.0]), Err(Error::InvalidSize(_))));
        assert!(matches!(Signal1D::new(vec![1.0, f64::NAN]), Err(Error::NonFinite(1))));
        assert!(Channel2D::new(2, 2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn hann_examples() {
        let ones = |n| Signal1D::new(vec![1.0; n]).unwrap();
        assert_eq!(apply_window(&ones(3), WindowKind::Hann).samples(), &[0.0, 1.0, 0.0]);
        let five = apply_window(&ones(5), WindowKind::Hann);
        let want = [0.0, 0.5, 1.0, 0.5, 0.0];
        for (a, b) in five.samples().iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        let f = Signal1D::new(vec![2.0, -1.0, 3.0]).unwrap();
        assert_eq!(apply_window(&f, WindowKind::None), f);
    }
}
