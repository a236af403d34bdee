use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::color::{hsb_to_rgb, rgb_to_hsb};
use super::ImageBuffer;
use crate::engine::{differintegrate_2d, fft_2d, Channel2D};
use crate::error::{Error, Result};
use crate::spectral::{Axis, DiffintParams, FrequencyGrid};

/// Ranges narrower than this are treated as flat by the min-max rescale.
const FLAT_RANGE: f64 = 1e-12;

/// Which planes of an image pass through the differintegral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelMode {
    /// Luma only; the output is a gray image.
    Gray,
    /// Red, green and blue independently.
    RgbSeparate,
    /// The brightness of the HSB decomposition; hue and saturation are kept.
    #[default]
    HsbBrightness,
}

/// How a filtered plane is mapped back into `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RescaleMode {
    /// Affine map of the plane's range onto `[0, 1]`; a flat plane becomes 0.5.
    MinMax,
    /// Clip to `[0, 1]`.
    Clamp,
    /// `clamp(original + gain * filtered)`.
    Overlay { gain: f64 },
}

impl RescaleMode {
    fn validate(&self) -> Result<()> {
        match *self {
            RescaleMode::Overlay { gain } if !(gain.is_finite() && gain > 0.0) => Err(
                Error::InvalidParameter(format!("overlay gain must be positive, got {gain}")),
            ),
            _ => Ok(()),
        }
    }

    fn apply(&self, filtered: &[f64], original: &[f64]) -> Vec<f64> {
        match *self {
            RescaleMode::MinMax => minmax(filtered).unwrap_or_else(|| vec![0.5; filtered.len()]),
            RescaleMode::Clamp => filtered.iter().map(|v| v.clamp(0.0, 1.0)).collect(),
            RescaleMode::Overlay { gain } => original
                .iter()
                .zip(filtered)
                .map(|(o, f)| (o + gain * f).clamp(0.0, 1.0))
                .collect(),
        }
    }
}

fn minmax(values: &[f64]) -> Option<Vec<f64>> {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let range = hi - lo;
    if range <= FLAT_RANGE {
        return None;
    }
    Some(values.iter().map(|v| (v - lo) / range).collect())
}

struct Hsb {
    hue: Vec<f64>,
    sat: Vec<f64>,
    bright: Vec<f64>,
}

fn split_hsb(img: &ImageBuffer) -> Hsb {
    let n = img.width() * img.height();
    let mut out = Hsb {
        hue: Vec::with_capacity(n),
        sat: Vec::with_capacity(n),
        bright: Vec::with_capacity(n),
    };
    for p in img.data().chunks_exact(3) {
        let (h, s, v) = rgb_to_hsb(p[0], p[1], p[2]);
        out.hue.push(h);
        out.sat.push(s);
        out.bright.push(v);
    }
    out
}

fn merge_hsb(width: usize, height: usize, hsb: &Hsb, brightness: &[f64]) -> Result<ImageBuffer> {
    let mut data = Vec::with_capacity(width * height * 3);
    for ((h, s), v) in hsb.hue.iter().zip(&hsb.sat).zip(brightness) {
        let (r, g, b) = hsb_to_rgb(*h, *s, *v);
        data.extend([r, g, b]);
    }
    ImageBuffer::new(width, height, 3, data)
}

/// Runs `op` on the plane that carries the image's intensity (the gray
/// plane, or HSB brightness for color) and puts the result back.
fn on_intensity(img: &ImageBuffer, op: impl Fn(&[f64]) -> Result<Vec<f64>>) -> Result<ImageBuffer> {
    let (w, h) = (img.width(), img.height());
    if img.channels() == 1 {
        let out = op(img.data())?;
        return ImageBuffer::new(w, h, 1, out);
    }
    let hsb = split_hsb(img);
    let out = op(&hsb.bright)?;
    merge_hsb(w, h, &hsb, &out)
}

fn filter_plane(width: usize, height: usize, plane: &[f64], params: &DiffintParams) -> Result<Vec<f64>> {
    let ch = Channel2D::new(width, height, plane.to_vec())?;
    Ok(differintegrate_2d(&ch, params)?.into_values())
}

/// Fractional blur (`q < 0`) or sharpening (`q > 0`) of an image.
pub fn process_image(
    img: &ImageBuffer,
    params: &DiffintParams,
    channel_mode: ChannelMode,
    rescale: RescaleMode,
) -> Result<ImageBuffer> {
    params.validate()?;
    rescale.validate()?;
    let (w, h) = (img.width(), img.height());
    let run = |plane: &[f64]| -> Result<Vec<f64>> {
        let filtered = filter_plane(w, h, plane, params)?;
        Ok(rescale.apply(&filtered, plane))
    };
    match (channel_mode, img.channels()) {
        (ChannelMode::Gray, _) => {
            let luma = img.luma();
            ImageBuffer::new(w, h, 1, run(luma.values())?)
        }
        (_, 1) => ImageBuffer::new(w, h, 1, run(img.data())?),
        (ChannelMode::RgbSeparate, _) => {
            let planes = (0..3)
                .map(|c| run(img.channel(c).values()))
                .collect::<Result<Vec<_>>>()?;
            ImageBuffer::from_planes(w, h, &planes)
        }
        (ChannelMode::HsbBrightness, _) => on_intensity(img, run),
    }
}

/// Adds the thresholded magnitude of `D^q` to the image.
///
/// The response `|D^q x|` is min-max normalized; pixels whose normalized
/// response reaches `threshold` get it added to their intensity. A flat
/// response marks no pixels. Color images are processed on HSB brightness.
pub fn edge_overlay(img: &ImageBuffer, q: f64, threshold: f64) -> Result<ImageBuffer> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::InvalidParameter(format!(
            "threshold must lie in [0, 1], got {threshold}"
        )));
    }
    let params = DiffintParams::riesz(q);
    params.validate()?;
    let (w, h) = (img.width(), img.height());
    on_intensity(img, |plane| {
        let response: Vec<f64> = filter_plane(w, h, plane, &params)?
            .into_iter()
            .map(f64::abs)
            .collect();
        let detail = minmax(&response).unwrap_or_else(|| vec![0.0; response.len()]);
        Ok(plane
            .iter()
            .zip(detail)
            .map(|(x, d)| {
                let add = if d >= threshold { d } else { 0.0 };
                (x + add).clamp(0.0, 1.0)
            })
            .collect())
    })
}

/// Skewed fractional derivative shown as relief: zero response maps to
/// mid gray and the largest magnitude to 0 or 1.
pub fn emboss(img: &ImageBuffer, q: f64, theta: f64, axis: Axis) -> Result<ImageBuffer> {
    let params = DiffintParams::feller(q, theta).with_axis(axis);
    params.validate()?;
    let (w, h) = (img.width(), img.height());
    on_intensity(img, |plane| {
        let d = filter_plane(w, h, plane, &params)?;
        let peak = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if peak <= FLAT_RANGE {
            return Ok(vec![0.5; d.len()]);
        }
        Ok(d.iter().map(|v| 0.5 + 0.5 * v / peak).collect())
    })
}

/// Share of non-DC spectral energy at radial normalized frequency above
/// `cutoff`. The DC bin is left out so that the ratio ignores the mean and
/// any affine rescaling of the plane.
pub fn high_frequency_energy_ratio(channel: &Channel2D, cutoff: f64) -> Result<f64> {
    let (w, h) = (channel.width(), channel.height());
    let grid = FrequencyGrid::new_2d(h, w)?;
    let mut buf: Vec<Complex64> = channel
        .values()
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    fft_2d(&mut buf, w, h, false);
    let (mut high, mut total) = (0.0, 0.0);
    for (v, r) in buf.iter().zip(grid.radial()).skip(1) {
        let e = v.norm_sqr();
        total += e;
        if r > cutoff {
            high += e;
        }
    }
    Ok(if total > 0.0 { high / total } else { 0.0 })
}
