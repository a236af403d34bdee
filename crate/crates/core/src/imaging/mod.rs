//! Images: PGM/PPM I/O, HSB conversion and the differintegral pipelines
//! (blur/sharpen, thresholded edge overlay, skew embossing).

mod color;
mod pipeline;
mod pnm;

pub use color::{hsb_to_rgb, rgb_to_hsb};
pub use pipeline::{
    edge_overlay, emboss, high_frequency_energy_ratio, process_image, ChannelMode, RescaleMode,
};
pub use pnm::{decode_pnm, encode_pnm, read_image, write_image};

use crate::engine::Channel2D;
use crate::error::{Error, Result};

/// Gray (1 channel) or RGB (3 channels, interleaved) intensities in `[0, 1]`,
/// row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageBuffer {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<f64>,
}

impl ImageBuffer {
    /// Values are clamped into `[0, 1]`; non-finite values are rejected.
    pub fn new(width: usize, height: usize, channels: usize, mut data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidSize(format!("empty image {width}x{height}")));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidParameter(format!(
                "images have 1 or 3 channels, got {channels}"
            )));
        }
        let expected = width * height * channels;
        if data.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: data.len(),
            });
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        for v in &mut data {
            *v = v.clamp(0.0, 1.0);
        }
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    pub fn from_channel(channel: &Channel2D) -> Result<Self> {
        Self::new(channel.width(), channel.height(), 1, channel.values().to_vec())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn pixel(&self, x: usize, y: usize) -> &[f64] {
        let i = (y * self.width + x) * self.channels;
        &self.data[i..i + self.channels]
    }

    /// Plane `c` as a standalone channel.
    pub fn channel(&self, c: usize) -> Channel2D {
        let values = self.data.iter().skip(c).step_by(self.channels).copied().collect();
        Channel2D::new(self.width, self.height, values).expect("image planes are valid channels")
    }

    /// Rec. 601 luma for RGB, the only plane for gray.
    pub fn luma(&self) -> Channel2D {
        if self.channels == 1 {
            return self.channel(0);
        }
        let values = self
            .data
            .chunks_exact(3)
            .map(|p| 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2])
            .collect();
        Channel2D::new(self.width, self.height, values).expect("luma is a valid channel")
    }

    pub(crate) fn from_planes(width: usize, height: usize, planes: &[Vec<f64>]) -> Result<Self> {
        let channels = planes.len();
        let mut data = Vec::with_capacity(width * height * channels);
        for i in 0..width * height {
            for p in planes {
                data.push(p[i]);
            }
        }
        Self::new(width, height, channels, data)
    }
}
