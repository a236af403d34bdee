use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `|ω|^q`
    #[default]
    Riesz,
    /// `c1 (jω)^q + c2 (-jω)^q`, weighted by the skew.
    Feller,
}

/// Gain applied to the zero-frequency bin.
///
/// Both policies make `q = 0` the exact identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DcPolicy {
    /// `H(0) = 0` for every `q != 0`: the output has zero mean.
    #[default]
    Zero,
    /// `H(0) = 1` for every `q`: the input mean passes through unchanged.
    Keep,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// Frequencies in `[-1, 1]`, Nyquist at 1.
    #[default]
    Normalized,
    /// Results multiplied by `(π fs)^q`, so that `q = 1` approximates the
    /// time derivative of a signal sampled at `fs` Hz.
    Physical { sample_rate: f64 },
}

impl Scale {
    pub fn gain(&self, q: f64) -> f64 {
        match *self {
            Scale::Normalized => 1.0,
            Scale::Physical { sample_rate } => (std::f64::consts::PI * sample_rate).powf(q),
        }
    }
}

/// Image axis along which the 2D skew acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    #[default]
    Horizontal,
    Vertical,
}

/// Parameters of a differintegral: derivative for `q > 0`, integral for
/// `q < 0`, identity at `q = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffintParams {
    pub q: f64,
    /// Skew in `[0, 1]`; ignored in Riesz mode.
    pub theta: f64,
    pub mode: Mode,
    pub dc_policy: DcPolicy,
    pub scale: Scale,
    /// Direction of the skew for 2D Feller operators; ignored in 1D.
    pub axis: Axis,
}

impl DiffintParams {
    pub fn riesz(q: f64) -> Self {
        Self {
            q,
            theta: 0.0,
            mode: Mode::Riesz,
            dc_policy: DcPolicy::Zero,
            scale: Scale::Normalized,
            axis: Axis::Horizontal,
        }
    }

    pub fn feller(q: f64, theta: f64) -> Self {
        Self {
            theta,
            mode: Mode::Feller,
            ..Self::riesz(q)
        }
    }

    pub fn with_dc_policy(mut self, dc_policy: DcPolicy) -> Self {
        self.dc_policy = dc_policy;
        self
    }

    pub fn with_scale(mut self, scale: Scale) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_axis(mut self, axis: Axis) -> Self {
        self.axis = axis;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.q.is_finite() {
            return Err(Error::InvalidParameter(format!("order q must be finite, got {}", self.q)));
        }
        if self.mode == Mode::Feller && !(0.0..=1.0).contains(&self.theta) {
            return Err(Error::InvalidParameter(format!(
                "skew theta must lie in [0, 1], got {}",
                self.theta
            )));
        }
        if self.mode == Mode::Feller && self.q != 0.0 {
            super::feller_coefficients(self.theta, self.q)?;
        }
        if let Scale::Physical { sample_rate } = self.scale {
            if !(sample_rate.is_finite() && sample_rate > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "sample rate must be positive, got {sample_rate}"
                )));
            }
        }
        Ok(())
    }
}

impl Default for DiffintParams {
    fn default() -> Self {
        Self::riesz(0.0)
    }
}
