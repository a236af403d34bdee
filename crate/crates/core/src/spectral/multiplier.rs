//! Frequency-domain multipliers for Riesz and Feller differintegrals.
//!
//! Riesz mode multiplies each bin by `|ω|^q`. Feller mode multiplies by
//! `c1 (jω)^q + c2 (-jω)^q` with skew-dependent coefficients. The two modes
//! use opposite sign conventions: at `θ = 0` the Feller multiplier equals
//! `-|ω|^q`, the negative of the Riesz multiplier away from DC.
//!
//! Fractional powers use the principal branch
//! `(±jω)^q = |ω|^q exp(±j (qπ/2) sgn ω)`. On even-length axes the Nyquist
//! bin is shared by `+1` and `-1`; there `sgn ω` is taken as zero, so only
//! the even part of the Feller multiplier survives and real inputs stay real.

use num_complex::Complex64;
use rustfft::num_complex;

use super::grid::{is_nyquist, FrequencyGrid};
use super::params::{Axis, DcPolicy, DiffintParams, Mode};
use super::special::{cos_pi, sin_pi};
use crate::error::{Error, Result};

/// Below this `|sin πθ|` the general Feller coefficients are replaced by the
/// closed forms at `θ = 0` or `θ = 1`.
pub const SKEW_SPECIAL_CASE_EPS: f64 = 1e-9;

/// Trig values of `qπ/2` below this magnitude count as zero when checking
/// the special-case coefficients for poles.
const DEGENERATE_EPS: f64 = 1e-12;

/// Complex gain per frequency bin, laid out like its [`FrequencyGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Multiplier {
    shape: Vec<usize>,
    values: Vec<Complex64>,
}

impl Multiplier {
    pub fn new(shape: Vec<usize>, values: Vec<Complex64>) -> Result<Self> {
        let expected: usize = shape.iter().product();
        if expected != values.len() {
            return Err(Error::LengthMismatch {
                expected,
                actual: values.len(),
            });
        }
        Ok(Self { shape, values })
    }

    pub fn ones(shape: Vec<usize>) -> Self {
        let len = shape.iter().product();
        Self {
            shape,
            values: vec![Complex64::new(1.0, 0.0); len],
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_gain(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Pointwise product; composing two operators multiplies their multipliers.
    pub fn compose(&self, other: &Multiplier) -> Result<Multiplier> {
        if self.shape != other.shape {
            return Err(Error::InvalidSize(format!(
                "cannot compose multipliers of shapes {:?} and {:?}",
                self.shape, other.shape
            )));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Multiplier {
            shape: self.shape.clone(),
            values,
        })
    }

    /// Largest `|H(-k) - conj(H(k))|` over all bins.
    pub fn hermitian_defect(&self) -> f64 {
        let (rows, cols) = match self.shape.as_slice() {
            [n] => (1, *n),
            [h, w] => (*h, *w),
            _ => return f64::NAN,
        };
        let mut worst: f64 = 0.0;
        for r in 0..rows {
            let rn = (rows - r) % rows;
            for c in 0..cols {
                let cn = (cols - c) % cols;
                let a = self.values[r * cols + c];
                let b = self.values[rn * cols + cn];
                worst = worst.max((a - b.conj()).norm());
            }
        }
        worst
    }

    fn scale_non_dc(&mut self, gain: f64) {
        if gain != 1.0 {
            for v in self.values.iter_mut().skip(1) {
                *v *= gain;
            }
        }
    }
}

/// Which of `(+jω)^q` and `(-jω)^q` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    PlusJ,
    MinusJ,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::PlusJ => 1.0,
            Sign::MinusJ => -1.0,
        }
    }
}

/// `(±jω)^q` on the principal branch: `|ω|^q exp(±j (qπ/2) sgn ω)`.
///
/// At `ω = 0` this is `0` for `q > 0` and `1` for `q = 0`; negative orders
/// report [`Error::DcSingularity`] and leave the choice of DC gain to the caller.
pub fn signed_power(omega: f64, q: f64, sign: Sign) -> Result<Complex64> {
    if omega == 0.0 {
        return if q > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else if q == 0.0 {
            Ok(Complex64::new(1.0, 0.0))
        } else {
            Err(Error::DcSingularity { q })
        };
    }
    let sgn = if omega > 0.0 { 1.0 } else { -1.0 };
    Ok(signed_power_with_sgn(omega.abs(), q, sign, sgn))
}

fn signed_power_with_sgn(magnitude: f64, q: f64, sign: Sign, sgn: f64) -> Complex64 {
    let m = magnitude.powf(q);
    let half = 0.5 * q;
    Complex64::new(m * cos_pi(half), m * sign.factor() * sgn * sin_pi(half))
}

/// Weights of the right- and left-handed operators in the Feller multiplier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FellerCoefficients {
    pub c1: f64,
    pub c2: f64,
}

/// `c1 = -sin((q+θ)π/2) / sin πθ`, `c2 = -sin((q-θ)π/2) / sin πθ`.
///
/// Where `sin πθ` vanishes the closed forms are used instead:
/// `c1 = c2 = -1 / (2 cos(qπ/2))` at `θ = 0` and
/// `c1 = -c2 = -1 / (2 sin(qπ/2))` at `θ = 1`. These are not the limits of
/// the general expression, which diverges at both ends.
pub fn feller_coefficients(theta: f64, q: f64) -> Result<FellerCoefficients> {
    if !(0.0..=1.0).contains(&theta) || !q.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Feller coefficients need theta in [0, 1] and finite q, got theta={theta}, q={q}"
        )));
    }
    let s = sin_pi(theta);
    if s.abs() < SKEW_SPECIAL_CASE_EPS {
        if theta < 0.5 {
            let c = cos_pi(0.5 * q);
            if c.abs() < DEGENERATE_EPS {
                return Err(Error::DegenerateOrder { q, theta });
            }
            let c1 = -1.0 / (2.0 * c);
            return Ok(FellerCoefficients { c1, c2: c1 });
        }
        let sn = sin_pi(0.5 * q);
        if sn.abs() < DEGENERATE_EPS {
            return Err(Error::DegenerateOrder { q, theta });
        }
        let c1 = -1.0 / (2.0 * sn);
        return Ok(FellerCoefficients { c1, c2: -c1 });
    }
    Ok(FellerCoefficients {
        c1: -sin_pi(0.5 * (q + theta)) / s,
        c2: -sin_pi(0.5 * (q - theta)) / s,
    })
}

fn dc_gain(q: f64, policy: DcPolicy) -> Complex64 {
    if q == 0.0 || policy == DcPolicy::Keep {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// `|ω|^q` per bin (radial magnitude in 2D). `q = 0` gives exactly all ones.
pub fn riesz_multiplier(grid: &FrequencyGrid, q: f64, dc_policy: DcPolicy) -> Multiplier {
    let shape = grid.shape();
    if q == 0.0 {
        return Multiplier::ones(shape);
    }
    let mut values: Vec<Complex64> = grid
        .radial()
        .into_iter()
        .map(|r| Complex64::new(r.powf(q), 0.0))
        .collect();
    values[0] = dc_gain(q, dc_policy);
    Multiplier { shape, values }
}

/// Feller multiplier with the skew acting horizontally (the only axis in 1D).
pub fn feller_multiplier(
    grid: &FrequencyGrid,
    q: f64,
    theta: f64,
    dc_policy: DcPolicy,
) -> Result<Multiplier> {
    feller_multiplier_along(grid, q, theta, Axis::Horizontal, dc_policy)
}

/// `c1 (jω)^q + c2 (-jω)^q` per bin.
///
/// In 2D the magnitude is the radial frequency and the sign of the phase
/// follows the frequency along `axis`, which yields directional relief.
pub fn feller_multiplier_along(
    grid: &FrequencyGrid,
    q: f64,
    theta: f64,
    axis: Axis,
    dc_policy: DcPolicy,
) -> Result<Multiplier> {
    let shape = grid.shape();
    if q == 0.0 {
        return Ok(Multiplier::ones(shape));
    }
    let FellerCoefficients { c1, c2 } = feller_coefficients(theta, q)?;
    let radial = grid.radial();

    // sgn of the frequency along the skew axis, zero at DC and Nyquist
    let axis_sign = |k: usize, n: usize, w: f64| -> f64 {
        if w == 0.0 || is_nyquist(k, n) {
            0.0
        } else {
            w.signum()
        }
    };
    let signs: Vec<f64> = match (shape.as_slice(), axis) {
        ([n], _) => (0..*n).map(|k| axis_sign(k, *n, grid.axis(0)[k])).collect(),
        ([h, w], Axis::Horizontal) => (0..h * w)
            .map(|i| axis_sign(i % w, *w, grid.axis(1)[i % w]))
            .collect(),
        ([h, w], Axis::Vertical) => (0..h * w)
            .map(|i| axis_sign(i / w, *h, grid.axis(0)[i / w]))
            .collect(),
        _ => unreachable!("grids are 1D or 2D"),
    };

    let mut values: Vec<Complex64> = radial
        .iter()
        .zip(&signs)
        .map(|(&r, &sgn)| {
            if r == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let plus = signed_power_with_sgn(r, q, Sign::PlusJ, sgn);
            let minus = signed_power_with_sgn(r, q, Sign::MinusJ, sgn);
            plus * c1 + minus * c2
        })
        .collect();
    values[0] = dc_gain(q, dc_policy);
    Ok(Multiplier { shape, values })
}

/// The full multiplier described by `params`, including physical scaling.
pub fn multiplier_for(grid: &FrequencyGrid, params: &DiffintParams) -> Result<Multiplier> {
    params.validate()?;
    let mut m = match params.mode {
        Mode::Riesz => riesz_multiplier(grid, params.q, params.dc_policy),
        Mode::Feller => {
            feller_multiplier_along(grid, params.q, params.theta, params.axis, params.dc_policy)?
        }
    };
    if params.q != 0.0 {
        m.scale_non_dc(params.scale.gain(params.q));
    }
    Ok(m)
}
