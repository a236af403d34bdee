#![allow(clippy::excessive_precision)]

//! Gamma function and generalized binomial coefficients.

use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(pi * x)` with the argument reduced before scaling, so that values near
/// integers stay accurate.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        (PI * (-1.0 - r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// `cos(pi * x)`, reduced like [`sin_pi`].
pub(crate) fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// The gamma function for real arguments.
///
/// Uses a Lanczos approximation for `x >= 0.5` and the reflection formula
/// `Γ(x) Γ(1-x) = π / sin(πx)` below that. Nonpositive integers are poles.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("gamma of non-finite {x}")));
    }
    if x <= 0.0 && x == x.round() {
        return Err(Error::Pole(x));
    }
    if x < 0.5 {
        let s = sin_pi(x);
        return Ok(PI / (s * gamma_lanczos(1.0 - x)));
    }
    Ok(gamma_lanczos(x))
}

fn gamma_lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

/// Generalized binomial coefficient `Γ(q+1) / (Γ(k+1) Γ(q-k+1))`.
///
/// Evaluated as the falling product `q (q-1) ... (q-k+1) / k!`, which agrees
/// with the gamma ratio wherever that is defined and yields exactly zero
/// when `q` is a nonnegative integer smaller than `k`.
pub fn generalized_binomial(q: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        let i = f64::from(i);
        acc *= (q - i) / (i + 1.0);
        if acc == 0.0 {
            break;
        }
    }
    acc
}
