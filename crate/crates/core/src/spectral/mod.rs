//! Frequency grids, differintegral multipliers and the special functions
//! they rely on.

mod grid;
mod multiplier;
mod params;
mod special;

pub use grid::{bin_frequency, frequency_grid, is_nyquist, FrequencyGrid};
pub use multiplier::{
    feller_coefficients, feller_multiplier, feller_multiplier_along, multiplier_for,
    riesz_multiplier, signed_power, FellerCoefficients, Multiplier, Sign,
    SKEW_SPECIAL_CASE_EPS,
};
pub use params::{Axis, DcPolicy, DiffintParams, Mode, Scale};
pub use special::{gamma, generalized_binomial};
pub(crate) use special::{cos_pi, sin_pi};
