//! Fractional derivatives and integrals of signals and images, computed as
//! Fourier multipliers.
//!
//! The order `q` selects a derivative (`q > 0`), an integral (`q < 0`) or
//! the identity (`q = 0`). Riesz mode filters by `|ω|^q`; Feller mode by
//! `c1(θ, q) (jω)^q + c2(θ, q) (-jω)^q`, where the skew `θ` trades between
//! the symmetric (`θ = 0`) and antisymmetric (`θ = 1`) operators.

pub mod cli;
pub mod engine;
pub mod error;
pub mod imaging;
pub mod oracles;
pub mod signal_io;
pub mod spectral;
pub mod transit;

pub use engine::{
    apply_window, differintegrate_1d, differintegrate_2d, Channel2D, Signal1D, WindowKind,
};
pub use error::{Error, Result};
pub use imaging::{ChannelMode, ImageBuffer, RescaleMode};
pub use spectral::{Axis, DcPolicy, DiffintParams, Mode, Scale};
pub use transit::{Detection, NoiseSpec, TransitParams};
