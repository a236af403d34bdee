//! Python bindings for `differint`.

use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyComplex;

use differint::engine::{apply_window, differintegrate_1d, differintegrate_2d, Channel2D, Signal1D};
use differint::imaging::{self, ChannelMode, ImageBuffer, RescaleMode};
use differint::spectral::{self, FrequencyGrid};
use differint::transit::{self, NoiseSpec, TransitParams};
use differint::{Axis, DcPolicy, Detection, Error, Mode, Scale, WindowKind};

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Io(e) => PyOSError::new_err(e.to_string()),
        Error::DcSingularity { .. }
        | Error::SymmetryViolation { .. }
        | Error::NonFinite(_)
        | Error::Pole(_) => PyRuntimeError::new_err(err.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse_mode(s: &str) -> PyResult<Mode> {
    match s {
        "riesz" => Ok(Mode::Riesz),
        "feller" => Ok(Mode::Feller),
        _ => Err(PyValueError::new_err(format!("mode must be 'riesz' or 'feller', got {s:?}"))),
    }
}

fn parse_dc(s: &str) -> PyResult<DcPolicy> {
    match s {
        "zero" => Ok(DcPolicy::Zero),
        "keep" => Ok(DcPolicy::Keep),
        _ => Err(PyValueError::new_err(format!("dc_policy must be 'zero' or 'keep', got {s:?}"))),
    }
}

fn parse_axis(s: &str) -> PyResult<Axis> {
    match s {
        "horizontal" => Ok(Axis::Horizontal),
        "vertical" => Ok(Axis::Vertical),
        _ => Err(PyValueError::new_err(format!(
            "axis must be 'horizontal' or 'vertical', got {s:?}"
        ))),
    }
}

/// Order, skew and options of a differintegral.
#[pyclass(name = "DiffintParams", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyParams {
    inner: spectral::DiffintParams,
}

#[pymethods]
impl PyParams {
    #[new]
    #[pyo3(signature = (q, theta=0.0, mode="riesz", dc_policy="zero", sample_rate=None, axis="horizontal"))]
    fn new(
        q: f64,
        theta: f64,
        mode: &str,
        dc_policy: &str,
        sample_rate: Option<f64>,
        axis: &str,
    ) -> PyResult<Self> {
        let inner = spectral::DiffintParams {
            q,
            theta,
            mode: parse_mode(mode)?,
            dc_policy: parse_dc(dc_policy)?,
            scale: match sample_rate {
                Some(fs) => Scale::Physical { sample_rate: fs },
                None => Scale::Normalized,
            },
            axis: parse_axis(axis)?,
        };
        inner.validate().map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn riesz(q: f64) -> PyResult<Self> {
        Self::new(q, 0.0, "riesz", "zero", None, "horizontal")
    }

    #[staticmethod]
    fn feller(q: f64, theta: f64) -> PyResult<Self> {
        Self::new(q, theta, "feller", "zero", None, "horizontal")
    }

    #[getter]
    fn q(&self) -> f64 {
        self.inner.q
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.inner.theta
    }

    #[getter]
    fn mode(&self) -> &'static str {
        match self.inner.mode {
            Mode::Riesz => "riesz",
            Mode::Feller => "feller",
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "DiffintParams(q={}, theta={}, mode={:?})",
            self.inner.q,
            self.inner.theta,
            self.mode()
        )
    }
}

/// `D^q` of a real sequence.
#[pyfunction]
#[pyo3(name = "differintegrate_1d", signature = (samples, params, window="none"))]
fn py_differintegrate_1d(samples: Vec<f64>, params: &PyParams, window: &str) -> PyResult<Vec<f64>> {
    let kind = match window {
        "none" => WindowKind::None,
        "hann" => WindowKind::Hann,
        _ => return Err(PyValueError::new_err(format!("window must be 'none' or 'hann', got {window:?}"))),
    };
    let signal = apply_window(&Signal1D::new(samples).map_err(to_py)?, kind);
    Ok(differintegrate_1d(&signal, &params.inner).map_err(to_py)?.into_samples())
}

/// `D^q` of a 2D array given as a list of equal-length rows.
#[pyfunction]
#[pyo3(name = "differintegrate_2d")]
fn py_differintegrate_2d(rows: Vec<Vec<f64>>, params: &PyParams) -> PyResult<Vec<Vec<f64>>> {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(PyValueError::new_err("rows must all have the same length"));
    }
    let channel = Channel2D::new(width, height, rows.concat()).map_err(to_py)?;
    let out = differintegrate_2d(&channel, &params.inner).map_err(to_py)?;
    Ok(out.values().chunks(width).map(<[f64]>::to_vec).collect())
}

fn complex_list<'py>(py: Python<'py>, m: &spectral::Multiplier) -> Vec<Bound<'py, PyComplex>> {
    m.values()
        .iter()
        .map(|v| PyComplex::from_doubles(py, v.re, v.im))
        .collect()
}

/// `|ω|^q` on the 1D grid of length `n`.
#[pyfunction]
#[pyo3(signature = (n, q, dc_policy="zero"))]
fn riesz_multiplier<'py>(py: Python<'py>, n: usize, q: f64, dc_policy: &str) -> PyResult<Vec<Bound<'py, PyComplex>>> {
    let grid = FrequencyGrid::new_1d(n).map_err(to_py)?;
    let m = spectral::riesz_multiplier(&grid, q, parse_dc(dc_policy)?);
    Ok(complex_list(py, &m))
}

/// `c1 (jω)^q + c2 (-jω)^q` on the 1D grid of length `n`.
#[pyfunction]
#[pyo3(signature = (n, q, theta, dc_policy="zero"))]
fn feller_multiplier<'py>(
    py: Python<'py>,
    n: usize,
    q: f64,
    theta: f64,
    dc_policy: &str,
) -> PyResult<Vec<Bound<'py, PyComplex>>> {
    let grid = FrequencyGrid::new_1d(n).map_err(to_py)?;
    let m = spectral::feller_multiplier(&grid, q, theta, parse_dc(dc_policy)?).map_err(to_py)?;
    Ok(complex_list(py, &m))
}

/// `(c1, c2)` for skew `theta` and order `q`.
#[pyfunction]
fn feller_coefficients(theta: f64, q: f64) -> PyResult<(f64, f64)> {
    let c = spectral::feller_coefficients(theta, q).map_err(to_py)?;
    Ok((c.c1, c.c2))
}

/// Normalized frequencies of the `n` DFT bins, Nyquist at 1.
#[pyfunction]
fn frequency_grid(n: usize) -> PyResult<Vec<f64>> {
    Ok(FrequencyGrid::new_1d(n).map_err(to_py)?.axis(0).to_vec())
}

#[pyfunction]
fn gamma(x: f64) -> PyResult<f64> {
    spectral::gamma(x).map_err(to_py)
}

#[pyfunction]
fn generalized_binomial(q: f64, k: u32) -> f64 {
    spectral::generalized_binomial(q, k)
}

fn transit_params(planet_radius: f64, star_radius: f64, speed: f64, n: usize, padding: f64) -> TransitParams {
    TransitParams {
        star_radius,
        planet_radius,
        speed,
        n_samples: n,
        padding,
    }
}

/// Relative brightness of a central transit, with optional seeded noise
/// (`sigma` in units of the depth).
#[pyfunction]
#[pyo3(signature = (planet_radius=0.1, star_radius=1.0, speed=1.0, n=1024, padding=0.4, sigma=0.0, seed=0))]
#[allow(clippy::too_many_arguments)]
fn eclipse_lightcurve(
    planet_radius: f64,
    star_radius: f64,
    speed: f64,
    n: usize,
    padding: f64,
    sigma: f64,
    seed: u64,
) -> PyResult<Vec<f64>> {
    let p = transit_params(planet_radius, star_radius, speed, n, padding);
    let curve = transit::eclipse_lightcurve(&p, &NoiseSpec { sigma, seed }).map_err(to_py)?;
    Ok(curve.into_samples())
}

/// Fractional sample positions of the steepest descent and ascent.
#[pyfunction]
#[pyo3(signature = (planet_radius=0.1, star_radius=1.0, speed=1.0, n=1024, padding=0.4))]
fn inflection_indices(planet_radius: f64, star_radius: f64, speed: f64, n: usize, padding: f64) -> PyResult<(f64, f64)> {
    let p = transit_params(planet_radius, star_radius, speed, n, padding);
    p.validate().map_err(to_py)?;
    Ok(p.inflection_indices())
}

/// The two strongest peaks of the detector response, or `None`.
#[pyfunction]
#[pyo3(signature = (curve, q=0.5, theta=1.0))]
fn crone_inflection_detect(curve: Vec<f64>, q: f64, theta: f64) -> PyResult<Option<(usize, usize)>> {
    let signal = Signal1D::new(curve).map_err(to_py)?;
    Ok(match transit::crone_inflection_detect(&signal, q, theta).map_err(to_py)? {
        Detection::Found { first, second } => Some((first, second)),
        Detection::Failed { .. } => None,
    })
}

/// Gray or RGB image with intensities in [0, 1].
#[pyclass(name = "Image", frozen, skip_from_py_object)]
struct PyImage {
    inner: ImageBuffer,
}

#[pymethods]
impl PyImage {
    #[new]
    fn new(width: usize, height: usize, channels: usize, data: Vec<f64>) -> PyResult<Self> {
        Ok(Self {
            inner: ImageBuffer::new(width, height, channels, data).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        Ok(Self {
            inner: imaging::read_image(path).map_err(to_py)?,
        })
    }

    fn write(&self, path: &str) -> PyResult<()> {
        imaging::write_image(&self.inner, path).map_err(to_py)
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.width()
    }

    #[getter]
    fn height(&self) -> usize {
        self.inner.height()
    }

    #[getter]
    fn channels(&self) -> usize {
        self.inner.channels()
    }

    #[getter]
    fn data(&self) -> Vec<f64> {
        self.inner.data().to_vec()
    }

    /// `rescale` is "minmax", "clamp" or "overlay" (with `gain`).
    #[pyo3(signature = (params, channel_mode="hsb-brightness", rescale="minmax", gain=1.0))]
    fn process(&self, params: &PyParams, channel_mode: &str, rescale: &str, gain: f64) -> PyResult<Self> {
        let channel_mode = match channel_mode {
            "gray" => ChannelMode::Gray,
            "rgb-separate" => ChannelMode::RgbSeparate,
            "hsb-brightness" => ChannelMode::HsbBrightness,
            _ => return Err(PyValueError::new_err(format!("unknown channel mode {channel_mode:?}"))),
        };
        let rescale = match rescale {
            "minmax" => RescaleMode::MinMax,
            "clamp" => RescaleMode::Clamp,
            "overlay" => RescaleMode::Overlay { gain },
            _ => return Err(PyValueError::new_err(format!("unknown rescale mode {rescale:?}"))),
        };
        let inner = imaging::process_image(&self.inner, &params.inner, channel_mode, rescale).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[pyo3(signature = (q=0.5, threshold=0.5))]
    fn edges(&self, q: f64, threshold: f64) -> PyResult<Self> {
        let inner = imaging::edge_overlay(&self.inner, q, threshold).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[pyo3(signature = (q=0.5, theta=0.3, axis="horizontal"))]
    fn emboss(&self, q: f64, theta: f64, axis: &str) -> PyResult<Self> {
        let inner = imaging::emboss(&self.inner, q, theta, parse_axis(axis)?).map_err(to_py)?;
        Ok(Self { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "Image(width={}, height={}, channels={})",
            self.inner.width(),
            self.inner.height(),
            self.inner.channels()
        )
    }
}

/// Fractional derivatives and integrals by spectral filtering.
#[pymodule]
fn differint_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_class::<PyImage>()?;
    m.add_function(wrap_pyfunction!(py_differintegrate_1d, m)?)?;
    m.add_function(wrap_pyfunction!(py_differintegrate_2d, m)?)?;
    m.add_function(wrap_pyfunction!(riesz_multiplier, m)?)?;
    m.add_function(wrap_pyfunction!(feller_multiplier, m)?)?;
    m.add_function(wrap_pyfunction!(feller_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(frequency_grid, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(generalized_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(eclipse_lightcurve, m)?)?;
    m.add_function(wrap_pyfunction!(inflection_indices, m)?)?;
    m.add_function(wrap_pyfunction!(crone_inflection_detect, m)?)?;
    Ok(())
}
