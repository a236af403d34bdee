use crate::error::{Error, Result};

/// Normalized frequency of DFT bin `k` out of `n`: `2k/n` up to the Nyquist
/// bin, `2(k-n)/n` above it. Range is `[-1, 1]`.
#[inline]
pub fn bin_frequency(k: usize, n: usize) -> f64 {
    if 2 * k <= n {
        2.0 * k as f64 / n as f64
    } else {
        -(2.0 * (n - k) as f64 / n as f64)
    }
}

/// True when `k` is the shared `+1/-1` bin of an even-length axis.
#[inline]
pub fn is_nyquist(k: usize, n: usize) -> bool {
    n.is_multiple_of(2) && 2 * k == n
}

/// Per-bin normalized frequencies in DFT order.
///
/// A 2D grid keeps one axis per dimension; axis 0 runs over rows (vertical
/// frequency) and axis 1 over columns (horizontal frequency). Flattened
/// quantities such as [`FrequencyGrid::radial`] are row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    axes: Vec<Vec<f64>>,
}

impl FrequencyGrid {
    pub fn new_1d(n: usize) -> Result<Self> {
        check_axis(n)?;
        Ok(Self {
            axes: vec![axis_values(n)],
        })
    }

    pub fn new_2d(height: usize, width: usize) -> Result<Self> {
        check_axis(height)?;
        check_axis(width)?;
        Ok(Self {
            axes: vec![axis_values(height), axis_values(width)],
        })
    }

    pub fn dims(&self) -> usize {
        self.axes.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(Vec::len).collect()
    }

    /// Total number of bins.
    pub fn len(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn axis(&self, i: usize) -> &[f64] {
        &self.axes[i]
    }

    /// `|ω|` in 1D, `sqrt(ω1² + ω2²)` in 2D, flattened row-major.
    pub fn radial(&self) -> Vec<f64> {
        match self.axes.as_slice() {
            [w] => w.iter().map(|v| v.abs()).collect(),
            [rows, cols] => rows
                .iter()
                .flat_map(|r| cols.iter().map(move |c| r.hypot(*c)))
                .collect(),
            _ => unreachable!("grids are 1D or 2D"),
        }
    }
}

/// Builds a 1D grid of length `n`, or an `n x n` 2D grid.
pub fn frequency_grid(n: usize, dims: usize) -> Result<FrequencyGrid> {
    match dims {
        1 => FrequencyGrid::new_1d(n),
        2 => FrequencyGrid::new_2d(n, n),
        _ => Err(Error::InvalidParameter(format!(
            "grid dimension must be 1 or 2, got {dims}"
        ))),
    }
}

fn check_axis(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidSize(format!(
            "each axis needs at least 2 samples, got {n}"
        )));
    }
    Ok(())
}

fn axis_values(n: usize) -> Vec<f64> {
    (0..n).map(|k| bin_frequency(k, n)).collect()
}
