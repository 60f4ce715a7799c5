//! Uniform periodic grid on `[0, L)^2` with cached FFT plans.
//!
//! Spectral data is stored as *normalized* Fourier coefficients: a field
//! `f(x) = sum_m c_m exp(i k_m . x)` with `k_m = (2 pi / L) m` is represented
//! by the array of `c_m`.  With this normalization, zero-padding a field onto
//! a finer grid leaves the coefficients untouched, which keeps the de-aliasing
//! machinery free of scale factors.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::SpectralError;

/// Factor by which products are evaluated on a finer grid before truncation.
pub(crate) const PAD_FACTOR: usize = 2;

struct FftPair {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

struct GridData {
    n: usize,
    length: f64,
    coarse: FftPair,
    fine: FftPair,
}

/// Square periodic grid: `n` modes per axis (power of two, `n >= 8`) over
/// period `length` (default `2 pi`).
///
/// Cloning is cheap; the FFT plans are shared behind an `Arc` and are safe
/// for concurrent use.
#[derive(Clone)]
pub struct Grid2D {
    data: Arc<GridData>,
}

impl Grid2D {
    /// Grid with the default period `2 pi`.
    pub fn new(n: usize) -> Result<Self, SpectralError> {
        Self::with_length(n, 2.0 * PI)
    }

    pub fn with_length(n: usize, length: f64) -> Result<Self, SpectralError> {
        if n < 8 || !n.is_power_of_two() {
            return Err(SpectralError::InvalidGrid(format!(
                "n must be a power of two >= 8, got {n}"
            )));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(SpectralError::InvalidGrid(format!(
                "length must be positive and finite, got {length}"
            )));
        }
        let mut planner = FftPlanner::new();
        let plan = |planner: &mut FftPlanner<f64>, len: usize| FftPair {
            forward: planner.plan_fft_forward(len),
            inverse: planner.plan_fft_inverse(len),
        };
        let coarse = plan(&mut planner, n);
        let fine = plan(&mut planner, PAD_FACTOR * n);
        Ok(Self {
            data: Arc::new(GridData {
                n,
                length,
                coarse,
                fine,
            }),
        })
    }

    pub fn n(&self) -> usize {
        self.data.n
    }

    pub fn length(&self) -> f64 {
        self.data.length
    }

    /// Number of grid points (and spectral bins).
    pub fn size(&self) -> usize {
        self.data.n * self.data.n
    }

    /// Grid spacing `L / n`.
    pub fn dx(&self) -> f64 {
        self.data.length / self.data.n as f64
    }

    /// Physical coordinates of the point with indices `(i1, i2)`.
    pub fn point(&self, i1: usize, i2: usize) -> (f64, f64) {
        let h = self.dx();
        (i1 as f64 * h, i2 as f64 * h)
    }

    /// Integer mode number of spectral bin `i` along one axis, in
    /// `{-n/2, ..., n/2 - 1}`.
    pub fn mode_of(&self, i: usize) -> i64 {
        mode_of_index(i, self.data.n)
    }

    /// Wavevector of bin `(i1, i2)`: `k_j = (2 pi / L) m_j`.
    pub fn wavevector(&self, i1: usize, i2: usize) -> (f64, f64) {
        let scale = 2.0 * PI / self.data.length;
        (
            self.mode_of(i1) as f64 * scale,
            self.mode_of(i2) as f64 * scale,
        )
    }

    /// Largest retained mode number of the 2/3-rule band, `floor(n/3)`.
    pub fn dealias_cutoff(&self) -> i64 {
        (self.data.n / 3) as i64
    }

    /// Forward 2-D FFT of physical samples into normalized coefficients.
    pub(crate) fn physical_to_spectral(&self, values: &mut [Complex64]) {
        debug_assert_eq!(values.len(), self.size());
        fft2(&self.data.coarse.forward, values, self.data.n);
        let scale = 1.0 / self.size() as f64;
        for v in values.iter_mut() {
            *v *= scale;
        }
    }

    /// Inverse of [`physical_to_spectral`]: evaluates the trigonometric
    /// polynomial on the grid.
    pub(crate) fn spectral_to_physical(&self, values: &mut [Complex64]) {
        debug_assert_eq!(values.len(), self.size());
        fft2(&self.data.coarse.inverse, values, self.data.n);
    }

    pub(crate) fn fine_n(&self) -> usize {
        PAD_FACTOR * self.data.n
    }

    pub(crate) fn fine_to_physical(&self, values: &mut [Complex64]) {
        fft2(&self.data.fine.inverse, values, self.fine_n());
    }

    pub(crate) fn fine_to_spectral(&self, values: &mut [Complex64]) {
        let fine = self.fine_n();
        fft2(&self.data.fine.forward, values, fine);
        let scale = 1.0 / (fine * fine) as f64;
        for v in values.iter_mut() {
            *v *= scale;
        }
    }
}

impl PartialEq for Grid2D {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.n == other.data.n && self.data.length == other.data.length)
    }
}

impl fmt::Debug for Grid2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid2D")
            .field("n", &self.data.n)
            .field("length", &self.data.length)
            .finish()
    }
}

pub(crate) fn mode_of_index(i: usize, n: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

pub(crate) fn index_of_mode(m: i64, n: usize) -> usize {
    if m >= 0 {
        m as usize
    } else {
        (m + n as i64) as usize
    }
}

/// In-place 2-D FFT: transform rows, transpose, transform rows, transpose.
fn fft2(plan: &Arc<dyn Fft<f64>>, values: &mut [Complex64], n: usize) {
    plan.process(values);
    transpose(values, n);
    plan.process(values);
    transpose(values, n);
}

fn transpose(values: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            values.swap(i * n + j, j * n + i);
        }
    }
}
