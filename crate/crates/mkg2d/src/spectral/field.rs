//! Scalar and vector grid functions with explicit representation tags.

use num_complex::Complex64;

use super::grid::{index_of_mode, Grid2D};
use super::SpectralError;

/// Which space the stored values live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Repr {
    /// Samples on the grid points.
    Physical,
    /// Normalized Fourier coefficients.
    Spectral,
}

impl Repr {
    pub fn as_str(&self) -> &'static str {
        match self {
            Repr::Physical => "physical",
            Repr::Spectral => "spectral",
        }
    }
}

/// A complex grid function in either representation.  Fields carrying real
/// data (gauge potentials, currents) are flagged `real_tagged`; their
/// physical samples have imaginary part at roundoff level.
///
/// Values are immutable once constructed: every operation returns a new
/// field, so fields can be shared freely across threads.
#[derive(Clone, Debug)]
pub struct ScalarField {
    grid: Grid2D,
    values: Vec<Complex64>,
    repr: Repr,
    real_tagged: bool,
}

impl ScalarField {
    pub fn zeros(grid: &Grid2D) -> Self {
        Self {
            values: vec![Complex64::new(0.0, 0.0); grid.size()],
            grid: grid.clone(),
            repr: Repr::Spectral,
            real_tagged: true,
        }
    }

    /// Constant field `c` (spectral representation, zero mode only).
    pub fn constant(grid: &Grid2D, c: Complex64) -> Self {
        let mut f = Self::zeros(grid);
        f.values[0] = c;
        f.real_tagged = c.im == 0.0;
        f
    }

    /// Sample a closed-form function on the grid.
    pub fn from_physical_fn<F>(grid: &Grid2D, real_tagged: bool, f: F) -> Self
    where
        F: Fn(f64, f64) -> Complex64,
    {
        let n = grid.n();
        let mut values = Vec::with_capacity(grid.size());
        for i2 in 0..n {
            for i1 in 0..n {
                let (x1, x2) = grid.point(i1, i2);
                values.push(f(x1, x2));
            }
        }
        Self {
            grid: grid.clone(),
            values,
            repr: Repr::Physical,
            real_tagged,
        }
    }

    /// Single Fourier mode `c * exp(i (2 pi / L) m . x)`.
    pub fn from_mode(grid: &Grid2D, m: (i64, i64), c: Complex64) -> Self {
        let n = grid.n();
        assert!(
            m.0 >= -(n as i64) / 2 && m.0 < n as i64 / 2,
            "mode {} not representable on n = {}",
            m.0,
            n
        );
        assert!(m.1 >= -(n as i64) / 2 && m.1 < n as i64 / 2);
        let mut f = Self::zeros(grid);
        f.values[index_of_mode(m.1, n) * n + index_of_mode(m.0, n)] = c;
        f.real_tagged = false;
        f
    }

    pub fn from_values(
        grid: &Grid2D,
        values: Vec<Complex64>,
        repr: Repr,
        real_tagged: bool,
    ) -> Result<Self, SpectralError> {
        if values.len() != grid.size() {
            return Err(SpectralError::InvalidGrid(format!(
                "value buffer has {} entries, grid wants {}",
                values.len(),
                grid.size()
            )));
        }
        Ok(Self {
            grid: grid.clone(),
            values,
            repr,
            real_tagged,
        })
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn repr(&self) -> Repr {
        self.repr
    }

    pub fn is_real_tagged(&self) -> bool {
        self.real_tagged
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Coefficient of the mode `m`, converting if necessary.
    pub fn coefficient(&self, m: (i64, i64)) -> Complex64 {
        let n = self.grid.n();
        let spec = self.to_spectral();
        spec.values[index_of_mode(m.1, n) * n + index_of_mode(m.0, n)]
    }

    pub fn to_spectral(&self) -> Self {
        match self.repr {
            Repr::Spectral => self.clone(),
            Repr::Physical => {
                let mut out = self.clone();
                self.grid.physical_to_spectral(&mut out.values);
                out.repr = Repr::Spectral;
                out
            }
        }
    }

    pub fn to_physical(&self) -> Self {
        match self.repr {
            Repr::Physical => self.clone(),
            Repr::Spectral => {
                let mut out = self.clone();
                self.grid.spectral_to_physical(&mut out.values);
                out.repr = Repr::Physical;
                out
            }
        }
    }

    pub fn to_repr(&self, repr: Repr) -> Self {
        match repr {
            Repr::Physical => self.to_physical(),
            Repr::Spectral => self.to_spectral(),
        }
    }

    /// Real part, as a real-tagged field.
    pub fn re(&self) -> Self {
        let phys = self.to_physical();
        let values = phys
            .values
            .iter()
            .map(|v| Complex64::new(v.re, 0.0))
            .collect();
        Self {
            grid: self.grid.clone(),
            values,
            repr: Repr::Physical,
            real_tagged: true,
        }
    }

    /// Imaginary part, as a real-tagged field.
    pub fn im(&self) -> Self {
        let phys = self.to_physical();
        let values = phys
            .values
            .iter()
            .map(|v| Complex64::new(v.im, 0.0))
            .collect();
        Self {
            grid: self.grid.clone(),
            values,
            repr: Repr::Physical,
            real_tagged: true,
        }
    }

    /// Complex conjugate (pointwise in physical space).
    pub fn conj(&self) -> Self {
        let phys = self.to_physical();
        let values = phys.values.iter().map(|v| v.conj()).collect();
        Self {
            grid: self.grid.clone(),
            values,
            repr: Repr::Physical,
            real_tagged: self.real_tagged,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v *= c;
        }
        out.real_tagged = self.real_tagged && c.im == 0.0;
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    /// `self + c * other`, the workhorse of the time stepper.
    pub fn add_scaled(&self, c: Complex64, other: &Self) -> Self {
        let mut out = self.zip(other, |a, b| a + c * b);
        out.real_tagged = self.real_tagged && other.real_tagged && c.im == 0.0;
        out
    }

    fn zip<F>(&self, other: &Self, f: F) -> Self
    where
        F: Fn(Complex64, Complex64) -> Complex64,
    {
        assert!(self.grid == other.grid, "fields on different grids");
        let other = other.to_repr(self.repr);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self {
            grid: self.grid.clone(),
            values,
            repr: self.repr,
            real_tagged: self.real_tagged && other.real_tagged,
        }
    }

    /// `L^2` norm over the torus, `(int |f|^2 dx)^{1/2}`.
    pub fn norm_l2(&self) -> f64 {
        match self.repr {
            Repr::Physical => {
                let h2 = self.grid.dx() * self.grid.dx();
                (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * h2).sqrt()
            }
            Repr::Spectral => {
                let sum: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
                self.grid.length() * sum.sqrt()
            }
        }
    }

    /// Maximum pointwise modulus on the grid.
    pub fn norm_max(&self) -> f64 {
        self.to_physical()
            .values
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// Largest imaginary part of the physical samples; the real-tag invariant
    /// asks this to stay below `1e-13` (relative to the field scale).
    pub fn max_imag(&self) -> f64 {
        self.to_physical()
            .values
            .iter()
            .map(|v| v.im.abs())
            .fold(0.0, f64::max)
    }

    /// Mean value over the torus (the normalized zero coefficient).
    pub fn mean(&self) -> Complex64 {
        self.to_spectral().values[0]
    }

    pub(crate) fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub(crate) fn set_real_tag(&mut self, tag: bool) {
        self.real_tagged = tag;
    }

    /// Drop imaginary roundoff of a field known to be real: keeps the
    /// real-tag invariant exact after pointwise constructions.
    pub(crate) fn realified(mut self) -> Self {
        let mut phys = self.to_physical();
        for v in phys.values.iter_mut() {
            v.im = 0.0;
        }
        phys.real_tagged = true;
        self = phys;
        self
    }
}

/// Pair of scalar fields sharing one grid; used for the spatial gauge
/// potential and its time derivative.
#[derive(Clone, Debug)]
pub struct VectorField {
    pub x1: ScalarField,
    pub x2: ScalarField,
}

impl VectorField {
    pub fn new(x1: ScalarField, x2: ScalarField) -> Self {
        assert!(x1.grid() == x2.grid(), "components on different grids");
        Self { x1, x2 }
    }

    pub fn zeros(grid: &Grid2D) -> Self {
        Self {
            x1: ScalarField::zeros(grid),
            x2: ScalarField::zeros(grid),
        }
    }

    pub fn grid(&self) -> &Grid2D {
        self.x1.grid()
    }

    pub fn add_scaled(&self, c: Complex64, other: &Self) -> Self {
        Self {
            x1: self.x1.add_scaled(c, &other.x1),
            x2: self.x2.add_scaled(c, &other.x2),
        }
    }

    pub fn norm_l2(&self) -> f64 {
        self.x1.norm_l2().hypot(self.x2.norm_l2())
    }

    pub fn component(&self, axis: Axis) -> &ScalarField {
        match axis {
            Axis::X1 => &self.x1,
            Axis::X2 => &self.x2,
        }
    }
}

/// Spatial axis label used by derivative-like operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X1,
    X2,
}

impl Axis {
    pub fn other(&self) -> Axis {
        match self {
            Axis::X1 => Axis::X2,
            Axis::X2 => Axis::X1,
        }
    }
}
