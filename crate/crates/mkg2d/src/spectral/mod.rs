//! Periodic-torus spectral calculus: grids, fields, Fourier multiplier
//! operators and de-aliased pointwise products.
//!
//! Everything downstream (gauge dynamics, elliptic recovery, monitors) is
//! built from the handful of primitives here.  All operations are pure:
//! inputs are never mutated and the only shared state is the per-grid FFT
//! plan, which is safe for concurrent use.

mod dump;
mod field;
mod grid;
mod ops;

pub use dump::{read_field, write_field};
pub use field::{Axis, Repr, ScalarField, VectorField};
pub use grid::Grid2D;
pub use ops::{
    apply_multiplier, dealias_product, dealias_truncate, derivative, divergence, frac_op,
    inv_laplacian, leray, riesz, FracKind,
};

pub(crate) use ops::apply_hermitian_multiplier;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("multiplier symbol is not finite at mode {mode:?}")]
    NonFiniteSymbol { mode: (i64, i64) },
    #[error("input mean {mean:.3e} is not zero; inverse Laplacian needs mean-zero data")]
    MeanNotZero { mean: f64 },
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("pointwise products take 2 or 3 factors, got {0}")]
    BadProductArity(usize),
    #[error("null form needs two distinct axes")]
    EqualAxes,
}
