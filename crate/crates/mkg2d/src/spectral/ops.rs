//! Fourier multiplier operators and alias-free pointwise products.
//!
//! All negative-order homogeneous operators (Riesz transforms, `D^alpha` with
//! `alpha < 0`, the inverse Laplacian) send the `k = 0` mode to zero: on the
//! torus they are only defined on mean-zero data, and every use below has a
//! derivative factor guaranteeing that.

use num_complex::Complex64;

use super::field::{Axis, Repr, ScalarField, VectorField};
use super::grid::{index_of_mode, mode_of_index, Grid2D};
use super::SpectralError;

/// Multiply the spectral coefficients pointwise by `m(k)`.  The symbol is
/// called on every retained wavevector including `k = 0`, so the caller
/// chooses the zero-mode convention explicitly.  The representation tag of
/// the input is preserved; the real tag is dropped (a generic symbol need not
/// be Hermitian).
pub fn apply_multiplier<F>(f: &ScalarField, m: F) -> Result<ScalarField, SpectralError>
where
    F: Fn(f64, f64) -> Complex64,
{
    apply_multiplier_impl(f, m, false)
}

/// Variant for symbols with `m(-k) = conj(m(k))`, which map real fields to
/// real fields; keeps the real tag.
pub(crate) fn apply_hermitian_multiplier<F>(
    f: &ScalarField,
    m: F,
) -> Result<ScalarField, SpectralError>
where
    F: Fn(f64, f64) -> Complex64,
{
    apply_multiplier_impl(f, m, true)
}

fn apply_multiplier_impl<F>(
    f: &ScalarField,
    m: F,
    hermitian: bool,
) -> Result<ScalarField, SpectralError>
where
    F: Fn(f64, f64) -> Complex64,
{
    let grid = f.grid().clone();
    let n = grid.n();
    let mut out = f.to_spectral();
    let was_real = f.is_real_tagged();
    {
        let values = out.values_mut();
        for i2 in 0..n {
            for i1 in 0..n {
                let (k1, k2) = grid.wavevector(i1, i2);
                let sym = m(k1, k2);
                if !sym.re.is_finite() || !sym.im.is_finite() {
                    return Err(SpectralError::NonFiniteSymbol {
                        mode: (mode_of_index(i1, n), mode_of_index(i2, n)),
                    });
                }
                values[i2 * n + i1] *= sym;
            }
        }
    }
    out.set_real_tag(was_real && hermitian);
    Ok(out.to_repr(f.repr()))
}

/// Spectral partial derivative along `axis` (symbol `i k_j`).
pub fn derivative(f: &ScalarField, axis: Axis) -> ScalarField {
    apply_hermitian_multiplier(f, |k1, k2| match axis {
        Axis::X1 => Complex64::new(0.0, k1),
        Axis::X2 => Complex64::new(0.0, k2),
    })
    .expect("derivative symbol is finite")
}

/// Riesz transform `R_j`: symbol `i k_j / |k|`, zero at `k = 0`.
pub fn riesz(f: &ScalarField, axis: Axis) -> ScalarField {
    apply_hermitian_multiplier(f, |k1, k2| {
        let norm = k1.hypot(k2);
        if norm == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            let kj = match axis {
                Axis::X1 => k1,
                Axis::X2 => k2,
            };
            Complex64::new(0.0, kj / norm)
        }
    })
    .expect("riesz symbol is finite")
}

/// Fractional derivative flavor: homogeneous `D^alpha = |k|^alpha` or
/// inhomogeneous `Lambda^alpha = (1 + |k|^2)^{alpha/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FracKind {
    Homogeneous,
    Inhomogeneous,
}

pub fn frac_op(f: &ScalarField, alpha: f64, kind: FracKind) -> ScalarField {
    apply_hermitian_multiplier(f, |k1, k2| {
        let k2norm = k1 * k1 + k2 * k2;
        let v = match kind {
            FracKind::Homogeneous => {
                if k2norm == 0.0 {
                    // |k|^0 is the identity; other powers drop the mean mode.
                    if alpha == 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    k2norm.powf(alpha / 2.0)
                }
            }
            FracKind::Inhomogeneous => (1.0 + k2norm).powf(alpha / 2.0),
        };
        Complex64::new(v, 0.0)
    })
    .expect("fractional symbols are finite")
}

/// Solve `Delta u = f` for the zero-mean solution.  Requires `f` to have
/// (numerically) zero mean; the tolerance is relative to the field scale.
pub fn inv_laplacian(f: &ScalarField) -> Result<ScalarField, SpectralError> {
    let mean = f.mean().norm();
    if mean > 1e-12 * (1.0 + f.norm_l2()) {
        return Err(SpectralError::MeanNotZero { mean });
    }
    apply_hermitian_multiplier(f, |k1, k2| {
        let k2norm = k1 * k1 + k2 * k2;
        if k2norm == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(-1.0 / k2norm, 0.0)
        }
    })
}

/// Leray projection onto divergence-free vector fields,
/// `(P X)_j = R^k (R_j X_k - R_k X_j)`, built verbatim from Riesz transforms.
pub fn leray(x: &VectorField) -> VectorField {
    // the diagonal terms R_j X_j - R_j X_j drop out, leaving one rotation
    let r1x2 = riesz(&x.x2, Axis::X1);
    let r2x1 = riesz(&x.x1, Axis::X2);
    // j = 1: R^2 (R_1 X_2 - R_2 X_1)
    let p1 = riesz(&r1x2.sub(&r2x1), Axis::X2);
    // j = 2: R^1 (R_2 X_1 - R_1 X_2)
    let p2 = riesz(&r2x1.sub(&r1x2), Axis::X1);
    VectorField::new(p1, p2)
}

/// Spectral divergence `d_1 X_1 + d_2 X_2`.
pub fn divergence(x: &VectorField) -> ScalarField {
    derivative(&x.x1, Axis::X1).add(&derivative(&x.x2, Axis::X2))
}

/// Pointwise product of two or three fields with 2/3-rule truncation.
///
/// The product is evaluated alias-free on a grid refined by a factor of two
/// and the result is truncated to the band `max(|m_1|, |m_2|) <= n/3`, so a
/// true product mode outside the band is removed rather than folded back in.
pub fn dealias_product(factors: &[&ScalarField]) -> Result<ScalarField, SpectralError> {
    if factors.len() < 2 || factors.len() > 3 {
        return Err(SpectralError::BadProductArity(factors.len()));
    }
    let grid = factors[0].grid().clone();
    for f in factors {
        if *f.grid() != grid {
            return Err(SpectralError::GridMismatch);
        }
    }
    let mut product: Option<Vec<Complex64>> = None;
    for f in factors {
        let mut fine = pad_to_fine(&f.to_spectral(), &grid);
        grid.fine_to_physical(&mut fine);
        product = Some(match product {
            None => fine,
            Some(mut acc) => {
                for (a, b) in acc.iter_mut().zip(&fine) {
                    *a *= b;
                }
                acc
            }
        });
    }
    let mut fine = product.unwrap();
    grid.fine_to_spectral(&mut fine);
    let coarse = truncate_to_coarse(&fine, &grid);
    let real = factors.iter().all(|f| f.is_real_tagged());
    let mut out = ScalarField::from_values(&grid, coarse, Repr::Spectral, real)?;
    out = out.to_repr(factors[0].repr());
    Ok(out)
}

/// Truncate a field to the 2/3 band without multiplying anything.
pub fn dealias_truncate(f: &ScalarField) -> ScalarField {
    let grid = f.grid().clone();
    let cutoff = grid.dealias_cutoff();
    let n = grid.n();
    let mut out = f.to_spectral();
    {
        let values = out.values_mut();
        for i2 in 0..n {
            for i1 in 0..n {
                let m1 = mode_of_index(i1, n);
                let m2 = mode_of_index(i2, n);
                if m1.abs().max(m2.abs()) > cutoff {
                    values[i2 * n + i1] = Complex64::new(0.0, 0.0);
                }
            }
        }
    }
    out.to_repr(f.repr())
}

/// Embed coarse coefficients into the refined spectral grid.  The coarse
/// Nyquist row `m = -n/2` has no positive partner on the coarse grid; its
/// coefficient is split evenly between `-n/2` and `+n/2` so that real fields
/// stay real on the fine grid.
fn pad_to_fine(f: &ScalarField, grid: &Grid2D) -> Vec<Complex64> {
    let n = grid.n();
    let fine_n = grid.fine_n();
    let nyquist = -(n as i64) / 2;
    let mut out = vec![Complex64::new(0.0, 0.0); fine_n * fine_n];
    let values = f.values();
    let targets = |m: i64| -> [(i64, f64); 2] {
        if m == nyquist {
            [(m, 0.5), (-m, 0.5)]
        } else {
            [(m, 1.0), (m, 0.0)]
        }
    };
    for i2 in 0..n {
        let m2 = mode_of_index(i2, n);
        for i1 in 0..n {
            let c = values[i2 * n + i1];
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let m1 = mode_of_index(i1, n);
            for (t1, w1) in targets(m1) {
                if w1 == 0.0 {
                    continue;
                }
                for (t2, w2) in targets(m2) {
                    if w2 == 0.0 {
                        continue;
                    }
                    let j1 = index_of_mode(t1, fine_n);
                    let j2 = index_of_mode(t2, fine_n);
                    out[j2 * fine_n + j1] += c * w1 * w2;
                }
            }
        }
    }
    out
}

fn truncate_to_coarse(fine: &[Complex64], grid: &Grid2D) -> Vec<Complex64> {
    let n = grid.n();
    let fine_n = grid.fine_n();
    let cutoff = grid.dealias_cutoff();
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for m2 in -cutoff..=cutoff {
        for m1 in -cutoff..=cutoff {
            let src = index_of_mode(m2, fine_n) * fine_n + index_of_mode(m1, fine_n);
            let dst = index_of_mode(m2, n) * n + index_of_mode(m1, n);
            out[dst] = fine[src];
        }
    }
    out
}
