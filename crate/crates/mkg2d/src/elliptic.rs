//! Recovery of the temporal gauge potential.
//!
//! At `t = 0` the scalar data determines `a0` through the screened Poisson
//! equation `(Delta - |phi|^2) a0 = -Im(phi conj(phi_t))`.  Afterwards the
//! state only integrates `d a0 / dt = B0` with `B0 = Delta^{-1} d_j J_j`
//! built from the spatial current; [`a0_residual`] measures how well the
//! integrated `a0` still solves the elliptic equation, which is exactly the
//! consistency the construction promises and a sharp discretization
//! diagnostic.
//!
//! The screened operator is applied with a spectral Laplacian and the
//! `|phi|^2 a0` term as a single de-aliased triple product; on the refined
//! product grid the weight is a genuine square, so the operator is symmetric
//! positive definite whenever `phi` is not identically zero and a
//! preconditioned conjugate-direction iteration converges quickly.

use num_complex::Complex64;
use thiserror::Error;

use crate::fields::{minus_im_product, State};
use crate::spectral::{
    apply_hermitian_multiplier, dealias_product, derivative, inv_laplacian, Axis, ScalarField,
    SpectralError, VectorField,
};

#[derive(Debug, Error)]
pub enum EllipticError {
    #[error("conjugate-direction solve did not reach tolerance: relative residual {residual:.3e} after {iterations} iterations")]
    SolverDiverged { residual: f64, iterations: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Relative residual target of the elliptic solve.
pub const SOLVE_TOL: f64 = 1e-10;

/// `Delta a - |phi|^2 a`, with the multiplication evaluated as the
/// de-aliased triple product `phi * conj(phi) * a`.
fn screened_apply(phi: &ScalarField, a: &ScalarField) -> Result<ScalarField, SpectralError> {
    let laplacian = apply_hermitian_multiplier(a, |k1, k2| {
        Complex64::new(-(k1 * k1 + k2 * k2), 0.0)
    })?;
    let weighted = dealias_product(&[phi, &phi.conj(), a])?;
    Ok(laplacian.sub(&weighted))
}

/// Solve `(Delta - |phi|^2) a0 = -Im(phi conj(phi_t))` for the temporal
/// potential at fixed time.
///
/// For `phi` identically zero the right side vanishes and the zero-mean
/// solution of the plain Poisson equation is returned.  Otherwise the
/// equivalent positive definite system `(-Delta + |phi|^2) a0 = Im(phi conj
/// phi_t)` is solved by preconditioned conjugate gradients, preconditioner
/// `(-Delta + mean|phi|^2)^{-1}`, to relative residual `1e-10`.
pub fn solve_a0(phi: &ScalarField, phi_t: &ScalarField) -> Result<ScalarField, EllipticError> {
    let grid = phi.grid().clone();
    // rhs of the positive definite form
    let rhs = minus_im_product(phi, phi_t)?.scale(Complex64::new(-1.0, 0.0));

    if phi.norm_l2() == 0.0 {
        if rhs.norm_l2() == 0.0 {
            return Ok(ScalarField::zeros(&grid));
        }
        // zero-mean Poisson solve (mean-zero rhs is the caller's contract)
        let sol = inv_laplacian(&rhs.scale(Complex64::new(-1.0, 0.0)))?;
        return Ok(sol.realified());
    }

    let weight_mean = {
        let sq = dealias_product(&[phi, &phi.conj()])?;
        sq.mean().re
    };
    debug_assert!(weight_mean > 0.0);

    let precond = |r: &ScalarField| {
        apply_hermitian_multiplier(r, |k1, k2| {
            Complex64::new(1.0 / (k1 * k1 + k2 * k2 + weight_mean), 0.0)
        })
        .expect("preconditioner symbol is finite")
    };
    let apply = |x: &ScalarField| -> Result<ScalarField, SpectralError> {
        Ok(screened_apply(phi, x)?.scale(Complex64::new(-1.0, 0.0)))
    };

    let inner = |u: &ScalarField, v: &ScalarField| -> f64 {
        let us = u.to_spectral();
        let vs = v.to_spectral();
        us.values()
            .iter()
            .zip(vs.values())
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    };

    let rhs_norm = rhs.norm_l2().max(f64::MIN_POSITIVE);
    let max_iter = 10 * grid.n();

    let mut x = ScalarField::zeros(&grid);
    let mut r = rhs.clone().to_spectral();
    let mut z = precond(&r);
    let mut p = z.clone();
    let mut rz = inner(&r, &z);

    for iteration in 0..max_iter {
        let residual = r.norm_l2() / rhs_norm;
        if residual <= SOLVE_TOL {
            return Ok(x.realified());
        }
        let ap = apply(&p)?;
        let pap = inner(&p, &ap);
        if !(pap.is_finite() && pap > 0.0) {
            return Err(EllipticError::SolverDiverged {
                residual,
                iterations: iteration,
            });
        }
        let alpha = rz / pap;
        let ac = Complex64::new(alpha, 0.0);
        x = x.add_scaled(ac, &p);
        r = r.add_scaled(-ac, &ap);
        z = precond(&r);
        let rz_next = inner(&r, &z);
        let beta = rz_next / rz;
        p = z.add_scaled(Complex64::new(beta, 0.0), &p);
        rz = rz_next;
    }

    let residual = r.norm_l2() / rhs_norm;
    if residual <= SOLVE_TOL {
        Ok(x.realified())
    } else {
        Err(EllipticError::SolverDiverged {
            residual,
            iterations: max_iter,
        })
    }
}

/// `B0 = Delta^{-1} d_j (-Im(phi conj(d_j phi)) + |phi|^2 A_j)`: the time
/// derivative of the temporal potential, recovered from the spatial current.
/// The divergence structure makes the mean vanish, so the inverse Laplacian
/// is always applicable; hitting its mean error is a bug signal upstream.
pub fn compute_b0(
    phi: &ScalarField,
    _phi_t: &ScalarField,
    a: &VectorField,
) -> Result<ScalarField, EllipticError> {
    let j = spatial_current(phi, a)?;
    let div = derivative(&j.x1, Axis::X1).add(&derivative(&j.x2, Axis::X2));
    Ok(inv_laplacian(&div)?.realified())
}

/// Spatial current `J_j = -Im(phi conj(d_j phi)) + |phi|^2 A_j` with
/// de-aliased products; shared by the B0 recovery and the wave equations.
pub(crate) fn spatial_current(
    phi: &ScalarField,
    a: &VectorField,
) -> Result<VectorField, EllipticError> {
    let mut comps = Vec::with_capacity(2);
    for axis in [Axis::X1, Axis::X2] {
        let momentum = minus_im_product(phi, &derivative(phi, axis))?;
        let coupling = dealias_product(&[phi, &phi.conj(), a.component(axis)])?;
        comps.push(momentum.add(&coupling).realified());
    }
    let j2 = comps.pop().unwrap();
    let j1 = comps.pop().unwrap();
    Ok(VectorField::new(j1, j2))
}

/// Relative residual of the elliptic equation on a state:
/// `||(Delta - |phi|^2) a0 + Im(phi conj(phi_t))||_2 / (1 + ||a0||_2 + ||phi||_2^2)`.
pub fn a0_residual(state: &State) -> Result<f64, EllipticError> {
    let lhs = screened_apply(&state.phi, &state.a0)?;
    let rhs = minus_im_product(&state.phi, &state.phi_t)?;
    // residual = (Delta - |phi|^2) a0 - (-Im(phi conj phi_t))
    let res = lhs.sub(&rhs).norm_l2();
    let phi_l2 = state.phi.norm_l2();
    Ok(res / (1.0 + state.a0.norm_l2() + phi_l2 * phi_l2))
}
