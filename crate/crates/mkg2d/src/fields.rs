//! Physics-level quantities over the spectral primitives: the dynamical
//! state, covariant derivatives, the current, null forms, charge, energy and
//! fixed-time Sobolev norms.
//!
//! Index conventions: Greek indices run over `{0, 1, 2}` with the metric
//! `diag(-1, 1, 1)`; the stored field strength keeps the three independent
//! components `F_{01}, F_{02}, F_{12}` with the first index smaller.

use num_complex::Complex64;

use crate::spectral::{
    dealias_product, derivative, divergence, frac_op, Axis, FracKind, Grid2D, ScalarField,
    SpectralError, VectorField,
};

/// Default tolerance for the Coulomb-gauge invariant on states.
pub const GAUGE_TOL: f64 = 1e-8;

/// The full dynamical unknown: the scalar field, the spatial gauge
/// potential, their time derivatives, and the temporal potential carried as
/// an ODE state.
#[derive(Clone, Debug)]
pub struct State {
    pub phi: ScalarField,
    pub phi_t: ScalarField,
    pub a: VectorField,
    pub a_t: VectorField,
    pub a0: ScalarField,
    pub time: f64,
}

impl State {
    pub fn zeros(grid: &Grid2D) -> Self {
        Self {
            phi: ScalarField::zeros(grid),
            phi_t: ScalarField::zeros(grid),
            a: VectorField::zeros(grid),
            a_t: VectorField::zeros(grid),
            a0: ScalarField::zeros(grid),
            time: 0.0,
        }
    }

    pub fn grid(&self) -> &Grid2D {
        self.phi.grid()
    }

    /// Largest spectral-divergence norm of `a` and `a_t` (absolute).
    pub fn gauge_divergence(&self) -> f64 {
        divergence(&self.a)
            .norm_l2()
            .max(divergence(&self.a_t).norm_l2())
    }

    /// Coulomb invariant: divergence small relative to the field sizes.
    pub fn gauge_ok(&self, tol: f64) -> bool {
        self.gauge_divergence() <= tol * (1.0 + self.a.norm_l2() + self.a_t.norm_l2())
    }

    /// `self + c * other`, fieldwise; time advances by `c * other.time`, so a
    /// derivative state with `time = 1` moves the clock.
    pub fn add_scaled(&self, c: f64, other: &State) -> State {
        let cc = Complex64::new(c, 0.0);
        State {
            phi: self.phi.add_scaled(cc, &other.phi),
            phi_t: self.phi_t.add_scaled(cc, &other.phi_t),
            a: self.a.add_scaled(cc, &other.a),
            a_t: self.a_t.add_scaled(cc, &other.a_t),
            a0: self.a0.add_scaled(cc, &other.a0),
            time: self.time + c * other.time,
        }
    }

    /// Sum of squared component norms; `NaN`/`Inf` anywhere makes this
    /// non-finite, which is how the time stepper detects blow-up.
    pub fn norm_sqr(&self) -> f64 {
        let n = |f: &ScalarField| {
            let v = f.norm_l2();
            v * v
        };
        n(&self.phi)
            + n(&self.phi_t)
            + n(&self.a.x1)
            + n(&self.a.x2)
            + n(&self.a_t.x1)
            + n(&self.a_t.x2)
            + n(&self.a0)
    }
}

/// The current `J_alpha = -Im(phi conj(D_alpha phi))`, all components
/// real-tagged.
#[derive(Clone, Debug)]
pub struct Current {
    pub j0: ScalarField,
    pub j1: ScalarField,
    pub j2: ScalarField,
}

impl Current {
    pub fn spatial(&self) -> VectorField {
        VectorField::new(self.j1.clone(), self.j2.clone())
    }
}

/// The three independent components of `F_{alpha beta} = d_alpha A_beta -
/// d_beta A_alpha`.
#[derive(Clone, Debug)]
pub struct FieldStrength {
    pub f01: ScalarField,
    pub f02: ScalarField,
    pub f12: ScalarField,
}

/// Covariant derivative `D_alpha phi = (d_alpha + i A_alpha) phi`;
/// `alpha = 0` uses `phi_t` and `a0`, spatial indices the stored `a`.
/// The `A phi` coupling is a de-aliased product.
pub fn covariant_d(state: &State, alpha: usize) -> Result<ScalarField, SpectralError> {
    match alpha {
        0 => {
            let coupling = dealias_product(&[&state.a0, &state.phi])?;
            Ok(state.phi_t.add(&coupling.scale(Complex64::new(0.0, 1.0))))
        }
        1 | 2 => {
            let axis = if alpha == 1 { Axis::X1 } else { Axis::X2 };
            let coupling = dealias_product(&[state.a.component(axis), &state.phi])?;
            Ok(derivative(&state.phi, axis).add(&coupling.scale(Complex64::new(0.0, 1.0))))
        }
        _ => panic!("index {alpha} out of range for 2+1 dimensions"),
    }
}

/// `-Im(phi conj(psi))` as a real-tagged field, product de-aliased.
pub(crate) fn minus_im_product(
    phi: &ScalarField,
    psi: &ScalarField,
) -> Result<ScalarField, SpectralError> {
    let prod = dealias_product(&[phi, &psi.conj()])?;
    Ok(prod.im().scale(Complex64::new(-1.0, 0.0)).realified())
}

pub fn current(state: &State) -> Result<Current, SpectralError> {
    let j0 = minus_im_product(&state.phi, &covariant_d(state, 0)?)?;
    let j1 = minus_im_product(&state.phi, &covariant_d(state, 1)?)?;
    let j2 = minus_im_product(&state.phi, &covariant_d(state, 2)?)?;
    Ok(Current { j0, j1, j2 })
}

/// Spatial null form `Q_{jk}(u, v) = d_j u d_k v - d_k u d_j v` with
/// de-aliased products; the axes must differ.
pub fn null_form(
    u: &ScalarField,
    v: &ScalarField,
    j: Axis,
    k: Axis,
) -> Result<ScalarField, SpectralError> {
    if j == k {
        return Err(SpectralError::EqualAxes);
    }
    let a = dealias_product(&[&derivative(u, j), &derivative(v, k)])?;
    let b = dealias_product(&[&derivative(u, k), &derivative(v, j)])?;
    Ok(a.sub(&b))
}

/// Total charge `int J_0 dx = L^2 * mean(J_0)`.
pub fn charge(state: &State) -> Result<f64, SpectralError> {
    let j0 = current(state)?.j0;
    let l = state.grid().length();
    Ok(l * l * j0.mean().re)
}

pub fn field_strength(state: &State) -> FieldStrength {
    // F_{0j} = dt A_j - d_j A_0, F_{12} = d_1 A_2 - d_2 A_1
    let f01 = state.a_t.x1.sub(&derivative(&state.a0, Axis::X1));
    let f02 = state.a_t.x2.sub(&derivative(&state.a0, Axis::X2));
    let f12 = derivative(&state.a.x2, Axis::X1).sub(&derivative(&state.a.x1, Axis::X2));
    FieldStrength { f01, f02, f12 }
}

/// Conserved energy of the flow,
/// `E = int 1/2 sum_alpha |D_alpha phi|^2 + 1/2 (F01^2 + F02^2 + F12^2) dx`,
/// evaluated by plain grid sums (spectrally accurate for band-limited data).
/// This is the Hamiltonian with the all-plus spatial sum, used purely as a
/// discretization-quality monitor.
pub fn energy(state: &State) -> Result<f64, SpectralError> {
    let grid = state.grid();
    let h2 = grid.dx() * grid.dx();
    let mut total = 0.0;
    for alpha in 0..3 {
        let d = covariant_d(state, alpha)?.to_physical();
        total += 0.5 * d.values().iter().map(|v| v.norm_sqr()).sum::<f64>() * h2;
    }
    let f = field_strength(state);
    for comp in [&f.f01, &f.f02, &f.f12] {
        let p = comp.to_physical();
        total += 0.5 * p.values().iter().map(|v| v.norm_sqr()).sum::<f64>() * h2;
    }
    Ok(total)
}

/// Fixed-time Sobolev norm via Parseval: weighted l2 sum of the spectral
/// coefficients with weight `|k|^s` (homogeneous, zero mode dropped for
/// `s != 0`) or `(1 + |k|^2)^{s/2}`.
pub fn sobolev_norm(f: &ScalarField, s: f64, kind: FracKind) -> f64 {
    frac_op(f, s, kind).norm_l2()
}

pub fn sobolev_norm_vector(x: &VectorField, s: f64, kind: FracKind) -> f64 {
    sobolev_norm(&x.x1, s, kind).hypot(sobolev_norm(&x.x2, s, kind))
}
