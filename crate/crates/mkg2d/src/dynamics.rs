//! Time evolution of the coupled system.
//!
//! Two right-hand sides evolve the same first-order state
//! `(phi, phi_t, a, a_t, a0)`:
//!
//! * `direct` — the raw Coulomb-gauge wave equations, with the gradient
//!   pressure term `d_j B0` and a Leray projection of the whole `A`-equation
//!   right side to pin the gauge constraint against discretization error;
//! * `nullform` — the reformulated system in which the quadratic `A`-source
//!   is the null form `Q_{12}` routed through `R^k D^{-1}` and the quadratic
//!   `phi`-source is `Q_{12}(phi, D^{-1}[R^1 A^2 - R^2 A^1])`.
//!
//! In both, the temporal potential is an ODE state: `d a0/dt = B0` with `B0`
//! recovered from the spatial current, so the elliptic equation for `a0` is
//! *checked* (see `elliptic::a0_residual`) rather than imposed.
//!
//! The integrator is classical RK4; conservation drift is itself a
//! convergence diagnostic, so no conserving integrator is used.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elliptic::{a0_residual, compute_b0, solve_a0, spatial_current, EllipticError};
use crate::fields::{charge, energy, null_form, sobolev_norm, sobolev_norm_vector, State};
use crate::spectral::{
    apply_hermitian_multiplier, dealias_product, derivative, frac_op, leray, riesz, Axis,
    FracKind, Grid2D, Repr, ScalarField, SpectralError, VectorField,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("blow-up detected at RK4 stage {stage}, step {step}, t = {time:.6}")]
    Blowup {
        stage: usize,
        step: usize,
        time: f64,
    },
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Which right-hand side drives the evolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    Direct,
    Nullform,
}

/// Regularity labels and scale of the pseudorandom initial data.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSpec {
    /// Sobolev label of `phi` (its time derivative uses `s - 1`).
    pub s: f64,
    /// Sobolev label of the spatial potential (`s' - 1` for `a_t`).
    pub sprime: f64,
    /// Overall coefficient scale; zero gives the zero state.
    pub amplitude: f64,
    /// Largest excited mode per axis; must stay within the 2/3 band.
    pub band: usize,
}

/// Everything a simulation run needs.  Unknown JSON keys are rejected.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub n: usize,
    #[serde(default = "default_length")]
    pub length: f64,
    pub dt: f64,
    pub t_end: f64,
    pub formulation: Formulation,
    pub seed: u64,
    pub data_spec: DataSpec,
    #[serde(default = "default_stride")]
    pub monitor_stride: usize,
}

fn default_length() -> f64 {
    2.0 * std::f64::consts::PI
}

fn default_stride() -> usize {
    1
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), DynamicsError> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(DynamicsError::Config(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(DynamicsError::Config(format!(
                "t_end must be nonnegative, got {}",
                self.t_end
            )));
        }
        if self.monitor_stride == 0 {
            return Err(DynamicsError::Config("monitor_stride must be >= 1".into()));
        }
        let grid = Grid2D::with_length(self.n, self.length)
            .map_err(|e| DynamicsError::Config(e.to_string()))?;
        if self.data_spec.band as i64 > grid.dealias_cutoff() {
            return Err(DynamicsError::Config(format!(
                "band {} exceeds the de-aliasing cutoff n/3 = {}",
                self.data_spec.band,
                grid.dealias_cutoff()
            )));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid2D, DynamicsError> {
        Grid2D::with_length(self.n, self.length).map_err(|e| DynamicsError::Config(e.to_string()))
    }
}

/// One line of diagnostics along a trajectory.
#[derive(Clone, Copy, Debug)]
pub struct MonitorRow {
    pub t: f64,
    pub charge: f64,
    pub energy: f64,
    /// Largest spectral-divergence norm of `a`, `a_t` (absolute).
    pub gauge_div: f64,
    pub a0_residual: f64,
    pub hs_phi: f64,
    pub hsp_a: f64,
}

pub const MONITOR_CSV_HEADER: &str = "t,charge,energy,gauge_div,a0_residual,hs_phi,hsp_a";

impl MonitorRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
            self.t, self.charge, self.energy, self.gauge_div, self.a0_residual, self.hs_phi,
            self.hsp_a
        )
    }
}

/// Pseudorandom band-limited data satisfying the constraints: `a`, `a_t`
/// Leray-projected (Coulomb condition), `a0` from the elliptic solve,
/// coefficients shaped like `(1 + |k|^2)^{-(sigma + 1)/2}` for the field's
/// regularity label `sigma`.  One ChaCha stream per field keeps runs
/// reproducible across platforms and independent of field order.
pub fn make_initial_data(cfg: &SimConfig) -> Result<State, DynamicsError> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    let ds = &cfg.data_spec;

    let phi = random_field(&grid, cfg.seed, 0, ds.s, ds.amplitude, ds.band, false);
    let phi_t = random_field(&grid, cfg.seed, 1, ds.s - 1.0, ds.amplitude, ds.band, false);
    let a_raw = VectorField::new(
        random_field(&grid, cfg.seed, 2, ds.sprime, ds.amplitude, ds.band, true),
        random_field(&grid, cfg.seed, 3, ds.sprime, ds.amplitude, ds.band, true),
    );
    let a_t_raw = VectorField::new(
        random_field(&grid, cfg.seed, 4, ds.sprime - 1.0, ds.amplitude, ds.band, true),
        random_field(&grid, cfg.seed, 5, ds.sprime - 1.0, ds.amplitude, ds.band, true),
    );
    let a = leray(&a_raw);
    let a_t = leray(&a_t_raw);
    let a0 = if ds.amplitude == 0.0 {
        ScalarField::zeros(&grid)
    } else {
        solve_a0(&phi, &phi_t)?
    };
    Ok(State {
        phi,
        phi_t,
        a,
        a_t,
        a0,
        time: 0.0,
    })
}

/// Gaussian spectral coefficients with the standard decay profile.  For
/// real-tagged output the coefficients are drawn on canonical representatives
/// and mirrored Hermitian.
fn random_field(
    grid: &Grid2D,
    seed: u64,
    stream: u64,
    sigma: f64,
    amplitude: f64,
    band: usize,
    real: bool,
) -> ScalarField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let n = grid.n();
    let band = band as i64;
    let mut values = vec![Complex64::new(0.0, 0.0); grid.size()];
    let idx = |m1: i64, m2: i64| -> usize {
        let i1 = if m1 >= 0 { m1 } else { m1 + n as i64 } as usize;
        let i2 = if m2 >= 0 { m2 } else { m2 + n as i64 } as usize;
        i2 * n + i1
    };
    // fixed iteration order makes the draw deterministic
    for m2 in -band..=band {
        for m1 in -band..=band {
            if real {
                // canonical representative of the (m, -m) pair
                let canonical = m1 > 0 || (m1 == 0 && m2 > 0);
                if m1 == 0 && m2 == 0 {
                    let g: f64 = standard_normal(&mut rng);
                    let shape = amplitude * (1.0f64).powf(-(sigma + 1.0) / 2.0);
                    values[idx(0, 0)] = Complex64::new(shape * g, 0.0);
                } else if canonical {
                    let shape = amplitude
                        * (1.0 + (m1 * m1 + m2 * m2) as f64).powf(-(sigma + 1.0) / 2.0);
                    let g = Complex64::new(standard_normal(&mut rng), standard_normal(&mut rng))
                        * std::f64::consts::FRAC_1_SQRT_2;
                    values[idx(m1, m2)] = shape * g;
                    values[idx(-m1, -m2)] = shape * g.conj();
                }
            } else {
                let shape =
                    amplitude * (1.0 + (m1 * m1 + m2 * m2) as f64).powf(-(sigma + 1.0) / 2.0);
                let g = Complex64::new(standard_normal(&mut rng), standard_normal(&mut rng))
                    * std::f64::consts::FRAC_1_SQRT_2;
                values[idx(m1, m2)] = shape * g;
            }
        }
    }
    ScalarField::from_values(grid, values, Repr::Spectral, real).expect("buffer sized for grid")
}

/// Box-Muller, so the draw only depends on the generator contract.
fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Time derivative of the state for the requested formulation, packed as a
/// `State` (`phi` slot holds `d phi/dt`, ..., `a0` slot holds `B0`,
/// `time = 1`).
pub fn rhs(state: &State, formulation: Formulation) -> Result<State, DynamicsError> {
    match formulation {
        Formulation::Direct => rhs_direct(state),
        Formulation::Nullform => rhs_nullform(state),
    }
}

/// Raw Coulomb-gauge system:
/// `phi_tt = Lap phi + 2i A^j d_j phi - 2i A0 phi_t - i B0 phi + (A0^2 - |A|^2) phi`,
/// `a_tt_j = P[Lap A_j + Im(phi conj d_j phi) - |phi|^2 A_j + d_j B0]`.
pub fn rhs_direct(state: &State) -> Result<State, DynamicsError> {
    let i = Complex64::new(0.0, 1.0);
    let phi = &state.phi;

    // spatial current drives both the A-equation and B0
    let j = spatial_current(phi, &state.a)?;
    let b0 = compute_b0(phi, &state.phi_t, &state.a)?;

    // A-equation: Lap a_j - J_j + d_j B0, then projected
    let grad_b0 = VectorField::new(
        derivative(&b0, Axis::X1),
        derivative(&b0, Axis::X2),
    );
    let raw = VectorField::new(
        laplacian(&state.a.x1)
            .sub(&j.x1)
            .add(&grad_b0.x1),
        laplacian(&state.a.x2)
            .sub(&j.x2)
            .add(&grad_b0.x2),
    );
    let a_tt = leray(&raw);

    // phi-equation
    let phi_tt = laplacian(phi)
        .add(&gauge_transport(state)?.scale(2.0 * i))
        .add(&dealias_product(&[&state.a0, &state.phi_t])?.scale(-2.0 * i))
        .add(&dealias_product(&[&b0, phi])?.scale(-i))
        .add(&potential_term(state)?);

    Ok(State {
        phi: state.phi_t.clone(),
        phi_t: phi_tt,
        a: state.a_t.clone(),
        a_t: a_tt,
        a0: b0,
        time: 1.0,
    })
}

/// Null-form system: the quadratic `A`-source becomes
/// `2 R^k D^{-1} Q_{jk}(Re phi, Im phi)` and the quadratic `phi`-source
/// `i Q_{jk}(phi, D^{-1}[R^j A^k - R^k A^j])`, both summed over the
/// antisymmetric index pair (twice the `(1,2)` term in 2-D).
pub fn rhs_nullform(state: &State) -> Result<State, DynamicsError> {
    let i = Complex64::new(0.0, 1.0);
    let phi = &state.phi;
    let b0 = compute_b0(phi, &state.phi_t, &state.a)?;

    // A-equation: a_tt_j = Lap a_j - 2 R^k D^{-1} Q_{jk}(Re phi, Im phi)
    //                      - P(|phi|^2 A_j)
    let q = null_form_checked(&phi.re(), &phi.im())?;
    let dq = frac_op(&q, -1.0, FracKind::Homogeneous);
    let coupling = leray(&VectorField::new(
        dealias_product(&[phi, &phi.conj(), &state.a.x1])?.realified(),
        dealias_product(&[phi, &phi.conj(), &state.a.x2])?.realified(),
    ));
    let a_tt = VectorField::new(
        laplacian(&state.a.x1)
            .add_scaled(Complex64::new(-2.0, 0.0), &riesz(&dq, Axis::X2))
            .sub(&coupling.x1),
        laplacian(&state.a.x2)
            .add_scaled(Complex64::new(2.0, 0.0), &riesz(&dq, Axis::X1))
            .sub(&coupling.x2),
    );

    // phi-equation: + 2i Q_12(phi, w), w = D^{-1}(R_1 A_2 - R_2 A_1)
    let w = frac_op(
        &riesz(&state.a.x2, Axis::X1).sub(&riesz(&state.a.x1, Axis::X2)),
        -1.0,
        FracKind::Homogeneous,
    );
    let qphi = null_form_checked(phi, &w)?;
    let phi_tt = laplacian(phi)
        .add(&qphi.scale(2.0 * i))
        .add(&dealias_product(&[&state.a0, &state.phi_t])?.scale(-2.0 * i))
        .add(&dealias_product(&[&b0, phi])?.scale(-i))
        .add(&potential_term(state)?);

    Ok(State {
        phi: state.phi_t.clone(),
        phi_t: phi_tt,
        a: state.a_t.clone(),
        a_t: a_tt,
        a0: b0,
        time: 1.0,
    })
}

fn laplacian(f: &ScalarField) -> ScalarField {
    apply_hermitian_multiplier(f, |k1, k2| Complex64::new(-(k1 * k1 + k2 * k2), 0.0))
        .expect("laplacian symbol is finite")
}

fn null_form_checked(u: &ScalarField, v: &ScalarField) -> Result<ScalarField, DynamicsError> {
    Ok(null_form(u, v, Axis::X1, Axis::X2)?)
}

/// `A^j d_j phi` with de-aliased products.
fn gauge_transport(state: &State) -> Result<ScalarField, DynamicsError> {
    let t1 = dealias_product(&[&state.a.x1, &derivative(&state.phi, Axis::X1)])?;
    let t2 = dealias_product(&[&state.a.x2, &derivative(&state.phi, Axis::X2)])?;
    Ok(t1.add(&t2))
}

/// `(A0^2 - |A|^2) phi` as three de-aliased triple products.
fn potential_term(state: &State) -> Result<ScalarField, DynamicsError> {
    let phi = &state.phi;
    let a0_sq = dealias_product(&[&state.a0, &state.a0, phi])?;
    let a1_sq = dealias_product(&[&state.a.x1, &state.a.x1, phi])?;
    let a2_sq = dealias_product(&[&state.a.x2, &state.a.x2, phi])?;
    Ok(a0_sq.sub(&a1_sq).sub(&a2_sq))
}

/// One classical RK4 step; every stage is checked for `NaN`/`Inf` and the
/// stage index is reported on blow-up.
pub fn step_rk4(state: &State, dt: f64, formulation: Formulation) -> Result<State, DynamicsError> {
    let check = |s: &State, stage: usize| -> Result<(), DynamicsError> {
        if s.norm_sqr().is_finite() {
            Ok(())
        } else {
            Err(DynamicsError::Blowup {
                stage,
                step: 0,
                time: state.time,
            })
        }
    };
    let k1 = rhs(state, formulation)?;
    check(&k1, 1)?;
    let k2 = rhs(&state.add_scaled(0.5 * dt, &k1), formulation)?;
    check(&k2, 2)?;
    let k3 = rhs(&state.add_scaled(0.5 * dt, &k2), formulation)?;
    check(&k3, 3)?;
    let k4 = rhs(&state.add_scaled(dt, &k3), formulation)?;
    check(&k4, 4)?;

    let mut next = state.add_scaled(dt / 6.0, &k1);
    next = next.add_scaled(dt / 3.0, &k2);
    next = next.add_scaled(dt / 3.0, &k3);
    next = next.add_scaled(dt / 6.0, &k4);
    check(&next, 5)?;
    Ok(next)
}

/// Monitors of a state, evaluated with the config's regularity labels.
pub fn monitor(state: &State, cfg: &SimConfig) -> Result<MonitorRow, DynamicsError> {
    Ok(MonitorRow {
        t: state.time,
        charge: charge(state)?,
        energy: energy(state)?,
        gauge_div: state.gauge_divergence(),
        a0_residual: a0_residual(state)?,
        hs_phi: sobolev_norm(&state.phi, cfg.data_spec.s, FracKind::Inhomogeneous),
        hsp_a: sobolev_norm_vector(&state.a, cfg.data_spec.sprime, FracKind::Inhomogeneous),
    })
}

/// A finished run: final state plus the monitor history.
pub struct SimOutput {
    pub state: State,
    pub monitors: Vec<MonitorRow>,
    /// Actual step size used (`t_end / ceil(t_end / dt)`).
    pub dt_effective: f64,
}

/// A run that blew up: the failure plus whatever monitors were collected.
#[derive(Debug)]
pub struct SimFailure {
    pub error: DynamicsError,
    pub monitors: Vec<MonitorRow>,
}

/// Evolve from the seeded initial data to `t_end`, recording monitors at
/// `monitor_stride` intervals (plus the initial and final states).  The step
/// count is `ceil(t_end / dt)` so the run lands exactly on `t_end`.
pub fn simulate(cfg: &SimConfig) -> Result<SimOutput, SimFailure> {
    let wrap = |e: DynamicsError| SimFailure {
        error: e,
        monitors: Vec::new(),
    };
    cfg.validate().map_err(wrap)?;
    let state = make_initial_data(cfg).map_err(wrap)?;
    simulate_from(state, cfg)
}

/// Evolve a caller-supplied initial state under the same bookkeeping.
pub fn simulate_from(mut state: State, cfg: &SimConfig) -> Result<SimOutput, SimFailure> {
    let mut monitors = Vec::new();
    let push = |state: &State, monitors: &mut Vec<MonitorRow>| -> Result<(), DynamicsError> {
        monitors.push(monitor(state, cfg)?);
        Ok(())
    };

    let steps = if cfg.t_end == 0.0 {
        0
    } else {
        (cfg.t_end / cfg.dt - 1e-12).ceil().max(1.0) as usize
    };
    let dt_effective = if steps == 0 { cfg.dt } else { cfg.t_end / steps as f64 };

    if let Err(e) = push(&state, &mut monitors) {
        return Err(SimFailure {
            error: e,
            monitors,
        });
    }
    for step in 1..=steps {
        state = match step_rk4(&state, dt_effective, cfg.formulation) {
            Ok(s) => s,
            Err(DynamicsError::Blowup { stage, time, .. }) => {
                return Err(SimFailure {
                    error: DynamicsError::Blowup { stage, step, time },
                    monitors,
                })
            }
            Err(e) => {
                return Err(SimFailure {
                    error: e,
                    monitors,
                })
            }
        };
        // exact time to keep monitor output reproducible digit for digit
        state.time = step as f64 * dt_effective;
        if step % cfg.monitor_stride == 0 || step == steps {
            if let Err(e) = push(&state, &mut monitors) {
                return Err(SimFailure {
                    error: e,
                    monitors,
                });
            }
        }
    }
    Ok(SimOutput {
        state,
        monitors,
        dt_effective,
    })
}

/// Relative defects of the two reformulation identities on a state.
///
/// The first gap compares the Leray-projected current source of the
/// `A`-equation with its null-form route `2 R^k D^{-1} Q_{jk}(Re phi, Im
/// phi)`; the second compares the gauge transport term `-2i A^j d_j phi`
/// with `-i Q_{jk}(phi, D^{-1}[R^j A^k - R^k A^j])` summed over the
/// antisymmetric pair.  Both vanish identically in the Coulomb gauge; a
/// divergence-carrying `a` breaks the second one, which is the negative
/// control.
pub fn reformulation_gaps(state: &State) -> Result<(f64, f64), DynamicsError> {
    let phi = &state.phi;
    let rel = |diff: f64, scale: f64| diff / scale.max(1e-300);

    // A-equation source
    let lhs = leray(&VectorField::new(
        crate::fields::minus_im_product(phi, &derivative(phi, Axis::X1))?,
        crate::fields::minus_im_product(phi, &derivative(phi, Axis::X2))?,
    ));
    let q = null_form(&phi.re(), &phi.im(), Axis::X1, Axis::X2)?;
    let dq = frac_op(&q, -1.0, FracKind::Homogeneous);
    let rhs = VectorField::new(
        riesz(&dq, Axis::X2).scale(Complex64::new(2.0, 0.0)),
        riesz(&dq, Axis::X1).scale(Complex64::new(-2.0, 0.0)),
    );
    let gap_a = rel(
        lhs.x1.sub(&rhs.x1).norm_l2().hypot(lhs.x2.sub(&rhs.x2).norm_l2()),
        lhs.norm_l2().max(rhs.norm_l2()),
    );

    // phi-equation transport term
    let minus_2i = Complex64::new(0.0, -2.0);
    let lhs_phi = gauge_transport(state)?.scale(minus_2i);
    let w = frac_op(
        &riesz(&state.a.x2, Axis::X1).sub(&riesz(&state.a.x1, Axis::X2)),
        -1.0,
        FracKind::Homogeneous,
    );
    let rhs_phi = null_form(phi, &w, Axis::X1, Axis::X2)?.scale(minus_2i);
    let gap_phi = rel(
        lhs_phi.sub(&rhs_phi).norm_l2(),
        lhs_phi.norm_l2().max(rhs_phi.norm_l2()),
    );
    Ok((gap_a, gap_phi))
}

/// Observed Richardson orders per field between consecutive dt-refinements.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    /// `dt` of the coarsest run.
    pub dt0: f64,
    /// Field labels, in the order of the `orders` rows.
    pub fields: Vec<&'static str>,
    /// `orders[i][j]`: observed order of field `j` between refinements
    /// `i, i+1, i+2`.
    pub orders: Vec<Vec<f64>>,
    /// Difference norms `||u_{dt_i} - u_{dt_{i+1}}||` per field.
    pub diffs: Vec<Vec<f64>>,
}

impl ConvergenceReport {
    /// Orders of the finest triple.
    pub fn final_orders(&self) -> &[f64] {
        self.orders.last().expect("refinements >= 3")
    }
}

/// Run the configured problem at `dt, dt/2, ..., dt/2^(refinements-1)` from
/// identical initial data and report observed orders
/// `p = log2(||u_dt - u_{dt/2}|| / ||u_{dt/2} - u_{dt/4}||)` per field.
pub fn convergence_study(
    cfg: &SimConfig,
    refinements: usize,
) -> Result<ConvergenceReport, SimFailure> {
    assert!(refinements >= 3, "need at least three refinement levels");
    let mut finals: Vec<State> = Vec::new();
    for level in 0..refinements {
        let mut c = cfg.clone();
        c.dt = cfg.dt / (1 << level) as f64;
        finals.push(simulate(&c)?.state);
    }
    let fields: Vec<&'static str> = vec!["phi", "phi_t", "a", "a_t", "a0"];
    let diff = |a: &State, b: &State| -> Vec<f64> {
        vec![
            a.phi.sub(&b.phi).norm_l2(),
            a.phi_t.sub(&b.phi_t).norm_l2(),
            (a.a.x1.sub(&b.a.x1).norm_l2()).hypot(a.a.x2.sub(&b.a.x2).norm_l2()),
            (a.a_t.x1.sub(&b.a_t.x1).norm_l2()).hypot(a.a_t.x2.sub(&b.a_t.x2).norm_l2()),
            a.a0.sub(&b.a0).norm_l2(),
        ]
    };
    let diffs: Vec<Vec<f64>> = finals.windows(2).map(|w| diff(&w[0], &w[1])).collect();
    let orders = diffs
        .windows(2)
        .map(|w| {
            w[0].iter()
                .zip(&w[1])
                .map(|(c, f)| (c / f).log2())
                .collect()
        })
        .collect();
    Ok(ConvergenceReport {
        dt0: cfg.dt,
        fields,
        orders,
        diffs,
    })
}
