//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion summaries.

use std::time::Instant;

use num_complex::Complex64;
use num_rational::Rational64;

use mkg2d::atlas::{
    check_atlas, check_catalog, closed_form_region, feasible_thetas, reduction_catalog,
    scan_region, EpsRational, ExponentPoint, ProductEstimate, Relation, SpEqualityRule,
};
use mkg2d::dynamics::{
    convergence_study, make_initial_data, reformulation_gaps, simulate, step_rk4, DataSpec,
    Formulation, SimConfig,
};
use mkg2d::fields::State;
use mkg2d::spectral::{
    derivative, divergence, frac_op, leray, riesz, Axis, FracKind, Grid2D, ScalarField,
    VectorField,
};

fn er(p: i64, q: i64) -> EpsRational {
    EpsRational::ratio(p, q)
}

fn ere(p: i64, q: i64, m: i64) -> EpsRational {
    EpsRational::ratio_eps(p, q, m)
}

/// Reference resolution of the conservation criteria: n = 128, L = 2 pi,
/// dt = 0.5 L / n, t_end = 1, smooth seeded band-limited data.
fn reference_config(formulation: Formulation) -> SimConfig {
    let n = 128usize;
    let length = 2.0 * std::f64::consts::PI;
    SimConfig {
        n,
        length,
        dt: 0.5 * length / n as f64,
        t_end: 1.0,
        formulation,
        seed: 1,
        data_spec: DataSpec {
            s: 3.0,
            sprime: 3.0,
            amplitude: 1.0,
            band: 3,
        },
        monitor_stride: 1,
    }
}

#[test]
fn criterion_1_region_reproduction() {
    let start = Instant::now();
    let table = scan_region(Rational64::new(1, 64), SpEqualityRule::default());
    let elapsed = start.elapsed();
    let s = &table.summary;
    println!(
        "criterion 1: scanned {} points in {:.1}s; off-boundary agreement {}/{}; {} near-boundary disagreements",
        s.points,
        elapsed.as_secs_f64(),
        s.off_boundary_points - s.off_boundary_disagreements,
        s.off_boundary_points,
        s.near_boundary_disagreements.len()
    );
    assert_eq!(s.points, 64 * 64);
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "region scan took {:.1}s, budget is 5 minutes",
        elapsed.as_secs_f64()
    );
    assert_eq!(
        s.off_boundary_disagreements, 0,
        "scan feasibility must equal the closed form at every off-boundary point"
    );
    println!("criterion 1: PASS (region reproduction at step 1/64)");
}

#[test]
fn criterion_2_anchor_points() {
    // s' = 1/4 + eps-style corner point, one step inside at grid resolution
    let s = er(5, 8) + er(1, 64);
    let sp = er(1, 4) + er(1, 64);
    let witness = feasible_thetas(s, sp).expect("anchor (5/8 + 1/64, 1/4 + 1/64) is feasible");
    revalidate(s, sp, witness.theta0, witness.theta1);

    assert!(
        feasible_thetas(er(3, 5), er(13, 50)).is_none(),
        "(0.6, 0.26) must be infeasible"
    );
    assert!(!closed_form_region(er(3, 5), er(13, 50)));

    let witness_corner = feasible_thetas(er(1, 1), er(1, 1)).expect("(1, 1) is feasible");
    revalidate(er(1, 1), er(1, 1), witness_corner.theta0, witness_corner.theta1);
    assert!(closed_form_region(er(1, 1), er(1, 1)));

    println!("criterion 2: PASS (anchor points with revalidated witnesses)");
}

/// Re-check a witness against the full catalog: every instance passes, and
/// margins satisfy their relations (positive where strict).
fn revalidate(s: EpsRational, sp: EpsRational, t0: EpsRational, t1: EpsRational) {
    let p = ExponentPoint::new(s, sp, t0, t1);
    let reports = check_catalog(&reduction_catalog(&p), SpEqualityRule::default());
    for report in &reports {
        assert!(report.pass, "witness fails {}", report.label);
        for c in &report.conditions {
            match c.relation {
                Relation::Strict => assert!(
                    c.margin.is_positive(),
                    "{} {} has non-positive margin {}",
                    report.label,
                    c.id,
                    c.margin
                ),
                Relation::NonStrict => assert!(
                    !c.margin.is_negative(),
                    "{} {} has negative margin {}",
                    report.label,
                    c.id,
                    c.margin
                ),
            }
        }
    }
}

struct StrictnessCase {
    id: &'static str,
    strict: bool,
    /// Instance with exactly one zero-margin condition (`id`).
    base: ProductEstimate,
    /// Same instance with one left-hand symbol moved by eps so that only
    /// `id` flips.
    perturbed: ProductEstimate,
}

fn strictness_cases() -> Vec<StrictnessCase> {
    let mk = |label: &str, s: [EpsRational; 3], b: [EpsRational; 3]| {
        ProductEstimate::new(label, s[0], s[1], s[2], b[0], b[1], b[2])
    };
    // one bespoke instance per condition; in each, every other condition
    // holds with a *rational* margin, so an eps nudge flips only the target
    let one = er(1, 1);
    vec![
        StrictnessCase {
            id: "a",
            strict: true,
            base: mk("a0", [one, one, one], [er(1, 6), er(1, 6), er(1, 6)]),
            perturbed: mk("a1", [one, one, one], [ere(1, 6, 1), er(1, 6), er(1, 6)]),
        },
        StrictnessCase {
            id: "b",
            strict: false,
            base: mk("b0", [one, one, one], [er(-1, 4), er(1, 4), one]),
            perturbed: mk("b1", [one, one, one], [ere(-1, 4, -1), er(1, 4), one]),
        },
        StrictnessCase {
            id: "c",
            strict: false,
            base: mk("c0", [one, one, one], [er(-1, 4), one, er(1, 4)]),
            perturbed: mk("c1", [one, one, one], [ere(-1, 4, -1), one, er(1, 4)]),
        },
        StrictnessCase {
            id: "d",
            strict: false,
            base: mk("d0", [one, one, one], [one, er(-1, 4), er(1, 4)]),
            perturbed: mk("d1", [one, one, one], [one, ere(-1, 4, -1), er(1, 4)]),
        },
        StrictnessCase {
            id: "e",
            strict: true,
            base: mk(
                "e0",
                [er(7, 24), er(7, 24), er(7, 24)],
                [er(5, 24), er(5, 24), er(5, 24)],
            ),
            perturbed: mk(
                "e1",
                [ere(7, 24, 1), er(7, 24), er(7, 24)],
                [er(5, 24), er(5, 24), er(5, 24)],
            ),
        },
        StrictnessCase {
            id: "f",
            strict: true,
            base: mk(
                "f0",
                [er(7, 24), er(7, 24), er(7, 24)],
                [er(-1, 16), er(3, 16), one],
            ),
            perturbed: mk(
                "f1",
                [ere(7, 24, 1), er(7, 24), er(7, 24)],
                [er(-1, 16), er(3, 16), one],
            ),
        },
        StrictnessCase {
            id: "g",
            strict: true,
            base: mk(
                "g0",
                [er(7, 24), er(7, 24), er(7, 24)],
                [er(-3, 8), one, one],
            ),
            perturbed: mk(
                "g1",
                [ere(7, 24, 1), er(7, 24), er(7, 24)],
                [er(-3, 8), one, one],
            ),
        },
        StrictnessCase {
            id: "h",
            strict: true,
            base: mk("h0", [er(1, 4), er(1, 4), er(1, 4)], [one, one, one]),
            perturbed: mk("h1", [ere(1, 4, 1), er(1, 4), er(1, 4)], [one, one, one]),
        },
        StrictnessCase {
            id: "i",
            strict: true,
            base: mk(
                "i0",
                [er(1, 2), er(3, 16), er(3, 16)],
                [er(-1, 4), one, one],
            ),
            perturbed: mk(
                "i1",
                [er(1, 2), er(3, 16), er(3, 16)],
                [ere(-1, 4, 1), one, one],
            ),
        },
        StrictnessCase {
            id: "j",
            strict: true,
            base: mk(
                "j0",
                [er(3, 16), er(1, 2), er(3, 16)],
                [one, er(-1, 4), one],
            ),
            perturbed: mk(
                "j1",
                [er(3, 16), er(1, 2), er(3, 16)],
                [one, ere(-1, 4, 1), one],
            ),
        },
        StrictnessCase {
            id: "k",
            strict: true,
            base: mk(
                "k0",
                [er(3, 16), er(3, 16), er(1, 2)],
                [one, one, er(-1, 4)],
            ),
            perturbed: mk(
                "k1",
                [er(3, 16), er(3, 16), er(1, 2)],
                [one, one, ere(-1, 4, 1)],
            ),
        },
        StrictnessCase {
            id: "l",
            strict: false,
            base: mk("l0", [one, er(0, 1), er(0, 1)], [one, one, one]),
            perturbed: mk("l1", [one, ere(0, 1, -1), er(0, 1)], [one, one, one]),
        },
        StrictnessCase {
            id: "m",
            strict: false,
            base: mk("m0", [er(0, 1), one, er(0, 1)], [one, one, one]),
            perturbed: mk("m1", [ere(0, 1, -1), one, er(0, 1)], [one, one, one]),
        },
        StrictnessCase {
            id: "n",
            strict: false,
            base: mk("n0", [er(0, 1), er(0, 1), one], [one, one, one]),
            perturbed: mk("n1", [ere(0, 1, -1), er(0, 1), one], [one, one, one]),
        },
    ]
}

#[test]
fn criterion_3_strictness_fidelity() {
    let mut checked = 0;
    for case in strictness_cases() {
        let base = check_atlas(&case.base);
        let tight = base.condition(case.id).expect("condition present");
        assert!(
            tight.margin.is_zero(),
            "({}) base margin should be exactly zero, got {}",
            case.id,
            tight.margin
        );
        // zero margin fails iff the condition is strict
        assert_eq!(
            base.pass, !case.strict,
            "({}) zero-margin instance: expected pass = {}",
            case.id, !case.strict
        );
        let expected_failures: Vec<&str> = if case.strict { vec![case.id] } else { vec![] };
        assert_eq!(
            base.failures(),
            expected_failures,
            "({}) zero-margin instance must flag exactly the tight condition",
            case.id
        );
        checked += 1;

        // the eps nudge flips exactly the tight condition
        let nudged = check_atlas(&case.perturbed);
        if case.strict {
            assert!(nudged.pass, "({}) +eps instance must pass", case.id);
        } else {
            assert_eq!(
                nudged.failures(),
                vec![case.id],
                "({}) -eps instance must fail exactly there",
                case.id
            );
        }
        for (b, n) in base.conditions.iter().zip(&nudged.conditions) {
            if b.id != case.id {
                assert_eq!(
                    b.pass, n.pass,
                    "({}) perturbation leaked into condition {}",
                    case.id, b.id
                );
            }
        }
        checked += 1;
    }
    assert_eq!(checked, 28);
    println!("criterion 3: PASS (28 exact strictness cases)");
}

#[test]
fn criterion_4_reformulation_identities() {
    let mut worst_a = 0.0f64;
    let mut worst_phi = 0.0f64;
    for seed in 0..10u64 {
        let cfg = SimConfig {
            n: 64,
            length: 2.0 * std::f64::consts::PI,
            dt: 0.1,
            t_end: 0.0,
            formulation: Formulation::Nullform,
            seed,
            data_spec: DataSpec {
                s: 1.0,
                sprime: 1.0,
                amplitude: 0.5,
                band: 8,
            },
            monitor_stride: 1,
        };
        let state = make_initial_data(&cfg).expect("initial data");
        let (gap_a, gap_phi) = reformulation_gaps(&state).expect("gaps");
        worst_a = worst_a.max(gap_a);
        worst_phi = worst_phi.max(gap_phi);
    }
    println!(
        "criterion 4: worst identity gaps over 10 seeds: A-equation {worst_a:.3e}, phi-equation {worst_phi:.3e}"
    );
    assert!(worst_a <= 1e-10, "A-equation identity gap {worst_a}");
    assert!(worst_phi <= 1e-10, "phi-equation identity gap {worst_phi}");

    // negative control: a gradient component breaks the phi identity
    let cfg = SimConfig {
        n: 64,
        length: 2.0 * std::f64::consts::PI,
        dt: 0.1,
        t_end: 0.0,
        formulation: Formulation::Nullform,
        seed: 0,
        data_spec: DataSpec {
            s: 1.0,
            sprime: 1.0,
            amplitude: 0.5,
            band: 8,
        },
        monitor_stride: 1,
    };
    let mut state = make_initial_data(&cfg).expect("initial data");
    let chi = ScalarField::from_physical_fn(state.grid(), true, |x1, x2| {
        Complex64::new(0.5 * (x1.sin() + (2.0 * x2).cos()), 0.0)
    });
    state.a = VectorField::new(
        state.a.x1.add(&derivative(&chi, Axis::X1)),
        state.a.x2.add(&derivative(&chi, Axis::X2)),
    );
    let (_, gap_phi_broken) = reformulation_gaps(&state).expect("gaps");
    println!("criterion 4: negative control gap {gap_phi_broken:.3e}");
    assert!(
        gap_phi_broken > 1e-3,
        "negative control should exceed 1e-3, got {gap_phi_broken}"
    );
    println!("criterion 4: PASS (null-form reformulation identities)");
}

struct DriftSummary {
    charge: f64,
    energy: f64,
    gauge: f64,
    a0_residual: f64,
    a_norm: f64,
}

fn drift_summary(cfg: &SimConfig) -> DriftSummary {
    let out = simulate(cfg).expect("reference run");
    let first = &out.monitors[0];
    let mut summary = DriftSummary {
        charge: 0.0,
        energy: 0.0,
        gauge: 0.0,
        a0_residual: 0.0,
        a_norm: out.state.a.norm_l2(),
    };
    for m in &out.monitors {
        summary.charge = summary
            .charge
            .max((m.charge - first.charge).abs() / (1.0 + first.charge.abs()));
        summary.energy = summary
            .energy
            .max((m.energy - first.energy).abs() / (1.0 + first.energy.abs()));
        summary.gauge = summary.gauge.max(m.gauge_div);
        summary.a0_residual = summary.a0_residual.max(m.a0_residual);
    }
    summary
}

#[test]
fn criterion_5_conservation_and_consistency() {
    let cfg = reference_config(Formulation::Direct);
    let coarse = drift_summary(&cfg);
    let mut halved = cfg.clone();
    halved.dt = cfg.dt / 2.0;
    let fine = drift_summary(&halved);

    let mut failures: Vec<String> = Vec::new();
    let mut bound = |name: &str, value: f64, limit: f64| {
        let ok = value <= limit;
        println!(
            "criterion 5: {name:<12} {value:.3e} (bound {limit:.1e}) {}",
            if ok { "ok" } else { "FAIL" }
        );
        if !ok {
            failures.push(format!("{name} = {value:.3e} exceeds {limit:.1e}"));
        }
    };
    bound("charge", coarse.charge, 1e-6);
    bound("energy", coarse.energy, 1e-5);
    bound("gauge", coarse.gauge, 1e-8 * (1.0 + coarse.a_norm));
    bound("a0_residual", coarse.a0_residual, 1e-6);

    let mut band = |name: &str, c: f64, f: f64| {
        let ratio = c / f;
        let ok = (8.0..=32.0).contains(&ratio);
        println!(
            "criterion 5: {name:<12} dt-halving ratio {ratio:.2} (4th-order band [8, 32]) {}",
            if ok { "ok" } else { "FAIL" }
        );
        if !ok {
            failures.push(format!("{name} ratio {ratio:.2} outside [8, 32]"));
        }
    };
    band("charge", coarse.charge, fine.charge);
    band("energy", coarse.energy, fine.energy);
    band("a0_residual", coarse.a0_residual, fine.a0_residual);
    // The gauge divergence is preserved to machine roundoff by construction
    // (the A-equation right side is Leray-projected and B0 is recovered from
    // the same discrete current), so it sits at the floating-point floor with
    // no dt dependence left to refine.  The band check below is kept as
    // specified and records that fact when it trips.
    band("gauge", coarse.gauge, fine.gauge);

    assert!(
        failures.is_empty(),
        "criterion 5 sub-checks failed: {failures:?}"
    );
    println!("criterion 5: PASS (conservation and consistency at reference resolution)");
}

#[test]
fn criterion_6_convergence_order() {
    // coupled smooth data: observed order 4.0 +/- 0.3
    let n = 64usize;
    let length = 2.0 * std::f64::consts::PI;
    let cfg = SimConfig {
        n,
        length,
        dt: 0.5 * length / n as f64,
        t_end: 1.0,
        formulation: Formulation::Direct,
        seed: 1,
        data_spec: DataSpec {
            s: 3.0,
            sprime: 3.0,
            amplitude: 1.0,
            band: 3,
        },
        monitor_stride: 1 << 20,
    };
    let report = convergence_study(&cfg, 4).expect("study");
    let orders = report.final_orders();
    print!("criterion 6: observed orders:");
    for (field, p) in report.fields.iter().zip(orders) {
        print!(" {field} {p:.3}");
    }
    println!();
    for (field, p) in report.fields.iter().zip(orders) {
        assert!(
            (p - 4.0).abs() <= 0.3,
            "field {field}: observed order {p:.3} outside 4.0 +/- 0.3"
        );
    }

    // free single-mode wave against the exact cosine evolution
    let grid = Grid2D::new(16).unwrap();
    let mut state = State::zeros(&grid);
    state.a = VectorField::new(
        ScalarField::from_physical_fn(&grid, true, |_, x2| Complex64::new(x2.sin(), 0.0)),
        ScalarField::zeros(&grid),
    );
    let dt = 0.01;
    let steps = 100;
    let mut cur = state.clone();
    for _ in 0..steps {
        cur = step_rk4(&cur, dt, Formulation::Direct).expect("free wave step");
    }
    let t = dt * steps as f64;
    let exact = state.a.x1.scale(Complex64::new(t.cos(), 0.0));
    let err = cur.a.x1.sub(&exact).norm_l2() / exact.norm_l2();
    println!("criterion 6: free-wave error at t = 1: {err:.3e}");
    assert!(err <= 1e-9, "free wave error {err}");
    println!("criterion 6: PASS (convergence order and exact free wave)");
}

#[test]
fn criterion_7_formulation_agreement() {
    let direct = simulate(&reference_config(Formulation::Direct))
        .expect("direct run")
        .state;
    let nullform = simulate(&reference_config(Formulation::Nullform))
        .expect("nullform run")
        .state;
    // the Coulomb constraint holds along the null-form trajectory too
    assert!(
        nullform.gauge_divergence() <= 1e-8 * (1.0 + nullform.a.norm_l2()),
        "nullform gauge divergence {}",
        nullform.gauge_divergence()
    );
    let rel = |num: f64, den: f64| num / den.max(1e-300);
    let phi_gap = rel(
        direct.phi.sub(&nullform.phi).norm_l2(),
        direct.phi.norm_l2(),
    );
    let a_gap = rel(
        direct
            .a
            .x1
            .sub(&nullform.a.x1)
            .norm_l2()
            .hypot(direct.a.x2.sub(&nullform.a.x2).norm_l2()),
        direct.a.norm_l2(),
    );
    println!("criterion 7: relative gaps at t = 1: phi {phi_gap:.3e}, a {a_gap:.3e}");
    assert!(phi_gap <= 1e-8, "phi gap {phi_gap}");
    assert!(a_gap <= 1e-8, "a gap {a_gap}");
    println!("criterion 7: PASS (direct and null-form trajectories agree)");
}

#[test]
fn criterion_8_operator_oracle_suite() {
    let start = Instant::now();
    for n in [8usize, 32, 128] {
        let grid = Grid2D::new(n).unwrap();
        let cutoff = grid.dealias_cutoff();

        // symbol correctness on pure modes across the retained band
        let modes: Vec<(i64, i64)> = vec![
            (0, 1),
            (1, 0),
            (1, 1),
            (-1, 2),
            (cutoff, 0),
            (0, -cutoff),
            (cutoff / 2, cutoff / 2),
        ];
        for (m1, m2) in modes {
            if m1.abs().max(m2.abs()) > cutoff {
                continue;
            }
            let f = ScalarField::from_mode(&grid, (m1, m2), Complex64::new(1.0, 0.0));
            let k1 = m1 as f64;
            let k2 = m2 as f64;
            let norm = k1.hypot(k2);
            let cases: Vec<(ScalarField, Complex64)> = vec![
                (
                    riesz(&f, Axis::X1),
                    if norm == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(0.0, k1 / norm)
                    },
                ),
                (
                    frac_op(&f, -1.0, FracKind::Homogeneous),
                    if norm == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(1.0 / norm, 0.0)
                    },
                ),
                (
                    frac_op(&f, 2.0, FracKind::Inhomogeneous),
                    Complex64::new(1.0 + norm * norm, 0.0),
                ),
                (derivative(&f, Axis::X2), Complex64::new(0.0, k2)),
            ];
            for (got, symbol) in cases {
                let expect = f.scale(symbol);
                let err = got.sub(&expect).norm_l2() / expect.norm_l2().max(1.0);
                assert!(err <= 1e-12, "n = {n}, mode ({m1},{m2}): symbol error {err}");
            }
        }

        // random-field identities at the operator tolerances
        let cfg = SimConfig {
            n,
            length: 2.0 * std::f64::consts::PI,
            dt: 0.1,
            t_end: 0.0,
            formulation: Formulation::Direct,
            seed: 9 + n as u64,
            data_spec: DataSpec {
                s: 1.0,
                sprime: 1.0,
                amplitude: 0.7,
                band: (n as i64 / 4).min(8).max(2) as usize,
            },
            monitor_stride: 1,
        };
        let state = make_initial_data(&cfg).expect("data");
        let f = state.phi.clone();
        let mean_free = f.sub(&ScalarField::constant(&grid, f.mean()));
        let riesz_defect = riesz(&riesz(&mean_free, Axis::X1), Axis::X1)
            .add(&riesz(&riesz(&mean_free, Axis::X2), Axis::X2))
            .add(&mean_free)
            .norm_l2()
            / mean_free.norm_l2();
        assert!(riesz_defect <= 1e-12, "n = {n}: Riesz identity {riesz_defect}");

        let x = VectorField::new(state.phi.re(), state.phi_t.re());
        let p = leray(&x);
        let pp = leray(&p);
        let idem = (p.x1.sub(&pp.x1).norm_l2() + p.x2.sub(&pp.x2).norm_l2()) / x.norm_l2();
        assert!(idem <= 1e-12, "n = {n}: Leray idempotence {idem}");
        let div = divergence(&p).norm_l2() / x.norm_l2();
        assert!(div <= 1e-12, "n = {n}: Leray divergence {div}");

        // orthogonality <P X, X - P X> = 0
        let q1 = x.x1.sub(&p.x1).to_physical();
        let q2 = x.x2.sub(&p.x2).to_physical();
        let p1 = p.x1.to_physical();
        let p2 = p.x2.to_physical();
        let mut inner = 0.0;
        for i in 0..grid.size() {
            inner += p1.values()[i].re * q1.values()[i].re
                + p2.values()[i].re * q2.values()[i].re;
        }
        inner *= grid.dx() * grid.dx();
        let ortho = inner.abs() / (x.norm_l2() * x.norm_l2());
        assert!(ortho <= 1e-10, "n = {n}: Leray orthogonality {ortho}");

        // Parseval
        let parseval =
            (f.to_physical().norm_l2() - f.to_spectral().norm_l2()).abs() / f.norm_l2();
        assert!(parseval <= 1e-12, "n = {n}: Parseval {parseval}");
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 8: operator oracle suite over n in {{8, 32, 128}} in {:.1}s",
        elapsed.as_secs_f64()
    );
    assert!(elapsed.as_secs_f64() < 30.0, "suite took {elapsed:?}");
    println!("criterion 8: PASS (operator oracles)");
}
