//! Command implementations behind the `mkg2d` binary.
//!
//! Each command returns a process exit code so the thin `main` stays
//! testable: 0 success, 1 usage/config error, 2 runtime blow-up,
//! 3 check failed.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_rational::Rational64;

use crate::atlas::{
    check_atlas, region_scan, EpsRational, ProductEstimate, SpEqualityRule,
};
use crate::dynamics::{
    reformulation_gaps, simulate, convergence_study, DataSpec, DynamicsError, Formulation,
    MonitorRow, SimConfig, MONITOR_CSV_HEADER,
};
use crate::fields::State;
use crate::spectral::{
    dealias_product, derivative, divergence, leray, riesz, write_field, Axis, ScalarField,
    VectorField,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BLOWUP: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

/// Parse a simulation config from JSON, with a field/line diagnostic on
/// failure.  Unknown keys are rejected.
pub fn load_config(path: &Path) -> Result<SimConfig, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let cfg: SimConfig = serde_json::from_str(&text).map_err(|e| {
        format!(
            "config {}: line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        )
    })?;
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn write_monitor_csv(path: &Path, rows: &[MonitorRow]) -> std::io::Result<()> {
    let mut out = String::from(MONITOR_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    fs::write(path, out)
}

fn dump_state(dir: &Path, state: &State) -> std::io::Result<()> {
    let dumps: [(&str, &ScalarField); 7] = [
        ("phi", &state.phi),
        ("phi_t", &state.phi_t),
        ("a1", &state.a.x1),
        ("a2", &state.a.x2),
        ("a1_t", &state.a_t.x1),
        ("a2_t", &state.a_t.x2),
        ("a0", &state.a0),
    ];
    for (name, field) in dumps {
        let mut file = fs::File::create(dir.join(format!("{name}.field")))?;
        write_field(&mut file, &field.to_physical(), name)?;
        file.flush()?;
    }
    Ok(())
}

/// `simulate`: run a config, write `monitors.csv` (and final-state dumps
/// with `--snapshots`) into the output directory.
pub fn cmd_simulate(config: &Path, out_dir: &Path, snapshots: bool) -> i32 {
    let cfg = match load_config(config) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = fs::create_dir_all(out_dir) {
        eprintln!("error: cannot create {}: {e}", out_dir.display());
        return EXIT_USAGE;
    }
    match simulate(&cfg) {
        Ok(out) => {
            if let Err(e) = write_monitor_csv(&out_dir.join("monitors.csv"), &out.monitors) {
                eprintln!("error: writing monitors: {e}");
                return EXIT_USAGE;
            }
            if snapshots {
                if let Err(e) = dump_state(out_dir, &out.state) {
                    eprintln!("error: writing snapshots: {e}");
                    return EXIT_USAGE;
                }
            }
            println!(
                "simulated to t = {} in {} steps (dt = {:e}); {} monitor rows",
                out.state.time,
                (out.state.time / out.dt_effective).round(),
                out.dt_effective,
                out.monitors.len()
            );
            EXIT_OK
        }
        Err(failure) => {
            // keep whatever history exists; a blow-up is a result, not a loss
            let _ = write_monitor_csv(&out_dir.join("monitors.csv"), &failure.monitors);
            match failure.error {
                DynamicsError::Blowup { stage, step, time } => {
                    eprintln!(
                        "blow-up detected at RK4 stage {stage}, step {step}, t = {time:.6}; \
                         partial monitors written"
                    );
                    EXIT_BLOWUP
                }
                other => {
                    eprintln!("error: {other}");
                    EXIT_USAGE
                }
            }
        }
    }
}

/// `check-estimate`: evaluate the fourteen conditions on six exponent
/// literals (`p/q`, optionally `+m"\u{3b5}"` / `-m"\u{3b5}"`).
pub fn cmd_check_estimate(literals: &[String]) -> i32 {
    if literals.len() != 6 {
        eprintln!("error: expected six exponents s0 s1 s2 b0 b1 b2");
        return EXIT_USAGE;
    }
    let mut values = Vec::with_capacity(6);
    for lit in literals {
        match lit.parse::<EpsRational>() {
            Ok(v) => values.push(v),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        }
    }
    let estimate = ProductEstimate::new(
        format!(
            "estimate s=({}, {}, {}) b=({}, {}, {})",
            values[0], values[1], values[2], values[3], values[4], values[5]
        ),
        values[0],
        values[1],
        values[2],
        values[3],
        values[4],
        values[5],
    );
    let report = check_atlas(&estimate);
    print!("{report}");
    if report.pass {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

/// `region`: scan the `(s, s')` grid, write CSV and SVG, print the
/// agreement summary.  Exit 0 only with full off-boundary agreement.
pub fn cmd_region(step: &str, out_dir: &Path) -> i32 {
    let step = match parse_step(step) {
        Some(v) => v,
        None => {
            eprintln!("error: step must be 1/32, 1/64 or 1/128");
            return EXIT_USAGE;
        }
    };
    let table = match region_scan(step, out_dir, SpEqualityRule::default()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let s = &table.summary;
    println!(
        "scanned {} points at step {}/{}: {} feasible",
        s.points,
        step.numer(),
        step.denom(),
        s.feasible
    );
    println!(
        "off-boundary agreement: {}/{} ({}%)",
        s.off_boundary_points - s.off_boundary_disagreements,
        s.off_boundary_points,
        if s.off_boundary_points == 0 {
            100.0
        } else {
            100.0 * (s.off_boundary_points - s.off_boundary_disagreements) as f64
                / s.off_boundary_points as f64
        }
    );
    for (ps, psp) in &s.near_boundary_disagreements {
        println!("near-boundary disagreement at (s, s') = ({ps}, {psp})");
    }
    println!(
        "wrote {} and {}",
        out_dir.join("region.csv").display(),
        out_dir.join("region.svg").display()
    );
    if s.full_agreement_off_boundary() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn parse_step(text: &str) -> Option<Rational64> {
    let (p, q) = text.split_once('/')?;
    let step = Rational64::new(p.trim().parse().ok()?, q.trim().parse().ok()?);
    [
        Rational64::new(1, 32),
        Rational64::new(1, 64),
        Rational64::new(1, 128),
    ]
    .contains(&step)
    .then_some(step)
}

/// `identities`: the operator property suite plus the two reformulation
/// identities on seeded random band-limited data.  `--non-div-free` injects
/// a gradient into the potential as a negative control.
pub fn cmd_identities(seed: u64, n: usize, non_div_free: bool) -> i32 {
    let cfg = SimConfig {
        n,
        length: 2.0 * std::f64::consts::PI,
        dt: 0.1,
        t_end: 0.0,
        formulation: Formulation::Nullform,
        seed,
        data_spec: DataSpec {
            s: 1.0,
            sprime: 1.0,
            amplitude: 0.5,
            band: (n / 4).min(8).max(2),
        },
        monitor_stride: 1,
    };
    let grid = match cfg.grid() {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut state = match crate::dynamics::make_initial_data(&cfg) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if non_div_free {
        let chi = ScalarField::from_physical_fn(&grid, true, |x1, x2| {
            num_complex::Complex64::new(0.5 * (x1.sin() + (2.0 * x2).cos()), 0.0)
        });
        state.a = VectorField::new(
            state.a.x1.add(&derivative(&chi, Axis::X1)),
            state.a.x2.add(&derivative(&chi, Axis::X2)),
        );
        println!("injected gradient component into a (negative control)");
    }

    let mut worst: f64 = 0.0;
    let mut report = |name: &str, value: f64| {
        println!("{name:<28} {value:.3e}");
        worst = worst.max(value);
    };

    // operator properties on the state's own fields
    let f = &state.phi;
    let mean_free = f.sub(&ScalarField::constant(&grid, f.mean()));
    let riesz_identity = riesz(&riesz(&mean_free, Axis::X1), Axis::X1)
        .add(&riesz(&riesz(&mean_free, Axis::X2), Axis::X2))
        .add(&mean_free)
        .norm_l2()
        / mean_free.norm_l2().max(1e-300);
    report("riesz R1^2+R2^2 = -I", riesz_identity);

    let x = VectorField::new(state.phi.re(), state.phi_t.re());
    let p = leray(&x);
    let pp = leray(&p);
    report(
        "leray idempotence",
        (p.x1.sub(&pp.x1).norm_l2() + p.x2.sub(&pp.x2).norm_l2())
            / x.norm_l2().max(1e-300),
    );
    report(
        "leray divergence",
        divergence(&p).norm_l2() / x.norm_l2().max(1e-300),
    );

    let round_trip = f.to_physical().to_spectral().sub(&f.to_spectral()).norm_l2()
        / f.norm_l2().max(1e-300);
    report("fft round trip", round_trip);

    let parseval = (f.to_physical().norm_l2() - f.to_spectral().norm_l2()).abs()
        / f.norm_l2().max(1e-300);
    report("parseval", parseval);

    let one = ScalarField::constant(&grid, num_complex::Complex64::new(1.0, 0.0));
    let truncation = dealias_product(&[f, &one])
        .map(|p| p.sub(&crate::spectral::dealias_truncate(f)).norm_l2())
        .unwrap_or(f64::INFINITY)
        / f.norm_l2().max(1e-300);
    report("product truncation", truncation);

    match reformulation_gaps(&state) {
        Ok((gap_a, gap_phi)) => {
            report("A-equation null-form route", gap_a);
            report("phi-equation null-form route", gap_phi);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    }

    println!("max relative error {worst:.3e}");
    if worst <= 1e-10 {
        println!("identities: PASS");
        EXIT_OK
    } else {
        println!("identities: FAIL (tolerance 1e-10)");
        EXIT_CHECK_FAILED
    }
}

/// `convergence`: Richardson self-convergence study from a config.
pub fn cmd_convergence(config: &Path, refinements: usize, formulation: Option<Formulation>) -> i32 {
    let mut cfg = match load_config(config) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    if let Some(f) = formulation {
        cfg.formulation = f;
    }
    if refinements < 3 {
        eprintln!("error: need at least 3 refinement levels");
        return EXIT_USAGE;
    }
    match convergence_study(&cfg, refinements) {
        Ok(report) => {
            println!("dt0 = {:e}, {} refinement levels", report.dt0, refinements);
            for (i, row) in report.orders.iter().enumerate() {
                let dt = report.dt0 / (1 << i) as f64;
                print!("orders at (dt, dt/2, dt/4) from dt = {dt:.5}: ");
                for (field, p) in report.fields.iter().zip(row) {
                    print!("{field} {p:.3}  ");
                }
                println!();
            }
            EXIT_OK
        }
        Err(failure) => match failure.error {
            DynamicsError::Blowup { stage, step, time } => {
                eprintln!("blow-up at stage {stage}, step {step}, t = {time:.6}");
                EXIT_BLOWUP
            }
            other => {
                eprintln!("error: {other}");
                EXIT_USAGE
            }
        },
    }
}
