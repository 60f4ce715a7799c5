//! Scan of the `(s, s')` square: exact feasibility search against the
//! closed-form region, with CSV and SVG output.
//!
//! The grid covers `(0, 1]^2` at the requested step; the interesting region
//! sits inside it and points below the admissibility floors serve as
//! negative checks.  Rows are ordered by `(s, s')`, so the output is
//! deterministic regardless of evaluation strategy.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use num_rational::Rational64;

use super::catalog::{closed_form_region, feasible_thetas_with};
use super::conditions::SpEqualityRule;
use super::eps::EpsRational;

#[derive(Clone, Debug)]
pub struct ScanRow {
    pub s: EpsRational,
    pub sp: EpsRational,
    pub closed_form: bool,
    pub scan_feasible: bool,
    pub witness: Option<(EpsRational, EpsRational)>,
    pub agree: bool,
}

#[derive(Clone, Debug)]
pub struct ScanSummary {
    pub points: usize,
    pub feasible: usize,
    pub off_boundary_points: usize,
    pub off_boundary_disagreements: usize,
    pub near_boundary_disagreements: Vec<(EpsRational, EpsRational)>,
}

impl ScanSummary {
    /// The reproduction criterion: every off-boundary point agrees.
    pub fn full_agreement_off_boundary(&self) -> bool {
        self.off_boundary_disagreements == 0
    }
}

#[derive(Clone, Debug)]
pub struct ScanTable {
    pub step: Rational64,
    pub rows: Vec<ScanRow>,
    pub summary: ScanSummary,
}

/// Vertical distance at least `1/16` from each of the three boundary lines
/// `s' = 3/2 - 2s`, `s' = s/2 - 1/8`, `s' = 4s - 3/2` (the second one checked
/// in the doubled form `2s' = s - 1/4` to keep coefficients integral).
pub fn off_boundary(s: EpsRational, sp: EpsRational) -> bool {
    let margin = EpsRational::ratio(1, 16);
    let d1 = abs(sp - (EpsRational::ratio(3, 2) - s * 2));
    // |s' - (s/2 - 1/8)| >= 1/16  <=>  |2s' - s + 1/4| >= 1/8
    let d2 = abs(sp * 2 - s + EpsRational::ratio(1, 4));
    let d3 = abs(sp - (s * 4 - EpsRational::ratio(3, 2)));
    d1 >= margin && d2 >= margin * 2 && d3 >= margin
}

fn abs(v: EpsRational) -> EpsRational {
    if v.is_negative() {
        -v
    } else {
        v
    }
}

/// Evaluate the grid.  `step` must be one of `1/32`, `1/64`, `1/128`.
pub fn scan_region(step: Rational64, rule: SpEqualityRule) -> ScanTable {
    assert!(
        [Rational64::new(1, 32), Rational64::new(1, 64), Rational64::new(1, 128)]
            .contains(&step),
        "step must be 1/32, 1/64 or 1/128"
    );
    let count = (step.denom() / step.numer()) as i64;
    let mut rows = Vec::with_capacity((count * count) as usize);
    for i in 1..=count {
        for j in 1..=count {
            let s = EpsRational::new(step * i, 0);
            let sp = EpsRational::new(step * j, 0);
            let closed_form = closed_form_region(s, sp);
            let witness = feasible_thetas_with(s, sp, rule);
            let scan_feasible = witness.is_some();
            rows.push(ScanRow {
                s,
                sp,
                closed_form,
                scan_feasible,
                witness: witness.map(|w| (w.theta0, w.theta1)),
                agree: closed_form == scan_feasible,
            });
        }
    }

    let mut summary = ScanSummary {
        points: rows.len(),
        feasible: rows.iter().filter(|r| r.scan_feasible).count(),
        off_boundary_points: 0,
        off_boundary_disagreements: 0,
        near_boundary_disagreements: Vec::new(),
    };
    for row in &rows {
        if off_boundary(row.s, row.sp) {
            summary.off_boundary_points += 1;
            if !row.agree {
                summary.off_boundary_disagreements += 1;
            }
        } else if !row.agree {
            summary.near_boundary_disagreements.push((row.s, row.sp));
        }
    }
    ScanTable {
        step,
        rows,
        summary,
    }
}

pub const SCAN_CSV_HEADER: &str =
    "s,sp,closed_form,scan_feasible,theta0_q,theta0_m,theta1_q,theta1_m,agree";

fn rational_cell(q: &Rational64) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn write_scan_csv(table: &ScanTable) -> String {
    let mut out = String::new();
    out.push_str(SCAN_CSV_HEADER);
    out.push('\n');
    for row in &table.rows {
        let (t0q, t0m, t1q, t1m) = match &row.witness {
            Some((t0, t1)) => (
                rational_cell(&t0.q),
                t0.m.to_string(),
                rational_cell(&t1.q),
                t1.m.to_string(),
            ),
            None => (String::new(), String::new(), String::new(), String::new()),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            rational_cell(&row.s.q),
            rational_cell(&row.sp.q),
            row.closed_form,
            row.scan_feasible,
            t0q,
            t0m,
            t1q,
            t1m,
            row.agree
        )
        .expect("string write");
    }
    out
}

/// Raster of the scanned square with feasible cells filled, disagreements
/// highlighted, and the three boundary lines drawn on top.
pub fn write_scan_svg(table: &ScanTable) -> String {
    let size = 640.0;
    let margin = 60.0;
    let total = size + 2.0 * margin;
    // plot coordinates: x = s, y = s' with the SVG y-axis flipped
    let to_x = |v: f64| margin + v * size;
    let to_y = |v: f64| margin + (1.0 - v) * size;

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total}\" height=\"{total}\" viewBox=\"0 0 {total} {total}\">"
    )
    .unwrap();
    writeln!(
        svg,
        "  <rect x=\"{margin}\" y=\"{margin}\" width=\"{size}\" height=\"{size}\" fill=\"white\" stroke=\"#444\"/>"
    )
    .unwrap();

    let step = *table.step.numer() as f64 / *table.step.denom() as f64;
    let cell = step * size;
    for row in &table.rows {
        if !row.scan_feasible && row.agree {
            continue;
        }
        let s = row.s.as_f64(0.0);
        let sp = row.sp.as_f64(0.0);
        let fill = if !row.agree {
            "#c0392b"
        } else {
            "#4682b4"
        };
        writeln!(
            svg,
            "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\" fill-opacity=\"0.85\"/>",
            to_x(s - step),
            to_y(sp),
            cell,
            cell,
            fill
        )
        .unwrap();
    }

    // the three boundary lines, clipped to the unit square
    let lines: [(&str, f64, f64); 3] = [
        // s' = 3/2 - 2s
        ("#111111", -2.0, 1.5),
        // s' = s/2 - 1/8
        ("#111111", 0.5, -0.125),
        // s' = 4s - 3/2
        ("#111111", 4.0, -1.5),
    ];
    for (color, slope, intercept) in lines {
        if let Some(((x1, y1), (x2, y2))) = clip_line(slope, intercept) {
            writeln!(
                svg,
                "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{}\" stroke-width=\"2\"/>",
                to_x(x1),
                to_y(y1),
                to_x(x2),
                to_y(y2),
                color
            )
            .unwrap();
        }
    }

    writeln!(
        svg,
        "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"20\" font-family=\"sans-serif\">s</text>",
        margin + size / 2.0,
        total - margin / 3.0
    )
    .unwrap();
    writeln!(
        svg,
        "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"20\" font-family=\"sans-serif\">s\u{2032}</text>",
        margin / 3.0,
        margin + size / 2.0
    )
    .unwrap();
    svg.push_str("</svg>\n");
    svg
}

fn clip_line(slope: f64, intercept: f64) -> Option<((f64, f64), (f64, f64))> {
    // intersect y = slope x + intercept with the unit square
    let mut pts = Vec::new();
    for x in [0.0, 1.0] {
        let y = slope * x + intercept;
        if (0.0..=1.0).contains(&y) {
            pts.push((x, y));
        }
    }
    for y in [0.0, 1.0] {
        if slope != 0.0 {
            let x = (y - intercept) / slope;
            if (0.0..=1.0).contains(&x) && !pts.iter().any(|p: &(f64, f64)| (p.0 - x).abs() < 1e-12) {
                pts.push((x, y));
            }
        }
    }
    if pts.len() >= 2 {
        Some((pts[0], pts[1]))
    } else {
        None
    }
}

/// Run the scan and write `region.csv` and `region.svg` under `out_dir`.
pub fn region_scan(
    step: Rational64,
    out_dir: &Path,
    rule: SpEqualityRule,
) -> io::Result<ScanTable> {
    let table = scan_region(step, rule);
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("region.csv"), write_scan_csv(&table))?;
    fs::write(out_dir.join("region.svg"), write_scan_svg(&table))?;
    Ok(table)
}
