//! The fourteen-condition feasibility test for bilinear wave-Sobolev product
//! estimates, and the fixed-time Sobolev product rule.
//!
//! An estimate `||uv||_{H^{-s0,-b0}} <~ ||u||_{H^{s1,b1}} ||v||_{H^{s2,b2}}`
//! holds provided the conditions (a)-(n) below are satisfied; strict and
//! non-strict inequalities are distinguished exactly as the margins are
//! computed over [`EpsRational`], so a zero-margin strict condition fails
//! and gains of a bare `eps` flip it.

use std::fmt;

use super::eps::EpsRational;

/// One candidate instance of the bilinear estimate: the six exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductEstimate {
    pub s0: EpsRational,
    pub s1: EpsRational,
    pub s2: EpsRational,
    pub b0: EpsRational,
    pub b1: EpsRational,
    pub b2: EpsRational,
    pub label: String,
}

impl ProductEstimate {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        label: impl Into<String>,
        s0: EpsRational,
        s1: EpsRational,
        s2: EpsRational,
        b0: EpsRational,
        b1: EpsRational,
        b2: EpsRational,
    ) -> Self {
        Self {
            s0,
            s1,
            s2,
            b0,
            b1,
            b2,
            label: label.into(),
        }
    }
}

impl fmt::Display for ProductEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: s=({}, {}, {}), b=({}, {}, {})",
            self.label, self.s0, self.s1, self.s2, self.b0, self.b1, self.b2
        )
    }
}

/// Whether a condition requires `margin > 0` or `margin >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Strict,
    NonStrict,
}

impl Relation {
    pub fn holds(&self, margin: EpsRational) -> bool {
        match self {
            Relation::Strict => margin.is_positive(),
            Relation::NonStrict => !margin.is_negative(),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Strict => ">",
            Relation::NonStrict => ">=",
        }
    }
}

/// One evaluated condition: its identifier, the required relation, the
/// exact margin `left - right`, and whether it holds.
#[derive(Clone, Debug)]
pub struct ConditionRecord {
    pub id: String,
    pub relation: Relation,
    pub margin: EpsRational,
    pub pass: bool,
}

impl ConditionRecord {
    fn eval(id: impl Into<String>, relation: Relation, margin: EpsRational) -> Self {
        Self {
            id: id.into(),
            relation,
            margin,
            pass: relation.holds(margin),
        }
    }
}

/// Evaluated conditions of one instance plus the overall verdict
/// (pass iff every condition passes).
#[derive(Clone, Debug)]
pub struct FeasibilityReport {
    pub label: String,
    pub conditions: Vec<ConditionRecord>,
    pub pass: bool,
}

impl FeasibilityReport {
    fn from_conditions(label: impl Into<String>, conditions: Vec<ConditionRecord>) -> Self {
        let pass = conditions.iter().all(|c| c.pass);
        Self {
            label: label.into(),
            conditions,
            pass,
        }
    }

    pub fn condition(&self, id: &str) -> Option<&ConditionRecord> {
        self.conditions.iter().find(|c| c.id == id)
    }

    /// Ids of the failing conditions.
    pub fn failures(&self) -> Vec<&str> {
        self.conditions
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.id.as_str())
            .collect()
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} => {}",
            self.label,
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        for c in &self.conditions {
            writeln!(
                f,
                "  ({:<12}) margin {} 0: {:>14}  [{}]",
                c.id,
                c.relation.symbol(),
                c.margin.to_string(),
                if c.pass { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Check the fourteen conditions (a)-(n) on a six-tuple of exponents.
/// Margins are reported as `left - right` of each inequality.
pub fn check_atlas(e: &ProductEstimate) -> FeasibilityReport {
    let half = EpsRational::ratio(1, 2);
    let one = EpsRational::from_int(1);
    let three_halves = EpsRational::ratio(3, 2);
    let three_quarters = EpsRational::ratio(3, 4);
    let zero = EpsRational::zero();

    let s_sum = e.s0 + e.s1 + e.s2;
    let b_sum = e.b0 + e.b1 + e.b2;
    let b01 = e.b0 + e.b1;
    let b02 = e.b0 + e.b2;
    let b12 = e.b1 + e.b2;

    let conditions = vec![
        ConditionRecord::eval("a", Relation::Strict, b_sum - half),
        ConditionRecord::eval("b", Relation::NonStrict, b01),
        ConditionRecord::eval("c", Relation::NonStrict, b02),
        ConditionRecord::eval("d", Relation::NonStrict, b12),
        ConditionRecord::eval("e", Relation::Strict, s_sum - (three_halves - b_sum)),
        ConditionRecord::eval(
            "f",
            Relation::Strict,
            s_sum - (one - b01.min(b02).min(b12)),
        ),
        ConditionRecord::eval(
            "g",
            Relation::Strict,
            s_sum - (half - e.b0.min(e.b1).min(e.b2)),
        ),
        ConditionRecord::eval("h", Relation::Strict, s_sum - three_quarters),
        ConditionRecord::eval(
            "i",
            Relation::Strict,
            (e.s0 + e.b0) + (e.s1 + e.s2) * 2 - one,
        ),
        ConditionRecord::eval(
            "j",
            Relation::Strict,
            (e.s1 + e.b1) + (e.s0 + e.s2) * 2 - one,
        ),
        ConditionRecord::eval(
            "k",
            Relation::Strict,
            (e.s2 + e.b2) + (e.s0 + e.s1) * 2 - one,
        ),
        ConditionRecord::eval("l", Relation::NonStrict, e.s1 + e.s2 - zero.max(-e.b0)),
        ConditionRecord::eval("m", Relation::NonStrict, e.s0 + e.s2 - zero.max(-e.b1)),
        ConditionRecord::eval("n", Relation::NonStrict, e.s0 + e.s1 - zero.max(-e.b2)),
    ];
    FeasibilityReport::from_conditions(e.label.clone(), conditions)
}

/// How the "at most one equality" clause of the product rule counts its
/// inequalities: over all four clauses (the max split into one clause per
/// exponent), or with the max treated as a single inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SpEqualityRule {
    /// Clauses `{sum >= 1, sum >= s0, sum >= s1, sum >= s2}`; equalities
    /// counted per clause.  The conservative default.
    #[default]
    FourClauses,
    /// Clauses `{sum >= 1, sum >= max(s0, s1, s2)}`.
    MaxAsOne,
}

/// Fixed-time Sobolev product rule `||uv||_{H^{-s0}} <~ ||u||_{H^{s1}}
/// ||v||_{H^{s2}}`: all clauses must hold and at most one may be an equality.
pub fn check_sobolev_product(
    s0: EpsRational,
    s1: EpsRational,
    s2: EpsRational,
    rule: SpEqualityRule,
) -> FeasibilityReport {
    check_sobolev_product_labeled("sp", s0, s1, s2, rule)
}

pub fn check_sobolev_product_labeled(
    label: impl Into<String>,
    s0: EpsRational,
    s1: EpsRational,
    s2: EpsRational,
    rule: SpEqualityRule,
) -> FeasibilityReport {
    let one = EpsRational::from_int(1);
    let sum = s0 + s1 + s2;
    let mut conditions = Vec::new();
    let mut equalities = 0i64;

    let mut clause = |id: &str, margin: EpsRational, conditions: &mut Vec<ConditionRecord>| {
        if margin.is_zero() {
            equalities += 1;
        }
        conditions.push(ConditionRecord::eval(id, Relation::NonStrict, margin));
    };

    clause("sum>=1", sum - one, &mut conditions);
    match rule {
        SpEqualityRule::FourClauses => {
            clause("sum>=s0", sum - s0, &mut conditions);
            clause("sum>=s1", sum - s1, &mut conditions);
            clause("sum>=s2", sum - s2, &mut conditions);
        }
        SpEqualityRule::MaxAsOne => {
            clause("sum>=max", sum - s0.max(s1).max(s2), &mut conditions);
        }
    }
    // the margin of the equality budget: 1 - (#equalities)
    conditions.push(ConditionRecord::eval(
        "at-most-one-equality",
        Relation::NonStrict,
        EpsRational::from_int(1 - equalities),
    ));
    let mut report = FeasibilityReport::from_conditions(label, conditions);
    // keep the clause margins as data; overall pass already includes the count
    report.pass = report.conditions.iter().all(|c| c.pass);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn er(p: i64, q: i64) -> EpsRational {
        EpsRational::ratio(p, q)
    }

    fn uniform(s: EpsRational, b: EpsRational) -> ProductEstimate {
        ProductEstimate::new("test", s, s, s, b, b, b)
    }

    #[test]
    fn all_ones_passes_with_positive_margins() {
        let report = check_atlas(&uniform(er(1, 1), er(1, 1)));
        assert!(report.pass);
        for c in &report.conditions {
            assert!(c.margin.is_positive(), "condition {} margin {}", c.id, c.margin);
        }
    }

    #[test]
    fn small_s_fails_exactly_h() {
        // s = 7/30 each: s-sum = 7/10 < 3/4, everything else comfortable
        let report = check_atlas(&uniform(er(7, 30), er(1, 1)));
        assert!(!report.pass);
        assert_eq!(report.failures(), vec!["h"]);
        let h = report.condition("h").unwrap();
        assert_eq!(h.margin, er(7, 10) - er(3, 4));
    }

    #[test]
    fn h_boundary_respects_strictness() {
        // s-sum = 3/4 exactly: zero margin on the strict (h) fails
        let tight = uniform(er(1, 4), er(1, 1));
        let report = check_atlas(&tight);
        assert!(!report.pass);
        assert_eq!(report.failures(), vec!["h"]);
        assert!(report.condition("h").unwrap().margin.is_zero());
        // adding a bare eps to s0 flips it
        let mut nudged = tight.clone();
        nudged.s0 = nudged.s0 + EpsRational::ratio_eps(0, 1, 1);
        let report = check_atlas(&nudged);
        assert!(report.pass);
    }

    #[test]
    fn sobolev_product_examples() {
        // (1/2, 1/2, 1/2): sum 3/2, no equalities
        let r = check_sobolev_product(er(1, 2), er(1, 2), er(1, 2), SpEqualityRule::FourClauses);
        assert!(r.pass);
        // (0, 1/2, 1/2): sum = 1 is the single equality
        let r = check_sobolev_product(er(0, 1), er(1, 2), er(1, 2), SpEqualityRule::FourClauses);
        assert!(r.pass);
        assert_eq!(
            r.condition("at-most-one-equality").unwrap().margin,
            EpsRational::zero()
        );
        // (0, 0, 1): sum = 1 and sum = s2 are two equalities
        let r = check_sobolev_product(er(0, 1), er(0, 1), er(1, 1), SpEqualityRule::FourClauses);
        assert!(!r.pass);
        assert_eq!(r.failures(), vec!["at-most-one-equality"]);
    }

    #[test]
    fn equality_rule_flag_changes_the_count() {
        // (0, 0, 1) under the max-as-one reading: sum = 1 and sum = max are
        // still two equalities -> fail either way
        let r = check_sobolev_product(er(0, 1), er(0, 1), er(1, 1), SpEqualityRule::MaxAsOne);
        assert!(!r.pass);
        // (0, 1, 1): sum = 2: clauses sum>=s1, sum>=s2 hold strictly; under
        // four-clause counting sum>=s0 gives no equality either; both pass
        let r4 = check_sobolev_product(er(0, 1), er(1, 1), er(1, 1), SpEqualityRule::FourClauses);
        let r1 = check_sobolev_product(er(0, 1), er(1, 1), er(1, 1), SpEqualityRule::MaxAsOne);
        assert!(r4.pass && r1.pass);
        // a case where the readings differ: (1, 1, -1): sum = 1 (equality)
        // and sum = s0 = s1 = 1 (two more under four-clause)
        let r4 = check_sobolev_product(er(1, 1), er(1, 1), er(-1, 1), SpEqualityRule::FourClauses);
        let r1 = check_sobolev_product(er(1, 1), er(1, 1), er(-1, 1), SpEqualityRule::MaxAsOne);
        assert!(!r4.pass, "three equalities under the four-clause reading");
        assert!(!r1.pass, "two equalities under max-as-one");
        // and one where they really diverge: (1/2, 1/2, 0): sum = 1 equality;
        // four-clause: sum >= s_i all strict; max-as-one: sum >= 1/2 strict
        let r4 = check_sobolev_product(er(1, 2), er(1, 2), er(0, 1), SpEqualityRule::FourClauses);
        let r1 = check_sobolev_product(er(1, 2), er(1, 2), er(0, 1), SpEqualityRule::MaxAsOne);
        assert!(r4.pass && r1.pass);
    }

    #[test]
    fn report_display_is_tabular() {
        let text = check_atlas(&uniform(er(1, 1), er(1, 1))).to_string();
        assert!(text.contains("PASS"));
        assert!(text.lines().count() >= 15);
    }
}
