//! Rationals augmented with a symbolic infinitesimal.
//!
//! Exponent bookkeeping for the product estimates constantly needs "strictly
//! above `q` by an arbitrarily small amount".  An [`EpsRational`] is
//! `q + m*eps` with exact rational `q`, integer `m`, and one shared positive
//! infinitesimal `eps`; comparison is lexicographic, so only the sign
//! structure of `eps` matters and every feasibility decision is exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct EpsRational {
    /// Rational part.
    pub q: Rational64,
    /// Coefficient of the infinitesimal.
    pub m: i64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseEpsError {
    #[error("empty exponent literal")]
    Empty,
    #[error("malformed exponent literal {0:?} (expected p/q, optionally followed by +m\u{3b5} or -m\u{3b5})")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

impl EpsRational {
    pub const fn new(q: Rational64, m: i64) -> Self {
        Self { q, m }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(Rational64::new_raw(n, 1), 0)
    }

    /// `p/q` as an exact rational with no infinitesimal part.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::new(Rational64::new(p, q), 0)
    }

    /// `p/q + m*eps`.
    pub fn ratio_eps(p: i64, q: i64, m: i64) -> Self {
        Self::new(Rational64::new(p, q), m)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero() && self.m == 0
    }

    /// Positive in the lexicographic order (`q > 0`, or `q = 0` and `m > 0`).
    pub fn is_positive(&self) -> bool {
        self.q.is_positive() || (self.q.is_zero() && self.m > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.q.is_negative() || (self.q.is_zero() && self.m < 0)
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Scale by a plain rational (both parts).
    pub fn scale(self, c: Rational64) -> Self {
        // the eps part only tracks sign and integer multiplicity, so scaling
        // is restricted to integer multiples to stay exact
        let m = c * Rational64::from_integer(self.m);
        assert!(
            m.is_integer(),
            "scaling the eps part must keep it an integer"
        );
        Self::new(self.q * c, m.to_integer())
    }

    /// Approximate float value with `eps` at a given magnitude, for display
    /// and plotting only.
    pub fn as_f64(&self, eps: f64) -> f64 {
        *self.q.numer() as f64 / *self.q.denom() as f64 + self.m as f64 * eps
    }
}

impl PartialOrd for EpsRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EpsRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.q.cmp(&other.q).then(self.m.cmp(&other.m))
    }
}

impl Add for EpsRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.q + rhs.q, self.m + rhs.m)
    }
}

impl Sub for EpsRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.q - rhs.q, self.m - rhs.m)
    }
}

impl Neg for EpsRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.q, -self.m)
    }
}

impl Mul<i64> for EpsRational {
    type Output = Self;
    fn mul(self, rhs: i64) -> Self {
        Self::new(self.q * rhs, self.m * rhs)
    }
}

impl From<i64> for EpsRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for EpsRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_integer() {
            write!(f, "{}", self.q.numer())?;
        } else {
            write!(f, "{}/{}", self.q.numer(), self.q.denom())?;
        }
        match self.m.cmp(&0) {
            std::cmp::Ordering::Greater => write!(f, "+{}\u{3b5}", self.m),
            std::cmp::Ordering::Less => write!(f, "-{}\u{3b5}", -self.m),
            std::cmp::Ordering::Equal => Ok(()),
        }
    }
}

impl fmt::Debug for EpsRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p`, `p/q`, and an optional trailing `+m(eps)` / `-m(eps)` where
/// the symbol can be spelled `ε` or `eps` and `m` defaults to 1.
impl FromStr for EpsRational {
    type Err = ParseEpsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseEpsError::Empty);
        }
        // split off the eps suffix if present
        let (rational_part, eps_part) = match s.find(['\u{3b5}']).or_else(|| {
            if s.ends_with("eps") {
                Some(s.len() - 3)
            } else {
                None
            }
        }) {
            Some(sym) => {
                let head = &s[..sym];
                // the sign of the eps term is part of the suffix
                match head.rfind(['+', '-']) {
                    Some(op) if op > 0 => (&head[..op], Some(&head[op..])),
                    _ => return Err(ParseEpsError::Malformed(s.to_string())),
                }
            }
            None => (s, None),
        };

        let q = parse_rational(rational_part).ok_or_else(|| malformed(s, rational_part))?;
        let m = match eps_part {
            None => 0,
            Some(t) => {
                let (sign, digits) = t.split_at(1);
                let mag: i64 = if digits.is_empty() {
                    1
                } else {
                    digits
                        .parse()
                        .map_err(|_| ParseEpsError::Malformed(s.to_string()))?
                };
                if sign == "+" {
                    mag
                } else {
                    -mag
                }
            }
        };
        Ok(EpsRational::new(q, m))
    }
}

fn malformed(whole: &str, part: &str) -> ParseEpsError {
    if part.split('/').nth(1) == Some("0") {
        ParseEpsError::ZeroDenominator(whole.to_string())
    } else {
        ParseEpsError::Malformed(whole.to_string())
    }
}

fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<i64>().ok().map(Rational64::from_integer),
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                None
            } else {
                Some(Rational64::new(p, q))
            }
        }
    }
}
