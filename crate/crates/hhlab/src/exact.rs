//! Scalars that remember an exact rational value when they have one.
//!
//! Parameters typed as `p/q` (or short decimals) in a config file keep their
//! rational value through the exponent formulas, so comparisons such as
//! `tau == tau_c` are decided exactly and values like `21/8` come out as the
//! correctly rounded double. Once an operation leaves the rationals (an
//! irrational square root, an `i64` overflow) the scalar degrades to plain
//! `f64` and comparisons fall back to a `1e-12` tie tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};

/// Absolute/relative tolerance used when a comparison cannot be exact.
pub const TIE_TOLERANCE: f64 = 1e-12;

type Q = Ratio<i64>;

/// A real scalar with an optional exact rational shadow.
#[derive(Clone, Copy, Debug)]
pub struct Num {
    value: f64,
    exact: Option<Q>,
}

/// Outcome of comparing two [`Num`]s.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub ordering: Ordering,
    /// True when the operands were within [`TIE_TOLERANCE`] but could not be
    /// compared exactly; the ordering is then reported as `Equal`.
    pub near_tie: bool,
}

impl Num {
    pub fn ratio(num: i64, den: i64) -> Num {
        assert!(den != 0, "zero denominator");
        Num::from_q(Q::new(num, den))
    }

    pub fn int(n: i64) -> Num {
        Num::from_q(Q::from_integer(n))
    }

    /// A floating value with no exact shadow.
    pub fn float(value: f64) -> Num {
        Num { value, exact: None }
    }

    fn from_q(q: Q) -> Num {
        Num { value: q_to_f64(q), exact: Some(q) }
    }

    fn from_opt(q: Option<Q>, fallback: f64) -> Num {
        match q {
            Some(q) => Num::from_q(q),
            None => Num::float(fallback),
        }
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn exact(self) -> Option<(i64, i64)> {
        self.exact.map(|q| (*q.numer(), *q.denom()))
    }

    pub fn is_exact(self) -> bool {
        self.exact.is_some()
    }

    /// Square root, exact when the reduced numerator and denominator are
    /// perfect squares.
    pub fn sqrt(self) -> Num {
        if let Some(q) = self.exact {
            if !q.is_negative() {
                let (n, d) = (*q.numer(), *q.denom());
                let (rn, rd) = (n.sqrt(), d.sqrt());
                if rn * rn == n && rd * rd == d {
                    return Num::from_q(Q::new(rn, rd));
                }
            }
        }
        Num::float(self.value.sqrt())
    }

    /// Positive part `max(x, 0)`.
    pub fn pos(self) -> Num {
        match self.exact {
            Some(q) if q.is_negative() => Num::int(0),
            Some(_) => self,
            None => Num::float(self.value.max(0.0)),
        }
    }

    pub fn max(self, other: Num) -> Num {
        if self.compare(other).ordering == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Num) -> Num {
        if self.compare(other).ordering == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn recip(self) -> Num {
        Num::int(1) / self
    }

    /// Exact comparison when possible, otherwise tolerance-based.
    pub fn compare(self, other: Num) -> Comparison {
        if let (Some(a), Some(b)) = (self.exact, other.exact) {
            return Comparison { ordering: a.cmp(&b), near_tie: false };
        }
        let (a, b) = (self.value, other.value);
        let scale = 1.0f64.max(a.abs()).max(b.abs());
        if (a - b).abs() <= TIE_TOLERANCE * scale {
            Comparison { ordering: Ordering::Equal, near_tie: a != b || !a.is_finite() }
        } else if a < b {
            Comparison { ordering: Ordering::Less, near_tie: false }
        } else {
            Comparison { ordering: Ordering::Greater, near_tie: false }
        }
    }

    pub fn is_zero(self) -> bool {
        self.compare(Num::int(0)).ordering == Ordering::Equal
    }

    /// Parse `p/q`, an integer, or a decimal literal. Short decimals are kept
    /// exact; anything else becomes a float.
    pub fn parse(text: &str) -> Option<Num> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n = Num::parse(n)?;
            let d = Num::parse(d)?;
            if d.value == 0.0 {
                return None;
            }
            return Some(n / d);
        }
        let value: f64 = text.parse().ok()?;
        if !value.is_finite() {
            return None;
        }
        Some(Num::from_opt(parse_decimal(text), value))
    }
}

impl From<f64> for Num {
    /// Doubles whose binary expansion is short are taken as exact dyadic
    /// rationals (so `0.375` behaves like `3/8`).
    fn from(value: f64) -> Num {
        const MAX_DEN: i64 = 1 << 20;
        let scaled = value * MAX_DEN as f64;
        if value.is_finite() && scaled.fract() == 0.0 && scaled.abs() < 1e15 {
            Num::from_q(Q::new(scaled as i64, MAX_DEN))
        } else {
            Num::float(value)
        }
    }
}

impl From<i64> for Num {
    fn from(n: i64) -> Num {
        Num::int(n)
    }
}

impl From<i32> for Num {
    fn from(n: i32) -> Num {
        Num::int(n as i64)
    }
}

impl From<usize> for Num {
    fn from(n: usize) -> Num {
        Num::int(n as i64)
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(q) if *q.denom() != 1 && *q.denom() <= 4096 => {
                write!(f, "{} ({}/{})", self.value, q.numer(), q.denom())
            }
            _ => write!(f, "{}", self.value),
        }
    }
}

impl PartialEq for Num {
    fn eq(&self, other: &Num) -> bool {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => self.value == other.value,
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $op:tt) => {
        impl $trait for Num {
            type Output = Num;
            fn $method(self, rhs: Num) -> Num {
                let exact = match (self.exact, rhs.exact) {
                    (Some(a), Some(b)) => a.$checked(&b),
                    _ => None,
                };
                Num::from_opt(exact, self.value $op rhs.value)
            }
        }
        impl $trait<f64> for Num {
            type Output = Num;
            fn $method(self, rhs: f64) -> Num {
                self $op Num::from(rhs)
            }
        }
        impl $trait<i64> for Num {
            type Output = Num;
            fn $method(self, rhs: i64) -> Num {
                self $op Num::int(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl Div for Num {
    type Output = Num;
    fn div(self, rhs: Num) -> Num {
        let exact = match (self.exact, rhs.exact) {
            (Some(a), Some(b)) if !b.is_zero() => a.checked_div(&b),
            _ => None,
        };
        Num::from_opt(exact, self.value / rhs.value)
    }
}

impl Div<i64> for Num {
    type Output = Num;
    fn div(self, rhs: i64) -> Num {
        self / Num::int(rhs)
    }
}

impl Div<f64> for Num {
    type Output = Num;
    fn div(self, rhs: f64) -> Num {
        self / Num::from(rhs)
    }
}

impl Neg for Num {
    type Output = Num;
    fn neg(self) -> Num {
        Num::from_opt(self.exact.and_then(|q| Q::zero().checked_sub(&q)), -self.value)
    }
}

fn q_to_f64(q: Q) -> f64 {
    let (n, d) = (*q.numer(), *q.denom());
    const LIMIT: i64 = 1 << 53;
    if n.abs() <= LIMIT && d <= LIMIT {
        // Both operands are exact doubles, so IEEE division rounds correctly.
        n as f64 / d as f64
    } else {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

/// Exact value of a plain decimal literal such as `-0.375` or `12.5`.
fn parse_decimal(text: &str) -> Option<Q> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit() || c == '.') {
        return None;
    }
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.len() + frac_part.len() > 17 || frac_part.contains('.') {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: i64 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let d = 10i64.checked_pow(frac_part.len() as u32)?;
    let q = Q::new(n, d);
    Some(if neg { -q } else { q })
}
