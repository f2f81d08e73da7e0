use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    Inverted { lower: u32, upper: u32 },
    #[error("an infinite upper bound cannot be closed")]
    ClosedInfinity,
    #[error("malformed interval `{0}`")]
    Malformed(String),
}

/// Convex subset of the non-negative reals with integer (or infinite) endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "IntervalRepr", into = "IntervalRepr")]
pub struct Interval {
    lower: u32,
    upper: Option<u32>,
    lower_closed: bool,
    upper_closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalClass {
    /// `<0,u>` with `u > 0`.
    RightSided,
    /// `<l,inf)`.
    LeftSided,
    /// `[c,c]`.
    Punctual,
    BoundedNonUnilateral,
}

impl Interval {
    pub fn new(
        lower: u32,
        upper: Option<u32>,
        lower_closed: bool,
        upper_closed: bool,
    ) -> Result<Self, IntervalError> {
        match upper {
            None if upper_closed => Err(IntervalError::ClosedInfinity),
            Some(u) if lower > u => Err(IntervalError::Inverted { lower, upper: u }),
            _ => Ok(Interval { lower, upper, lower_closed, upper_closed }),
        }
    }

    /// `[0,u]`
    pub fn at_most(u: u32) -> Self {
        Interval { lower: 0, upper: Some(u), lower_closed: true, upper_closed: true }
    }

    /// `[0,u)`
    pub fn below(u: u32) -> Self {
        Interval { lower: 0, upper: Some(u), lower_closed: true, upper_closed: false }
    }

    /// `[l,inf)`
    pub fn at_least(l: u32) -> Self {
        Interval { lower: l, upper: None, lower_closed: true, upper_closed: false }
    }

    /// `(l,inf)`
    pub fn above(l: u32) -> Self {
        Interval { lower: l, upper: None, lower_closed: false, upper_closed: false }
    }

    /// `[c,c]`
    pub fn point(c: u32) -> Self {
        Interval { lower: c, upper: Some(c), lower_closed: true, upper_closed: true }
    }

    pub fn lower(&self) -> u32 {
        self.lower
    }

    pub fn upper(&self) -> Option<u32> {
        self.upper
    }

    pub fn lower_closed(&self) -> bool {
        self.lower_closed
    }

    pub fn upper_closed(&self) -> bool {
        self.upper_closed
    }

    pub fn contains(&self, r: Rational) -> bool {
        let lo = Rational::from_integer(self.lower as i64);
        let above_lower = if self.lower_closed { r >= lo } else { r > lo };
        let below_upper = match self.upper {
            None => true,
            Some(u) => {
                let hi = Rational::from_integer(u as i64);
                if self.upper_closed {
                    r <= hi
                } else {
                    r < hi
                }
            }
        };
        above_lower && below_upper
    }

    pub fn class(&self) -> IntervalClass {
        match self.upper {
            None => IntervalClass::LeftSided,
            Some(u) if self.lower == u && self.lower_closed && self.upper_closed => {
                IntervalClass::Punctual
            }
            Some(u) if self.lower == 0 && u > 0 => IntervalClass::RightSided,
            Some(_) => IntervalClass::BoundedNonUnilateral,
        }
    }

    pub fn is_right_sided(&self) -> bool {
        self.class() == IntervalClass::RightSided
    }

    pub fn is_left_sided(&self) -> bool {
        self.class() == IntervalClass::LeftSided
    }

    pub fn is_unilateral(&self) -> bool {
        matches!(self.class(), IntervalClass::RightSided | IntervalClass::LeftSided)
    }

    /// True for `[0,inf)`, which every value satisfies.
    pub fn is_universal(&self) -> bool {
        self.lower == 0 && self.lower_closed && self.upper.is_none()
    }

    pub fn is_empty(&self) -> bool {
        match self.upper {
            Some(u) => u == self.lower && !(self.lower_closed && self.upper_closed),
            None => false,
        }
    }

    /// Largest finite endpoint.
    pub fn max_constant(&self) -> u32 {
        self.upper.map_or(self.lower, |u| u.max(self.lower))
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lower, lower_closed) = match self.lower.cmp(&other.lower) {
            std::cmp::Ordering::Greater => (self.lower, self.lower_closed),
            std::cmp::Ordering::Less => (other.lower, other.lower_closed),
            std::cmp::Ordering::Equal => (self.lower, self.lower_closed && other.lower_closed),
        };
        let (upper, upper_closed) = match (self.upper, other.upper) {
            (None, None) => (None, false),
            (Some(u), None) => (Some(u), self.upper_closed),
            (None, Some(u)) => (Some(u), other.upper_closed),
            (Some(a), Some(b)) => match a.cmp(&b) {
                std::cmp::Ordering::Less => (Some(a), self.upper_closed),
                std::cmp::Ordering::Greater => (Some(b), other.upper_closed),
                std::cmp::Ordering::Equal => (Some(a), self.upper_closed && other.upper_closed),
            },
        };
        let candidate = Interval::new(lower, upper, lower_closed, upper_closed).ok()?;
        (!candidate.is_empty()).then_some(candidate)
    }

    /// Intervals whose union is the non-negative reals minus `self`.
    pub fn complement(&self) -> Vec<Interval> {
        let mut parts = Vec::new();
        if self.lower > 0 || !self.lower_closed {
            let below = Interval {
                lower: 0,
                upper: Some(self.lower),
                lower_closed: true,
                upper_closed: !self.lower_closed,
            };
            if !below.is_empty() {
                parts.push(below);
            }
        }
        if let Some(u) = self.upper {
            parts.push(Interval { lower: u, upper: None, lower_closed: !self.upper_closed, upper_closed: false });
        }
        parts
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lower_closed { '[' } else { '(' };
        let close = if self.upper_closed { ']' } else { ')' };
        match self.upper {
            Some(u) => write!(f, "{open}{},{u}{close}", self.lower),
            None => write!(f, "{open}{},inf{close}", self.lower),
        }
    }
}

impl FromStr for Interval {
    type Err = IntervalError;

    /// Accepts `[l,u]`, `(l,u)`, mixed brackets, and `inf` as the upper bound.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || IntervalError::Malformed(s.to_string());
        let t = s.trim();
        let lower_closed = match t.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(malformed()),
        };
        let upper_closed = match t.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(malformed()),
        };
        let body = &t[1..t.len() - 1];
        let (lo, hi) = body.split_once(',').ok_or_else(malformed)?;
        let lower: u32 = lo.trim().parse().map_err(|_| malformed())?;
        let upper = match hi.trim() {
            "inf" | "∞" => None,
            h => Some(h.parse::<u32>().map_err(|_| malformed())?),
        };
        Interval::new(lower, upper, lower_closed, upper_closed)
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr(String);

impl From<Interval> for IntervalRepr {
    fn from(i: Interval) -> Self {
        IntervalRepr(i.to_string())
    }
}

impl TryFrom<IntervalRepr> for Interval {
    type Error = IntervalError;
    fn try_from(r: IntervalRepr) -> Result<Self, Self::Error> {
        r.0.parse()
    }
}
