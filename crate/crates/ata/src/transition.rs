use std::fmt;

use serde::{Deserialize, Serialize};
use tptl_timing::Interval;

/// Index of a location in its automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LocId(pub usize);

impl fmt::Display for LocId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

/// Set of clock indices, at most 64 clocks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct ClockSet(u64);

impl ClockSet {
    pub fn empty() -> Self {
        ClockSet(0)
    }

    /// `{0, .., n-1}`
    pub fn all(n: usize) -> Self {
        assert!(n <= 64, "at most 64 clocks");
        ClockSet(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn single(i: usize) -> Self {
        ClockSet(1 << i)
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(&self, other: &ClockSet) -> ClockSet {
        ClockSet(self.0 | other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(|i| self.contains(*i))
    }
}

impl FromIterator<usize> for ClockSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = ClockSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl From<Vec<usize>> for ClockSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl From<ClockSet> for Vec<usize> {
    fn from(s: ClockSet) -> Self {
        s.iter().collect()
    }
}

/// Positive Boolean combination of locations, bound locations and guards.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitionFormula {
    Top,
    Bottom,
    Loc(LocId),
    /// `Y.q`: enter `q` with the clocks of `Y` reset.
    Bind(ClockSet, LocId),
    /// Clock index and the interval its value must lie in.
    Guard(usize, Interval),
    And(Box<TransitionFormula>, Box<TransitionFormula>),
    Or(Box<TransitionFormula>, Box<TransitionFormula>),
}

impl TransitionFormula {
    /// `Bind` with an empty set is a plain location.
    pub fn bind(resets: ClockSet, q: LocId) -> Self {
        if resets.is_empty() {
            TransitionFormula::Loc(q)
        } else {
            TransitionFormula::Bind(resets, q)
        }
    }

    pub fn and(l: TransitionFormula, r: TransitionFormula) -> Self {
        use TransitionFormula::*;
        match (l, r) {
            (Bottom, _) | (_, Bottom) => Bottom,
            (Top, x) | (x, Top) => x,
            (l, r) => And(Box::new(l), Box::new(r)),
        }
    }

    pub fn or(l: TransitionFormula, r: TransitionFormula) -> Self {
        use TransitionFormula::*;
        match (l, r) {
            (Top, _) | (_, Top) => Top,
            (Bottom, x) | (x, Bottom) => x,
            (l, r) => Or(Box::new(l), Box::new(r)),
        }
    }

    pub fn and_all(parts: impl IntoIterator<Item = TransitionFormula>) -> Self {
        parts.into_iter().fold(TransitionFormula::Top, TransitionFormula::and)
    }

    pub fn or_all(parts: impl IntoIterator<Item = TransitionFormula>) -> Self {
        parts.into_iter().fold(TransitionFormula::Bottom, TransitionFormula::or)
    }

    /// Every `(resets, target)` pair occurring in the formula.
    pub fn targets(&self) -> Vec<(ClockSet, LocId)> {
        let mut out = Vec::new();
        self.visit(&mut |tf| match tf {
            TransitionFormula::Loc(q) => out.push((ClockSet::empty(), *q)),
            TransitionFormula::Bind(y, q) => out.push((*y, *q)),
            _ => {}
        });
        out
    }

    pub fn guards(&self) -> Vec<(usize, Interval)> {
        let mut out = Vec::new();
        self.visit(&mut |tf| {
            if let TransitionFormula::Guard(x, i) = tf {
                out.push((*x, *i));
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&TransitionFormula)) {
        f(self);
        if let TransitionFormula::And(l, r) | TransitionFormula::Or(l, r) = self {
            l.visit(f);
            r.visit(f);
        }
    }

    /// Disjunctive normal form as a list of clauses, each a list of literals
    /// (locations, bound locations, guards). `Top` is the single empty
    /// clause and `Bottom` the empty list.
    pub fn dnf(&self) -> Vec<Vec<TransitionFormula>> {
        match self {
            TransitionFormula::Top => vec![vec![]],
            TransitionFormula::Bottom => vec![],
            TransitionFormula::Or(l, r) => {
                let mut out = l.dnf();
                out.extend(r.dnf());
                out
            }
            TransitionFormula::And(l, r) => {
                let (ls, rs) = (l.dnf(), r.dnf());
                let mut out = Vec::with_capacity(ls.len() * rs.len());
                for a in &ls {
                    for b in &rs {
                        let mut c = a.clone();
                        c.extend(b.iter().cloned());
                        out.push(c);
                    }
                }
                out
            }
            literal => vec![vec![literal.clone()]],
        }
    }
}
