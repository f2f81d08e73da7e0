use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use tptl_timing::{format_rational, Rational};

use crate::{Ata, ClockSet, LocId};

/// Clock values indexed like `Ata::clocks`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Valuation(pub Vec<Rational>);

impl Valuation {
    pub fn zero(clocks: usize) -> Self {
        Valuation(vec![Rational::from_integer(0); clocks])
    }

    pub fn get(&self, x: usize) -> Rational {
        self.0[x]
    }

    pub fn delayed(&self, t: Rational) -> Self {
        Valuation(self.0.iter().map(|v| v + t).collect())
    }

    pub fn reset(&self, y: &ClockSet) -> Self {
        Valuation(
            self.0
                .iter()
                .enumerate()
                .map(|(x, v)| if y.contains(x) { Rational::from_integer(0) } else { *v })
                .collect(),
        )
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &Valuation) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(v))?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct State {
    pub loc: LocId,
    pub val: Valuation,
}

impl State {
    pub fn new(loc: LocId, val: Valuation) -> Self {
        State { loc, val }
    }
}

/// Finite set of states, kept sorted so it can serve as a map key.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Configuration(pub BTreeSet<State>);

impl Configuration {
    pub fn empty() -> Self {
        Configuration(BTreeSet::new())
    }

    pub fn singleton(s: State) -> Self {
        Configuration(BTreeSet::from([s]))
    }

    /// `{(initial, 0)}`
    pub fn initial(a: &Ata) -> Self {
        Configuration::singleton(State::new(a.initial, Valuation::zero(a.clock_count())))
    }

    pub fn iter(&self) -> impl Iterator<Item = &State> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Configuration) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Configuration) -> Configuration {
        Configuration(self.0.union(&other.0).cloned().collect())
    }

    /// Accepting iff every location in it is accepting; the empty
    /// configuration is accepting.
    pub fn is_accepting(&self, a: &Ata) -> bool {
        self.0.iter().all(|s| a.is_accepting(s.loc))
    }

    pub fn format(&self, a: &Ata) -> String {
        let parts: Vec<String> = self.0.iter().map(|s| format!("({}, {})", a.name(s.loc), s.val)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl FromIterator<State> for Configuration {
    fn from_iter<T: IntoIterator<Item = State>>(iter: T) -> Self {
        Configuration(iter.into_iter().collect())
    }
}
