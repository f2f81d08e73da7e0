use std::collections::BTreeMap;

use crate::Rational;

/// Clock name to value. Clocks never assigned read as zero, so the empty
/// valuation is the designated all-zero valuation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClockValuation(BTreeMap<String, Rational>);

impl ClockValuation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn get(&self, clock: &str) -> Rational {
        self.0.get(clock).copied().unwrap_or_else(|| Rational::from_integer(0))
    }

    pub fn set(&mut self, clock: &str, value: Rational) {
        assert!(value >= Rational::from_integer(0), "clock values are non-negative");
        self.0.insert(clock.to_string(), value);
    }

    pub fn with(mut self, clock: &str, value: Rational) -> Self {
        self.set(clock, value);
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Rational)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl FromIterator<(String, Rational)> for ClockValuation {
    fn from_iter<T: IntoIterator<Item = (String, Rational)>>(iter: T) -> Self {
        let mut v = ClockValuation::zero();
        for (k, r) in iter {
            v.set(&k, r);
        }
        v
    }
}
