//! Exact time arithmetic shared by the formula, automaton and region layers.
//!
//! Every timestamp, delay and clock value is a [`Rational`]; nothing in the
//! workspace ever rounds.

mod interval;
mod valuation;
mod word;

pub use interval::{Interval, IntervalClass, IntervalError};
pub use valuation::ClockValuation;
pub use word::{TimedWord, WordError};

/// Exact non-float time value. `Ratio` keeps itself reduced with a positive
/// denominator.
pub type Rational = num_rational::Ratio<i64>;

/// Parses `n`, `n/d` or a finite decimal such as `1.25`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().ok()?;
        let den: i64 = den.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 12 {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole: i64 = if whole.is_empty() || whole == "-" { 0 } else { whole.parse().ok()? };
        let scale = 10i64.checked_pow(frac.len() as u32)?;
        let frac: i64 = frac.parse().ok()?;
        let magnitude = Rational::from_integer(whole.abs()) + Rational::new(frac, scale);
        return Some(if negative { -magnitude } else { magnitude });
    }
    text.parse::<i64>().ok().map(Rational::from_integer)
}

/// Renders `n` for integers and `n/d` otherwise; the inverse of [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
