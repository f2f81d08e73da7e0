use tptl_formula::{language_member, Formula};
use tptl_timing::{Rational, TimedWord};

/// Words searched by [`grid_search`]: up to `max_len` letters, timestamps
/// `k / denominator` no larger than `horizon`.
#[derive(Debug, Clone, Copy)]
pub struct GridBounds {
    pub max_len: usize,
    pub denominator: i64,
    pub horizon: i64,
}

impl GridBounds {
    /// Horizon one past the largest constant of `f`.
    pub fn for_formula(f: &Formula, max_len: usize, denominator: i64) -> Self {
        GridBounds { max_len, denominator, horizon: i64::from(max_constant(f)) + 1 }
    }
}

pub fn max_constant(f: &Formula) -> u32 {
    let own = match f {
        Formula::Constraint(_, i) => i.max_constant(),
        _ => 0,
    };
    f.children().into_iter().map(max_constant).fold(own, u32::max)
}

/// The formula's atoms plus one symbol outside them.
pub fn grid_alphabet(f: &Formula) -> Vec<String> {
    let mut symbols: Vec<String> = f.atoms().into_iter().collect();
    let mut fresh = String::from("_");
    while symbols.contains(&fresh) {
        fresh.push('_');
    }
    symbols.push(fresh);
    symbols
}

/// First satisfying word in order of length, then symbols, then
/// timestamps. The first timestamp is fixed at 0: a closed formula only
/// compares timestamps with each other, so shifting a word does not change
/// membership.
pub fn grid_search(f: &Formula, bounds: GridBounds) -> Option<TimedWord> {
    let symbols = grid_alphabet(f);
    let top = bounds.horizon * bounds.denominator;
    for len in 1..=bounds.max_len {
        let mut ticks = vec![0i64; len];
        loop {
            let mut letters = vec![0usize; len];
            loop {
                let entries = letters
                    .iter()
                    .zip(&ticks)
                    .map(|(&s, &k)| (symbols[s].clone(), Rational::new(k, bounds.denominator)))
                    .collect();
                let w = TimedWord::new(entries).expect("ticks are monotone");
                if language_member(&w, f).unwrap_or(false) {
                    return Some(w);
                }
                if !advance(&mut letters, |_| symbols.len() - 1) {
                    break;
                }
            }
            if !advance_monotone(&mut ticks, top) {
                break;
            }
        }
    }
    None
}

/// Odometer step, last digit fastest; false after the final value.
fn advance(digits: &mut [usize], max: impl Fn(usize) -> usize) -> bool {
    for i in (0..digits.len()).rev() {
        if digits[i] < max(i) {
            digits[i] += 1;
            digits[i + 1..].fill(0);
            return true;
        }
    }
    false
}

/// Next non-decreasing sequence with first entry 0 and entries up to `top`.
fn advance_monotone(ticks: &mut [i64], top: i64) -> bool {
    for i in (1..ticks.len()).rev() {
        if ticks[i] < top {
            ticks[i] += 1;
            let v = ticks[i];
            ticks[i + 1..].fill(v);
            return true;
        }
    }
    false
}
