use tptl_formula::EvalError;
use tptl_timing::{Interval, TimedWord};

use crate::MitlFormula;

/// Strict-future pointwise semantics at the 1-based position `pos`.
pub fn eval_mitl(w: &TimedWord, pos: usize, f: &MitlFormula) -> Result<bool, EvalError> {
    if pos == 0 || pos > w.len() {
        return Err(EvalError::PositionOutOfRange { pos, len: w.len() });
    }
    Ok(holds(w, pos, f))
}

fn in_window(w: &TimedWord, i: usize, j: usize, interval: &Interval) -> bool {
    interval.contains(w.time(j) - w.time(i))
}

fn holds(w: &TimedWord, i: usize, f: &MitlFormula) -> bool {
    let n = w.len();
    match f {
        MitlFormula::Atom(a) => w.symbol(i) == a,
        MitlFormula::Top => true,
        MitlFormula::Not(c) => !holds(w, i, c),
        MitlFormula::And(l, r) => holds(w, i, l) && holds(w, i, r),
        MitlFormula::Or(l, r) => holds(w, i, l) || holds(w, i, r),
        MitlFormula::Until(l, r, interval) => (i + 1..=n).any(|j| {
            in_window(w, i, j, interval) && holds(w, j, r) && (i + 1..j).all(|k| holds(w, k, l))
        }),
        MitlFormula::Finally(interval, c) => (i + 1..=n).any(|j| in_window(w, i, j, interval) && holds(w, j, c)),
        MitlFormula::Globally(interval, c) => (i + 1..=n).all(|j| !in_window(w, i, j, interval) || holds(w, j, c)),
    }
}
