//! Direct pointwise semantics over finite timed words.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;
use tptl_timing::{ClockValuation, Rational, TimedWord};

use crate::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("position {pos} is outside 1..={len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("membership is undefined on the empty word")]
    EmptyWord,
    #[error("formula is open: clocks {} are unbound", .0.iter().cloned().collect::<Vec<_>>().join(", "))]
    OpenFormula(BTreeSet<String>),
}

type Key = (*const Formula, usize, Vec<Rational>);

/// Memoizing evaluator for one word.
///
/// Results are keyed by node identity, position, and the values of the
/// node's free clocks, so the evaluator must not outlive the formula it
/// was used on.
pub struct Evaluator<'w> {
    word: &'w TimedWord,
    free: HashMap<*const Formula, Vec<String>>,
    memo: HashMap<Key, bool>,
}

impl<'w> Evaluator<'w> {
    pub fn new(word: &'w TimedWord) -> Self {
        Evaluator { word, free: HashMap::new(), memo: HashMap::new() }
    }

    pub fn holds(&mut self, f: &Formula, pos: usize, nu: &ClockValuation) -> Result<bool, EvalError> {
        if pos == 0 || pos > self.word.len() {
            return Err(EvalError::PositionOutOfRange { pos, len: self.word.len() });
        }
        Ok(self.eval(f, pos, nu))
    }

    fn key(&mut self, f: &Formula, pos: usize, nu: &ClockValuation) -> Key {
        let ptr = f as *const Formula;
        let free = self.free.entry(ptr).or_insert_with(|| f.free_clocks().into_iter().collect());
        (ptr, pos, free.iter().map(|x| nu.get(x)).collect())
    }

    fn eval(&mut self, f: &Formula, i: usize, nu: &ClockValuation) -> bool {
        let n = self.word.len();
        match f {
            Formula::Atom(a) => self.word.symbol(i) == a,
            Formula::NegAtom(a) => self.word.symbol(i) != a,
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Constraint(x, interval) => interval.contains(self.word.time(i) - nu.get(x)),
            Formula::And(l, r) => self.eval(l, i, nu) && self.eval(r, i, nu),
            Formula::Or(l, r) => self.eval(l, i, nu) || self.eval(r, i, nu),
            Formula::Next(c) => i < n && self.eval(c, i + 1, nu),
            _ => {
                let key = self.key(f, i, nu);
                if let Some(&v) = self.memo.get(&key) {
                    return v;
                }
                let v = match f {
                    Formula::Freeze(y, c) => {
                        let t = self.word.time(i);
                        let frozen = y.iter().fold(nu.clone(), |v, x| v.with(x, t));
                        self.eval(c, i, &frozen)
                    }
                    Formula::Globally(c) => (i + 1..=n).all(|j| self.eval(c, j, nu)),
                    Formula::Finally(c) => (i + 1..=n).any(|j| self.eval(c, j, nu)),
                    Formula::Until(l, r) => {
                        let mut found = false;
                        for j in i + 1..=n {
                            if self.eval(r, j, nu) {
                                found = true;
                                break;
                            }
                            if !self.eval(l, j, nu) {
                                break;
                            }
                        }
                        found
                    }
                    _ => unreachable!("non-memoized cases handled above"),
                };
                self.memo.insert(key, v);
                v
            }
        }
    }
}

/// `w, pos, nu ⊨ f` with 1-based `pos`.
pub fn eval_tptl(w: &TimedWord, pos: usize, nu: &ClockValuation, f: &Formula) -> Result<bool, EvalError> {
    Evaluator::new(w).holds(f, pos, nu)
}

/// Whether the closed formula `f` holds at the first position of `w`.
pub fn language_member(w: &TimedWord, f: &Formula) -> Result<bool, EvalError> {
    let free = f.free_clocks();
    if !free.is_empty() {
        return Err(EvalError::OpenFormula(free));
    }
    if w.is_empty() {
        return Err(EvalError::EmptyWord);
    }
    eval_tptl(w, 1, &ClockValuation::zero(), f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_tptl;

    fn word(s: &str) -> TimedWord {
        TimedWord::parse_text(s).unwrap()
    }

    fn nested_until() -> Formula {
        parse_tptl("x.(a U (b U (c & x in [1,2])))").unwrap()
    }

    #[test]
    fn accepting_word() {
        let rho = word("a@0\na@0.2\nb@1.1\nb@1.9\nc@1.91\nc@2.1");
        assert!(eval_tptl(&rho, 1, &ClockValuation::zero(), &nested_until()).unwrap());
        assert!(language_member(&rho, &nested_until()).unwrap());
    }

    #[test]
    fn late_freeze_matters() {
        let rho = word("a@0\na@0.3\nb@1.4\nc@2.1\nc@2.5");
        let f = nested_until();
        assert!(!eval_tptl(&rho, 1, &ClockValuation::zero(), &f).unwrap());
        assert!(eval_tptl(&rho, 2, &ClockValuation::zero(), &f).unwrap());
    }

    #[test]
    fn top_and_atoms() {
        let w = word("a@0");
        assert!(eval_tptl(&w, 1, &ClockValuation::zero(), &Formula::Top).unwrap());
        assert!(language_member(&w, &Formula::atom("a")).unwrap());
        assert!(!language_member(&word("b@0"), &Formula::atom("a")).unwrap());
    }

    #[test]
    fn globally_is_vacuous_at_the_end() {
        let w = word("a@0");
        assert!(language_member(&w, &parse_tptl("G(false)").unwrap()).unwrap());
        assert!(!language_member(&w, &parse_tptl("X(true)").unwrap()).unwrap());
    }

    #[test]
    fn errors() {
        let w = word("a@0");
        assert_eq!(
            eval_tptl(&w, 2, &ClockValuation::zero(), &Formula::Top),
            Err(EvalError::PositionOutOfRange { pos: 2, len: 1 })
        );
        assert_eq!(language_member(&TimedWord::empty(), &Formula::Top), Err(EvalError::EmptyWord));
        assert!(matches!(language_member(&w, &parse_tptl("x<1").unwrap()), Err(EvalError::OpenFormula(_))));
    }

    #[test]
    fn open_constraint_reads_the_valuation() {
        let w = word("a@2");
        let nu = ClockValuation::zero().with("x", Rational::new(1, 2));
        assert!(eval_tptl(&w, 1, &nu, &parse_tptl("x in (1,2)").unwrap()).unwrap());
    }
}
