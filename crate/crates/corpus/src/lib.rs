//! Reproducible random inputs: closed formulas of the unilateral fragment
//! and short timed words over a small alphabet.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tptl_formula::{classify, formula_size, normalize, Formula};
use tptl_timing::{Interval, Rational, TimedWord};

#[derive(Debug, Clone, Serialize)]
pub struct FormulaConfig {
    pub atoms: Vec<String>,
    pub clocks: Vec<String>,
    pub max_size: usize,
    pub max_constant: u32,
    pub max_depth: u32,
}

impl Default for FormulaConfig {
    fn default() -> Self {
        FormulaConfig {
            atoms: vec!["a".into(), "b".into(), "c".into()],
            clocks: vec!["x".into(), "y".into()],
            max_size: 12,
            max_constant: 3,
            max_depth: 4,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WordConfig {
    pub symbols: Vec<String>,
    pub min_len: usize,
    pub max_len: usize,
    /// Timestamps are multiples of `1/d` for some `d` in `1..=max_denominator`.
    pub max_denominator: i64,
    pub max_time: i64,
}

impl Default for WordConfig {
    fn default() -> Self {
        WordConfig {
            symbols: vec!["a".into(), "b".into(), "c".into()],
            min_len: 1,
            max_len: 6,
            max_denominator: 4,
            max_time: 4,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn interval(rng: &mut impl Rng, max_constant: u32) -> Interval {
    let k = rng.gen_range(0..=max_constant);
    match rng.gen_range(0..4) {
        0 => Interval::at_most(k),
        1 => Interval::below(k.max(1)),
        2 => Interval::at_least(k),
        _ => Interval::above(k),
    }
}

/// A closed formula: constraints only mention clocks frozen above them.
pub fn random_formula(rng: &mut impl Rng, cfg: &FormulaConfig) -> Formula {
    gen(rng, cfg, cfg.max_depth, &BTreeSet::new())
}

fn gen(rng: &mut impl Rng, cfg: &FormulaConfig, depth: u32, bound: &BTreeSet<String>) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        if !bound.is_empty() && rng.gen_bool(0.5) {
            let clocks: Vec<&String> = bound.iter().collect();
            let x = clocks.choose(rng).expect("bound clock");
            return Formula::constraint(x, interval(rng, cfg.max_constant));
        }
        return match rng.gen_range(0..8) {
            0..=3 => Formula::atom(cfg.atoms.choose(rng).expect("atoms")),
            4 | 5 => Formula::neg_atom(cfg.atoms.choose(rng).expect("atoms")),
            6 => Formula::Top,
            _ => Formula::Bottom,
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..8) {
        0 => Formula::and(gen(rng, cfg, d, bound), gen(rng, cfg, d, bound)),
        1 => Formula::or(gen(rng, cfg, d, bound), gen(rng, cfg, d, bound)),
        2 => Formula::until(gen(rng, cfg, d, bound), gen(rng, cfg, d, bound)),
        3 => Formula::globally(gen(rng, cfg, d, bound)),
        4 => Formula::finally(gen(rng, cfg, d, bound)),
        5 => Formula::next(gen(rng, cfg, d, bound)),
        _ if !cfg.clocks.is_empty() => {
            let mut y = BTreeSet::from([cfg.clocks.choose(rng).expect("clocks").clone()]);
            if rng.gen_bool(0.2) {
                y.extend(cfg.clocks.iter().cloned());
            }
            let inner: BTreeSet<String> = bound.union(&y).cloned().collect();
            Formula::Freeze(y, Box::new(gen(rng, cfg, d, &inner)))
        }
        _ => Formula::finally(gen(rng, cfg, d, bound)),
    }
}

/// `n` distinct closed fragment formulas within the size budget, each with
/// at least one temporal operator. Two in three keep a clock after
/// normalization, so their constraints are not decided at the freeze point.
pub fn fragment_formulas(seed: u64, n: usize, cfg: &FormulaConfig) -> Vec<Formula> {
    let mut rng = rng(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let f = random_formula(&mut rng, cfg);
        let mut temporal = false;
        f.walk(&mut |g| temporal |= g.is_temporal());
        let timed = normalize(&f).is_ok_and(|g| !g.clocks().is_empty());
        let wants_timing = out.len() % 3 != 0 && !cfg.clocks.is_empty();
        if temporal && (timed || !wants_timing) && formula_size(&f) <= cfg.max_size && classify(&f).is_fragment && seen.insert(f.clone()) {
            out.push(f);
        }
    }
    out
}

pub fn random_word(rng: &mut impl Rng, cfg: &WordConfig) -> TimedWord {
    let len = rng.gen_range(cfg.min_len..=cfg.max_len);
    let mut times: Vec<Rational> = (0..len)
        .map(|_| {
            let d = rng.gen_range(1..=cfg.max_denominator);
            Rational::new(rng.gen_range(0..=cfg.max_time * d), d)
        })
        .collect();
    times.sort();
    let entries = times.into_iter().map(|t| (cfg.symbols.choose(rng).expect("symbols").clone(), t)).collect();
    TimedWord::new(entries).expect("sorted non-negative times")
}

pub fn random_words(seed: u64, n: usize, cfg: &WordConfig) -> Vec<TimedWord> {
    let mut rng = rng(seed);
    (0..n).map(|_| random_word(&mut rng, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas_are_reproducible_closed_and_small() {
        let cfg = FormulaConfig::default();
        let a = fragment_formulas(7, 50, &cfg);
        assert_eq!(a, fragment_formulas(7, 50, &cfg));
        for f in &a {
            assert!(f.is_closed());
            assert!(formula_size(f) <= 12);
            assert!(f.clocks().len() <= 2);
        }
        let timed = a.iter().filter(|f| !normalize(f).unwrap().clocks().is_empty()).count();
        assert!(timed >= 30, "{timed} of 50 keep a clock");
    }

    #[test]
    fn words_respect_the_grid() {
        let cfg = WordConfig::default();
        for w in random_words(3, 100, &cfg) {
            assert!((1..=6).contains(&w.len()));
            for (_, t) in w.entries() {
                assert!(*t.denom() <= 4 && *t <= Rational::from_integer(4));
            }
        }
    }
}
