//! Formula to automaton translation.
//!
//! Every temporal subformula occurrence of a normalized formula becomes a
//! location, plus one initial location for the formula itself. Reading a
//! letter in a location unfolds the operator once:
//!
//! | location | transition on letter `A` |
//! |----------|--------------------------|
//! | `l U r`  | `frm(r) ∨ (frm(l) ∧ self)` |
//! | `F c`    | `frm(c) ∨ self` |
//! | `G c`    | `frm(c) ∧ self` |
//! | `X c`    | `frm(c)` |
//! | initial  | `frm(φ)` |
//!
//! where `frm` evaluates letters against `A`, turns constraints into guards
//! and freezes into bound locations.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;
use tptl_ata::{Ata, ClockSet, Letter, LocId, Location, TransitionFormula};
use tptl_formula::{normalize, Formula, NormalizeError};
use tptl_timing::TimedWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("formula is not in pushed, strictly closed form; normalized it reads {0}")]
    NotNormalized(Box<Formula>),
    #[error(transparent)]
    OpenFormula(#[from] NormalizeError),
}

#[derive(Debug, Clone)]
pub struct CompileOutput {
    pub ata: Ata,
    /// The formula each location stands for; index 0 is the initial copy.
    pub formulas: Vec<Formula>,
}

impl CompileOutput {
    pub fn formula(&self, q: LocId) -> &Formula {
        &self.formulas[q.0]
    }
}

/// Normalizes `f` and compiles the result.
pub fn compile_formula(f: &Formula) -> Result<CompileOutput, CompileError> {
    let normal = normalize(f)?;
    compile_tptl_to_vwata(&normal)
}

/// Compiles a normalized closed formula into an automaton with one location
/// per temporal subformula occurrence.
pub fn compile_tptl_to_vwata(f: &Formula) -> Result<CompileOutput, CompileError> {
    check_normalized(f)?;
    Builder::new(f, Sharing::PerOccurrence).finish()
}

/// Like [`compile_tptl_to_vwata`], but equal temporal subformulas share one
/// location. The result can have locations with several parents.
pub fn compile_shared(f: &Formula) -> Result<CompileOutput, CompileError> {
    check_normalized(f)?;
    Builder::new(f, Sharing::PerSubformula).finish()
}

fn check_normalized(f: &Formula) -> Result<(), CompileError> {
    let normal = normalize(f)?;
    if normal != *f {
        return Err(CompileError::NotNormalized(Box::new(normal)));
    }
    Ok(())
}

/// The letter a compiled automaton reads for `symbol`: the singleton when
/// the formula mentions it, otherwise the empty set.
pub fn project_symbol(ata: &Ata, symbol: &str) -> Letter {
    let single = Letter::single(symbol);
    if ata.letter_index(&single).is_some() {
        single
    } else {
        Letter::empty()
    }
}

/// Maps each symbol of `w` to the letter the automaton reads for it.
pub fn alphabet_projection(ata: &Ata, w: &TimedWord) -> TimedWord<Letter> {
    w.map_symbols(|s| project_symbol(ata, s))
}

/// A symbol the automaton reads as `letter`. The empty letter becomes a
/// fresh symbol, `_` followed by as many underscores as needed to avoid
/// the alphabet.
pub fn letter_symbol(ata: &Ata, letter: &Letter) -> String {
    match letter.0.iter().next() {
        Some(p) => p.clone(),
        None => {
            let mut s = String::from("_");
            while ata.letter_index(&Letter::single(&s)).is_some() {
                s.push('_');
            }
            s
        }
    }
}

/// Inverse of [`alphabet_projection`] up to the choice of the fresh symbol.
pub fn concretize_word(ata: &Ata, w: &TimedWord<Letter>) -> TimedWord {
    w.map_symbols(|l| letter_symbol(ata, l))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sharing {
    PerOccurrence,
    PerSubformula,
}

struct Builder<'f> {
    root: &'f Formula,
    clocks: Vec<String>,
    alphabet: Vec<Letter>,
    sharing: Sharing,
    by_node: HashMap<*const Formula, LocId>,
    by_value: HashMap<&'f Formula, LocId>,
    formulas: Vec<Formula>,
    nodes: Vec<&'f Formula>,
}

impl<'f> Builder<'f> {
    fn new(root: &'f Formula, sharing: Sharing) -> Self {
        let clocks = root.clocks().into_iter().collect();
        let mut alphabet: Vec<Letter> = root.atoms().iter().map(|a| Letter::single(a)).collect();
        alphabet.push(Letter::empty());
        Builder {
            root,
            clocks,
            alphabet,
            sharing,
            by_node: HashMap::new(),
            by_value: HashMap::new(),
            formulas: vec![root.clone()],
            nodes: vec![root],
        }
    }

    /// Numbers temporal subformulas in pre-order after the initial location.
    fn assign(&mut self, f: &'f Formula) {
        if f.is_temporal() {
            let known = match self.sharing {
                Sharing::PerOccurrence => None,
                Sharing::PerSubformula => self.by_value.get(f).copied(),
            };
            let id = known.unwrap_or_else(|| {
                let id = LocId(self.formulas.len());
                self.formulas.push(f.clone());
                self.nodes.push(f);
                self.by_value.insert(f, id);
                id
            });
            self.by_node.insert(f as *const Formula, id);
        }
        for c in f.children() {
            self.assign(c);
        }
    }

    fn loc(&self, f: &Formula) -> LocId {
        self.by_node[&(f as *const Formula)]
    }

    fn clock_set(&self, y: &BTreeSet<String>) -> ClockSet {
        y.iter().map(|x| self.clock(x)).collect()
    }

    fn clock(&self, x: &str) -> usize {
        self.clocks.iter().position(|c| c == x).expect("clock of the formula")
    }

    fn frm(&self, f: &Formula, a: &Letter) -> Result<TransitionFormula, CompileError> {
        use TransitionFormula as Tf;
        Ok(match f {
            Formula::Atom(p) => if a.contains(p) { Tf::Top } else { Tf::Bottom },
            Formula::NegAtom(p) => if a.contains(p) { Tf::Bottom } else { Tf::Top },
            Formula::Top => Tf::Top,
            Formula::Bottom => Tf::Bottom,
            Formula::Constraint(x, i) => Tf::Guard(self.clock(x), *i),
            Formula::And(l, r) => Tf::and(self.frm(l, a)?, self.frm(r, a)?),
            Formula::Or(l, r) => Tf::or(self.frm(l, a)?, self.frm(r, a)?),
            Formula::Freeze(y, body) if body.is_temporal() => Tf::bind(self.clock_set(y), self.loc(body)),
            Formula::Freeze(..) => {
                let normal = normalize(self.root).unwrap_or_else(|_| self.root.clone());
                return Err(CompileError::NotNormalized(Box::new(normal)));
            }
            temporal => Tf::Loc(self.loc(temporal)),
        })
    }

    fn delta(&self, q: LocId, a: &Letter) -> Result<TransitionFormula, CompileError> {
        use TransitionFormula as Tf;
        let f = self.nodes[q.0];
        if q.0 == 0 {
            return self.frm(f, a);
        }
        Ok(match f {
            Formula::Until(l, r) => Tf::or(self.frm(r, a)?, Tf::and(self.frm(l, a)?, Tf::Loc(q))),
            Formula::Finally(c) => Tf::or(self.frm(c, a)?, Tf::Loc(q)),
            Formula::Globally(c) => Tf::and(self.frm(c, a)?, Tf::Loc(q)),
            Formula::Next(c) => self.frm(c, a)?,
            _ => unreachable!("only temporal subformulas get locations"),
        })
    }

    fn finish(mut self) -> Result<CompileOutput, CompileError> {
        let root = self.root;
        self.assign(root);
        let g_rooted = |f: &Formula| {
            let mut core = f;
            while let Formula::Freeze(_, body) = core {
                core = body;
            }
            matches!(core, Formula::Globally(_))
        };
        let locations = self
            .formulas
            .iter()
            .enumerate()
            .map(|(i, f)| Location { name: format!("q{i}"), accepting: g_rooted(f) })
            .collect();
        let mut ata = Ata::new(locations, self.clocks.clone(), self.alphabet.clone());
        for q in 0..self.formulas.len() {
            for a in &self.alphabet {
                let tf = self.delta(LocId(q), a)?;
                ata.set_transition(LocId(q), a, tf).expect("targets and clocks come from the formula");
            }
        }
        ata.partition = tptl_ata::validate_unilateral(&ata).ok();
        Ok(CompileOutput { ata, formulas: self.formulas })
    }
}
