//! Timed propositional temporal logic with freeze quantifiers.
//!
//! Formulas are kept in negation normal form. [`parse_tptl`] and the
//! `Display` impl round-trip, [`normalize`] produces the pushed strictly
//! closed form the automaton compiler expects, and [`eval_tptl`] is the
//! reference semantics everything else is checked against.

mod ast;
mod classify;
mod eval;
mod nnf;
mod normalize;
pub mod parse;
mod print;
mod size;

pub use ast::Formula;
pub use classify::{classify, FragmentReport, FragmentTag};
pub use eval::{eval_tptl, language_member, EvalError, Evaluator};
pub use nnf::negate;
pub use normalize::{normalize, push_freezes, strictly_close, NormalizeError};
pub use parse::{parse_tptl, ParseError, ParseErrorKind};
pub use print::constraint_text;
pub use size::formula_size;
