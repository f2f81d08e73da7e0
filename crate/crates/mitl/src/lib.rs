//! Metric interval temporal logic: syntax, pointwise semantics, and two
//! translations into one-clock TPTL.

mod ast;
mod eval;
mod parse;
mod translate;

pub use ast::MitlFormula;
pub use eval::eval_mitl;
pub use parse::{parse_mitl, MitlParseError};
pub use translate::{mitl_to_tptl0inf, mtl_to_tptl, TranslateError};
