//! Alternating timed automata whose transitions may reset clocks on entry
//! (`Y.q`), with configuration semantics over exact rational time.
//!
//! A configuration is a set of `(location, valuation)` states. Reading a
//! letter after a delay replaces each state by a minimal model of its
//! transition formula, evaluated at the delayed valuation.

mod accept;
mod automaton;
mod config;
mod models;
pub mod sample;
mod transition;
mod validate;

pub use accept::{ata_accepts, Acceptance, RunDag};
pub use automaton::{Ata, AtaError, Letter, Location, Side};
pub use config::{Configuration, State, Valuation};
pub use models::{minimal_models, minimal_successors, satisfies, successors};
pub use transition::{ClockSet, LocId, TransitionFormula};
pub use validate::{validate_unilateral, validate_vwata, UnilateralError, VwataReport, VwataViolation};
