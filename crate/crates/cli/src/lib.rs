//! Pipeline driver and interchangeable membership oracles behind the
//! `tptl` command.

mod grid;
mod oracle;
mod pipeline;

pub use grid::{grid_search, GridBounds};
pub use oracle::{
    AtaOracle, EvalOracle, MembershipOracle, NtaOracle, OracleError, OracleRegistry, ReducedOracle,
};
pub use pipeline::{check_formula, CheckOptions, CheckOutcome, CheckStats, PipelineError, Verdict};
