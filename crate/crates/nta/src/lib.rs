//! Nondeterministic timed automata obtained from alternating ones by a
//! subset construction over clock copies.
//!
//! A location of the result records, for every alternating location it
//! contains, which copy of each clock that location reads, together with
//! the live copies of each clock ordered from least to most recently reset.

mod accept;
mod build;
mod model;
mod stats;

pub use accept::nta_accepts;
pub use build::{subsetize, subsetize_with, NtaError, SubsetizeOptions};
pub use model::{ClockCopy, Nta, NtaEdge, NtaLocation};
pub use stats::{location_bound, nta_stats, NtaStats};
