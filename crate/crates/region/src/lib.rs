//! Alur–Dill regions over clock copies, the reachable region graph of a
//! timed automaton, emptiness and concrete witnesses.

mod graph;
mod region;
mod witness;

pub use graph::{
    build_region_graph, build_region_graph_with, check_emptiness, check_emptiness_with, clock_maxima, default_state_cap,
    region_bound, Emptiness, RegionEdge, RegionError, RegionGraph, RegionGraphNode,
};
pub use region::{region_of, CopyValuation, Region};
pub use witness::{extract_witness, WitnessError};
