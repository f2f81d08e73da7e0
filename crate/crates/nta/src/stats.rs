use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::Serialize;

use crate::{ClockCopy, Nta};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NtaStats {
    pub locations: usize,
    pub edges: usize,
    /// Distinct clock copies live in some location.
    pub clock_copies: usize,
    pub max_live_copies: usize,
    pub source_locations: usize,
    pub source_clocks: usize,
    /// `|Q| * (|X|^|Q| + 1) * (|Q|!)^|X|` for the source automaton.
    #[serde(serialize_with = "as_string")]
    pub location_bound: BigUint,
}

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn location_bound(q: usize, x: usize) -> BigUint {
    let fact: BigUint = (1..=q as u64).map(BigUint::from).product();
    let q_big = BigUint::from(q);
    q_big * (BigUint::from(x).pow(q as u32) + 1u32) * fact.pow(x as u32)
}

pub fn nta_stats(n: &Nta) -> NtaStats {
    let copies: BTreeSet<ClockCopy> = n.locations.iter().flat_map(|l| l.live_copies()).collect();
    let max_live = n.locations.iter().flat_map(|l| l.act.iter().map(Vec::len)).max().unwrap_or(0);
    NtaStats {
        locations: n.location_count(),
        edges: n.edge_count(),
        clock_copies: copies.len(),
        max_live_copies: max_live,
        source_locations: n.names.len(),
        source_clocks: n.clocks.len(),
        location_bound: location_bound(n.names.len(), n.clocks.len()),
    }
}
