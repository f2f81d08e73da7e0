use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;
use thiserror::Error;
use tptl_ata::Letter;
use tptl_nta::{nta_stats, ClockCopy, Nta, NtaLocation};
use tptl_timing::TimedWord;

use crate::witness::{extract_witness, WitnessError};
use crate::Region;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("region graph exceeds the state cap of {0} nodes")]
    StateCapExceeded(usize),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

/// `TPTL_STATE_CAP` if set to a positive number, else 200000.
pub fn default_state_cap() -> usize {
    std::env::var("TPTL_STATE_CAP").ok().and_then(|v| v.parse().ok()).filter(|&n| n > 0).unwrap_or(200_000)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegionGraphNode {
    pub location: usize,
    pub region: Region,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionEdge {
    pub source: usize,
    /// Time-successor steps taken before the discrete transition.
    pub waits: usize,
    /// Index into the outgoing edges of the source location.
    pub transition: usize,
    pub letter: usize,
    pub target: usize,
}

#[derive(Debug, Clone)]
pub struct RegionGraph {
    pub cmax: Vec<u32>,
    pub nodes: Vec<RegionGraphNode>,
    pub edges: Vec<Vec<RegionEdge>>,
    /// The edge through which each node was first discovered.
    pub parent: Vec<Option<(usize, usize)>>,
}

/// Largest guard constant per base clock.
pub fn clock_maxima(n: &Nta) -> Vec<u32> {
    let mut out = vec![0; n.clocks.len()];
    for e in n.edges.iter().flatten() {
        for (c, i) in &e.guards {
            out[c.clock] = out[c.clock].max(i.max_constant());
        }
    }
    out
}

fn live(l: &NtaLocation) -> Vec<ClockCopy> {
    let mut v: Vec<ClockCopy> = l.live_copies().collect();
    v.sort();
    v
}

pub fn build_region_graph(n: &Nta) -> Result<RegionGraph, RegionError> {
    build_region_graph_with(n, default_state_cap())
}

/// Breadth-first construction of the reachable region graph.
pub fn build_region_graph_with(n: &Nta, cap: usize) -> Result<RegionGraph, RegionError> {
    let cmax = clock_maxima(n);
    let start = RegionGraphNode { location: n.initial, region: Region::zero(live(&n.locations[n.initial])) };
    let mut index = HashMap::from([(start.clone(), 0usize)]);
    let mut g = RegionGraph { cmax, nodes: vec![start], edges: Vec::new(), parent: vec![None] };
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let node = g.nodes[k].clone();
        let mut out: Vec<RegionEdge> = Vec::new();
        for (waits, delayed) in node.region.time_closure(&g.cmax).into_iter().enumerate() {
            for (t, e) in n.edges[node.location].iter().enumerate() {
                if !e.guards.iter().all(|(c, i)| delayed.satisfies(*c, i)) {
                    continue;
                }
                let keep = live(&n.locations[e.target]);
                let region = delayed.reset_and_restrict(&e.resets, &keep, &g.cmax);
                let succ = RegionGraphNode { location: e.target, region };
                let target = match index.get(&succ) {
                    Some(&id) => id,
                    None => {
                        let id = g.nodes.len();
                        if id >= cap {
                            return Err(RegionError::StateCapExceeded(cap));
                        }
                        index.insert(succ.clone(), id);
                        g.nodes.push(succ);
                        g.parent.push(Some((k, out.len())));
                        queue.push_back(id);
                        id
                    }
                };
                if !out.iter().any(|o| o.target == target && o.letter == e.letter) {
                    out.push(RegionEdge { source: k, waits, transition: t, letter: e.letter, target });
                }
            }
        }
        if g.edges.len() <= k {
            g.edges.resize(k + 1, Vec::new());
        }
        g.edges[k] = out;
    }
    g.edges.resize(g.nodes.len(), Vec::new());
    Ok(g)
}

impl RegionGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Edges from the initial node to `k` along discovery links.
    pub fn path_to(&self, mut k: usize) -> Vec<RegionEdge> {
        let mut path = Vec::new();
        while let Some((p, i)) = self.parent[k] {
            path.push(self.edges[p][i].clone());
            k = p;
        }
        path.reverse();
        path
    }

    /// The first edge in discovery order that enters an accepting node,
    /// preceded by the discovery path to its source.
    pub fn accepting_path(&self, n: &Nta) -> Option<Vec<RegionEdge>> {
        self.edges.iter().flatten().find(|e| n.accepting[self.nodes[e.target].location]).map(|e| {
            let mut path = self.path_to(e.source);
            path.push(e.clone());
            path
        })
    }

    pub fn to_dot(&self, n: &Nta) -> String {
        let mut s = String::from("digraph regions {\n  node [shape=box];\n");
        for (k, node) in self.nodes.iter().enumerate() {
            let peripheries = if n.accepting[node.location] { 2 } else { 1 };
            let _ = writeln!(s, "  r{k} [label=\"l{} | {}\", peripheries={peripheries}];", node.location, node.region.format());
        }
        for e in self.edges.iter().flatten() {
            let letter = n.alphabet[e.letter].to_string().replace('"', "\\\"");
            let _ = writeln!(s, "  r{} -> r{} [label=\"{letter} +{}\"];", e.source, e.target, e.waits);
        }
        s.push_str("}\n");
        s
    }
}

/// `|Q'| * (|X| * |Q|)! * 2 * (cmax + 1)` where `|Q'|` is the location
/// bound of the subset construction and `cmax` the largest guard constant.
pub fn region_bound(n: &Nta) -> BigUint {
    let stats = nta_stats(n);
    let copies = (stats.source_clocks * stats.source_locations) as u64;
    let fact: BigUint = (1..=copies).map(BigUint::from).product();
    let cmax = clock_maxima(n).into_iter().max().unwrap_or(0);
    stats.location_bound * fact * 2u32 * (cmax + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Emptiness {
    /// Some nonempty word is accepted; `witness` has been replayed on the automaton.
    Sat { witness: TimedWord<Letter>, path: Vec<RegionEdge>, nodes: usize },
    Empty { nodes: usize },
}

impl Emptiness {
    pub fn is_sat(&self) -> bool {
        matches!(self, Emptiness::Sat { .. })
    }

    pub fn witness(&self) -> Option<&TimedWord<Letter>> {
        match self {
            Emptiness::Sat { witness, .. } => Some(witness),
            Emptiness::Empty { .. } => None,
        }
    }
}

pub fn check_emptiness(n: &Nta) -> Result<Emptiness, RegionError> {
    check_emptiness_with(n, default_state_cap())
}

pub fn check_emptiness_with(n: &Nta, cap: usize) -> Result<Emptiness, RegionError> {
    let g = build_region_graph_with(n, cap)?;
    let nodes = g.node_count();
    Ok(match g.accepting_path(n) {
        Some(path) => {
            let witness = extract_witness(n, &g, &path)?;
            Emptiness::Sat { witness, path, nodes }
        }
        None => Emptiness::Empty { nodes },
    })
}
