use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use tptl_ata::{Letter, LocId};
use tptl_timing::Interval;

/// Copy `index` of base clock `clock`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClockCopy {
    pub clock: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NtaLocation {
    /// Present alternating locations, sorted, each with one copy index per clock.
    pub entries: Vec<(LocId, Vec<usize>)>,
    /// Per clock, the live copy indices from least to most recently reset.
    /// Earlier copies never hold smaller values than later ones.
    pub act: Vec<Vec<usize>>,
}

impl NtaLocation {
    pub fn copies(&self, q: LocId) -> Option<&[usize]> {
        self.entries.iter().find(|(p, _)| *p == q).map(|(_, v)| v.as_slice())
    }

    pub fn contains(&self, q: LocId) -> bool {
        self.copies(q).is_some()
    }

    pub fn live_copies(&self) -> impl Iterator<Item = ClockCopy> + '_ {
        self.act.iter().enumerate().flat_map(|(clock, idx)| idx.iter().map(move |&index| ClockCopy { clock, index }))
    }

    /// Referenced copies equal the live ones, without repeats.
    pub fn is_consistent(&self) -> bool {
        self.act.iter().enumerate().all(|(x, live)| {
            let mut sorted = live.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let mut used: Vec<usize> = self.entries.iter().map(|(_, v)| v[x]).collect();
            used.sort_unstable();
            used.dedup();
            sorted.len() == live.len() && sorted == used
        })
    }

    pub fn format(&self, names: &[String], clocks: &[String]) -> String {
        let mut s = String::from("{");
        for (k, (q, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            let copies: Vec<String> = v.iter().enumerate().map(|(x, i)| format!("({},{i})", clocks[x])).collect();
            let _ = write!(s, "({} {})", names[q.0], copies.join(" "));
        }
        s.push_str(" | ");
        let acts: Vec<String> = self
            .act
            .iter()
            .enumerate()
            .map(|(x, live)| format!("{}=[{}]", clocks[x], live.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        s.push_str(&acts.join(" "));
        s.push('}');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NtaEdge {
    pub letter: usize,
    /// At most one interval per copy, sorted by copy.
    pub guards: Vec<(ClockCopy, Interval)>,
    pub resets: Vec<ClockCopy>,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nta {
    pub clocks: Vec<String>,
    /// Names of the alternating locations.
    pub names: Vec<String>,
    pub alphabet: Vec<Letter>,
    pub locations: Vec<NtaLocation>,
    pub accepting: Vec<bool>,
    /// Outgoing edges per location.
    pub edges: Vec<Vec<NtaEdge>>,
    pub initial: usize,
}

impl Nta {
    pub fn location_count(&self) -> usize {
        self.locations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn letter_index(&self, a: &Letter) -> Option<usize> {
        self.alphabet.iter().position(|l| l == a)
    }

    pub fn copy_name(&self, c: ClockCopy) -> String {
        format!("({},{})", self.clocks[c.clock], c.index)
    }

    pub fn location_text(&self, k: usize) -> String {
        self.locations[k].format(&self.names, &self.clocks)
    }

    pub fn edge_text(&self, e: &NtaEdge) -> String {
        let mut parts = vec![self.alphabet[e.letter].to_string()];
        for (c, i) in &e.guards {
            parts.push(format!("{} in {i}", self.copy_name(*c)));
        }
        if !e.resets.is_empty() {
            let names: Vec<String> = e.resets.iter().map(|c| self.copy_name(*c)).collect();
            parts.push(format!("{}:=0", names.join(",")));
        }
        parts.join("; ")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("automata serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph nta {\n  rankdir=LR;\n  node [shape=box];\n");
        for k in 0..self.locations.len() {
            let peripheries = if self.accepting[k] { 2 } else { 1 };
            let label = self.location_text(k).replace('"', "\\\"");
            let _ = writeln!(s, "  l{k} [label=\"{label}\", peripheries={peripheries}];");
        }
        let _ = writeln!(s, "  init [shape=point];\n  init -> l{};", self.initial);
        for (k, out) in self.edges.iter().enumerate() {
            for e in out {
                let label = self.edge_text(e).replace('"', "\\\"");
                let _ = writeln!(s, "  l{k} -> l{} [label=\"{label}\"];", e.target);
            }
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for ClockCopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.clock, self.index)
    }
}
