use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{ClockSet, LocId, TransitionFormula};

/// An input symbol of the automaton: a set of propositions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(pub BTreeSet<String>);

impl Letter {
    pub fn empty() -> Self {
        Letter(BTreeSet::new())
    }

    pub fn single(p: &str) -> Self {
        Letter(BTreeSet::from([p.to_string()]))
    }

    pub fn contains(&self, p: &str) -> bool {
        self.0.contains(p)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Location {
    pub name: String,
    pub accepting: bool,
}

/// Which way valuations may move while keeping a location's guards true.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// Guards are right-sided: smaller clock values are better.
    Le,
    /// Guards are left-sided: larger clock values are better.
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtaError {
    #[error("letter {0} is not in the alphabet")]
    UnknownLetter(Letter),
    #[error("location {0} does not exist")]
    UnknownLocation(LocId),
    #[error("clock index {0} does not exist")]
    UnknownClock(usize),
    #[error("invalid automaton JSON: {0}")]
    Json(String),
}

static BOTTOM: TransitionFormula = TransitionFormula::Bottom;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ata {
    pub locations: Vec<Location>,
    pub clocks: Vec<String>,
    pub alphabet: Vec<Letter>,
    /// `delta[q][k]` is the transition of location `q` on `alphabet[k]`.
    pub delta: Vec<Vec<TransitionFormula>>,
    pub initial: LocId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Side>>,
}

impl Ata {
    /// Automaton whose transitions are all `Bottom`; the first location is initial.
    pub fn new(locations: Vec<Location>, clocks: Vec<String>, alphabet: Vec<Letter>) -> Self {
        let delta = vec![vec![TransitionFormula::Bottom; alphabet.len()]; locations.len()];
        Ata { locations, clocks, alphabet, delta, initial: LocId(0), partition: None }
    }

    pub fn location_count(&self) -> usize {
        self.locations.len()
    }

    pub fn clock_count(&self) -> usize {
        self.clocks.len()
    }

    pub fn locations(&self) -> impl Iterator<Item = LocId> {
        (0..self.locations.len()).map(LocId)
    }

    pub fn is_accepting(&self, q: LocId) -> bool {
        self.locations[q.0].accepting
    }

    pub fn name(&self, q: LocId) -> &str {
        &self.locations[q.0].name
    }

    pub fn letter_index(&self, a: &Letter) -> Option<usize> {
        self.alphabet.iter().position(|l| l == a)
    }

    pub fn clock_index(&self, name: &str) -> Option<usize> {
        self.clocks.iter().position(|c| c == name)
    }

    pub fn all_clocks(&self) -> ClockSet {
        ClockSet::all(self.clocks.len())
    }

    pub fn set_transition(&mut self, q: LocId, a: &Letter, tf: TransitionFormula) -> Result<(), AtaError> {
        let k = self.letter_index(a).ok_or_else(|| AtaError::UnknownLetter(a.clone()))?;
        if q.0 >= self.locations.len() {
            return Err(AtaError::UnknownLocation(q));
        }
        for (_, target) in tf.targets() {
            if target.0 >= self.locations.len() {
                return Err(AtaError::UnknownLocation(target));
            }
        }
        if let Some((x, _)) = tf.guards().into_iter().find(|(x, _)| *x >= self.clocks.len()) {
            return Err(AtaError::UnknownClock(x));
        }
        self.delta[q.0][k] = tf;
        Ok(())
    }

    /// The transition on `a`; letters outside the alphabet lead nowhere.
    pub fn transition(&self, q: LocId, a: &Letter) -> &TransitionFormula {
        match self.letter_index(a) {
            Some(k) => &self.delta[q.0][k],
            None => &BOTTOM,
        }
    }

    /// `(source, letter index, resets, target)` for every location atom in δ.
    pub fn edges(&self) -> Vec<(LocId, usize, ClockSet, LocId)> {
        let mut out = Vec::new();
        for (p, row) in self.delta.iter().enumerate() {
            for (k, tf) in row.iter().enumerate() {
                for (y, q) in tf.targets() {
                    out.push((LocId(p), k, y, q));
                }
            }
        }
        out
    }

    /// Largest constant in any guard on each clock.
    pub fn max_constants(&self) -> Vec<u32> {
        let mut out = vec![0; self.clocks.len()];
        for row in &self.delta {
            for tf in row {
                for (x, i) in tf.guards() {
                    out[x] = out[x].max(i.max_constant());
                }
            }
        }
        out
    }

    pub fn side(&self, q: LocId) -> Option<Side> {
        self.partition.as_ref().map(|p| p[q.0])
    }

    pub fn format_transition(&self, tf: &TransitionFormula) -> String {
        let mut s = String::new();
        self.write_tf(&mut s, tf, 0);
        s
    }

    fn write_tf(&self, s: &mut String, tf: &TransitionFormula, min: u8) {
        let clocks = |y: &ClockSet| y.iter().map(|x| self.clocks[x].as_str()).collect::<Vec<_>>().join(",");
        match tf {
            TransitionFormula::Top => s.push_str("true"),
            TransitionFormula::Bottom => s.push_str("false"),
            TransitionFormula::Loc(q) => s.push_str(self.name(*q)),
            TransitionFormula::Bind(y, q) => {
                let _ = write!(s, "{{{}}}.{}", clocks(y), self.name(*q));
            }
            TransitionFormula::Guard(x, i) => {
                let _ = write!(s, "{} in {}", self.clocks[*x], i);
            }
            TransitionFormula::And(l, r) | TransitionFormula::Or(l, r) => {
                let (level, op) = if matches!(tf, TransitionFormula::Or(..)) { (1, " | ") } else { (2, " & ") };
                if level < min {
                    s.push('(');
                }
                self.write_tf(s, l, level);
                s.push_str(op);
                self.write_tf(s, r, level + 1);
                if level < min {
                    s.push(')');
                }
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("automata always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, AtaError> {
        serde_json::from_str(text).map_err(|e| AtaError::Json(e.to_string()))
    }

    /// Graphviz rendering. Each non-trivial transition gets a junction
    /// point; edges out of it carry resets and the guards of the letter.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ata {\n  rankdir=LR;\n");
        for q in self.locations() {
            let shape = if self.is_accepting(q) { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  {} [label=\"{}\", shape={shape}];", q, escape(self.name(q)));
        }
        let _ = writeln!(s, "  init [shape=point];\n  init -> {};", self.initial);
        for q in self.locations() {
            for (k, a) in self.alphabet.iter().enumerate() {
                let tf = &self.delta[q.0][k];
                if *tf == TransitionFormula::Bottom {
                    continue;
                }
                let junction = format!("j{}_{}", q.0, k);
                let _ = writeln!(s, "  {junction} [shape=point, tooltip=\"{}\"];", escape(&self.format_transition(tf)));
                let _ = writeln!(s, "  {q} -> {junction} [label=\"{}\", arrowhead=none];", escape(&a.to_string()));
                for (y, target) in tf.targets() {
                    let label = if y.is_empty() {
                        String::new()
                    } else {
                        y.iter().map(|x| self.clocks[x].clone()).collect::<Vec<_>>().join(",") + ":=0"
                    };
                    let _ = writeln!(s, "  {junction} -> {target} [label=\"{label}\"];");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
