use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use tptl_timing::{format_rational, Rational, TimedWord};

use crate::automaton::escape;
use crate::{minimal_models, minimal_successors, Ata, Configuration, Letter, State};

/// A run laid out by depth. Level `n` holds the configuration after `n`
/// letters; every edge from level `n` to `n+1` carries `labels[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDag {
    pub levels: Vec<Vec<State>>,
    pub labels: Vec<(Rational, Letter)>,
    /// `(level, index in level, index in next level)`
    pub edges: Vec<(usize, usize, usize)>,
}

impl RunDag {
    pub fn empty() -> Self {
        RunDag { levels: Vec::new(), labels: Vec::new(), edges: Vec::new() }
    }

    /// Rebuilds parent links for a sequence of configurations: each state
    /// points at one of its minimal models inside the next configuration.
    pub fn from_configurations(ata: &Ata, configs: &[Configuration], word: &TimedWord<Letter>) -> Self {
        let levels: Vec<Vec<State>> = configs.iter().map(|c| c.iter().cloned().collect()).collect();
        let labels: Vec<(Rational, Letter)> = word.delays().map(|(a, t)| (t, a.clone())).collect();
        let mut edges = Vec::new();
        for (n, (t, a)) in labels.iter().enumerate().take(levels.len().saturating_sub(1)) {
            let next = &configs[n + 1];
            for (i, s) in levels[n].iter().enumerate() {
                let models = minimal_models(ata.transition(s.loc, a), &s.val.delayed(*t));
                if let Some(m) = models.iter().find(|m| m.is_subset(next)) {
                    for child in m.iter() {
                        let j = levels[n + 1].iter().position(|c| c == child).expect("child is in the next level");
                        edges.push((n, i, j));
                    }
                }
            }
        }
        RunDag { levels, labels, edges }
    }

    pub fn to_dot(&self, ata: &Ata) -> String {
        let mut s = String::from("digraph run {\n");
        for (n, level) in self.levels.iter().enumerate() {
            let _ = write!(s, "  {{ rank=same;");
            for i in 0..level.len() {
                let _ = write!(s, " n{n}_{i};");
            }
            s.push_str(" }\n");
            for (i, st) in level.iter().enumerate() {
                let label = format!("({}, {})", ata.name(st.loc), st.val);
                let _ = writeln!(s, "  n{n}_{i} [label=\"{}\"];", escape(&label));
            }
        }
        for (n, i, j) in &self.edges {
            let (t, a) = &self.labels[*n];
            let _ = writeln!(s, "  n{n}_{i} -> n{}_{j} [label=\"({},{})\"];", n + 1, format_rational(t), escape(&a.to_string()));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone)]
pub struct Acceptance {
    pub accepted: bool,
    pub run: Option<RunDag>,
}

/// Searches successor choices depth first for a run that reads all of `w`
/// from `c0` and ends in an accepting configuration.
pub fn ata_accepts(ata: &Ata, c0: &Configuration, w: &TimedWord<Letter>) -> Acceptance {
    let steps: Vec<(Rational, Letter)> = w.delays().map(|(a, t)| (t, a.clone())).collect();
    let mut search = Search { ata, steps: &steps, failed: HashMap::new() };
    let mut path = vec![c0.clone()];
    if search.run(0, &mut path) {
        let run = RunDag::from_configurations(ata, &path, w);
        Acceptance { accepted: true, run: Some(run) }
    } else {
        Acceptance { accepted: false, run: None }
    }
}

struct Search<'a> {
    ata: &'a Ata,
    steps: &'a [(Rational, Letter)],
    /// Configurations known to fail at each position. Any superset of a
    /// failing configuration fails too.
    failed: HashMap<usize, HashSet<Configuration>>,
}

impl Search<'_> {
    fn known_failure(&self, pos: usize, c: &Configuration) -> bool {
        self.failed.get(&pos).is_some_and(|set| set.contains(c) || set.iter().any(|f| f.is_subset(c)))
    }

    fn run(&mut self, pos: usize, path: &mut Vec<Configuration>) -> bool {
        let c = path.last().expect("path starts with c0").clone();
        if pos == self.steps.len() {
            return c.is_accepting(self.ata);
        }
        if self.known_failure(pos, &c) {
            return false;
        }
        let (t, a) = &self.steps[pos];
        for next in minimal_successors(self.ata, &c, *t, a) {
            path.push(next);
            if self.run(pos + 1, path) {
                return true;
            }
            path.pop();
        }
        self.failed.entry(pos).or_default().insert(c);
        false
    }
}
