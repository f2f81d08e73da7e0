use serde::Serialize;
use thiserror::Error;
use tptl_compile::{compile_formula, concretize_word, CompileError};
use tptl_formula::{classify, formula_size, language_member, EvalError, Formula};
use tptl_nta::{nta_stats, subsetize, NtaError};
use tptl_region::{build_region_graph_with, default_state_cap, region_bound, Emptiness, RegionError};
use tptl_timing::TimedWord;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("formula is outside the unilateral fragment; offending subformulas: {}", .0.join("; "))]
    NotInFragment(Vec<String>),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Nta(#[from] NtaError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("witness {0} does not satisfy the formula")]
    WitnessRejected(String),
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Run the automaton pipeline even when the classifier rejects the formula.
    pub force: bool,
    pub state_cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { force: false, state_cap: default_state_cap() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Sat,
    Unsat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckStats {
    pub formula_size: usize,
    pub ata_locations: usize,
    pub clocks: usize,
    pub nta_locations: usize,
    pub nta_edges: usize,
    pub clock_copies: usize,
    pub max_live_copies: usize,
    pub nta_location_bound: String,
    pub region_nodes: usize,
    pub region_edges: usize,
    pub region_bound: String,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    /// Present exactly when satisfiable; already replayed on the formula.
    pub witness: Option<TimedWord>,
    pub stats: CheckStats,
    pub region_dot: String,
}

impl CheckOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        let witness = self.witness.as_ref().map(|w| {
            let entries: serde_json::Value = serde_json::from_str(&w.to_json()).expect("word JSON");
            entries
        });
        serde_json::json!({ "verdict": self.verdict, "witness": witness, "stats": self.stats })
    }
}

/// Classify, compile, subsetize, search the region graph and replay the
/// witness on the formula.
pub fn check_formula(f: &Formula, options: CheckOptions) -> Result<CheckOutcome, PipelineError> {
    let report = classify(f);
    if !report.is_fragment && !options.force {
        let offenders = report.offending_subformulas(f).iter().map(ToString::to_string).collect();
        return Err(PipelineError::NotInFragment(offenders));
    }
    let out = compile_formula(f)?;
    let n = subsetize(&out.ata)?;
    let nta = nta_stats(&n);
    let graph = build_region_graph_with(&n, options.state_cap)?;
    let stats = CheckStats {
        formula_size: formula_size(f),
        ata_locations: out.ata.location_count(),
        clocks: out.ata.clock_count(),
        nta_locations: nta.locations,
        nta_edges: nta.edges,
        clock_copies: nta.clock_copies,
        max_live_copies: nta.max_live_copies,
        nta_location_bound: nta.location_bound.to_string(),
        region_nodes: graph.node_count(),
        region_edges: graph.edge_count(),
        region_bound: region_bound(&n).to_string(),
    };
    let region_dot = graph.to_dot(&n);
    let emptiness = match graph.accepting_path(&n) {
        Some(path) => {
            let witness = tptl_region::extract_witness(&n, &graph, &path).map_err(RegionError::from)?;
            Emptiness::Sat { witness, path, nodes: graph.node_count() }
        }
        None => Emptiness::Empty { nodes: graph.node_count() },
    };
    let witness = match emptiness.witness() {
        Some(w) => {
            let w = concretize_word(&out.ata, w);
            if !language_member(&w, f)? {
                return Err(PipelineError::WitnessRejected(w.to_string()));
            }
            Some(w)
        }
        None => None,
    };
    let verdict = if witness.is_some() { Verdict::Sat } else { Verdict::Unsat };
    Ok(CheckOutcome { verdict, witness, stats, region_dot })
}
