//! Configuration reduction for unilateral automata.
//!
//! In a location whose guards are right-sided, a state with a smaller
//! valuation accepts whatever a larger one accepts, so the smaller one is
//! redundant next to it; left-sided locations are the mirror image. A
//! reduced configuration keeps only the states no other state dominates.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;
use tptl_ata::{
    minimal_models, successors, validate_unilateral, validate_vwata, Ata, Configuration, Letter, LocId, Side, State,
    UnilateralError, VwataReport,
};
use tptl_timing::{Rational, TimedWord};

/// Whether `other` is redundant next to `s`: same location, and on that
/// location's side `other`'s valuation is no harder to satisfy.
pub fn state_preceq(s: &State, other: &State, partition: &[Side]) -> bool {
    s.loc == other.loc
        && match partition[s.loc.0] {
            Side::Le => other.val.le(&s.val),
            Side::Ge => s.val.le(&other.val),
        }
}

/// Drops every state that another state of `c` dominates.
pub fn reduce_config(c: &Configuration, partition: &[Side]) -> Configuration {
    c.iter()
        .filter(|s2| !c.iter().any(|s| s != *s2 && state_preceq(s, s2, partition)))
        .cloned()
        .collect()
}

pub fn reduced_successors(ata: &Ata, c: &Configuration, t: Rational, a: &Letter, partition: &[Side]) -> Vec<Configuration> {
    let set: BTreeSet<Configuration> =
        successors(ata, c, t, a).iter().map(|d| reduce_config(d, partition)).collect();
    set.into_iter().collect()
}

/// Membership decided entirely inside the reduced transition system.
pub fn reduced_accepts(ata: &Ata, c0: &Configuration, w: &TimedWord<Letter>, partition: &[Side]) -> bool {
    let steps: Vec<(Rational, Letter)> = w.delays().map(|(a, t)| (t, a.clone())).collect();
    let mut failed = vec![HashSet::new(); steps.len()];
    search(ata, partition, &steps, 0, reduce_config(c0, partition), &mut failed)
}

fn search(
    ata: &Ata,
    partition: &[Side],
    steps: &[(Rational, Letter)],
    pos: usize,
    c: Configuration,
    failed: &mut [HashSet<Configuration>],
) -> bool {
    if pos == steps.len() {
        return c.is_accepting(ata);
    }
    if failed[pos].contains(&c) {
        return false;
    }
    let (t, a) = &steps[pos];
    let next = reduced_successors(ata, &c, *t, a, partition);
    // a subset accepts whenever a superset does
    let minimal: Vec<&Configuration> =
        next.iter().filter(|d| !next.iter().any(|e| e != *d && e.is_subset(d))).collect();
    for d in minimal {
        if search(ata, partition, steps, pos + 1, d.clone(), failed) {
            return true;
        }
    }
    failed[pos].insert(c);
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("automaton has no unilateral partition")]
    NotUnilateral(#[from] UnilateralError),
    #[error("automaton has several clocks and is not very weak ({} violations)", .0.violations.len())]
    NotVeryWeak(VwataReport),
}

/// The partition stored on the automaton, or a freshly computed one.
pub fn partition_of(ata: &Ata) -> Result<Vec<Side>, ReductionError> {
    match &ata.partition {
        Some(p) => Ok(p.clone()),
        None => Ok(validate_unilateral(ata)?),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundViolation {
    /// A reduced configuration holds two states of one location.
    Duplicate { step: usize, location: LocId, states: Vec<State> },
    /// Before reduction, the self-loop copy of a location had some clock
    /// smaller than the freshly entered copy.
    SelfLoopNotDominant { step: usize, location: LocId, from_self: State, from_parent: State },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub violations: Vec<BoundViolation>,
    pub max_cardinality: usize,
    pub configs_explored: usize,
    pub locations: usize,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.max_cardinality <= self.locations
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Explores every reduced run on `w` from the initial configuration and
/// records configurations that hold a location twice.
pub fn check_bounded_run(ata: &Ata, w: &TimedWord<Letter>) -> Result<BoundReport, ReductionError> {
    let vw = validate_vwata(ata);
    if !vw.passed() && ata.clock_count() > 1 {
        return Err(ReductionError::NotVeryWeak(vw));
    }
    let partition = partition_of(ata)?;
    let mut report = BoundReport {
        violations: Vec::new(),
        max_cardinality: 1,
        configs_explored: 1,
        locations: ata.location_count(),
    };
    let mut level: BTreeSet<Configuration> = BTreeSet::from([Configuration::initial(ata)]);
    for (step, (a, t)) in w.delays().enumerate() {
        let step = step + 1;
        let mut next = BTreeSet::new();
        for c in &level {
            for tagged in tagged_successors(ata, c, t, a) {
                check_self_loops(&tagged, step, &mut report.violations);
                let union: Configuration = tagged.iter().map(|(_, s)| s.clone()).collect();
                next.insert(reduce_config(&union, &partition));
            }
        }
        for d in &next {
            report.max_cardinality = report.max_cardinality.max(d.len());
            let mut by_loc: BTreeMap<LocId, Vec<State>> = BTreeMap::new();
            for s in d.iter() {
                by_loc.entry(s.loc).or_default().push(s.clone());
            }
            for (location, states) in by_loc {
                if states.len() > 1 {
                    report.violations.push(BoundViolation::Duplicate { step, location, states });
                }
            }
        }
        report.configs_explored += next.len();
        level = next;
    }
    Ok(report)
}

/// Successor unions with each new state tagged by the location it came from.
fn tagged_successors(ata: &Ata, c: &Configuration, t: Rational, a: &Letter) -> Vec<Vec<(LocId, State)>> {
    let mut acc: Vec<Vec<(LocId, State)>> = vec![Vec::new()];
    for s in c.iter() {
        let models = minimal_models(ata.transition(s.loc, a), &s.val.delayed(t));
        let mut out = Vec::with_capacity(acc.len() * models.len());
        for prefix in &acc {
            for m in &models {
                let mut v = prefix.clone();
                v.extend(m.iter().map(|child| (s.loc, child.clone())));
                out.push(v);
            }
        }
        acc = out;
    }
    acc
}

fn check_self_loops(tagged: &[(LocId, State)], step: usize, out: &mut Vec<BoundViolation>) {
    for (origin, s) in tagged {
        if *origin != s.loc {
            continue;
        }
        for (other_origin, other) in tagged {
            if other.loc == s.loc && *other_origin != s.loc && !other.val.le(&s.val) {
                out.push(BoundViolation::SelfLoopNotDominant {
                    step,
                    location: s.loc,
                    from_self: s.clone(),
                    from_parent: other.clone(),
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tptl_ata::Valuation;

    fn st(q: usize, xs: &[(i64, i64)]) -> State {
        State::new(LocId(q), Valuation(xs.iter().map(|(n, d)| Rational::new(*n, *d)).collect()))
    }

    #[test]
    fn preceq_examples() {
        let le = [Side::Le, Side::Ge];
        assert!(state_preceq(&st(0, &[(3, 2)]), &st(0, &[(3, 10)]), &le));
        assert!(!state_preceq(&st(0, &[(3, 10)]), &st(0, &[(3, 2)]), &le));
        assert!(state_preceq(&st(0, &[(1, 1)]), &st(0, &[(1, 1)]), &le));
        assert!(!state_preceq(&st(0, &[(1, 1)]), &st(1, &[(1, 1)]), &le));
        assert!(state_preceq(&st(1, &[(3, 10)]), &st(1, &[(3, 2)]), &le));
    }

    #[test]
    fn reduce_keeps_the_harder_state() {
        let le = [Side::Le];
        let c = Configuration::from_iter([st(0, &[(3, 2)]), st(0, &[(3, 10)])]);
        assert_eq!(reduce_config(&c, &le), Configuration::singleton(st(0, &[(3, 2)])));
        let distinct = Configuration::from_iter([st(0, &[(1, 1)]), st(1, &[(2, 1)])]);
        assert_eq!(reduce_config(&distinct, &[Side::Le, Side::Le]), distinct);
    }

    #[test]
    fn incomparable_states_both_stay() {
        let c = Configuration::from_iter([st(0, &[(1, 1), (2, 1)]), st(0, &[(2, 1), (1, 1)])]);
        assert_eq!(reduce_config(&c, &[Side::Le]).len(), 2);
    }
}
