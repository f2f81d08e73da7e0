use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;
use tptl_timing::{Interval, IntervalClass};

use crate::{Ata, ClockSet, LocId, Side};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum VwataViolation {
    /// Locations on a cycle through distinct locations.
    Cycle(Vec<LocId>),
    ResettingSelfLoop { loc: LocId, letter: usize, resets: ClockSet },
    MultipleParents { loc: LocId, parents: Vec<LocId> },
    InconsistentReset { from: LocId, to: LocId, resets: Vec<ClockSet> },
}

impl fmt::Display for VwataViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VwataViolation::Cycle(locs) => {
                let names: Vec<String> = locs.iter().map(ToString::to_string).collect();
                write!(f, "cycle through {}", names.join(" -> "))
            }
            VwataViolation::ResettingSelfLoop { loc, letter, resets } => {
                write!(f, "self-loop on {loc} under letter #{letter} resets clocks {:?}", Vec::<usize>::from(*resets))
            }
            VwataViolation::MultipleParents { loc, parents } => {
                write!(f, "{loc} is entered from {} distinct locations", parents.len())
            }
            VwataViolation::InconsistentReset { from, to, .. } => {
                write!(f, "transitions {from} -> {to} reset different clock sets")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VwataReport {
    pub violations: Vec<VwataViolation>,
}

impl VwataReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the three very-weak conditions: no cycles apart from
/// self-loops, self-loops without resets, and a unique parent per location
/// whose edges all reset the same clocks.
pub fn validate_vwata(a: &Ata) -> VwataReport {
    let mut violations = Vec::new();
    let mut parents: BTreeMap<LocId, BTreeMap<LocId, BTreeSet<ClockSet>>> = BTreeMap::new();
    for (p, k, y, q) in a.edges() {
        if p == q {
            if !y.is_empty() {
                violations.push(VwataViolation::ResettingSelfLoop { loc: p, letter: k, resets: y });
            }
        } else {
            parents.entry(q).or_default().entry(p).or_default().insert(y);
        }
    }
    if let Some(cycle) = find_cycle(a, &parents) {
        violations.push(VwataViolation::Cycle(cycle));
    }
    for (q, from) in &parents {
        if from.len() > 1 {
            violations.push(VwataViolation::MultipleParents { loc: *q, parents: from.keys().copied().collect() });
        }
        for (p, resets) in from {
            if resets.len() > 1 {
                violations.push(VwataViolation::InconsistentReset {
                    from: *p,
                    to: *q,
                    resets: resets.iter().copied().collect(),
                });
            }
        }
    }
    VwataReport { violations }
}

fn find_cycle(a: &Ata, parents: &BTreeMap<LocId, BTreeMap<LocId, BTreeSet<ClockSet>>>) -> Option<Vec<LocId>> {
    let n = a.location_count();
    let mut children = vec![BTreeSet::new(); n];
    for (q, from) in parents {
        for p in from.keys() {
            children[p.0].insert(q.0);
        }
    }
    // 0 unvisited, 1 on stack, 2 done
    let mut mark = vec![0u8; n];
    let mut stack = Vec::new();
    fn dfs(v: usize, children: &[BTreeSet<usize>], mark: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<LocId>> {
        mark[v] = 1;
        stack.push(v);
        for &w in &children[v] {
            if mark[w] == 1 {
                let start = stack.iter().position(|&s| s == w).expect("on stack");
                return Some(stack[start..].iter().map(|&s| LocId(s)).collect());
            }
            if mark[w] == 0 {
                if let Some(c) = dfs(w, children, mark, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        mark[v] = 2;
        None
    }
    (0..n).find_map(|v| if mark[v] == 0 { dfs(v, &children, &mut mark, &mut stack) } else { None })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnilateralError {
    #[error("no valid partition: location {loc} has guard {clock} in {interval}, which fits neither side")]
    BadGuard { loc: LocId, clock: String, interval: Interval },
    #[error("no valid partition: locations {locations:?} are joined without strong resets but need sides {needs:?}")]
    NoValidPartition { locations: Vec<LocId>, needs: Vec<(LocId, Side)> },
}

fn allowed_sides(i: &Interval) -> BTreeSet<Side> {
    if i.is_universal() {
        return BTreeSet::from([Side::Le, Side::Ge]);
    }
    match i.class() {
        IntervalClass::LeftSided => BTreeSet::from([Side::Ge]),
        IntervalClass::RightSided => BTreeSet::from([Side::Le]),
        _ => BTreeSet::new(),
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, v: usize) -> usize {
        if self.0[v] != v {
            let r = self.find(self.0[v]);
            self.0[v] = r;
        }
        self.0[v]
    }

    fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Splits the locations into a `Le` and a `Ge` part such that exit guards
/// of `Le` locations are right-sided, those of `Ge` locations left-sided,
/// and every transition crossing the split resets all clocks.
///
/// Locations joined by a transition that does not reset all clocks must
/// share a side. A group with no guard preference copies the side of its
/// unique parent, or defaults to `Ge`.
pub fn validate_unilateral(a: &Ata) -> Result<Vec<Side>, UnilateralError> {
    let n = a.location_count();
    let all = a.all_clocks();
    let mut uf = UnionFind((0..n).collect());
    let edges = a.edges();
    for (p, _, y, q) in &edges {
        if p != q && *y != all {
            uf.join(p.0, q.0);
        }
    }

    let both = BTreeSet::from([Side::Le, Side::Ge]);
    let mut allowed: Vec<BTreeSet<Side>> = vec![both.clone(); n];
    let mut needs: Vec<Vec<(LocId, Side)>> = vec![Vec::new(); n];
    for p in a.locations() {
        for tf in &a.delta[p.0] {
            for (x, i) in tf.guards() {
                let sides = allowed_sides(&i);
                if sides.is_empty() {
                    return Err(UnilateralError::BadGuard { loc: p, clock: a.clocks[x].clone(), interval: i });
                }
                let root = uf.find(p.0);
                if sides.len() == 1 {
                    needs[root].push((p, *sides.iter().next().expect("one side")));
                }
                allowed[root] = allowed[root].intersection(&sides).copied().collect();
            }
        }
    }

    let mut side: Vec<Option<Side>> = vec![None; n];
    for v in 0..n {
        let root = uf.find(v);
        if allowed[root].is_empty() {
            let locations = (0..n).filter(|&w| uf.find(w) == root).map(LocId).collect();
            let mut needs = needs[root].clone();
            needs.sort();
            needs.dedup();
            return Err(UnilateralError::NoValidPartition { locations, needs });
        }
        if allowed[root].len() == 1 {
            side[v] = allowed[root].iter().next().copied();
        }
    }

    // Free groups: follow a unique, already decided parent group.
    loop {
        let mut changed = false;
        for v in 0..n {
            if side[v].is_some() {
                continue;
            }
            let root = uf.find(v);
            let outside: BTreeSet<usize> = edges
                .iter()
                .filter(|(p, _, _, q)| uf.find(q.0) == root && uf.find(p.0) != root)
                .map(|(p, ..)| p.0)
                .collect();
            if outside.len() == 1 {
                let parent = *outside.iter().next().expect("one parent");
                if let Some(s) = side[parent] {
                    for w in (0..n).filter(|&w| uf.find(w) == root) {
                        side[w] = Some(s);
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(side.into_iter().map(|s| s.unwrap_or(Side::Ge)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Letter, Location, TransitionFormula};

    fn automaton(n: usize, clocks: usize) -> Ata {
        let locs = (0..n).map(|i| Location { name: format!("l{i}"), accepting: false }).collect();
        let clocks = (0..clocks).map(|i| format!("c{i}")).collect();
        Ata::new(locs, clocks, vec![Letter::single("a"), Letter::single("b")])
    }

    #[test]
    fn resetting_self_loop_fails() {
        let mut a = automaton(1, 1);
        a.set_transition(LocId(0), &Letter::single("a"), TransitionFormula::Bind(ClockSet::single(0), LocId(0)))
            .unwrap();
        let report = validate_vwata(&a);
        assert!(matches!(report.violations[..], [VwataViolation::ResettingSelfLoop { .. }]));
    }

    #[test]
    fn two_parents_fail() {
        let mut a = automaton(3, 2);
        a.set_transition(LocId(0), &Letter::single("a"), TransitionFormula::Bind(ClockSet::single(0), LocId(2)))
            .unwrap();
        a.set_transition(LocId(1), &Letter::single("a"), TransitionFormula::Bind(ClockSet::single(1), LocId(2)))
            .unwrap();
        let report = validate_vwata(&a);
        assert!(report.violations.iter().any(|v| matches!(v, VwataViolation::MultipleParents { .. })));
    }

    #[test]
    fn cycles_are_found() {
        let mut a = automaton(2, 1);
        a.set_transition(LocId(0), &Letter::single("a"), TransitionFormula::Loc(LocId(1))).unwrap();
        a.set_transition(LocId(1), &Letter::single("a"), TransitionFormula::Loc(LocId(0))).unwrap();
        assert!(validate_vwata(&a).violations.iter().any(|v| matches!(v, VwataViolation::Cycle(_))));
    }

    #[test]
    fn mixed_guards_on_one_location_have_no_partition() {
        let mut a = automaton(1, 1);
        a.set_transition(LocId(0), &Letter::single("a"), TransitionFormula::Guard(0, Interval::at_most(2))).unwrap();
        a.set_transition(LocId(0), &Letter::single("b"), TransitionFormula::Guard(0, Interval::at_least(3))).unwrap();
        assert!(matches!(validate_unilateral(&a), Err(UnilateralError::NoValidPartition { .. })));
    }

    #[test]
    fn guard_free_defaults_to_ge() {
        let mut a = automaton(2, 1);
        a.set_transition(LocId(0), &Letter::single("a"), TransitionFormula::Loc(LocId(1))).unwrap();
        assert_eq!(validate_unilateral(&a).unwrap(), vec![Side::Ge, Side::Ge]);
    }

    #[test]
    fn strong_reset_separates_sides() {
        let mut a = automaton(2, 1);
        let tf = TransitionFormula::and(
            TransitionFormula::Guard(0, Interval::at_least(1)),
            TransitionFormula::Bind(ClockSet::single(0), LocId(1)),
        );
        a.set_transition(LocId(0), &Letter::single("a"), tf).unwrap();
        a.set_transition(LocId(1), &Letter::single("a"), TransitionFormula::Guard(0, Interval::below(1))).unwrap();
        assert_eq!(validate_unilateral(&a).unwrap(), vec![Side::Ge, Side::Le]);
    }
}
