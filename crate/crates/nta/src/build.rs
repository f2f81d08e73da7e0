use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use thiserror::Error;
use tptl_ata::{
    validate_unilateral, validate_vwata, Ata, ClockSet, LocId, Side, TransitionFormula, UnilateralError, VwataReport,
};
use tptl_timing::Interval;

use crate::{ClockCopy, Nta, NtaEdge, NtaLocation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NtaError {
    #[error("automaton with several clocks is not very weak ({} violations)", .0.violations.len())]
    NotVeryWeak(VwataReport),
    #[error(transparent)]
    NotUnilateral(#[from] UnilateralError),
    #[error("location {location} on letter #{letter} needs {clauses} clause combinations, over the cap of {cap}")]
    DnfBlowupLimit { location: usize, letter: usize, clauses: u128, cap: u128 },
    #[error("more than {0} locations were discovered")]
    LocationCapExceeded(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct SubsetizeOptions {
    pub clause_cap: u128,
    pub location_cap: usize,
}

impl Default for SubsetizeOptions {
    fn default() -> Self {
        SubsetizeOptions { clause_cap: 100_000, location_cap: 200_000 }
    }
}

pub fn subsetize(ata: &Ata) -> Result<Nta, NtaError> {
    subsetize_with(ata, SubsetizeOptions::default())
}

/// One conjunctive clause of a transition: targets with their resets and guards.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Clause {
    targets: BTreeSet<(LocId, ClockSet)>,
    guards: BTreeSet<(usize, Interval)>,
}

fn clauses(tf: &TransitionFormula) -> Vec<Clause> {
    let mut out: BTreeSet<Clause> = BTreeSet::new();
    for lits in tf.dnf() {
        let mut c = Clause { targets: BTreeSet::new(), guards: BTreeSet::new() };
        for lit in lits {
            match lit {
                TransitionFormula::Loc(q) => {
                    c.targets.insert((q, ClockSet::empty()));
                }
                TransitionFormula::Bind(y, q) => {
                    c.targets.insert((q, y));
                }
                TransitionFormula::Guard(x, i) => {
                    c.guards.insert((x, i));
                }
                _ => unreachable!("dnf literals are atoms"),
            }
        }
        out.insert(c);
    }
    out.into_iter().collect()
}

/// Breadth-first construction of the reachable part.
pub fn subsetize_with(ata: &Ata, options: SubsetizeOptions) -> Result<Nta, NtaError> {
    let report = validate_vwata(ata);
    if !report.passed() && ata.clock_count() > 1 {
        return Err(NtaError::NotVeryWeak(report));
    }
    let partition = match &ata.partition {
        Some(p) => p.clone(),
        None => validate_unilateral(ata)?,
    };
    let n_clocks = ata.clock_count();
    let table: Vec<Vec<Vec<Clause>>> =
        ata.delta.iter().map(|row| row.iter().map(clauses).collect()).collect();

    let initial = NtaLocation { entries: vec![(ata.initial, vec![0; n_clocks])], act: vec![vec![0]; n_clocks] };
    let mut index: HashMap<NtaLocation, usize> = HashMap::from([(initial.clone(), 0)]);
    let mut locations = vec![initial];
    let mut edges: Vec<Vec<NtaEdge>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let mut out = BTreeSet::new();
        for letter in 0..ata.alphabet.len() {
            for (guards, resets, target) in expand(&locations[k], letter, &table, &partition, k, options)? {
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = locations.len();
                        if id >= options.location_cap {
                            return Err(NtaError::LocationCapExceeded(options.location_cap));
                        }
                        index.insert(target.clone(), id);
                        locations.push(target);
                        queue.push_back(id);
                        id
                    }
                };
                out.insert(NtaEdge { letter, guards, resets, target: id });
            }
        }
        if edges.len() <= k {
            edges.resize(k + 1, Vec::new());
        }
        edges[k] = out.into_iter().collect();
    }
    edges.resize(locations.len(), Vec::new());
    let accepting = locations.iter().map(|l| l.entries.iter().all(|(q, _)| ata.is_accepting(*q))).collect();
    Ok(Nta {
        clocks: ata.clocks.clone(),
        names: ata.locations.iter().map(|l| l.name.clone()).collect(),
        alphabet: ata.alphabet.clone(),
        locations,
        accepting,
        edges,
        initial: 0,
    })
}

type Step = (Vec<(ClockCopy, Interval)>, Vec<ClockCopy>, NtaLocation);

fn expand(
    loc: &NtaLocation,
    letter: usize,
    table: &[Vec<Vec<Clause>>],
    partition: &[Side],
    k: usize,
    options: SubsetizeOptions,
) -> Result<Vec<Step>, NtaError> {
    let lists: Vec<&[Clause]> = loc.entries.iter().map(|(q, _)| table[q.0][letter].as_slice()).collect();
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(Vec::new());
    }
    let total = lists.iter().fold(1u128, |acc, l| acc.saturating_mul(l.len() as u128));
    if total > options.clause_cap {
        return Err(NtaError::DnfBlowupLimit { location: k, letter, clauses: total, cap: options.clause_cap });
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; lists.len()];
    loop {
        if let Some(step) = combine(loc, &lists, &choice, partition) {
            out.push(step);
        }
        // odometer, last position fastest
        let mut i = choice.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < lists[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Where a target's clock values come from.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    source: usize,
    resets: ClockSet,
}

fn combine(loc: &NtaLocation, lists: &[&[Clause]], choice: &[usize], partition: &[Side]) -> Option<Step> {
    let n_clocks = loc.act.len();
    // guards on the copies the sources read, intersected per copy
    let mut guards: BTreeMap<ClockCopy, Interval> = BTreeMap::new();
    let mut cands: BTreeMap<LocId, Vec<Candidate>> = BTreeMap::new();
    for (i, (list, &c)) in lists.iter().zip(choice).enumerate() {
        let clause = &list[c];
        let copies = &loc.entries[i].1;
        for &(x, interval) in &clause.guards {
            let copy = ClockCopy { clock: x, index: copies[x] };
            let merged = match guards.get(&copy) {
                Some(prev) => prev.intersect(&interval)?,
                None => interval,
            };
            guards.insert(copy, merged);
        }
        for &(q, resets) in &clause.targets {
            cands.entry(q).or_default().push(Candidate { source: i, resets });
        }
    }
    guards.retain(|_, i| !i.is_universal());

    let rank = |cand: &Candidate| -> Vec<usize> {
        (0..n_clocks)
            .map(|x| {
                if cand.resets.contains(x) {
                    usize::MAX
                } else {
                    let copy = loc.entries[cand.source].1[x];
                    loc.act[x].iter().position(|&c| c == copy).expect("live copy")
                }
            })
            .collect()
    };
    // per target, the candidate to keep
    let chosen: Vec<(LocId, Candidate)> = cands
        .into_iter()
        .map(|(q, list)| {
            let ranked: Vec<(Vec<usize>, Candidate)> = list.iter().map(|c| (rank(c), *c)).collect();
            (q, pick(&ranked, partition[q.0]))
        })
        .collect();

    let mut fresh = vec![None; n_clocks];
    let mut act = vec![Vec::new(); n_clocks];
    let mut resets = Vec::new();
    for x in 0..n_clocks {
        let kept: BTreeSet<usize> = chosen
            .iter()
            .filter(|(_, c)| !c.resets.contains(x))
            .map(|(_, c)| loc.entries[c.source].1[x])
            .collect();
        act[x] = loc.act[x].iter().copied().filter(|c| kept.contains(c)).collect();
        if chosen.iter().any(|(_, c)| c.resets.contains(x)) {
            let index = (0..).find(|i| !kept.contains(i)).expect("free index");
            fresh[x] = Some(index);
            act[x].push(index);
            resets.push(ClockCopy { clock: x, index });
        }
    }
    let entries = chosen
        .iter()
        .map(|(q, c)| {
            let copies = (0..n_clocks)
                .map(|x| if c.resets.contains(x) { fresh[x].expect("fresh copy") } else { loc.entries[c.source].1[x] })
                .collect();
            (*q, copies)
        })
        .collect();
    Some((guards.into_iter().collect(), resets, NtaLocation { entries, act }))
}

/// Right-sided locations keep the candidate with the oldest copies (the
/// largest values), left-sided ones the newest. Ties and incomparable
/// candidates fall back to lexicographic order on the ranks.
fn pick(ranked: &[(Vec<usize>, Candidate)], side: Side) -> Candidate {
    let older_or_equal = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(x, y)| x <= y);
    let best = ranked.iter().find(|(r, _)| {
        ranked.iter().all(|(s, _)| match side {
            Side::Le => older_or_equal(r, s),
            Side::Ge => older_or_equal(s, r),
        })
    });
    match best {
        Some((_, c)) => *c,
        None => {
            let fallback = match side {
                Side::Le => ranked.iter().min_by(|a, b| a.0.cmp(&b.0)),
                Side::Ge => ranked.iter().max_by(|a, b| a.0.cmp(&b.0)),
            };
            fallback.expect("at least one candidate").1
        }
    }
}
