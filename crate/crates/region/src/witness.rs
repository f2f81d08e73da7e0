use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;
use tptl_ata::Letter;
use tptl_nta::{nta_accepts, ClockCopy, Nta};
use tptl_timing::{Rational, TimedWord};

use crate::{region_of, CopyValuation, RegionEdge, RegionGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("no delay realizes step {step} of the region path")]
    Infeasible { step: usize },
    #[error("the concrete word is rejected by the automaton")]
    NotAccepted,
}

/// Turns a path of the region graph into a timed word by choosing, step
/// by step, the smallest delay that reaches the required region. Delays
/// are searched on a grid of step `1/(copies + 1)`, refined by halving when
/// the region needs a finer point. The word is replayed on `n` before it
/// is returned.
pub fn extract_witness(n: &Nta, g: &RegionGraph, path: &[RegionEdge]) -> Result<TimedWord<Letter>, WitnessError> {
    let copies = n.locations.iter().flat_map(|l| l.live_copies()).collect::<std::collections::BTreeSet<_>>().len();
    let horizon = i64::from(g.cmax.iter().copied().max().unwrap_or(0)) + 2;
    let mut nu: CopyValuation = n.locations[n.initial].live_copies().map(|c| (c, Rational::zero())).collect();
    let mut now = Rational::zero();
    let mut entries = Vec::with_capacity(path.len());
    for (step, e) in path.iter().enumerate() {
        let source = &g.nodes[e.source];
        let wanted = &source.region.time_closure(&g.cmax)[e.waits];
        let d = smallest_delay(&nu, wanted, &g.cmax, copies as i64 + 1, horizon).ok_or(WitnessError::Infeasible { step })?;
        let edge = &n.edges[source.location][e.transition];
        for v in nu.values_mut() {
            *v += d;
        }
        if !edge.guards.iter().all(|(c, i)| i.contains(nu[c])) {
            return Err(WitnessError::Infeasible { step });
        }
        for c in &edge.resets {
            nu.insert(*c, Rational::zero());
        }
        let keep: Vec<ClockCopy> = n.locations[e.target_location(g)].live_copies().collect();
        nu.retain(|c, _| keep.contains(c));
        for c in keep {
            nu.entry(c).or_insert_with(Rational::zero);
        }
        now += d;
        entries.push((n.alphabet[edge.letter].clone(), now));
    }
    let w = TimedWord::new(entries).map_err(|_| WitnessError::Infeasible { step: 0 })?;
    if nta_accepts(n, &w) {
        Ok(w)
    } else {
        Err(WitnessError::NotAccepted)
    }
}

impl RegionEdge {
    fn target_location(&self, g: &RegionGraph) -> usize {
        g.nodes[self.target].location
    }
}

fn smallest_delay(nu: &CopyValuation, wanted: &crate::Region, cmax: &[u32], base: i64, horizon: i64) -> Option<Rational> {
    let common = nu.values().fold(1i64, |acc, v| acc.lcm(v.denom()));
    let mut den = common * base;
    for _ in 0..12 {
        for k in 0..=horizon * den {
            let d = Rational::new(k, den);
            let moved: CopyValuation = nu.iter().map(|(c, v)| (*c, v + d)).collect();
            if region_of(&moved, cmax) == *wanted {
                return Some(d);
            }
        }
        den *= 2;
    }
    None
}
