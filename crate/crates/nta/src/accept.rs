use std::collections::BTreeSet;

use tptl_ata::Letter;
use tptl_timing::{Rational, TimedWord};

use crate::Nta;

/// Explores every run on `w` at once; clock copies that are not live are
/// held at zero so equal states compare equal.
pub fn nta_accepts(n: &Nta, w: &TimedWord<Letter>) -> bool {
    let width = n.locations.iter().flat_map(|l| l.act.iter().flatten()).max().map_or(1, |m| m + 1);
    let zero = Rational::from_integer(0);
    let blank = vec![vec![zero; width]; n.clocks.len()];
    let mut states: BTreeSet<(usize, Vec<Vec<Rational>>)> = BTreeSet::from([(n.initial, blank.clone())]);
    for (a, t) in w.delays() {
        let Some(k) = n.letter_index(a) else {
            return false;
        };
        let mut next = BTreeSet::new();
        for (l, vals) in &states {
            let delayed: Vec<Vec<Rational>> = vals.iter().map(|row| row.iter().map(|v| v + t).collect()).collect();
            for e in n.edges[*l].iter().filter(|e| e.letter == k) {
                if !e.guards.iter().all(|(c, i)| i.contains(delayed[c.clock][c.index])) {
                    continue;
                }
                let mut v = delayed.clone();
                for c in &e.resets {
                    v[c.clock][c.index] = zero;
                }
                let target = &n.locations[e.target];
                for (x, row) in v.iter_mut().enumerate() {
                    for (i, cell) in row.iter_mut().enumerate() {
                        if !target.act[x].contains(&i) {
                            *cell = zero;
                        }
                    }
                }
                next.insert((e.target, v));
            }
        }
        if next.is_empty() {
            return false;
        }
        states = next;
    }
    states.iter().any(|(l, _)| n.accepting[*l])
}
