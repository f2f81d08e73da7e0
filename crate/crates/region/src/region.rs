use std::collections::BTreeMap;

use tptl_nta::ClockCopy;
use tptl_timing::{Interval, Rational};

pub type CopyValuation = BTreeMap<ClockCopy, Rational>;

/// Equivalence class of valuations over a fixed set of clock copies.
///
/// `ints[k]` is the integer part of copy `k`, or `cmax + 1` once the value
/// exceeds the largest constant of its clock. `ranks[k]` orders fractional
/// parts among the other copies: `Some(0)` is a zero fraction, larger ranks
/// are larger fractions, and `None` marks a copy above its maximum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    pub copies: Vec<ClockCopy>,
    pub ints: Vec<u32>,
    pub ranks: Vec<Option<u32>>,
}

/// The region containing `nu`; `cmax` holds one constant per base clock.
pub fn region_of(nu: &CopyValuation, cmax: &[u32]) -> Region {
    let copies: Vec<ClockCopy> = nu.keys().copied().collect();
    let mut ints = Vec::with_capacity(copies.len());
    let mut fracs = Vec::with_capacity(copies.len());
    for (c, v) in nu {
        let limit = cmax[c.clock];
        if *v > Rational::from_integer(i64::from(limit)) {
            ints.push(limit + 1);
            fracs.push(None);
        } else {
            let whole = v.floor();
            ints.push(u32::try_from(whole.to_integer()).expect("clock values are non-negative"));
            fracs.push(Some(v - whole));
        }
    }
    let mut distinct: Vec<Rational> = fracs.iter().flatten().copied().collect();
    distinct.push(Rational::from_integer(0));
    distinct.sort();
    distinct.dedup();
    let ranks = fracs.iter().map(|f| f.map(|f| distinct.binary_search(&f).expect("present") as u32)).collect();
    Region { copies, ints, ranks }
}

impl Region {
    pub fn zero(mut copies: Vec<ClockCopy>) -> Self {
        copies.sort();
        let n = copies.len();
        Region { copies, ints: vec![0; n], ranks: vec![Some(0); n] }
    }

    pub fn position(&self, c: ClockCopy) -> Option<usize> {
        self.copies.binary_search(&c).ok()
    }

    pub fn frac_zero(&self, k: usize) -> bool {
        self.ranks[k] == Some(0)
    }

    pub fn above_max(&self, k: usize) -> bool {
        self.ranks[k].is_none()
    }

    /// A value inside the region for copy `k`. Guards only mention
    /// integers up to the maximum, so all points of an open unit interval,
    /// and all values above the maximum, satisfy the same guards.
    pub fn sample(&self, k: usize) -> Rational {
        let base = Rational::from_integer(i64::from(self.ints[k]));
        match self.ranks[k] {
            Some(0) => base,
            Some(_) => base + Rational::new(1, 2),
            None => base - Rational::new(1, 2),
        }
    }

    pub fn satisfies(&self, c: ClockCopy, i: &Interval) -> bool {
        let k = self.position(c).expect("guard on a live copy");
        i.contains(self.sample(k))
    }

    /// Caps copies above their maximum and renumbers ranks densely.
    fn normalize(mut self, cmax: &[u32]) -> Self {
        for k in 0..self.copies.len() {
            let limit = cmax[self.copies[k].clock];
            let past = self.ints[k] > limit || self.ints[k] == limit && self.ranks[k].is_some_and(|r| r > 0);
            if past {
                self.ints[k] = limit + 1;
                self.ranks[k] = None;
            }
        }
        let mut used: Vec<u32> = self.ranks.iter().flatten().copied().filter(|&r| r != 0).collect();
        used.sort_unstable();
        used.dedup();
        for r in self.ranks.iter_mut().flatten() {
            if *r != 0 {
                *r = used.binary_search(r).expect("present") as u32 + 1;
            }
        }
        self
    }

    /// The next region reached by letting time pass, or `None` when every
    /// copy is already above its maximum.
    pub fn time_successor(&self, cmax: &[u32]) -> Option<Region> {
        let live: Vec<usize> = (0..self.copies.len()).filter(|&k| !self.above_max(k)).collect();
        if live.is_empty() {
            return None;
        }
        let mut next = self.clone();
        if live.iter().any(|&k| self.frac_zero(k)) {
            for &k in &live {
                next.ranks[k] = self.ranks[k].map(|r| r + 1);
            }
        } else {
            let top = live.iter().filter_map(|&k| self.ranks[k]).max().expect("nonempty");
            for &k in &live {
                if self.ranks[k] == Some(top) {
                    next.ints[k] += 1;
                    next.ranks[k] = Some(0);
                }
            }
        }
        Some(next.normalize(cmax))
    }

    /// All regions reachable by waiting, starting with `self`.
    pub fn time_closure(&self, cmax: &[u32]) -> Vec<Region> {
        let mut out = vec![self.clone()];
        while let Some(n) = out.last().expect("nonempty").time_successor(cmax) {
            out.push(n);
        }
        out
    }

    /// Zeroes `resets` and keeps exactly the copies in `keep`.
    pub fn reset_and_restrict(&self, resets: &[ClockCopy], keep: &[ClockCopy], cmax: &[u32]) -> Region {
        let mut copies = keep.to_vec();
        copies.sort();
        let mut ints = Vec::with_capacity(copies.len());
        let mut ranks = Vec::with_capacity(copies.len());
        for c in &copies {
            match self.position(*c).filter(|_| !resets.contains(c)) {
                Some(k) => {
                    ints.push(self.ints[k]);
                    ranks.push(self.ranks[k]);
                }
                None => {
                    ints.push(0);
                    ranks.push(Some(0));
                }
            }
        }
        Region { copies, ints, ranks }.normalize(cmax)
    }

    pub fn is_well_formed(&self, cmax: &[u32]) -> bool {
        let n = self.copies.len();
        if self.ints.len() != n || self.ranks.len() != n || !self.copies.windows(2).all(|w| w[0] < w[1]) {
            return false;
        }
        let mut used: Vec<u32> = self.ranks.iter().flatten().copied().filter(|&r| r != 0).collect();
        used.sort_unstable();
        used.dedup();
        let dense = used.iter().enumerate().all(|(i, &r)| r == i as u32 + 1);
        let caps = (0..n).all(|k| self.above_max(k) == (self.ints[k] > cmax[self.copies[k].clock]));
        dense && caps
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = (0..self.copies.len())
            .map(|k| {
                let c = self.copies[k];
                match self.ranks[k] {
                    None => format!("{c}>{}", self.ints[k] - 1),
                    Some(0) => format!("{c}={}", self.ints[k]),
                    Some(r) => format!("{c}~{}+f{r}", self.ints[k]),
                }
            })
            .collect();
        parts.join(" ")
    }
}
