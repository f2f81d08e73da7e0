use std::collections::BTreeSet;

use tptl_timing::Rational;

use crate::{Ata, Configuration, Letter, State, TransitionFormula, Valuation};

/// `C ⊨_ν tf`, with `Y.q` satisfied by the state `(q, ν[Y←0])`.
pub fn satisfies(c: &Configuration, tf: &TransitionFormula, nu: &Valuation) -> bool {
    match tf {
        TransitionFormula::Top => true,
        TransitionFormula::Bottom => false,
        TransitionFormula::Loc(q) => c.0.contains(&State::new(*q, nu.clone())),
        TransitionFormula::Bind(y, q) => c.0.contains(&State::new(*q, nu.reset(y))),
        TransitionFormula::Guard(x, i) => i.contains(nu.get(*x)),
        TransitionFormula::And(l, r) => satisfies(c, l, nu) && satisfies(c, r, nu),
        TransitionFormula::Or(l, r) => satisfies(c, l, nu) || satisfies(c, r, nu),
    }
}

/// Drops duplicates and every set that strictly contains another.
fn antichain(mut sets: Vec<Configuration>) -> Vec<Configuration> {
    sets.sort_by_key(|c| c.len());
    sets.dedup();
    let mut kept: Vec<Configuration> = Vec::with_capacity(sets.len());
    for c in sets {
        if !kept.iter().any(|k| k.is_subset(&c)) {
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

/// All ⊆-minimal configurations satisfying `tf` under `nu`, in sorted order.
pub fn minimal_models(tf: &TransitionFormula, nu: &Valuation) -> Vec<Configuration> {
    match tf {
        TransitionFormula::Top => vec![Configuration::empty()],
        TransitionFormula::Bottom => vec![],
        TransitionFormula::Loc(q) => vec![Configuration::singleton(State::new(*q, nu.clone()))],
        TransitionFormula::Bind(y, q) => vec![Configuration::singleton(State::new(*q, nu.reset(y)))],
        TransitionFormula::Guard(x, i) => {
            if i.contains(nu.get(*x)) {
                vec![Configuration::empty()]
            } else {
                vec![]
            }
        }
        TransitionFormula::Or(l, r) => {
            let mut all = minimal_models(l, nu);
            all.extend(minimal_models(r, nu));
            antichain(all)
        }
        TransitionFormula::And(l, r) => {
            let ls = minimal_models(l, nu);
            if ls.is_empty() {
                return ls;
            }
            let rs = minimal_models(r, nu);
            let pairs = ls.iter().flat_map(|a| rs.iter().map(move |b| a.union(b))).collect();
            antichain(pairs)
        }
    }
}

/// Every configuration reachable from `c` by waiting `t` and reading `a`:
/// one minimal model per state, evaluated at its delayed valuation, united.
pub fn successors(ata: &Ata, c: &Configuration, t: Rational, a: &Letter) -> Vec<Configuration> {
    let mut acc: BTreeSet<Configuration> = BTreeSet::from([Configuration::empty()]);
    for s in c.iter() {
        let models = minimal_models(ata.transition(s.loc, a), &s.val.delayed(t));
        if models.is_empty() {
            return vec![];
        }
        acc = acc.iter().flat_map(|u| models.iter().map(move |m| u.union(m))).collect();
    }
    acc.into_iter().collect()
}

/// The successors that contain no other successor. Acceptance from a
/// configuration implies acceptance from each of its subsets, so these
/// suffice for deciding membership.
pub fn minimal_successors(ata: &Ata, c: &Configuration, t: Rational, a: &Letter) -> Vec<Configuration> {
    antichain(successors(ata, c, t, a))
}
