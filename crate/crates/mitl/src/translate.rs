//! MITL to one-clock TPTL.

use thiserror::Error;
use tptl_formula::{negate, Formula};
use tptl_timing::{Interval, IntervalClass};

use crate::MitlFormula;

const CLOCK: &str = "x";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("punctual interval {0} is outside MITL")]
    PunctualInterval(Interval),
}

fn frozen(f: Formula) -> Formula {
    Formula::freeze(CLOCK, f)
}

fn elapsed_in(i: Interval) -> Formula {
    Formula::constraint(CLOCK, i)
}

/// `x.F(phi & x in i)`
fn eventually_within(phi: &Formula, i: Interval) -> Formula {
    frozen(Formula::finally(Formula::and(phi.clone(), elapsed_in(i))))
}

/// `x.G(phi | x outside i)`, or `G(phi)` when `i` covers everything.
fn always_within(phi: &Formula, i: Interval) -> Formula {
    let outside: Vec<Formula> = i.complement().into_iter().map(elapsed_in).collect();
    if outside.is_empty() {
        return Formula::globally(phi.clone());
    }
    let body = Formula::or_all(std::iter::once(phi.clone()).chain(outside));
    frozen(Formula::globally(body))
}

/// The freeze-and-constrain embedding, one clock, any interval.
pub fn mtl_to_tptl(f: &MitlFormula) -> Formula {
    match f {
        MitlFormula::Atom(a) => Formula::Atom(a.clone()),
        MitlFormula::Top => Formula::Top,
        MitlFormula::Not(c) => negate(&mtl_to_tptl(c)),
        MitlFormula::And(l, r) => Formula::and(mtl_to_tptl(l), mtl_to_tptl(r)),
        MitlFormula::Or(l, r) => Formula::or(mtl_to_tptl(l), mtl_to_tptl(r)),
        MitlFormula::Until(_, _, i) | MitlFormula::Finally(i, _) if i.is_empty() => Formula::Bottom,
        MitlFormula::Globally(i, _) if i.is_empty() => Formula::Top,
        MitlFormula::Until(l, r, i) => {
            frozen(Formula::until(mtl_to_tptl(l), Formula::and(mtl_to_tptl(r), elapsed_in(*i))))
        }
        MitlFormula::Finally(i, c) => frozen(Formula::until(Formula::Top, Formula::and(mtl_to_tptl(c), elapsed_in(*i)))),
        MitlFormula::Globally(i, c) => always_within(&mtl_to_tptl(c), *i),
    }
}

/// Translation into the unilateral fragment. Bounded intervals with a
/// positive lower bound are rewritten into unit-width pieces that only use
/// one-sided constraints.
pub fn mitl_to_tptl0inf(f: &MitlFormula) -> Result<Formula, TranslateError> {
    if let Some(i) = f.intervals().into_iter().find(|i| i.class() == IntervalClass::Punctual) {
        return Err(TranslateError::PunctualInterval(i));
    }
    Ok(unilateral(f))
}

fn is_direct(i: &Interval) -> bool {
    i.lower() == 0 || i.upper().is_none()
}

fn unilateral(f: &MitlFormula) -> Formula {
    match f {
        MitlFormula::Atom(a) => Formula::Atom(a.clone()),
        MitlFormula::Top => Formula::Top,
        MitlFormula::Not(c) => negate(&unilateral(c)),
        MitlFormula::And(l, r) => Formula::and(unilateral(l), unilateral(r)),
        MitlFormula::Or(l, r) => Formula::or(unilateral(l), unilateral(r)),
        MitlFormula::Until(_, _, i) | MitlFormula::Finally(i, _) if i.is_empty() => Formula::Bottom,
        MitlFormula::Globally(i, _) if i.is_empty() => Formula::Top,
        MitlFormula::Until(l, r, i) => {
            let (l, r) = (unilateral(l), unilateral(r));
            if is_direct(i) {
                return frozen(Formula::until(l, Formula::and(r, elapsed_in(*i))));
            }
            let from = Interval::new(i.lower(), None, i.lower_closed(), false).expect("unbounded");
            let reach = frozen(Formula::until(l, Formula::and(r.clone(), elapsed_in(from))));
            Formula::and(reach, eventually_bounded(&r, i))
        }
        MitlFormula::Finally(i, c) => {
            let c = unilateral(c);
            if is_direct(i) {
                eventually_within(&c, *i)
            } else {
                eventually_bounded(&c, i)
            }
        }
        MitlFormula::Globally(i, c) => {
            let c = unilateral(c);
            if is_direct(i) {
                always_within(&c, *i)
            } else {
                negate(&eventually_bounded(&negate(&c), i))
            }
        }
    }
}

/// `F_i phi` for `i = <l,u>` with `1 <= l < u < inf`, as a disjunction of
/// unit pieces `<l,l+1)`, `[l+1,l+2)`, ..., `[u-1,u>`.
fn eventually_bounded(phi: &Formula, i: &Interval) -> Formula {
    let upper = i.upper().expect("bounded interval");
    let pieces = (i.lower()..upper).map(|n| {
        let lower_closed = if n == i.lower() { i.lower_closed() } else { true };
        let upper_closed = if n + 1 == upper { i.upper_closed() } else { false };
        unit_piece(phi, n, lower_closed, upper_closed)
    });
    Formula::or_all(pieces)
}

/// `F_<l,l+1> phi` with `l >= 1`, using only one-sided constraints.
///
/// Splits on how the last `phi` strictly before the window sits relative
/// to it: none at all; one whose next `phi` is under a unit away; or an
/// isolated one, located by counting isolated occurrences before the
/// window.
fn unit_piece(phi: &Formula, l: u32, lower_closed: bool, upper_closed: bool) -> Formula {
    let before = if lower_closed { Interval::below(l) } else { Interval::at_most(l) };
    let from = Interval::new(l, None, lower_closed, false).expect("unbounded");
    let within = Interval::new(0, Some(l + 1), true, upper_closed).expect("l+1 > 0");
    let not_phi = negate(phi);

    // phi with no further phi less than one unit later
    let isolated = Formula::and(
        phi.clone(),
        frozen(Formula::globally(Formula::or(not_phi.clone(), elapsed_in(Interval::at_least(1))))),
    );
    let not_isolated = negate(&isolated);
    let chain = |n: u32, innermost: Formula| {
        (0..n).fold(innermost, |inner, _| {
            Formula::until(not_isolated.clone(), Formula::and(isolated.clone(), inner))
        })
    };
    let at_least = |n: u32| frozen(chain(n, elapsed_in(before)));
    let next_phi_in_time =
        |n: u32| frozen(chain(n, Formula::until(not_phi.clone(), Formula::and(phi.clone(), elapsed_in(within)))));

    let reaches = eventually_within(phi, from);
    let none_before = Formula::and(negate(&eventually_within(phi, before)), eventually_within(phi, within));
    let clustered = Formula::and(eventually_within(phi, before), negate(&at_least(1)));
    let most = if lower_closed { l } else { l + 1 };
    let counted = Formula::or_all((1..=most).map(|n| {
        Formula::and_all([at_least(n), negate(&at_least(n + 1)), next_phi_in_time(n)])
    }));
    Formula::and(reaches, Formula::or_all([none_before, clustered, counted]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_mitl;
    use tptl_formula::{classify, parse_tptl};

    fn m(s: &str) -> MitlFormula {
        parse_mitl(s).unwrap()
    }

    #[test]
    fn embedding_instances() {
        assert_eq!(mtl_to_tptl(&m("a U[1,2] b")), parse_tptl("x.(a U (b & x in [1,2]))").unwrap());
        assert_eq!(mtl_to_tptl(&m("F[0,1) b")), parse_tptl("x.(true U (b & x<1))").unwrap());
        assert_eq!(mtl_to_tptl(&m("a")), Formula::atom("a"));
    }

    #[test]
    fn unilateral_intervals_translate_directly() {
        assert_eq!(mitl_to_tptl0inf(&m("F[0,2) b")).unwrap(), parse_tptl("x.F(b & x<2)").unwrap());
    }

    #[test]
    fn unit_window_shape() {
        let out = mitl_to_tptl0inf(&m("F[1,2) b")).unwrap();
        let Formula::And(reaches, cases) = &out else { panic!("expected conjunction, got {out}") };
        assert_eq!(**reaches, parse_tptl("x.F(b & x>=1)").unwrap());
        let Formula::Or(first_two, _) = &**cases else { panic!("expected three cases") };
        let Formula::Or(none_before, _) = &**first_two else { panic!("expected three cases") };
        assert_eq!(**none_before, Formula::and(negate(&parse_tptl("x.F(b & x<1)").unwrap()), parse_tptl("x.F(b & x<2)").unwrap()));
        assert!(classify(&out).is_fragment);
    }

    #[test]
    fn punctual_is_rejected() {
        assert_eq!(
            mitl_to_tptl0inf(&m("F[1,1] b")),
            Err(TranslateError::PunctualInterval(Interval::point(1)))
        );
    }
}
