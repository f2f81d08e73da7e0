use crate::Formula;

/// Negation of `f`, pushed back into negation normal form.
///
/// Finite-word duals: the negation of `X g` also holds at the last
/// position, and the negation of `g U h` either never meets `h` or meets
/// a position violating both before it does.
pub fn negate(f: &Formula) -> Formula {
    match f {
        Formula::Atom(a) => Formula::NegAtom(a.clone()),
        Formula::NegAtom(a) => Formula::Atom(a.clone()),
        Formula::Top => Formula::Bottom,
        Formula::Bottom => Formula::Top,
        Formula::Constraint(x, i) => {
            Formula::or_all(i.complement().into_iter().map(|c| Formula::Constraint(x.clone(), c)))
        }
        Formula::And(l, r) => Formula::or(negate(l), negate(r)),
        Formula::Or(l, r) => Formula::and(negate(l), negate(r)),
        Formula::Freeze(y, c) => Formula::Freeze(y.clone(), Box::new(negate(c))),
        Formula::Globally(c) => Formula::finally(negate(c)),
        Formula::Finally(c) => Formula::globally(negate(c)),
        Formula::Next(c) => Formula::or(Formula::next(negate(c)), Formula::globally(Formula::Bottom)),
        Formula::Until(l, r) => {
            let not_l = negate(l);
            let not_r = negate(r);
            Formula::or(
                Formula::globally(not_r.clone()),
                Formula::until(not_r.clone(), Formula::and(not_l, not_r)),
            )
        }
    }
}
