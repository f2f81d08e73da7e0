//! Pushing freezes down to temporal operators and strict closure.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("formula is open: clocks {} are not bound by any freeze", .0.iter().cloned().collect::<Vec<_>>().join(", "))]
    OpenFormula(BTreeSet<String>),
}

/// Conjunction that only collapses on `false`; `true` conjuncts are kept.
fn and_keep(l: Formula, r: Formula) -> Formula {
    if l == Formula::Bottom || r == Formula::Bottom {
        Formula::Bottom
    } else {
        Formula::and(l, r)
    }
}

fn or_simplify(l: Formula, r: Formula) -> Formula {
    match (l, r) {
        (Formula::Top, _) | (_, Formula::Top) => Formula::Top,
        (Formula::Bottom, x) | (x, Formula::Bottom) => x,
        (l, r) => Formula::or(l, r),
    }
}

/// Applies `Y.` to an already pushed formula.
fn freeze_over(clocks: &BTreeSet<String>, f: Formula) -> Formula {
    match f {
        Formula::And(l, r) => and_keep(freeze_over(clocks, *l), freeze_over(clocks, *r)),
        Formula::Or(l, r) => or_simplify(freeze_over(clocks, *l), freeze_over(clocks, *r)),
        Formula::Constraint(x, i) if clocks.contains(&x) => {
            if i.contains(tptl_timing::Rational::from_integer(0)) {
                Formula::Top
            } else {
                Formula::Bottom
            }
        }
        Formula::Freeze(inner, body) => {
            let merged: BTreeSet<String> = clocks.union(&inner).cloned().collect();
            bind_free(&merged, *body)
        }
        f if f.is_temporal() => bind_free(clocks, f),
        other => other,
    }
}

fn bind_free(clocks: &BTreeSet<String>, body: Formula) -> Formula {
    let used: BTreeSet<String> = clocks.intersection(&body.free_clocks()).cloned().collect();
    if used.is_empty() {
        body
    } else {
        Formula::Freeze(used, Box::new(body))
    }
}

/// Distributes every freeze over `&` and `|` until it sits directly on a
/// temporal operator, dropping clocks the scope never constrains.
pub fn push_freezes(f: &Formula) -> Formula {
    match f {
        Formula::Freeze(y, body) => freeze_over(y, push_freezes(body)),
        Formula::And(l, r) => and_keep(push_freezes(l), push_freezes(r)),
        Formula::Or(l, r) => or_simplify(push_freezes(l), push_freezes(r)),
        _ => f.map_children(push_freezes),
    }
}

fn strip_freezes(f: &Formula) -> &Formula {
    match f {
        Formula::Freeze(_, body) => strip_freezes(body),
        other => other,
    }
}

/// Rebinds every closed temporal subformula, or closed freeze chain over
/// one, so that it freezes the full clock set of `f`.
pub fn strictly_close(f: &Formula) -> Formula {
    let all = f.clocks();
    close_with(&all, f)
}

fn close_with(all: &BTreeSet<String>, f: &Formula) -> Formula {
    let core = strip_freezes(f);
    if !all.is_empty() && core.is_temporal() && f.is_closed() {
        let body = core.map_children(|c| close_with(all, c));
        return Formula::Freeze(all.clone(), Box::new(body));
    }
    f.map_children(|c| close_with(all, c))
}

/// Pushed and strictly closed form of a closed formula.
pub fn normalize(f: &Formula) -> Result<Formula, NormalizeError> {
    let free = f.free_clocks();
    if !free.is_empty() {
        return Err(NormalizeError::OpenFormula(free));
    }
    Ok(strictly_close(&push_freezes(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_tptl;

    fn p(s: &str) -> Formula {
        parse_tptl(s).unwrap()
    }

    #[test]
    fn pushes_into_until_and_drops_dead_binders() {
        let f = p("x.((a U y.(b & y in (2,3) | x in (1,2))) & a & x in [0,1))");
        assert_eq!(normalize(&f).unwrap(), p("x.(a U x in (1,2)) & a & true"));
    }

    #[test]
    fn closed_freeze_rebinds_every_clock() {
        let f = p("x.y.(a & x.F(a & x in (0,1)))");
        let closed = strictly_close(&f);
        assert_eq!(closed.merge_freeze_chains(), p("x.y.(a & {x,y}.F(a & x in (0,1)))").merge_freeze_chains());
    }

    #[test]
    fn freeze_free_formula_is_untouched() {
        assert_eq!(normalize(&p("a U b")).unwrap(), p("a U b"));
    }

    #[test]
    fn open_formula_is_rejected() {
        assert_eq!(
            normalize(&p("F(a & x<1)")).unwrap_err(),
            NormalizeError::OpenFormula(BTreeSet::from(["x".to_string()]))
        );
    }

    #[test]
    fn running_example_closes_outer_modalities() {
        let f = p("G(!a | x.(F(a & x<=2 & y.X(b & x<=3 & y<=2))))");
        let n = normalize(&f).unwrap();
        assert_eq!(n, p("{x,y}.G(!a | {x,y}.F(a & x<=2 & y.X(b & x<=3 & y<=2)))"));
    }
}
