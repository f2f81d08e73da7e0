use std::collections::BTreeSet;

use tptl_timing::Interval;

/// TPTL formula in negation normal form.
///
/// `Next` and `Finally` are kept as their own nodes rather than being
/// desugared into `Until`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    NegAtom(String),
    Top,
    Bottom,
    /// `Y.φ`: records the current timestamp in every clock of `Y`.
    Freeze(BTreeSet<String>, Box<Formula>),
    /// `x ∈ I`, i.e. the time elapsed since `x` was frozen lies in `I`.
    Constraint(String, Interval),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Globally(Box<Formula>),
    Next(Box<Formula>),
    Finally(Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.to_string())
    }

    pub fn neg_atom(name: &str) -> Self {
        Formula::NegAtom(name.to_string())
    }

    pub fn constraint(clock: &str, interval: Interval) -> Self {
        Formula::Constraint(clock.to_string(), interval)
    }

    pub fn freeze(clock: &str, body: Formula) -> Self {
        Formula::Freeze(BTreeSet::from([clock.to_string()]), Box::new(body))
    }

    pub fn freeze_all<I, S>(clocks: I, body: Formula) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Formula::Freeze(clocks.into_iter().map(Into::into).collect(), Box::new(body))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn until(l: Formula, r: Formula) -> Self {
        Formula::Until(Box::new(l), Box::new(r))
    }

    pub fn globally(f: Formula) -> Self {
        Formula::Globally(Box::new(f))
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }

    pub fn finally(f: Formula) -> Self {
        Formula::Finally(Box::new(f))
    }

    /// Left-nested conjunction; `Top` when empty.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `Bottom` when empty.
    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts.into_iter().reduce(Formula::or).unwrap_or(Formula::Bottom)
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_)
            | Formula::NegAtom(_)
            | Formula::Top
            | Formula::Bottom
            | Formula::Constraint(..) => vec![],
            Formula::Freeze(_, c) | Formula::Globally(c) | Formula::Next(c) | Formula::Finally(c) => vec![c],
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Until(l, r) => vec![l, r],
        }
    }

    /// Rebuilds the node with `f` applied to each direct child.
    pub fn map_children(&self, mut f: impl FnMut(&Formula) -> Formula) -> Formula {
        match self {
            Formula::Atom(_)
            | Formula::NegAtom(_)
            | Formula::Top
            | Formula::Bottom
            | Formula::Constraint(..) => self.clone(),
            Formula::Freeze(y, c) => Formula::Freeze(y.clone(), Box::new(f(c))),
            Formula::Globally(c) => Formula::globally(f(c)),
            Formula::Next(c) => Formula::next(f(c)),
            Formula::Finally(c) => Formula::finally(f(c)),
            Formula::And(l, r) => Formula::and(f(l), f(r)),
            Formula::Or(l, r) => Formula::or(f(l), f(r)),
            Formula::Until(l, r) => Formula::until(f(l), f(r)),
        }
    }

    /// True when the topmost operator is a temporal modality.
    pub fn is_temporal(&self) -> bool {
        matches!(self, Formula::Until(..) | Formula::Globally(_) | Formula::Next(_) | Formula::Finally(_))
    }

    /// Constrained clocks not bound by an enclosing freeze inside `self`.
    pub fn free_clocks(&self) -> BTreeSet<String> {
        match self {
            Formula::Constraint(x, _) => BTreeSet::from([x.clone()]),
            Formula::Freeze(y, c) => c.free_clocks().difference(y).cloned().collect(),
            _ => self.children().into_iter().flat_map(|c| c.free_clocks()).collect(),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_clocks().is_empty()
    }

    /// Every clock mentioned by a freeze or a constraint.
    pub fn clocks(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            Formula::Constraint(x, _) => {
                out.insert(x.clone());
            }
            Formula::Freeze(y, _) => out.extend(y.iter().cloned()),
            _ => {}
        });
        out
    }

    /// Letters mentioned positively or negatively.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Formula::Atom(a) | Formula::NegAtom(a) = f {
                out.insert(a.clone());
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        for c in self.children() {
            c.walk(visit);
        }
    }

    /// The subformula reached by following child indices from the root.
    pub fn at_path(&self, path: &[usize]) -> Option<&Formula> {
        path.iter().try_fold(self, |f, &i| f.children().get(i).copied())
    }

    /// Collapses directly nested freezes `x.y.φ` into `{x,y}.φ`.
    pub fn merge_freeze_chains(&self) -> Formula {
        match self {
            Formula::Freeze(y, c) => match c.merge_freeze_chains() {
                Formula::Freeze(z, inner) => Formula::Freeze(y.union(&z).cloned().collect(), inner),
                other => Formula::Freeze(y.clone(), Box::new(other)),
            },
            _ => self.map_children(Formula::merge_freeze_chains),
        }
    }

    pub fn node_count(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }
}
