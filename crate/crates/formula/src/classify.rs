//! Membership in the unilateral fragment.

use tptl_timing::{Interval, IntervalClass};

use crate::Formula;

/// Which side the open constraints of a subformula stay on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FragmentTag {
    /// Every open constraint is right-sided.
    Le,
    /// Every open constraint is left-sided.
    Ge,
    /// No open constraints at all.
    Both,
    Neither,
}

impl FragmentTag {
    fn of(open: &[(String, Interval)]) -> Self {
        if open.is_empty() {
            return FragmentTag::Both;
        }
        let all = |c: IntervalClass| open.iter().all(|(_, i)| i.class() == c);
        if all(IntervalClass::RightSided) {
            FragmentTag::Le
        } else if all(IntervalClass::LeftSided) {
            FragmentTag::Ge
        } else {
            FragmentTag::Neither
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentReport {
    /// Pre-order list of child-index paths and their tags.
    pub tags: Vec<(Vec<usize>, FragmentTag)>,
    pub is_fragment: bool,
    /// Innermost `Neither` subformulas, as child-index paths.
    pub offenders: Vec<Vec<usize>>,
}

impl FragmentReport {
    pub fn tag_at(&self, path: &[usize]) -> Option<FragmentTag> {
        self.tags.iter().find(|(p, _)| p == path).map(|(_, t)| *t)
    }

    pub fn offending_subformulas<'a>(&self, f: &'a Formula) -> Vec<&'a Formula> {
        self.offenders.iter().filter_map(|p| f.at_path(p)).collect()
    }
}

struct Walk {
    tags: Vec<(Vec<usize>, FragmentTag)>,
    offenders: Vec<Vec<usize>>,
}

impl Walk {
    /// Returns the open constraints of `f` and whether any descendant is `Neither`.
    fn visit(&mut self, f: &Formula, path: &mut Vec<usize>) -> (Vec<(String, Interval)>, bool) {
        let slot = self.tags.len();
        self.tags.push((path.clone(), FragmentTag::Both));
        let mut open = Vec::new();
        let mut below_neither = false;
        if let Formula::Constraint(x, i) = f {
            open.push((x.clone(), *i));
        }
        for (k, c) in f.children().into_iter().enumerate() {
            path.push(k);
            let (child_open, child_neither) = self.visit(c, path);
            path.pop();
            below_neither |= child_neither;
            open.extend(child_open);
        }
        if let Formula::Freeze(y, _) = f {
            open.retain(|(x, _)| !y.contains(x));
        }
        let tag = FragmentTag::of(&open);
        self.tags[slot].1 = tag;
        let neither = tag == FragmentTag::Neither;
        if neither && !below_neither {
            self.offenders.push(path.clone());
        }
        (open, neither || below_neither)
    }
}

pub fn classify(f: &Formula) -> FragmentReport {
    let mut walk = Walk { tags: Vec::new(), offenders: Vec::new() };
    walk.visit(f, &mut Vec::new());
    let is_fragment = walk.offenders.is_empty();
    FragmentReport { tags: walk.tags, is_fragment, offenders: walk.offenders }
}
