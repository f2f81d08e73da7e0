use std::fmt;

use tptl_timing::Interval;

use crate::Formula;

/// `x<=k`, `x<k`, `x>=k`, `x>k` where one of those spellings is exact,
/// otherwise `x in <interval>`.
pub fn constraint_text(clock: &str, i: &Interval) -> String {
    match (i.lower(), i.lower_closed(), i.upper(), i.upper_closed()) {
        (0, true, Some(u), true) => format!("{clock}<={u}"),
        (0, true, Some(u), false) => format!("{clock}<{u}"),
        (l, true, None, _) => format!("{clock}>={l}"),
        (l, false, None, _) => format!("{clock}>{l}"),
        _ => format!("{clock} in {i}"),
    }
}

fn write_clocks(f: &mut fmt::Formatter<'_>, clocks: &std::collections::BTreeSet<String>) -> fmt::Result {
    if clocks.len() == 1 {
        write!(f, "{}", clocks.iter().next().expect("one clock"))
    } else {
        write!(f, "{{")?;
        for (k, c) in clocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

// Binding levels: or 1, and 2, until 3, everything else 4.
fn level(node: &Formula) -> u8 {
    match node {
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        Formula::Until(..) => 3,
        _ => 4,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, node: &Formula, min: u8) -> fmt::Result {
    if level(node) < min {
        write!(f, "(")?;
        write_node(f, node)?;
        write!(f, ")")
    } else {
        write_node(f, node)
    }
}

fn write_node(f: &mut fmt::Formatter<'_>, node: &Formula) -> fmt::Result {
    match node {
        Formula::Atom(a) => write!(f, "{a}"),
        Formula::NegAtom(a) => write!(f, "!{a}"),
        Formula::Top => write!(f, "true"),
        Formula::Bottom => write!(f, "false"),
        Formula::Constraint(x, i) => write!(f, "{}", constraint_text(x, i)),
        Formula::Freeze(y, c) => {
            write_clocks(f, y)?;
            write!(f, ".(")?;
            write_node(f, c)?;
            write!(f, ")")
        }
        Formula::Or(l, r) => {
            write_at(f, l, 1)?;
            write!(f, " | ")?;
            write_at(f, r, 2)
        }
        Formula::And(l, r) => {
            write_at(f, l, 2)?;
            write!(f, " & ")?;
            write_at(f, r, 3)
        }
        Formula::Until(l, r) => {
            write_at(f, l, 4)?;
            write!(f, " U ")?;
            write_at(f, r, 4)
        }
        Formula::Globally(c) | Formula::Next(c) | Formula::Finally(c) => {
            let op = match node {
                Formula::Globally(_) => "G",
                Formula::Next(_) => "X",
                _ => "F",
            };
            write!(f, "{op}(")?;
            write_node(f, c)?;
            write!(f, ")")
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(f, self)
    }
}
