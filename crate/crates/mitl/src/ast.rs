use std::fmt;

use tptl_timing::Interval;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MitlFormula {
    Atom(String),
    Top,
    Not(Box<MitlFormula>),
    And(Box<MitlFormula>, Box<MitlFormula>),
    Or(Box<MitlFormula>, Box<MitlFormula>),
    Until(Box<MitlFormula>, Box<MitlFormula>, Interval),
    Finally(Interval, Box<MitlFormula>),
    Globally(Interval, Box<MitlFormula>),
}

impl MitlFormula {
    pub fn atom(a: &str) -> Self {
        MitlFormula::Atom(a.to_string())
    }

    pub fn bottom() -> Self {
        MitlFormula::not(MitlFormula::Top)
    }

    pub fn not(f: MitlFormula) -> Self {
        MitlFormula::Not(Box::new(f))
    }

    pub fn and(l: MitlFormula, r: MitlFormula) -> Self {
        MitlFormula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: MitlFormula, r: MitlFormula) -> Self {
        MitlFormula::Or(Box::new(l), Box::new(r))
    }

    pub fn until(l: MitlFormula, r: MitlFormula, i: Interval) -> Self {
        MitlFormula::Until(Box::new(l), Box::new(r), i)
    }

    pub fn finally(i: Interval, f: MitlFormula) -> Self {
        MitlFormula::Finally(i, Box::new(f))
    }

    pub fn globally(i: Interval, f: MitlFormula) -> Self {
        MitlFormula::Globally(i, Box::new(f))
    }

    pub fn intervals(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        self.collect_intervals(&mut out);
        out
    }

    fn collect_intervals(&self, out: &mut Vec<Interval>) {
        match self {
            MitlFormula::Atom(_) | MitlFormula::Top => {}
            MitlFormula::Not(c) => c.collect_intervals(out),
            MitlFormula::And(l, r) | MitlFormula::Or(l, r) => {
                l.collect_intervals(out);
                r.collect_intervals(out);
            }
            MitlFormula::Until(l, r, i) => {
                out.push(*i);
                l.collect_intervals(out);
                r.collect_intervals(out);
            }
            MitlFormula::Finally(i, c) | MitlFormula::Globally(i, c) => {
                out.push(*i);
                c.collect_intervals(out);
            }
        }
    }
}

fn write_suffix(f: &mut fmt::Formatter<'_>, i: &Interval) -> fmt::Result {
    if i.is_universal() {
        Ok(())
    } else {
        write!(f, "{i}")
    }
}

fn level(node: &MitlFormula) -> u8 {
    match node {
        MitlFormula::Or(..) => 1,
        MitlFormula::And(..) => 2,
        MitlFormula::Until(..) => 3,
        _ => 4,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, node: &MitlFormula, min: u8) -> fmt::Result {
    if level(node) < min {
        write!(f, "({node})")
    } else {
        write!(f, "{node}")
    }
}

impl fmt::Display for MitlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MitlFormula::Atom(a) => write!(f, "{a}"),
            MitlFormula::Top => write!(f, "true"),
            MitlFormula::Not(c) => {
                write!(f, "!")?;
                write_at(f, c, 4)
            }
            MitlFormula::Or(l, r) => {
                write_at(f, l, 1)?;
                write!(f, " | ")?;
                write_at(f, r, 2)
            }
            MitlFormula::And(l, r) => {
                write_at(f, l, 2)?;
                write!(f, " & ")?;
                write_at(f, r, 3)
            }
            MitlFormula::Until(l, r, i) => {
                write_at(f, l, 4)?;
                write!(f, " U")?;
                write_suffix(f, i)?;
                write!(f, " ")?;
                write_at(f, r, 4)
            }
            MitlFormula::Finally(i, c) | MitlFormula::Globally(i, c) => {
                write!(f, "{}", if matches!(self, MitlFormula::Finally(..)) { "F" } else { "G" })?;
                write_suffix(f, i)?;
                write!(f, "(")?;
                write!(f, "{c}")?;
                write!(f, ")")
            }
        }
    }
}
