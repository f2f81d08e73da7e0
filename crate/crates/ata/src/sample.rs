//! A small hand-built automaton used by tests and demos.

use tptl_timing::Interval;

use crate::{Ata, ClockSet, Letter, LocId, Location, Side, TransitionFormula as Tf};

/// Two-clock automaton for `G(!a | x.F(a & x<=2 & y.X(b & x<=3 & y<=2)))`
/// over the letters `{a}` and `{b}`. Clock `x` is index 0, `y` is 1.
///
/// `q0` waits for `a` and starts `q1` with `x` reset; `q1` waits for an `a`
/// within 2 units, then `q2` needs a `b` next.
pub fn running_example() -> Ata {
    let locations = vec![
        Location { name: "q0".into(), accepting: true },
        Location { name: "q1".into(), accepting: false },
        Location { name: "q2".into(), accepting: false },
    ];
    let (a, b) = (Letter::single("a"), Letter::single("b"));
    let mut ata = Ata::new(locations, vec!["x".into(), "y".into()], vec![a.clone(), b.clone()]);
    let (q0, q1, q2) = (LocId(0), LocId(1), LocId(2));
    let set = |ata: &mut Ata, q, l: &Letter, tf| ata.set_transition(q, l, tf).expect("well-formed");
    set(&mut ata, q0, &a, Tf::and(Tf::Loc(q0), Tf::Bind(ClockSet::single(0), q1)));
    set(&mut ata, q0, &b, Tf::Loc(q0));
    let spawn = Tf::and(Tf::Bind(ClockSet::single(1), q2), Tf::Guard(0, Interval::at_most(2)));
    set(&mut ata, q1, &a, Tf::or(spawn, Tf::Loc(q1)));
    set(&mut ata, q1, &b, Tf::Loc(q1));
    set(&mut ata, q2, &b, Tf::and(Tf::Guard(0, Interval::at_most(3)), Tf::Guard(1, Interval::at_most(2))));
    ata.partition = Some(vec![Side::Le; 3]);
    ata
}
