use crate::Formula;

/// Boolean connectives plus modalities plus freeze quantifiers plus the
/// bit-width charge for constraints.
///
/// Each clock named by a freeze counts once. Negated atoms are not
/// connectives here.
pub fn formula_size(f: &Formula) -> usize {
    let mut boolean = 0;
    let mut modal = 0;
    let mut constraints = 0;
    let mut c_max = 0u32;
    f.walk(&mut |node| match node {
        Formula::And(..) | Formula::Or(..) => boolean += 1,
        Formula::Until(..) | Formula::Globally(_) | Formula::Next(_) | Formula::Finally(_) => modal += 1,
        Formula::Freeze(y, _) => modal += y.len(),
        Formula::Constraint(_, i) => {
            constraints += 1;
            c_max = c_max.max(i.max_constant());
        }
        _ => {}
    });
    let bits = if c_max == 0 { 1 } else { c_max.ilog2() as usize + 1 };
    boolean + modal + constraints * 2 * bits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_tptl;

    fn size(s: &str) -> usize {
        formula_size(&parse_tptl(s).unwrap())
    }

    #[test]
    fn worked_value() {
        assert_eq!(size("x.(a & b U (c | x in (1,2)))"), 8);
    }

    #[test]
    fn trivial_sizes() {
        assert_eq!(size("a"), 0);
        assert_eq!(size("a U b"), 1);
        assert_eq!(size("!a"), 0);
    }

    #[test]
    fn zero_constant_needs_one_bit() {
        assert_eq!(size("x.F(x<=0)"), 2 + 2);
        assert_eq!(size("x.F(x<=4)"), 2 + 2 * 3);
    }
}
