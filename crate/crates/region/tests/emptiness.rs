use proptest::prelude::*;
use tptl_ata::{sample::running_example, Letter, LocId};
use tptl_compile::{alphabet_projection, compile_formula, concretize_word};
use tptl_corpus::{fragment_formulas, random_word, rng, FormulaConfig, WordConfig};
use tptl_formula::{language_member, parse_tptl};
use tptl_nta::{nta_accepts, subsetize, ClockCopy, Nta, NtaEdge, NtaLocation};
use tptl_region::{
    build_region_graph, check_emptiness, extract_witness, region_bound, region_of, CopyValuation, Emptiness,
};
use tptl_timing::{Interval, Rational};

fn x0() -> ClockCopy {
    ClockCopy { clock: 0, index: 0 }
}

/// One location, one clock copy, a self-loop on `a` with the given guards.
fn single_loop(guards: Vec<(ClockCopy, Interval)>, accepting: bool) -> Nta {
    Nta {
        clocks: vec!["x".into()],
        names: vec!["q".into()],
        alphabet: vec![Letter::single("a")],
        locations: vec![NtaLocation { entries: vec![(LocId(0), vec![0])], act: vec![vec![0]] }],
        accepting: vec![accepting],
        edges: vec![vec![NtaEdge { letter: 0, guards, resets: vec![], target: 0 }]],
        initial: 0,
    }
}

fn pipeline(text: &str) -> (tptl_formula::Formula, tptl_compile::CompileOutput, Nta) {
    let f = parse_tptl(text).unwrap();
    let out = compile_formula(&f).unwrap();
    let n = subsetize(&out.ata).unwrap();
    (f, out, n)
}

#[test]
fn guard_free_loop_has_only_self_loops() {
    let n = single_loop(vec![], true);
    let g = build_region_graph(&n).unwrap();
    // with no constants the copy is either zero or positive
    assert_eq!(g.node_count(), 2);
    assert!(g.nodes[1].region.above_max(0));
    assert_eq!(g.edges[1].iter().map(|e| e.target).collect::<Vec<_>>(), vec![1]);
    assert!(g.edges[0].iter().any(|e| e.target == 0 && e.waits == 0));
}

#[test]
fn time_successors_collapse_into_the_maximum() {
    let n = single_loop(vec![(x0(), Interval::at_least(2))], true);
    let g = build_region_graph(&n).unwrap();
    // the copy is never reset, so it only moves forward: =2, (2,inf)
    assert_eq!(g.node_count(), 3);
    assert!(g.nodes.iter().all(|node| node.region.is_well_formed(&g.cmax)));
}

#[test]
fn jointly_unsatisfiable_guards_give_no_edge() {
    // two clocks that are never reset always agree, so x<=1 and y>=2 never hold together
    let y0 = ClockCopy { clock: 1, index: 0 };
    let n = Nta {
        clocks: vec!["x".into(), "y".into()],
        names: vec!["q".into()],
        alphabet: vec![Letter::single("a")],
        locations: vec![NtaLocation { entries: vec![(LocId(0), vec![0, 0])], act: vec![vec![0], vec![0]] }],
        accepting: vec![true],
        edges: vec![vec![NtaEdge {
            letter: 0,
            guards: vec![(x0(), Interval::at_most(1)), (y0, Interval::at_least(2))],
            resets: vec![],
            target: 0,
        }]],
        initial: 0,
    };
    let g = build_region_graph(&n).unwrap();
    assert_eq!(g.edge_count(), 0);
    assert!(!check_emptiness(&n).unwrap().is_sat());
}

#[test]
fn witness_waits_exactly_two() {
    let n = single_loop(vec![(x0(), Interval::at_least(2))], true);
    let g = build_region_graph(&n).unwrap();
    let path = g.accepting_path(&n).unwrap();
    let w = extract_witness(&n, &g, &path).unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w.time(1), Rational::from_integer(2));
    let strict = single_loop(vec![(x0(), Interval::above(2))], true);
    let w = check_emptiness(&strict).unwrap().witness().unwrap().clone();
    assert!(w.time(1) > Rational::from_integer(2) && w.time(1) < Rational::from_integer(3));
}

#[test]
fn guard_free_witness_has_zero_delays() {
    let n = single_loop(vec![], true);
    let w = check_emptiness(&n).unwrap().witness().unwrap().clone();
    assert_eq!(w.time(1), Rational::from_integer(0));
}

#[test]
fn running_example_graph_is_finite_and_bounded() {
    let n = subsetize(&running_example()).unwrap();
    let g = build_region_graph(&n).unwrap();
    assert!(g.node_count() > n.location_count());
    assert!(num_bigint::BigUint::from(g.node_count()) <= region_bound(&n));
    for node in &g.nodes {
        assert!(node.region.is_well_formed(&g.cmax));
        let mut live: Vec<ClockCopy> = n.locations[node.location].live_copies().collect();
        live.sort();
        assert_eq!(node.region.copies, live);
    }
    let result = check_emptiness(&n).unwrap();
    assert!(nta_accepts(&n, result.witness().unwrap()));
}

#[test]
fn small_formulas() {
    let (f, out, n) = pipeline("a");
    let w = check_emptiness(&n).unwrap().witness().unwrap().clone();
    assert_eq!(w.len(), 1);
    assert!(language_member(&concretize_word(&out.ata, &w), &f).unwrap());

    let (_, _, n) = pipeline("a & !a");
    assert!(!check_emptiness(&n).unwrap().is_sat());

    let (_, _, n) = pipeline("x.F(a & x<=1) & G !a");
    assert!(!check_emptiness(&n).unwrap().is_sat());

    let (f, out, n) = pipeline("x.F(a & x>=2)");
    let w = concretize_word(&out.ata, check_emptiness(&n).unwrap().witness().unwrap());
    assert!(language_member(&w, &f).unwrap());
    let late_a = (1..=w.len()).any(|i| w.symbol(i) == "a" && w.time(i) >= Rational::from_integer(2));
    assert!(late_a, "{}", w.to_text());
}

#[test]
fn corpus_witnesses_and_random_words_agree_with_the_verdict() {
    let formulas = fragment_formulas(41, 80, &FormulaConfig::default());
    let mut r = rng(42);
    let wc = WordConfig::default();
    let (mut sat, mut unsat) = (0, 0);
    for f in &formulas {
        let out = compile_formula(f).unwrap();
        let n = subsetize(&out.ata).unwrap();
        let g = build_region_graph(&n).unwrap();
        assert!(num_bigint::BigUint::from(g.node_count()) <= region_bound(&n), "{f}");
        match check_emptiness(&n).unwrap() {
            Emptiness::Sat { witness, .. } => {
                sat += 1;
                assert!(language_member(&concretize_word(&out.ata, &witness), f).unwrap(), "{f}");
            }
            Emptiness::Empty { .. } => {
                unsat += 1;
                for _ in 0..40 {
                    let w = random_word(&mut r, &wc);
                    assert!(!language_member(&w, f).unwrap(), "{f} accepts {}", w.to_text());
                    assert!(!nta_accepts(&n, &alphabet_projection(&out.ata, &w)));
                }
            }
        }
    }
    assert!(sat > 0 && unsat > 0, "{sat} sat, {unsat} unsat");
}

fn arb_valuation() -> impl Strategy<Value = CopyValuation> {
    prop::collection::vec((0i64..20, 1i64..5), 1..4).prop_map(|vals| {
        vals.into_iter()
            .enumerate()
            .map(|(i, (n, d))| (ClockCopy { clock: i % 2, index: i / 2 }, Rational::new(n, d)))
            .collect()
    })
}

fn arb_interval() -> impl Strategy<Value = Interval> {
    (0u32..4, any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(c, left, closed, bounded)| {
        if left {
            if closed { Interval::at_least(c) } else { Interval::above(c) }
        } else if closed || !bounded {
            Interval::at_most(c)
        } else {
            Interval::below(c.max(1))
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn same_region_same_guards(a in arb_valuation(), shift in prop::collection::vec((0i64..20, 1i64..5), 3), guards in prop::collection::vec(arb_interval(), 4)) {
        let cmax = [3, 3];
        let b: CopyValuation = a.keys().zip(&shift).map(|(c, (n, d))| (*c, Rational::new(*n, *d))).collect();
        if region_of(&a, &cmax) == region_of(&b, &cmax) {
            for c in a.keys() {
                for i in &guards {
                    prop_assert_eq!(i.contains(a[c]), i.contains(b[c]));
                }
            }
        }
    }

    #[test]
    fn waiting_walks_the_time_closure(a in arb_valuation(), steps in 1i64..80) {
        let cmax = [3, 2];
        let r = region_of(&a, &cmax);
        prop_assert!(r.is_well_formed(&cmax));
        let closure = r.time_closure(&cmax);
        let mut seen = vec![0usize];
        for k in 1..=steps {
            let d = Rational::new(k, 16);
            let moved: CopyValuation = a.iter().map(|(c, v)| (*c, v + d)).collect();
            let here = region_of(&moved, &cmax);
            let pos = closure.iter().position(|x| *x == here);
            prop_assert!(pos.is_some());
            prop_assert!(pos.unwrap() >= *seen.last().unwrap());
            seen.push(pos.unwrap());
        }
    }
}
