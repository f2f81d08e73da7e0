//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use tptl_ata::{sample::running_example, validate_unilateral, validate_vwata, Letter, LocId};
use tptl_cli::{check_formula, grid_search, CheckOptions, GridBounds, OracleRegistry, Verdict};
use tptl_compile::{alphabet_projection, compile_formula};
use tptl_corpus::{fragment_formulas, random_words, FormulaConfig, WordConfig};
use tptl_formula::{classify, eval_tptl, formula_size, language_member, parse_tptl, Formula};
use tptl_mitl::{eval_mitl, mitl_to_tptl0inf, parse_mitl};
use tptl_nta::{nta_stats, subsetize, ClockCopy, Nta};
use tptl_reduction::check_bounded_run;
use tptl_region::{build_region_graph, region_bound};
use tptl_timing::{ClockValuation, Interval, Rational, TimedWord};

const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 500;
const WORDS_PER_FORMULA: usize = 5;

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn word(text: &str) -> TimedWord {
    TimedWord::parse_text(&text.replace(';', "\n")).expect("literal word")
}

fn corpus() -> Vec<Formula> {
    fragment_formulas(CORPUS_SEED, CORPUS_SIZE, &FormulaConfig::default())
}

fn corpus_words() -> Vec<TimedWord> {
    random_words(CORPUS_SEED + 1, CORPUS_SIZE * WORDS_PER_FORMULA, &WordConfig::default())
}

fn examples_of_section_two() -> Outcome {
    let phi = parse_tptl("x.(a U (b U (c & x in [1,2])))").unwrap();
    let rho = word("a@0;a@0.2;b@1.1;b@1.9;c@1.91;c@2.1");
    let rho2 = word("a@0;a@0.3;b@1.4;c@2.1;c@2.5");
    let zero = ClockValuation::zero();
    let got = [
        eval_tptl(&rho, 1, &zero, &phi).unwrap(),
        eval_tptl(&rho2, 1, &zero, &phi).unwrap(),
        eval_tptl(&rho2, 2, &zero, &phi).unwrap(),
    ];
    ensure(got == [true, false, true], || format!("got {got:?}, expected [true, false, true]"))?;
    Ok("rho,1 true; rho',1 false; rho',2 true".into())
}

fn size_example() -> Outcome {
    let n = formula_size(&parse_tptl("x.(a & b U (c | x in (1,2)))").unwrap());
    ensure(n == 8, || format!("size {n}, expected 8"))?;
    Ok("size 8".into())
}

fn classifier_examples() -> Outcome {
    let good = parse_tptl("x.y.(a U (b U (c & x<3 & y<=2 & x.X(c & x>1))))").unwrap();
    let bad = parse_tptl("x.y.(a U (b & x<=3 & y>=5))").unwrap();
    ensure(classify(&good).is_fragment, || "two-clock Next example rejected".into())?;
    let report = classify(&bad);
    ensure(!report.is_fragment, || "mixed-sided example accepted".into())?;
    let offenders: Vec<String> = report.offending_subformulas(&bad).iter().map(ToString::to_string).collect();
    let expected = parse_tptl("b & x<=3 & y>=5").unwrap().to_string();
    ensure(offenders == vec![expected.clone()], || format!("offenders {offenders:?}, expected [{expected}]"))?;
    Ok(format!("accepted the Next example, rejected with offender `{expected}`"))
}

fn compilation_bound() -> Outcome {
    let formulas = corpus();
    ensure(formulas.len() == CORPUS_SIZE, || format!("corpus has {} formulas", formulas.len()))?;
    let mut max_clocks = 0;
    for f in &formulas {
        ensure(f.is_closed() && formula_size(f) <= 12, || format!("corpus formula {f} is open or too large"))?;
        let ata = compile_formula(f).map_err(|e| format!("{f}: {e}"))?.ata;
        max_clocks = max_clocks.max(ata.clock_count());
        ensure(ata.location_count() <= formula_size(f) + 1, || {
            format!("{f}: {} locations, bound {}", ata.location_count(), formula_size(f) + 1)
        })?;
        let report = validate_vwata(&ata);
        ensure(report.passed(), || format!("{f}: not very weak: {:?}", report.violations))?;
        validate_unilateral(&ata).map_err(|e| format!("{f}: {e}"))?;
    }
    ensure(max_clocks <= 2, || format!("{max_clocks} clocks in the corpus"))?;
    Ok(format!("{CORPUS_SIZE} formulas: |Q| <= |phi|+1, very weak, unilateral"))
}

fn oracle_agreement() -> Outcome {
    let registry = OracleRegistry::standard();
    let words = corpus_words();
    let mut pairs = 0;
    let mut members = 0;
    for (k, f) in corpus().iter().enumerate() {
        for w in &words[k * WORDS_PER_FORMULA..(k + 1) * WORDS_PER_FORMULA] {
            let verdicts = registry.verdicts(f, w).map_err(|e| format!("{f}: {e}"))?;
            let first = verdicts[0].1;
            ensure(verdicts.iter().all(|(_, v)| *v == first), || format!("{f} on {w}: {verdicts:?}"))?;
            pairs += 1;
            members += usize::from(first);
        }
    }
    Ok(format!("{pairs} pairs, oracles {:?} agree ({members} members)", registry.names()))
}

fn bounding_lemma() -> Outcome {
    let words = corpus_words();
    let (mut runs, mut worst, mut self_loop) = (0, 0usize, 0);
    for (k, f) in corpus().iter().enumerate() {
        let ata = compile_formula(f).map_err(|e| e.to_string())?.ata;
        for w in &words[k * WORDS_PER_FORMULA..(k + 1) * WORDS_PER_FORMULA] {
            let report = check_bounded_run(&ata, &alphabet_projection(&ata, w)).map_err(|e| format!("{f}: {e}"))?;
            let duplicates = report
                .violations
                .iter()
                .filter(|v| matches!(v, tptl_reduction::BoundViolation::Duplicate { .. }))
                .count();
            self_loop += report.violations.len() - duplicates;
            ensure(duplicates == 0, || format!("{f} on {w}: {}", report.to_json()))?;
            ensure(report.max_cardinality <= ata.location_count(), || {
                format!("{f} on {w}: cardinality {} > |Q| = {}", report.max_cardinality, ata.location_count())
            })?;
            worst = worst.max(report.max_cardinality);
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, no duplicates, largest reduced configuration {worst}, {self_loop} other violations"))
}

/// Finds `L --a--> L` without guards or resets next to `L --a, (x,i)<=2--> L'`
/// where `(x,i)` is the copy read by the location that spawns the next-step
/// obligation, and `L'` gives that obligation the same `x` copy and a
/// freshly reset `y` copy.
fn spawn_transition(n: &Nta, spawner: LocId, spawned: LocId) -> Option<String> {
    let a = n.letter_index(&Letter::single("a"))?;
    for (k, l) in n.locations.iter().enumerate() {
        let Some(copies) = l.copies(spawner) else { continue };
        let edges: Vec<_> = n.edges[k].iter().filter(|e| e.letter == a).collect();
        let stays = edges.iter().any(|e| e.target == k && e.guards.is_empty() && e.resets.is_empty());
        let x = ClockCopy { clock: 0, index: copies[0] };
        let spawn = edges.iter().find(|e| {
            let target = &n.locations[e.target];
            let Some(got) = target.copies(spawned) else { return false };
            e.guards == vec![(x, Interval::at_most(2))]
                && got[0] == copies[0]
                && e.resets.contains(&ClockCopy { clock: 1, index: got[1] })
                && target.contains(spawner)
        });
        if let (true, Some(e)) = (stays, spawn) {
            return Some(format!("{} --{}--> {}", n.location_text(k), n.edge_text(e), n.location_text(e.target)));
        }
    }
    None
}

fn running_example_end_to_end() -> Outcome {
    let hand = subsetize(&running_example()).map_err(|e| e.to_string())?;
    spawn_transition(&hand, LocId(1), LocId(2)).ok_or("hand-built automaton lacks the spawning transition")?;

    let f = parse_tptl("G(!a | x.F(a & x<=2 & y.X(b & x<=3 & y<=2)))").unwrap();
    let out = compile_formula(&f).map_err(|e| e.to_string())?;
    let n = subsetize(&out.ata).map_err(|e| e.to_string())?;
    let until = (0..out.ata.location_count()).map(LocId).find(|&q| matches!(out.formula(q), Formula::Finally(_)));
    let next = (0..out.ata.location_count()).map(LocId).find(|&q| matches!(out.formula(q), Formula::Next(_)));
    let (Some(spawner), Some(spawned)) = (until, next) else {
        return Err("compiled automaton lacks the F and X locations".into());
    };
    let found = spawn_transition(&n, spawner, spawned).ok_or("compiled NTA lacks the spawning transition")?;

    let outcome = check_formula(&f, CheckOptions::default()).map_err(|e| e.to_string())?;
    let w = outcome.witness.ok_or("running example reported UNSAT")?;
    ensure(language_member(&w, &f).unwrap(), || format!("witness {w} rejected"))?;
    Ok(format!("{found}; SAT with witness {w}"))
}

fn emptiness_correctness() -> Outcome {
    let formulas = fragment_formulas(CORPUS_SEED + 7, 100, &FormulaConfig::default());
    let (mut sat, mut unsat) = (0, 0);
    for f in &formulas {
        let outcome = check_formula(f, CheckOptions::default()).map_err(|e| format!("{f}: {e}"))?;
        match outcome.verdict {
            Verdict::Sat => {
                let w = outcome.witness.as_ref().ok_or_else(|| format!("{f}: SAT without witness"))?;
                ensure(language_member(w, f).unwrap(), || format!("{f}: witness {w} rejected"))?;
                sat += 1;
            }
            Verdict::Unsat => {
                if let Some(w) = grid_search(f, GridBounds::for_formula(f, 4, 4)) {
                    return Err(format!("{f}: UNSAT but {w} satisfies it"));
                }
                unsat += 1;
            }
        }
    }
    Ok(format!("{sat} SAT with verified witnesses, {unsat} UNSAT confirmed by grid search"))
}

fn mitl_translation() -> Outcome {
    let mut shapes = Vec::new();
    for (l, u) in [(1, 2), (1, 3), (2, 3)] {
        for (lc, uc) in [(true, true), (true, false), (false, true), (false, false)] {
            shapes.push(format!("{}{l},{u}{}", if lc { '[' } else { '(' }, if uc { ']' } else { ')' }));
        }
    }
    let approach = parse_mitl("b & G[0,1) !b").unwrap();
    let cfg = WordConfig { symbols: vec!["a".into(), "b".into(), "c".into()], ..WordConfig::default() };
    let mut checked = 0;
    for (k, shape) in shapes.iter().enumerate() {
        for text in [format!("F{shape} b"), format!("G{shape} a"), format!("a U{shape} b")] {
            let f = parse_mitl(&text).map_err(|e| format!("{text}: {e}"))?;
            let t = mitl_to_tptl0inf(&f).map_err(|e| format!("{text}: {e}"))?;
            ensure(classify(&t).is_fragment, || format!("{text} translates outside the fragment"))?;
            for w in random_words(CORPUS_SEED + 100 + k as u64, 300, &cfg) {
                let expected = eval_mitl(&w, 1, &f).unwrap();
                ensure(language_member(&w, &t).unwrap() == expected, || format!("{text} on {w}"))?;
                let hits: Vec<Rational> =
                    (1..=w.len()).filter(|&p| eval_mitl(&w, p, &approach).unwrap()).map(|p| w.time(p)).collect();
                ensure(hits.windows(2).all(|h| h[1] - h[0] >= Rational::from_integer(1)), || {
                    format!("isolated b positions closer than a unit in {w}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} formulas over {} interval shapes, {checked} words agree", shapes.len() * 3, shapes.len()))
}

fn counting_formula() -> Outcome {
    let beta = parse_tptl("x.F(b & F(b & x<=1))").unwrap();
    let outcome = check_formula(&beta, CheckOptions::default()).map_err(|e| e.to_string())?;
    let w = outcome.witness.ok_or("beta reported UNSAT")?;
    let start = w.time(1);
    let close = (2..=w.len()).filter(|&p| w.symbol(p) == "b" && w.time(p) - start <= Rational::from_integer(1)).count();
    ensure(close >= 2, || format!("witness {w} has {close} b positions within a unit"))?;
    let registry = OracleRegistry::standard();
    let verdicts = registry.verdicts(&beta, &w).map_err(|e| e.to_string())?;
    ensure(verdicts.iter().all(|(_, v)| *v), || format!("{verdicts:?}"))?;
    Ok(format!("SAT with witness {w}, confirmed by {:?}", registry.names()))
}

fn size_accounting() -> Outcome {
    let (mut instances, mut largest) = (0, 0);
    let mut over: Vec<String> = Vec::new();
    for f in &corpus() {
        let ata = compile_formula(f).map_err(|e| e.to_string())?.ata;
        let n = subsetize(&ata).map_err(|e| format!("{f}: {e}"))?;
        let stats = nta_stats(&n);
        ensure(stats.clock_copies <= ata.clock_count() * ata.location_count(), || {
            format!("{f}: {} copies, bound {}", stats.clock_copies, ata.clock_count() * ata.location_count())
        })?;
        let g = build_region_graph(&n).map_err(|e| format!("{f}: {e}"))?;
        let bound = region_bound(&n);
        if BigUint::from(g.node_count()) > bound {
            over.push(format!("{f} ({} clocks, {} region nodes, bound {bound})", ata.clock_count(), g.node_count()));
        }
        largest = largest.max(g.node_count());
        instances += 1;
    }
    ensure(over.is_empty(), || format!("{} of {instances} instances exceed the region bound, first: {}", over.len(), over[0]))?;
    Ok(format!("{instances} instances within both bounds, largest region graph {largest} nodes"))
}

struct Criterion {
    number: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { number: 1, title: "evaluation examples", budget: Duration::from_secs(1), run: examples_of_section_two },
        Criterion { number: 2, title: "formula size example", budget: Duration::from_secs(1), run: size_example },
        Criterion { number: 3, title: "fragment classifier", budget: Duration::from_secs(1), run: classifier_examples },
        Criterion { number: 4, title: "compilation bound", budget: Duration::from_secs(60), run: compilation_bound },
        Criterion { number: 5, title: "four-way oracle agreement", budget: Duration::from_secs(600), run: oracle_agreement },
        Criterion { number: 6, title: "bounded reduced runs", budget: Duration::from_secs(600), run: bounding_lemma },
        Criterion { number: 7, title: "running example end to end", budget: Duration::from_secs(10), run: running_example_end_to_end },
        Criterion { number: 8, title: "emptiness correctness", budget: Duration::from_secs(900), run: emptiness_correctness },
        Criterion { number: 9, title: "MITL translation", budget: Duration::from_secs(300), run: mitl_translation },
        Criterion { number: 10, title: "counting formula", budget: Duration::from_secs(10), run: counting_formula },
        Criterion { number: 11, title: "size accounting", budget: Duration::from_secs(60), run: size_accounting },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > c.budget => Err(format!("{detail}; took {elapsed:.2?}, budget {:?}", c.budget)),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS criterion {:>2} {}: {detail} [{elapsed:.2?}]", c.number, c.title),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {}: {why} [{elapsed:.2?}]", c.number, c.title);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
