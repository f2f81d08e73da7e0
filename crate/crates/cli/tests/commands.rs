use std::path::PathBuf;
use std::process::{Command, Output};

use tptl_ata::Ata;
use tptl_formula::{classify, language_member, parse_tptl};
use tptl_nta::Nta;
use tptl_timing::TimedWord;

fn tptl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tptl")).args(args).env_remove("TPTL_STATE_CAP").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tptl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const RUNNING: &str = "G(!a | x.F(a & x<=2 & y.X(b & x<=3 & y<=2)))";
const PHI: &str = "x.(a U (b U (c & x in [1,2])))";

#[test]
fn check_prints_a_witness_that_eval_accepts() {
    let file = scratch("running.tptl");
    std::fs::write(&file, RUNNING).unwrap();
    let o = tptl(&["check", "--formula", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let (verdict, word) = text.split_once('\n').unwrap();
    assert_eq!(verdict, "SAT");
    let w = TimedWord::parse_text(word).unwrap();
    assert!(language_member(&w, &parse_tptl(RUNNING).unwrap()).unwrap());
    let word_file = scratch("witness.txt");
    std::fs::write(&word_file, word).unwrap();
    let e = tptl(&["eval", "--formula", RUNNING, "--word", word_file.to_str().unwrap()]);
    assert_eq!((e.status.code(), stdout(&e).trim()), (Some(0), "true"));
}

#[test]
fn contradiction_exits_with_one() {
    let o = tptl(&["check", "--formula", "a & !a"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "UNSAT");
}

#[test]
fn formulas_outside_the_fragment_exit_with_two() {
    let o = tptl(&["check", "--formula", "x.y.(a U (b & x<=3 & y>=5))"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("b & x<=3 & y>=5"));
    let forced = tptl(&["check", "--force", "--formula", "x.y.(a U (b & x<=3 & y>=5))"]);
    assert_eq!(forced.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&forced.stderr).contains("no valid partition"));
}

#[test]
fn json_verdict_has_witness_and_stats() {
    let o = tptl(&["check", "--format", "json", "--formula", "x.F(a & x>=2)"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "SAT");
    let w = TimedWord::from_json(&v["witness"].to_string()).unwrap();
    assert!(language_member(&w, &parse_tptl("x.F(a & x>=2)").unwrap()).unwrap());
    assert!(v["stats"]["region_nodes"].as_u64().unwrap() > 0);
}

#[test]
fn state_cap_comes_from_flag_or_environment() {
    let o = tptl(&["check", "--state-cap", "2", "--formula", RUNNING]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("state cap of 2"));
    let env = Command::new(env!("CARGO_BIN_EXE_tptl"))
        .args(["check", "--formula", RUNNING])
        .env("TPTL_STATE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
}

#[test]
fn eval_examples_and_positions() {
    let rho = "a@0;a@0.2;b@1.1;b@1.9;c@1.91;c@2.1";
    let rho2 = "a@0;a@0.3;b@1.4;c@2.1;c@2.5";
    let run = |w: &str, extra: &[&str]| {
        let mut args = vec!["eval", "--formula", PHI, "--word", w];
        args.extend_from_slice(extra);
        let o = tptl(&args);
        (o.status.code(), stdout(&o).trim().to_string())
    };
    assert_eq!(run(rho, &[]), (Some(0), "true".into()));
    assert_eq!(run(rho2, &[]), (Some(1), "false".into()));
    assert_eq!(run(rho2, &["--pos", "2"]), (Some(0), "true".into()));
    assert_eq!(run(rho, &["--oracle", "ata"]), (Some(0), "true".into()));
    let reduced = run(rho, &["--oracle", "reduced"]);
    assert_eq!(reduced.0, Some(2), "two-sided guards have no partition");
    let inner = "x.F(a & x<=2 & y.X(b & x<=3 & y<=2))";
    for oracle in ["eval", "ata", "reduced", "nta"] {
        let o = tptl(&["eval", "--oracle", oracle, "--formula", inner, "--word", "c@0;a@1;b@2.5"]);
        assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "true"), "{oracle}");
        let o = tptl(&["eval", "--oracle", oracle, "--formula", inner, "--word", "c@0;a@1;b@3.5"]);
        assert_eq!((o.status.code(), stdout(&o).trim()), (Some(1), "false"), "{oracle}");
    }
    assert_eq!(run(rho, &["--oracle", "zones"]).0, Some(2));
    assert_eq!(run(rho, &["--pos", "9"]).0, Some(2));
}

#[test]
fn compile_and_subsetize_write_loadable_artifacts() {
    let ata_file = scratch("running.ata.json");
    let o = tptl(&["compile", "--formula", RUNNING, "--out", ata_file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let ata = Ata::from_json(&std::fs::read_to_string(&ata_file).unwrap()).unwrap();
    assert!(ata.location_count() <= tptl_formula::formula_size(&parse_tptl(RUNNING).unwrap()) + 1);
    assert_eq!(Ata::from_json(&ata.to_json()).unwrap(), ata);

    let nta_file = scratch("running.nta.json");
    let o = tptl(&["subsetize", "--formula", RUNNING, "--out", nta_file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let n = Nta::from_json(&std::fs::read_to_string(&nta_file).unwrap()).unwrap();
    assert!(n.location_count() > 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("location_bound"));

    let dot = tptl(&["subsetize", "--format", "dot", "--formula", RUNNING]);
    assert!(stdout(&dot).starts_with("digraph nta {"));
    let dot = tptl(&["compile", "--format", "dot", "--formula", RUNNING]);
    assert!(stdout(&dot).starts_with("digraph ata {"));
}

#[test]
fn translate_stays_in_the_fragment() {
    let o = tptl(&["translate", "--formula", "F[1,2) b"]);
    assert_eq!(o.status.code(), Some(0));
    let t = parse_tptl(stdout(&o).trim()).unwrap();
    assert!(classify(&t).is_fragment);
}

#[test]
fn corpus_is_reproducible() {
    let a = tptl(&["corpus", "--seed", "5", "--formulas", "4", "--words", "2", "--format", "json"]);
    let b = tptl(&["corpus", "--seed", "5", "--formulas", "4", "--words", "2", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["formulas"].as_array().unwrap().len(), 4);
    for f in v["formulas"].as_array().unwrap() {
        assert!(parse_tptl(f.as_str().unwrap()).is_ok());
    }
}
