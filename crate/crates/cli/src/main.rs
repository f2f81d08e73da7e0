//! `tptl`: satisfiability checking for unilateral TPTL over finite timed words.
//!
//! Exit status: 0 for SAT or true, 1 for UNSAT or false, 2 for errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use tptl_ata::validate_vwata;
use tptl_cli::{check_formula, CheckOptions, OracleRegistry, Verdict};
use tptl_compile::compile_formula;
use tptl_corpus::{fragment_formulas, random_words, FormulaConfig, WordConfig};
use tptl_formula::{classify, eval_tptl, formula_size, parse_tptl, Formula};
use tptl_mitl::{eval_mitl, mitl_to_tptl0inf, parse_mitl};
use tptl_nta::{nta_stats, subsetize};
use tptl_timing::{ClockValuation, TimedWord};

#[derive(Parser)]
#[command(name = "tptl", version, about = "Satisfiability checking for unilateral TPTL over finite timed words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Decide satisfiability and print a witness word.
    Check {
        /// Formula file, or the formula itself when no such file exists.
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Largest region graph to build.
        #[arg(long, env = "TPTL_STATE_CAP", default_value_t = 200_000)]
        state_cap: usize,
        /// Run the automaton pipeline on formulas outside the fragment.
        #[arg(long)]
        force: bool,
        /// Where to write the witness (text) or the region graph (dot).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a formula on a timed word.
    Eval {
        #[arg(long)]
        formula: String,
        /// Word file in `sym@time` lines or JSON, or the word itself.
        #[arg(long)]
        word: String,
        /// 1-based start position.
        #[arg(long, default_value_t = 1)]
        pos: usize,
        /// Treat the formula as MITL.
        #[arg(long)]
        mitl: bool,
        /// Membership procedure; only used at position 1.
        #[arg(long, default_value = "eval")]
        oracle: String,
    },
    /// Compile to a very weak alternating timed automaton.
    Compile {
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile and apply the subset construction.
    Subsetize {
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Translate an MITL formula into unilateral one-clock TPTL.
    Translate {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the seeded random formulas and words used by the test suites.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        formulas: usize,
        #[arg(long, default_value_t = 0)]
        words: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn inline_or_file(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    } else {
        Ok(arg.to_string())
    }
}

fn read_formula(arg: &str) -> Result<Formula> {
    let text = inline_or_file(arg)?;
    parse_tptl(text.trim()).map_err(|e| anyhow::anyhow!("{e}"))
}

fn read_word(arg: &str) -> Result<TimedWord> {
    let text = inline_or_file(arg)?;
    // allow `a@0;b@1` on the command line
    let text = if text.contains('\n') || text.trim_start().starts_with('[') { text } else { text.replace(';', "\n") };
    Ok(TimedWord::parse_any(&text)?)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { formula, format, state_cap, force, out } => {
            if state_cap == 0 {
                bail!("--state-cap must be positive");
            }
            let f = read_formula(&formula)?;
            let outcome = check_formula(&f, CheckOptions { force, state_cap })?;
            let sat = outcome.verdict == Verdict::Sat;
            match format {
                Format::Json => emit(&out, &serde_json::to_string_pretty(&outcome.to_json())?)?,
                Format::Dot => emit(&out, &outcome.region_dot)?,
                Format::Text => {
                    println!("{}", if sat { "SAT" } else { "UNSAT" });
                    if let Some(w) = &outcome.witness {
                        emit(&out, &w.to_text())?;
                    }
                    eprintln!("{}", serde_json::to_string(&outcome.stats)?);
                }
            }
            Ok(exit(sat))
        }
        Command::Eval { formula, word, pos, mitl, oracle } => {
            let w = read_word(&word)?;
            if pos == 0 || pos > w.len() {
                bail!("position {pos} is outside the word (length {})", w.len());
            }
            let result = if mitl {
                let text = inline_or_file(&formula)?;
                let f = parse_mitl(text.trim()).map_err(|e| anyhow::anyhow!("{e}"))?;
                eval_mitl(&w, pos, &f)?
            } else {
                let f = read_formula(&formula)?;
                if pos == 1 {
                    OracleRegistry::standard().get(&oracle)?.member(&f, &w)?
                } else {
                    eval_tptl(&w, pos, &ClockValuation::zero(), &f)?
                }
            };
            println!("{result}");
            Ok(exit(result))
        }
        Command::Compile { formula, format, out } => {
            let f = read_formula(&formula)?;
            let compiled = compile_formula(&f)?;
            let ata = &compiled.ata;
            let vw = validate_vwata(ata);
            eprintln!(
                "locations {} (bound {}), clocks {}, very weak {}, unilateral {}",
                ata.location_count(),
                formula_size(&f) + 1,
                ata.clock_count(),
                vw.passed(),
                ata.partition.is_some()
            );
            for v in &vw.violations {
                eprintln!("  {v}");
            }
            let text = if format == Format::Dot { ata.to_dot() } else { ata.to_json() };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Subsetize { formula, format, out } => {
            let f = read_formula(&formula)?;
            let ata = compile_formula(&f)?.ata;
            let n = subsetize(&ata)?;
            let stats = nta_stats(&n);
            eprintln!("{}", serde_json::to_string(&stats)?);
            let text = if format == Format::Dot { n.to_dot() } else { n.to_json() };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Translate { formula, out } => {
            let text = inline_or_file(&formula)?;
            let f = parse_mitl(text.trim()).map_err(|e| anyhow::anyhow!("{e}"))?;
            let t = mitl_to_tptl0inf(&f)?;
            eprintln!("size {}, in fragment {}", formula_size(&t), classify(&t).is_fragment);
            emit(&out, &t.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Corpus { seed, formulas, words, format } => {
            let fs = fragment_formulas(seed, formulas, &FormulaConfig::default());
            let ws = random_words(seed.wrapping_add(1), words, &WordConfig::default());
            if format == Format::Json {
                let ws: Vec<serde_json::Value> =
                    ws.iter().map(|w| serde_json::from_str(&w.to_json()).expect("word JSON")).collect();
                let fs: Vec<String> = fs.iter().map(ToString::to_string).collect();
                println!("{}", serde_json::to_string_pretty(&serde_json::json!({ "formulas": fs, "words": ws }))?);
            } else {
                for f in &fs {
                    println!("{f}");
                }
                for w in &ws {
                    println!("{w}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
