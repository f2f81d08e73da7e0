use thiserror::Error;
use tptl_ata::{ata_accepts, Configuration};
use tptl_compile::{alphabet_projection, compile_formula, CompileError};
use tptl_formula::{language_member, EvalError, Formula};
use tptl_nta::{nta_accepts, subsetize, NtaError};
use tptl_reduction::{partition_of, reduced_accepts, ReductionError};
use tptl_timing::TimedWord;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Nta(#[from] NtaError),
    #[error("the empty word is never a member")]
    EmptyWord,
    #[error("unknown oracle `{0}`; known: {1}")]
    Unknown(String, String),
}

/// Decides whether a nonempty timed word satisfies a closed formula at its
/// first position.
pub trait MembershipOracle {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn member(&self, f: &Formula, w: &TimedWord) -> Result<bool, OracleError>;
}

/// Direct recursive evaluation.
pub struct EvalOracle;

/// Depth-first search over configurations of the compiled automaton.
pub struct AtaOracle;

/// The same search with dominated states removed after every step.
pub struct ReducedOracle;

/// Runs of the timed automaton produced by the subset construction.
pub struct NtaOracle;

fn nonempty(w: &TimedWord) -> Result<(), OracleError> {
    if w.is_empty() {
        Err(OracleError::EmptyWord)
    } else {
        Ok(())
    }
}

impl MembershipOracle for EvalOracle {
    fn name(&self) -> &'static str {
        "eval"
    }

    fn describe(&self) -> &'static str {
        "recursive evaluation of the formula"
    }

    fn member(&self, f: &Formula, w: &TimedWord) -> Result<bool, OracleError> {
        nonempty(w)?;
        Ok(language_member(w, f)?)
    }
}

impl MembershipOracle for AtaOracle {
    fn name(&self) -> &'static str {
        "ata"
    }

    fn describe(&self) -> &'static str {
        "alternating automaton, full configurations"
    }

    fn member(&self, f: &Formula, w: &TimedWord) -> Result<bool, OracleError> {
        nonempty(w)?;
        let ata = compile_formula(f)?.ata;
        Ok(ata_accepts(&ata, &Configuration::initial(&ata), &alphabet_projection(&ata, w)).accepted)
    }
}

impl MembershipOracle for ReducedOracle {
    fn name(&self) -> &'static str {
        "reduced"
    }

    fn describe(&self) -> &'static str {
        "alternating automaton, dominated states pruned"
    }

    fn member(&self, f: &Formula, w: &TimedWord) -> Result<bool, OracleError> {
        nonempty(w)?;
        let ata = compile_formula(f)?.ata;
        let partition = partition_of(&ata)?;
        Ok(reduced_accepts(&ata, &Configuration::initial(&ata), &alphabet_projection(&ata, w), &partition))
    }
}

impl MembershipOracle for NtaOracle {
    fn name(&self) -> &'static str {
        "nta"
    }

    fn describe(&self) -> &'static str {
        "timed automaton over clock copies"
    }

    fn member(&self, f: &Formula, w: &TimedWord) -> Result<bool, OracleError> {
        nonempty(w)?;
        let ata = compile_formula(f)?.ata;
        let n = subsetize(&ata)?;
        Ok(nta_accepts(&n, &alphabet_projection(&ata, w)))
    }
}

/// Oracles selectable by name.
pub struct OracleRegistry {
    entries: Vec<Box<dyn MembershipOracle>>,
}

impl OracleRegistry {
    pub fn empty() -> Self {
        OracleRegistry { entries: Vec::new() }
    }

    /// `eval`, `ata`, `reduced` and `nta`, in that order.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(EvalOracle));
        r.register(Box::new(AtaOracle));
        r.register(Box::new(ReducedOracle));
        r.register(Box::new(NtaOracle));
        r
    }

    /// Adds an oracle, replacing one registered under the same name.
    pub fn register(&mut self, oracle: Box<dyn MembershipOracle>) {
        self.entries.retain(|o| o.name() != oracle.name());
        self.entries.push(oracle);
    }

    pub fn get(&self, name: &str) -> Result<&dyn MembershipOracle, OracleError> {
        self.entries
            .iter()
            .find(|o| o.name() == name)
            .map(|o| o.as_ref())
            .ok_or_else(|| OracleError::Unknown(name.to_string(), self.names().join(", ")))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|o| o.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn MembershipOracle> {
        self.entries.iter().map(|o| o.as_ref())
    }

    /// Every oracle's answer, in registration order.
    pub fn verdicts(&self, f: &Formula, w: &TimedWord) -> Result<Vec<(&'static str, bool)>, OracleError> {
        self.iter().map(|o| Ok((o.name(), o.member(f, w)?))).collect()
    }
}

impl Default for OracleRegistry {
    fn default() -> Self {
        Self::standard()
    }
}
