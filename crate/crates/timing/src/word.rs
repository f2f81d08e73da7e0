use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("timestamp at position {position} is negative")]
    NegativeTime { position: usize },
    #[error("timestamp at position {position} is smaller than its predecessor")]
    NonMonotone { position: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid word JSON: {0}")]
    Json(String),
}

/// Finite sequence of `(symbol, timestamp)` pairs with weakly increasing,
/// non-negative timestamps. Positions are 1-based in the semantic functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TimedWord<S = String> {
    entries: Vec<(S, Rational)>,
}

impl<S> TimedWord<S> {
    pub fn new(entries: Vec<(S, Rational)>) -> Result<Self, WordError> {
        let mut previous = Rational::from_integer(0);
        for (i, (_, t)) in entries.iter().enumerate() {
            if *t < Rational::from_integer(0) {
                return Err(WordError::NegativeTime { position: i + 1 });
            }
            if *t < previous {
                return Err(WordError::NonMonotone { position: i + 1 });
            }
            previous = *t;
        }
        Ok(TimedWord { entries })
    }

    pub fn empty() -> Self {
        TimedWord { entries: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(S, Rational)] {
        &self.entries
    }

    /// Symbol at the 1-based position `pos`.
    pub fn symbol(&self, pos: usize) -> &S {
        &self.entries[pos - 1].0
    }

    /// Timestamp at the 1-based position `pos`.
    pub fn time(&self, pos: usize) -> Rational {
        self.entries[pos - 1].1
    }

    /// `(symbol, delay)` pairs, the first delay measured from time zero.
    pub fn delays(&self) -> impl Iterator<Item = (&S, Rational)> + '_ {
        let mut last = Rational::from_integer(0);
        self.entries.iter().map(move |(s, t)| {
            let d = *t - last;
            last = *t;
            (s, d)
        })
    }

    pub fn map_symbols<T>(&self, mut f: impl FnMut(&S) -> T) -> TimedWord<T> {
        TimedWord { entries: self.entries.iter().map(|(s, t)| (f(s), *t)).collect() }
    }

    pub fn prefix(&self, len: usize) -> Self
    where
        S: Clone,
    {
        TimedWord { entries: self.entries[..len].to_vec() }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    sym: String,
    t: [i64; 2],
}

impl TimedWord<String> {
    /// One `symbol@num/den` entry per line; blank lines and `#` comments are skipped.
    pub fn parse_text(text: &str) -> Result<Self, WordError> {
        let mut entries = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: &str| WordError::Syntax { line: n + 1, message: message.to_string() };
            let (sym, time) = line.split_once('@').ok_or_else(|| syntax("expected `symbol@time`"))?;
            let sym = sym.trim();
            if sym.is_empty() || !sym.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(syntax("symbol must be an identifier"));
            }
            let t = parse_rational(time).ok_or_else(|| syntax("malformed timestamp"))?;
            entries.push((sym.to_string(), t));
        }
        TimedWord::new(entries)
    }

    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|(s, t)| format!("{s}@{}/{}\n", t.numer(), t.denom()))
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self, WordError> {
        let raw: Vec<JsonEntry> = serde_json::from_str(text).map_err(|e| WordError::Json(e.to_string()))?;
        let mut entries = Vec::with_capacity(raw.len());
        for e in raw {
            if e.t[1] <= 0 {
                return Err(WordError::Json("denominator must be positive".into()));
            }
            entries.push((e.sym, Rational::new(e.t[0], e.t[1])));
        }
        TimedWord::new(entries)
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<JsonEntry> = self
            .entries
            .iter()
            .map(|(s, t)| JsonEntry { sym: s.clone(), t: [*t.numer(), *t.denom()] })
            .collect();
        serde_json::to_string(&raw).expect("word entries always serialize")
    }

    /// Accepts either the line format or the JSON array form.
    pub fn parse_any(text: &str) -> Result<Self, WordError> {
        if text.trim_start().starts_with('[') {
            Self::from_json(text)
        } else {
            Self::parse_text(text)
        }
    }
}

impl<S: fmt::Display> fmt::Display for TimedWord<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, t) in &self.entries {
            write!(f, "({s},{})", format_rational(t))?;
        }
        Ok(())
    }
}
