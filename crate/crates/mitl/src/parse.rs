//! MITL text syntax: the TPTL operator set without freezes or constraints,
//! with optional interval suffixes `U[l,u)`, `F[l,u)`, `G(l,inf)`.

use thiserror::Error;
use tptl_formula::parse::{lex, Cursor, Tok};
use tptl_formula::{ParseError, ParseErrorKind};
use tptl_timing::Interval;

use crate::MitlFormula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MitlParseError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("line {line}, column {column}: interval bounds must be integers")]
    NonIntegerBound { line: usize, column: usize },
}

pub fn parse_mitl(text: &str) -> Result<MitlFormula, MitlParseError> {
    let mut cur = Cursor::new(lex(text)?);
    let f = expr(&mut cur)?;
    if *cur.peek() != Tok::Eof {
        return Err(cur.unexpected("an operator or end of input").into());
    }
    Ok(f)
}

fn expr(cur: &mut Cursor) -> Result<MitlFormula, MitlParseError> {
    let mut f = conj(cur)?;
    while *cur.peek() == Tok::Pipe {
        cur.bump();
        f = MitlFormula::or(f, conj(cur)?);
    }
    Ok(f)
}

fn conj(cur: &mut Cursor) -> Result<MitlFormula, MitlParseError> {
    let mut f = until(cur)?;
    while *cur.peek() == Tok::Amp {
        cur.bump();
        f = MitlFormula::and(f, until(cur)?);
    }
    Ok(f)
}

fn until(cur: &mut Cursor) -> Result<MitlFormula, MitlParseError> {
    let l = unary(cur)?;
    if !cur.is_keyword("U") {
        return Ok(l);
    }
    cur.bump();
    let i = suffix(cur)?;
    let r = unary(cur)?;
    if cur.is_keyword("U") {
        return Err(cur.error(ParseErrorKind::ChainedUntil).into());
    }
    Ok(MitlFormula::until(l, r, i))
}

/// An interval directly after `U`, `F` or `G`; `[0,inf)` when absent.
fn suffix(cur: &mut Cursor) -> Result<Interval, MitlParseError> {
    let opens_interval = match cur.peek() {
        Tok::LBracket => true,
        Tok::LParen => matches!(cur.peek_at(1), Tok::Int(_)),
        _ => false,
    };
    if !opens_interval {
        return Ok(Interval::at_least(0));
    }
    // `1.5` lexes as integer, dot, integer.
    for k in 1..5 {
        if *cur.peek_at(k) == Tok::Dot {
            let e = cur.error(ParseErrorKind::UnknownSymbol('.'));
            return Err(MitlParseError::NonIntegerBound { line: e.line, column: e.column });
        }
        if matches!(cur.peek_at(k), Tok::RBracket | Tok::RParen) {
            break;
        }
    }
    Ok(cur.interval()?)
}

fn unary(cur: &mut Cursor) -> Result<MitlFormula, MitlParseError> {
    match cur.peek().clone() {
        Tok::Bang => {
            cur.bump();
            Ok(MitlFormula::not(unary(cur)?))
        }
        Tok::LParen => {
            cur.bump();
            let f = expr(cur)?;
            cur.expect(Tok::RParen, "`)`")?;
            Ok(f)
        }
        Tok::Ident(w) => match w.as_str() {
            "F" | "G" => {
                cur.bump();
                let i = suffix(cur)?;
                let c = unary(cur)?;
                Ok(if w == "F" { MitlFormula::finally(i, c) } else { MitlFormula::globally(i, c) })
            }
            "true" => {
                cur.bump();
                Ok(MitlFormula::Top)
            }
            "false" => {
                cur.bump();
                Ok(MitlFormula::bottom())
            }
            _ => Ok(MitlFormula::Atom(cur.name("an atom")?)),
        },
        _ => Err(cur.unexpected("a formula").into()),
    }
}
