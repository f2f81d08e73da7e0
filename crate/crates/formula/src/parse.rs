//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! expr   := conj ('|' conj)*
//! conj   := until ('&' until)*
//! until  := unary ('U' unary)?
//! unary  := '!' ident | 'G' unary | 'F' unary | 'X' unary | 'true' | 'false'
//!         | '(' expr ')' | clocks '.' unary | constraint | ident
//! clocks := ident | '{' ident (',' ident)* '}'
//! constraint := ['T' '-'] ident ('<=' | '<' | '>=' | '>') int
//!             | ['T' '-'] ident 'in' interval
//! ```
//!
//! The operands of `U` are unary, so compound operands need parentheses.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;
use tptl_timing::Interval;

use crate::Formula;

const RESERVED: &[&str] = &["U", "G", "F", "X", "T", "true", "false", "in", "inf"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("malformed interval: {0}")]
    MalformedInterval(String),
    #[error("`{0}` is reserved")]
    Reserved(String),
    #[error("chained `U` needs parentheses around the inner until")]
    ChainedUntil,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u32),
    Dot,
    Comma,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Bang,
    Amp,
    Pipe,
    Le,
    Lt,
    Ge,
    Gt,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Eof => write!(f, "end of input"),
            other => {
                let s = match other {
                    Tok::Dot => ".",
                    Tok::Comma => ",",
                    Tok::Minus => "-",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::Bang => "!",
                    Tok::Amp => "&",
                    Tok::Pipe => "|",
                    Tok::Le => "<=",
                    Tok::Lt => "<",
                    Tok::Ge => ">=",
                    Tok::Gt => ">",
                    _ => unreachable!(),
                };
                write!(f, "`{s}`")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, column);
        let mut push = |tok: Tok, width: usize, i: &mut usize, column: &mut usize| {
            out.push(Spanned { tok, line: start.0, column: start.1 });
            *i += width;
            *column += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
            }
            '.' => push(Tok::Dot, 1, &mut i, &mut column),
            ',' => push(Tok::Comma, 1, &mut i, &mut column),
            '-' => push(Tok::Minus, 1, &mut i, &mut column),
            '(' => push(Tok::LParen, 1, &mut i, &mut column),
            ')' => push(Tok::RParen, 1, &mut i, &mut column),
            '[' => push(Tok::LBracket, 1, &mut i, &mut column),
            ']' => push(Tok::RBracket, 1, &mut i, &mut column),
            '{' => push(Tok::LBrace, 1, &mut i, &mut column),
            '}' => push(Tok::RBrace, 1, &mut i, &mut column),
            '!' | '¬' => push(Tok::Bang, 1, &mut i, &mut column),
            '&' | '∧' => push(Tok::Amp, 1, &mut i, &mut column),
            '|' | '∨' => push(Tok::Pipe, 1, &mut i, &mut column),
            '≤' => push(Tok::Le, 1, &mut i, &mut column),
            '≥' => push(Tok::Ge, 1, &mut i, &mut column),
            '⊤' => push(Tok::Ident("true".into()), 1, &mut i, &mut column),
            '⊥' => push(Tok::Ident("false".into()), 1, &mut i, &mut column),
            '∈' => push(Tok::Ident("in".into()), 1, &mut i, &mut column),
            '∞' => push(Tok::Ident("inf".into()), 1, &mut i, &mut column),
            '<' | '>' => {
                let eq = chars.get(i + 1) == Some(&'=');
                let tok = match (c, eq) {
                    ('<', true) => Tok::Le,
                    ('<', false) => Tok::Lt,
                    ('>', true) => Tok::Ge,
                    _ => Tok::Gt,
                };
                push(tok, if eq { 2 } else { 1 }, &mut i, &mut column)
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let digits: String = chars[i..j].iter().collect();
                let n = digits.parse::<u32>().map_err(|_| ParseError {
                    line,
                    column,
                    kind: ParseErrorKind::MalformedInterval(format!("constant {digits} is too large")),
                })?;
                push(Tok::Int(n), j - i, &mut i, &mut column)
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                push(Tok::Ident(word), j - i, &mut i, &mut column)
            }
            other => return Err(ParseError { line, column, kind: ParseErrorKind::UnknownSymbol(other) }),
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, column });
    Ok(out)
}

pub struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Cursor {
    pub fn new(toks: Vec<Spanned>) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, kind: ParseErrorKind) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError { line: s.line, column: s.column, kind }
    }

    pub fn unexpected(&self, expected: &str) -> ParseError {
        self.error(ParseErrorKind::Unexpected { expected: expected.to_string(), found: self.peek().to_string() })
    }

    pub fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    pub fn is_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(w) if w == word)
    }

    /// A non-reserved identifier.
    pub fn name(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(w) if RESERVED.contains(&w.as_str()) => Err(self.error(ParseErrorKind::Reserved(w))),
            Tok::Ident(w) => {
                self.bump();
                Ok(w)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub fn int(&mut self) -> Result<u32, ParseError> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected("an integer constant")),
        }
    }

    /// `[l,u]`, `(l,u)`, mixed brackets, `inf` upper bound.
    pub fn interval(&mut self) -> Result<Interval, ParseError> {
        let lower_closed = match self.peek() {
            Tok::LBracket => true,
            Tok::LParen => false,
            _ => return Err(self.unexpected("`[` or `(` opening an interval")),
        };
        let start = self.pos;
        self.bump();
        let lower = self.int()?;
        self.expect(Tok::Comma, "`,` inside interval")?;
        let upper = if self.is_keyword("inf") {
            self.bump();
            None
        } else {
            Some(self.int()?)
        };
        let upper_closed = match self.peek() {
            Tok::RBracket => true,
            Tok::RParen => false,
            _ => return Err(self.unexpected("`]` or `)` closing an interval")),
        };
        self.bump();
        Interval::new(lower, upper, lower_closed, upper_closed).map_err(|e| {
            let s = &self.toks[start];
            ParseError { line: s.line, column: s.column, kind: ParseErrorKind::MalformedInterval(e.to_string()) }
        })
    }

    /// Comparison or membership following a clock name.
    pub fn constraint_tail(&mut self) -> Result<Interval, ParseError> {
        let op = self.bump();
        match op {
            Tok::Le => Ok(Interval::at_most(self.int()?)),
            Tok::Lt => {
                let k = self.int()?;
                Ok(Interval::below(k))
            }
            Tok::Ge => Ok(Interval::at_least(self.int()?)),
            Tok::Gt => Ok(Interval::above(self.int()?)),
            Tok::Ident(w) if w == "in" => self.interval(),
            _ => unreachable!("caller checked for a constraint operator"),
        }
    }

    pub fn at_constraint_op(&self, k: usize) -> bool {
        matches!(self.peek_at(k), Tok::Le | Tok::Lt | Tok::Ge | Tok::Gt)
            || matches!(self.peek_at(k), Tok::Ident(w) if w == "in")
    }

    /// `x` or `{x,y}` followed by `.`.
    pub fn clock_set(&mut self) -> Result<BTreeSet<String>, ParseError> {
        let mut clocks = BTreeSet::new();
        if *self.peek() == Tok::LBrace {
            self.bump();
            clocks.insert(self.name("a clock name")?);
            while *self.peek() == Tok::Comma {
                self.bump();
                clocks.insert(self.name("a clock name")?);
            }
            self.expect(Tok::RBrace, "`}` closing the clock set")?;
        } else {
            clocks.insert(self.name("a clock name")?);
        }
        self.expect(Tok::Dot, "`.` after the frozen clocks")?;
        Ok(clocks)
    }
}

pub fn parse_tptl(text: &str) -> Result<Formula, ParseError> {
    let mut cur = Cursor::new(lex(text)?);
    let f = expr(&mut cur)?;
    if *cur.peek() != Tok::Eof {
        return Err(cur.unexpected("an operator or end of input"));
    }
    Ok(f)
}

fn expr(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let mut f = conj(cur)?;
    while *cur.peek() == Tok::Pipe {
        cur.bump();
        f = Formula::or(f, conj(cur)?);
    }
    Ok(f)
}

fn conj(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let mut f = until(cur)?;
    while *cur.peek() == Tok::Amp {
        cur.bump();
        f = Formula::and(f, until(cur)?);
    }
    Ok(f)
}

fn until(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let l = unary(cur)?;
    if !cur.is_keyword("U") {
        return Ok(l);
    }
    cur.bump();
    let r = unary(cur)?;
    if cur.is_keyword("U") {
        return Err(cur.error(ParseErrorKind::ChainedUntil));
    }
    Ok(Formula::until(l, r))
}

fn unary(cur: &mut Cursor) -> Result<Formula, ParseError> {
    match cur.peek().clone() {
        Tok::Bang => {
            cur.bump();
            Ok(Formula::NegAtom(cur.name("an atom after `!`")?))
        }
        Tok::LParen => {
            cur.bump();
            let f = expr(cur)?;
            cur.expect(Tok::RParen, "`)`")?;
            Ok(f)
        }
        Tok::LBrace => {
            let clocks = cur.clock_set()?;
            Ok(Formula::Freeze(clocks, Box::new(unary(cur)?)))
        }
        Tok::Ident(w) => match w.as_str() {
            "G" => {
                cur.bump();
                Ok(Formula::globally(unary(cur)?))
            }
            "F" => {
                cur.bump();
                Ok(Formula::finally(unary(cur)?))
            }
            "X" => {
                cur.bump();
                Ok(Formula::next(unary(cur)?))
            }
            "true" => {
                cur.bump();
                Ok(Formula::Top)
            }
            "false" => {
                cur.bump();
                Ok(Formula::Bottom)
            }
            "T" => {
                if *cur.peek_at(1) != Tok::Minus {
                    return Err(cur.error(ParseErrorKind::Reserved("T".into())));
                }
                cur.bump();
                cur.bump();
                let clock = cur.name("a clock after `T-`")?;
                if !cur.at_constraint_op(0) {
                    return Err(cur.unexpected("a comparison or `in` after `T-clock`"));
                }
                Ok(Formula::Constraint(clock, cur.constraint_tail()?))
            }
            _ if cur.at_constraint_op(1) => {
                let clock = cur.name("a clock name")?;
                Ok(Formula::Constraint(clock, cur.constraint_tail()?))
            }
            _ if *cur.peek_at(1) == Tok::Dot => {
                let clocks = cur.clock_set()?;
                Ok(Formula::Freeze(clocks, Box::new(unary(cur)?)))
            }
            _ => Ok(Formula::Atom(cur.name("an atom")?)),
        },
        _ => Err(cur.unexpected("a formula")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_tptl(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn nested_until_under_freeze() {
        let f = p("x.(a U (b U (c & x in [1,2])))");
        let Formula::Freeze(clocks, body) = &f else { panic!("expected freeze, got {f:?}") };
        assert_eq!(clocks.len(), 1);
        assert!(matches!(**body, Formula::Until(..)));
    }

    #[test]
    fn bare_t_is_rejected() {
        let err = parse_tptl("T").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
        assert_eq!(err.kind, ParseErrorKind::Reserved("T".into()));
    }

    #[test]
    fn running_example_shape() {
        let f = p("G(!a | x.(F(a & x<=2 & y.X(b & x<=3 & y<=2))))");
        let expected = Formula::globally(Formula::or(
            Formula::neg_atom("a"),
            Formula::freeze(
                "x",
                Formula::finally(Formula::and(
                    Formula::and(Formula::atom("a"), Formula::constraint("x", Interval::at_most(2))),
                    Formula::freeze(
                        "y",
                        Formula::next(Formula::and(
                            Formula::and(Formula::atom("b"), Formula::constraint("x", Interval::at_most(3))),
                            Formula::constraint("y", Interval::at_most(2)),
                        )),
                    ),
                )),
            ),
        ));
        assert_eq!(f, expected);
    }

    #[test]
    fn constraint_spellings() {
        assert_eq!(p("x<3"), Formula::constraint("x", Interval::below(3)));
        assert_eq!(p("x>1"), Formula::constraint("x", Interval::above(1)));
        assert_eq!(p("T-x >= 5"), Formula::constraint("x", Interval::at_least(5)));
        assert_eq!(p("x in (1,inf)"), Formula::constraint("x", Interval::above(1)));
        assert_eq!(p("x ∈ [0,1)"), Formula::constraint("x", Interval::below(1)));
    }

    #[test]
    fn until_binds_tighter_than_and() {
        assert_eq!(
            p("a & b U (c | d)"),
            Formula::and(Formula::atom("a"), Formula::until(Formula::atom("b"), Formula::or(Formula::atom("c"), Formula::atom("d"))))
        );
    }

    #[test]
    fn chained_until_needs_parentheses() {
        assert_eq!(parse_tptl("a U b U c").unwrap_err().kind, ParseErrorKind::ChainedUntil);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_tptl("a &\n  (b | )").unwrap_err();
        assert_eq!((err.line, err.column), (2, 8));
        let err = parse_tptl("a # b").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownSymbol('#'));
        assert!(matches!(parse_tptl("x in [3,1]").unwrap_err().kind, ParseErrorKind::MalformedInterval(_)));
    }

    #[test]
    fn set_freeze() {
        assert_eq!(p("{x,y}.F(a)"), Formula::freeze_all(["x", "y"], Formula::finally(Formula::atom("a"))));
    }
}
