//! Polynomial expressions.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := "-"? factor ("*" factor)*
//! factor   := atom ("^" uint)?
//! atom     := rational | identifier | "(" expr ")"
//! rational := int ("/" uint)?
//! ```
//!
//! Products are noncommutative and left-associative. Identifiers resolve to
//! parameters first, then to generators.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::freealg::{Field, NCPoly, Scalar};

/// Deepest parenthesis nesting accepted.
pub const MAX_DEPTH: usize = 256;
/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;
/// Largest number of terms any intermediate polynomial may reach.
pub const MAX_TERMS: usize = 100_000;
const MAX_DIGITS: usize = 1_000;

/// A parse failure at a 1-based character column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(s) => write!(f, "number `{s}`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i - start > MAX_DIGITS {
                return Err(ParseError { column: col, message: "number literal is too long".into() });
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(ParseError { column: col, message: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// Whether `name` is a valid identifier of the expression language.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
    vars: &'a [String],
    params: &'a BTreeMap<String, Scalar>,
    field: Field,
}

/// Parses `text` into a polynomial in the generators `vars`.
pub fn parse_expr(
    text: &str,
    vars: &[String],
    params: &BTreeMap<String, Scalar>,
    field: Field,
) -> Result<NCPoly, ParseError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0, depth: 0, vars, params, field };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => Err(p.error(format!("unexpected {t}"))),
    }
}

/// Parses a scalar: an expression without generators.
pub fn parse_scalar(text: &str, params: &BTreeMap<String, Scalar>, field: Field) -> Result<Scalar, ParseError> {
    let p = parse_expr(text, &[], params, field)?;
    match p.degree() {
        None => Ok(field.zero()),
        Some(0) => Ok(p.coeff(&crate::freealg::Word::empty())),
        Some(_) => Err(ParseError { column: 1, message: "expected a constant".into() }),
    }
}

impl Parser<'_> {
    fn n(&self) -> usize {
        self.vars.len()
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn error(&self, message: String) -> ParseError {
        ParseError { column: self.column(), message }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<NCPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            self.bump();
            let col = self.column();
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            self.check_size(&acc, col)?;
        }
    }

    fn term(&mut self) -> Result<NCPoly, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let col = self.column();
            let f = self.factor()?;
            acc = self.product(&acc, &f, col)?;
        }
        Ok(if negate { -&acc } else { acc })
    }

    fn factor(&mut self) -> Result<NCPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let col = self.column();
        let e = match self.bump() {
            Tok::Num(s) => s
                .parse::<u32>()
                .ok()
                .filter(|e| *e <= MAX_EXPONENT)
                .ok_or_else(|| ParseError { column: col, message: format!("exponent must be at most {MAX_EXPONENT}") })?,
            t => return Err(ParseError { column: col, message: format!("expected an exponent, found {t}") }),
        };
        let mut acc = NCPoly::one(self.n(), self.field);
        for _ in 0..e {
            acc = self.product(&acc, &base, col)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<NCPoly, ParseError> {
        let col = self.column();
        match self.bump() {
            Tok::Num(num) => {
                let mut value = BigRational::from_integer(num.parse::<BigInt>().expect("digits"));
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dcol = self.column();
                    let den = match self.bump() {
                        Tok::Num(d) => d.parse::<BigInt>().expect("digits"),
                        t => {
                            return Err(ParseError { column: dcol, message: format!("expected a denominator, found {t}") })
                        }
                    };
                    if den == BigInt::from(0) {
                        return Err(ParseError { column: dcol, message: "division by zero".into() });
                    }
                    value /= BigRational::from_integer(den);
                }
                let c = self
                    .field
                    .from_rational(&value)
                    .map_err(|e| ParseError { column: col, message: e.to_string() })?;
                Ok(NCPoly::constant(self.n(), c))
            }
            Tok::Ident(name) => {
                if let Some(c) = self.params.get(&name) {
                    Ok(NCPoly::constant(self.n(), c.clone()))
                } else if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    Ok(NCPoly::var(self.n(), self.field, i))
                } else {
                    Err(ParseError { column: col, message: format!("unknown identifier `{name}`") })
                }
            }
            Tok::LParen => {
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(ParseError { column: col, message: format!("nesting deeper than {MAX_DEPTH}") });
                }
                let e = self.expr()?;
                self.depth -= 1;
                let rcol = self.column();
                match self.bump() {
                    Tok::RParen => Ok(e),
                    t => Err(ParseError { column: rcol, message: format!("expected `)`, found {t}") }),
                }
            }
            t => Err(ParseError { column: col, message: format!("unexpected {t}") }),
        }
    }

    fn product(&self, a: &NCPoly, b: &NCPoly, col: usize) -> Result<NCPoly, ParseError> {
        if a.num_terms().saturating_mul(b.num_terms()) > MAX_TERMS {
            return Err(ParseError { column: col, message: "expression is too large".into() });
        }
        Ok(a * b)
    }

    fn check_size(&self, p: &NCPoly, col: usize) -> Result<(), ParseError> {
        if p.num_terms() > MAX_TERMS {
            return Err(ParseError { column: col, message: "expression is too large".into() });
        }
        Ok(())
    }
}
