//! Text syntax for scalars, polynomials and plane maps.
//!
//! ```text
//! endo   := '(' expr ',' expr ')'
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x1' | 'x2' | 'z' '(' integer ')' | '(' expr ')'
//! ```
//!
//! `z(m)` is `e^(2 pi i / m)` for a prime power `m`; one expression may use a
//! single prime only. Division is allowed by nonzero constants.

use num_bigint::BigInt;

use crate::arith::{prime_power_decomposition, Cyclotomic, Rational, RootOfUnity};
use crate::endo::PlaneEndo;
use crate::error::{Error, Result};
use crate::poly::SparsePoly;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&ch) = chars.peek() {
        let pos = Pos { line, column };
        if ch == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(d);
                chars.next();
                column += 1;
            }
            out.push((Tok::Int(digits.parse().unwrap()), pos));
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let mut ident = String::new();
            while let Some(&d) = chars
                .peek()
                .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
            {
                ident.push(d);
                chars.next();
                column += 1;
            }
            out.push((Tok::Ident(ident), pos));
            continue;
        }
        let tok = match ch {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
        };
        chars.next();
        column += 1;
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    prime: Option<u64>,
    allow_vars: bool,
}

impl Parser {
    fn new(text: &str, allow_vars: bool) -> Result<Self> {
        Ok(Self {
            toks: tokenize(text)?,
            at: 0,
            prime: None,
            allow_vars,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let (tok, pos) = self.bump();
        if tok == want {
            Ok(())
        } else {
            Err(syntax(
                pos,
                format!("expected {}, found {}", want.describe(), tok.describe()),
            ))
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.expect(Tok::Eof)
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    let pos = self.bump().1;
                    let divisor = self.unary()?;
                    let c = divisor
                        .as_constant()
                        .ok_or_else(|| syntax(pos, "division by a non-constant"))?;
                    let inv = c.inverse().map_err(|_| syntax(pos, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<SparsePoly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<SparsePoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let e = self.small_int("exponent")?;
        Ok(base.pow(e))
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => {
                u32::try_from(&n).map_err(|_| syntax(pos, format!("{what} {n} is too large")))
            }
            other => Err(syntax(
                pos,
                format!("expected {what}, found {}", other.describe()),
            )),
        }
    }

    fn atom(&mut self) -> Result<SparsePoly> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => Ok(SparsePoly::constant(Rational::from_integer(n).into())),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "x1" | "x2" if !self.allow_vars => Err(syntax(
                    pos,
                    format!("variable `{name}` not allowed in a scalar"),
                )),
                "x1" => Ok(SparsePoly::x1()),
                "x2" => Ok(SparsePoly::x2()),
                "z" => {
                    self.expect(Tok::LParen)?;
                    let m_pos = self.pos();
                    let m = self.small_int("root order")?;
                    self.expect(Tok::RParen)?;
                    Ok(SparsePoly::constant(self.root(m as u64, m_pos)?))
                }
                other => Err(syntax(pos, format!("unknown variable `{other}`"))),
            },
            other => Err(syntax(pos, format!("unexpected {}", other.describe()))),
        }
    }

    fn root(&mut self, m: u64, pos: Pos) -> Result<Cyclotomic> {
        let (p, n) = prime_power_decomposition(m)
            .ok_or_else(|| syntax(pos, format!("z({m}): order must be a prime power")))?;
        if n == 0 {
            return Ok(Cyclotomic::one());
        }
        match self.prime {
            Some(q) if q != p => {
                return Err(syntax(
                    pos,
                    format!("z({m}) mixes prime {p} with prime {q}"),
                ));
            }
            _ => self.prime = Some(p),
        }
        RootOfUnity::primitive(p, n)
            .map(|r| r.to_field())
            .map_err(|e| syntax(pos, e.to_string()))
    }
}

fn into_scalar(poly: SparsePoly) -> Cyclotomic {
    poly.as_constant()
        .expect("variables are rejected while parsing scalars")
}

/// Parse a polynomial in `x1, x2`.
pub fn parse_poly(text: &str) -> Result<SparsePoly> {
    let mut p = Parser::new(text, true)?;
    let f = p.expr()?;
    p.finish()?;
    Ok(f)
}

/// Parse a scalar such as `3/2*z(4)^3`.
pub fn parse_scalar(text: &str) -> Result<Cyclotomic> {
    let mut p = Parser::new(text, false)?;
    let c = p.expr()?;
    p.finish()?;
    Ok(into_scalar(c))
}

/// Parse a comma-separated scalar list; blank input is the empty list.
pub fn parse_scalar_list(text: &str) -> Result<Vec<Cyclotomic>> {
    let mut p = Parser::new(text, false)?;
    if *p.peek() == Tok::Eof {
        return Ok(Vec::new());
    }
    let mut out = vec![into_scalar(p.expr()?)];
    while *p.peek() == Tok::Comma {
        p.bump();
        out.push(into_scalar(p.expr()?));
    }
    p.finish()?;
    Ok(out)
}

/// Parse a plane map `(f1, f2)`.
pub fn parse_endo(text: &str) -> Result<PlaneEndo> {
    let mut p = Parser::new(text, true)?;
    p.expect(Tok::LParen)?;
    let f1 = p.expr()?;
    p.expect(Tok::Comma)?;
    let f2 = p.expr()?;
    p.expect(Tok::RParen)?;
    p.finish()?;
    Ok(PlaneEndo::new(f1, f2))
}

/// Parse a Prüfer element given by its exponent fraction `j/p^n` (or an integer).
pub fn parse_alpha(p: u64, text: &str) -> Result<RootOfUnity> {
    let bad = || Error::Malformed(format!("alpha `{text}` must be a fraction j/{p}^n"));
    let (num, den) = match text.trim().split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    RootOfUnity::from_fraction(p, &num, &den)
}

/// Parse a bit string such as `0110`.
pub fn parse_bits(text: &str) -> Result<Vec<bool>> {
    text.trim()
        .chars()
        .filter(|c| *c != ',' && !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Malformed(format!("`{other}` is not a bit"))),
        })
        .collect()
}
