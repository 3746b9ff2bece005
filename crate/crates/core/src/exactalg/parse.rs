//! Parser for the polynomial text grammar shared by the CLI, the JSON inputs
//! and the Python bindings.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary | unary)*      juxtaposition multiplies
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' integer)?
//! primary := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, so `a/b` coefficients and
//! `(10*t^7 + 11*t^8)/3` both parse.

use num_bigint::BigInt;

use super::poly::MultiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = chars[st..i].iter().collect();
            out.push(Tok::Num(txt.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            if c == '*' && i + 1 < chars.len() && chars[i + 1] == '*' {
                out.push(Tok::Op('^'));
                i += 2;
                continue;
            }
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: Vec<String>,
    fixed: bool,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at token {} in `{}`", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if !rhs.is_constant() || rhs.is_zero() {
                        return Err(self.err("division by a non-constant or zero"));
                    }
                    acc = acc.scale(&rhs.constant_term().recip());
                }
                Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.primary()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(&self.vars, Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if !self.vars.contains(&name) {
                    if self.fixed {
                        return Err(Error::Parse(format!(
                            "unknown variable `{name}` in `{}` (expected one of {})",
                            self.src,
                            self.vars.join(",")
                        )));
                    }
                    self.vars.push(name.clone());
                }
                Ok(MultiPoly::var(&self.vars, &name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("expected `)`")),
                }
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

fn run(s: &str, vars: Vec<String>, fixed: bool) -> Result<MultiPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0, vars, fixed, src: s };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    let vars = p.vars.clone();
    out.with_vars(&vars)
}

/// Parses over exactly the given variables.
pub fn parse_poly_in<S: AsRef<str>>(s: &str, vars: &[S]) -> Result<MultiPoly> {
    run(s, vars.iter().map(|v| v.as_ref().to_string()).collect(), true)
}

/// Parses, collecting variables: `base` first, then new identifiers in
/// order of appearance.
pub fn parse_poly_extending<S: AsRef<str>>(s: &str, base: &[S]) -> Result<MultiPoly> {
    run(s, base.iter().map(|v| v.as_ref().to_string()).collect(), false)
}

pub fn parse_poly(s: &str) -> Result<MultiPoly> {
    run(s, Vec::new(), false)
}

/// A constant expression such as `-7/3`.
pub fn parse_constant(s: &str) -> Result<Rational> {
    let p = parse_poly(s)?;
    if !p.is_constant() {
        return Err(Error::Parse(format!("expected a rational constant, got `{s}`")));
    }
    Ok(p.constant_term())
}
