//! Text form of polynomials over Q(i).
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*        '/' only by nonzero constants
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'i' | variable | '(' expr ')'
//! ```
//!
//! Variables are `z1..zN`, the aliases `z, w` when `N = 2`, or any custom
//! names supplied through [`VarNames`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Monomial, MonomialOrder, MultiPoly};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Variable names used for parsing and rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames(Vec<String>);

impl VarNames {
    /// `z1, …, zN`.
    pub fn standard(nvars: usize) -> Self {
        Self((1..=nvars).map(|i| format!("z{i}")).collect())
    }

    pub fn new(names: Vec<String>) -> Result<Self> {
        for (k, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || n == "i" || names[..k].contains(n) {
                return Err(Error::Precondition(format!("invalid variable name `{n}`")));
            }
        }
        Ok(Self(names))
    }

    /// Comma separated list such as `"z,w"`.
    pub fn parse_list(text: &str) -> Result<Self> {
        Self::new(text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    fn lookup(&self, ident: &str) -> Option<usize> {
        if let Some(k) = self.0.iter().position(|n| n == ident) {
            return Some(k);
        }
        let n = self.0.len();
        if let Some(rest) = ident.strip_prefix('z') {
            if let Ok(k) = rest.parse::<usize>() {
                if (1..=n).contains(&k) && !rest.starts_with('0') {
                    return Some(k - 1);
                }
            }
        }
        if n == 2 {
            match ident {
                "z" => return Some(0),
                "w" => return Some(1),
                _ => {}
            }
        }
        None
    }
}

/// Parses one polynomial in `nvars` standard variables.
pub fn parse_poly(text: &str, nvars: usize) -> Result<MultiPoly<GaussianRational>> {
    parse_poly_with(text, &VarNames::standard(nvars))
}

pub fn parse_poly_with(text: &str, names: &VarNames) -> Result<MultiPoly<GaussianRational>> {
    let mut p = Parser::new(text, names);
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(e)
}

/// Parses a comma separated list of polynomials, e.g. `"z^2, z*w, w^2"`.
pub fn parse_poly_list(text: &str, names: &VarNames) -> Result<Vec<MultiPoly<GaussianRational>>> {
    let mut p = Parser::new(text, names);
    let mut out = Vec::new();
    loop {
        p.skip_ws();
        out.push(p.expr()?);
        p.skip_ws();
        match p.peek() {
            Some(b',') => p.pos += 1,
            None => break,
            Some(_) => return Err(p.error("expected `,` or end of input")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    names: &'a VarNames,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, names: &'a VarNames) -> Self {
        Self { src: text.as_bytes(), text, pos: 0, names }
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn error_at(&self, offset: usize, message: &str) -> Error {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = offset - before.rfind('\n').map_or(0, |k| k + 1) + 1;
        Error::Parse { line, column, offset, message: message.to_string() }
    }

    fn error(&self, message: &str) -> Error {
        self.error_at(self.pos, message)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<MultiPoly<GaussianRational>> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly<GaussianRational>> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.error_at(at, "divisor must be a nonzero constant"));
                    }
                    acc = acc.scale(&(GaussianRational::from(1) / d.constant_term()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly<GaussianRational>> {
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly<GaussianRational>> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            let k: u32 = digits.parse().map_err(|_| self.error_at(at, "exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn atom(&mut self) -> Result<MultiPoly<GaussianRational>> {
        self.skip_ws();
        let n = self.nvars();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let v: BigInt = d.parse().expect("digit run");
                Ok(MultiPoly::constant(n, GaussianRational::real(BigRational::from_integer(v))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let ident = &self.text[start..self.pos];
                if ident == "i" {
                    return Ok(MultiPoly::constant(n, GaussianRational::i()));
                }
                match self.names.lookup(ident) {
                    Some(k) => Ok(MultiPoly::var(n, k)),
                    None => Err(self.error_at(start, &format!("unknown variable `{ident}`"))),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
        }
    }
}

/// Canonical rendering: terms in descending grevlex order, coefficients in the
/// grammar above. `parse(render(p)) == p` for every polynomial.
pub fn render(p: &MultiPoly<GaussianRational>, names: &VarNames) -> String {
    assert_eq!(p.nvars(), names.len(), "name list does not match variable count");
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.sorted_terms(MonomialOrder::GrevLex).into_iter().enumerate() {
        let negative = if c.re.is_zero() { c.im.is_negative() } else { c.re.is_negative() };
        let a = if negative { -c.clone() } else { c.clone() };
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mono = render_monomial(m, names);
        let unit = a == GaussianRational::from(1);
        match (unit, mono.is_empty()) {
            (true, true) => out.push('1'),
            (true, false) => out.push_str(&mono),
            (false, true) => out.push_str(&a.to_string()),
            (false, false) => {
                out.push_str(&a.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}

fn render_monomial(m: &Monomial, names: &VarNames) -> String {
    let mut parts = Vec::new();
    for (name, &e) in names.names().iter().zip(m.exps()) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly<GaussianRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, &VarNames::standard(self.nvars())))
    }
}
