//! Recursive-descent parser shared by the cyclotomic and polynomial literal
//! grammars.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/')? unary)*       juxtaposition multiplies
//! unary := ('+' | '-') unary | power
//! power := atom ('^' '-'? INT)?
//! atom  := INT | IDENT | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::cyclo::{CycloField, CycloScalar};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    tok: Tok,
    col: usize,
}

pub(crate) fn tokenize(s: &str) -> Result<Vec<Token>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let v: BigInt = s[start..i].parse().expect("digits");
            out.push(Token { tok: Tok::Int(v), col });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(s[start..i].to_string()),
                col,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(Error::Parse(format!("unexpected character `{c}` at column {col}"))),
        };
        out.push(Token { tok, col });
        i += 1;
    }
    Ok(out)
}

pub(crate) trait ExprAlgebra {
    type Value;
    fn number(&self, n: BigInt) -> Result<Self::Value>;
    fn ident(&self, name: &str, col: usize) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value>;
    fn pow(&self, a: Self::Value, e: i64) -> Result<Self::Value>;
    /// Contents of a parenthesized group.
    fn group(&self, tokens: &[Token]) -> Result<Self::Value>;
}

struct Parser<'a, A: ExprAlgebra> {
    alg: &'a A,
    toks: &'a [Token],
    pos: usize,
}

impl<'a, A: ExprAlgebra> Parser<'a, A> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(0, |t| t.col)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        match self.toks.get(self.pos) {
            Some(t) => Err(Error::Parse(format!("{msg} at column {}", t.col))),
            None => Err(Error::Parse(format!("{msg} at end of input"))),
        }
    }

    fn expr(&mut self) -> Result<A::Value> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.add(acc, t)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.sub(acc, t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<A::Value> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = self.alg.mul(acc, f)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = self.alg.div(acc, f)?;
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.power()?;
                    acc = self.alg.mul(acc, f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<A::Value> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let v = self.unary()?;
                self.alg.neg(v)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<A::Value> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek().cloned() {
            Some(Tok::Int(e)) => {
                self.pos += 1;
                let e: i64 = i64::try_from(&e).map_err(|_| Error::Parse("exponent too large".into()))?;
                self.alg.pow(base, if negative { -e } else { e })
            }
            _ => self.err("expected integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<A::Value> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                self.alg.number(v)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.alg.ident(&name, col)
            }
            Some(Tok::LParen) => {
                let start = self.pos + 1;
                let mut depth = 0usize;
                let mut end = None;
                for (k, t) in self.toks[self.pos..].iter().enumerate() {
                    match t.tok {
                        Tok::LParen => depth += 1,
                        Tok::RParen => {
                            depth -= 1;
                            if depth == 0 {
                                end = Some(self.pos + k);
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                let Some(end) = end else {
                    return self.err("unbalanced parenthesis");
                };
                if end == start {
                    return self.err("empty parentheses");
                }
                let v = self.alg.group(&self.toks[start..end])?;
                self.pos = end + 1;
                Ok(v)
            }
            _ => self.err("expected a number, symbol or `(`"),
        }
    }
}

pub(crate) fn parse_tokens<A: ExprAlgebra>(alg: &A, toks: &[Token]) -> Result<A::Value> {
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { alg, toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return p.err("unexpected token");
    }
    Ok(v)
}

struct CycloAlgebra {
    field: &'static CycloField,
}

impl ExprAlgebra for CycloAlgebra {
    type Value = CycloScalar;

    fn number(&self, n: BigInt) -> Result<CycloScalar> {
        Ok(self.field.bigint(n))
    }

    fn ident(&self, name: &str, col: usize) -> Result<CycloScalar> {
        if name == "z" {
            Ok(self.field.zeta_pow(1))
        } else {
            Err(Error::Parse(format!("unknown symbol `{name}` at column {col}")))
        }
    }

    fn add(&self, a: CycloScalar, b: CycloScalar) -> Result<CycloScalar> {
        a.checked_add(&b)
    }

    fn sub(&self, a: CycloScalar, b: CycloScalar) -> Result<CycloScalar> {
        a.checked_sub(&b)
    }

    fn mul(&self, a: CycloScalar, b: CycloScalar) -> Result<CycloScalar> {
        a.checked_mul(&b)
    }

    fn div(&self, a: CycloScalar, b: CycloScalar) -> Result<CycloScalar> {
        a.checked_div(&b)
    }

    fn neg(&self, a: CycloScalar) -> Result<CycloScalar> {
        Ok(-a)
    }

    fn pow(&self, a: CycloScalar, e: i64) -> Result<CycloScalar> {
        let p = a.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    fn group(&self, tokens: &[Token]) -> Result<CycloScalar> {
        parse_tokens(self, tokens)
    }
}

/// Parse a cyclotomic literal; `z` denotes ζ_n.
pub fn parse_cyclo(field: &'static CycloField, s: &str) -> Result<CycloScalar> {
    let toks = tokenize(s)?;
    parse_tokens(&CycloAlgebra { field }, &toks)
}

/// Variable name for index `i` in an `nvars`-variable ring.
pub fn var_name(i: usize, nvars: usize) -> String {
    if nvars <= 4 {
        ["x", "y", "z", "w"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

struct PolyAlgebra {
    field: &'static CycloField,
    nvars: usize,
}

impl PolyAlgebra {
    fn var_index(&self, name: &str) -> Option<usize> {
        if self.nvars <= 4 {
            if let Some(i) = ["x", "y", "z", "w"].iter().position(|v| *v == name) {
                return (i < self.nvars).then_some(i);
            }
        }
        let idx: usize = name.strip_prefix('x')?.parse().ok()?;
        (idx >= 1 && idx <= self.nvars).then(|| idx - 1)
    }
}

impl ExprAlgebra for PolyAlgebra {
    type Value = Poly;

    fn number(&self, n: BigInt) -> Result<Poly> {
        Ok(Poly::constant(self.nvars, self.field.bigint(n)))
    }

    fn ident(&self, name: &str, col: usize) -> Result<Poly> {
        match self.var_index(name) {
            Some(i) => Ok(Poly::var(self.nvars, self.field, i)),
            None => Err(Error::Parse(format!("unknown variable `{name}` at column {col}"))),
        }
    }

    fn add(&self, a: Poly, b: Poly) -> Result<Poly> {
        Ok(&a + &b)
    }

    fn sub(&self, a: Poly, b: Poly) -> Result<Poly> {
        Ok(&a - &b)
    }

    fn mul(&self, a: Poly, b: Poly) -> Result<Poly> {
        Ok(&a * &b)
    }

    fn div(&self, a: Poly, b: Poly) -> Result<Poly> {
        match b.as_constant() {
            Some(c) => Ok(a.scale(&c.inv()?)),
            None => Err(Error::Parse("division by a non-constant polynomial".into())),
        }
    }

    fn neg(&self, a: Poly) -> Result<Poly> {
        Ok(-&a)
    }

    fn pow(&self, a: Poly, e: i64) -> Result<Poly> {
        if e < 0 {
            let c = a
                .as_constant()
                .ok_or_else(|| Error::Parse("negative power of a non-constant polynomial".into()))?;
            return Ok(Poly::constant(self.nvars, c.inv()?.pow(e.unsigned_abs() as u32)));
        }
        Ok(a.pow(e as u32))
    }

    fn group(&self, tokens: &[Token]) -> Result<Poly> {
        // Parenthesized groups are cyclotomic literals when they parse as one.
        if let Ok(c) = parse_tokens(&CycloAlgebra { field: self.field }, tokens) {
            return Ok(Poly::constant(self.nvars, c));
        }
        parse_tokens(self, tokens)
    }
}

/// Parse a polynomial literal in `nvars` variables over Q(ζ_n).
pub fn parse_poly(field: &'static CycloField, nvars: usize, s: &str) -> Result<Poly> {
    let toks = tokenize(s)?;
    parse_tokens(&PolyAlgebra { field, nvars }, &toks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclo_literals() {
        let f = CycloField::get(3).unwrap();
        assert_eq!(parse_cyclo(f, "z^2").unwrap(), parse_cyclo(f, "-1-z").unwrap());
        assert_eq!(parse_cyclo(f, " 1 + 2 z ").unwrap(), parse_cyclo(f, "1+2*z").unwrap());
        assert_eq!(parse_cyclo(f, "z^-1").unwrap(), parse_cyclo(f, "z^2").unwrap());
        assert_eq!(parse_cyclo(f, "(1-z)/3").unwrap().to_string(), "1/3-1/3z");
        assert!(parse_cyclo(f, "x").is_err());
        assert!(parse_cyclo(f, "1+").is_err());
        assert!(parse_cyclo(f, "(1").is_err());
        assert!(parse_cyclo(f, "1/0").is_err());
    }

    #[test]
    fn polynomial_literals() {
        let f = CycloField::get(3).unwrap();
        let p = parse_poly(f, 4, "(1+z)*x^2*y - 3*x*w").unwrap();
        assert_eq!(p.to_string(), "(1+z)*x^2*y - 3*x*w");
        let q = parse_poly(f, 3, "(x+y)^2").unwrap();
        assert_eq!(q.to_string(), "x^2 + 2*x*y + y^2");
        let r = parse_poly(f, 5, "x1*x5 + 1/2").unwrap();
        assert_eq!(r.to_string(), "x1*x5 + 1/2");
        assert!(parse_poly(f, 2, "z").is_err());
        assert!(parse_poly(f, 2, "x/y").is_err());
    }
}
