//! Text form of polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := INT | VAR ('^' INT)?
//! ```
//!
//! Whitespace is ignored. Integer literals are reduced modulo the
//! characteristic. The optional leading `-` is an extension; rendered output
//! never uses it.

use std::sync::Arc;

use super::{Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> &'a [u8] {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let k = self.ring.field();
        let mut acc = Polynomial::zero(self.ring);
        let mut sign = 1u32;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = k.modulus() - 1;
        }
        loop {
            let (m, c) = self.term()?;
            acc = acc.add_scaled(&Polynomial::monomial(self.ring, m, c), sign, &Monomial::one(self.ring.nvars()));
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = k.modulus() - 1,
                None => return Ok(acc),
                Some(c) => return self.err(format!("unexpected character `{}`", c as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Monomial, u32)> {
        let k = self.ring.field();
        let mut mono = Monomial::one(self.ring.nvars());
        let mut coeff = 1u32 % k.modulus();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let lit = self.digits();
                    let mut v = 0u32;
                    for &d in lit {
                        v = k.add(k.mul(v, 10 % k.modulus()), (d - b'0') as u32 % k.modulus());
                    }
                    coeff = k.mul(coeff, v);
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let idx = self
                        .ring
                        .var_index(name)
                        .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let lit = self.digits();
                        if lit.is_empty() {
                            return self.err("expected exponent after `^`");
                        }
                        e = std::str::from_utf8(lit)
                            .unwrap()
                            .parse()
                            .or_else(|_| self.err("exponent too large"))?;
                    }
                    let cur = mono.exponent(idx);
                    let new = cur.checked_add(e).map_or_else(|| self.err("exponent too large"), Ok)?;
                    mono.set_exponent(idx, new);
                }
                Some(c) => return self.err(format!("expected a number or variable, found `{}`", c as char)),
                None => return self.err("unexpected end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((mono, coeff));
            }
        }
    }
}

/// Parses a polynomial over `ring`.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    p.expr()
}

/// Parses a comma-separated list of polynomials (the CLI ideal argument).
pub fn parse_poly_list(text: &str, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let p = parse_poly(piece, ring).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax { pos: pos + offset, msg },
            other => other,
        })?;
        out.push(p);
        offset += piece.len() + 1;
    }
    Ok(out)
}
