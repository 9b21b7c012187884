//! Polynomial text syntax: `x^3 + y^3 + z^3`, `2*x*y - z^2`, `2x(y+1)^2`.
//! Coefficients are integers reduced mod p; `*` is optional.

use std::fmt;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::RingContext;

pub(super) fn write_polynomial(
    f: &mut fmt::Formatter<'_>,
    ring: &RingContext,
    terms: &[(Monomial, u32)],
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (m, c)) in terms.iter().enumerate() {
        if i > 0 {
            write!(f, " + ")?;
        }
        let mut factors: Vec<String> = Vec::new();
        if *c != 1 || m.is_one() {
            factors.push(c.to_string());
        }
        for (name, &e) in ring.names().iter().zip(m.exponents()) {
            match e {
                0 => {}
                1 => factors.push(name.clone()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    ring: &'a RingContext,
}

pub(super) fn parse(ring: &RingContext, src: &str) -> Result<Polynomial> {
    let mut p = Parser {
        src,
        bytes: src.as_bytes(),
        pos: 0,
        ring,
    };
    p.skip_ws();
    if p.pos == p.bytes.len() {
        return Err(p.error("empty polynomial"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error(format!("unexpected `{}`", &src[p.pos..])));
    }
    Ok(value)
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse_at(self.src, self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.checked_mul(&f)?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'_' || c == b'(' => {
                    let f = self.factor()?;
                    acc = acc.checked_mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected a natural exponent after `^`"));
            }
            let e: u64 = self.src[start..self.pos]
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.ring.p() as u64;
                let mut value = 0u64;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    value = (value * 10 + (self.bytes[self.pos] - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(Polynomial::constant(self.ring, value as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                match self.ring.variable_index(name) {
                    Some(i) => Ok(Polynomial::variable(self.ring, i)),
                    None => {
                        self.pos = start;
                        Err(self.error(format!("unknown variable `{name}`")))
                    }
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
