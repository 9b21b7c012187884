//! Text form of formal sums and fractional polynomials:
//! `2 * x1^(-1/8) * x2^(-3) + family(e){ x1^(-1/p^e) * x2^(-e) }`.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use super::{CoordFamily, Family, FormalSum, FracExponent, FracPolynomial, FracVector, Q};
use crate::error::{Error, Result};
use crate::field::Fp;

/// `a·e + b + g/p^e`.
#[derive(Clone, Copy, Debug)]
struct Lin {
    a: Q,
    b: Q,
    g: Q,
}

impl Lin {
    fn constant(b: Q) -> Self {
        Lin {
            a: Q::zero(),
            b,
            g: Q::zero(),
        }
    }

    fn is_constant(&self) -> bool {
        self.a.is_zero() && self.g.is_zero()
    }

    fn scale(self, k: Q) -> Self {
        Lin {
            a: self.a * k,
            b: self.b * k,
            g: self.g * k,
        }
    }
}

enum Val {
    Lin(Lin),
    /// `p^e`
    PowE,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    p: u32,
    names: &'a [String],
    index: Option<&'a str>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse_at(self.src, self.pos, msg)
    }

    fn ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .char_indices()
            .take_while(|(i, c)| c.is_ascii_alphabetic() || c == &'_' || (*i > 0 && c.is_ascii_digit()))
            .count();
        (len > 0).then(|| {
            self.pos += len;
            &rest[..len]
        })
    }

    fn integer(&mut self) -> Result<i128> {
        self.ws();
        let rest = &self.src[self.pos..];
        let len = rest.chars().take_while(char::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected an integer"));
        }
        self.pos += len;
        rest[..len].parse().map_err(|_| self.err("integer out of range"))
    }

    fn is_index(&self, s: &str) -> bool {
        self.index == Some(s)
    }

    fn factor(&mut self) -> Result<Val> {
        if self.eat('(') {
            let v = self.expr()?;
            self.expect(')')?;
            return Ok(Val::Lin(v));
        }
        let start = self.pos;
        let base: Result<Q> = match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Q::from_integer(self.integer()?)),
            _ => match self.ident() {
                Some("p") => Ok(Q::from_integer(self.p as i128)),
                Some(s) if self.is_index(s) => {
                    return Ok(Val::Lin(Lin {
                        a: Q::from_integer(1),
                        b: Q::zero(),
                        g: Q::zero(),
                    }))
                }
                _ => {
                    self.pos = start;
                    Err(self.err("expected a number, `p` or the family index"))
                }
            },
        };
        let base = base?;
        if !self.eat('^') {
            return Ok(Val::Lin(Lin::constant(base)));
        }
        if let Some(c) = self.peek() {
            if !c.is_ascii_digit() {
                let at = self.pos;
                let id = self.ident();
                if id.is_some_and(|s| self.is_index(s)) {
                    if base != Q::from_integer(self.p as i128) {
                        self.pos = at;
                        return Err(self.err("only p may be raised to the family index"));
                    }
                    return Ok(Val::PowE);
                }
                self.pos = at;
                return Err(self.err("expected an exponent"));
            }
        }
        let k = self.integer()?;
        let k = u32::try_from(k).map_err(|_| self.err("exponent too large"))?;
        let v = base.numer().checked_pow(k).ok_or_else(|| self.err("power overflows"))?;
        Ok(Val::Lin(Lin::constant(Q::from_integer(v))))
    }

    fn term(&mut self) -> Result<Lin> {
        let first = self.factor()?;
        let mut acc = match first {
            Val::Lin(l) => l,
            Val::PowE => return Err(self.err("p^e may only appear as a denominator")),
        };
        loop {
            if self.eat('*') {
                match self.factor()? {
                    Val::Lin(r) if acc.is_constant() => acc = r.scale(acc.b),
                    Val::Lin(r) if r.is_constant() => acc = acc.scale(r.b),
                    _ => return Err(self.err("product of two non-constant parts")),
                }
            } else if self.eat('/') {
                match self.factor()? {
                    Val::PowE if acc.is_constant() => acc = Lin { a: Q::zero(), b: Q::zero(), g: acc.b },
                    Val::Lin(r) if r.is_constant() && !r.b.is_zero() => acc = acc.scale(r.b.recip()),
                    _ => return Err(self.err("unsupported division")),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn expr(&mut self) -> Result<Lin> {
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        let mut acc = Lin::constant(Q::zero());
        loop {
            let t = self.term()?.scale(Q::from_integer(sign));
            acc = Lin {
                a: acc.a + t.a,
                b: acc.b + t.b,
                g: acc.g + t.g,
            };
            sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                return Ok(acc);
            };
        }
    }

    fn exponent(&mut self) -> Result<Lin> {
        if self.eat('(') {
            let v = self.expr()?;
            self.expect(')')?;
            Ok(v)
        } else {
            Ok(Lin::constant(Q::from_integer(self.integer()?)))
        }
    }

    /// `name[^exp] (* name[^exp])*`, one exponent expression per variable.
    fn monomial(&mut self) -> Result<Vec<Lin>> {
        let mut out = vec![Lin::constant(Q::zero()); self.names.len()];
        loop {
            let at = self.pos;
            let name = self.ident().ok_or_else(|| self.err("expected a variable"))?;
            let i = self.names.iter().position(|n| n == name).ok_or_else(|| {
                self.pos = at;
                self.err(format!("unknown variable `{name}`"))
            })?;
            let v = if self.eat('^') { self.exponent()? } else { Lin::constant(Q::from_integer(1)) };
            out[i] = Lin {
                a: out[i].a + v.a,
                b: out[i].b + v.b,
                g: out[i].g + v.g,
            };
            let save = self.pos;
            if !self.eat('*') {
                return Ok(out);
            }
            if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                self.pos = save;
                return Ok(out);
            }
        }
    }

    fn frac(&self, q: Q) -> Result<FracExponent> {
        FracExponent::from_ratio(q, self.p).map_err(|e| self.err(e.to_string()))
    }

    fn constant_vector(&self, lins: &[Lin]) -> Result<FracVector> {
        lins.iter()
            .map(|l| if l.is_constant() { self.frac(l.b) } else { Err(self.err("family index outside a family")) })
            .collect::<Result<Vec<_>>>()
            .map(FracVector)
    }

    fn family_coords(&self, lins: &[Lin]) -> Result<Vec<CoordFamily>> {
        lins.iter()
            .map(|l| {
                if l.is_constant() {
                    Ok(CoordFamily::Constant(self.frac(l.b)?))
                } else if l.g.is_zero() && l.a.is_negative() {
                    Ok(CoordFamily::Arithmetic {
                        alpha: self.frac(-l.a)?,
                        beta: self.frac(-l.b)?,
                    })
                } else if l.a.is_zero() && l.b.is_zero() && l.g.is_negative() {
                    Ok(CoordFamily::Geometric { gamma: self.frac(-l.g)? })
                } else {
                    Err(self.err("family coordinate must be constant, -(a*e+b) or -g/p^e"))
                }
            })
            .collect()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

enum Piece {
    Term(FracVector),
    Family(Family),
}

fn parse_sum(src: &str, p: u32, names: &[String], allow_family: bool) -> Result<Vec<(Piece, i64)>> {
    Fp::new(p as u64)?;
    let mut ps = Parser {
        src,
        pos: 0,
        p,
        names,
        index: None,
    };
    let mut out = Vec::new();
    let mut sign: i64 = if ps.eat('-') { -1 } else { 1 };
    if ps.at_end() {
        return Err(ps.err("empty expression"));
    }
    loop {
        let mut coeff = 1i64;
        if ps.peek().is_some_and(|c| c.is_ascii_digit()) {
            coeff = i64::try_from(ps.integer()?).map_err(|_| ps.err("coefficient too large"))?;
            if !ps.eat('*') {
                out.push((Piece::Term(FracVector::zero(names.len(), p)), sign * coeff));
                coeff = 0;
            }
        }
        if coeff != 0 {
            let save = ps.pos;
            if ps.ident() == Some("family") && !names.iter().any(|n| n == "family") {
                if !allow_family {
                    ps.pos = save;
                    return Err(ps.err("families are not allowed here"));
                }
                ps.expect('(')?;
                let idx = ps.ident().ok_or_else(|| ps.err("expected an index name"))?;
                let mut start = 0;
                if ps.eat('>') {
                    ps.expect('=')?;
                    start = u32::try_from(ps.integer()?).map_err(|_| ps.err("start too large"))?;
                }
                ps.expect(')')?;
                ps.expect('{')?;
                ps.index = Some(idx);
                let lins = ps.monomial()?;
                let coords = ps.family_coords(&lins)?;
                ps.index = None;
                ps.expect('}')?;
                let fam = Family::new(coords, start).map_err(|e| ps.err(e.to_string()))?;
                out.push((Piece::Family(fam), sign * coeff));
            } else {
                ps.pos = save;
                let lins = ps.monomial()?;
                out.push((Piece::Term(ps.constant_vector(&lins)?), sign * coeff));
            }
        }
        if ps.at_end() {
            return Ok(out);
        }
        sign = if ps.eat('+') {
            1
        } else if ps.eat('-') {
            -1
        } else {
            return Err(ps.err("expected `+` or `-`"));
        };
    }
}

/// Parses a formal sum over the given variables; exponents must be `≤ 0`.
pub fn parse_formal_sum(src: &str, p: u32, names: &[String]) -> Result<FormalSum> {
    let mut f = FormalSum::zero(p, names.len());
    if src.trim() == "0" {
        return Ok(f);
    }
    for (piece, c) in parse_sum(src, p, names, true)? {
        match piece {
            Piece::Term(v) => f.add_term(v, c)?,
            Piece::Family(fam) => f.add_family(fam, c)?,
        }
    }
    f.validate()?;
    Ok(f)
}

/// Parses a polynomial with exponents in `ℕ[1/p]`, e.g. `x1^(1/2)*x2 + 3`.
pub fn parse_frac_polynomial(src: &str, p: u32, names: &[String]) -> Result<FracPolynomial> {
    let mut s = FracPolynomial::zero(p, names.len());
    if src.trim() == "0" {
        return Ok(s);
    }
    for (piece, c) in parse_sum(src, p, names, false)? {
        if let Piece::Term(v) = piece {
            s.add_term(v, c)?;
        }
    }
    Ok(s)
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn ratio_str(q: Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn power(name: &str, e: &FracExponent) -> Option<String> {
    if e.is_zero() {
        None
    } else if e.level() == 0 && e.numerator() > 0 {
        Some(if e.numerator() == 1 { name.to_string() } else { format!("{name}^{}", e.numerator()) })
    } else {
        Some(format!("{name}^({e})"))
    }
}

fn monomial_string(v: &FracVector, names: &[String]) -> Vec<String> {
    v.0.iter().zip(names).filter_map(|(e, n)| power(n, e)).collect()
}

fn with_coeff(c: u32, parts: Vec<String>) -> String {
    match (c, parts.is_empty()) {
        (_, true) => c.to_string(),
        (1, false) => parts.join(" * "),
        _ => format!("{c} * {}", parts.join(" * ")),
    }
}

pub(crate) fn family_to_string(fam: &Family, names: Option<&[String]>) -> String {
    let owned = default_names(fam.arity());
    let names = names.unwrap_or(&owned);
    let parts: Vec<String> = fam
        .coords
        .iter()
        .zip(names)
        .filter_map(|(c, n)| match c {
            CoordFamily::Constant(k) => power(n, k),
            CoordFamily::Arithmetic { alpha, beta } => {
                let a = if alpha.value() == Ratio::from_integer(1) {
                    "e".to_string()
                } else {
                    format!("{}*e", ratio_str(alpha.value()))
                };
                Some(if beta.is_zero() {
                    format!("{n}^(-{a})")
                } else if beta.is_positive() {
                    format!("{n}^(-({a}+{}))", ratio_str(beta.value()))
                } else {
                    format!("{n}^(-({a}-{}))", ratio_str(-beta.value()))
                })
            }
            CoordFamily::Geometric { gamma } => Some(if gamma.level() == 0 {
                format!("{n}^(-{}/p^e)", gamma.numerator())
            } else {
                format!("{n}^(-({})/p^e)", ratio_str(gamma.value()))
            }),
        })
        .collect();
    let head = if fam.start == 0 { "family(e)".to_string() } else { format!("family(e>={})", fam.start) };
    format!("{head}{{ {} }}", parts.join(" * "))
}

pub(crate) fn formal_sum_to_string(f: &FormalSum, names: Option<&[String]>) -> String {
    let owned = default_names(f.arity());
    let names = names.unwrap_or(&owned);
    let mut parts: Vec<String> =
        f.finite_terms().iter().map(|(v, c)| with_coeff(*c, monomial_string(v, names))).collect();
    for (fam, c) in f.families() {
        let s = family_to_string(fam, Some(names));
        parts.push(if *c == 1 { s } else { format!("{c} * {s}") });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl FormalSum {
    pub fn display_with(&self, names: &[String]) -> String {
        formal_sum_to_string(self, Some(names))
    }
}

impl FracPolynomial {
    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> =
            self.terms().iter().map(|(v, c)| with_coeff(*c, monomial_string(v, names))).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl FracVector {
    /// Monomial form `x1^(-1/8) * x2^(-3)`; `1` for the zero vector.
    pub fn monomial_string(&self, names: &[String]) -> String {
        with_coeff(1, monomial_string(self, names))
    }
}
