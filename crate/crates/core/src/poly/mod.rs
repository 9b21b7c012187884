//! Sparse multivariate polynomials over F_p.
//!
//! Terms are kept sorted in descending grevlex order (variables in declared
//! order, weighted degree) with no zero coefficients and no repeated monomials,
//! so structural equality is mathematical equality.

mod text;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::ring::RingContext;

/// Weighted total degree; the zero polynomial has degree minus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingContext,
    terms: Vec<(Monomial, u32)>,
}

fn canonical_cmp(ring: &RingContext, a: &Monomial, b: &Monomial) -> Ordering {
    let o = TermOrder::grevlex(ring.arity());
    o.compare(ring.weights(), a, b)
}

impl Polynomial {
    pub fn zero(ring: &RingContext) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingContext, c: i64) -> Self {
        Self::term(ring, c, Monomial::one(ring.arity()))
    }

    pub fn one(ring: &RingContext) -> Self {
        Self::constant(ring, 1)
    }

    pub fn variable(ring: &RingContext, index: usize) -> Self {
        Self::term(ring, 1, Monomial::variable(ring.arity(), index))
    }

    pub fn term(ring: &RingContext, c: i64, mono: Monomial) -> Self {
        assert_eq!(mono.arity(), ring.arity(), "monomial arity");
        let c = ring.field().reduce(c);
        let terms = if c == 0 { Vec::new() } else { vec![(mono, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &RingContext, exps: &[u32]) -> Self {
        Self::term(ring, 1, Monomial::from_exponents(exps))
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs, combining duplicates.
    pub fn from_terms<I>(ring: &RingContext, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let fp = ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.arity(), ring.arity(), "monomial arity");
            let e = acc.entry(m).or_insert(0);
            *e = fp.add(*e, fp.reduce(c));
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &RingContext, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| canonical_cmp(ring, &b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn from_sorted_terms(ring: RingContext, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| canonical_cmp(&ring, &w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Polynomial { ring, terms }
    }

    /// Re-sorts terms produced in some other order.
    pub(crate) fn from_unsorted_terms(ring: &RingContext, mut terms: Vec<(Monomial, u32)>) -> Self {
        terms.retain(|(_, c)| *c != 0);
        terms.sort_by(|a, b| canonical_cmp(ring, &b.0, &a.0));
        debug_assert!(terms.windows(2).all(|w| w[0].0 != w[1].0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn parse(ring: &RingContext, src: &str) -> Result<Self> {
        text::parse(ring, src)
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Moves the polynomial into another context with the same variables and prime,
    /// for instance from `R` to the ambient polynomial ring.
    pub fn with_ring(&self, ring: &RingContext) -> Result<Self> {
        if ring.p() != self.ring.p() || ring.names() != self.ring.names() {
            return Err(Error::ContextMismatch);
        }
        if ring.weights() == self.ring.weights() {
            return Ok(Polynomial {
                ring: ring.clone(),
                terms: self.terms.clone(),
            });
        }
        Ok(Self::from_unsorted_terms(ring, self.terms.clone()))
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, 1))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, self.ring.p() - 1))
    }

    /// `self + factor * other`, merging the two sorted term lists.
    fn combine(&self, other: &Polynomial, factor: u32) -> Polynomial {
        let fp = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => canonical_cmp(&self.ring, &a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = fp.mul(other.terms[j].1, factor);
                    if c != 0 {
                        out.push((other.terms[j].0.clone(), c));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let c = fp.add(self.terms[i].1, fp.mul(other.terms[j].1, factor));
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let fp = self.ring.field();
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let e = acc.entry(m).or_insert(0);
                *e = fp.add(*e, fp.mul(*ca, *cb));
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    pub fn scale(&self, c: i64) -> Polynomial {
        let fp = self.ring.field();
        let c = fp.reduce(c);
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), fp.mul(*a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.checked_mul(mono)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn pow(&self, mut exp: u64) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `f^(p^e)`, computed term by term: `c x^a ↦ c x^(p^e a)` since `c^(p^e) = c` in F_p.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        let q = frobenius_q(self.ring.p(), e)?;
        // grevlex keys are linear in the exponents, so scaling keeps the order
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.checked_scale(q)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Weighted degree of the highest term and whether all terms share one degree.
    pub fn degree_check(&self) -> (Degree, bool) {
        let w = self.ring.weights();
        let mut degs = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        match degs.next() {
            None => (Degree::NegInfinity, true),
            Some(first) => {
                let mut max = first;
                let mut homogeneous = true;
                for d in degs {
                    homogeneous &= d == first;
                    max = max.max(d);
                }
                (Degree::Finite(max), homogeneous)
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree_check().1
    }

    /// Leading coefficient under the canonical order (0 for the zero polynomial).
    pub fn leading_coefficient(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) => {
                let inv = self.ring.field().inv(c);
                self.scale(inv as i64)
            }
        }
    }

    /// Homogeneous component of the given weighted degree.
    pub fn homogeneous_component(&self, degree: u64) -> Polynomial {
        let w = self.ring.weights();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(w) == degree)
                .cloned()
                .collect(),
        }
    }
}

/// `p^e` with overflow checking.
pub fn frobenius_q(p: u32, e: u32) -> Result<u64> {
    (p as u64)
        .checked_pow(e)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or_else(|| Error::Overflow(format!("{p}^{e}")))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_polynomial(f, &self.ring, &self.terms)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on a context mismatch; use the `checked_` variant to get an error.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect(concat!("Polynomial::", stringify!($method)))
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> RingContext {
        RingContext::new(p, &["x", "y", "z"]).unwrap()
    }

    fn poly(r: &RingContext, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn char_two_square_has_no_cross_term() {
        let r = ring(2);
        let f = poly(&r, "x+y");
        assert_eq!(&f * &f, poly(&r, "x^2+y^2"));
    }

    #[test]
    fn multiply_by_one() {
        let r = ring(7);
        let f = poly(&r, "3x^2y - z + 5");
        assert_eq!(&f * &Polynomial::one(&r), f);
    }

    #[test]
    fn difference_of_squares_mod_five() {
        let r = ring(5);
        let prod = &poly(&r, "x+y") * &poly(&r, "x-y");
        assert_eq!(prod, poly(&r, "x^2 + 4*y^2"));
        assert_eq!(prod.to_string(), "x^2 + 4*y^2");
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = poly(&ring(5), "x");
        let b = poly(&ring(7), "x");
        assert_eq!(a.checked_mul(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn frobenius_power_cases() {
        let r2 = ring(2);
        assert_eq!(poly(&r2, "x+y").frobenius_power(1).unwrap(), poly(&r2, "x^2+y^2"));
        let f = poly(&r2, "x*y + z^3 + 1");
        assert_eq!(f.frobenius_power(0).unwrap(), f);

        let r3 = ring(3);
        let g = poly(&r3, "x+2y");
        let cube = &(&g * &g) * &g;
        assert_eq!(g.frobenius_power(1).unwrap(), cube);
        assert_eq!(cube, poly(&r3, "x^3+2y^3"));
    }

    #[test]
    fn frobenius_overflow_is_reported() {
        let r = ring(2);
        let f = poly(&r, "x^3");
        assert!(matches!(f.frobenius_power(31), Err(Error::Overflow(_))));
        assert!(matches!(f.frobenius_power(40), Err(Error::Overflow(_))));
    }

    #[test]
    fn degree_checks() {
        let r = RingContext::new(5, &["x", "y"]).unwrap();
        assert_eq!(poly(&r, "x^2*y").degree_check(), (Degree::Finite(3), true));
        assert_eq!(poly(&r, "x^2+y").degree_check(), (Degree::Finite(2), false));
        assert_eq!(Polynomial::zero(&r).degree_check(), (Degree::NegInfinity, true));
        let w = r.with_weights(&[1, 2]).unwrap();
        assert_eq!(poly(&w, "x^2+y").degree_check(), (Degree::Finite(2), true));
    }

    #[test]
    fn canonical_order_is_grevlex() {
        let r = ring(11);
        let f = poly(&r, "z^2 + x*z + y^2 + x^2 + 1 + y");
        assert_eq!(f.to_string(), "x^2 + y^2 + x*z + z^2 + y + 1");
    }
}
