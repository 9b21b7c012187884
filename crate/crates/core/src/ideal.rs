use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::RingContext;

/// An ideal given by generators, interpreted in the ring `R` of its context
/// (so the context relations are always implicitly present).
#[derive(Clone, PartialEq, Eq)]
pub struct IdealSpec {
    ring: RingContext,
    generators: Vec<Polynomial>,
}

impl IdealSpec {
    /// Zero generators are dropped.
    pub fn new(ring: &RingContext, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(IdealSpec {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: &RingContext) -> Self {
        IdealSpec {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    /// The homogeneous maximal ideal `m = (x_1, ..., x_n)`.
    pub fn maximal(ring: &RingContext) -> Self {
        IdealSpec {
            ring: ring.clone(),
            generators: ring.variables(),
        }
    }

    /// Parses `y, z` or `(y, z)`.
    pub fn parse(ring: &RingContext, src: &str) -> Result<Self> {
        let trimmed = src.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .filter(|s| balanced(s))
            .unwrap_or(trimmed);
        let mut gens = Vec::new();
        for piece in split_top_level(inner) {
            if piece.trim().is_empty() {
                continue;
            }
            gens.push(Polynomial::parse(ring, piece)?);
        }
        Self::new(ring, gens)
    }

    pub fn from_strs<S: AsRef<str>>(ring: &RingContext, gens: &[S]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|g| Polynomial::parse(ring, g.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn sum(&self, other: &IdealSpec) -> Result<IdealSpec> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(IdealSpec {
            ring: self.ring.clone(),
            generators: gens,
        })
    }

    pub fn with_generator(&self, g: Polynomial) -> Result<IdealSpec> {
        self.sum(&IdealSpec::new(&self.ring, vec![g])?)
    }

    /// `I^k`, generated by all k-fold products of generators.
    pub fn power(&self, k: u32) -> Result<IdealSpec> {
        let mut acc = vec![Polynomial::one(&self.ring)];
        for _ in 0..k {
            let mut next = Vec::new();
            for a in &acc {
                for g in &self.generators {
                    let prod = a.checked_mul(g)?;
                    if !next.contains(&prod) {
                        next.push(prod);
                    }
                }
            }
            acc = next;
        }
        IdealSpec::new(&self.ring, acc)
    }

    /// Same generators viewed in another context with identical variables.
    pub fn with_ring(&self, ring: &RingContext) -> Result<IdealSpec> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.with_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        IdealSpec::new(ring, gens)
    }

    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.ring.describe().as_bytes());
        for g in &self.generators {
            h.update(b"\n");
            h.update(g.to_string().as_bytes());
        }
        hex::encode(h.finalize())
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl fmt::Debug for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealSpec{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_list_forms() {
        let r = RingContext::new(3, &["x", "y"]).unwrap();
        let a = IdealSpec::parse(&r, "(x^2, x*y + 1)").unwrap();
        let b = IdealSpec::parse(&r, "x^2, x*y+1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.generators().len(), 2);
        // outer parentheses belonging to a single generator are kept
        let c = IdealSpec::parse(&r, "(x+1)*(y+1)").unwrap();
        assert_eq!(c.generators().len(), 1);
    }

    #[test]
    fn zero_generators_are_dropped() {
        let r = RingContext::new(3, &["x"]).unwrap();
        let i = IdealSpec::parse(&r, "0, 3*x, x").unwrap();
        assert_eq!(i.generators().len(), 1);
    }

    #[test]
    fn power_of_maximal_ideal() {
        let r = RingContext::new(2, &["x", "y", "z"]).unwrap();
        let m2 = IdealSpec::maximal(&r).power(2).unwrap();
        assert_eq!(m2.generators().len(), 6);
    }
}
