use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    fp: Fp,
    names: Vec<String>,
    weights: Vec<u32>,
    graded: bool,
    relations: Vec<Vec<(Monomial, u32)>>,
}

/// `R = F_p[x_1..x_n] / (relations)`, with positive integer variable weights.
///
/// Cheap to clone; all polynomials carry a handle to their context.
#[derive(Clone)]
pub struct RingContext(Arc<RingData>);

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for RingContext {}

impl fmt::Debug for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl RingContext {
    /// Polynomial ring over F_p in the named variables, all of weight 1, ungraded.
    pub fn new<S: AsRef<str>>(p: u64, names: &[S]) -> Result<Self> {
        let fp = Fp::new(p)?;
        if names.is_empty() {
            return Err(Error::Invalid("a ring needs at least one variable".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let valid = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Invalid(format!("bad variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Invalid(format!("duplicate variable `{n}`")));
            }
        }
        let arity = names.len();
        Ok(RingContext(Arc::new(RingData {
            fp,
            names,
            weights: vec![1; arity],
            graded: false,
            relations: Vec::new(),
        })))
    }

    /// Standard graded polynomial ring: all weights 1, graded flag set.
    pub fn standard<S: AsRef<str>>(p: u64, names: &[S]) -> Result<Self> {
        Self::new(p, names)?.with_weights(&vec![1; names.len()])
    }

    /// Declares variable weights and sets the graded flag.
    pub fn with_weights(&self, weights: &[u32]) -> Result<Self> {
        if weights.len() != self.arity() {
            return Err(Error::Invalid(format!(
                "expected {} weights, got {}",
                self.arity(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::Invalid("weights must be >= 1".into()));
        }
        let data = RingData {
            fp: self.0.fp,
            names: self.0.names.clone(),
            weights: weights.to_vec(),
            graded: true,
            relations: self.0.relations.clone(),
        };
        let ring = RingContext(Arc::new(data));
        ring.check_relations_homogeneous()?;
        Ok(ring)
    }

    /// Quotient by the given relations (parsed in the polynomial ring).
    pub fn with_relations<S: AsRef<str>>(&self, relations: &[S]) -> Result<Self> {
        let base = self.polynomial_ring();
        let polys = relations
            .iter()
            .map(|r| Polynomial::parse(&base, r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.with_relation_polys(&polys)
    }

    pub fn with_relation_polys(&self, relations: &[Polynomial]) -> Result<Self> {
        let mut stored = Vec::new();
        for r in relations {
            if r.ring().arity() != self.arity() || r.ring().p() != self.p() {
                return Err(Error::ContextMismatch);
            }
            if !r.is_zero() {
                stored.push(r.terms().to_vec());
            }
        }
        let data = RingData {
            fp: self.0.fp,
            names: self.0.names.clone(),
            weights: self.0.weights.clone(),
            graded: self.0.graded,
            relations: stored,
        };
        let ring = RingContext(Arc::new(data));
        ring.check_relations_homogeneous()?;
        Ok(ring)
    }

    fn check_relations_homogeneous(&self) -> Result<()> {
        if !self.0.graded {
            return Ok(());
        }
        for r in self.relations() {
            if !r.degree_check().1 {
                return Err(Error::InhomogeneousRelation(r.to_string()));
            }
        }
        Ok(())
    }

    /// The same variables and weights with no relations.
    pub fn polynomial_ring(&self) -> RingContext {
        if self.0.relations.is_empty() {
            return self.clone();
        }
        RingContext(Arc::new(RingData {
            fp: self.0.fp,
            names: self.0.names.clone(),
            weights: self.0.weights.clone(),
            graded: self.0.graded,
            relations: Vec::new(),
        }))
    }

    pub fn p(&self) -> u32 {
        self.0.fp.p()
    }

    pub fn field(&self) -> Fp {
        self.0.fp
    }

    pub fn arity(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn is_graded(&self) -> bool {
        self.0.graded
    }

    pub fn has_relations(&self) -> bool {
        !self.0.relations.is_empty()
    }

    /// Weights all 1 and relations homogeneous.
    pub fn is_standard_graded(&self) -> bool {
        self.0.weights.iter().all(|&w| w == 1) && self.relations().iter().all(|r| r.degree_check().1)
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// Relations as polynomials of this ring.
    pub fn relations(&self) -> Vec<Polynomial> {
        self.0
            .relations
            .iter()
            .map(|t| Polynomial::from_sorted_terms(self.clone(), t.clone()))
            .collect()
    }

    pub fn variables(&self) -> Vec<Polynomial> {
        (0..self.arity()).map(|i| Polynomial::variable(self, i)).collect()
    }

    /// Human-readable description in ring-file syntax.
    pub fn describe(&self) -> String {
        let rels: Vec<String> = self
            .relations()
            .iter()
            .map(|r| format!("\"{r}\""))
            .collect();
        let mut s = format!("ring {{ p = {}; vars = [{}]; ", self.p(), self.0.names.join(","));
        if self.0.graded {
            let w: Vec<String> = self.0.weights.iter().map(|w| w.to_string()).collect();
            s.push_str(&format!("weights = [{}]; ", w.join(",")));
        }
        s.push_str(&format!("quotient = [{}]; }}", rels.join(",")));
        s
    }

    /// Hex SHA-256 of the canonical description.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.describe().as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubical_cone_context() {
        let r = RingContext::standard(2, &["x", "y", "z"])
            .unwrap()
            .with_relations(&["x^3+y^3+z^3"])
            .unwrap();
        assert_eq!(r.relations().len(), 1);
        assert!(r.is_standard_graded());
        assert_eq!(r.polynomial_ring().relations().len(), 0);
        assert_ne!(r.digest(), r.polynomial_ring().digest());
    }

    #[test]
    fn inhomogeneous_relation_rejected_when_graded() {
        let r = RingContext::standard(5, &["x", "y"]).unwrap();
        assert!(matches!(
            r.with_relations(&["x^2 + y"]),
            Err(Error::InhomogeneousRelation(_))
        ));
        // weights (1,2) make it homogeneous
        let w = RingContext::new(5, &["x", "y"]).unwrap().with_weights(&[1, 2]).unwrap();
        assert!(w.with_relations(&["x^2 + y"]).is_ok());
        // ungraded contexts accept anything
        let u = RingContext::new(5, &["x", "y"]).unwrap();
        assert!(u.with_relations(&["x^2 + y"]).is_ok());
    }

    #[test]
    fn rejects_bad_names_and_primes() {
        assert_eq!(RingContext::new(4, &["x"]).unwrap_err(), Error::NotPrime(4));
        assert!(RingContext::new(2, &["x", "x"]).is_err());
        assert!(RingContext::new(2, &["1x"]).is_err());
        assert!(RingContext::new(2, &[] as &[&str]).is_err());
    }
}
