//! Gröbner bases, normal forms and ideal membership.
//!
//! Quotient rings are handled by adjoining the context relations to every
//! ideal: `f ∈ I·R` iff `f ∈ I + (relations)` in the polynomial ring.

mod cache;
pub mod module;
pub(crate) mod engine;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

pub use cache::GbCache;
pub use module::{module_division, module_representation, ModuleBasis};
use engine::{Accumulator, Engine, Vector};

use crate::error::{Error, Result};
use crate::ideal::IdealSpec;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::ring::RingContext;

/// Reduced Gröbner basis of `I + (relations)` in the ambient polynomial ring.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: RingContext,
    order: TermOrder,
    basis: Vec<Polynomial>,
    reduced: bool,
    source: String,
    vectors: Vec<Vector>,
}

pub(crate) fn engine_for(ring: &RingContext, order: &TermOrder, module: bool) -> Result<Engine> {
    if order.arity() != ring.arity() {
        return Err(Error::Invalid(format!(
            "term order has {} variables, ring has {}",
            order.arity(),
            ring.arity()
        )));
    }
    Ok(Engine {
        fp: ring.field(),
        order: order.clone(),
        weights: ring.weights().to_vec(),
        module,
    })
}

pub(crate) fn to_vector(engine: &Engine, f: &Polynomial) -> Vector {
    engine.vector(f.terms().iter().map(|(m, c)| (0, m.clone(), *c)))
}

pub(crate) fn from_vector(ring: &RingContext, v: &Vector) -> Polynomial {
    Polynomial::from_unsorted_terms(ring, v.terms.iter().map(|t| (t.mono.clone(), t.c)).collect())
}

/// Cache key for the basis of `gens + relations` under `order`.
pub(crate) fn source_digest(ring: &RingContext, order: &TermOrder, gens: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(ring.describe().as_bytes());
    h.update(format!("\norder {order}").as_bytes());
    for g in gens {
        h.update(b"\n");
        h.update(g.as_bytes());
    }
    hex::encode(h.finalize())
}

fn with_relations(ideal: &IdealSpec) -> Vec<Polynomial> {
    let mut gens = ideal.generators().to_vec();
    gens.extend(ideal.ring().relations());
    gens
}

impl GroebnerBasis {
    pub(crate) fn from_vectors(
        ring: &RingContext,
        order: &TermOrder,
        vectors: Vec<Vector>,
        source: String,
    ) -> Self {
        let basis = vectors.iter().map(|v| from_vector(ring, v)).collect();
        GroebnerBasis {
            ring: ring.clone(),
            order: order.clone(),
            basis,
            reduced: true,
            source,
            vectors,
        }
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Digest of the generating data this basis was computed from.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.vectors.len() == 1 && self.vectors[0].lead().mono.is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.vectors.iter().map(|v| v.lead().mono.clone()).collect()
    }

    pub(crate) fn engine(&self) -> Result<Engine> {
        engine_for(&self.ring, &self.order, false)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        let f = f.with_ring(&self.ring)?;
        let engine = self.engine()?;
        let refs: Vec<&Vector> = self.vectors.iter().collect();
        let r = engine.normal_form(&to_vector(&engine, &f), &refs, None)?;
        Ok(from_vector(&self.ring, &r))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// True iff every variable has a pure power among the leading monomials,
    /// i.e. the quotient is finite-dimensional over F_p.
    pub fn is_zero_dimensional(&self) -> bool {
        let leads = self.leading_monomials();
        (0..self.ring.arity()).all(|i| {
            leads.iter().any(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| if j == i { e > 0 } else { e == 0 })
            })
        })
    }

    /// Monomials outside the leading-term ideal (a basis of the quotient),
    /// or `None` if the quotient is infinite-dimensional.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if !self.is_zero_dimensional() {
            return None;
        }
        let leads = self.leading_monomials();
        let n = self.ring.arity();
        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        let mut stack = vec![Monomial::one(n)];
        if leads.iter().any(|l| l.is_one()) {
            return Some(Vec::new());
        }
        seen.insert(Monomial::one(n));
        while let Some(m) = stack.pop() {
            for i in 0..n {
                let mut e = m.exponents().to_vec();
                e[i] += 1;
                let next = Monomial::from_exponents(&e);
                if seen.contains(&next) || leads.iter().any(|l| l.divides(&next)) {
                    continue;
                }
                seen.insert(next.clone());
                stack.push(next);
            }
        }
        let mut out: Vec<Monomial> = seen.into_iter().collect();
        let o = TermOrder::grevlex(n);
        out.sort_by(|a, b| o.compare(self.ring.weights(), a, b));
        Some(out)
    }
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.basis == other.basis
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroebnerBasis{:?}", self.basis)
    }
}

/// Reduced Gröbner basis of `I + (relations)`, computed from scratch.
pub fn buchberger(ideal: &IdealSpec, order: &TermOrder) -> Result<GroebnerBasis> {
    let ring = ideal.ring();
    let engine = engine_for(ring, order, false)?;
    let gens = with_relations(ideal);
    let vectors: Vec<Vector> = gens.iter().map(|g| to_vector(&engine, g)).collect();
    let out = engine.buchberger(&vectors, false)?;
    let texts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    Ok(GroebnerBasis::from_vectors(
        ring,
        order,
        out.into_iter().map(|t| t.v).collect(),
        source_digest(ring, order, &texts),
    ))
}

/// Cached grevlex basis, the one every closure operation uses.
pub fn basis(ideal: &IdealSpec) -> Result<Arc<GroebnerBasis>> {
    basis_with_order(ideal, &TermOrder::grevlex(ideal.ring().arity()))
}

pub fn basis_with_order(ideal: &IdealSpec, order: &TermOrder) -> Result<Arc<GroebnerBasis>> {
    GbCache::global().get_or_compute(ideal, order)
}

pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Result<Polynomial> {
    g.normal_form(f)
}

/// `f ∈ I·R` where `R` is the quotient ring of the shared context.
pub fn ideal_membership(f: &Polynomial, ideal: &IdealSpec) -> Result<bool> {
    if f.ring() != ideal.ring() {
        return Err(Error::ContextMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    basis(ideal)?.contains(f)
}

/// `J ⊆ I` in `R`.
pub fn ideal_contains(ideal: &IdealSpec, sub: &IdealSpec) -> Result<bool> {
    if ideal.ring() != sub.ring() {
        return Err(Error::ContextMismatch);
    }
    let g = basis(ideal)?;
    for s in sub.generators() {
        if !g.contains(s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality of ideals in `R`, by comparing reduced bases.
pub fn ideal_equal(a: &IdealSpec, b: &IdealSpec) -> Result<bool> {
    if a.ring() != b.ring() {
        return Err(Error::ContextMismatch);
    }
    Ok(basis(a)?.basis() == basis(b)?.basis())
}

/// Cofactors expressing `f` in terms of the ideal's generators followed by the
/// context relations: `f = Σ h_i g_i + Σ s_j rel_j`. `None` if `f ∉ I·R`.
pub fn representation(f: &Polynomial, ideal: &IdealSpec) -> Result<Option<Vec<Polynomial>>> {
    let ring = ideal.ring();
    if f.ring() != ring {
        return Err(Error::ContextMismatch);
    }
    let order = TermOrder::grevlex(ring.arity());
    let engine = engine_for(ring, &order, false)?;
    let gens = with_relations(ideal);
    let vectors: Vec<Vector> = gens.iter().map(|g| to_vector(&engine, g)).collect();
    let tracked = engine.buchberger(&vectors, true)?;
    let refs: Vec<&Vector> = tracked.iter().map(|t| &t.v).collect();
    let mut quots = Vec::new();
    let rem = engine.normal_form(&to_vector(&engine, f), &refs, Some(&mut quots))?;
    if !rem.is_zero() {
        return Ok(None);
    }
    let mut acc = Accumulator::new(gens.len());
    for (q, t) in quots.iter().zip(&tracked) {
        for qt in &q.terms {
            for (slot, c) in t.cof.iter().enumerate() {
                acc.add(&engine, slot, qt.c, &qt.mono, c)?;
            }
        }
    }
    Ok(Some(acc.finish(&engine).iter().map(|v| from_vector(ring, v)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::OrderKind;

    fn ring(p: u64, vars: &[&str]) -> RingContext {
        RingContext::new(p, vars).unwrap()
    }

    fn ideal(r: &RingContext, gens: &[&str]) -> IdealSpec {
        IdealSpec::from_strs(r, gens).unwrap()
    }

    fn strs(g: &GroebnerBasis) -> Vec<String> {
        g.basis().iter().map(|p| p.to_string()).collect()
    }

    fn cone(p: u64) -> RingContext {
        ring(p, &["x", "y", "z"]).with_relations(&["x^3+y^3+z^3"]).unwrap()
    }

    #[test]
    fn principal_ideal() {
        let r = ring(5, &["x", "y"]);
        let g = buchberger(&ideal(&r, &["3x"]), &TermOrder::grevlex(2)).unwrap();
        assert_eq!(strs(&g), ["x"]);
        let g = buchberger(&ideal(&r, &["x"]), &TermOrder::lex(2)).unwrap();
        assert_eq!(strs(&g), ["x"]);
    }

    #[test]
    fn sum_and_difference_of_squares() {
        let r = ring(5, &["x", "y"]);
        let g = buchberger(&ideal(&r, &["x^2+y^2", "x^2-y^2"]), &TermOrder::grevlex(2)).unwrap();
        assert_eq!(strs(&g), ["x^2", "y^2"]);
    }

    #[test]
    fn linear_elimination_in_lex() {
        let r = ring(7, &["x", "y", "z"]);
        let g = buchberger(&ideal(&r, &["x-y", "y-z"]), &TermOrder::lex(3)).unwrap();
        let expected: Vec<Polynomial> = ["x-z", "y-z"].iter().map(|s| Polynomial::parse(&r, s).unwrap()).collect();
        assert_eq!(g.basis(), expected.as_slice());
    }

    #[test]
    fn normal_forms() {
        let r = ring(3, &["x", "y"]);
        let g = buchberger(&ideal(&r, &["x"]), &TermOrder::grevlex(2)).unwrap();
        assert!(g.normal_form(&Polynomial::parse(&r, "x^2").unwrap()).unwrap().is_zero());
        let f = Polynomial::parse(&r, "y+1").unwrap();
        assert_eq!(g.normal_form(&f).unwrap(), f);

        let c = cone(2);
        let gb = basis(&ideal(&c, &["y^2", "z^2"])).unwrap();
        assert!(gb.normal_form(&Polynomial::parse(&c, "x^4").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn membership_examples() {
        let r = ring(5, &["x"]);
        let x2 = Polynomial::parse(&r, "x^2").unwrap();
        let x = Polynomial::parse(&r, "x").unwrap();
        assert!(ideal_membership(&x2, &ideal(&r, &["x"])).unwrap());
        assert!(!ideal_membership(&x, &ideal(&r, &["x^2"])).unwrap());

        let c = cone(2);
        let x4 = Polynomial::parse(&c, "x^4").unwrap();
        assert!(ideal_membership(&x4, &ideal(&c, &["y^2", "z^2"])).unwrap());
        // without the relation it is not a member
        let p = c.polynomial_ring();
        assert!(!ideal_membership(&x4.with_ring(&p).unwrap(), &ideal(&p, &["y^2", "z^2"])).unwrap());
    }

    #[test]
    fn equality_examples() {
        let r = ring(11, &["x", "y"]);
        assert!(ideal_equal(&ideal(&r, &["x", "x+y"]), &ideal(&r, &["x", "y"])).unwrap());
        assert!(!ideal_equal(&ideal(&r, &["x^2"]), &ideal(&r, &["x"])).unwrap());
        assert!(ideal_equal(&ideal(&r, &["x+y", "y"]), &ideal(&r, &["x", "y-x"])).unwrap());
    }

    #[test]
    fn representation_replays() {
        let c = cone(2);
        let i = ideal(&c, &["y^2", "z^2"]);
        let x4 = Polynomial::parse(&c, "x^4").unwrap();
        let h = representation(&x4, &i).unwrap().expect("member");
        assert_eq!(h.len(), 3);
        let mut total = Polynomial::zero(&c);
        let gens: Vec<Polynomial> = i.generators().iter().cloned().chain(c.relations()).collect();
        for (hi, gi) in h.iter().zip(&gens) {
            total = &total + &(hi * gi);
        }
        assert_eq!(total, x4);
        assert!(representation(&Polynomial::parse(&c, "x").unwrap(), &i).unwrap().is_none());
    }

    #[test]
    fn standard_monomials_of_cone_quotient() {
        let c = cone(2);
        let g = basis(&ideal(&c, &["y", "z"])).unwrap();
        assert!(g.is_zero_dimensional());
        let sm = g.standard_monomials().unwrap();
        assert_eq!(sm.len(), 3); // 1, x, x^2
        let r = ring(2, &["x", "y", "z"]);
        let g = basis(&ideal(&r, &["y", "z"])).unwrap();
        assert!(!g.is_zero_dimensional());
        assert!(g.standard_monomials().is_none());
    }

    #[test]
    fn graded_lex_and_permuted_orders_agree_on_the_ideal() {
        let r = ring(3, &["x", "y", "z"]);
        let i = ideal(&r, &["x*y - z^2", "y^2 - x*z", "x^2*z + y"]);
        let a = buchberger(&i, &TermOrder::new(OrderKind::GradedLex, 3)).unwrap();
        let b = buchberger(&i, &TermOrder::with_permutation(OrderKind::Grevlex, vec![2, 0, 1]).unwrap()).unwrap();
        for f in a.basis() {
            assert!(b.contains(f).unwrap());
        }
        for f in b.basis() {
            assert!(a.contains(f).unwrap());
        }
    }
}
