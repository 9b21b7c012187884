//! Submodules of free modules `R^r`, position-over-term with grevlex on terms.
//! Ring relations are adjoined on every coordinate as `rel · e_i`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use sha2::{Digest, Sha256};

use super::engine::{Accumulator, Engine, Vector};
use super::{engine_for, from_vector};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::ring::RingContext;

/// Reduced module Gröbner basis of `gens + relations·R^r`.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    ring: RingContext,
    rank: usize,
    engine: Engine,
    vectors: Vec<Vector>,
}

fn check_shapes(ring: &RingContext, rank: usize, vs: &[Vec<Polynomial>]) -> Result<()> {
    for v in vs {
        if v.len() != rank {
            return Err(Error::Invalid(format!("vector of length {} in rank-{rank} module", v.len())));
        }
        if v.iter().any(|c| c.ring().names() != ring.names() || c.ring().p() != ring.p()) {
            return Err(Error::ContextMismatch);
        }
    }
    Ok(())
}

pub(crate) fn module_vector(engine: &Engine, v: &[Polynomial]) -> Vector {
    engine.vector(
        v.iter()
            .enumerate()
            .flat_map(|(i, f)| f.terms().iter().map(move |(m, c)| (i as u32, m.clone(), *c))),
    )
}

fn coords(ring: &RingContext, rank: usize, v: &Vector) -> Vec<Polynomial> {
    let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
    for t in &v.terms {
        buckets[t.pos as usize].push((t.mono.clone(), t.c));
    }
    buckets
        .into_iter()
        .map(|b| Polynomial::from_unsorted_terms(ring, b))
        .collect()
}

/// Generators with the ring relations adjoined on every coordinate.
fn full_generators(ring: &RingContext, rank: usize, gens: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let mut all = gens.to_vec();
    for rel in ring.relations() {
        for i in 0..rank {
            let mut v = vec![Polynomial::zero(ring); rank];
            v[i] = rel.clone();
            all.push(v);
        }
    }
    all
}

fn digest(ring: &RingContext, rank: usize, gens: &[Vec<Polynomial>]) -> String {
    let mut h = Sha256::new();
    h.update(ring.describe().as_bytes());
    h.update(format!("\nmodule rank {rank}").as_bytes());
    for g in gens {
        let parts: Vec<String> = g.iter().map(|c| c.to_string()).collect();
        h.update(format!("\n[{}]", parts.join(", ")).as_bytes());
    }
    hex::encode(h.finalize())
}

fn memo() -> &'static RwLock<HashMap<String, Arc<ModuleBasis>>> {
    static MEMO: OnceLock<RwLock<HashMap<String, Arc<ModuleBasis>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

impl ModuleBasis {
    /// Basis of the submodule of `R^rank` generated by `gens` (relations adjoined).
    pub fn compute(ring: &RingContext, rank: usize, gens: &[Vec<Polynomial>]) -> Result<Arc<ModuleBasis>> {
        check_shapes(ring, rank, gens)?;
        let key = digest(ring, rank, gens);
        if let Some(hit) = memo().read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let engine = engine_for(ring, &TermOrder::grevlex(ring.arity()), true)?;
        let all = full_generators(ring, rank, gens);
        let vecs: Vec<Vector> = all.iter().map(|g| module_vector(&engine, g)).collect();
        let out = engine.buchberger(&vecs, false)?;
        let mb = Arc::new(ModuleBasis {
            ring: ring.clone(),
            rank,
            engine,
            vectors: out.into_iter().map(|t| t.v).collect(),
        });
        let mut m = memo().write().unwrap();
        if m.len() > 4096 {
            m.clear();
        }
        m.insert(key, mb.clone());
        Ok(mb)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> Vec<Vec<Polynomial>> {
        self.vectors.iter().map(|v| coords(&self.ring, self.rank, v)).collect()
    }

    pub fn reduce(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        check_shapes(&self.ring, self.rank, &[v.to_vec()])?;
        let refs: Vec<&Vector> = self.vectors.iter().collect();
        let r = self.engine.normal_form(&module_vector(&self.engine, v), &refs, None)?;
        Ok(coords(&self.ring, self.rank, &r))
    }

    pub fn contains(&self, v: &[Polynomial]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Polynomial::is_zero))
    }

    /// Leading (position, monomial) pairs.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.vectors
            .iter()
            .map(|v| (v.lead().pos as usize, v.lead().mono.clone()))
            .collect()
    }

    /// Positions (if any) whose staircase is infinite; such a position carries
    /// an infinite ray of standard monomials along some variable.
    pub fn infinite_ray(&self) -> Option<(usize, usize)> {
        let leads = self.leading_terms();
        for pos in 0..self.rank {
            for var in 0..self.ring.arity() {
                let bounded = leads.iter().any(|(p, m)| {
                    *p == pos
                        && m.exponents()
                            .iter()
                            .enumerate()
                            .all(|(j, &e)| if j == var { true } else { e == 0 })
                });
                if !bounded {
                    return Some((pos, var));
                }
            }
        }
        None
    }

    /// Standard (position, monomial) pairs, or `None` when the quotient is infinite.
    pub fn standard_terms(&self) -> Option<Vec<(usize, Monomial)>> {
        if self.infinite_ray().is_some() {
            return None;
        }
        let leads = self.leading_terms();
        let n = self.ring.arity();
        let mut out = Vec::new();
        for pos in 0..self.rank {
            let mut seen: BTreeSet<Monomial> = BTreeSet::new();
            let blocked = |m: &Monomial| leads.iter().any(|(p, l)| *p == pos && l.divides(m));
            let one = Monomial::one(n);
            if blocked(&one) {
                continue;
            }
            let mut stack = vec![one.clone()];
            seen.insert(one);
            while let Some(m) = stack.pop() {
                for i in 0..n {
                    let mut e = m.exponents().to_vec();
                    e[i] += 1;
                    let next = Monomial::from_exponents(&e);
                    if !seen.contains(&next) && !blocked(&next) {
                        seen.insert(next.clone());
                        stack.push(next);
                    }
                }
            }
            out.extend(seen.into_iter().map(|m| (pos, m)));
        }
        Some(out)
    }
}

/// Division with cofactors: `v = rem + Σ h_i gens_i` modulo the ring relations,
/// where `rem` is the normal form of `v`. Only the cofactors of `gens` are returned.
pub fn module_division(
    ring: &RingContext,
    rank: usize,
    gens: &[Vec<Polynomial>],
    v: &[Polynomial],
) -> Result<(Vec<Polynomial>, Vec<Polynomial>)> {
    check_shapes(ring, rank, gens)?;
    check_shapes(ring, rank, &[v.to_vec()])?;
    let engine = engine_for(ring, &TermOrder::grevlex(ring.arity()), true)?;
    let all = full_generators(ring, rank, gens);
    let vecs: Vec<Vector> = all.iter().map(|g| module_vector(&engine, g)).collect();
    let tracked = engine.buchberger(&vecs, true)?;
    let refs: Vec<&Vector> = tracked.iter().map(|t| &t.v).collect();
    let mut quots = Vec::new();
    let rem = engine.normal_form(&module_vector(&engine, v), &refs, Some(&mut quots))?;
    let mut acc = Accumulator::new(all.len());
    for (q, t) in quots.iter().zip(&tracked) {
        for qt in &q.terms {
            for (slot, c) in t.cof.iter().enumerate() {
                acc.add(&engine, slot, qt.c, &qt.mono, c)?;
            }
        }
    }
    let hs = acc.finish(&engine).iter().take(gens.len()).map(|x| from_vector(ring, x)).collect();
    Ok((coords(ring, rank, &rem), hs))
}

/// Cofactors `h` with `v = Σ h_i gens_i + (relation part)`, or `None` if `v` is not in
/// the submodule. Only the cofactors of `gens` are returned.
pub fn module_representation(
    ring: &RingContext,
    rank: usize,
    gens: &[Vec<Polynomial>],
    v: &[Polynomial],
) -> Result<Option<Vec<Polynomial>>> {
    let (rem, hs) = module_division(ring, rank, gens, v)?;
    Ok(rem.iter().all(Polynomial::is_zero).then_some(hs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: &RingContext, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn rank_two_membership() {
        let r = RingContext::new(2, &["x", "y"]).unwrap();
        let gens = vec![vec![p(&r, "x"), p(&r, "0")], vec![p(&r, "0"), p(&r, "y")]];
        let mb = ModuleBasis::compute(&r, 2, &gens).unwrap();
        assert!(!mb.contains(&[p(&r, "y"), p(&r, "0")]).unwrap());
        assert!(mb.contains(&[p(&r, "x*y"), p(&r, "y^2+x*y")]).unwrap());
        assert_eq!(mb.infinite_ray(), Some((0, 1)));
    }

    #[test]
    fn mixed_generators_need_module_s_pairs() {
        let r = RingContext::new(3, &["x", "y"]).unwrap();
        // (x, y) and (y, x): the combination y*(x,y) - x*(y,x) = (0, y^2 - x^2)
        let gens = vec![vec![p(&r, "x"), p(&r, "y")], vec![p(&r, "y"), p(&r, "x")]];
        let mb = ModuleBasis::compute(&r, 2, &gens).unwrap();
        assert!(mb.contains(&[p(&r, "0"), p(&r, "y^2 - x^2")]).unwrap());
        assert!(!mb.contains(&[p(&r, "0"), p(&r, "y^2")]).unwrap());
    }

    #[test]
    fn relations_adjoined_per_coordinate() {
        let r = RingContext::new(2, &["x", "y", "z"]).unwrap().with_relations(&["x^3+y^3+z^3"]).unwrap();
        let gens = vec![vec![p(&r, "y^2"), p(&r, "0")], vec![p(&r, "z^2"), p(&r, "0")]];
        let mb = ModuleBasis::compute(&r, 2, &gens).unwrap();
        assert!(mb.contains(&[p(&r, "x^4"), p(&r, "x^3+y^3+z^3")]).unwrap());
        let h = module_representation(&r, 2, &gens, &[p(&r, "x^4"), p(&r, "0")]).unwrap().unwrap();
        assert_eq!(h.len(), 2);
    }
}
