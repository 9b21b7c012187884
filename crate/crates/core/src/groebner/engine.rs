//! Buchberger's algorithm over free modules `R^r` with a position-over-term order.
//! Ideals are the rank-one case.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::error::Result;
use crate::field::Fp;
use crate::monomial::Monomial;
use crate::order::{Key, TermOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub key: Key,
    pub pos: u32,
    pub mono: Monomial,
    pub c: u32,
}

/// Terms sorted by descending key, nonzero coefficients, distinct keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }
}

/// A basis element plus (optionally) its cofactors with respect to the input generators.
#[derive(Clone, Debug)]
pub(crate) struct Tracked {
    pub v: Vector,
    pub cof: Vec<Vector>,
}

/// Sums of shifted vectors, merged once at the end instead of per term.
pub(crate) struct Accumulator {
    slots: Vec<HashMap<(u32, Monomial), u32>>,
}

impl Accumulator {
    pub fn new(n: usize) -> Self {
        Accumulator { slots: vec![HashMap::new(); n] }
    }

    /// `slot += c * t * g`.
    pub fn add(&mut self, engine: &Engine, slot: usize, c: u32, t: &Monomial, g: &Vector) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let map = &mut self.slots[slot];
        for s in &g.terms {
            let mono = s.mono.checked_mul(t)?;
            let e = map.entry((s.pos, mono)).or_insert(0);
            *e = engine.fp.add(*e, engine.fp.mul(s.c, c));
        }
        Ok(())
    }

    pub fn finish(self, engine: &Engine) -> Vec<Vector> {
        self.slots
            .into_iter()
            .map(|m| engine.vector(m.into_iter().map(|((pos, mono), c)| (pos, mono, c))))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Engine {
    pub fp: Fp,
    pub order: TermOrder,
    pub weights: Vec<u32>,
    /// Position-over-term prefix in keys (`false` for ideals).
    pub module: bool,
}

fn add_keys(a: &Key, b: &Key) -> Key {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

impl Engine {
    pub fn key(&self, pos: u32, mono: &Monomial) -> Key {
        let mut k = Key::new();
        if self.module {
            k.push(-(pos as i64));
        }
        k.extend(self.order.key(&self.weights, mono));
        k
    }

    fn shift_key(&self, mono: &Monomial) -> Key {
        self.key(0, mono)
    }

    pub fn vector<I>(&self, terms: I) -> Vector
    where
        I: IntoIterator<Item = (u32, Monomial, u32)>,
    {
        let mut acc: BTreeMap<Key, Term> = BTreeMap::new();
        for (pos, mono, c) in terms {
            let key = self.key(pos, &mono);
            let entry = acc.entry(key.clone()).or_insert(Term { key, pos, mono, c: 0 });
            entry.c = self.fp.add(entry.c, c);
        }
        let mut terms: Vec<Term> = acc.into_values().filter(|t| t.c != 0).collect();
        terms.reverse();
        Vector { terms }
    }

    pub fn scale(&self, v: &Vector, c: u32) -> Vector {
        if c == 0 {
            return Vector::default();
        }
        Vector {
            terms: v
                .terms
                .iter()
                .map(|t| Term {
                    c: self.fp.mul(t.c, c),
                    ..t.clone()
                })
                .collect(),
        }
    }

    fn shift(&self, v: &Vector, c: u32, t: &Monomial, tk: &Key) -> Result<Vector> {
        let terms = v
            .terms
            .iter()
            .map(|s| {
                Ok(Term {
                    key: add_keys(&s.key, tk),
                    pos: s.pos,
                    mono: s.mono.checked_mul(t)?,
                    c: self.fp.mul(s.c, c),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Vector { terms })
    }

    /// `f + g`, merging sorted term lists.
    pub fn add(&self, f: &Vector, g: &Vector) -> Vector {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < g.terms.len() {
            let (a, b) = (&f.terms[i], &g.terms[j]);
            match a.key.cmp(&b.key) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.fp.add(a.c, b.c);
                    if c != 0 {
                        out.push(Term { c, ..a.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f.terms[i..]);
        out.extend_from_slice(&g.terms[j..]);
        Vector { terms: out }
    }

    /// `f + c * t * g`.
    pub fn add_scaled(&self, f: &Vector, c: u32, t: &Monomial, g: &Vector) -> Result<Vector> {
        let tk = self.shift_key(t);
        Ok(self.add(f, &self.shift(g, c, t, &tk)?))
    }

    pub fn make_monic(&self, v: &Vector) -> (Vector, u32) {
        if v.is_zero() {
            return (v.clone(), 1);
        }
        let inv = self.fp.inv(v.lead().c);
        (self.scale(v, inv), inv)
    }

    /// Full reduction of `f` by `basis`. When `quotients` is given, it receives for
    /// each basis element the multiplier polynomial (as a rank-one vector) used.
    pub fn normal_form(
        &self,
        f: &Vector,
        basis: &[&Vector],
        quotients: Option<&mut Vec<Vector>>,
    ) -> Result<Vector> {
        let mut work: BTreeMap<Key, Term> = f.terms.iter().map(|t| (t.key.clone(), t.clone())).collect();
        let mut rem = Vec::new();
        let mut qacc: Vec<HashMap<Monomial, u32>> = vec![HashMap::new(); basis.len()];
        while let Some((_, term)) = work.pop_last() {
            let divisor = basis.iter().position(|g| {
                let lt = g.lead();
                lt.pos == term.pos && lt.mono.divides(&term.mono)
            });
            match divisor {
                None => rem.push(term),
                Some(k) => {
                    let g = basis[k];
                    let lt = g.lead();
                    let t = term.mono.quotient(&lt.mono);
                    let q = self.fp.mul(term.c, self.fp.inv(lt.c));
                    if quotients.is_some() {
                        let e = qacc[k].entry(t.clone()).or_insert(0);
                        *e = self.fp.add(*e, q);
                    }
                    let tk = self.shift_key(&t);
                    let negq = self.fp.neg(q);
                    for s in &g.terms[1..] {
                        let key = add_keys(&s.key, &tk);
                        let delta = self.fp.mul(s.c, negq);
                        match work.get_mut(&key) {
                            Some(existing) => {
                                existing.c = self.fp.add(existing.c, delta);
                                if existing.c == 0 {
                                    work.remove(&key);
                                }
                            }
                            None => {
                                let mono = s.mono.checked_mul(&t)?;
                                work.insert(key.clone(), Term { key, pos: s.pos, mono, c: delta });
                            }
                        }
                    }
                }
            }
        }
        if let Some(out) = quotients {
            *out = qacc
                .into_iter()
                .map(|m| self.vector(m.into_iter().map(|(mono, c)| (0, mono, c))))
                .collect();
        }
        Ok(Vector { terms: rem })
    }

    /// `cof - Σ q_k cof_k`.
    fn combine_cofactors(&self, cof: &[Vector], quotients: &[Vector], basis: &[Tracked]) -> Result<Vec<Vector>> {
        let mut acc = Accumulator::new(cof.len());
        for (slot, v) in cof.iter().enumerate() {
            acc.add(self, slot, 1, &Monomial::one(v.terms.first().map_or(0, |t| t.mono.arity())), v)?;
        }
        for (q, b) in quotients.iter().zip(basis) {
            for qt in &q.terms {
                let negc = self.fp.neg(qt.c);
                for (slot, bc) in b.cof.iter().enumerate() {
                    acc.add(self, slot, negc, &qt.mono, bc)?;
                }
            }
        }
        Ok(acc.finish(self))
    }

    /// Reduced Gröbner basis of the submodule generated by `gens`.
    ///
    /// With `track`, each output element carries cofactors `h` with
    /// `element = Σ_i h_i gens_i`. Output is sorted by descending leading term.
    pub fn buchberger(&self, gens: &[Vector], track: bool) -> Result<Vec<Tracked>> {
        let n_in = gens.len();
        let unit = |i: usize, c: u32| -> Vec<Vector> {
            if !track {
                return Vec::new();
            }
            (0..n_in)
                .map(|j| {
                    if j == i {
                        self.vector([(0, Monomial::one(self.order.arity()), c)])
                    } else {
                        Vector::default()
                    }
                })
                .collect()
        };

        let mut basis: Vec<Tracked> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let (v, inv) = self.make_monic(g);
            basis.push(Tracked { v, cof: unit(i, inv) });
        }

        let mut pending: BTreeSet<(Key, usize, usize)> = BTreeSet::new();
        let mut pending_idx: HashSet<(usize, usize)> = HashSet::new();
        let add_pairs = |basis: &[Tracked], new: usize, pending: &mut BTreeSet<(Key, usize, usize)>, pending_idx: &mut HashSet<(usize, usize)>| {
            let ln = basis[new].v.lead();
            for (k, b) in basis.iter().enumerate().take(new) {
                let lk = b.v.lead();
                if lk.pos != ln.pos {
                    continue;
                }
                if !self.module && lk.mono.is_coprime(&ln.mono) {
                    continue;
                }
                let lcm = lk.mono.lcm(&ln.mono);
                pending.insert((self.key(ln.pos, &lcm), new, k));
                pending_idx.insert((k, new));
            }
        };
        for j in 0..basis.len() {
            add_pairs(&basis, j, &mut pending, &mut pending_idx);
        }

        while let Some((_, j, i)) = pending.pop_first() {
            pending_idx.remove(&(i, j));
            let (li, lj) = (basis[i].v.lead().clone(), basis[j].v.lead().clone());
            let lcm = li.mono.lcm(&lj.mono);
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k].v.lead().pos == li.pos
                    && basis[k].v.lead().mono.divides(&lcm)
                    && !pending_idx.contains(&(i.min(k), i.max(k)))
                    && !pending_idx.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            let ti = lcm.quotient(&li.mono);
            let tj = lcm.quotient(&lj.mono);
            let minus_one = self.fp.neg(1);
            let s = self.add_scaled(&Vector::default(), 1, &ti, &basis[i].v)?;
            let s = self.add_scaled(&s, minus_one, &tj, &basis[j].v)?;
            let refs: Vec<&Vector> = basis.iter().map(|b| &b.v).collect();
            let mut quots = Vec::new();
            let h = self.normal_form(&s, &refs, track.then_some(&mut quots))?;
            if h.is_zero() {
                continue;
            }
            let cof = if track {
                let mut c: Vec<Vector> = Vec::with_capacity(n_in);
                for (a, b) in basis[i].cof.iter().zip(&basis[j].cof) {
                    let x = self.add_scaled(&Vector::default(), 1, &ti, a)?;
                    c.push(self.add_scaled(&x, minus_one, &tj, b)?);
                }
                self.combine_cofactors(&c, &quots, &basis)?
            } else {
                Vec::new()
            };
            let (v, inv) = self.make_monic(&h);
            let cof = cof.iter().map(|c| self.scale(c, inv)).collect();
            basis.push(Tracked { v, cof });
            let new = basis.len() - 1;
            add_pairs(&basis, new, &mut pending, &mut pending_idx);
        }

        // minimalize: drop elements whose leading term is divisible by another's
        let n = basis.len();
        let mut keep = vec![true; n];
        for i in 0..n {
            let li = basis[i].v.lead();
            for j in 0..n {
                if i == j || !keep[j] {
                    continue;
                }
                let lj = basis[j].v.lead();
                if lj.pos == li.pos && lj.mono.divides(&li.mono) && (lj.mono != li.mono || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut minimal: Vec<Tracked> = basis
            .into_iter()
            .zip(keep)
            .filter_map(|(b, k)| k.then_some(b))
            .collect();

        // interreduce tails
        for i in 0..minimal.len() {
            let others: Vec<Tracked> = minimal
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, b)| b.clone())
                .collect();
            let refs: Vec<&Vector> = others.iter().map(|b| &b.v).collect();
            let mut quots = Vec::new();
            let reduced = self.normal_form(&minimal[i].v, &refs, track.then_some(&mut quots))?;
            debug_assert_eq!(reduced.lead().key, minimal[i].v.lead().key);
            if track {
                minimal[i].cof = self.combine_cofactors(&minimal[i].cof, &quots, &others)?;
            }
            minimal[i].v = reduced;
        }
        minimal.sort_by(|a, b| b.v.lead().key.cmp(&a.v.lead().key));
        Ok(minimal)
    }
}
