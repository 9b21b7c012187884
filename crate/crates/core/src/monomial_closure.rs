//! Integral closure of monomial ideals via the Newton polyhedron, and the
//! regular-ring Briançon–Skoda containment check.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::split_top_level;
use crate::ring::RingContext;
use crate::Polynomial;

type Q = Ratio<i128>;

/// Monomial ideal given by exponent vectors, kept as a sorted antichain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    arity: usize,
    gens: Vec<Vec<u32>>,
}

fn dominates(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()).then_with(|| b.cmp(a)));
    gens.dedup();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| dominates(&g, h)) {
            out.push(g);
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

impl MonomialIdeal {
    pub fn new(arity: usize, gens: Vec<Vec<u32>>) -> Result<Self> {
        if gens.iter().any(|g| g.len() != arity) {
            return Err(Error::ArityMismatch);
        }
        Ok(MonomialIdeal {
            arity,
            gens: minimalize(gens),
        })
    }

    /// Parses `(x^2*y, y^3)` over the given variables.
    pub fn parse(names: &[&str], src: &str) -> Result<Self> {
        let ring = RingContext::new(2, names)?;
        let trimmed = src.trim();
        let inner = trimmed.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(trimmed);
        let mut gens = Vec::new();
        for piece in split_top_level(inner) {
            if piece.trim().is_empty() {
                continue;
            }
            let f = Polynomial::parse(&ring, piece)?;
            if f.len() != 1 {
                return Err(Error::Invalid(format!("`{}` is not a monomial", piece.trim())));
            }
            gens.push(f.terms()[0].0.exponents().to_vec());
        }
        Self::new(names.len(), gens)
    }

    /// Like [`MonomialIdeal::parse`], taking variables in order of first appearance.
    pub fn parse_infer(src: &str) -> Result<(Vec<String>, Self)> {
        let mut names: Vec<String> = Vec::new();
        let mut chars = src.char_indices().peekable();
        while let Some((i, c)) = chars.next() {
            if c.is_ascii_alphabetic() || c == '_' {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        end = j + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let name = &src[i..end];
                if !names.iter().any(|n| n == name) {
                    names.push(name.to_string());
                }
            }
        }
        if names.is_empty() {
            return Err(Error::Invalid("monomial ideal mentions no variables".into()));
        }
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let ideal = Self::parse(&refs, src)?;
        Ok((names, ideal))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        self.gens.iter().any(|g| dominates(a, g))
    }

    /// `I^k` as a minimalized Minkowski sum.
    pub fn power(&self, k: u32) -> MonomialIdeal {
        let mut acc = vec![vec![0; self.arity]];
        for _ in 0..k {
            let mut next = Vec::with_capacity(acc.len() * self.gens.len());
            for a in &acc {
                for g in &self.gens {
                    next.push(a.iter().zip(g).map(|(x, y)| x + y).collect());
                }
            }
            acc = minimalize(next);
        }
        MonomialIdeal {
            arity: self.arity,
            gens: acc,
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .gens
            .iter()
            .map(|g| {
                let factors: Vec<String> = g
                    .iter()
                    .zip(names)
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
                    .collect();
                if factors.is_empty() {
                    "1".into()
                } else {
                    factors.join("*")
                }
            })
            .collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.arity).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

/// Solves `A λ = b` for the columns in `subset` when they are independent and
/// the system is consistent.
#[allow(clippy::needless_range_loop)]
fn solve(columns: &[Vec<Q>], subset: &[usize], b: &[Q]) -> Option<Vec<Q>> {
    let rows = b.len();
    let k = subset.len();
    let mut m: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Q> = subset.iter().map(|&c| columns[c][r]).collect();
            row.push(b[r]);
            row
        })
        .collect();
    for col in 0..k {
        let pivot_row = col;
        let found = (pivot_row..rows).find(|&r| m[r][col] != Q::from_integer(0))?;
        m.swap(pivot_row, found);
        let inv = Q::from_integer(1) / m[pivot_row][col];
        for x in m[pivot_row].iter_mut() {
            *x *= inv;
        }
        for r in 0..rows {
            if r != pivot_row && m[r][col] != Q::from_integer(0) {
                let f = m[r][col];
                for c in 0..=k {
                    let delta = f * m[pivot_row][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    if m[k..].iter().any(|row| row[k] != Q::from_integer(0)) {
        return None;
    }
    Some((0..k).map(|i| m[i][k]).collect())
}

fn subsets(n: usize, max: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if !cur.is_empty() && f(cur) {
            return true;
        }
        if cur.len() == max {
            return false;
        }
        for i in start..n {
            cur.push(i);
            if rec(i + 1, n, max, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, max, &mut Vec::new(), f)
}

/// `a ∈ conv(points) + ℝ^n_{≥0}`, exactly. Columns are `(g, 1)` for points and
/// `(e_i, 0)` for the orthant rays; Carathéodory bounds supports by `n + 1`.
fn in_newton_polyhedron(a: &[Q], points: &[Vec<u32>]) -> bool {
    let n = a.len();
    if points.is_empty() {
        return false;
    }
    let mut columns: Vec<Vec<Q>> = points
        .iter()
        .map(|g| {
            let mut c: Vec<Q> = g.iter().map(|&x| Q::from_integer(x as i128)).collect();
            c.push(Q::from_integer(1));
            c
        })
        .collect();
    for i in 0..n {
        let mut c = vec![Q::from_integer(0); n + 1];
        c[i] = Q::from_integer(1);
        columns.push(c);
    }
    let mut b = a.to_vec();
    b.push(Q::from_integer(1));
    let zero = Q::from_integer(0);
    subsets(columns.len(), n + 1, &mut |s| {
        // at least one point column is needed for the affine equation
        s[0] < points.len() && solve(&columns, s, &b).is_some_and(|x| x.iter().all(|v| *v >= zero))
    })
}

#[allow(clippy::needless_range_loop)]
fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let zero = Q::from_integer(0);
    let mut acc = Q::from_integer(1);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| m[r][col] != zero) else {
            return zero;
        };
        if p != col {
            m.swap(p, col);
            acc = -acc;
        }
        acc *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                let delta = f * m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    acc
}

/// Newton polyhedron `conv(G) + ℝ^n_{≥0}` as facet inequalities `w·a ≥ c`.
#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    arity: usize,
    facets: Vec<(Vec<i128>, i128)>,
}

impl NewtonPolyhedron {
    /// Facets of the homogenized cone spanned by `(g, 1)` and `(e_i, 0)`: every
    /// `n`-subset of independent columns gives a candidate normal (signed
    /// maximal minors), kept when all columns lie on one side.
    pub fn new(ideal: &MonomialIdeal) -> Self {
        let n = ideal.arity();
        let mut columns: Vec<Vec<i128>> = ideal
            .generators()
            .iter()
            .map(|g| g.iter().map(|&x| x as i128).chain([1]).collect())
            .collect();
        for i in 0..n {
            let mut c = vec![0; n + 1];
            c[i] = 1;
            columns.push(c);
        }
        let mut facets: Vec<(Vec<i128>, i128)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        subsets(columns.len(), n, &mut |s| {
            if s.len() != n {
                return false;
            }
            let normal: Vec<i128> = (0..=n)
                .map(|j| {
                    let minor: Vec<Vec<Q>> = s
                        .iter()
                        .map(|&c| (0..=n).filter(|&r| r != j).map(|r| Q::from_integer(columns[c][r])).collect())
                        .collect();
                    let d = det(minor).to_integer();
                    if j % 2 == 0 { d } else { -d }
                })
                .collect();
            if normal.iter().all(|&x| x == 0) {
                return false;
            }
            let dots: Vec<i128> = columns.iter().map(|c| c.iter().zip(&normal).map(|(a, b)| a * b).sum()).collect();
            let sign = if dots.iter().all(|&d| d >= 0) {
                1
            } else if dots.iter().all(|&d| d <= 0) {
                -1
            } else {
                return false;
            };
            let mut w: Vec<i128> = normal.iter().map(|x| x * sign).collect();
            let g = w.iter().fold(0i128, |acc, &x| num_integer::gcd(acc, x));
            w.iter_mut().for_each(|x| *x /= g);
            if seen.insert(w.clone()) {
                let c = -w[n];
                w.truncate(n);
                facets.push((w, c));
            }
            false
        });
        NewtonPolyhedron { arity: n, facets }
    }

    pub fn facets(&self) -> &[(Vec<i128>, i128)] {
        &self.facets
    }

    /// Membership of `a` in `m` times the polyhedron.
    pub fn contains_scaled(&self, a: &[u32], m: u32) -> bool {
        a.len() == self.arity
            && self
                .facets
                .iter()
                .all(|(w, c)| w.iter().zip(a).map(|(x, &y)| x * y as i128).sum::<i128>() >= c * m as i128)
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        self.contains_scaled(a, 1)
    }
}

/// Generators that are vertices of the Newton polyhedron.
pub fn newton_vertices(ideal: &MonomialIdeal) -> Vec<Vec<u32>> {
    let gens = ideal.generators();
    (0..gens.len())
        .filter(|&i| {
            let others: Vec<Vec<u32>> = gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            let a: Vec<Q> = gens[i].iter().map(|&x| Q::from_integer(x as i128)).collect();
            !in_newton_polyhedron(&a, &others)
        })
        .map(|i| gens[i].clone())
        .collect()
}

/// `x^a` lies in the integral closure of `I`, by Carathéodory subsets.
pub fn closure_membership(a: &[u32], ideal: &MonomialIdeal) -> Result<bool> {
    if a.len() != ideal.arity() {
        return Err(Error::ArityMismatch);
    }
    if ideal.contains(a) {
        return Ok(true);
    }
    let q: Vec<Q> = a.iter().map(|&x| Q::from_integer(x as i128)).collect();
    Ok(in_newton_polyhedron(&q, ideal.generators()))
}

/// Minimal generators of the closure of `I^m`, whose polyhedron is `m` times
/// that of `I`. Minimal generators have `a_i ≤ m·max_g g_i`: beyond that the
/// orthant ray absorbs a unit step.
fn closure_of_power(ideal: &MonomialIdeal, m: u32) -> Result<MonomialIdeal> {
    if ideal.is_empty() {
        return Err(Error::Invalid("integral closure of the zero ideal".into()));
    }
    let n = ideal.arity();
    let poly = NewtonPolyhedron::new(ideal);
    let bounds: Vec<u32> = (0..n)
        .map(|i| m * ideal.generators().iter().map(|g| g[i]).max().unwrap_or(0))
        .collect();
    let mut points: Vec<Vec<u32>> = Vec::new();
    let mut a = vec![0u32; n];
    'outer: loop {
        points.push(a.clone());
        for i in 0..n {
            if a[i] < bounds[i] {
                a[i] += 1;
                continue 'outer;
            }
            a[i] = 0;
        }
        break;
    }
    points.sort_by_key(|p| p.iter().sum::<u32>());
    let mut found: Vec<Vec<u32>> = Vec::new();
    for pt in points {
        if !found.iter().any(|f| dominates(&pt, f)) && poly.contains_scaled(&pt, m) {
            found.push(pt);
        }
    }
    MonomialIdeal::new(n, found)
}

/// Minimal generators of the integral closure, by enumerating the box
/// `[0, max_g g_i]` against the facet description.
pub fn integral_closure_generators(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    closure_of_power(ideal, 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct BrianconSkodaReport {
    pub d: usize,
    pub k: u32,
    /// Minimal generators of the closure of `I^{d+k}`.
    pub closure_generators: Vec<Vec<u32>>,
    pub pass: bool,
    pub counterexample: Option<Vec<u32>>,
}

/// Checks `closure(I^{d+k}) ⊆ I^{k+1}` with `d` the number of minimal generators.
pub fn briancon_skoda_check(ideal: &MonomialIdeal, k: u32) -> Result<BrianconSkodaReport> {
    let d = ideal.generators().len();
    let closure = closure_of_power(ideal, d as u32 + k)?;
    let target = ideal.power(k + 1);
    let counterexample = closure.generators().iter().find(|g| !target.contains(g)).cloned();
    Ok(BrianconSkodaReport {
        d,
        k,
        closure_generators: closure.generators().to_vec(),
        pass: counterexample.is_none(),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mi(gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(gens[0].len(), gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    /// Facet-normal oracle: `a` lies outside the polyhedron iff some nonnegative
    /// normal spanned by edge directions separates it from every generator.
    fn separated(a: &[u32], gens: &[Vec<u32>]) -> bool {
        let n = a.len();
        let mut dirs: Vec<Vec<i64>> = Vec::new();
        for g in gens {
            for h in gens {
                if g != h {
                    dirs.push(g.iter().zip(h).map(|(&x, &y)| x as i64 - y as i64).collect());
                }
            }
        }
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            dirs.push(e);
        }
        let mut normals: Vec<Vec<i64>> = Vec::new();
        match n {
            1 => normals.push(vec![1]),
            2 => normals.extend(dirs.iter().map(|d| vec![d[1], -d[0]])),
            _ => {
                for u in &dirs {
                    for v in &dirs {
                        normals.push(vec![u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]);
                    }
                }
            }
        }
        let dot = |w: &[i64], x: &[u32]| w.iter().zip(x).map(|(a, &b)| a * b as i64).sum::<i64>();
        normals.iter().any(|w| {
            let w: Vec<i64> = if w.iter().all(|&c| c <= 0) { w.iter().map(|c| -c).collect() } else { w.clone() };
            w.iter().all(|&c| c >= 0) && w.iter().any(|&c| c > 0) && gens.iter().all(|g| dot(&w, a) < dot(&w, g))
        })
    }

    #[test]
    fn membership_examples() {
        let i = mi(&[&[2, 0], &[0, 2]]);
        assert!(closure_membership(&[2, 0], &i).unwrap());
        assert!(closure_membership(&[1, 1], &i).unwrap());
        assert!(!closure_membership(&[1, 0], &i).unwrap());
        assert!(closure_membership(&[1, 1], &mi(&[&[3], &[1]])).is_err());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(integral_closure_generators(&mi(&[&[2, 0], &[0, 2]])).unwrap(), mi(&[&[2, 0], &[1, 1], &[0, 2]]));
        assert_eq!(integral_closure_generators(&mi(&[&[1, 0]])).unwrap(), mi(&[&[1, 0]]));
        let c = integral_closure_generators(&mi(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]])).unwrap();
        assert!(c.contains(&[1, 1, 1]));
        // the closure of (x^3, y^3, z^3) is m^3: all ten cubic monomials
        assert_eq!(c.generators().len(), 10);
        assert!(c.generators().iter().all(|g| g.iter().sum::<u32>() == 3));
    }

    #[test]
    fn briancon_skoda_examples() {
        let r = briancon_skoda_check(&mi(&[&[2, 0], &[0, 2]]), 0).unwrap();
        assert!(r.pass);
        assert_eq!(r.d, 2);
        assert!(briancon_skoda_check(&mi(&[&[1, 2]]), 3).unwrap().pass);
        assert!(briancon_skoda_check(&mi(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]), 1).unwrap().pass);
    }

    #[test]
    fn parse_forms() {
        let i = MonomialIdeal::parse(&["x", "y"], "(x^2*y, y^3)").unwrap();
        assert_eq!(i.generators(), &[vec![2, 1], vec![0, 3]]);
        let (names, j) = MonomialIdeal::parse_infer("(x^2, y^2)").unwrap();
        assert_eq!(names, vec!["x", "y"]);
        assert_eq!(j, mi(&[&[2, 0], &[0, 2]]));
        assert!(MonomialIdeal::parse(&["x", "y"], "(x + y)").is_err());
        assert_eq!(j.display_with(&names), "(x^2, y^2)");
    }

    fn ideal_strategy() -> impl Strategy<Value = MonomialIdeal> {
        (1usize..=3).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0u32..=6, n), 1..=3)
                .prop_filter("nonzero generators", |gs| gs.iter().all(|g| g.iter().any(|&x| x > 0)))
                .prop_map(move |gs| MonomialIdeal::new(n, gs).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn membership_matches_facet_oracle(i in ideal_strategy(), seed in proptest::collection::vec(0u32..=7, 3)) {
            let a: Vec<u32> = seed[..i.arity()].to_vec();
            let member = closure_membership(&a, &i).unwrap();
            prop_assert_eq!(member, !separated(&a, i.generators()));
        }

        #[test]
        fn closure_is_idempotent_and_contains_ideal(i in ideal_strategy()) {
            let c = integral_closure_generators(&i).unwrap();
            prop_assert!(i.generators().iter().all(|g| c.contains(g)));
            prop_assert_eq!(integral_closure_generators(&c).unwrap(), c.clone());
            // closure(I)^2 ⊆ closure(I^2)
            let c2 = integral_closure_generators(&i.power(2)).unwrap();
            prop_assert!(c.power(2).generators().iter().all(|g| c2.contains(g)));
        }

        #[test]
        fn closure_is_monotone(i in ideal_strategy(), extra in proptest::collection::vec(0u32..=6, 3)) {
            let mut gens = i.generators().to_vec();
            gens.push(extra[..i.arity()].to_vec());
            let bigger = MonomialIdeal::new(i.arity(), gens).unwrap();
            let c = integral_closure_generators(&i).unwrap();
            prop_assert!(c.generators().iter().all(|g| closure_membership(g, &bigger).unwrap()));
        }

        #[test]
        fn facets_agree_with_caratheodory(i in ideal_strategy(), seed in proptest::collection::vec(0u32..=9, 3)) {
            let a: Vec<u32> = seed[..i.arity()].to_vec();
            prop_assert_eq!(NewtonPolyhedron::new(&i).contains(&a), closure_membership(&a, &i).unwrap());
        }

        #[test]
        fn scaled_polyhedron_is_closure_of_power(i in ideal_strategy(), m in 1u32..=3) {
            prop_assert_eq!(closure_of_power(&i, m).unwrap(), integral_closure_generators(&i.power(m)).unwrap());
        }

        #[test]
        fn briancon_skoda_never_fails(i in ideal_strategy(), k in 0u32..=2) {
            prop_assert!(briancon_skoda_check(&i, k).unwrap().pass);
        }
    }
}
