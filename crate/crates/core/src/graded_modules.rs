//! Presented modules, the Frobenius functor, bracket images and module-level
//! Frobenius closure, m-coprimary detection, and truncated graded duals.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::closures::{lifted_cofactors, module_target_digest, CertificateKind, ClosureCertificate};
use crate::error::{Error, Result};
use crate::groebner::{self, ModuleBasis};
use crate::ideal::IdealSpec;
use crate::monomial::Monomial;
use crate::poly::{frobenius_q, Degree, Polynomial};
use crate::ring::RingContext;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeModule {
    pub shifts: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(shifts: Vec<i64>) -> Self {
        GradedFreeModule { shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }
}

/// `M = R^r / (columns)`. Columns are relation vectors of length `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentedModule {
    ring: RingContext,
    ambient: GradedFreeModule,
    relations: Vec<Vec<Polynomial>>,
    graded: bool,
    column_shifts: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleElement {
    pub coordinates: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn new(coordinates: Vec<Polynomial>) -> Self {
        ModuleElement { coordinates }
    }

    pub fn zero(ring: &RingContext, rank: usize) -> Self {
        ModuleElement::new(vec![Polynomial::zero(ring); rank])
    }

    pub fn unit(ring: &RingContext, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.coordinates[i] = Polynomial::one(ring);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Polynomial::is_zero)
    }

    /// Coordinatewise `q`-th powers.
    pub fn frobenius_power(&self, e: u32) -> Result<Self> {
        Ok(ModuleElement::new(
            self.coordinates.iter().map(|c| c.frobenius_power(e)).collect::<Result<_>>()?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubmoduleSpec {
    pub generators: Vec<ModuleElement>,
}

impl SubmoduleSpec {
    pub fn new(generators: Vec<ModuleElement>) -> Self {
        SubmoduleSpec { generators }
    }

    /// `I` as a submodule of `R^1`.
    pub fn from_ideal(ideal: &IdealSpec) -> Self {
        SubmoduleSpec::new(ideal.generators().iter().map(|g| ModuleElement::new(vec![g.clone()])).collect())
    }

    /// `m^k · R^r`.
    pub fn maximal_power(ring: &RingContext, rank: usize, k: u32) -> Result<Self> {
        let mk = IdealSpec::maximal(ring).power(k)?;
        let mut gens = Vec::new();
        for i in 0..rank {
            for g in mk.generators() {
                let mut v = ModuleElement::zero(ring, rank);
                v.coordinates[i] = g.clone();
                gens.push(v);
            }
        }
        Ok(SubmoduleSpec::new(gens))
    }

    fn vectors(&self) -> Vec<Vec<Polynomial>> {
        self.generators.iter().map(|g| g.coordinates.clone()).collect()
    }
}

fn entry_degree(f: &Polynomial) -> Option<Result<i64>> {
    match f.degree_check() {
        (Degree::NegInfinity, _) => None,
        (Degree::Finite(d), true) => Some(Ok(d as i64)),
        (Degree::Finite(_), false) => Some(Err(Error::GradedInvariant(format!("entry `{f}` is not homogeneous")))),
    }
}

impl PresentedModule {
    /// With `graded`, every nonzero entry must be homogeneous with
    /// `deg(r_ij) = shift(column j) − shift(row i)`; column shifts are inferred.
    pub fn new(ring: &RingContext, shifts: Vec<i64>, relations: Vec<Vec<Polynomial>>, graded: bool) -> Result<Self> {
        let rank = shifts.len();
        let mut column_shifts = Vec::with_capacity(relations.len());
        for (j, col) in relations.iter().enumerate() {
            if col.len() != rank {
                return Err(Error::Invalid(format!("relation column {j} has length {}, rank is {rank}", col.len())));
            }
            if col.iter().any(|c| c.ring() != ring) {
                return Err(Error::ContextMismatch);
            }
            let mut shift = None;
            if graded {
                for (i, entry) in col.iter().enumerate() {
                    let Some(d) = entry_degree(entry) else { continue };
                    let s = d? + shifts[i];
                    match shift {
                        None => shift = Some(s),
                        Some(t) if t != s => {
                            return Err(Error::GradedInvariant(format!(
                                "column {j}: entry ({i}, {j}) = `{entry}` has degree {} but the column needs {}",
                                s - shifts[i],
                                t - shifts[i]
                            )))
                        }
                        _ => {}
                    }
                }
            }
            column_shifts.push(shift.unwrap_or(0));
        }
        Ok(PresentedModule {
            ring: ring.clone(),
            ambient: GradedFreeModule::new(shifts),
            relations,
            graded,
            column_shifts,
        })
    }

    pub fn free(ring: &RingContext, rank: usize) -> Self {
        PresentedModule::new(ring, vec![0; rank], Vec::new(), true).expect("free module")
    }

    /// `R/I` as a cyclic module.
    pub fn cyclic_quotient(ideal: &IdealSpec) -> Result<Self> {
        let cols = ideal.generators().iter().map(|g| vec![g.clone()]).collect();
        let graded = ideal.generators().iter().all(Polynomial::is_homogeneous);
        PresentedModule::new(ideal.ring(), vec![0], cols, graded)
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn ambient(&self) -> &GradedFreeModule {
        &self.ambient
    }

    pub fn rank(&self) -> usize {
        self.ambient.rank()
    }

    pub fn relations(&self) -> &[Vec<Polynomial>] {
        &self.relations
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn column_shifts(&self) -> &[i64] {
        &self.column_shifts
    }

    fn check_element(&self, u: &ModuleElement) -> Result<()> {
        if u.coordinates.len() != self.rank() {
            return Err(Error::Invalid(format!(
                "element has {} coordinates, module rank is {}",
                u.coordinates.len(),
                self.rank()
            )));
        }
        if u.coordinates.iter().any(|c| c.ring() != &self.ring) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn check_submodule(&self, n: &SubmoduleSpec) -> Result<()> {
        n.generators.iter().try_for_each(|g| self.check_element(g))
    }

    fn basis_with(&self, n: &SubmoduleSpec) -> Result<Arc<ModuleBasis>> {
        let mut gens = n.vectors();
        gens.extend(self.relations.iter().cloned());
        ModuleBasis::compute(&self.ring, self.rank(), &gens)
    }
}

/// The presentation with every entry raised to the `p^e`-th power.
pub fn frobenius_functor(m: &PresentedModule, e: u32) -> Result<PresentedModule> {
    let q = frobenius_q(m.ring.p(), e)? as i64;
    let relations = m
        .relations
        .iter()
        .map(|col| col.iter().map(|c| c.frobenius_power(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let scale = |v: &[i64]| -> Result<Vec<i64>> {
        v.iter()
            .map(|&s| {
                if m.graded {
                    s.checked_mul(q).ok_or_else(|| Error::Overflow(format!("shift {s} * {q}")))
                } else {
                    Ok(s)
                }
            })
            .collect()
    };
    Ok(PresentedModule {
        ring: m.ring.clone(),
        ambient: GradedFreeModule::new(scale(&m.ambient.shifts)?),
        relations,
        graded: m.graded,
        column_shifts: scale(&m.column_shifts)?,
    })
}

/// `N^[q]_M`: generated by the coordinatewise `q`-th powers of `N`'s generators,
/// as a submodule of `frobenius_functor(M, e)`.
pub fn bracket_image(n: &SubmoduleSpec, m: &PresentedModule, e: u32) -> Result<SubmoduleSpec> {
    m.check_submodule(n)?;
    Ok(SubmoduleSpec::new(
        n.generators.iter().map(|g| g.frobenius_power(e)).collect::<Result<_>>()?,
    ))
}

/// `u ∈ N + (relations of M)` in the ambient free module.
pub fn module_membership(u: &ModuleElement, n: &SubmoduleSpec, m: &PresentedModule) -> Result<bool> {
    m.check_element(u)?;
    m.check_submodule(n)?;
    if u.is_zero() {
        return Ok(true);
    }
    m.basis_with(n)?.contains(&u.coordinates)
}

fn module_certificate(u: &ModuleElement, n: &SubmoduleSpec, m: &PresentedModule, e: u32) -> Result<ClosureCertificate> {
    let mut cols = n.vectors();
    cols.extend(m.relations.iter().cloned());
    let hs = lifted_cofactors(&m.ring, &cols, &u.coordinates, None, e)?
        .ok_or_else(|| Error::Invalid("membership reported but no representation found".into()))?;
    Ok(ClosureCertificate {
        kind: CertificateKind::Frobenius,
        e,
        ring: m.ring.clone(),
        module: true,
        element: u.coordinates.clone(),
        generators: n.vectors(),
        module_relations: m.relations.clone(),
        test_element: None,
        cofactors: hs,
        target: module_target_digest(&m.ring, &n.vectors(), &m.relations),
    })
}

/// Searches `e = 0..=e_max` for `u^q ∈ N^[q]_M`; `None` is "not found up to e_max".
pub fn module_frobenius_closure_membership(
    u: &ModuleElement,
    n: &SubmoduleSpec,
    m: &PresentedModule,
    e_max: u32,
) -> Result<Option<ClosureCertificate>> {
    m.check_element(u)?;
    m.check_submodule(n)?;
    // v_e ≡ u^(p^e) modulo level e, reduced iteratively as in the ideal case
    let mut v = u.coordinates.clone();
    for e in 0..=e_max {
        let fm = frobenius_functor(m, e)?;
        let basis = fm.basis_with(&bracket_image(n, m, e)?)?;
        if e > 0 {
            v = v.iter().map(|c| c.frobenius_power(1)).collect::<Result<_>>()?;
        }
        v = basis.reduce(&v)?;
        if v.iter().all(Polynomial::is_zero) {
            return module_certificate(u, n, m, e).map(Some);
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coprimary {
    /// `m^n M ⊆ N`, with `n` least.
    Yes { n: u32 },
    /// Definitive: either an infinite staircase ray `(position, variable)` or a
    /// finite quotient whose length bound was exhausted.
    No { ray: Option<(usize, usize)> },
    /// The cap was reached before a verdict.
    Unknown,
}

pub const DEFAULT_COPRIMARY_CAP: u32 = 64;

/// Whether `M/N` is killed by a power of `m`.
///
/// An infinite staircase is a definitive no. Otherwise `M/N` has finite
/// dimension `D`, and if it is m-coprimary then `m^D` kills it, so the search
/// up to `min(D, cap)` is conclusive whenever `D ≤ cap`.
pub fn is_m_coprimary(m: &PresentedModule, n: &SubmoduleSpec, cap: u32) -> Result<Coprimary> {
    m.check_submodule(n)?;
    let basis = m.basis_with(n)?;
    if let Some(ray) = basis.infinite_ray() {
        return Ok(Coprimary::No { ray: Some(ray) });
    }
    let dim = basis.standard_terms().map_or(0, |s| s.len()) as u32;
    if dim == 0 {
        return Ok(Coprimary::Yes { n: 0 });
    }
    let ring = m.ring();
    let arity = ring.arity();
    let rank = m.rank();
    for k in 1..=dim.min(cap) {
        let killed = monomials_of_degree(arity, k).into_iter().all(|mono| {
            (0..rank).all(|i| {
                let mut v = vec![Polynomial::zero(ring); rank];
                v[i] = Polynomial::term(ring, 1, mono.clone());
                basis.contains(&v).unwrap_or(false)
            })
        });
        if killed {
            return Ok(Coprimary::Yes { n: k });
        }
    }
    if dim <= cap {
        Ok(Coprimary::No { ray: None })
    } else {
        Ok(Coprimary::Unknown)
    }
}

pub(crate) fn monomials_of_degree(arity: usize, d: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
        if slots == 1 {
            prefix.push(left);
            out.push(Monomial::from_exponents(prefix));
            prefix.pop();
            return;
        }
        for a in (0..=left).rev() {
            prefix.push(a);
            rec(prefix, left - a, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), d, arity, &mut out);
    out
}

/// Dimensions of the components `W_j` (`j−1 < δ ≤ j`) of `R^{1/q}/m^n R^{1/q}`,
/// which equal the dual dimensions `dim V_{−j}`.
///
/// With `y = x^{1/q}` the quotient is `F_p[y]/((y^q)^n + rel(y^q))`, and a
/// standard monomial `y^b` has degree `δ = |b|/q`. Entries run over
/// `j = 0..=j_max` including any zero components in between.
pub fn graded_dual_dimensions(ring: &RingContext, q: u64, n: u32) -> Result<Vec<(u64, u64)>> {
    if !ring.is_standard_graded() {
        return Err(Error::Invalid("graded duals need a standard graded ring".into()));
    }
    let p = ring.p() as u64;
    let mut e = 0u32;
    let mut t = 1u64;
    while t < q {
        t = t.checked_mul(p).ok_or_else(|| Error::Overflow(format!("{p}^{e}")))?;
        e += 1;
    }
    if t != q {
        return Err(Error::Invalid(format!("q = {q} is not a power of p = {p}")));
    }
    let poly_ring = ring.polynomial_ring();
    let mut gens: Vec<Polynomial> = ring
        .relations()
        .iter()
        .map(|r| r.with_ring(&poly_ring)?.frobenius_power(e))
        .collect::<Result<_>>()?;
    let m_q = crate::closures::frobenius_power_ideal(&IdealSpec::maximal(&poly_ring), e)?;
    gens.extend(m_q.power(n)?.generators().iter().cloned());
    let quotient = IdealSpec::new(&poly_ring, gens)?;
    let g = groebner::basis(&quotient)?;
    let standard = g
        .standard_monomials()
        .ok_or_else(|| Error::Invalid("quotient is not finite-dimensional".into()))?;
    let mut dims: BTreeMap<u64, u64> = BTreeMap::new();
    for b in standard {
        let deg = b.total_degree();
        *dims.entry(deg.div_ceil(q)).or_insert(0) += 1;
    }
    let top = dims.keys().next_back().copied().unwrap_or(0);
    Ok((0..=top).map(|j| (j, dims.get(&j).copied().unwrap_or(0))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: &RingContext, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn el(r: &RingContext, cs: &[&str]) -> ModuleElement {
        ModuleElement::new(cs.iter().map(|c| p(r, c)).collect())
    }

    fn cone(pr: u64) -> RingContext {
        RingContext::standard(pr, &["x", "y", "z"]).unwrap().with_relations(&["x^3+y^3+z^3"]).unwrap()
    }

    #[test]
    fn functor_examples() {
        let r = RingContext::standard(2, &["x", "y"]).unwrap();
        let m = PresentedModule::new(&r, vec![0, 0], vec![vec![p(&r, "x"), p(&r, "y")]], true).unwrap();
        let f = frobenius_functor(&m, 1).unwrap();
        assert_eq!(f.relations(), &[vec![p(&r, "x^2"), p(&r, "y^2")]]);
        assert_eq!(f.column_shifts(), &[2]);
        assert_eq!(frobenius_functor(&m, 0).unwrap(), m);

        let i = IdealSpec::parse(&r, "x*y, x + y").unwrap();
        let cyc = PresentedModule::cyclic_quotient(&i).unwrap();
        let iq = crate::closures::frobenius_power_ideal(&i, 1).unwrap();
        assert_eq!(frobenius_functor(&cyc, 1).unwrap(), PresentedModule::cyclic_quotient(&iq).unwrap());
    }

    #[test]
    fn graded_invariant_is_enforced() {
        let r = RingContext::standard(2, &["x", "y"]).unwrap();
        let bad = PresentedModule::new(&r, vec![0, 0], vec![vec![p(&r, "x"), p(&r, "y^2")]], true);
        assert!(matches!(bad, Err(Error::GradedInvariant(_))));
        let shifted = PresentedModule::new(&r, vec![0, 1], vec![vec![p(&r, "x^2"), p(&r, "y")]], true).unwrap();
        assert_eq!(shifted.column_shifts(), &[2]);
        assert!(PresentedModule::new(&r, vec![0], vec![vec![p(&r, "x + y^2")]], true).is_err());
        assert!(PresentedModule::new(&r, vec![0], vec![vec![p(&r, "x + y^2")]], false).is_ok());
    }

    #[test]
    fn bracket_examples() {
        let r = RingContext::standard(2, &["x", "y"]).unwrap();
        let free = PresentedModule::free(&r, 2);
        let n = SubmoduleSpec::new(vec![el(&r, &["x", "y"])]);
        assert_eq!(bracket_image(&n, &free, 1).unwrap(), SubmoduleSpec::new(vec![el(&r, &["x^2", "y^2"])]));
        let zero = SubmoduleSpec::new(vec![]);
        assert_eq!(bracket_image(&zero, &free, 2).unwrap(), zero);
        // functoriality: e then e'
        let twice = bracket_image(&bracket_image(&n, &free, 1).unwrap(), &frobenius_functor(&free, 1).unwrap(), 1).unwrap();
        assert_eq!(twice, bracket_image(&n, &free, 2).unwrap());
    }

    #[test]
    fn membership_examples() {
        let r = RingContext::standard(2, &["x", "y"]).unwrap();
        let free = PresentedModule::free(&r, 2);
        let n = SubmoduleSpec::new(vec![el(&r, &["x", "0"]), el(&r, &["0", "y"])]);
        assert!(module_membership(&el(&r, &["x", "0"]), &n, &free).unwrap());
        assert!(!module_membership(&el(&r, &["y", "0"]), &n, &free).unwrap());
        let m = PresentedModule::new(&r, vec![0, 0], vec![vec![p(&r, "y"), p(&r, "x")]], true).unwrap();
        assert!(module_membership(&el(&r, &["y", "x"]), &SubmoduleSpec::new(vec![]), &m).unwrap());
    }

    #[test]
    fn module_closure_examples() {
        let r = cone(2);
        let m = PresentedModule::free(&r, 1);
        let n = SubmoduleSpec::from_ideal(&IdealSpec::parse(&r, "y, z").unwrap());
        let cert = module_frobenius_closure_membership(&el(&r, &["x^2"]), &n, &m, 2).unwrap().unwrap();
        assert_eq!(cert.e, 1);
        assert!(cert.verify().unwrap());
        let back = ClosureCertificate::from_json(&cert.to_json()).unwrap();
        assert!(back.verify().unwrap());
        assert_eq!(module_frobenius_closure_membership(&el(&r, &["y"]), &n, &m, 2).unwrap().unwrap().e, 0);

        let r2 = RingContext::standard(2, &["x", "y"]).unwrap();
        let free = PresentedModule::free(&r2, 2);
        let n = SubmoduleSpec::new(vec![el(&r2, &["x", "0"]), el(&r2, &["0", "x"])]);
        assert!(module_frobenius_closure_membership(&el(&r2, &["y", "0"]), &n, &free, 4).unwrap().is_none());
    }

    #[test]
    fn module_certificate_with_presentation_columns() {
        let r = RingContext::standard(3, &["x", "y"]).unwrap();
        let m = PresentedModule::new(&r, vec![0, 0], vec![vec![p(&r, "x"), p(&r, "y")]], true).unwrap();
        let n = SubmoduleSpec::new(vec![el(&r, &["0", "y"])]);
        // (x, 0) = (x, y) - (0, y) is zero in M/N
        let cert = module_frobenius_closure_membership(&el(&r, &["x", "0"]), &n, &m, 1).unwrap().unwrap();
        assert_eq!(cert.e, 0);
        assert!(cert.verify().unwrap());
        let mut bad = cert.clone();
        bad.cofactors[1] = Polynomial::zero(&r);
        assert!(!bad.verify().unwrap());
    }

    #[test]
    fn coprimary_examples() {
        let r = cone(2);
        let m = PresentedModule::free(&r, 1);
        let mm = SubmoduleSpec::maximal_power(&r, 1, 1).unwrap();
        assert_eq!(is_m_coprimary(&m, &mm, 64).unwrap(), Coprimary::Yes { n: 1 });
        let n = SubmoduleSpec::from_ideal(&IdealSpec::parse(&r, "y, z").unwrap());
        assert_eq!(is_m_coprimary(&m, &n, 64).unwrap(), Coprimary::Yes { n: 3 });
        assert_eq!(is_m_coprimary(&m, &n, 2).unwrap(), Coprimary::Unknown);

        let r2 = RingContext::standard(2, &["x", "y"]).unwrap();
        let n = SubmoduleSpec::from_ideal(&IdealSpec::parse(&r2, "x").unwrap());
        assert_eq!(is_m_coprimary(&PresentedModule::free(&r2, 1), &n, 64).unwrap(), Coprimary::No { ray: Some((0, 1)) });

        // finite quotient supported away from the origin
        let r3 = RingContext::standard(2, &["x"]).unwrap();
        let n = SubmoduleSpec::from_ideal(&IdealSpec::parse(&r3, "x^2 + x").unwrap());
        assert_eq!(is_m_coprimary(&PresentedModule::free(&r3, 1), &n, 64).unwrap(), Coprimary::No { ray: None });
    }

    /// Oracle for a polynomial ring: `y^b` survives iff `Σ ⌊b_i/q⌋ < n`.
    fn enumerate(arity: usize, q: u64, n: u64) -> BTreeMap<u64, u64> {
        let bound = q * n;
        let mut out = BTreeMap::new();
        let mut b = vec![0u64; arity];
        loop {
            if b.iter().map(|x| x / q).sum::<u64>() < n {
                let s: u64 = b.iter().sum();
                *out.entry(s.div_ceil(q)).or_insert(0) += 1;
            }
            let mut i = 0;
            loop {
                if i == arity {
                    return out;
                }
                b[i] += 1;
                if b[i] < bound {
                    break;
                }
                b[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn dual_dimension_examples() {
        let r = RingContext::standard(2, &["x"]).unwrap();
        assert_eq!(graded_dual_dimensions(&r, 1, 2).unwrap(), vec![(0, 1), (1, 1)]);
        assert_eq!(graded_dual_dimensions(&r, 2, 1).unwrap(), vec![(0, 1), (1, 1)]);
        assert!(graded_dual_dimensions(&r, 3, 1).is_err());
        let r2 = RingContext::standard(2, &["x", "y"]).unwrap();
        for q in [1, 2, 4] {
            for n in 1..=3 {
                let got: BTreeMap<u64, u64> = graded_dual_dimensions(&r2, q, n).unwrap().into_iter().filter(|d| d.1 > 0).collect();
                assert_eq!(got, enumerate(2, q, n as u64), "q={q} n={n}");
            }
        }
    }

    /// Degrees `δ ≥ n + c` with `c = μ − 1` vanish; the component `W_{n+c}`
    /// collects only degrees strictly below `n + c`.
    #[test]
    fn degree_bound_holds() {
        let r2 = RingContext::standard(2, &["x", "y"]).unwrap();
        let c = 1u64;
        for q in [1u64, 2, 4, 8] {
            for n in 1..=3u64 {
                let dims = graded_dual_dimensions(&r2, q, n as u32).unwrap();
                assert!(dims.iter().all(|&(j, d)| j <= n + c || d == 0));
            }
        }
    }

    #[test]
    fn cone_dual_dimensions_are_finite() {
        let r = cone(2);
        let dims = graded_dual_dimensions(&r, 2, 1).unwrap();
        assert_eq!(dims.iter().map(|d| d.1).sum::<u64>(), 8);
    }
}
