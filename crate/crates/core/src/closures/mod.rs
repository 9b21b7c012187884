//! Frobenius powers and roots, Frobenius closure, and tight-closure evidence.

mod certificate;
mod oracle;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use log::debug;

pub use certificate::{CertificateKind, ClosureCertificate};
pub(crate) use certificate::{lifted_cofactors, module_target_digest};
pub use oracle::{
    tight_closure_oracle, tight_closure_oracle_with, OracleOptions, OracleReport, OracleRule, Verdict,
};

use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerBasis};
use crate::ideal::IdealSpec;
use crate::linalg::{self, SparseVec};
use crate::monomial::Monomial;
use crate::poly::{frobenius_q, Polynomial};

/// `I^[q]`, generated by the `q`-th powers of the given generators.
pub fn frobenius_power_ideal(ideal: &IdealSpec, e: u32) -> Result<IdealSpec> {
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.frobenius_power(e))
        .collect::<Result<Vec<_>>>()?;
    IdealSpec::new(ideal.ring(), gens)
}

/// The smallest `J` with `I ⊆ J^[q]` in a polynomial ring, via base-`q` digit
/// decomposition `g = Σ_μ h_μ^q x^μ`.
pub fn frobenius_root(ideal: &IdealSpec, e: u32) -> Result<IdealSpec> {
    let ring = ideal.ring();
    if ring.has_relations() {
        return Err(Error::RelationsPresent);
    }
    let q = frobenius_q(ring.p(), e)? as u32;
    let mut out = Vec::new();
    for g in ideal.generators() {
        let mut parts: BTreeMap<Vec<u32>, Vec<(Monomial, u32)>> = BTreeMap::new();
        for (m, c) in g.terms() {
            let digits: Vec<u32> = m.exponents().iter().map(|a| a % q).collect();
            let quot: Vec<u32> = m.exponents().iter().map(|a| a / q).collect();
            parts.entry(digits).or_default().push((Monomial::from_exponents(&quot), *c));
        }
        for (_, terms) in parts {
            let h = Polynomial::from_unsorted_terms(ring, terms);
            if !h.is_zero() && !out.contains(&h) {
                out.push(h);
            }
        }
    }
    IdealSpec::new(ring, out)
}

/// Cached bases of `I^[p^e] + relations`, built on demand.
pub(crate) struct BracketTower {
    ideal: IdealSpec,
    levels: Vec<Arc<GroebnerBasis>>,
}

impl BracketTower {
    pub(crate) fn new(ideal: &IdealSpec) -> Self {
        BracketTower {
            ideal: ideal.clone(),
            levels: Vec::new(),
        }
    }

    pub(crate) fn level(&mut self, e: u32) -> Result<Arc<GroebnerBasis>> {
        while self.levels.len() <= e as usize {
            let k = self.levels.len() as u32;
            self.levels.push(groebner::basis(&frobenius_power_ideal(&self.ideal, k)?)?);
        }
        Ok(self.levels[e as usize].clone())
    }
}

/// Residues `v_e ≡ u^(p^e)` modulo `I^[p^e] + relations` for `e = 0..=e_max`.
///
/// `v_e = NF(v_{e-1}^p)` is valid because `(I^[q] + rel)^[p] ⊆ I^[pq] + rel`,
/// and it keeps degrees low compared to reducing `u^(p^e)` directly.
pub(crate) fn bracket_residues(
    u: &Polynomial,
    tower: &mut BracketTower,
    e_max: u32,
) -> Result<Vec<Polynomial>> {
    let mut out = Vec::with_capacity(e_max as usize + 1);
    let mut v = tower.level(0)?.normal_form(u)?;
    out.push(v.clone());
    for e in 1..=e_max {
        v = tower.level(e)?.normal_form(&v.frobenius_power(1)?)?;
        out.push(v.clone());
    }
    Ok(out)
}

fn ideal_certificate(
    u: &Polynomial,
    ideal: &IdealSpec,
    c: Option<&Polynomial>,
    e: u32,
) -> Result<ClosureCertificate> {
    let ring = ideal.ring();
    let cols: Vec<Vec<Polynomial>> = ideal.generators().iter().map(|g| vec![g.clone()]).collect();
    let cofactors = lifted_cofactors(ring, &cols, std::slice::from_ref(u), c, e)?
        .ok_or_else(|| Error::Invalid("membership reported but no representation found".into()))?;
    Ok(ClosureCertificate {
        kind: if c.is_some() {
            CertificateKind::TightEvidence
        } else {
            CertificateKind::Frobenius
        },
        e,
        ring: ring.clone(),
        module: false,
        element: vec![u.clone()],
        generators: ideal.generators().iter().map(|g| vec![g.clone()]).collect(),
        module_relations: Vec::new(),
        test_element: c.cloned(),
        cofactors,
        target: ideal.digest(),
    })
}

/// Searches `e = 0..=e_max` for `u^q ∈ I^[q]R`; `None` means "not found up to
/// e_max", never a proof of non-membership.
pub fn frobenius_closure_membership(
    u: &Polynomial,
    ideal: &IdealSpec,
    e_max: u32,
) -> Result<Option<ClosureCertificate>> {
    if u.ring() != ideal.ring() {
        return Err(Error::ContextMismatch);
    }
    let mut tower = BracketTower::new(ideal);
    let mut v = tower.level(0)?.normal_form(u)?;
    for e in 0..=e_max {
        if e > 0 {
            v = tower.level(e)?.normal_form(&v.frobenius_power(1)?)?;
        }
        if v.is_zero() {
            debug!("u^(p^{e}) lies in the bracket power");
            return ideal_certificate(u, ideal, None, e).map(Some);
        }
    }
    Ok(None)
}

/// Result of the Frobenius closure chain computation.
#[derive(Clone, Debug)]
pub struct FrobeniusClosure {
    pub ideal: IdealSpec,
    /// Heuristic: the chain repeated once; no effective bound on `e` is known.
    pub stabilized: bool,
    pub e_stop: u32,
    /// `C_0 = I, C_1, ...` as computed.
    pub chain: Vec<IdealSpec>,
}

/// `C_e = {u : u^q ∈ I^[q]R}` over the quotient ring, as `I` plus the kernel
/// of the F_p-linear map `R/I → R/I^[q]R`, `u ↦ u^q`.
fn chain_level(
    ideal: &IdealSpec,
    basis: &[Monomial],
    residues: &[Polynomial],
) -> Result<IdealSpec> {
    let ring = ideal.ring();
    let fp = ring.field();
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let columns: Vec<SparseVec> = residues
        .iter()
        .map(|r| {
            r.terms()
                .iter()
                .map(|(m, c)| {
                    let next = index.len();
                    (*index.entry(m.clone()).or_insert(next), *c)
                })
                .collect()
        })
        .collect();
    let mut gens = ideal.generators().to_vec();
    for lambda in linalg::kernel(fp, &columns) {
        let terms = basis
            .iter()
            .zip(&lambda)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        gens.push(Polynomial::from_unsorted_terms(ring, terms));
    }
    IdealSpec::new(ring, gens)
}

fn check_ascent(prev: &IdealSpec, next: &IdealSpec, e: u32) -> Result<()> {
    if groebner::ideal_contains(next, prev)? {
        Ok(())
    } else {
        Err(Error::ChainDescent(e))
    }
}

/// The ascending chain `C_e` with `C_e ⊆ I^F`, stopped at the first `e` with
/// `C_e = C_{e+1}` (at most `C_{e_max+1}` is formed for that comparison).
///
/// In a quotient ring the quotient `R/I` must be finite-dimensional, except for
/// `I = (0)`, which is Frobenius-closed in the domains this toolkit targets.
pub fn frobenius_closure_ideal(ideal: &IdealSpec, e_max: u32) -> Result<FrobeniusClosure> {
    if e_max == 0 {
        return Err(Error::Invalid("e_max must be at least 1".into()));
    }
    let ring = ideal.ring();
    if ideal.is_zero() {
        return Ok(FrobeniusClosure {
            ideal: ideal.clone(),
            stabilized: true,
            e_stop: 1,
            chain: vec![ideal.clone(); 2],
        });
    }
    let mut level: Box<dyn FnMut(u32) -> Result<IdealSpec>> = if !ring.has_relations() {
        let ideal = ideal.clone();
        Box::new(move |e| frobenius_root(&frobenius_power_ideal(&ideal, e)?, e))
    } else {
        let g0 = groebner::basis(ideal)?;
        let basis = g0.standard_monomials().ok_or_else(|| {
            Error::Unsupported("Frobenius closure in a quotient ring needs R/I finite-dimensional".into())
        })?;
        let mut tower = BracketTower::new(ideal);
        let mut residues: Vec<Polynomial> = basis.iter().map(|m| Polynomial::term(ring, 1, m.clone())).collect();
        let mut done = 0u32;
        let ideal = ideal.clone();
        Box::new(move |e| {
            while done < e {
                done += 1;
                let g = tower.level(done)?;
                residues = residues
                    .iter()
                    .map(|v| g.normal_form(&v.frobenius_power(1)?))
                    .collect::<Result<Vec<_>>>()?;
            }
            chain_level(&ideal, &basis, &residues)
        })
    };
    let mut chain = vec![ideal.clone()];
    for e in 1..=e_max + 1 {
        let next = level(e)?;
        check_ascent(&chain[e as usize - 1], &next, e)?;
        let same = e >= 2 && groebner::ideal_equal(&chain[e as usize - 1], &next)?;
        chain.push(next);
        if same {
            return Ok(FrobeniusClosure {
                ideal: chain[e as usize - 1].clone(),
                stabilized: true,
                e_stop: e - 1,
                chain,
            });
        }
    }
    Ok(FrobeniusClosure {
        ideal: chain[e_max as usize].clone(),
        stabilized: false,
        e_stop: e_max,
        chain,
    })
}

/// Per-exponent outcome of `c·u^q ∈ I^[q]`.
#[derive(Clone, Debug)]
pub struct EvidenceReport {
    pub test_element: Polynomial,
    /// `passes[e]` for `e = 0..=e_max`.
    pub passes: Vec<bool>,
}

impl EvidenceReport {
    pub fn all_pass(&self) -> bool {
        self.passes.iter().all(|&b| b)
    }

    pub fn first_failure(&self) -> Option<u32> {
        self.passes.iter().position(|&b| !b).map(|e| e as u32)
    }
}

/// Checks `c·u^(p^e) ∈ I^[p^e]R` for every `e ≤ e_max`. All-pass is evidence for
/// `u ∈ I*`, a failure is evidence against; neither is a proof.
pub fn tight_closure_evidence(
    u: &Polynomial,
    ideal: &IdealSpec,
    c: &Polynomial,
    e_max: u32,
) -> Result<EvidenceReport> {
    if c.is_zero() {
        return Err(Error::ZeroTestElement);
    }
    if u.ring() != ideal.ring() || c.ring() != ideal.ring() {
        return Err(Error::ContextMismatch);
    }
    let mut tower = BracketTower::new(ideal);
    let residues = bracket_residues(u, &mut tower, e_max)?;
    let mut passes = Vec::with_capacity(residues.len());
    for (e, v) in residues.iter().enumerate() {
        let g = tower.level(e as u32)?;
        passes.push(g.normal_form(&v.checked_mul(c)?)?.is_zero());
    }
    Ok(EvidenceReport {
        test_element: c.clone(),
        passes,
    })
}

/// A certificate for `c·u^q ∈ I^[q]R` at one exponent, when it holds.
pub fn tight_closure_certificate(
    u: &Polynomial,
    ideal: &IdealSpec,
    c: &Polynomial,
    e: u32,
) -> Result<Option<ClosureCertificate>> {
    let report = tight_closure_evidence(u, ideal, c, e)?;
    if report.passes[e as usize] {
        ideal_certificate(u, ideal, Some(c), e).map(Some)
    } else {
        Ok(None)
    }
}

/// `R/I` is finite-dimensional and nonzero.
pub fn has_finite_colength(ideal: &IdealSpec) -> Result<bool> {
    let g = groebner::basis(ideal)?;
    Ok(!g.is_unit() && g.is_zero_dimensional())
}

/// `I` is primary to the homogeneous maximal ideal: `R/I` is finite-dimensional,
/// nonzero, and every variable is nilpotent on it.
pub fn is_m_primary(ideal: &IdealSpec) -> Result<bool> {
    let g = groebner::basis(ideal)?;
    if g.is_unit() {
        return Ok(false);
    }
    let Some(basis) = g.standard_monomials() else {
        return Ok(false);
    };
    let dim = basis.len() as u32;
    let n = ideal.ring().arity();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = dim;
        if !g.contains(&Polynomial::monomial(ideal.ring(), &e))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One row of [`intersection_chain_membership`].
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub k: u32,
    pub certificate: Option<ClosureCertificate>,
}

/// Frobenius-closure membership of `u` in `I + m^k` for `k = 1..=k_max`.
pub fn intersection_chain_membership(
    u: &Polynomial,
    ideal: &IdealSpec,
    k_max: u32,
    e_max: u32,
) -> Result<Vec<ChainStep>> {
    if k_max == 0 {
        return Err(Error::Invalid("k_max must be at least 1".into()));
    }
    let m = IdealSpec::maximal(ideal.ring());
    (1..=k_max)
        .map(|k| {
            let target = ideal.sum(&m.power(k)?)?;
            Ok(ChainStep {
                k,
                certificate: frobenius_closure_membership(u, &target, e_max)?,
            })
        })
        .collect()
}
