//! Closure certificates, their JSON form, and exact replay.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::groebner;
use crate::ideal::IdealSpec;
use crate::poly::{frobenius_q, Polynomial};
use crate::ring::RingContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Frobenius,
    TightEvidence,
}

/// Witness that `c·u^q` lies in the bracket power of the target at `q = p^e`.
///
/// For an ideal target `element` has one coordinate and `generators` are the
/// ideal generators as length-one vectors. For a module target the cofactors
/// cover the submodule generators followed by the presentation columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosureCertificate {
    pub kind: CertificateKind,
    pub e: u32,
    pub ring: RingContext,
    pub module: bool,
    pub element: Vec<Polynomial>,
    pub generators: Vec<Vec<Polynomial>>,
    pub module_relations: Vec<Vec<Polynomial>>,
    pub test_element: Option<Polynomial>,
    pub cofactors: Vec<Polynomial>,
    pub target: String,
}

pub(crate) fn module_target_digest(
    ring: &RingContext,
    generators: &[Vec<Polynomial>],
    relations: &[Vec<Polynomial>],
) -> String {
    let mut h = Sha256::new();
    h.update(ring.describe().as_bytes());
    for (tag, list) in [("gen", generators), ("rel", relations)] {
        for v in list {
            let coords: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            h.update(format!("\n{tag} [{}]", coords.join(", ")).as_bytes());
        }
    }
    hex::encode(h.finalize())
}

/// True iff `f` is zero in the quotient ring of its context.
fn vanishes_in_ring(f: &Polynomial) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    if !f.ring().has_relations() {
        return Ok(false);
    }
    groebner::ideal_membership(f, &IdealSpec::zero(f.ring()))
}

/// Reduces each cofactor modulo the ring relations (keeps certificates small).
pub(crate) fn reduce_mod_relations(ring: &RingContext, hs: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    if !ring.has_relations() {
        return Ok(hs);
    }
    let g = groebner::basis(&IdealSpec::zero(ring))?;
    hs.iter().map(|h| g.normal_form(h)).collect()
}

fn frobenius_vectors(vs: &[Vec<Polynomial>], e: u32) -> Result<Vec<Vec<Polynomial>>> {
    vs.iter().map(|v| v.iter().map(|f| f.frobenius_power(e)).collect()).collect()
}

/// Cofactors `h` with `c·u^[q] ≡ Σ h_i cols_i^[q]` modulo the ring relations,
/// or `None` when no such `h` exists.
///
/// Built level by level: from `u^[q'] ≡ v + Σ h_i cols_i^[q']` the Frobenius
/// gives `u^[pq'] ≡ v^[p] + Σ h_i^p cols_i^[pq']`, so only the small residue
/// `v^[p]` is ever divided. Dividing `u^[q]` directly is hopeless once `q` is
/// in the thousands.
pub(crate) fn lifted_cofactors(
    ring: &RingContext,
    cols: &[Vec<Polynomial>],
    u: &[Polynomial],
    c: Option<&Polynomial>,
    e: u32,
) -> Result<Option<Vec<Polynomial>>> {
    let rank = u.len();
    let mut h = vec![Polynomial::zero(ring); cols.len()];
    let mut v = u.to_vec();
    let add = |h: &mut Vec<Polynomial>, k: Vec<Polynomial>| -> Result<()> {
        for (a, b) in h.iter_mut().zip(k) {
            *a = a.checked_add(&b)?;
        }
        Ok(())
    };
    for level in 0..=e {
        if level > 0 {
            v = v.iter().map(|f| f.frobenius_power(1)).collect::<Result<_>>()?;
            h = h.iter().map(|f| f.frobenius_power(1)).collect::<Result<_>>()?;
        }
        let (rem, k) = groebner::module_division(ring, rank, &frobenius_vectors(cols, level)?, &v)?;
        add(&mut h, k)?;
        h = reduce_mod_relations(ring, h)?;
        v = rem;
    }
    if let Some(c) = c {
        v = v.iter().map(|f| f.checked_mul(c)).collect::<Result<_>>()?;
        h = h.iter().map(|f| f.checked_mul(c)).collect::<Result<_>>()?;
        let (rem, k) = groebner::module_division(ring, rank, &frobenius_vectors(cols, e)?, &v)?;
        add(&mut h, k)?;
        h = reduce_mod_relations(ring, h)?;
        v = rem;
    }
    Ok(v.iter().all(Polynomial::is_zero).then_some(h))
}

impl ClosureCertificate {
    pub fn q(&self) -> Result<u64> {
        frobenius_q(self.ring.p(), self.e)
    }

    pub fn expected_target(&self) -> Result<String> {
        if self.module {
            Ok(module_target_digest(&self.ring, &self.generators, &self.module_relations))
        } else {
            let gens = self.generators.iter().map(|g| g[0].clone()).collect();
            Ok(IdealSpec::new(&self.ring, gens)?.digest())
        }
    }

    /// Replays `Σ h_i g_i^[q] − c·u^[q]` coordinatewise and checks every
    /// coordinate vanishes in `R`. Uses only polynomial arithmetic and the
    /// Gröbner engine on the relations.
    pub fn verify(&self) -> Result<bool> {
        let rank = self.element.len();
        match (self.kind, &self.test_element) {
            (CertificateKind::Frobenius, Some(_)) => return Ok(false),
            (CertificateKind::TightEvidence, None) => return Ok(false),
            (_, Some(c)) if c.is_zero() => return Ok(false),
            _ => {}
        }
        let columns: Vec<&Vec<Polynomial>> = self.generators.iter().chain(&self.module_relations).collect();
        if columns.len() != self.cofactors.len() || columns.iter().any(|v| v.len() != rank) {
            return Ok(false);
        }
        if !self.module && (rank != 1 || !self.module_relations.is_empty()) {
            return Ok(false);
        }
        if self.expected_target()? != self.target {
            return Ok(false);
        }
        for k in 0..rank {
            let mut acc = self.element[k].frobenius_power(self.e)?;
            if let Some(c) = &self.test_element {
                acc = acc.checked_mul(c)?;
            }
            acc = acc.scale(-1);
            for (h, col) in self.cofactors.iter().zip(&columns) {
                acc = acc.checked_add(&h.checked_mul(&col[k].frobenius_power(self.e)?)?)?;
            }
            if !vanishes_in_ring(&acc)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let strs = |v: &[Polynomial]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let ring = RingJson {
            vars: self.ring.names().to_vec(),
            weights: self.ring.is_graded().then(|| self.ring.weights().to_vec()),
            quotient: strs(&self.ring.relations()),
        };
        let doc = CertJson {
            tckit: 1,
            kind: self.kind,
            p: self.ring.p(),
            e: self.e,
            ring,
            u: if self.module {
                Coords::Many(strs(&self.element))
            } else {
                Coords::One(self.element[0].to_string())
            },
            ideal: (!self.module).then(|| self.generators.iter().map(|g| g[0].to_string()).collect()),
            submodule: self.module.then(|| self.generators.iter().map(|g| strs(g)).collect()),
            module_relations: self.module.then(|| self.module_relations.iter().map(|g| strs(g)).collect()),
            target: self.target.clone(),
            test_element: self.test_element.as_ref().map(|c| c.to_string()),
            cofactors: strs(&self.cofactors),
        };
        serde_json::to_value(doc).expect("certificate serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: CertJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Invalid(format!("certificate json: {e}")))?;
        if doc.tckit != 1 {
            return Err(Error::Invalid(format!("unsupported certificate version {}", doc.tckit)));
        }
        let mut ring = RingContext::new(doc.p as u64, &doc.ring.vars)?;
        if let Some(w) = &doc.ring.weights {
            ring = ring.with_weights(w)?;
        }
        if !doc.ring.quotient.is_empty() {
            ring = ring.with_relations(&doc.ring.quotient)?;
        }
        let poly = |s: &String| Polynomial::parse(&ring, s);
        let vec = |v: &Vec<String>| v.iter().map(poly).collect::<Result<Vec<_>>>();
        let (module, element) = match &doc.u {
            Coords::One(s) => (false, vec![poly(s)?]),
            Coords::Many(v) => (true, vec(v)?),
        };
        let generators = if module {
            doc.submodule.as_ref().ok_or_else(|| Error::Invalid("missing submodule".into()))?.iter().map(vec).collect::<Result<Vec<_>>>()?
        } else {
            doc.ideal
                .as_ref()
                .ok_or_else(|| Error::Invalid("missing ideal".into()))?
                .iter()
                .map(|s| Ok(vec![poly(s)?]))
                .collect::<Result<Vec<_>>>()?
        };
        let module_relations = match &doc.module_relations {
            Some(rs) => rs.iter().map(vec).collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        Ok(ClosureCertificate {
            kind: doc.kind,
            e: doc.e,
            ring: ring.clone(),
            module,
            element,
            generators,
            module_relations,
            test_element: doc.test_element.as_ref().map(poly).transpose()?,
            cofactors: vec(&doc.cofactors)?,
            target: doc.target,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<u32>>,
    #[serde(default)]
    quotient: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coords {
    One(String),
    Many(Vec<String>),
}

#[derive(Serialize, Deserialize)]
struct CertJson {
    tckit: u32,
    kind: CertificateKind,
    p: u32,
    e: u32,
    ring: RingJson,
    u: Coords,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ideal: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    submodule: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    module_relations: Option<Vec<Vec<String>>>,
    target: String,
    test_element: Option<String>,
    cofactors: Vec<String>,
}
