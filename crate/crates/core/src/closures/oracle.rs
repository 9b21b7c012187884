//! Rule table for rings where tight closure is known to equal Frobenius closure.

use serde::Serialize;

use super::{
    frobenius_closure_ideal, frobenius_closure_membership, has_finite_colength, is_m_primary,
    tight_closure_evidence, ClosureCertificate, EvidenceReport, FrobeniusClosure,
};
use crate::error::Result;
use crate::groebner;
use crate::ideal::IdealSpec;
use crate::poly::Polynomial;
use crate::ring::RingContext;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRule {
    pub name: &'static str,
    pub pattern: &'static str,
    pub identity: &'static str,
    pub scope: &'static str,
    pub provenance: &'static str,
}

impl OracleRule {
    /// `x^3 + y^3 + z^3` in three standard-graded variables with `p ≡ 2 mod 3`.
    pub fn cubical_cone() -> Self {
        OracleRule {
            name: "hasse-0-cubical-cone",
            pattern: "K[x,y,z]/(x^3+y^3+z^3), p = 2 mod 3",
            identity: "I* = I^F",
            scope: "m-primary ideals, homogeneous or not",
            provenance: "the cubical cone is the cone over a supersingular elliptic curve \
                         (Hasse invariant 0) when p = 2 mod 3; there tight closure equals \
                         Frobenius closure for m-primary ideals",
        }
    }

    pub fn all() -> Vec<OracleRule> {
        vec![OracleRule::cubical_cone()]
    }

    /// Syntactic match against the ring's declared data.
    pub fn matches(&self, ring: &RingContext) -> bool {
        match self.name {
            "hasse-0-cubical-cone" => {
                if ring.arity() != 3 || ring.p() % 3 != 2 || ring.weights().iter().any(|&w| w != 1) {
                    return false;
                }
                let rels = ring.relations();
                let base = ring.polynomial_ring();
                let cubes = (0..3).fold(Polynomial::zero(&base), |acc, i| {
                    let mut e = [0; 3];
                    e[i] = 3;
                    acc + Polynomial::monomial(&base, &e)
                });
                rels.len() == 1 && rels[0].with_ring(&base).map(|r| r == cubes).unwrap_or(false)
            }
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NonMember,
    EvidenceOnly,
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub e_max: u32,
    /// Defaults to the last variable.
    pub test_element: Option<Polynomial>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            e_max: 4,
            test_element: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub verdict: Verdict,
    pub rule: Option<OracleRule>,
    pub provenance: String,
    pub certificate: Option<ClosureCertificate>,
    pub closure: Option<FrobeniusClosure>,
    pub evidence: Option<EvidenceReport>,
    pub notes: Vec<String>,
}

/// [`tight_closure_oracle_with`] using default options.
pub fn tight_closure_oracle(u: &Polynomial, ideal: &IdealSpec) -> Result<OracleReport> {
    tight_closure_oracle_with(u, ideal, &OracleOptions::default())
}

fn evidence_only(u: &Polynomial, ideal: &IdealSpec, opts: &OracleOptions, notes: Vec<String>) -> Result<OracleReport> {
    let ring = ideal.ring();
    let c = opts
        .test_element
        .clone()
        .unwrap_or_else(|| Polynomial::variable(ring, ring.arity() - 1));
    let evidence = tight_closure_evidence(u, ideal, &c, opts.e_max)?;
    Ok(OracleReport {
        verdict: Verdict::EvidenceOnly,
        rule: None,
        provenance: "evidence-only".into(),
        certificate: None,
        closure: None,
        evidence: Some(evidence),
        notes,
    })
}

/// Promotes Frobenius-closure answers to tight-closure verdicts when a rule
/// covers the ring and `I` has finite colength; otherwise reports evidence.
///
/// Ideals of finite colength that are not m-primary split into comaximal
/// components. Away from the vertex the cone is regular, where both closures
/// are trivial, so the identity still holds componentwise.
pub fn tight_closure_oracle_with(u: &Polynomial, ideal: &IdealSpec, opts: &OracleOptions) -> Result<OracleReport> {
    let ring = ideal.ring();
    let Some(rule) = OracleRule::all().into_iter().find(|r| r.matches(ring)) else {
        return evidence_only(u, ideal, opts, vec!["no oracle rule matches this ring".into()]);
    };
    if !has_finite_colength(ideal)? {
        return evidence_only(u, ideal, opts, vec![format!("rule {} needs R/I of finite length", rule.name)]);
    }
    let mut notes = Vec::new();
    if !is_m_primary(ideal)? {
        notes.push("I is not m-primary; the rule is applied to its vertex component, the others lie at regular points".into());
    }
    let provenance = format!("{}: {}", rule.name, rule.provenance);
    if let Some(cert) = frobenius_closure_membership(u, ideal, opts.e_max)? {
        return Ok(OracleReport {
            verdict: Verdict::Member,
            rule: Some(rule),
            provenance,
            certificate: Some(cert),
            closure: None,
            evidence: None,
            notes,
        });
    }
    let closure = frobenius_closure_ideal(ideal, opts.e_max)?;
    let inside = groebner::ideal_membership(u, &closure.ideal)?;
    let verdict = match (inside, closure.stabilized) {
        (true, _) => Verdict::Member,
        (false, true) => {
            notes.push(format!(
                "non-membership is definitive modulo the stabilization heuristic (chain repeated at e = {})",
                closure.e_stop
            ));
            Verdict::NonMember
        }
        (false, false) => Verdict::EvidenceOnly,
    };
    if verdict == Verdict::EvidenceOnly {
        let mut report = evidence_only(u, ideal, opts, notes)?;
        report.closure = Some(closure);
        return Ok(report);
    }
    Ok(OracleReport {
        verdict,
        rule: Some(rule),
        provenance,
        certificate: None,
        closure: Some(closure),
        evidence: None,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(p: u64) -> RingContext {
        RingContext::standard(p, &["x", "y", "z"]).unwrap().with_relations(&["x^3+y^3+z^3"]).unwrap()
    }

    #[test]
    fn rule_matching() {
        let rule = OracleRule::cubical_cone();
        assert!(rule.matches(&cone(2)));
        assert!(rule.matches(&cone(11)));
        assert!(!rule.matches(&cone(7)));
        let other = RingContext::standard(2, &["x", "y", "z"]).unwrap().with_relations(&["x^3+y^3"]).unwrap();
        assert!(!rule.matches(&other));
    }

    #[test]
    fn oracle_examples() {
        let r = cone(2);
        let x2 = Polynomial::parse(&r, "x^2").unwrap();
        let rep = tight_closure_oracle(&x2, &IdealSpec::parse(&r, "y, z").unwrap()).unwrap();
        assert_eq!(rep.verdict, Verdict::Member);
        assert!(rep.provenance.starts_with("hasse-0-cubical-cone"));
        assert!(rep.certificate.unwrap().verify().unwrap());

        let rep = tight_closure_oracle(&x2, &IdealSpec::parse(&r, "y + x^2, z").unwrap()).unwrap();
        assert_ne!(rep.verdict, Verdict::EvidenceOnly);
        assert!(rep.rule.is_some());

        let r7 = cone(7);
        let x2 = Polynomial::parse(&r7, "x^2").unwrap();
        let rep = tight_closure_oracle(&x2, &IdealSpec::parse(&r7, "y, z").unwrap()).unwrap();
        assert_eq!(rep.verdict, Verdict::EvidenceOnly);
        assert!(rep.evidence.unwrap().all_pass());
    }

    #[test]
    fn definitive_non_member() {
        let r = cone(2);
        let x = Polynomial::parse(&r, "x").unwrap();
        let rep = tight_closure_oracle(&x, &IdealSpec::parse(&r, "y, z").unwrap()).unwrap();
        assert_eq!(rep.verdict, Verdict::NonMember);
    }
}
