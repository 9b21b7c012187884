use serde_json::Value;
use tckit::closures::{frobenius_closure_membership, tight_closure_certificate, ClosureCertificate};
use tckit::graded_modules::{module_frobenius_closure_membership, ModuleElement, PresentedModule, SubmoduleSpec};
use tckit::{IdealSpec, Polynomial, RingContext};

fn cone(p: u64) -> RingContext {
    RingContext::new(p, &["x", "y", "z"]).unwrap().with_relations(&["x^3+y^3+z^3"]).unwrap()
}

fn fc_cert(p: u64) -> ClosureCertificate {
    let r = cone(p);
    let i = IdealSpec::from_strs(&r, &["y", "z"]).unwrap();
    let u = Polynomial::parse(&r, "x^2").unwrap();
    frobenius_closure_membership(&u, &i, 2).unwrap().expect("Hasse invariant vanishes")
}

fn replay(v: &Value) -> bool {
    ClosureCertificate::from_json(v).and_then(|c| c.verify()).unwrap_or(false)
}

#[test]
fn json_round_trip() {
    for p in [2, 5, 11] {
        let c = fc_cert(p);
        assert_eq!(c.e, 1);
        let v = c.to_json();
        assert_eq!(v["tckit"], 1);
        assert_eq!(v["kind"], "frobenius");
        let back = ClosureCertificate::from_json(&v).unwrap();
        assert_eq!(back, c);
        assert!(back.verify().unwrap());
        let text = serde_json::to_string(&v).unwrap();
        assert!(replay(&serde_json::from_str(&text).unwrap()));
    }
}

#[test]
fn cofactors_for_p2() {
    // x^4 = x·x^3 = -x·y^3 - x·z^3, so the cofactors of (y^2, z^2) are x*y and x*z
    let v = fc_cert(2).to_json();
    assert_eq!(v["cofactors"], serde_json::json!(["x*y", "x*z"]));
}

#[test]
fn tight_evidence_certificate() {
    let r = cone(7);
    let i = IdealSpec::from_strs(&r, &["y", "z"]).unwrap();
    let u = Polynomial::parse(&r, "x^2").unwrap();
    let c = Polynomial::parse(&r, "z").unwrap();
    let cert = tight_closure_certificate(&u, &i, &c, 2).unwrap().unwrap();
    assert_eq!(cert.to_json()["kind"], "tight-evidence");
    assert!(replay(&cert.to_json()));
}

#[test]
fn module_certificate() {
    let r = cone(2);
    let m = PresentedModule::free(&r, 2);
    let y = Polynomial::parse(&r, "y").unwrap();
    let z = Polynomial::parse(&r, "z").unwrap();
    let zero = Polynomial::zero(&r);
    let n = SubmoduleSpec::new(vec![
        ModuleElement::new(vec![y.clone(), zero.clone()]),
        ModuleElement::new(vec![z.clone(), zero.clone()]),
        ModuleElement::new(vec![zero.clone(), y]),
        ModuleElement::new(vec![zero.clone(), z]),
    ]);
    let u = ModuleElement::new(vec![Polynomial::parse(&r, "x^2").unwrap(), Polynomial::parse(&r, "x^2").unwrap()]);
    let cert = module_frobenius_closure_membership(&u, &n, &m, 2).unwrap().unwrap();
    assert_eq!(cert.e, 1);
    let v = cert.to_json();
    assert!(v["submodule"].is_array());
    assert!(replay(&v));
}

#[test]
fn tampering_is_caught() {
    let good = fc_cert(2).to_json();
    assert!(replay(&good));

    let mut t = good.clone();
    t["cofactors"][0] = Value::from("x*y + 1");
    assert!(!replay(&t), "changed cofactor");

    let mut t = good.clone();
    t["e"] = Value::from(2);
    assert!(!replay(&t), "changed exponent");

    let mut t = good.clone();
    t["u"] = Value::from("x");
    assert!(!replay(&t), "changed element");

    let mut t = good.clone();
    t["target"] = Value::from("00");
    assert!(!replay(&t), "changed target digest");

    let mut t = good.clone();
    t["ideal"] = serde_json::json!(["y", "z", "x"]);
    assert!(!replay(&t), "ideal no longer matches digest");

    let mut t = good.clone();
    t["ring"]["quotient"] = serde_json::json!(["x^3+y^3"]);
    assert!(!replay(&t), "changed ring");

    let mut t = good.clone();
    t["tckit"] = Value::from(2);
    assert!(ClosureCertificate::from_json(&t).is_err());

    let mut t = good;
    t["test_element"] = Value::from("z");
    assert!(!replay(&t), "frobenius certificate with a multiplier");
}

#[test]
fn large_q_certificate_replays() {
    // q = 7^4 = 2401; c·u^q has degree 4803
    let r = cone(7);
    let i = IdealSpec::from_strs(&r, &["y", "z"]).unwrap();
    let u = Polynomial::parse(&r, "x^2").unwrap();
    let c = Polynomial::parse(&r, "z").unwrap();
    let cert = tight_closure_certificate(&u, &i, &c, 4).unwrap().unwrap();
    assert!(cert.cofactors.iter().all(|h| h.len() < 1000));
    assert!(replay(&cert.to_json()));
    let mut bad = cert.to_json();
    bad["test_element"] = Value::from("y");
    assert!(!replay(&bad));
}
