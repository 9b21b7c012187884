//! Tight-closure evidence, the oracle for covered rings, and the
//! `I + m^k` chain.

use tckit::closures::{intersection_chain_membership, tight_closure_evidence, tight_closure_oracle_with, OracleOptions};
use tckit::{IdealSpec, Polynomial, RingContext};

fn main() -> tckit::Result<()> {
    for p in [2, 7] {
        let r = RingContext::new(p, &["x", "y", "z"])?.with_relations(&["x^3 + y^3 + z^3"])?;
        let i = IdealSpec::parse(&r, "(y, z)")?;
        let c = Polynomial::parse(&r, "z")?;
        println!("p = {p}");
        for u in ["x^2", "x"] {
            let u = Polynomial::parse(&r, u)?;
            let ev = tight_closure_evidence(&u, &i, &c, 2)?;
            println!("  evidence for {u} with c = z: {:?}", ev.passes);
            let report = tight_closure_oracle_with(&u, &i, &OracleOptions { e_max: 2, test_element: None })?;
            let rule = report.rule.map_or("no rule", |r| r.name);
            println!("  oracle: {:?} ({rule})", report.verdict);
        }
    }

    let r = RingContext::new(2, &["x", "y", "z"])?.with_relations(&["x^3 + y^3 + z^3"])?;
    let i = IdealSpec::parse(&r, "(y, z)")?;
    let u = Polynomial::parse(&r, "x^2")?;
    for step in intersection_chain_membership(&u, &i, 3, 2)? {
        println!("k = {}: {}", step.k, step.certificate.map_or("not found".into(), |c| format!("e = {}", c.e)));
    }
    Ok(())
}
