//! Emitting a closure certificate as JSON and replaying it from scratch.

use tckit::closures::{frobenius_closure_membership, ClosureCertificate};
use tckit::{IdealSpec, Polynomial, RingContext};

fn main() -> tckit::Result<()> {
    let r = RingContext::new(5, &["x", "y", "z"])?.with_relations(&["x^3 + y^3 + z^3"])?;
    let i = IdealSpec::parse(&r, "(y, z)")?;
    let u = Polynomial::parse(&r, "x^2")?;
    let cert = frobenius_closure_membership(&u, &i, 2)?.expect("p = 2 mod 3");

    let json = serde_json::to_string_pretty(&cert.to_json()).unwrap();
    println!("{json}");

    let back = ClosureCertificate::from_json(&serde_json::from_str(&json).unwrap())?;
    println!("replay: {}", back.verify()?);

    let mut forged = cert.to_json();
    forged["cofactors"][0] = "x*y".into();
    println!("forged replay: {}", ClosureCertificate::from_json(&forged)?.verify()?);
    Ok(())
}
