//! Frobenius closure on the cubical cone: membership search and the
//! ascending chain `C_e`.

use tckit::closures::{frobenius_closure_ideal, frobenius_closure_membership};
use tckit::{IdealSpec, Polynomial, RingContext};

fn cone(p: u64) -> tckit::Result<RingContext> {
    RingContext::new(p, &["x", "y", "z"])?.with_relations(&["x^3 + y^3 + z^3"])
}

fn main() -> tckit::Result<()> {
    for p in [2, 5, 7, 11, 13] {
        let r = cone(p)?;
        let i = IdealSpec::parse(&r, "(y, z)")?;
        let u = Polynomial::parse(&r, "x^2")?;
        match frobenius_closure_membership(&u, &i, 2)? {
            Some(cert) => println!("p = {p:2}: x^2 in (y,z)^F at e = {}", cert.e),
            None => println!("p = {p:2}: not found up to e_max = 2"),
        }
    }

    let r = cone(2)?;
    let i = IdealSpec::parse(&r, "(y, z)")?;
    let fc = frobenius_closure_ideal(&i, 3)?;
    for (e, c) in fc.chain.iter().enumerate() {
        println!("C_{e} = {c}");
    }
    println!("stabilized: {} at e = {}; (y,z)^F = {}", fc.stabilized, fc.e_stop, fc.ideal);
    Ok(())
}
