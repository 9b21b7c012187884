//! Frobenius powers `I^[q]` and Frobenius roots `I^[1/q]`.

use tckit::closures::{frobenius_power_ideal, frobenius_root};
use tckit::{IdealSpec, RingContext};

fn main() -> tckit::Result<()> {
    let r = RingContext::new(3, &["x", "y"])?;
    let i = IdealSpec::parse(&r, "(x + y, x*y^2)")?;
    for e in 0..3 {
        println!("I^[{}] = {}", 3u32.pow(e), frobenius_power_ideal(&i, e)?);
    }

    // roots only make sense over the polynomial ring
    let j = IdealSpec::parse(&r, "(x^4*y, x^3 + y^6, y^7)")?;
    for e in 1..3 {
        println!("({j})^[1/{}] = {}", 3u32.pow(e), frobenius_root(&j, e)?);
    }

    let cone = r.polynomial_ring().with_relations(&["x^2 - y^3"])?;
    let k = IdealSpec::parse(&cone, "(x)")?;
    println!("root in a quotient ring: {}", frobenius_root(&k, 1).unwrap_err());
    Ok(())
}
