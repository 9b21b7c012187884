//! Polynomial arithmetic over F_p in a graded quotient context.

use tckit::{Polynomial, RingContext};

fn main() -> tckit::Result<()> {
    let r = RingContext::new(5, &["x", "y", "z"])?.with_weights(&[1, 1, 1])?;
    let f = Polynomial::parse(&r, "x + 2*y")?;
    let g = Polynomial::parse(&r, "x - y^2")?;

    println!("f + g   = {}", f.checked_add(&g)?);
    println!("f * g   = {}", f.checked_mul(&g)?);
    println!("f^5     = {}", f.pow(5)?);
    println!("f^[5]   = {}", f.frobenius_power(1)?);
    println!("3f      = {}", f.scale(3));
    println!("f homogeneous: {}, g homogeneous: {}", f.is_homogeneous(), g.is_homogeneous());
    println!("degree-2 part of g: {}", g.homogeneous_component(2));

    // coefficients are reduced mod p, so 7x = 2x
    println!("7*x in F_5: {}", Polynomial::parse(&r, "7*x")?);

    // the Frobenius is additive in characteristic p
    assert_eq!(f.pow(5)?, f.frobenius_power(1)?);

    // polynomials from different contexts do not mix
    let other = RingContext::new(7, &["x", "y", "z"])?;
    let h = Polynomial::parse(&other, "x")?;
    println!("mixing contexts: {}", f.checked_add(&h).unwrap_err());
    Ok(())
}
