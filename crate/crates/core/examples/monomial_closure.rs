//! Integral closure of monomial ideals via the Newton polyhedron, and the
//! Briançon-Skoda containment.

use tckit::monomial_closure::{
    briancon_skoda_check, closure_membership, integral_closure_generators, newton_vertices, MonomialIdeal,
};

fn main() -> tckit::Result<()> {
    let (names, i) = MonomialIdeal::parse_infer("(x^4, y^4, x^3*y)")?;
    println!("I = {}", i.display_with(&names));
    println!("Newton vertices: {:?}", newton_vertices(&i));
    println!("closure = {}", integral_closure_generators(&i)?.display_with(&names));

    let (names, j) = MonomialIdeal::parse_infer("(x^2, y^2)")?;
    for a in [[1, 1], [2, 0], [1, 0]] {
        println!("x^{} y^{} in closure of {}: {}", a[0], a[1], j.display_with(&names), closure_membership(&a, &j)?);
    }

    let k = MonomialIdeal::parse(&["x", "y", "z"], "(x^3, y^3, z^3, x*y*z)")?;
    for k_exp in 0..3 {
        let bs = briancon_skoda_check(&k, k_exp)?;
        println!("k = {k_exp}: closure(I^{}) in I^{}: {}", bs.d as u32 + k_exp, k_exp + 1, bs.pass);
    }
    Ok(())
}
