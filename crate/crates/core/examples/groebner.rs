//! Gröbner bases, normal forms and ideal membership.

use tckit::groebner::{self, basis_with_order};
use tckit::{IdealSpec, Polynomial, RingContext, TermOrder};

fn main() -> tckit::Result<()> {
    let r = RingContext::new(2, &["x", "y"])?;
    let i = IdealSpec::parse(&r, "(x^2 + y^3, x*y)")?;

    for order in [TermOrder::grevlex(2), TermOrder::lex(2)] {
        let gb = basis_with_order(&i, &order)?;
        let gens: Vec<String> = gb.basis().iter().map(|g| g.to_string()).collect();
        println!("{order}: [{}]", gens.join(", "));
    }

    let gb = groebner::basis(&i)?;
    let std = gb.standard_monomials().expect("finite colength");
    println!("dim R/I = {}", std.len());

    for s in ["y^4", "x^3", "x + y"] {
        let f = Polynomial::parse(&r, s)?;
        println!("{s}: normal form {}, member {}", gb.normal_form(&f)?, gb.contains(&f)?);
    }

    // explicit cofactors: f = Σ h_i g_i
    let f = Polynomial::parse(&r, "y^4")?;
    if let Some(hs) = groebner::representation(&f, &i)? {
        let hs: Vec<String> = hs.iter().map(|h| h.to_string()).collect();
        println!("y^4 cofactors on (x^2+y^3, x*y): [{}]", hs.join(", "));
    }

    let j = IdealSpec::parse(&r, "(x^2, x*y, y^4)")?;
    println!("I = (x^2, xy, y^4): {}", groebner::ideal_equal(&i, &j)?);
    Ok(())
}
