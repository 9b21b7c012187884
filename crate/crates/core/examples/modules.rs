//! Graded modules: Frobenius closure of a submodule, m-coprimary checks, and
//! dimensions of graded duals.

use tckit::graded_modules::{
    graded_dual_dimensions, is_m_coprimary, module_frobenius_closure_membership, ModuleElement, PresentedModule,
    SubmoduleSpec,
};
use tckit::{Polynomial, RingContext};

fn main() -> tckit::Result<()> {
    let r = RingContext::new(2, &["x", "y", "z"])?.with_relations(&["x^3 + y^3 + z^3"])?;
    let poly = |s: &str| Polynomial::parse(&r, s);
    let zero = Polynomial::zero(&r);

    // M = R^2 / <(y, z)>
    let m = PresentedModule::new(&r, vec![0, 0], vec![vec![poly("y")?, poly("z")?]], true)?;
    let n = SubmoduleSpec::new(
        ["y", "z"]
            .iter()
            .flat_map(|g| {
                let g = poly(g).unwrap();
                [ModuleElement::new(vec![g.clone(), zero.clone()]), ModuleElement::new(vec![zero.clone(), g])]
            })
            .collect(),
    );
    let u = ModuleElement::new(vec![poly("x^2")?, zero.clone()]);
    match module_frobenius_closure_membership(&u, &n, &m, 2)? {
        Some(cert) => println!("(x^2, 0) in N^F_M at e = {}, replay {}", cert.e, cert.verify()?),
        None => println!("(x^2, 0): not found up to e_max = 2"),
    }

    println!("M/N m-coprimary: {:?}", is_m_coprimary(&m, &n, 16)?);
    let y_only = SubmoduleSpec::new(vec![ModuleElement::new(vec![poly("y")?, zero.clone()])]);
    println!("M/(y e1) m-coprimary: {:?}", is_m_coprimary(&m, &y_only, 16)?);

    let plane = RingContext::new(2, &["x", "y"])?.with_weights(&[1, 1])?;
    for n in 1..3 {
        println!("q = 4, n = {n}: (j, dim) = {:?}", graded_dual_dimensions(&plane, 4, n)?);
    }
    Ok(())
}
