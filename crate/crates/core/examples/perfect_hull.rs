//! Formal sums of inverse fractional monomials: DCC validation, the scalar
//! action, socle pairing and nonvanishing witnesses.

use tckit::perfect_hull::{
    chain_violation_search, dcc_check, lemma31_factor, nonvanishing_witness, parse_formal_sum,
    parse_frac_polynomial, scalar_multiply, socle_pairing, FormalSum, FracExponent, FracVector,
};

fn main() -> tckit::Result<()> {
    let p = 2;
    let names = vec!["x1".to_string(), "x2".to_string()];

    let f = FormalSum::pathological(p, 2)?;
    println!("f = {}", f.display_with(&names));
    println!("dcc: {:?}", dcc_check(&f.support())?.passed());

    let bad = parse_formal_sum("family(e){ x1^(-e) * x2^(-e) }", p, &names);
    println!("descending family rejected: {}", bad.unwrap_err());

    for s in ["x2^3", "x1^(1/2)", "x1^(1/4) * x2"] {
        let s = parse_frac_polynomial(s, p, &names)?;
        let prod = scalar_multiply(&s, &f, 8)?;
        println!("({}) * f = {} (exact: {})", s.display_with(&names), prod.sum.display_with(&names), prod.exact);
    }

    let g = parse_formal_sum("x1^(-1/2) * x2^(-1) + x1^(-1) * x2^(-2) + x1^(-1/4)", p, &names)?;
    let (a0, c) = socle_pairing(&g)?;
    println!("socle pairing of g: times {} gives the constant {c}", a0.monomial_string(&names));

    for t in 0..4 {
        let (survivor, count) = nonvanishing_witness(t, 10, p)?;
        println!("t = {t}: survivor {}, {count} terms", survivor.monomial_string(&names));
    }

    let a: Vec<FracVector> = [[-1, 0], [0, -1]].iter().map(|v| FracVector::from_integers(v, p)).collect();
    let b: Vec<FracVector> = [[-1, -1], [0, 0]].iter().map(|v| FracVector::from_integers(v, p)).collect();
    let chains = chain_violation_search(&a, &b, 5)?;
    println!("longest chain {} of at most {}", chains.longest.len(), chains.threshold);

    // x1^(5/2) x2^(7/4) has degree 17/4 >= n + (mu - 1) with n = 3, mu = 2
    let v = FracVector(vec![FracExponent::new(5, 1, p)?, FracExponent::new(7, 2, p)?]);
    let (factors, rest) = lemma31_factor(&v, 3, 2)?;
    println!("{} = integer part {factors:?} times {}", v.monomial_string(&names), rest.monomial_string(&names));
    Ok(())
}
