use proptest::prelude::*;

use super::*;

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn fe(num: i64, level: u32, p: u32) -> FracExponent {
    FracExponent::new(num, level, p).unwrap()
}

fn fv(p: u32, v: &[i64]) -> FracVector {
    FracVector::from_integers(v, p)
}

#[test]
fn frac_exponent_lowest_terms() {
    let a = fe(4, 3, 2);
    assert_eq!((a.numerator(), a.level()), (1, 1));
    assert_eq!(fe(9, 2, 3), FracExponent::integer(1, 3));
    assert_eq!(fe(6, 1, 2).to_string(), "3");
    assert!(fe(-1, 5, 2) < FracExponent::zero(2));
    assert_eq!(fe(5, 1, 2).floor(), 2);
    assert_eq!(fe(5, 1, 2).fract(), fe(1, 1, 2));
    assert_eq!(fe(-1, 1, 2).floor(), -1);
    assert!(FracExponent::from_ratio(Q::new(1, 3), 2).is_err());
}

#[test]
fn dcc_examples() {
    let p = 2;
    let s = SupportDescription {
        finite: vec![fv(p, &[-1, -2]), fv(p, &[-2, -1])],
        families: vec![],
    };
    match dcc_check(&s).unwrap() {
        DccVerdict::Pass { minimal, .. } => assert_eq!(minimal.len(), 2),
        other => panic!("{other:?}"),
    }

    let s = SupportDescription {
        finite: vec![],
        families: vec![Family::pathological(p)],
    };
    assert!(matches!(dcc_check(&s).unwrap(), DccVerdict::Pass { ref antichains, .. } if antichains == &[0]));

    let diag = Family::new(
        vec![
            CoordFamily::Arithmetic {
                alpha: FracExponent::integer(1, p),
                beta: FracExponent::zero(p),
            };
            2
        ],
        0,
    )
    .unwrap();
    let s = SupportDescription {
        finite: vec![],
        families: vec![diag],
    };
    match dcc_check(&s).unwrap() {
        DccVerdict::Fail { chain, .. } => {
            assert_eq!(chain[0], fv(p, &[0, 0]));
            assert_eq!(chain[1], fv(p, &[-1, -1]));
            assert!(chain[1].cw_lt(&chain[0]) && chain[2].cw_lt(&chain[1]));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn increasing_family_passes() {
    let p = 3;
    let fam = Family::new(
        vec![
            CoordFamily::Geometric {
                gamma: FracExponent::integer(2, p),
            },
            CoordFamily::Constant(FracExponent::integer(-1, p)),
        ],
        0,
    )
    .unwrap();
    let s = SupportDescription {
        finite: vec![],
        families: vec![fam],
    };
    assert!(matches!(dcc_check(&s).unwrap(), DccVerdict::Pass { ref increasing, .. } if increasing == &[0]));
}

#[test]
fn scalar_multiply_examples() {
    let p = 5;
    let n = names(2);
    let f = parse_formal_sum("x1^(-1)*x2^(-2) + x1^(-2)*x2^(-1)", p, &n).unwrap();
    let one = parse_frac_polynomial("1", p, &n).unwrap();
    let r = scalar_multiply(&one, &f, 0).unwrap();
    assert!(r.exact);
    assert_eq!(r.sum, f);

    let s = parse_frac_polynomial("x1*x2^2", p, &n).unwrap();
    let r = scalar_multiply(&s, &f, 0).unwrap();
    assert!(r.exact);
    let terms = r.sum.terms_up_to(0).unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[&FracVector::zero(2, p)], 1);

    for p in [2, 3] {
        let f = FormalSum::pathological(p, 2).unwrap();
        for t in 0..5u32 {
            let s = FracPolynomial::monomial(fv(p, &[0, t as i64]), p).unwrap();
            let e_trunc = 8;
            let r = scalar_multiply(&s, &f, e_trunc).unwrap();
            assert!(r.exact);
            let got = r.sum.terms_up_to(e_trunc).unwrap();
            let want: BTreeMap<FracVector, u32> = (t..=e_trunc)
                .map(|e| (FracVector(vec![fe(-1, e, p), FracExponent::integer(t as i64 - e as i64, p)]), 1))
                .collect();
            assert_eq!(got, want);
        }
    }
}

#[test]
fn geometric_shift_materializes_survivors() {
    let p = 2;
    let f = FormalSum::pathological(p, 2).unwrap();
    // x1^(1/4): first coordinate −1/2^e + 1/4 ≤ 0 only for e ≤ 2
    let s = FracPolynomial::monomial(FracVector(vec![fe(1, 2, p), FracExponent::zero(p)]), p).unwrap();
    let r = scalar_multiply(&s, &f, 10).unwrap();
    assert!(r.exact);
    assert!(r.sum.is_finite());
    assert_eq!(r.sum.finite_terms().len(), 3);
    let r = scalar_multiply(&s, &f, 1).unwrap();
    assert!(!r.exact);
    assert_eq!(r.sum.finite_terms().len(), 2);
}

#[test]
fn socle_examples() {
    let n = names(2);
    let f = parse_formal_sum("3*x1^(-2)", 5, &n[..1]).unwrap();
    assert_eq!(socle_pairing(&f).unwrap(), (fv(5, &[2]), 3));

    let f = parse_formal_sum("x1^(-1)*x2^(-2) + x1^(-2)*x2^(-1)", 5, &n).unwrap();
    let (a0, c) = socle_pairing(&f).unwrap();
    assert_eq!(c, 1);
    assert!(a0 == fv(5, &[1, 2]) || a0 == fv(5, &[2, 1]));

    let f = FormalSum::pathological(2, 2).unwrap();
    assert_eq!(socle_pairing(&f).unwrap(), (fv(2, &[1, 0]), 1));

    // a finite term below the family forces descent past it
    let f = parse_formal_sum("x1^(-2)*x2^(-3) + family(e){ x1^(-1/p^e) * x2^(-e) }", 2, &n).unwrap();
    let (a0, c) = socle_pairing(&f).unwrap();
    assert_eq!((a0, c), (fv(2, &[2, 3]), 1));
}

#[test]
fn socle_rejects_descending_support() {
    let n = names(2);
    let err = parse_formal_sum("family(e){ x1^(-e) * x2^(-e) }", 2, &n).unwrap_err();
    assert!(matches!(err, Error::Invalid(_)));
}

#[test]
fn witness_examples() {
    let (v, count) = nonvanishing_witness(0, 4, 2).unwrap();
    assert_eq!((v, count), (fv(2, &[-1, 0]), 5));
    let (v, count) = nonvanishing_witness(3, 10, 2).unwrap();
    assert_eq!(v.monomial_string(&names(2)), "x1^(-1/8)");
    assert_eq!(count, 8);
    let (v, count) = nonvanishing_witness(20, 20, 3).unwrap();
    assert_eq!(v.0[0], fe(-1, 20, 3));
    assert_eq!(count, 1);
    let (v, _) = nonvanishing_witness(5, 10, 2).unwrap();
    assert_eq!(v.monomial_string(&names(2)), "x1^(-1/32)");
    assert!(nonvanishing_witness(4, 3, 2).is_err());
}

#[test]
fn chain_examples() {
    let p = 2;
    let b = vec![fv(p, &[-1, -3]), fv(p, &[-2, -2]), fv(p, &[-3, -1])];
    let r = chain_violation_search(&[fv(p, &[0, 0])], &b, 2).unwrap();
    assert_eq!(r.longest.len(), 1);
    assert!(r.found.is_none());

    let r = chain_violation_search(&[fv(p, &[0, 0])], &[fv(p, &[-1, 5]), fv(p, &[-2, 6])], 2).unwrap();
    assert!(r.found.is_none());

    let r = chain_violation_search(&[fv(p, &[0, 0]), fv(p, &[-1, -1])], &[fv(p, &[0, 0])], 2).unwrap();
    assert_eq!(r.found, Some(vec![(0, 0), (1, 0)]));
    assert!(chain_violation_search(&[fv(p, &[0, 0]), fv(p, &[-1, -1])], &[fv(p, &[0, 0])], 3).unwrap().found.is_none());
}

#[test]
fn rounding_factor_examples() {
    let p = 2;
    let a = FracVector(vec![fe(1, 1, p), fe(5, 1, p)]);
    let (int, rem) = lemma31_factor(&a, 2, 2).unwrap();
    assert_eq!(int, vec![0, 2]);
    assert_eq!(rem, FracVector(vec![fe(1, 1, p), fe(1, 1, p)]));

    let (int, rem) = lemma31_factor(&fv(p, &[2, 1]), 3, 1).unwrap();
    assert_eq!(int, vec![2, 1]);
    assert_eq!(rem, FracVector::zero(2, p));

    let a = FracVector(vec![fe(3, 2, p); 3]);
    let (int, _) = lemma31_factor(&a, 0, 3).unwrap();
    assert_eq!(int, vec![0, 0, 0]);

    assert!(matches!(lemma31_factor(&a, 1, 3), Err(Error::DegreePrecondition(_))));
}

#[test]
fn text_round_trip() {
    let n = names(2);
    for src in [
        "x1^(-1/8) * x2^(-3)",
        "2 * x1^(-1) + family(e){ x1^(-1/p^e) * x2^(-e) }",
        "family(e>=2){ x1^(-(3/4)/p^e) * x2^(-(2*e+1)) }",
        "4",
    ] {
        let f = parse_formal_sum(src, 2, &n).unwrap();
        let back = parse_formal_sum(&f.display_with(&n), 2, &n).unwrap();
        assert_eq!(f, back, "{src}");
    }
    let f = parse_formal_sum("x1^(-1/2^3) - x1^(-1/8)", 2, &n).unwrap();
    assert!(f.finite_terms().is_empty());
    let err = parse_formal_sum("x1^(-1/8) * y", 2, &n).unwrap_err();
    assert!(matches!(err, Error::Parse { column: 13, .. }), "{err:?}");
    assert!(parse_formal_sum("x1^(1/3)", 2, &n).is_err());
    assert!(parse_formal_sum("x1^2", 2, &n).is_err());
    let s = parse_frac_polynomial("x1^(1/3)*x2 + 2", 3, &n).unwrap();
    assert_eq!(s.display_with(&n), "2 + x1^(1/3) * x2");
}

/// One variable: `x^a · x^{−b}` is `x^{a−b}` when `a ≤ b` and zero otherwise.
#[test]
fn kill_rule_matches_inverse_powers() {
    let p = 3;
    let grid: Vec<FracExponent> = (0..=18).map(|k| fe(k, 2, p)).collect();
    for a in &grid {
        for b in &grid {
            let mut f = FormalSum::zero(p, 1);
            f.add_term(FracVector(vec![b.neg()]), 1).unwrap();
            let s = FracPolynomial::monomial(FracVector(vec![*a]), p).unwrap();
            let r = scalar_multiply(&s, &f, 0).unwrap().sum;
            if a <= b {
                let want = FracVector(vec![a.checked_add(&b.neg()).unwrap()]);
                assert_eq!(r.finite_terms().iter().collect::<Vec<_>>(), vec![(&want, &1)]);
            } else {
                assert!(r.finite_terms().is_empty());
            }
        }
    }
}

const P: u32 = 3;

fn arb_exp(max: i64) -> impl Strategy<Value = FracExponent> {
    (0..=max, 0u32..3).prop_map(|(n, l)| fe(n, l, P))
}

fn arb_vec(max: i64) -> impl Strategy<Value = FracVector> {
    prop::collection::vec(arb_exp(max), 2).prop_map(FracVector)
}

fn arb_poly() -> impl Strategy<Value = FracPolynomial> {
    prop::collection::vec((arb_vec(6), 1i64..3), 1..4).prop_map(|ts| {
        let mut s = FracPolynomial::zero(P, 2);
        for (v, c) in ts {
            s.add_term(v, c).unwrap();
        }
        s
    })
}

fn arb_sum() -> impl Strategy<Value = FormalSum> {
    prop::collection::vec((arb_vec(20), 1i64..3), 1..6).prop_map(|ts| {
        let mut f = FormalSum::zero(P, 2);
        for (v, c) in ts {
            f.add_term(v.neg(), c).unwrap();
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn module_axioms(s1 in arb_poly(), s2 in arb_poly(), f in arb_sum()) {
        let prod = s1.checked_mul(&s2).unwrap();
        let lhs = scalar_multiply(&prod, &f, 0).unwrap().sum;
        let inner = scalar_multiply(&s2, &f, 0).unwrap().sum;
        let rhs = scalar_multiply(&s1, &inner, 0).unwrap().sum;
        prop_assert_eq!(lhs.finite_terms(), rhs.finite_terms());

        let sum = s1.checked_add(&s2).unwrap();
        let lhs = scalar_multiply(&sum, &f, 0).unwrap().sum;
        let rhs = scalar_multiply(&s1, &f, 0).unwrap().sum
            .checked_add(&scalar_multiply(&s2, &f, 0).unwrap().sum).unwrap();
        prop_assert_eq!(lhs.finite_terms(), rhs.finite_terms());
        prop_assert!(lhs.validate().is_ok());
    }

    #[test]
    fn essentiality(f in arb_sum()) {
        prop_assume!(!f.finite_terms().is_empty());
        let (a0, c) = socle_pairing(&f).unwrap();
        prop_assert!(c != 0);
        prop_assert!(f.finite_terms().contains_key(&a0.neg()));
    }

    #[test]
    fn witness_for_every_t(t in 0u32..12, extra in 0u32..6, p in prop::sample::select(vec![2u32, 3, 5])) {
        let (v, count) = nonvanishing_witness(t, t + extra, p).unwrap();
        prop_assert_eq!(count, extra + 1);
        prop_assert!(!v.any_positive() && !v.0[0].is_zero());
    }

    #[test]
    fn rounding_factor_random(a in prop::collection::vec(arb_exp(30), 1..4), n in 0u64..4) {
        let a = FracVector(a);
        let mu = a.arity() as u64;
        let c = mu.saturating_sub(1);
        prop_assume!(a.sum() >= Q::from_integer((n + c) as i128));
        let (int, rem) = lemma31_factor(&a, n, mu).unwrap();
        prop_assert!(int.iter().sum::<u64>() >= n);
        let back = FracVector::from_integers(&int.iter().map(|&x| x as i64).collect::<Vec<_>>(), P)
            .checked_add(&rem).unwrap();
        prop_assert_eq!(back, a);
        prop_assert!(rem.0.iter().all(|r| !r.is_negative() && r.value() < Q::from_integer(1)));
    }

    #[test]
    fn finite_chains_bounded(a in prop::collection::vec(arb_vec(4), 1..4), b in prop::collection::vec(arb_vec(4), 1..4)) {
        let r = chain_violation_search(&a, &b, a.len() * b.len() + 1).unwrap();
        prop_assert!(r.found.is_none());
        for w in r.longest.windows(2) {
            let x = a[w[0].0].checked_add(&b[w[0].1]).unwrap();
            let y = a[w[1].0].checked_add(&b[w[1].1]).unwrap();
            prop_assert!(y.cw_le(&x));
        }
    }
}
