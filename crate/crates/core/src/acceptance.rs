//! The acceptance suite, shared by `tckit selftest` and the `acceptance` test
//! target. Random instances come from a seeded ChaCha stream.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closures::{
    frobenius_closure_ideal, frobenius_closure_membership, frobenius_power_ideal, frobenius_root,
    tight_closure_evidence, tight_closure_oracle, OracleRule, Verdict,
};
use crate::error::Result;
use crate::graded_modules::{
    graded_dual_dimensions, module_frobenius_closure_membership, ModuleElement, PresentedModule, SubmoduleSpec,
};
use crate::groebner;
use crate::ideal::IdealSpec;
use crate::monomial::Monomial;
use crate::monomial_closure::{briancon_skoda_check, MonomialIdeal};
use crate::perfect_hull::{
    chain_violation_search, dcc_check, lemma31_factor, nonvanishing_witness, scalar_multiply, socle_pairing,
    DccVerdict, FormalSum, FracExponent, FracPolynomial, FracVector, SupportDescription,
};
use crate::poly::Polynomial;
use crate::ring::RingContext;

pub const DEFAULT_SEED: u64 = 0x7c0ffee;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The criterion as stated does not hold; the failure has the documented
    /// shape and a corrected statement passes.
    KnownRed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::KnownRed => "KNOWN-RED",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    #[serde(serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {} ({:.2}s): {}",
            self.status,
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub const NAMES: [&str; 10] = [
    "cubical-cone dichotomy",
    "non-homogeneous extension",
    "Briancon-Skoda fuzz",
    "root/power adjunction",
    "closure-chain monotonicity",
    "module/ideal consistency",
    "graded-dual truncation",
    "rounding factorization",
    "injective-hull pathology",
    "module-axiom truncation",
];

type Check = (Status, String);

fn pass(detail: impl Into<String>) -> Result<Check> {
    Ok((Status::Pass, detail.into()))
}

fn fail(detail: impl Into<String>) -> Result<Check> {
    Ok((Status::Fail, detail.into()))
}

/// Runs one criterion (1-based id).
pub fn run_item(id: u32, seed: u64) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(id as u64));
    let result = match id {
        1 => item1(),
        2 | 5 => item2_and_5(&mut rng).map(|(a, b)| if id == 2 { a } else { b }),
        3 => item3(&mut rng),
        4 => item4(&mut rng),
        6 => item6(&mut rng),
        7 => item7(),
        8 => item8(&mut rng),
        9 => item9(&mut rng),
        10 => item10(&mut rng),
        _ => fail(format!("no criterion {id}")),
    };
    let (status, detail) = result.unwrap_or_else(|e| (Status::Fail, format!("error: {e}")));
    Outcome {
        id,
        name: NAMES.get(id as usize - 1).copied().unwrap_or("?"),
        status,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    (1..=10).map(|id| run_item(id, seed)).collect()
}

fn cone(p: u64) -> Result<RingContext> {
    RingContext::standard(p, &["x", "y", "z"])?.with_relations(&["x^3+y^3+z^3"])
}

fn random_poly(ring: &RingContext, rng: &mut ChaCha8Rng, min_deg: u32, max_deg: u32, terms: usize) -> Polynomial {
    let n = ring.arity();
    let p = ring.p() as i64;
    let parts = (0..terms).map(|_| {
        let d = rng.gen_range(min_deg..=max_deg);
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        (Monomial::from_exponents(&e), rng.gen_range(1..p))
    });
    Polynomial::from_terms(ring, parts.collect::<Vec<_>>())
}

fn item1() -> Result<Check> {
    let mut notes = Vec::new();
    for p in [2u64, 5, 11] {
        let r = cone(p)?;
        let x2 = Polynomial::parse(&r, "x^2")?;
        let ideal = IdealSpec::parse(&r, "y, z")?;
        let cert = match frobenius_closure_membership(&x2, &ideal, 3)? {
            Some(c) => c,
            None => return fail(format!("p={p}: no Frobenius certificate")),
        };
        if cert.e != 1 || !cert.verify()? {
            return fail(format!("p={p}: certificate at e={} (verified: {})", cert.e, cert.verify()?));
        }
        let rep = tight_closure_oracle(&x2, &ideal)?;
        if rep.verdict != Verdict::Member || rep.rule.as_ref().map(|r| r.name) != Some(OracleRule::cubical_cone().name) {
            return fail(format!("p={p}: oracle verdict {:?}", rep.verdict));
        }
        notes.push(format!("p={p} member at e=1"));
    }
    for p in [7u64, 13] {
        let r = cone(p)?;
        let x2 = Polynomial::parse(&r, "x^2")?;
        let ideal = IdealSpec::parse(&r, "y, z")?;
        if let Some(c) = frobenius_closure_membership(&x2, &ideal, 3)? {
            return fail(format!("p={p}: unexpected Frobenius certificate at e={}", c.e));
        }
        let ev = tight_closure_evidence(&x2, &ideal, &Polynomial::parse(&r, "z")?, 3)?;
        if !ev.all_pass() {
            return fail(format!("p={p}: evidence fails at e={:?}", ev.first_failure()));
        }
        notes.push(format!("p={p} not found, evidence passes"));
    }
    pass(notes.join("; "))
}

/// Items 2 and 5 share their runs.
fn item2_and_5(rng: &mut ChaCha8Rng) -> Result<(Check, Check)> {
    let r = cone(2)?;
    let m = IdealSpec::maximal(&r);
    let z = Polynomial::parse(&r, "z")?;
    let (y_, z_) = (Polynomial::parse(&r, "y")?, z.clone());
    let (mut discrepancies, mut checked, mut late, mut violations, mut steps) = (0, 0, 0, 0, 0);
    let mut first_problem = None;
    for run in 0..25 {
        let k = rng.gen_range(2..=4);
        let g = random_poly(&r, rng, 2, 3, 2);
        let h = random_poly(&r, rng, 2, 3, 2);
        let ideal = IdealSpec::new(&r, vec![y_.checked_add(&g)?, z_.checked_add(&h)?])?.sum(&m.power(k)?)?;
        let closure = frobenius_closure_ideal(&ideal, 3)?;
        if !closure.stabilized || closure.e_stop > 3 {
            late += 1;
            first_problem.get_or_insert(format!("run {run}: chain not stable by e=3"));
        }
        for w in closure.chain.windows(2) {
            steps += 1;
            if !groebner::ideal_contains(&w[1], &w[0])? {
                violations += 1;
            }
        }
        let basis = groebner::basis(&ideal)?.standard_monomials().unwrap_or_default();
        for mono in basis {
            let u = Polynomial::term(&r, 1, mono);
            if tight_closure_evidence(&u, &ideal, &z, 3)?.all_pass() {
                checked += 1;
                if !groebner::ideal_membership(&u, &closure.ideal)? {
                    discrepancies += 1;
                    first_problem.get_or_insert(format!("run {run}: {u} passes evidence but is outside I^F"));
                }
            }
        }
    }
    let item2 = if discrepancies == 0 && late == 0 {
        (Status::Pass, format!("25 ideals, {checked} all-pass basis elements, all in I^F"))
    } else {
        (
            Status::Fail,
            format!("{discrepancies} discrepancies, {late} late chains; {}", first_problem.unwrap_or_default()),
        )
    };
    let item5 = if violations == 0 {
        (Status::Pass, format!("{steps} chain steps ascending"))
    } else {
        (Status::Fail, format!("{violations} of {steps} steps not ascending"))
    };
    Ok((item2, item5))
}

fn item3(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut failures = 0;
    let mut example = None;
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let d = rng.gen_range(1..=3);
        let gens = (0..d)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=6)).collect::<Vec<u32>>())
            .collect::<Vec<_>>();
        let ideal = MonomialIdeal::new(n, gens)?;
        let k = rng.gen_range(0..=2);
        let rep = briancon_skoda_check(&ideal, k)?;
        if !rep.pass {
            failures += 1;
            example.get_or_insert(format!("{ideal} with k={k}"));
        }
    }
    if failures == 0 {
        pass("100 monomial ideals, closure(I^(d+k)) in I^(k+1) every time")
    } else {
        fail(format!("{failures} failures, e.g. {}", example.unwrap_or_default()))
    }
}

fn item4(rng: &mut ChaCha8Rng) -> Result<Check> {
    for i in 0..50 {
        let p = if i % 2 == 0 { 2 } else { 3 };
        let r = RingContext::new(p, &["x", "y"])?;
        let count = rng.gen_range(1..=3);
        let gens = (0..count)
            .map(|_| {
                let terms = rng.gen_range(1..=3);
                random_poly(&r, rng, 1, 3, terms)
            })
            .filter(|g| !g.is_zero())
            .collect::<Vec<_>>();
        if gens.is_empty() {
            continue;
        }
        let ideal = IdealSpec::new(&r, gens)?;
        let e = rng.gen_range(1..=2);
        let back = frobenius_root(&frobenius_power_ideal(&ideal, e)?, e)?;
        if groebner::basis(&back)?.basis() != groebner::basis(&ideal)?.basis() {
            return fail(format!("root of bracket power differs for {:?} at e={e}", ideal.generators()));
        }
    }
    pass("50 ideals, reduced bases identical")
}

fn item6(rng: &mut ChaCha8Rng) -> Result<Check> {
    let r = cone(2)?;
    let free = PresentedModule::free(&r, 1);
    let (mut members, mut disagreements) = (0, 0);
    for _ in 0..100 {
        let count = rng.gen_range(1..=2);
        let gens = (0..count).map(|_| random_poly(&r, rng, 1, 2, 2)).filter(|g| !g.is_zero()).collect::<Vec<_>>();
        if gens.is_empty() {
            continue;
        }
        let ideal = IdealSpec::new(&r, gens)?;
        let u = random_poly(&r, rng, 1, 3, 2);
        let by_ideal = frobenius_closure_membership(&u, &ideal, 2)?.is_some();
        let by_module = module_frobenius_closure_membership(
            &ModuleElement::new(vec![u.clone()]),
            &SubmoduleSpec::from_ideal(&ideal),
            &free,
            2,
        )?
        .is_some();
        members += by_ideal as u32;
        disagreements += (by_ideal != by_module) as u32;
    }
    if disagreements == 0 {
        pass(format!("100 pairs agree ({members} members)"))
    } else {
        fail(format!("{disagreements} disagreements"))
    }
}

/// Standard monomials of `F_2[y1,y2]/(m^[q])^n`, binned by `j = ceil(|b|/q)`.
fn enumerate_dual(q: u64, n: u64) -> Vec<u64> {
    let mut bins = Vec::new();
    for b1 in 0..q * n {
        for b2 in 0..q * n {
            if b1 / q + b2 / q < n {
                let j = (b1 + b2).div_ceil(q) as usize;
                if bins.len() <= j {
                    bins.resize(j + 1, 0);
                }
                bins[j] += 1;
            }
        }
    }
    bins
}

fn item7() -> Result<Check> {
    let r = RingContext::standard(2, &["x", "y"])?;
    let c = 1;
    let mut literal = Vec::new();
    for q in [1u64, 2, 4] {
        for n in 1..=3u32 {
            let dims = graded_dual_dimensions(&r, q, n)?;
            let bins = enumerate_dual(q, n as u64);
            let total: u64 = dims.iter().map(|(_, d)| d).sum();
            if total != bins.iter().sum::<u64>() {
                return fail(format!("q={q}, n={n}: total {total} vs enumerated {}", bins.iter().sum::<u64>()));
            }
            for (j, d) in &dims {
                if bins.get(*j as usize).copied().unwrap_or(0) != *d {
                    return fail(format!("q={q}, n={n}, j={j}: {d} vs enumerated"));
                }
                if *d > 0 && *j > (n + c) as u64 {
                    return fail(format!("q={q}, n={n}: dim V_-{j} = {d} beyond n + c"));
                }
                if *d > 0 && *j >= (n + 1) as u64 {
                    literal.push(format!("q={q},n={n},j={j}:{d}"));
                }
            }
        }
    }
    if literal.is_empty() {
        pass("totals match enumeration; dims vanish for j >= n+1")
    } else {
        Ok((
            Status::KnownRed,
            format!(
                "totals match enumeration and dims vanish for j > n+c; the stated bound j >= n+1 fails at {}",
                literal.join(" ")
            ),
        ))
    }
}

fn item8(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut done = 0;
    while done < 200 {
        let p = if rng.gen_bool(0.5) { 2 } else { 3 };
        let mu = rng.gen_range(1..=4usize);
        let a = FracVector(
            (0..mu)
                .map(|_| {
                    let level = rng.gen_range(0..=4);
                    let den = (p as i64).pow(level);
                    FracExponent::new(rng.gen_range(0..=4 * den), level, p)
                })
                .collect::<Result<_>>()?,
        );
        let c = mu as u64 - 1;
        let total = a.sum().floor().to_integer() as u64;
        if total < c {
            continue;
        }
        let n = rng.gen_range(0..=total - c);
        let (int, rem) = lemma31_factor(&a, n, mu as u64)?;
        if int.iter().sum::<u64>() < n {
            return fail(format!("{a}: integer part below n={n}"));
        }
        let back = FracVector::from_integers(&int.iter().map(|&x| x as i64).collect::<Vec<_>>(), p).checked_add(&rem)?;
        if back != a {
            return fail(format!("{a}: parts multiply back to {back}"));
        }
        done += 1;
    }
    pass("200 monomials factor exactly")
}

fn random_sum(rng: &mut ChaCha8Rng, p: u32, arity: usize) -> Result<FormalSum> {
    let mut f = FormalSum::zero(p, arity);
    while f.finite_terms().is_empty() {
        for _ in 0..rng.gen_range(1..=5) {
            let v = FracVector(
                (0..arity)
                    .map(|_| FracExponent::new(-rng.gen_range(0..=12), rng.gen_range(0..=2), p))
                    .collect::<Result<_>>()?,
            );
            f.add_term(v, rng.gen_range(1..p as i64))?;
        }
    }
    Ok(f)
}

fn random_scalar(rng: &mut ChaCha8Rng, p: u32, arity: usize) -> Result<FracPolynomial> {
    let mut s = FracPolynomial::zero(p, arity);
    for _ in 0..rng.gen_range(1..=3) {
        let v = FracVector(
            (0..arity)
                .map(|_| FracExponent::new(rng.gen_range(0..=8), rng.gen_range(0..=2), p))
                .collect::<Result<_>>()?,
        );
        s.add_term(v, rng.gen_range(1..p as i64))?;
    }
    Ok(s)
}

fn item9(rng: &mut ChaCha8Rng) -> Result<Check> {
    let (p, e_trunc) = (2, 32);
    for t in 1..=20 {
        let (_, count) = nonvanishing_witness(t, e_trunc, p)?;
        if count != e_trunc - t + 1 {
            return fail(format!("t={t}: {count} survivors"));
        }
    }
    let support = FormalSum::pathological(p, 2)?.support();
    match dcc_check(&support)? {
        DccVerdict::Pass { antichains, .. } if antichains == [0] => {}
        other => return fail(format!("family verdict {other:?}")),
    }
    for _ in 0..100 {
        let q = if rng.gen_bool(0.5) { 2 } else { 5 };
        let arity = rng.gen_range(1..=3);
        let f = random_sum(rng, q, arity)?;
        let (_, c) = socle_pairing(&f)?;
        if c == 0 {
            return fail(format!("zero pairing for {f}"));
        }
    }
    pass("t = 1..20 survive with E-t+1 terms; family is an antichain; 100 pairings nonzero")
}

fn item10(rng: &mut ChaCha8Rng) -> Result<Check> {
    for _ in 0..100 {
        let p = if rng.gen_bool(0.5) { 2 } else { 3 };
        let n = rng.gen_range(1..=3);
        let f = random_sum(rng, p, n)?;
        let (s1, s2) = (random_scalar(rng, p, n)?, random_scalar(rng, p, n)?);
        let lhs = scalar_multiply(&s1.checked_mul(&s2)?, &f, 0)?.sum;
        let rhs = scalar_multiply(&s1, &scalar_multiply(&s2, &f, 0)?.sum, 0)?.sum;
        if lhs.finite_terms() != rhs.finite_terms() {
            return fail(format!("associativity fails for {f}"));
        }
        let lhs = scalar_multiply(&s1.checked_add(&s2)?, &f, 0)?.sum;
        let rhs = scalar_multiply(&s1, &f, 0)?.sum.checked_add(&scalar_multiply(&s2, &f, 0)?.sum)?;
        if lhs.finite_terms() != rhs.finite_terms() {
            return fail(format!("distributivity fails for {f}"));
        }
        let support = SupportDescription {
            finite: lhs.finite_terms().keys().cloned().collect(),
            families: Vec::new(),
        };
        if !dcc_check(&support)?.passed() {
            return fail("product support fails DCC");
        }
    }
    for _ in 0..50 {
        let p = 2;
        let pick = |rng: &mut ChaCha8Rng| -> Result<Vec<FracVector>> {
            (0..rng.gen_range(1..=4))
                .map(|_| {
                    Ok(FracVector(
                        (0..2).map(|_| FracExponent::new(-rng.gen_range(0..=6), rng.gen_range(0..=1), p)).collect::<Result<_>>()?,
                    ))
                })
                .collect()
        };
        let (a, mut b) = (pick(rng)?, pick(rng)?);
        b.sort();
        b.dedup();
        let search = chain_violation_search(&a, &b, a.len() * b.len() + 1)?;
        if let Some(chain) = search.found {
            return fail(format!("over-threshold chain {chain:?}"));
        }
    }
    pass("100 associativity/distributivity cases exact; 50 chain searches clean")
}
