//! Formal sums of fractional inverse monomials with DCC support, acted on by
//! polynomials with exponents in `ℕ[1/p]`.
//!
//! Kill rule: a product term vanishes as soon as any coordinate of its
//! exponent is strictly positive.

mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::Fp;

pub use text::{parse_formal_sum, parse_frac_polynomial};

type Q = Ratio<i128>;

/// `num / p^level` in lowest terms with respect to `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FracExponent {
    num: i64,
    level: u32,
    p: u32,
}

fn p_power(p: u32, level: u32) -> Result<i64> {
    (p as i64)
        .checked_pow(level)
        .ok_or_else(|| Error::Overflow(format!("{p}^{level}")))
}

impl FracExponent {
    pub fn new(num: i64, level: u32, p: u32) -> Result<Self> {
        p_power(p, level)?;
        let (mut num, mut level) = (num, level);
        while level > 0 && num % p as i64 == 0 {
            num /= p as i64;
            level -= 1;
        }
        Ok(FracExponent { num, level, p })
    }

    pub fn integer(n: i64, p: u32) -> Self {
        FracExponent { num: n, level: 0, p }
    }

    pub fn zero(p: u32) -> Self {
        Self::integer(0, p)
    }

    pub fn from_ratio(r: Q, p: u32) -> Result<Self> {
        let mut den = *r.denom();
        let mut level = 0;
        while den % p as i128 == 0 {
            den /= p as i128;
            level += 1;
        }
        if den != 1 {
            return Err(Error::Invalid(format!("{r} has a denominator that is not a power of {p}")));
        }
        let num = i64::try_from(*r.numer()).map_err(|_| Error::Overflow(format!("numerator of {r}")))?;
        Self::new(num, level, p)
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn value(&self) -> Q {
        Q::new(self.num as i128, p_power(self.p, self.level).expect("checked at construction") as i128)
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Self::from_ratio(self.value() + other.value(), self.p)
    }

    pub fn neg(&self) -> Self {
        FracExponent { num: -self.num, ..*self }
    }

    pub fn floor(&self) -> i64 {
        self.value().floor().to_integer() as i64
    }

    /// `self − floor(self)`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        Self::from_ratio(self.value() - self.value().floor(), self.p).expect("fractional part keeps the denominator")
    }
}

impl PartialOrd for FracExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FracExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value().cmp(&other.value())
    }
}

impl fmt::Display for FracExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, p_power(self.p, self.level).unwrap_or(0))
        }
    }
}

/// Exponent vector, ordered coordinatewise for DCC purposes (the derived `Ord`
/// is lexicographic and only used for storage).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FracVector(pub Vec<FracExponent>);

impl FracVector {
    pub fn zero(arity: usize, p: u32) -> Self {
        FracVector(vec![FracExponent::zero(p); arity])
    }

    pub fn from_integers(v: &[i64], p: u32) -> Self {
        FracVector(v.iter().map(|&x| FracExponent::integer(x, p)).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// `self ≤ other` in every coordinate.
    pub fn cw_le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self < other` in the partial order: `≤` everywhere and not equal.
    pub fn cw_lt(&self, other: &Self) -> bool {
        self.cw_le(other) && self != other
    }

    pub fn comparable(&self, other: &Self) -> bool {
        self.cw_le(other) || other.cw_le(self)
    }

    pub fn any_positive(&self) -> bool {
        self.0.iter().any(FracExponent::is_positive)
    }

    pub fn all_nonpositive(&self) -> bool {
        !self.any_positive()
    }

    pub fn all_nonnegative(&self) -> bool {
        !self.0.iter().any(FracExponent::is_negative)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch);
        }
        Ok(FracVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a.checked_add(b)).collect::<Result<_>>()?,
        ))
    }

    pub fn neg(&self) -> Self {
        FracVector(self.0.iter().map(FracExponent::neg).collect())
    }

    pub fn sum(&self) -> Q {
        self.0.iter().map(FracExponent::value).sum()
    }
}

impl fmt::Display for FracVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// One coordinate of a parametric family, as a function of the index `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoordFamily {
    Constant(FracExponent),
    /// `−(α·e + β)` with `α > 0`.
    Arithmetic { alpha: FracExponent, beta: FracExponent },
    /// `−γ/p^e` with `γ > 0`.
    Geometric { gamma: FracExponent },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Trend {
    Flat,
    Decreasing,
    Increasing,
}

impl CoordFamily {
    fn trend(&self) -> Trend {
        match self {
            CoordFamily::Constant(_) => Trend::Flat,
            CoordFamily::Arithmetic { .. } => Trend::Decreasing,
            CoordFamily::Geometric { .. } => Trend::Increasing,
        }
    }

    pub fn eval(&self, e: u32) -> Result<FracExponent> {
        match self {
            CoordFamily::Constant(c) => Ok(*c),
            CoordFamily::Arithmetic { alpha, beta } => {
                FracExponent::from_ratio(-(alpha.value() * Q::from_integer(e as i128) + beta.value()), alpha.p)
            }
            CoordFamily::Geometric { gamma } => {
                let level = gamma.level.checked_add(e).ok_or_else(|| Error::Overflow("family level".into()))?;
                FracExponent::new(-gamma.num, level, gamma.p)
            }
        }
    }
}

/// `e ↦ (F_1(e), ..., F_n(e))` for `e ≥ start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    pub coords: Vec<CoordFamily>,
    pub start: u32,
}

impl Family {
    pub fn new(coords: Vec<CoordFamily>, start: u32) -> Result<Self> {
        let fam = Family { coords, start };
        for c in &fam.coords {
            match c {
                CoordFamily::Arithmetic { alpha, .. } if !alpha.is_positive() => {
                    return Err(Error::Invalid("arithmetic family needs α > 0".into()))
                }
                CoordFamily::Geometric { gamma } if !gamma.is_positive() => {
                    return Err(Error::Invalid("geometric family needs γ > 0".into()))
                }
                _ => {}
            }
        }
        if fam.coords.iter().all(|c| c.trend() == Trend::Flat) {
            return Err(Error::Invalid("family is constant in e".into()));
        }
        Ok(fam)
    }

    /// The family of the pathological element: `(−1/p^e, −e)`.
    pub fn pathological(p: u32) -> Self {
        Family {
            coords: vec![
                CoordFamily::Geometric {
                    gamma: FracExponent::integer(1, p),
                },
                CoordFamily::Arithmetic {
                    alpha: FracExponent::integer(1, p),
                    beta: FracExponent::zero(p),
                },
            ],
            start: 0,
        }
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    pub fn eval(&self, e: u32) -> Result<FracVector> {
        Ok(FracVector(self.coords.iter().map(|c| c.eval(e)).collect::<Result<_>>()?))
    }

    /// Every member has all coordinates `≤ 0`. Arithmetic coordinates are
    /// largest at `start`, geometric ones are always negative.
    pub fn is_nonpositive(&self) -> Result<bool> {
        for c in &self.coords {
            let worst = match c {
                CoordFamily::Geometric { .. } => continue,
                other => other.eval(self.start)?,
            };
            if worst.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Range of `e ≥ start` with `F(e) ≤ v` coordinatewise; `None` upper end is unbounded.
    fn range_below(&self, v: &FracVector) -> Option<(u32, Option<u32>)> {
        let mut lo = self.start as i128;
        let mut hi: Option<i128> = None;
        for (c, bound) in self.coords.iter().zip(&v.0) {
            let b = bound.value();
            match c {
                CoordFamily::Constant(k) => {
                    if k.value() > b {
                        return None;
                    }
                }
                CoordFamily::Arithmetic { alpha, beta } => {
                    // −(αe+β) ≤ b  ⇔  e ≥ (−b − β)/α
                    let need = ((-b - beta.value()) / alpha.value()).ceil().to_integer();
                    lo = lo.max(need);
                }
                CoordFamily::Geometric { gamma } => {
                    // −γ/p^e ≤ b: always when b ≥ 0, else p^e ≤ γ/(−b)
                    if b.is_negative() {
                        let r = gamma.value() / (-b);
                        let mut e = -1i128;
                        let mut pe = Q::from_integer(1);
                        while pe <= r {
                            e += 1;
                            pe *= Q::from_integer(gamma.p as i128);
                        }
                        hi = Some(hi.map_or(e, |h| h.min(e)));
                    }
                }
            }
        }
        if hi.is_some_and(|h| h < lo) {
            return None;
        }
        let lo = u32::try_from(lo).ok()?;
        Some((lo, hi.map(|h| h as u32)))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::family_to_string(self, None))
    }
}

/// Finite part plus parametric families.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SupportDescription {
    pub finite: Vec<FracVector>,
    pub families: Vec<Family>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DccVerdict {
    /// Minimal elements of the finite part; families are antichains or
    /// strictly increasing chains.
    Pass {
        minimal: Vec<FracVector>,
        antichains: Vec<usize>,
        increasing: Vec<usize>,
    },
    /// An explicit strictly descending run `v_0 > v_1 > v_2` from one family.
    Fail { family: usize, chain: Vec<FracVector> },
    Indeterminate,
}

impl DccVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, DccVerdict::Pass { .. })
    }
}

pub fn minimal_elements(points: &[FracVector]) -> Vec<FracVector> {
    points
        .iter()
        .filter(|v| !points.iter().any(|w| w.cw_lt(v)))
        .cloned()
        .collect()
}

/// Finite sets always pass. A family with a strictly increasing and a strictly
/// decreasing coordinate is an antichain; one with only increasing coordinates
/// is an ascending chain; one with only decreasing coordinates descends and
/// fails. A finite union of DCC sets has DCC.
pub fn dcc_check(s: &SupportDescription) -> Result<DccVerdict> {
    let mut antichains = Vec::new();
    let mut increasing = Vec::new();
    for (i, fam) in s.families.iter().enumerate() {
        let trends: Vec<Trend> = fam.coords.iter().map(CoordFamily::trend).collect();
        let up = trends.contains(&Trend::Increasing);
        let down = trends.contains(&Trend::Decreasing);
        match (up, down) {
            (true, true) => antichains.push(i),
            (true, false) => increasing.push(i),
            (false, true) => {
                let chain = (0..3).map(|k| fam.eval(fam.start + k)).collect::<Result<Vec<_>>>()?;
                return Ok(DccVerdict::Fail { family: i, chain });
            }
            (false, false) => return Ok(DccVerdict::Indeterminate),
        }
    }
    Ok(DccVerdict::Pass {
        minimal: minimal_elements(&s.finite),
        antichains,
        increasing,
    })
}

/// Formal sum `Σ c_a x^{−a}`: finite terms plus families with a constant
/// coefficient. Coefficients add where parts coincide.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSum {
    p: u32,
    arity: usize,
    finite: BTreeMap<FracVector, u32>,
    families: Vec<(Family, u32)>,
}

impl FormalSum {
    pub fn zero(p: u32, arity: usize) -> Self {
        FormalSum {
            p,
            arity,
            finite: BTreeMap::new(),
            families: Vec::new(),
        }
    }

    fn fp(&self) -> Fp {
        Fp::new(self.p as u64).expect("prime checked at construction")
    }

    fn check_vector(&self, v: &FracVector) -> Result<()> {
        if v.arity() != self.arity || v.0.iter().any(|x| x.p != self.p) {
            return Err(Error::ArityMismatch);
        }
        Ok(())
    }

    /// Adds `c·x^{v}` where `v` is the (nonpositive) support point.
    pub fn add_term(&mut self, v: FracVector, c: i64) -> Result<()> {
        self.check_vector(&v)?;
        if v.any_positive() {
            return Err(Error::Invalid(format!("support point {v} has a positive coordinate")));
        }
        let fp = self.fp();
        let c = fp.reduce(c);
        let slot = self.finite.entry(v.clone()).or_insert(0);
        *slot = fp.add(*slot, c);
        if *slot == 0 {
            self.finite.remove(&v);
        }
        Ok(())
    }

    pub fn add_family(&mut self, fam: Family, c: i64) -> Result<()> {
        if fam.arity() != self.arity {
            return Err(Error::ArityMismatch);
        }
        if !fam.is_nonpositive()? {
            return Err(Error::Invalid(format!("family {fam} leaves the nonpositive orthant")));
        }
        let fp = self.fp();
        let c = fp.reduce(c);
        if let Some(slot) = self.families.iter_mut().find(|(f, _)| *f == fam) {
            slot.1 = fp.add(slot.1, c);
        } else if c != 0 {
            self.families.push((fam, c));
        }
        self.families.retain(|(_, c)| *c != 0);
        Ok(())
    }

    /// `Σ_e x_1^{−1/p^e} x_2^{−e}`, padded with zero coordinates.
    pub fn pathological(p: u32, arity: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Invalid("the pathological element needs two variables".into()));
        }
        Fp::new(p as u64)?;
        let mut fam = Family::pathological(p);
        fam.coords.extend((2..arity).map(|_| CoordFamily::Constant(FracExponent::zero(p))));
        let mut f = FormalSum::zero(p, arity);
        f.add_family(fam, 1)?;
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn finite_terms(&self) -> &BTreeMap<FracVector, u32> {
        &self.finite
    }

    pub fn families(&self) -> &[(Family, u32)] {
        &self.families
    }

    pub fn is_finite(&self) -> bool {
        self.families.is_empty()
    }

    pub fn support(&self) -> SupportDescription {
        SupportDescription {
            finite: self.finite.keys().cloned().collect(),
            families: self.families.iter().map(|(f, _)| f.clone()).collect(),
        }
    }

    /// Every term with family index `≤ e_max`, coefficients combined.
    pub fn terms_up_to(&self, e_max: u32) -> Result<BTreeMap<FracVector, u32>> {
        let fp = self.fp();
        let mut out = self.finite.clone();
        for (fam, c) in &self.families {
            for e in fam.start..=e_max.max(fam.start.saturating_sub(1)) {
                if e > e_max {
                    break;
                }
                let v = fam.eval(e)?;
                let slot = out.entry(v.clone()).or_insert(0);
                *slot = fp.add(*slot, *c);
                if *slot == 0 {
                    out.remove(&v);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &FormalSum) -> Result<FormalSum> {
        if self.p != other.p || self.arity != other.arity {
            return Err(Error::ArityMismatch);
        }
        let mut out = self.clone();
        for (v, c) in &other.finite {
            out.add_term(v.clone(), *c as i64)?;
        }
        for (f, c) in &other.families {
            out.add_family(f.clone(), *c as i64)?;
        }
        Ok(out)
    }

    /// The formal sum is valid: its support passes [`dcc_check`].
    pub fn validate(&self) -> Result<DccVerdict> {
        let v = dcc_check(&self.support())?;
        match v {
            DccVerdict::Indeterminate => Err(Error::IndeterminateDcc),
            DccVerdict::Fail { .. } => Err(Error::Invalid("support has an infinite descending chain".into())),
            pass => Ok(pass),
        }
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::formal_sum_to_string(self, None))
    }
}

/// Finite sum `Σ d_b x^{b}` with `b ∈ ℕ[1/p]^n`, an element of some `R^{1/q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracPolynomial {
    p: u32,
    arity: usize,
    terms: BTreeMap<FracVector, u32>,
}

impl FracPolynomial {
    pub fn zero(p: u32, arity: usize) -> Self {
        FracPolynomial {
            p,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(b: FracVector, p: u32) -> Result<Self> {
        let mut s = FracPolynomial::zero(p, b.arity());
        s.add_term(b, 1)?;
        Ok(s)
    }

    pub fn add_term(&mut self, b: FracVector, c: i64) -> Result<()> {
        if b.arity() != self.arity || b.0.iter().any(|x| x.p != self.p) {
            return Err(Error::ArityMismatch);
        }
        if !b.all_nonnegative() {
            return Err(Error::Invalid(format!("exponent {b} is negative")));
        }
        let fp = Fp::new(self.p as u64)?;
        let c = fp.reduce(c);
        let slot = self.terms.entry(b.clone()).or_insert(0);
        *slot = fp.add(*slot, c);
        if *slot == 0 {
            self.terms.remove(&b);
        }
        Ok(())
    }

    pub fn terms(&self) -> &BTreeMap<FracVector, u32> {
        &self.terms
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), *c as i64)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p || self.arity != other.arity {
            return Err(Error::ArityMismatch);
        }
        let fp = Fp::new(self.p as u64)?;
        let mut out = FracPolynomial::zero(self.p, self.arity);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.checked_add(b)?, fp.mul(*c, *d) as i64)?;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarProduct {
    pub sum: FormalSum,
    /// The result is complete; false when survivors beyond the truncation
    /// were dropped.
    pub exact: bool,
}

/// Shifts one family by `b` and applies the kill rule. Returns the surviving
/// symbolic tail (if any), materialized survivors, and whether survivors past
/// `e_trunc` were dropped.
fn shift_family(fam: &Family, b: &FracVector, e_trunc: u32) -> Result<(Option<Family>, Vec<FracVector>, bool)> {
    let mut start = fam.start as i128;
    let mut finite_hi: Option<i128> = None;
    let mut coords = Vec::with_capacity(fam.coords.len());
    for (c, bi) in fam.coords.iter().zip(&b.0) {
        match c {
            CoordFamily::Constant(k) => {
                let v = k.checked_add(bi)?;
                if v.is_positive() {
                    return Ok((None, Vec::new(), false));
                }
                coords.push(CoordFamily::Constant(v));
            }
            CoordFamily::Arithmetic { alpha, beta } => {
                // −(αe + β) + b = −(αe + (β − b)), positive while e < (b − β)/α
                let nb = FracExponent::from_ratio(beta.value() - bi.value(), alpha.p)?;
                let first = (-nb.value() / alpha.value()).ceil().to_integer();
                start = start.max(first);
                coords.push(CoordFamily::Arithmetic { alpha: *alpha, beta: nb });
            }
            CoordFamily::Geometric { gamma } => {
                if bi.is_zero() {
                    coords.push(c.clone());
                } else {
                    // −γ/p^e + b ≤ 0  ⇔  p^e ≤ γ/b
                    let r = gamma.value() / bi.value();
                    let mut e = -1i128;
                    let mut pe = Q::from_integer(1);
                    while pe <= r {
                        e += 1;
                        pe *= Q::from_integer(gamma.p as i128);
                    }
                    finite_hi = Some(finite_hi.map_or(e, |h| h.min(e)));
                    coords.push(c.clone());
                }
            }
        }
    }
    let start = u32::try_from(start).map_err(|_| Error::Overflow("family start".into()))?;
    let eval_shifted = |e: u32| -> Result<FracVector> { fam.eval(e)?.checked_add(b) };
    match finite_hi {
        None => {
            let shifted = Family { coords, start };
            Ok((Some(shifted), Vec::new(), false))
        }
        Some(hi) if hi < start as i128 => Ok((None, Vec::new(), false)),
        Some(hi) => {
            let hi = hi as u32;
            let top = hi.min(e_trunc);
            let pts = (start..=top).map(eval_shifted).collect::<Result<Vec<_>>>()?;
            Ok((None, pts, hi > e_trunc))
        }
    }
}

/// Formal product `s·f` with the kill rule. Family parts stay symbolic when
/// their shape survives the shift; otherwise their (finitely many) survivors
/// are materialized up to index `e_trunc`.
pub fn scalar_multiply(s: &FracPolynomial, f: &FormalSum, e_trunc: u32) -> Result<ScalarProduct> {
    if s.p != f.p || s.arity != f.arity {
        return Err(Error::ArityMismatch);
    }
    let fp = f.fp();
    let mut out = FormalSum::zero(f.p, f.arity);
    let mut exact = true;
    for (b, d) in &s.terms {
        for (a, c) in &f.finite {
            let v = a.checked_add(b)?;
            if !v.any_positive() {
                out.add_term(v, fp.mul(*c, *d) as i64)?;
            }
        }
        for (fam, c) in &f.families {
            let (tail, pts, cut) = shift_family(fam, b, e_trunc)?;
            exact &= !cut;
            let coeff = fp.mul(*c, *d) as i64;
            if let Some(t) = tail {
                out.add_family(t, coeff)?;
            }
            for v in pts {
                out.add_term(v, coeff)?;
            }
        }
    }
    Ok(ScalarProduct { sum: out, exact })
}

/// Finds a minimal support element by descent: start anywhere and move to a
/// strictly smaller element while one exists. DCC makes this terminate.
fn minimal_support_element(f: &FormalSum) -> Result<FracVector> {
    let mut cur = match (f.finite.keys().next(), f.families.first()) {
        (Some(v), _) => v.clone(),
        (None, Some((fam, _))) => fam.eval(fam.start)?,
        (None, None) => return Err(Error::Invalid("formal sum is zero".into())),
    };
    for _ in 0..100_000 {
        let mut next = f.finite.keys().find(|w| w.cw_lt(&cur)).cloned();
        if next.is_none() {
            for (fam, _) in &f.families {
                if let Some((lo, hi)) = fam.range_below(&cur) {
                    let top = hi.unwrap_or(lo + 1);
                    for e in lo..=top {
                        let w = fam.eval(e)?;
                        if w.cw_lt(&cur) {
                            next = Some(w);
                            break;
                        }
                    }
                }
                if next.is_some() {
                    break;
                }
            }
        }
        match next {
            Some(w) => cur = w,
            None => return Ok(cur),
        }
    }
    Err(Error::IndeterminateDcc)
}

/// Multiplies `f` by `x^{a(0)}` for a minimal support element `−a(0)` and
/// returns the resulting nonzero constant.
pub fn socle_pairing(f: &FormalSum) -> Result<(FracVector, u32)> {
    f.validate()?;
    let min = minimal_support_element(f)?;
    let a0 = min.neg();
    let s = FracPolynomial::monomial(a0.clone(), f.p)?;
    let prod = scalar_multiply(&s, f, u32::MAX)?;
    let zero = FracVector::zero(f.arity, f.p);
    let ok = prod.exact && prod.sum.families.is_empty() && prod.sum.finite.len() == 1 && prod.sum.finite.contains_key(&zero);
    if !ok {
        return Err(Error::Invalid(format!("pairing with x^{a0} left more than a constant")));
    }
    Ok((a0, prod.sum.finite[&zero]))
}

/// `x_2^t · f` for the pathological `f`: the term at `e = t` survives as
/// `x_1^{−1/p^t}`, and exactly `E − t + 1` terms survive up to `E`.
pub fn nonvanishing_witness(t: u32, e_trunc: u32, p: u32) -> Result<(FracVector, u32)> {
    if e_trunc < t {
        return Err(Error::Invalid(format!("truncation E = {e_trunc} is below t = {t}")));
    }
    let f = FormalSum::pathological(p, 2)?;
    let s = FracPolynomial::monomial(FracVector::from_integers(&[0, t as i64], p), p)?;
    let prod = scalar_multiply(&s, &f, e_trunc)?;
    let terms = prod.sum.terms_up_to(e_trunc)?;
    let survivor = FracVector(vec![FracExponent::new(-1, t, p)?, FracExponent::zero(p)]);
    if !terms.contains_key(&survivor) {
        return Err(Error::Invalid("expected survivor is missing".into()));
    }
    let count = terms.len() as u32;
    if count != e_trunc - t + 1 {
        return Err(Error::Invalid(format!("expected {} survivors, found {count}", e_trunc - t + 1)));
    }
    Ok((survivor, count))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainSearch {
    /// Longest weakly descending chain of sums over distinct pairs `(i, j)`.
    pub longest: Vec<(usize, usize)>,
    pub threshold: usize,
    /// The chain, when it reaches the requested length.
    pub found: Option<Vec<(usize, usize)>>,
}

/// Searches chains `a^(1) + b^(1) ≥ a^(2) + b^(2) ≥ ...` over distinct pairs.
/// Finite inputs can never exceed `|A|·|B|` links.
pub fn chain_violation_search(a: &[FracVector], b: &[FracVector], length: usize) -> Result<ChainSearch> {
    let mut sums: HashMap<FracVector, Vec<(usize, usize)>> = HashMap::new();
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            sums.entry(x.checked_add(y)?).or_default().push((i, j));
        }
    }
    // sums ordered so that a strictly larger vector comes first
    let mut keys: Vec<FracVector> = sums.keys().cloned().collect();
    keys.sort_by(|x, y| y.sum().cmp(&x.sum()).then_with(|| y.cmp(x)));
    let n = keys.len();
    let mut best = vec![0usize; n];
    let mut prev = vec![None; n];
    for i in 0..n {
        best[i] = sums[&keys[i]].len();
        for j in 0..i {
            if keys[i].cw_lt(&keys[j]) && best[j] + sums[&keys[i]].len() > best[i] {
                best[i] = best[j] + sums[&keys[i]].len();
                prev[i] = Some(j);
            }
        }
    }
    let mut longest = Vec::new();
    if let Some(end) = (0..n).max_by_key(|&i| best[i]) {
        let mut cur = Some(end);
        let mut groups = Vec::new();
        while let Some(i) = cur {
            groups.push(i);
            cur = prev[i];
        }
        for i in groups.into_iter().rev() {
            longest.extend(sums[&keys[i]].iter().copied());
        }
    }
    let found = (length > 0 && longest.len() >= length).then(|| longest[..length].to_vec());
    Ok(ChainSearch {
        longest,
        threshold: a.len() * b.len(),
        found,
    })
}

/// Splits `x^a` with `Σ a_i ≥ n + c`, `c = μ − 1`, into an integer monomial of
/// degree `≥ n` and a remainder with coordinates in `[0, 1)`.
pub fn lemma31_factor(a: &FracVector, n: u64, mu: u64) -> Result<(Vec<u64>, FracVector)> {
    if !a.all_nonnegative() {
        return Err(Error::Invalid(format!("{a} has a negative coordinate")));
    }
    let c = mu.saturating_sub(1);
    let total = a.sum();
    if total < Q::from_integer((n + c) as i128) {
        return Err(Error::DegreePrecondition(format!("Σ a_i = {total} < n + c = {}", n + c)));
    }
    let int_part: Vec<u64> = a.0.iter().map(|x| x.floor() as u64).collect();
    let rem = FracVector(a.0.iter().map(FracExponent::fract).collect());
    let deg: u64 = int_part.iter().sum();
    assert!(deg >= n, "integer part of degree {deg} < {n}");
    Ok((int_part, rem))
}

#[cfg(test)]
mod tests;
