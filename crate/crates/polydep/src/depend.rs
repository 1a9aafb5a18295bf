//! Dependence oracles over the distinct non-zero roots of an integer
//! polynomial: degeneracy (a root quotient is a root of unity),
//! multiplicative dependence (`∏ zᵢ^{kᵢ} = 1` for a non-zero integer
//! vector), linear dependence (`Σ kᵢzᵢ = 0`), and the structure of the
//! rational subgroup of the group generated by the conjugates of an
//! algebraic number.
//!
//! Everything is organized as a cascade from exact closed forms (unit root
//! products, rational exponent matrices, quotient case analyses) down to a
//! bounded LLL search whose candidates are always confirmed by a norm-gap
//! certificate. `Dependent` verdicts therefore carry relations that
//! re-verify exactly; `Independent` is only ever produced by a structural
//! argument; everything else is an honest `Unknown` tagged with the bound
//! that was searched.

use crate::arith::{euler_phi, integer_kernel, is_prime_u64, mul_mod_u64, rational_exponents};
use crate::error::{Error, Result};
use crate::factorize::{self, Factorization};
use crate::interval::{pi, two_pi, CInt, RInt};
use crate::intpoly::{cyclotomic, lagrange_interpolate, totient_preimages, IntPolynomial};
use crate::lattice::{default_delta, relation_candidates_2d, simultaneous_candidates};
use crate::modpoly;
use crate::qfield::{self, PairRelation, QuadField};
use crate::roots::{root_profile, RootProfile};
use crate::{dyadic::Dyadic, roots::RootEnclosure};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

/// Integer exponent vector indexed by the distinct non-zero roots in
/// `RootProfile` order (centers sorted by real part, then imaginary part).
/// A valid relation vector is never all zero.
pub type ExponentVector = Vec<BigInt>;

/// How a `Dependent` verdict was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// The relation holds by an exact rational identity (unit root product,
    /// exponent-matrix kernel, quotient case analysis); no numerics touched.
    ClosedForm,
    /// The relation was confirmed by interval evaluation below the algebraic
    /// norm gap, which forces exact equality.
    NormGapCertified,
}

impl Certificate {
    pub fn as_str(&self) -> &'static str {
        match self {
            Certificate::ClosedForm => "closed_form",
            Certificate::NormGapCertified => "norm_gap",
        }
    }
}

/// The structural argument behind an `Independent` verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    ConstantTermUnit,
    Degenerate,
    SingleRootOfUnity,
    RationalExponentMatrix,
    LatticeCertified,
    PrimeDegreeLemma,
    QuadraticCaseAnalysis,
    QuarticCaseAnalysis,
}

impl Reason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reason::ConstantTermUnit => "constant_term_unit",
            Reason::Degenerate => "degenerate",
            Reason::SingleRootOfUnity => "single_root_of_unity",
            Reason::RationalExponentMatrix => "rational_exponent_matrix",
            Reason::LatticeCertified => "lattice_certified",
            Reason::PrimeDegreeLemma => "prime_degree_lemma",
            Reason::QuadraticCaseAnalysis => "quadratic_case_analysis",
            Reason::QuarticCaseAnalysis => "quartic_case_analysis",
        }
    }
}

/// Outcome of a dependence question. Exactly the fields of the active tag
/// are present: a relation (with its certificate) iff `Dependent`, a reason
/// iff `Independent`, the searched bound iff `Unknown`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DependenceVerdict {
    Dependent {
        relation: ExponentVector,
        certificate: Certificate,
    },
    Independent {
        reason: Reason,
    },
    Unknown {
        searched_bound: u64,
    },
}

impl DependenceVerdict {
    pub fn is_dependent(&self) -> bool {
        matches!(self, DependenceVerdict::Dependent { .. })
    }

    pub fn is_independent(&self) -> bool {
        matches!(self, DependenceVerdict::Independent { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, DependenceVerdict::Unknown { .. })
    }

    pub fn relation(&self) -> Option<&[BigInt]> {
        match self {
            DependenceVerdict::Dependent { relation, .. } => Some(relation),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            DependenceVerdict::Dependent {
                relation,
                certificate,
            } => serde_json::json!({
                "verdict": "dependent",
                "relation": relation
                    .iter()
                    .map(|k| k.to_i64().expect("relation exponent fits in i64"))
                    .collect::<Vec<i64>>(),
                "certificate": certificate.as_str(),
            }),
            DependenceVerdict::Independent { reason } => serde_json::json!({
                "verdict": "independent",
                "reason": reason.as_str(),
            }),
            DependenceVerdict::Unknown { searched_bound } => serde_json::json!({
                "verdict": "unknown",
                "bound": searched_bound,
            }),
        }
    }
}

fn dependent(relation: ExponentVector, certificate: Certificate) -> DependenceVerdict {
    debug_assert!(relation.iter().any(|k| !k.is_zero()));
    DependenceVerdict::Dependent {
        relation,
        certificate,
    }
}

fn independent(reason: Reason) -> DependenceVerdict {
    DependenceVerdict::Independent { reason }
}

/// Knobs of the bounded relation search: the exponent box `|kᵢ| ≤ K`, the
/// precision ladder, and the LLL quality parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchParameters {
    /// Largest exponent magnitude the search will propose (`K ≥ 1`).
    pub exponent_bound: u64,
    /// Working precision (bits) of the first root isolation / search round.
    pub precision_start: u32,
    /// Lovász parameter of the reductions, strictly between 1/4 and 1.
    pub lll_delta: BigRational,
    /// Hard precision cap; certification fails loudly beyond it.
    pub max_precision: u32,
}

impl SearchParameters {
    /// Defaults scaled to the input: `K = max(12, ⌈8·(log(n·H))^{n−1}⌉)`
    /// capped at 10⁶, a 192-bit starting precision, and a 2¹⁷-bit cap.
    pub fn for_polynomial(f: &IntPolynomial) -> SearchParameters {
        let h = f.height().to_f64().unwrap_or(f64::MAX);
        SearchParameters::for_degree_height(f.degree().max(1), h)
    }

    /// Same defaults, keyed by a degree/height box instead of a concrete
    /// polynomial — the shape every member of an exhaustive sweep shares.
    pub fn for_degree_height(n: usize, h: f64) -> SearchParameters {
        let n = n.max(1);
        let x = (n as f64 * h.max(1.0)).ln();
        let grown = (8.0 * x.powi(n as i32 - 1)).ceil();
        let bound = if grown.is_finite() && grown > 0.0 {
            (grown as u64).min(1_000_000)
        } else {
            1_000_000
        };
        SearchParameters {
            exponent_bound: bound.max(12),
            precision_start: 192,
            lll_delta: default_delta(),
            max_precision: 1 << 17,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.exponent_bound < 1 {
            return Err(Error::InvalidInput("exponent bound must be at least 1".into()));
        }
        if self.precision_start > self.max_precision {
            return Err(Error::InvalidInput(
                "starting precision exceeds the precision cap".into(),
            ));
        }
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
        if self.lll_delta <= quarter || self.lll_delta >= BigRational::one() {
            return Err(Error::InvalidInput(
                "LLL delta must lie strictly between 1/4 and 1".into(),
            ));
        }
        Ok(())
    }
}

/// Structure of `Γ(α) ∩ ℚ*`, the rational points of the multiplicative
/// group generated by the conjugates of `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalGroupStructure {
    /// `Γ(α) ∩ ℚ* = {1}`.
    Trivial,
    /// `Γ(α) ∩ ℚ* = {±1}`.
    PlusMinusOne,
    /// `Γ(α) ∩ ℚ* = ⟨g⟩` with `|g| > 1`; `g` may be negative.
    CyclicNoMinusOne(BigRational),
    /// `Γ(α) ∩ ℚ* = ⟨−1, g⟩` with `g > 1`.
    CyclicWithMinusOne(BigRational),
    /// The bounded search could not pin the group down; `g0` is the minimal
    /// positive rational with `|N(α)| = g0^a`.
    Undetermined { g0: BigRational, searched_bound: u64 },
}

impl RationalGroupStructure {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            RationalGroupStructure::Trivial => serde_json::json!({"structure": "trivial"}),
            RationalGroupStructure::PlusMinusOne => {
                serde_json::json!({"structure": "plus_minus_one"})
            }
            RationalGroupStructure::CyclicNoMinusOne(g) => serde_json::json!({
                "structure": "cyclic_no_minus_one",
                "generator": g.to_string(),
            }),
            RationalGroupStructure::CyclicWithMinusOne(g) => serde_json::json!({
                "structure": "cyclic_with_minus_one",
                "generator": g.to_string(),
            }),
            RationalGroupStructure::Undetermined { g0, searched_bound } => serde_json::json!({
                "structure": "undetermined",
                "g0": g0.to_string(),
                "bound": searched_bound,
            }),
        }
    }
}

/// Outcome of the exponent-sum filter for irreducible polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormSumConstraint {
    /// `|N(α)| = 1`: relations are unconstrained in their exponent sum.
    NoConstraint,
    /// `|N(α)| ≠ 1`: every relation among the conjugates has `Σkᵢ = 0`.
    SumZero,
}

// ---------------------------------------------------------------------------
// small helpers
// ---------------------------------------------------------------------------

fn is_odd_prime(n: usize) -> bool {
    n >= 3 && is_prime_u64(n as u64)
}

fn rational_pow(q: &BigRational, e: i64) -> BigRational {
    let a = e.unsigned_abs();
    if a > u32::MAX as u64 {
        panic!("rational power exponent out of range");
    }
    let mag = BigRational::new(q.numer().pow(a as u32), q.denom().pow(a as u32));
    if e >= 0 {
        mag
    } else {
        mag.recip()
    }
}

/// Product of all roots (with multiplicity): `(−1)^n · a₀ / a_n`.
pub fn root_product(f: &IntPolynomial) -> BigRational {
    let q = BigRational::new(f.constant_term(), f.leading().clone());
    if f.degree() % 2 == 1 {
        -q
    } else {
        q
    }
}

/// Square-free polynomial whose roots are exactly the distinct non-zero
/// roots of `f`. Degree zero means `f` has no non-zero roots at all.
pub fn distinct_nonzero_part(f: &IntPolynomial) -> Result<IntPolynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let v = f.zero_root_multiplicity();
    let h = IntPolynomial::new(f.coeffs()[v..].to_vec());
    if h.degree() == 0 {
        return Ok(IntPolynomial::from_i64(&[1]));
    }
    Ok(h.squarefree_part())
}

/// Flip the vector so its first non-zero entry is positive (a relation and
/// its inverse are equivalent).
fn normalize_sign(k: &mut [BigInt]) {
    if let Some(first) = k.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in k.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

fn vec_from_i64(entries: &[i64]) -> ExponentVector {
    entries.iter().map(|&k| BigInt::from(k)).collect()
}

// ---------------------------------------------------------------------------
// ratio polynomial and degeneracy
// ---------------------------------------------------------------------------

/// `f(t·y)` as a polynomial in `y`.
fn scale_argument(f: &IntPolynomial, t: &BigInt) -> IntPolynomial {
    let mut coeffs = f.coeffs().to_vec();
    let mut power = BigInt::one();
    for c in coeffs.iter_mut() {
        *c = &*c * &power;
        power = &power * t;
    }
    IntPolynomial::new(coeffs)
}

/// The degree-`n²` integer polynomial whose root multiset is
/// `{αⱼ/αᵢ : 1 ≤ i,j ≤ n}` for the roots `αᵢ` of `f`; computed as the
/// resultant in `y` of `f(y)` and `f(x·y)`, recovered by interpolation at
/// `n²+1` non-zero integer nodes. Divisible by `(x−1)^n` exactly when `f`
/// is square-free.
pub fn ratio_polynomial(f: &IntPolynomial) -> Result<IntPolynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    if f.constant_term().is_zero() {
        return Err(Error::InvalidInput(
            "ratio polynomial requires a non-zero constant term".into(),
        ));
    }
    if !f.is_squarefree() {
        return Err(Error::InvalidInput(
            "ratio polynomial requires a square-free input".into(),
        ));
    }
    let n = f.degree();
    let count = n * n + 1;
    let mut points: Vec<(BigInt, BigInt)> = Vec::with_capacity(count);
    let mut t = BigInt::one();
    // Nodes 1, −1, 2, −2, …: zero is excluded because f(0·y) collapses to a
    // constant and the resultant would drop degree there.
    'outer: loop {
        for node in [t.clone(), -t.clone()] {
            let ft = scale_argument(f, &node);
            let value = f.resultant(&ft);
            points.push((node, value));
            if points.len() == count {
                break 'outer;
            }
        }
        t += 1;
    }
    let r = lagrange_interpolate(&points).expect("ratio polynomial has integer coefficients");
    assert_eq!(r.degree(), n * n, "ratio polynomial must have full degree");
    Ok(r)
}

/// Orders worth testing for a ratio polynomial quotient `S` of degree `d`:
/// all `m ≥ 2` with `φ(m) ≤ d` (hence `m ≤ 2d²`).
fn degeneracy_orders(d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for m in 2..=(2 * d * d).max(2) {
        if euler_phi(m) <= d {
            out.push(m);
        }
    }
    out
}

/// Exact degeneracy decision on a square-free polynomial with non-zero
/// constant term and degree ≥ 2: the smallest `m` such that some quotient
/// of distinct roots is an `m`-th root of unity, if any.
fn degenerate_ratio_order(reduced: &IntPolynomial) -> Option<u64> {
    let n = reduced.degree();
    let r = ratio_polynomial(reduced).expect("reduced part admits a ratio polynomial");
    let lin = IntPolynomial::from_i64(&[-1, 1]);
    let mut s = r;
    for _ in 0..n {
        s = s
            .divide_exact(&lin)
            .expect("ratio polynomial of a square-free input is divisible by (x-1)^n");
    }
    debug_assert!(!s.evaluate(&BigInt::one()).is_zero());
    let ds = (n * n - n) as u64;
    debug_assert_eq!(s.degree() as u64, ds);
    for m in degeneracy_orders(ds) {
        let mut c = vec![BigInt::zero(); m as usize + 1];
        c[0] = -BigInt::one();
        c[m as usize] = BigInt::one();
        if s.gcd(&IntPolynomial::new(c)).degree() > 0 {
            return Some(m);
        }
    }
    None
}

/// Large word primes used by the one-sided modular degeneracy screen.
pub(crate) const SCREEN_PRIMES: [u64; 3] = [
    9_223_372_036_854_775_783,
    9_223_372_036_854_775_643,
    9_223_372_036_854_775_549,
];

static CYCLOTOMIC_MASS: Lazy<Mutex<HashMap<(u64, u64), Vec<u64>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// `∏ Φ_m mod p` over every order `m` relevant at quotient degree `d`,
/// memoized per `(d, p)`.
fn cyclotomic_mass(d: u64, p: u64) -> Vec<u64> {
    let mut cache = CYCLOTOMIC_MASS.lock().expect("cyclotomic mass cache poisoned");
    cache
        .entry((d, p))
        .or_insert_with(|| {
            let mut w = vec![1u64];
            for m in degeneracy_orders(d) {
                let phi = modpoly::reduce(&cyclotomic(m), p);
                w = modpoly::mul(&w, &phi, p);
            }
            w
        })
        .clone()
}

/// One prime's worth of the sound degeneracy screen. `fp` is the square-free
/// input with non-zero constant term reduced mod `p`, full degree preserved.
/// `Some(true)` means certainly not degenerate; `Some(false)` means the
/// modular evidence is consistent with degeneracy; `None` means this prime is
/// unusable (bad reduction somewhere along the way).
pub(crate) fn screen_not_degenerate_at(fp: &[u64], p: u64) -> Option<bool> {
    let n = modpoly::deg(fp)?;
    if n < 2 || fp[0] == 0 {
        return None;
    }
    let nn = n * n;
    let mut pts = Vec::with_capacity(nn + 1);
    for t in 1..=(nn as u64 + 1) {
        let mut ft = fp.to_vec();
        let mut pw = 1u64;
        for c in ft.iter_mut() {
            *c = mul_mod_u64(*c, pw, p);
            pw = mul_mod_u64(pw, t, p);
        }
        pts.push((t, modpoly::resultant(fp, &ft, p)));
    }
    let rp = modpoly::interpolate(&pts, p);
    if modpoly::deg(&rp) != Some(nn) {
        return None; // p divides the leading coefficient of the ratio polynomial
    }
    // Divide by (x−1)^n; exact over ℚ, hence exact here since the degree
    // was preserved.
    let mut sp = rp;
    for _ in 0..n {
        let (q, rem) = modpoly::div_linear(&sp, 1, p);
        if rem != 0 {
            return None;
        }
        sp = q;
    }
    let w = cyclotomic_mass((nn - n) as u64, p);
    let g = modpoly::gcd(&sp, &w, p);
    // A non-constant gcd over ℚ survives reduction because the leading
    // coefficient of the quotient is a unit mod p, so a constant gcd
    // here rules degeneracy out entirely.
    Some(modpoly::deg(&g) == Some(0))
}

/// Sound one-sided screen: `true` means the ratio polynomial quotient is
/// provably coprime to every relevant cyclotomic polynomial over ℚ, so the
/// input is certainly not degenerate. `false` is inconclusive.
fn definitely_not_degenerate_mod_p(reduced: &IntPolynomial) -> bool {
    let n = reduced.degree();
    for &p in &SCREEN_PRIMES {
        let fp = modpoly::reduce(reduced, p);
        if modpoly::deg(&fp) != Some(n) {
            continue;
        }
        match screen_not_degenerate_at(&fp, p) {
            Some(answer) => return answer,
            None => continue,
        }
    }
    false
}

/// Whether some quotient of two distinct non-zero roots of `f` is a root of
/// unity. Exact: a modular screen dispatches the common negative case, and
/// hits are confirmed with the integer ratio polynomial.
pub fn is_degenerate(f: &IntPolynomial) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() < 2 {
        return Err(Error::InvalidInput(
            "degeneracy is defined for degree at least 2".into(),
        ));
    }
    let reduced = distinct_nonzero_part(f)?;
    if reduced.degree() < 2 {
        return Ok(false);
    }
    if definitely_not_degenerate_mod_p(&reduced) {
        return Ok(false);
    }
    Ok(degenerate_ratio_order(&reduced).is_some())
}

// ---------------------------------------------------------------------------
// rational dependence
// ---------------------------------------------------------------------------

/// Exact multiplicative dependence over non-zero rationals: dependence holds
/// iff the prime-exponent matrix has a non-trivial integer kernel, with the
/// sign fixed up by doubling. Never returns `Unknown`.
pub fn rational_dependence(values: &[BigRational]) -> Result<DependenceVerdict> {
    if values.is_empty() {
        return Err(Error::InvalidInput("value list must be non-empty".into()));
    }
    if values.iter().any(|v| v.is_zero()) {
        return Err(Error::InvalidInput("values must be non-zero".into()));
    }
    let m = values.len();
    let mut negatives = Vec::with_capacity(m);
    let mut maps = Vec::with_capacity(m);
    let mut primes: Vec<BigInt> = Vec::new();
    for v in values {
        let (neg, map) = rational_exponents(v);
        for (p, _) in &map {
            if !primes.contains(p) {
                primes.push(p.clone());
            }
        }
        negatives.push(neg);
        maps.push(map);
    }
    primes.sort();
    let rows: Vec<Vec<BigInt>> = primes
        .iter()
        .map(|p| {
            maps.iter()
                .map(|map| {
                    map.iter()
                        .find(|(q, _)| q == p)
                        .map(|(_, e)| BigInt::from(*e))
                        .unwrap_or_else(BigInt::zero)
                })
                .collect()
        })
        .collect();
    let kernel = integer_kernel(&rows, m);
    if kernel.is_empty() {
        return Ok(independent(Reason::RationalExponentMatrix));
    }
    let sign_negative = |k: &[BigInt]| -> bool {
        k.iter()
            .zip(&negatives)
            .filter(|(ki, neg)| **neg && ki.is_odd())
            .count()
            % 2
            == 1
    };
    for k in &kernel {
        if !sign_negative(k) {
            let mut rel = k.clone();
            normalize_sign(&mut rel);
            return Ok(dependent(rel, Certificate::ClosedForm));
        }
    }
    let mut rel: Vec<BigInt> = kernel[0].iter().map(|x| x * 2).collect();
    normalize_sign(&mut rel);
    Ok(dependent(rel, Certificate::ClosedForm))
}

// ---------------------------------------------------------------------------
// structural filters for irreducible inputs
// ---------------------------------------------------------------------------

/// For irreducible `f`: whether every relation among the conjugates must
/// have exponent sum zero (which happens exactly when `|N(α)| ≠ 1`).
pub fn norm_sum_constraint(f: &IntPolynomial) -> Result<NormSumConstraint> {
    if f.degree() < 2 {
        return Err(Error::InvalidInput("degree must be at least 2".into()));
    }
    if !factorize::is_irreducible(f) {
        return Err(Error::InvalidInput("input must be irreducible".into()));
    }
    Ok(if root_product(f).abs().is_one() {
        NormSumConstraint::NoConstraint
    } else {
        NormSumConstraint::SumZero
    })
}

fn prime_degree_conditions(f: &IntPolynomial) -> bool {
    f.constant_term().abs() != f.leading().abs()
        && (1..f.degree()).any(|j| !f.coeff(j).is_zero())
}

/// Certified independence filter for irreducible polynomials of odd prime
/// degree: `true` means the conjugates are multiplicatively independent;
/// `false` means the filter does not apply (it is NOT a dependence claim).
pub fn prime_degree_independent(f: &IntPolynomial) -> Result<bool> {
    if !is_odd_prime(f.degree()) {
        return Err(Error::InvalidInput("degree must be an odd prime".into()));
    }
    if !factorize::is_irreducible(f) {
        return Err(Error::InvalidInput("input must be irreducible".into()));
    }
    Ok(prime_degree_conditions(f))
}

// ---------------------------------------------------------------------------
// quadratic and quartic case analyses
// ---------------------------------------------------------------------------

/// Exact verdict for an irreducible quadratic `a₂X² + a₁X + a₀`, by case
/// analysis of the root quotient: the quotient is a root of unity iff
/// `a₁ = 0` (order 2), `a₁² = a₀a₂` (order 3), `a₁² = 2a₀a₂` (order 4) or
/// `a₁² = 3a₀a₂` (order 6), and then `(w, −w)` is a relation; failing that,
/// `|a₀| = |a₂|` gives the unit-product relation `(2,2)`; otherwise
/// independent. Never `Unknown`.
pub fn quadratic_classify(f: &IntPolynomial) -> Result<DependenceVerdict> {
    if f.degree() != 2 {
        return Err(Error::InvalidInput("degree must be 2".into()));
    }
    if !factorize::is_irreducible(f) {
        return Err(Error::InvalidInput("input must be irreducible".into()));
    }
    Ok(quadratic_classify_core(f))
}

fn quadratic_classify_core(f: &IntPolynomial) -> DependenceVerdict {
    let a0 = f.coeff(0);
    let a1 = f.coeff(1);
    let a2 = f.coeff(2);
    let prod = &a0 * &a2;
    let sq = &a1 * &a1;
    let order = if a1.is_zero() {
        Some(2)
    } else if sq == prod {
        Some(3)
    } else if sq == BigInt::from(2) * &prod {
        Some(4)
    } else if sq == BigInt::from(3) * &prod {
        Some(6)
    } else {
        None
    };
    if let Some(w) = order {
        return dependent(vec_from_i64(&[w, -w]), Certificate::ClosedForm);
    }
    if a0.abs() == a2.abs() {
        return dependent(vec_from_i64(&[2, 2]), Certificate::ClosedForm);
    }
    independent(Reason::QuadraticCaseAnalysis)
}

/// Exact screen for an irreducible quartic with `|a₀| ≠ |a₄|` that is not
/// degenerate: a relation exists iff some pairing `{i,j|k,l}` of the roots
/// satisfies `(αᵢαⱼ)^{12} = (α_kα_l)^{12}`, which happens iff the cubic
/// with roots `a₄·(αᵢαⱼ + α_kα_l)` has a root `y` with `y² = c·a₀a₄` for
/// `c ∈ {0,…,4}` (quotient of order 1, 2, 3, 4, 6) or shares a root with
/// `y⁴ − 4a₀a₄y² + (a₀a₄)²` (order 12). Entirely integer arithmetic.
pub(crate) fn quartic_pairing_screen(f: &IntPolynomial) -> bool {
    let a0 = f.coeff(0);
    let a1 = f.coeff(1);
    let a2 = f.coeff(2);
    let a3 = f.coeff(3);
    let a4 = f.coeff(4);
    let r2 = -a2.clone();
    let r1 = &a1 * &a3 - BigInt::from(4) * &a0 * &a4;
    let r0 = -(&a0 * &a3 * &a3 + &a1 * &a1 * &a4 - BigInt::from(4) * &a0 * &a2 * &a4);
    let d = &a0 * &a4;
    for c in 0..=4u32 {
        let t = BigInt::from(c) * &d;
        let av = &r2 * &t + &r0;
        let bv = &t + &r1;
        if &av * &av == &t * &(&bv * &bv) {
            return true;
        }
    }
    let resolvent = IntPolynomial::new(vec![r0, r1, r2, BigInt::one()]);
    let quartic = IntPolynomial::new(vec![
        &d * &d,
        BigInt::zero(),
        BigInt::from(-4) * &d,
        BigInt::zero(),
        BigInt::one(),
    ]);
    resolvent.resultant(&quartic).is_zero()
}

const QUARTIC_PAIRINGS: [[i64; 4]; 3] = [
    [12, 12, -12, -12],
    [12, -12, 12, -12],
    [12, -12, -12, 12],
];

/// Exact verdict for an irreducible quartic; never `Unknown`. Unit root
/// product and degeneracy are handled first; the remaining possibility is a
/// pairing relation with exponent 12, screened exactly and then certified.
pub fn quartic_classify(f: &IntPolynomial, params: &SearchParameters) -> Result<DependenceVerdict> {
    if f.degree() != 4 {
        return Err(Error::InvalidInput("degree must be 4".into()));
    }
    if !factorize::is_irreducible(f) {
        return Err(Error::InvalidInput("input must be irreducible".into()));
    }
    params.validate()?;
    quartic_classify_core(f, params, false)
}

fn quartic_classify_core(
    f: &IntPolynomial,
    params: &SearchParameters,
    degeneracy_ruled_out: bool,
) -> Result<DependenceVerdict> {
    if f.coeff(0).abs() == f.coeff(4).abs() {
        return Ok(dependent(vec_from_i64(&[2, 2, 2, 2]), Certificate::ClosedForm));
    }
    if !degeneracy_ruled_out && !definitely_not_degenerate_mod_p(f) {
        if let Some(w) = degenerate_ratio_order(f) {
            return degenerate_dependent(f, w, params);
        }
    }
    if !quartic_pairing_screen(f) {
        return Ok(independent(Reason::QuarticCaseAnalysis));
    }
    let profile = root_profile(f, params.precision_start)?;
    for pairing in &QUARTIC_PAIRINGS {
        let k = vec_from_i64(pairing);
        if certify_relation(&profile, f, &k, params)? {
            return Ok(dependent(k, Certificate::NormGapCertified));
        }
    }
    unreachable!("quartic pairing screen hit must certify on one of the three pairings")
}

/// Turn a certified degeneracy order into a two-root relation: some pair of
/// distinct roots has quotient of order dividing `w`, so `w·(eᵢ − eⱼ)`
/// certifies for some pair.
fn degenerate_dependent(
    reduced: &IntPolynomial,
    w: u64,
    params: &SearchParameters,
) -> Result<DependenceVerdict> {
    let profile = root_profile(reduced, params.precision_start)?;
    let m = profile.roots.len();
    let we = BigInt::from(w);
    for i in 0..m {
        for j in (i + 1)..m {
            let mut k = vec![BigInt::zero(); m];
            k[i] = we.clone();
            k[j] = -we.clone();
            if certify_relation(&profile, reduced, &k, params)? {
                return Ok(dependent(k, Certificate::NormGapCertified));
            }
        }
    }
    unreachable!("a degenerate quotient of certified order must exist among root pairs")
}

// ---------------------------------------------------------------------------
// norm-gap certification
// ---------------------------------------------------------------------------

/// Upper bound on the splitting-field degree of `f`: the product of `dᵢ!`
/// over the irreducible factor degrees (each at most `deg f`!).
fn splitting_degree_bound(f: &IntPolynomial) -> Result<u64> {
    let mut d: u64 = 1;
    for (g, _) in factorize::factor(f).factors {
        let n = g.degree() as u64;
        if n > 20 {
            return Err(Error::InvalidInput(
                "degree too large for norm-gap certification".into(),
            ));
        }
        for k in 2..=n {
            d = d
                .checked_mul(k)
                .ok_or_else(|| Error::InvalidInput("splitting degree overflow".into()))?;
        }
    }
    Ok(d)
}

/// Decides `∏ αᵢ^{kᵢ} = 1` exactly, where `αᵢ` are the enclosed roots of
/// `f` in profile order. Passing to the algebraic integers `γᵢ = a_n·αᵢ`,
/// the relation is `P = Q` with `P`, `Q` algebraic integers whose conjugates
/// are bounded; a non-zero difference then has absolute value above an a
/// priori gap, so interval evaluation below the gap is conclusive.
pub fn certify_relation(
    profile: &RootProfile,
    f: &IntPolynomial,
    k: &[BigInt],
    params: &SearchParameters,
) -> Result<bool> {
    certify_scaled(profile, f, k, &BigRational::one(), params)
}

/// Decides `∏ αᵢ^{kᵢ} = target` exactly (same machinery as
/// `certify_relation`, with the target folded into the integer scalars).
fn certify_scaled(
    profile: &RootProfile,
    f: &IntPolynomial,
    k: &[BigInt],
    target: &BigRational,
    params: &SearchParameters,
) -> Result<bool> {
    let m = profile.roots.len();
    if k.len() != m {
        return Err(Error::InvalidInput(
            "exponent vector length does not match the root profile".into(),
        ));
    }
    if target.is_zero() {
        return Err(Error::InvalidInput("target must be non-zero".into()));
    }
    if k.iter().all(|x| x.is_zero()) {
        return Ok(target.is_one());
    }
    let d = splitting_degree_bound(f)?;
    let mut s_plus = BigInt::zero();
    let mut s_minus = BigInt::zero();
    for ki in k {
        if ki.is_positive() {
            s_plus += ki;
        } else {
            s_minus -= ki;
        }
    }
    let total = (&s_plus + &s_minus)
        .to_u64()
        .filter(|&s| s <= 1_000_000)
        .ok_or_else(|| Error::InvalidInput("exponent mass too large".into()))?;
    let lead = f.leading().clone();
    let c_bound = lead.abs() + f.height();
    let tn = target.numer();
    let td = target.denom();
    let t_bits = tn.bits().max(td.bits());
    let b_bits = 2 + t_bits + total * c_bound.bits();
    let gap_bits_wide = (d as u128 - 1) * (b_bits as u128);
    let needed = gap_bits_wide + (b_bits as u128) + 128;
    if needed > params.max_precision as u128 {
        return Err(Error::PrecisionExceeded {
            requested: needed.min(u32::MAX as u128) as u32,
            achieved: params.max_precision,
        });
    }
    let gap_bits = gap_bits_wide as u32;
    let threshold = Dyadic::new(BigInt::one(), -(gap_bits as i64) - 1);
    let p_scalar = td * lead.abs_pow(&s_minus);
    let q_scalar = tn * lead.abs_pow(&s_plus);
    let mut cur = profile.clone();
    loop {
        let delta = scaled_difference(&cur, &lead, k, &p_scalar, &q_scalar);
        if !delta.contains_zero() {
            return Ok(false);
        }
        if delta.re.width().lt(&threshold) && delta.im.width().lt(&threshold) {
            return Ok(true);
        }
        let jump = gap_bits
            .saturating_add(b_bits.min(u32::MAX as u64) as u32)
            .saturating_add(64);
        let next = if cur.precision < jump {
            jump
        } else {
            cur.precision.saturating_mul(2)
        };
        if next > params.max_precision {
            return Err(Error::PrecisionExceeded {
                requested: next,
                achieved: cur.precision,
            });
        }
        cur = cur.refine(f, next)?;
    }
}

/// Interval enclosure of `p_scalar·∏_{kᵢ>0}γᵢ^{kᵢ} − q_scalar·∏_{kᵢ<0}γᵢ^{−kᵢ}`.
fn scaled_difference(
    profile: &RootProfile,
    lead: &BigInt,
    k: &[BigInt],
    p_scalar: &BigInt,
    q_scalar: &BigInt,
) -> CInt {
    let wp = profile.precision;
    let lead_r = RInt::from_bigint(lead);
    let mut pval = CInt::from_real(RInt::from_bigint(p_scalar));
    let mut qval = CInt::from_real(RInt::from_bigint(q_scalar));
    for (i, ki) in k.iter().enumerate() {
        if ki.is_zero() {
            continue;
        }
        let gamma = profile.roots[i].to_cint().scale(&lead_r, wp);
        let e = ki.abs().to_u64().expect("exponent mass already bounded");
        let pw = gamma.powi(e, wp);
        if ki.is_positive() {
            pval = pval.mul(&pw, wp);
        } else {
            qval = qval.mul(&pw, wp);
        }
    }
    pval.sub(&qval, wp)
}

trait AbsPow {
    fn abs_pow(&self, e: &BigInt) -> BigInt;
}

impl AbsPow for BigInt {
    /// `self^e` for a small non-negative BigInt exponent, used for the
    /// leading-coefficient scalars. The sign of the base is kept: both sides
    /// carry the same power of `a_n`, so a shared sign cancels in `P = Q`.
    fn abs_pow(&self, e: &BigInt) -> BigInt {
        let e = e.to_u32().expect("scalar exponent already bounded");
        self.pow(e)
    }
}

/// Decides `Σ kᵢαᵢ = 0` exactly via the same norm-gap argument applied to
/// the algebraic integer `Σ kᵢ·(a_n·αᵢ)`.
fn certify_linear(
    profile: &RootProfile,
    f: &IntPolynomial,
    k: &[BigInt],
    params: &SearchParameters,
) -> Result<bool> {
    let m = profile.roots.len();
    if k.len() != m {
        return Err(Error::InvalidInput(
            "exponent vector length does not match the root profile".into(),
        ));
    }
    if k.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidInput("relation vector must be non-zero".into()));
    }
    let d = splitting_degree_bound(f)?;
    let sum_abs: BigInt = k.iter().map(|x| x.abs()).sum();
    sum_abs
        .to_u64()
        .filter(|&s| s <= 1_000_000)
        .ok_or_else(|| Error::InvalidInput("coefficient mass too large".into()))?;
    let lead = f.leading().clone();
    let c_bound = lead.abs() + f.height();
    let b_bits = (&sum_abs * &c_bound).bits() + 2;
    let gap_bits_wide = (d as u128 - 1) * (b_bits as u128);
    let needed = gap_bits_wide + (b_bits as u128) + 128;
    if needed > params.max_precision as u128 {
        return Err(Error::PrecisionExceeded {
            requested: needed.min(u32::MAX as u128) as u32,
            achieved: params.max_precision,
        });
    }
    let gap_bits = gap_bits_wide as u32;
    let threshold = Dyadic::new(BigInt::one(), -(gap_bits as i64) - 1);
    let mut cur = profile.clone();
    loop {
        let wp = cur.precision;
        let mut sum = CInt::from_real(RInt::zero());
        for (i, ki) in k.iter().enumerate() {
            if ki.is_zero() {
                continue;
            }
            let coeff = RInt::from_bigint(&(ki * &lead));
            sum = sum.add(&cur.roots[i].to_cint().scale(&coeff, wp), wp);
        }
        if !sum.contains_zero() {
            return Ok(false);
        }
        if sum.re.width().lt(&threshold) && sum.im.width().lt(&threshold) {
            return Ok(true);
        }
        let jump = gap_bits
            .saturating_add(b_bits.min(u32::MAX as u64) as u32)
            .saturating_add(64);
        let next = if cur.precision < jump {
            jump
        } else {
            cur.precision.saturating_mul(2)
        };
        if next > params.max_precision {
            return Err(Error::PrecisionExceeded {
                requested: next,
                achieved: cur.precision,
            });
        }
        cur = cur.refine(f, next)?;
    }
}

// ---------------------------------------------------------------------------
// root location helpers (exact index maps into a profile)
// ---------------------------------------------------------------------------

fn enclosure_matches_rational(enclosure: &RootEnclosure, value: &BigRational) -> bool {
    let c = enclosure.to_cint();
    c.im.contains_zero() && c.re.contains_rational(value)
}

/// Indices of the enclosures holding the given rational roots, in input
/// order; refines until every rational sits in exactly one disk.
fn locate_rational_roots(
    reduced: &IntPolynomial,
    rats: &[BigRational],
    params: &SearchParameters,
) -> Result<(RootProfile, Vec<usize>)> {
    let mut profile = root_profile(reduced, params.precision_start)?;
    loop {
        let mut used = vec![false; profile.roots.len()];
        let mut out = Vec::with_capacity(rats.len());
        let mut ambiguous = false;
        for r in rats {
            let hits: Vec<usize> = profile
                .roots
                .iter()
                .enumerate()
                .filter(|(i, e)| !used[*i] && enclosure_matches_rational(e, r))
                .map(|(i, _)| i)
                .collect();
            if hits.len() != 1 {
                ambiguous = true;
                break;
            }
            used[hits[0]] = true;
            out.push(hits[0]);
        }
        if !ambiguous {
            return Ok((profile, out));
        }
        let next = profile.precision.saturating_mul(2);
        if next > params.max_precision {
            return Err(Error::PrecisionExceeded {
                requested: next,
                achieved: profile.precision,
            });
        }
        profile = profile.refine(reduced, next)?;
    }
}

/// Indices of the enclosures holding the roots of the two quadratic factors,
/// refined until the evaluation test separates them unambiguously.
fn locate_two_quadratics(
    reduced: &IntPolynomial,
    g: &IntPolynomial,
    h: &IntPolynomial,
    params: &SearchParameters,
) -> Result<(RootProfile, [usize; 2], [usize; 2])> {
    let mut profile = root_profile(reduced, params.precision_start)?;
    loop {
        let wp = profile.precision;
        let mut g_idx = Vec::new();
        let mut h_idx = Vec::new();
        for (i, e) in profile.roots.iter().enumerate() {
            let c = e.to_cint();
            if g.evaluate_cint(&c, wp).contains_zero() {
                g_idx.push(i);
            }
            if h.evaluate_cint(&c, wp).contains_zero() {
                h_idx.push(i);
            }
        }
        if g_idx.len() == 2 && h_idx.len() == 2 && g_idx.iter().all(|i| !h_idx.contains(i)) {
            return Ok((profile, [g_idx[0], g_idx[1]], [h_idx[0], h_idx[1]]));
        }
        let next = profile.precision.saturating_mul(2);
        if next > params.max_precision {
            return Err(Error::PrecisionExceeded {
                requested: next,
                achieved: profile.precision,
            });
        }
        profile = profile.refine(reduced, next)?;
    }
}

// ---------------------------------------------------------------------------
// the cascade
// ---------------------------------------------------------------------------

/// Whether the distinct non-zero roots of `f` (reducible allowed) satisfy a
/// non-trivial multiplicative relation. Cascade, cheapest first:
///
/// 0. no / one distinct non-zero root — trivial exact answers;
/// 1. unit root product — squaring it is a relation;
/// 2. all roots rational — exact prime-exponent kernel;
/// 3. degenerate — a root-quotient relation certifies;
/// 4. irreducible of odd prime degree — independence filter;
/// 5. irreducible quadratic / quartic — exact case analyses; products of
///    linear factors with one prime-degree factor or two quadratics reduce
///    exactly to rational dependence plus a norm-one quotient test;
/// 6. bounded LLL search with norm-gap certification, else `Unknown`.
pub fn multiplicative_dependence(
    f: &IntPolynomial,
    params: &SearchParameters,
) -> Result<DependenceVerdict> {
    params.validate()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() < 1 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    let reduced = distinct_nonzero_part(f)?;
    let m = reduced.degree();
    // Step 0: zero or one distinct non-zero root.
    if m == 0 {
        return Ok(independent(Reason::RationalExponentMatrix));
    }
    if m == 1 {
        let root = BigRational::new(-reduced.coeff(0), reduced.coeff(1));
        return Ok(if root.is_one() {
            dependent(vec_from_i64(&[1]), Certificate::ClosedForm)
        } else if (-&root).is_one() {
            dependent(vec_from_i64(&[2]), Certificate::ClosedForm)
        } else {
            independent(Reason::SingleRootOfUnity)
        });
    }
    // Step 1: the product of the distinct non-zero roots is ±1.
    let nval = root_product(&reduced);
    if nval.abs().is_one() {
        let rel = if nval.is_one() {
            vec![BigInt::one(); m]
        } else {
            vec![BigInt::from(2); m]
        };
        return Ok(dependent(rel, Certificate::ClosedForm));
    }
    // Step 2: all roots rational.
    let rr = reduced.rational_roots();
    if rr.len() == m {
        let mut values: Vec<BigRational> = rr.into_iter().map(|(q, _)| q).collect();
        values.sort();
        return rational_dependence(&values);
    }
    // Step 3: degeneracy (some quotient is a root of unity).
    if !definitely_not_degenerate_mod_p(&reduced) {
        if let Some(w) = degenerate_ratio_order(&reduced) {
            return degenerate_dependent(&reduced, w, params);
        }
    }
    // Steps 4 and 5: factor structure.
    let fac = factorize::factor(&reduced);
    debug_assert!(fac.factors.iter().all(|(_, e)| *e == 1));
    if fac.factors.len() == 1 {
        let g = &fac.factors[0].0;
        match g.degree() {
            2 => return Ok(quadratic_classify_core(g)),
            4 => return quartic_classify_core(g, params, true),
            n if is_odd_prime(n) && prime_degree_conditions(g) => {
                return Ok(independent(Reason::PrimeDegreeLemma));
            }
            _ => {}
        }
    } else if let Some(v) = composite_shape_decision(&reduced, &fac, params)? {
        return Ok(v);
    }
    // Step 6: bounded lattice search.
    lattice_search_verdict(&reduced, params)
}

/// Exact decisions for square-free non-degenerate products of linear factors
/// with either one irreducible factor of prime degree or two irreducible
/// quadratics. Galois conjugation forces equal exponents across each
/// prime-degree orbit (any quotient relation would contradict
/// non-degeneracy), collapsing the question to rational dependence over the
/// rational roots and the factor root-products — plus, for two quadratics
/// over the same field, dependence of the two norm-one root quotients.
fn composite_shape_decision(
    reduced: &IntPolynomial,
    fac: &Factorization,
    params: &SearchParameters,
) -> Result<Option<DependenceVerdict>> {
    let m = reduced.degree();
    let mut rats: Vec<BigRational> = Vec::new();
    let mut nonlinear: Vec<&IntPolynomial> = Vec::new();
    for (g, _) in &fac.factors {
        if g.degree() == 1 {
            rats.push(BigRational::new(-g.coeff(0), g.coeff(1)));
        } else {
            nonlinear.push(g);
        }
    }
    match nonlinear.len() {
        1 => {
            let g = nonlinear[0];
            if !is_prime_u64(g.degree() as u64) {
                return Ok(None);
            }
            let mut values = rats.clone();
            values.push(root_product(g));
            match rational_dependence(&values)? {
                DependenceVerdict::Dependent { relation, .. } => {
                    let (_, rat_idx) = locate_rational_roots(reduced, &rats, params)?;
                    // Conjugates share the orbit exponent; rational roots
                    // keep their own entries.
                    let orbit = relation[rats.len()].clone();
                    let mut full = vec![orbit; m];
                    for (pos, entry) in rat_idx.iter().zip(&relation) {
                        full[*pos] = entry.clone();
                    }
                    normalize_sign(&mut full);
                    Ok(Some(dependent(full, Certificate::ClosedForm)))
                }
                DependenceVerdict::Independent { .. } => {
                    Ok(Some(independent(Reason::RationalExponentMatrix)))
                }
                DependenceVerdict::Unknown { .. } => {
                    unreachable!("rational dependence is exact")
                }
            }
        }
        2 if nonlinear[0].degree() == 2 && nonlinear[1].degree() == 2 => {
            let g = nonlinear[0];
            let h = nonlinear[1];
            let mut values = rats.clone();
            values.push(root_product(g));
            values.push(root_product(h));
            if let DependenceVerdict::Dependent { relation, .. } = rational_dependence(&values)? {
                let (_, rat_idx) = locate_rational_roots(reduced, &rats, params)?;
                let (_, g_pair, h_pair) = locate_two_quadratics(reduced, g, h, params)?;
                let mut full = vec![BigInt::zero(); m];
                for (pos, entry) in rat_idx.iter().zip(&relation) {
                    full[*pos] = entry.clone();
                }
                for &pos in &g_pair {
                    full[pos] = relation[rats.len()].clone();
                }
                for &pos in &h_pair {
                    full[pos] = relation[rats.len() + 1].clone();
                }
                normalize_sign(&mut full);
                return Ok(Some(dependent(full, Certificate::ClosedForm)));
            }
            // Same quadratic field: the root quotients u = α/ᾱ and v = β/β̄
            // have norm one, and any surviving relation restricts to a
            // relation between them.
            let disc_g = &g.coeff(1) * &g.coeff(1) - BigInt::from(4) * &g.coeff(0) * &g.coeff(2);
            let disc_h = &h.coeff(1) * &h.coeff(1) - BigInt::from(4) * &h.coeff(0) * &h.coeff(2);
            let (field_g, _) = QuadField::from_discriminant(&disc_g)?;
            let (field_h, _) = QuadField::from_discriminant(&disc_h)?;
            if field_g.d() != field_h.d() {
                return Ok(Some(independent(Reason::RationalExponentMatrix)));
            }
            let (field, u) = qfield::ratio_of_roots(g)?;
            let (_, v) = qfield::ratio_of_roots(h)?;
            match qfield::norm_one_dependence(&field, &u, &v)? {
                PairRelation::Dependent(p, q) => {
                    let (profile, g_pair, h_pair) = locate_two_quadratics(reduced, g, h, params)?;
                    for flip in [1i64, -1] {
                        let mut k = vec![BigInt::zero(); m];
                        k[g_pair[0]] = BigInt::from(p);
                        k[g_pair[1]] = BigInt::from(-p);
                        k[h_pair[0]] = BigInt::from(flip * q);
                        k[h_pair[1]] = BigInt::from(-flip * q);
                        if certify_relation(&profile, reduced, &k, params)? {
                            normalize_sign(&mut k);
                            return Ok(Some(dependent(k, Certificate::NormGapCertified)));
                        }
                    }
                    unreachable!("a norm-one quotient relation must certify in one orientation")
                }
                PairRelation::Independent => {
                    Ok(Some(independent(Reason::RationalExponentMatrix)))
                }
            }
        }
        _ => Ok(None),
    }
}

/// Interval data for the multiplicative embedding: `log|αᵢ|` and `arg αᵢ`
/// rows. Real roots get an exact argument (0 or π) because the principal
/// branch cut makes `arg` unusable on boxes touching the negative real
/// axis; `None` when the current precision cannot separate a non-real root
/// from that axis or any root from zero.
fn embedding_rows(profile: &RootProfile) -> Option<(Vec<RInt>, Vec<RInt>)> {
    let wp = profile.precision;
    let mut logs = Vec::with_capacity(profile.roots.len());
    let mut args = Vec::with_capacity(profile.roots.len());
    for r in &profile.roots {
        let ab = r.abs_interval(wp);
        if !ab.strictly_positive() {
            return None;
        }
        logs.push(ab.ln(wp));
        let arg = if r.is_real() {
            if r.to_cint().re.strictly_negative() {
                pi(wp)
            } else {
                RInt::zero()
            }
        } else {
            r.to_cint().arg(wp)?
        };
        args.push(arg);
    }
    Some((logs, args))
}

/// Step 6: LLL candidates on the log/argument embedding, every survivor
/// certified; `Unknown` with the searched bound if nothing certifies.
fn lattice_search_verdict(
    reduced: &IntPolynomial,
    params: &SearchParameters,
) -> Result<DependenceVerdict> {
    let bound = BigInt::from(params.exponent_bound);
    let mut profile = root_profile(reduced, params.precision_start)?;
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    for round in 0.. {
        if let Some((logs, args)) = embedding_rows(&profile) {
            let wp = profile.precision;
            let tau = two_pi(wp);
            let scale_bits = wp.saturating_sub(32).max(16);
            for (mut k, _) in
                simultaneous_candidates(&logs, &args, &tau, scale_bits, 8, &params.lll_delta)
            {
                if k.iter().any(|x| x.abs() > bound) {
                    continue;
                }
                normalize_sign(&mut k);
                if !seen.insert(k.clone()) {
                    continue;
                }
                if certify_relation(&profile, reduced, &k, params)? {
                    return Ok(dependent(k, Certificate::NormGapCertified));
                }
            }
        }
        if round == 2 {
            break;
        }
        let next = profile.precision.saturating_mul(2);
        if next > params.max_precision {
            break;
        }
        profile = profile.refine(reduced, next)?;
    }
    Ok(DependenceVerdict::Unknown {
        searched_bound: params.exponent_bound,
    })
}

// ---------------------------------------------------------------------------
// rational group structure
// ---------------------------------------------------------------------------

fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        let s = if a < 0 { -1 } else { 1 };
        return (a.abs(), s, 0);
    }
    let (g, x, y) = extended_gcd(b, a.rem_euclid(b));
    (g, y, x - (a.div_euclid(b)) * y)
}

/// Exact structure of the subgroup of `ℚ*` generated by two non-zero
/// rationals whose absolute values share a single radical direction (which
/// is all the callers can produce: the rational points of a conjugate group
/// are cyclic up to sign).
fn two_generator_structure(a: &BigRational, b: &BigRational) -> RationalGroupStructure {
    assert!(!a.is_zero() && !b.is_zero());
    let (neg_a, map_a) = rational_exponents(a);
    let (neg_b, map_b) = rational_exponents(b);
    if map_a.is_empty() && map_b.is_empty() {
        return if neg_a || neg_b {
            RationalGroupStructure::PlusMinusOne
        } else {
            RationalGroupStructure::Trivial
        };
    }
    let mut primes: Vec<BigInt> = Vec::new();
    for (p, _) in map_a.iter().chain(map_b.iter()) {
        if !primes.contains(p) {
            primes.push(p.clone());
        }
    }
    primes.sort();
    let expand = |map: &[(BigInt, i64)]| -> Vec<i64> {
        primes
            .iter()
            .map(|p| map.iter().find(|(q, _)| q == p).map(|(_, e)| *e).unwrap_or(0))
            .collect()
    };
    let xa = expand(&map_a);
    let xb = expand(&map_b);
    // The two exponent vectors must be parallel; extract the primitive
    // direction w and the multipliers sa, sb.
    let base = if map_a.is_empty() { &xb } else { &xa };
    let g = base.iter().fold(0i64, |acc, &e| acc.gcd(&e));
    let mut w: Vec<i64> = base.iter().map(|&e| e / g).collect();
    let mut h = BigRational::one();
    for (p, e) in primes.iter().zip(&w) {
        h *= rational_pow(&BigRational::from(p.clone()), *e);
    }
    if h < BigRational::one() {
        for e in w.iter_mut() {
            *e = -*e;
        }
        h = h.recip();
    }
    let multiplier = |x: &[i64]| -> i64 {
        let i = w.iter().position(|&e| e != 0).expect("direction is non-zero");
        let s = x[i] / w[i];
        assert!(
            x.iter().zip(&w).all(|(&xi, &wi)| xi == s * wi),
            "rational subgroup is not cyclic up to sign"
        );
        s
    };
    let sa = if map_a.is_empty() { 0 } else { multiplier(&xa) };
    let sb = if map_b.is_empty() { 0 } else { multiplier(&xb) };
    let (s, x0, y0) = extended_gcd(sa, sb);
    debug_assert!(s > 0);
    // Kernel of the magnitude map is generated by (sb/s, −sa/s); −1 lies in
    // the group iff the sign character is −1 there.
    let k0 = (sb / s, -(sa / s));
    let odd = |v: i64| v.rem_euclid(2) == 1;
    let minus_one = (neg_a && odd(k0.0)) ^ (neg_b && odd(k0.1));
    let gmag = rational_pow(&h, s);
    if minus_one {
        RationalGroupStructure::CyclicWithMinusOne(gmag)
    } else {
        let negative = (neg_a && odd(x0)) ^ (neg_b && odd(y0));
        RationalGroupStructure::CyclicNoMinusOne(if negative { -gmag } else { gmag })
    }
}

/// Minimal positive rational `g0 > 1` with `|q| = g0^{±G}`, and that `G`.
fn primitive_root_power(q: &BigRational) -> (BigRational, u64) {
    let (_, map) = rational_exponents(q);
    assert!(!map.is_empty(), "primitive root of a unit magnitude");
    let g = map.iter().fold(0i64, |acc, (_, e)| acc.gcd(e));
    let mut g0 = BigRational::one();
    for (p, e) in &map {
        g0 *= rational_pow(&BigRational::from(p.clone()), e / g);
    }
    if g0 < BigRational::one() {
        g0 = g0.recip();
    }
    (g0, g as u64)
}

/// One-sided bounded search for `value ∈ Γ`: LLL candidates on the
/// embedding rows extended by a slot for the target, certified exactly.
/// `false` means "not found within the bound", never "absent".
fn search_rational_member(
    profile: &RootProfile,
    f: &IntPolynomial,
    value: &BigRational,
    params: &SearchParameters,
) -> Result<bool> {
    let m = profile.roots.len();
    let bound = BigInt::from(params.exponent_bound);
    let minus_one = *value == -BigRational::one();
    let mut profile = profile.clone();
    for round in 0.. {
        if let Some((mut logs, mut args)) = embedding_rows(&profile) {
            let wp = profile.precision;
            logs.push(RInt::from_rational(&value.abs(), wp).ln(wp));
            args.push(if value.is_negative() {
                pi(wp)
            } else {
                RInt::from_i64(0)
            });
            let tau = two_pi(wp);
            let scale_bits = wp.saturating_sub(32).max(16);
            for (k, _) in
                simultaneous_candidates(&logs, &args, &tau, scale_bits, 8, &params.lll_delta)
            {
                if k.iter().any(|x| x.abs() > bound) {
                    continue;
                }
                let e = &k[m];
                let accept = if minus_one { e.is_odd() } else { e.abs().is_one() };
                if !accept {
                    continue;
                }
                let target = if minus_one {
                    -BigRational::one()
                } else {
                    rational_pow(value, -e.to_i64().expect("slot exponent bounded"))
                };
                if certify_scaled(&profile, f, &k[..m], &target, params)? {
                    return Ok(true);
                }
            }
        }
        if round == 2 {
            break;
        }
        let next = profile.precision.saturating_mul(2);
        if next > params.max_precision {
            break;
        }
        profile = profile.refine(f, next)?;
    }
    Ok(false)
}

/// Structure of `Γ(α) ∩ ℚ*` for a root `α` of the irreducible `f`.
/// Quadratics are decided exactly through the quotient field; in higher
/// degree the conclusive paths are cyclotomic inputs, `N = −1`, certified
/// independence (the group is then exactly `⟨N⟩`), and a certified minimal
/// generator together with a certified `−1`; everything else is an honest
/// `Undetermined`.
pub fn gamma_structure(
    f: &IntPolynomial,
    params: &SearchParameters,
) -> Result<RationalGroupStructure> {
    params.validate()?;
    let n = f.degree();
    if n < 2 {
        return Err(Error::InvalidInput("degree must be at least 2".into()));
    }
    if !factorize::is_irreducible(f) {
        return Err(Error::InvalidInput("input must be irreducible".into()));
    }
    let nval = root_product(f);
    let structure = if n == 2 {
        gamma_quadratic(f, &nval)?
    } else {
        gamma_general(f, &nval, params)?
    };
    if let RationalGroupStructure::CyclicNoMinusOne(g)
    | RationalGroupStructure::CyclicWithMinusOne(g) = &structure
    {
        let mag = g.abs();
        assert!(mag > BigRational::one(), "cyclic generator must exceed 1");
        let target = nval.abs();
        let mut acc = mag.clone();
        let mut hit = false;
        for _ in 0..64 {
            if acc == target || acc == target.clone().recip() {
                hit = true;
                break;
            }
            if acc > target && acc > target.clone().recip() {
                break;
            }
            acc *= &mag;
        }
        assert!(hit, "generator magnitude must reach |N| by an integer power");
    }
    Ok(structure)
}

/// Exact quadratic case: with `u = α/ᾱ`, the rational subgroup is
/// `⟨N, α^w⟩` when `u` has finite order `w`, and `⟨N⟩` otherwise.
fn gamma_quadratic(f: &IntPolynomial, nval: &BigRational) -> Result<RationalGroupStructure> {
    let (_, u) = qfield::ratio_of_roots(f)?;
    let a0 = f.coeff(0);
    let a1 = f.coeff(1);
    let a2 = f.coeff(2);
    let disc = &a1 * &a1 - BigInt::from(4) * &a0 * &a2;
    let (field, scale) = QuadField::from_discriminant(&disc)?;
    match field.unity_order(&u) {
        Some(w) => {
            let two_a2 = BigInt::from(2) * &a2;
            let alpha = field.elem(
                BigRational::new(-a1, two_a2.clone()),
                BigRational::new(scale, two_a2),
            );
            let aw = field.pow(&alpha, w as i64);
            assert!(
                aw.is_rational(),
                "a torsion quotient makes α^w conjugation-invariant"
            );
            Ok(two_generator_structure(nval, &aw.x))
        }
        None => Ok(two_generator_structure(nval, &BigRational::one())),
    }
}

fn gamma_general(
    f: &IntPolynomial,
    nval: &BigRational,
    params: &SearchParameters,
) -> Result<RationalGroupStructure> {
    let n = f.degree();
    // All roots of unity ⟺ f is (up to sign) a cyclotomic polynomial.
    let prim = f.primitive_part();
    let monic = if prim.leading().is_negative() {
        prim.neg()
    } else {
        prim
    };
    for m in totient_preimages(n as u64) {
        if monic == cyclotomic(m) {
            return Ok(if m % 2 == 0 {
                RationalGroupStructure::PlusMinusOne
            } else {
                RationalGroupStructure::Trivial
            });
        }
    }
    if (-nval).is_one() {
        return Ok(RationalGroupStructure::PlusMinusOne);
    }
    let md = multiplicative_dependence(f, params)?;
    if md.is_independent() {
        // No relations at all: every rational in the group is forced into
        // ⟨N⟩ (any other member would square into a relation).
        return Ok(two_generator_structure(nval, &BigRational::one()));
    }
    let profile = root_profile(f, params.precision_start)?;
    let minus_one_found =
        search_rational_member(&profile, f, &(-BigRational::one()), params)?;
    if nval.abs().is_one() {
        // N = 1 here (N = −1 was handled above).
        return Ok(if minus_one_found {
            RationalGroupStructure::PlusMinusOne
        } else {
            RationalGroupStructure::Undetermined {
                g0: BigRational::one(),
                searched_bound: params.exponent_bound,
            }
        });
    }
    let (g0, big_g) = primitive_root_power(&nval.abs());
    let member_at_one = big_g == 1
        || search_rational_member(&profile, f, &g0, params)?
        || search_rational_member(&profile, f, &(-g0.clone()), params)?;
    if member_at_one && minus_one_found {
        // g0 itself is in the group (the exponent 1 is minimal), and so is
        // −1: the structure is settled.
        return Ok(RationalGroupStructure::CyclicWithMinusOne(g0));
    }
    Ok(RationalGroupStructure::Undetermined {
        g0,
        searched_bound: params.exponent_bound,
    })
}

/// Whether the group generated by the conjugates meets the positive
/// integers beyond 1: true iff `N(α)` or `1/N(α)` is an integer `≠ ±1`.
pub fn norm_integer_filter(f: &IntPolynomial) -> Result<bool> {
    if f.degree() < 1 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    if !factorize::is_irreducible(f) {
        return Err(Error::InvalidInput("input must be irreducible".into()));
    }
    let q = root_product(f);
    let numer_unit = q.numer().abs().is_one();
    let denom_unit = q.denom().abs().is_one();
    Ok((denom_unit && !numer_unit) || (numer_unit && !denom_unit))
}

// ---------------------------------------------------------------------------
// linear dependence
// ---------------------------------------------------------------------------

/// Whether the distinct roots of `f` satisfy a non-trivial integer linear
/// relation `Σ kᵢzᵢ = 0`. A zero root carries a relation on its own; the
/// returned vector then covers all distinct roots with the zero root as the
/// LAST coordinate. Otherwise the vector is indexed by the distinct
/// (non-zero) roots in profile order. Certified independence is out of
/// scope: the verdict is `Dependent` or `Unknown`, never `Independent`.
pub fn linear_dependence(
    f: &IntPolynomial,
    params: &SearchParameters,
) -> Result<DependenceVerdict> {
    params.validate()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() < 2 {
        return Err(Error::InvalidInput("degree must be at least 2".into()));
    }
    if f.constant_term().is_zero() {
        // The zero root alone is a relation carrier: 1·0 = 0.
        let reduced = distinct_nonzero_part(f)?;
        let m = reduced.degree();
        let mut rel = vec![BigInt::zero(); m + 1];
        rel[m] = BigInt::one();
        return Ok(dependent(rel, Certificate::ClosedForm));
    }
    let reduced = f.squarefree_part();
    let m = reduced.degree();
    if m < 2 {
        return Ok(DependenceVerdict::Unknown {
            searched_bound: params.exponent_bound,
        });
    }
    if reduced.coeff(m - 1).is_zero() {
        // The distinct roots sum to zero.
        return Ok(dependent(vec![BigInt::one(); m], Certificate::ClosedForm));
    }
    let bound = BigInt::from(params.exponent_bound);
    let mut profile = root_profile(&reduced, params.precision_start)?;
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    for round in 0.. {
        let res: Vec<RInt> = profile.roots.iter().map(|r| r.to_cint().re).collect();
        let ims: Vec<RInt> = profile.roots.iter().map(|r| r.to_cint().im).collect();
        let scale_bits = profile.precision.saturating_sub(32).max(16);
        for mut k in relation_candidates_2d(&res, &ims, scale_bits, 8, &params.lll_delta) {
            if k.iter().any(|x| x.abs() > bound) {
                continue;
            }
            normalize_sign(&mut k);
            if !seen.insert(k.clone()) {
                continue;
            }
            if certify_linear(&profile, &reduced, &k, params)? {
                return Ok(dependent(k, Certificate::NormGapCertified));
            }
        }
        if round == 2 {
            break;
        }
        let next = profile.precision.saturating_mul(2);
        if next > params.max_precision {
            break;
        }
        profile = profile.refine(&reduced, next)?;
    }
    Ok(DependenceVerdict::Unknown {
        searched_bound: params.exponent_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs)
    }

    fn params_for(f: &IntPolynomial) -> SearchParameters {
        SearchParameters::for_polynomial(f)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn assert_relation(v: &DependenceVerdict, expected: &[i64]) {
        match v {
            DependenceVerdict::Dependent { relation, .. } => {
                assert_eq!(relation, &vec_from_i64(expected));
            }
            other => panic!("expected a dependent verdict, got {other:?}"),
        }
    }

    #[test]
    fn screen_primes_are_prime() {
        for &p in &SCREEN_PRIMES {
            assert!(is_prime_u64(p));
        }
    }

    #[test]
    fn ratio_polynomial_matches_known_cases() {
        // X − 2: single ratio 2/2 = 1.
        assert_eq!(ratio_polynomial(&poly(&[-2, 1])).unwrap(), poly(&[-2, 2]));
        // X² + 1: ratios of ±i are {1, 1, −1, −1}.
        assert_eq!(
            ratio_polynomial(&poly(&[1, 0, 1])).unwrap(),
            poly(&[1, 0, -2, 0, 1])
        );
        // X² − 3X + 2 = (X−1)(X−2): ratios {1, 1, 2, 1/2}; expansion of the
        // resultant gives 4x⁴ − 18x³ + 28x² − 18x + 4.
        assert_eq!(
            ratio_polynomial(&poly(&[2, -3, 1])).unwrap(),
            poly(&[4, -18, 28, -18, 4])
        );
    }

    #[test]
    fn ratio_polynomial_rejects_bad_inputs() {
        assert!(ratio_polynomial(&poly(&[0, 1, 1])).is_err()); // zero root
        assert!(ratio_polynomial(&poly(&[1, 2, 1])).is_err()); // (X+1)²
        assert!(ratio_polynomial(&poly(&[7])).is_err()); // constant
    }

    #[test]
    fn degeneracy_matches_examples() {
        assert!(is_degenerate(&poly(&[2, 0, 1])).unwrap()); // X²+2, quotient −1
        assert!(is_degenerate(&poly(&[1, 1, 1])).unwrap()); // cube roots of unity
        assert!(!is_degenerate(&poly(&[-1, -1, 1])).unwrap()); // X²−X−1
        assert!(is_degenerate(&poly(&[-2, 0, 0, 0, 1])).unwrap()); // X⁴−2
        assert!(is_degenerate(&poly(&[-2, 0, 0, 1])).unwrap()); // X³−2
        assert!(is_degenerate(&poly(&[-2, 0, 1])).unwrap()); // X²−2: √2/−√2 = −1
        assert!(!is_degenerate(&poly(&[2, -3, 1]).mul(&poly(&[-4, 1]))).unwrap()); // roots 1,2,4
        assert!(is_degenerate(&poly(&[0, 2, 0, 2])).unwrap()); // 2X(X²+1): ±i
        assert!(is_degenerate(&poly(&[9, 0, 1])).is_ok());
        assert!(is_degenerate(&poly(&[5, 1])).is_err()); // degree 1
    }

    #[test]
    fn degeneracy_screen_agrees_with_exact_path() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let mut checked = 0;
        while checked < 120 {
            let deg = rng.gen_range(2..=4usize);
            let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-6..=6)).collect();
            if coeffs[deg] == 0 {
                coeffs[deg] = 1;
            }
            if coeffs[0] == 0 {
                coeffs[0] = 1;
            }
            let f = poly(&coeffs);
            if !f.is_squarefree() {
                continue;
            }
            let exact = degenerate_ratio_order(&f).is_some();
            if definitely_not_degenerate_mod_p(&f) {
                assert!(!exact, "screen claimed non-degenerate but exact path disagrees: {f}");
            }
            assert_eq!(is_degenerate(&f).unwrap(), exact);
            checked += 1;
        }
    }

    #[test]
    fn rational_dependence_examples() {
        let v = rational_dependence(&[rat(2, 1), rat(4, 1)]).unwrap();
        assert_relation(&v, &[2, -1]);
        assert!(matches!(
            rational_dependence(&[rat(2, 1), rat(3, 1)]).unwrap(),
            DependenceVerdict::Independent {
                reason: Reason::RationalExponentMatrix
            }
        ));
        let v = rational_dependence(&[rat(-2, 1), rat(4, 1)]).unwrap();
        assert_relation(&v, &[2, -1]);
        let v = rational_dependence(&[rat(-1, 1)]).unwrap();
        assert_relation(&v, &[2]);
        let v = rational_dependence(&[rat(1, 1)]).unwrap();
        assert_relation(&v, &[1]);
        let v = rational_dependence(&[rat(2, 3), rat(9, 4)]).unwrap();
        assert_relation(&v, &[2, 1]);
        assert!(rational_dependence(&[]).is_err());
        assert!(rational_dependence(&[rat(0, 1)]).is_err());
    }

    #[test]
    fn norm_sum_constraint_examples() {
        assert_eq!(
            norm_sum_constraint(&poly(&[3, 1, 0, 1])).unwrap(),
            NormSumConstraint::SumZero
        );
        assert_eq!(
            norm_sum_constraint(&poly(&[-1, -1, 1])).unwrap(),
            NormSumConstraint::NoConstraint
        );
        assert_eq!(
            norm_sum_constraint(&poly(&[1, 1, 0, 0, 1])).unwrap(),
            NormSumConstraint::NoConstraint
        );
        assert!(norm_sum_constraint(&poly(&[2, -3, 1])).is_err()); // reducible
    }

    #[test]
    fn prime_degree_filter_examples() {
        assert!(prime_degree_independent(&poly(&[3, 1, 0, 1])).unwrap()); // X³+X+3
        assert!(!prime_degree_independent(&poly(&[-2, 0, 0, 1])).unwrap()); // X³−2
        assert!(!prime_degree_independent(&poly(&[1, 1, 0, 1])).unwrap()); // X³+X+1
        assert!(prime_degree_independent(&poly(&[3, 1, 0, 0, 0, 1])).unwrap()); // X⁵+X+3
        assert!(prime_degree_independent(&poly(&[1, 1, 0, 0, 1])).is_err()); // degree 4
        assert!(prime_degree_independent(&poly(&[0, 0, 0, 1])).is_err()); // reducible
    }

    #[test]
    fn quadratic_classify_examples() {
        let v = quadratic_classify(&poly(&[-1, -1, 1])).unwrap();
        assert_relation(&v, &[2, 2]);
        assert!(matches!(
            &v,
            DependenceVerdict::Dependent {
                certificate: Certificate::ClosedForm,
                ..
            }
        ));
        assert_relation(&quadratic_classify(&poly(&[2, 0, 1])).unwrap(), &[2, -2]);
        assert!(matches!(
            quadratic_classify(&poly(&[2, 1, 1])).unwrap(),
            DependenceVerdict::Independent {
                reason: Reason::QuadraticCaseAnalysis
            }
        ));
        assert_relation(&quadratic_classify(&poly(&[3, 3, 1])).unwrap(), &[6, -6]);
        assert_relation(&quadratic_classify(&poly(&[1, 1, 1])).unwrap(), &[3, -3]);
        assert_relation(&quadratic_classify(&poly(&[2, -2, 1])).unwrap(), &[4, -4]);
        assert!(quadratic_classify(&poly(&[2, -3, 1])).is_err()); // reducible
        assert!(quadratic_classify(&poly(&[1, 1])).is_err()); // degree 1
    }

    #[test]
    fn quadratic_degenerate_orders_certify_exactly() {
        // X² + 3X + 3 has quotient of order exactly 6: (6,−6) certifies,
        // (3,−3) and (2,−2) do not.
        let f = poly(&[3, 3, 1]);
        let params = params_for(&f);
        let profile = root_profile(&f, params.precision_start).unwrap();
        let ok = |k: &[i64]| certify_relation(&profile, &f, &vec_from_i64(k), &params).unwrap();
        assert!(ok(&[6, -6]));
        assert!(!ok(&[3, -3]));
        assert!(!ok(&[2, -2]));
        assert!(!ok(&[1, 1]));
        assert!(ok(&[12, -12]));
    }

    #[test]
    fn certify_relation_examples() {
        let f = poly(&[-1, -1, 1]); // X²−X−1
        let params = params_for(&f);
        let profile = root_profile(&f, params.precision_start).unwrap();
        assert!(certify_relation(&profile, &f, &vec_from_i64(&[2, 2]), &params).unwrap());
        assert!(!certify_relation(&profile, &f, &vec_from_i64(&[1, 1]), &params).unwrap());

        let f = poly(&[1, 0, 1]); // X²+1
        let profile = root_profile(&f, 128).unwrap();
        assert!(certify_relation(&profile, &f, &vec_from_i64(&[1, 1]), &params).unwrap());

        let f = poly(&[-2, 0, 0, 1]); // X³−2
        let profile = root_profile(&f, 128).unwrap();
        assert!(certify_relation(&profile, &f, &vec_from_i64(&[3, -3, 0]), &params).unwrap());
        assert!(!certify_relation(&profile, &f, &vec_from_i64(&[1, 1, 1]), &params).unwrap());
    }

    #[test]
    fn certify_scaled_examples() {
        let f = poly(&[-2, 0, 1]); // X²−2, product of roots −2
        let params = params_for(&f);
        let profile = root_profile(&f, params.precision_start).unwrap();
        assert!(certify_scaled(&profile, &f, &vec_from_i64(&[1, 1]), &rat(-2, 1), &params).unwrap());
        assert!(!certify_scaled(&profile, &f, &vec_from_i64(&[1, 1]), &rat(2, 1), &params).unwrap());
        let f = poly(&[-1, -1, 1]);
        let profile = root_profile(&f, params.precision_start).unwrap();
        assert!(certify_scaled(&profile, &f, &vec_from_i64(&[1, 1]), &rat(-1, 1), &params).unwrap());
        // All-zero exponents decide the target alone.
        assert!(certify_scaled(&profile, &f, &vec_from_i64(&[0, 0]), &rat(1, 1), &params).unwrap());
        assert!(!certify_scaled(&profile, &f, &vec_from_i64(&[0, 0]), &rat(2, 1), &params).unwrap());
    }

    #[test]
    fn quartic_classify_examples() {
        let params = params_for(&poly(&[1, 1, 0, 0, 1]));
        let v = quartic_classify(&poly(&[1, 1, 0, 0, 1]), &params).unwrap();
        assert_relation(&v, &[2, 2, 2, 2]); // X⁴+X+1: |a₀| = |a₄|
        let v = quartic_classify(&poly(&[-2, 0, 0, 0, 1]), &params).unwrap();
        assert!(v.is_dependent()); // X⁴−2 is degenerate
        assert!(quartic_classify(&poly(&[2, -3, 1]), &params).is_err());
        assert!(quartic_classify(&poly(&[4, 0, 5, 0, 1]), &params).is_err()); // (X²+1)(X²+4)
    }

    fn oracle_dependent(f: &IntPolynomial, params: &SearchParameters) -> bool {
        // Brute-force oracle: float screen over all |kᵢ| ≤ 12, certify hits.
        let profile = root_profile(f, 256).unwrap();
        let m = profile.roots.len();
        let logs: Vec<f64> = profile
            .roots
            .iter()
            .map(|r| r.abs_interval(256).ln(256).to_f64_mid())
            .collect();
        let args: Vec<f64> = profile
            .roots
            .iter()
            .map(|r| {
                let c = r.to_cint();
                c.im.to_f64_mid().atan2(c.re.to_f64_mid())
            })
            .collect();
        let tau = std::f64::consts::TAU;
        let mut seen = HashSet::new();
        let mut stack = vec![Vec::<i64>::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == m {
                if prefix.iter().all(|&k| k == 0) {
                    continue;
                }
                let log_sum: f64 = prefix.iter().zip(&logs).map(|(&k, l)| k as f64 * l).sum();
                let arg_sum: f64 = prefix.iter().zip(&args).map(|(&k, a)| k as f64 * a).sum();
                let wrapped = (arg_sum / tau - (arg_sum / tau).round()).abs();
                if log_sum.abs() < 1e-9 && wrapped < 1e-9 {
                    let mut k = vec_from_i64(&prefix);
                    normalize_sign(&mut k);
                    if seen.insert(k.clone())
                        && certify_relation(&profile, f, &k, params).unwrap()
                    {
                        return true;
                    }
                }
                continue;
            }
            for k in -12..=12i64 {
                let mut next = prefix.clone();
                next.push(k);
                stack.push(next);
            }
        }
        false
    }

    #[test]
    fn quartic_classify_agrees_with_exhaustive_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(97);
        let mut checked = 0;
        while checked < 12 {
            let mut coeffs: Vec<i64> = (0..=4).map(|_| rng.gen_range(-5..=5)).collect();
            if coeffs[4] == 0 {
                coeffs[4] = 1;
            }
            if coeffs[0] == 0 {
                coeffs[0] = 2;
            }
            let f = poly(&coeffs);
            if !factorize::is_irreducible(&f) {
                continue;
            }
            let params = params_for(&f);
            let got = quartic_classify(&f, &params).unwrap();
            assert!(!got.is_unknown(), "quartic classification must be exact");
            assert_eq!(
                got.is_dependent(),
                oracle_dependent(&f, &params),
                "disagreement on {f}"
            );
            checked += 1;
        }
        // A fixed interesting case: X⁴+X+2.
        let f = poly(&[2, 1, 0, 0, 1]);
        let params = params_for(&f);
        let got = quartic_classify(&f, &params).unwrap();
        assert_eq!(got.is_dependent(), oracle_dependent(&f, &params));
    }

    #[test]
    fn cascade_handles_rational_and_trivial_cases() {
        let params = params_for(&poly(&[8, -6, 1]));
        // (X−2)(X−4): 2²·4⁻¹ = 1.
        let v = multiplicative_dependence(&poly(&[8, -6, 1]), &params).unwrap();
        assert_relation(&v, &[2, -1]);
        // (X−2)(X−3): independent.
        assert!(matches!(
            multiplicative_dependence(&poly(&[6, -5, 1]), &params).unwrap(),
            DependenceVerdict::Independent {
                reason: Reason::RationalExponentMatrix
            }
        ));
        // X⁵+X+3: prime-degree filter.
        assert!(matches!(
            multiplicative_dependence(&poly(&[3, 1, 0, 0, 0, 1]), &params).unwrap(),
            DependenceVerdict::Independent {
                reason: Reason::PrimeDegreeLemma
            }
        ));
        // X: no non-zero roots at all.
        assert!(multiplicative_dependence(&poly(&[0, 1]), &params)
            .unwrap()
            .is_independent());
        // X−1, X+1, X−3.
        assert_relation(
            &multiplicative_dependence(&poly(&[-1, 1]), &params).unwrap(),
            &[1],
        );
        assert_relation(
            &multiplicative_dependence(&poly(&[1, 1]), &params).unwrap(),
            &[2],
        );
        assert!(matches!(
            multiplicative_dependence(&poly(&[-3, 1]), &params).unwrap(),
            DependenceVerdict::Independent {
                reason: Reason::SingleRootOfUnity
            }
        ));
        assert!(multiplicative_dependence(&poly(&[5]), &params).is_err());
        assert!(multiplicative_dependence(&IntPolynomial::new(vec![]), &params).is_err());
    }

    #[test]
    fn cascade_unit_product_and_degenerate_paths() {
        let params = params_for(&poly(&[1, 0, 0, 0, 1]));
        // (X²−3X+1)(X²−7X+1): product of all four roots is 1.
        let f = poly(&[1, -3, 1]).mul(&poly(&[1, -7, 1]));
        assert_relation(
            &multiplicative_dependence(&f, &params).unwrap(),
            &[1, 1, 1, 1],
        );
        // X³−X−1 is monic with f(0) = −1: product of roots is 1.
        assert_relation(
            &multiplicative_dependence(&poly(&[-1, -1, 0, 1]), &params).unwrap(),
            &[1, 1, 1],
        );
        // X³−2: degenerate; the certified relation is supported on a
        // quotient pair with exponent 3.
        let v = multiplicative_dependence(&poly(&[-2, 0, 0, 1]), &params).unwrap();
        match &v {
            DependenceVerdict::Dependent {
                relation,
                certificate: Certificate::NormGapCertified,
            } => {
                let nonzero: Vec<&BigInt> = relation.iter().filter(|k| !k.is_zero()).collect();
                assert_eq!(nonzero.len(), 2);
                assert_eq!(nonzero[0].abs(), BigInt::from(3));
                assert_eq!(*nonzero[0], -nonzero[1].clone());
            }
            other => panic!("expected a norm-gap dependent verdict, got {other:?}"),
        }
    }

    #[test]
    fn cascade_composite_shapes_decide_exactly() {
        let params = params_for(&poly(&[1, 0, 0, 0, 1]));
        // (X−2)(X²+X+3): rationally independent of N = 3.
        let f = poly(&[-2, 1]).mul(&poly(&[3, 1, 1]));
        assert!(multiplicative_dependence(&f, &params).unwrap().is_independent());
        // (X−2)(X²−8X+2): 2 · (4−√14)⁻¹ · (4+√14)⁻¹ = 1, profile order
        // (4−√14, 2, 4+√14).
        let f = poly(&[-2, 1]).mul(&poly(&[2, -8, 1]));
        assert_relation(&multiplicative_dependence(&f, &params).unwrap(), &[1, -1, 1]);
        // (X−3)(X²+X+5): nothing relates 3 and 5.
        let f = poly(&[-3, 1]).mul(&poly(&[5, 1, 1]));
        assert!(multiplicative_dependence(&f, &params).unwrap().is_independent());
        // (2X²+X+3)(X²+X+5): distinct quadratic fields, norms 3/2 and 5.
        let f = poly(&[3, 1, 2]).mul(&poly(&[5, 1, 1]));
        assert!(multiplicative_dependence(&f, &params).unwrap().is_independent());
        // (X²−6X+7)(X²−22X+49): same field ℚ(√2), norms 7 and 49 dependent.
        // Sorted roots interleave the two factors: 3−√2, 11−6√2, 3+√2,
        // 11+6√2.
        let f = poly(&[7, -6, 1]).mul(&poly(&[49, -22, 1]));
        let v = multiplicative_dependence(&f, &params).unwrap();
        assert_relation(&v, &[2, -1, 2, -1]);
        // (X²−6X+7)(X²−12X+28): norms 7 and 28 are rationally independent,
        // but β = 2α makes the quotients equal: certified via the norm-one
        // branch.
        let f = poly(&[7, -6, 1]).mul(&poly(&[28, -12, 1]));
        let v = multiplicative_dependence(&f, &params).unwrap();
        match &v {
            DependenceVerdict::Dependent {
                relation,
                certificate: Certificate::NormGapCertified,
            } => {
                assert!(relation.iter().all(|k| k.abs().is_one()));
                assert_eq!(relation.iter().sum::<BigInt>(), BigInt::zero());
            }
            other => panic!("expected a certified quotient relation, got {other:?}"),
        }
        // (X²−6X+7)(X²−10X+17): same field, quotients with disjoint split
        // valuations (7 vs 17): independent.
        let f = poly(&[7, -6, 1]).mul(&poly(&[17, -10, 1]));
        assert!(multiplicative_dependence(&f, &params).unwrap().is_independent());
    }

    #[test]
    fn lattice_step_certifies_planted_relations() {
        let params = params_for(&poly(&[1, 0, 0, 0, 1]));
        // (X²−3X+1)(X²−5X+1)·(X−2): reaches the general search only if no
        // earlier step fires… product of roots = 2, not all rational, not
        // degenerate, three factors so no composite shape: the golden pairs
        // both have unit product, so (1,1,0,1,1)-style relations exist.
        let f = poly(&[1, -3, 1]).mul(&poly(&[1, -5, 1])).mul(&poly(&[-2, 1]));
        let v = multiplicative_dependence(&f, &params).unwrap();
        match &v {
            DependenceVerdict::Dependent { relation, .. } => {
                let profile = root_profile(&distinct_nonzero_part(&f).unwrap(), 256).unwrap();
                assert!(certify_relation(&profile, &distinct_nonzero_part(&f).unwrap(), relation, &params).unwrap());
            }
            other => panic!("expected dependent, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_inputs_are_always_dependent() {
        let params = params_for(&poly(&[1, 0, 0, 0, 1]));
        for f in [
            poly(&[2, 0, 1]),
            poly(&[1, 1, 1]),
            poly(&[-2, 0, 0, 1]),
            poly(&[-2, 0, 0, 0, 1]),
            poly(&[4, 0, 0, 0, 1]),
            poly(&[1, 0, 1]).mul(&poly(&[-3, 1])),
        ] {
            if f.degree() >= 2 && is_degenerate(&f).unwrap() {
                let v = multiplicative_dependence(&f, &params).unwrap();
                assert!(v.is_dependent(), "degenerate {f} must be dependent");
            }
        }
    }

    #[test]
    fn dependent_relations_reverify_at_doubled_precision() {
        let mut params = params_for(&poly(&[1, 0, 0, 0, 1]));
        for f in [
            poly(&[8, -6, 1]),
            poly(&[-2, 0, 0, 1]),
            poly(&[2, 0, 1]),
            poly(&[7, -6, 1]).mul(&poly(&[28, -12, 1])),
            poly(&[1, -3, 1]).mul(&poly(&[1, -7, 1])),
        ] {
            let v = multiplicative_dependence(&f, &params).unwrap();
            let relation = v.relation().expect("all inputs here are dependent").to_vec();
            params.precision_start *= 2;
            let reduced = distinct_nonzero_part(&f).unwrap();
            let profile = root_profile(&reduced, params.precision_start).unwrap();
            assert!(
                certify_relation(&profile, &reduced, &relation, &params).unwrap(),
                "relation for {f} must re-verify at doubled precision"
            );
        }
    }

    #[test]
    fn two_generator_structure_cases() {
        use RationalGroupStructure as S;
        assert_eq!(
            two_generator_structure(&rat(-3, 1), &rat(1, 1)),
            S::CyclicNoMinusOne(rat(-3, 1))
        );
        assert_eq!(
            two_generator_structure(&rat(-2, 1), &rat(2, 1)),
            S::CyclicWithMinusOne(rat(2, 1))
        );
        assert_eq!(two_generator_structure(&rat(1, 1), &rat(-1, 1)), S::PlusMinusOne);
        assert_eq!(two_generator_structure(&rat(1, 1), &rat(1, 1)), S::Trivial);
        assert_eq!(
            two_generator_structure(&rat(4, 1), &rat(8, 1)),
            S::CyclicNoMinusOne(rat(2, 1))
        );
        assert_eq!(
            two_generator_structure(&rat(-4, 1), &rat(8, 1)),
            S::CyclicWithMinusOne(rat(2, 1))
        );
        assert_eq!(
            two_generator_structure(&rat(1, 2), &rat(1, 1)),
            S::CyclicNoMinusOne(rat(2, 1))
        );
    }

    #[test]
    fn gamma_structure_examples() {
        use RationalGroupStructure as S;
        let params = params_for(&poly(&[-1, -1, 1]));
        assert_eq!(
            gamma_structure(&poly(&[-1, -1, 1]), &params).unwrap(),
            S::PlusMinusOne
        );
        assert_eq!(
            gamma_structure(&poly(&[-2, 0, 1]), &params).unwrap(),
            S::CyclicWithMinusOne(rat(2, 1))
        );
        assert_eq!(
            gamma_structure(&poly(&[2, 0, 1]), &params).unwrap(),
            S::CyclicWithMinusOne(rat(2, 1))
        );
        // Cube roots of unity generate μ₃, which misses −1 entirely.
        assert_eq!(gamma_structure(&poly(&[1, 1, 1]), &params).unwrap(), S::Trivial);
        assert_eq!(
            gamma_structure(&poly(&[1, 0, 1]), &params).unwrap(),
            S::PlusMinusOne
        );
        assert_eq!(gamma_structure(&poly(&[1, -3, 1]), &params).unwrap(), S::Trivial);
        assert_eq!(
            gamma_structure(&poly(&[2, 1, 1]), &params).unwrap(),
            S::CyclicNoMinusOne(rat(2, 1))
        );
        assert_eq!(
            gamma_structure(&poly(&[3, 1, 0, 1]), &params).unwrap(),
            S::CyclicNoMinusOne(rat(-3, 1))
        );
        assert_eq!(
            gamma_structure(&poly(&[-2, 0, 0, 0, 1]), &params).unwrap(),
            S::CyclicWithMinusOne(rat(2, 1))
        );
        match gamma_structure(&poly(&[-2, 0, 0, 1]), &params).unwrap() {
            S::Undetermined { g0, .. } => assert_eq!(g0, rat(2, 1)),
            other => panic!("X³−2 leaves −1 undecided, got {other:?}"),
        }
        assert!(gamma_structure(&poly(&[2, -3, 1]), &params).is_err());
        assert!(gamma_structure(&poly(&[-2, 1]), &params).is_err());
    }

    #[test]
    fn norm_integer_filter_examples() {
        assert!(!norm_integer_filter(&poly(&[-1, -1, 1])).unwrap());
        assert!(norm_integer_filter(&poly(&[3, 1, 0, 1])).unwrap());
        assert!(!norm_integer_filter(&poly(&[1, -3, 1])).unwrap());
        assert!(norm_integer_filter(&poly(&[-1, 0, 2])).unwrap()); // N = −1/2
        assert!(norm_integer_filter(&poly(&[1, 1, 6])).unwrap()); // N = 1/6
        assert!(!norm_integer_filter(&poly(&[-3, 0, 2])).unwrap()); // N = −3/2
        assert!(norm_integer_filter(&poly(&[2, -3, 1])).is_err());
    }

    #[test]
    fn linear_dependence_examples() {
        let params = params_for(&poly(&[3, 0, 1]));
        assert_relation(&linear_dependence(&poly(&[3, 0, 1]), &params).unwrap(), &[1, 1]);
        assert_relation(
            &linear_dependence(&poly(&[1, -3, 0, 1]), &params).unwrap(),
            &[1, 1, 1],
        );
        assert!(linear_dependence(&poly(&[-1, -1, 1]), &params)
            .unwrap()
            .is_unknown());
        // X³−2X² = X²(X−2): the zero root carries the relation; it sits in
        // the last coordinate.
        assert_relation(
            &linear_dependence(&poly(&[0, 0, -2, 1]), &params).unwrap(),
            &[0, 1],
        );
        // (X−1)²(X+2) = X³ − 3X + 2: distinct roots −2, 1 satisfy
        // 1·(−2) + 2·(1) = 0.
        let v = linear_dependence(&poly(&[2, -3, 0, 1]), &params).unwrap();
        assert_relation(&v, &[1, 2]);
        assert!(matches!(
            v,
            DependenceVerdict::Dependent {
                certificate: Certificate::NormGapCertified,
                ..
            }
        ));
        // (X²+X+1)(X²−X+1) = X⁴+X²+1: roots sum to zero.
        assert_relation(
            &linear_dependence(&poly(&[1, 0, 1, 0, 1]), &params).unwrap(),
            &[1, 1, 1, 1],
        );
        assert!(linear_dependence(&poly(&[1, 1]), &params).is_err());
    }

    #[test]
    fn search_parameter_defaults_and_validation() {
        let p = SearchParameters::for_polynomial(&poly(&[-1, -1, 1]));
        assert_eq!(p.exponent_bound, 12);
        let p = SearchParameters::for_polynomial(&poly(&[15, 0, 0, 1]));
        assert_eq!(p.exponent_bound, 116); // ⌈8·ln(45)²⌉
        let mut bad = p.clone();
        bad.exponent_bound = 0;
        assert!(bad.validate().is_err());
        let mut bad = p.clone();
        bad.precision_start = bad.max_precision + 1;
        assert!(bad.validate().is_err());
        let mut bad = p.clone();
        bad.lll_delta = BigRational::one();
        assert!(bad.validate().is_err());
        assert!(p.validate().is_ok());
    }

    #[test]
    fn verdict_json_shapes() {
        let v = dependent(vec_from_i64(&[2, -1]), Certificate::ClosedForm);
        assert_eq!(
            v.to_json(),
            serde_json::json!({"verdict": "dependent", "relation": [2, -1], "certificate": "closed_form"})
        );
        let v = independent(Reason::QuadraticCaseAnalysis);
        assert_eq!(
            v.to_json(),
            serde_json::json!({"verdict": "independent", "reason": "quadratic_case_analysis"})
        );
        let v = DependenceVerdict::Unknown { searched_bound: 12 };
        assert_eq!(
            v.to_json(),
            serde_json::json!({"verdict": "unknown", "bound": 12})
        );
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(20))]
        #[test]
        fn cascade_invariants_hold_on_random_inputs(
            coeffs in proptest::collection::vec(-8i64..=8, 3..=5),
            lead in 1i64..=8,
            cst in proptest::sample::select(vec![-8i64, -5, -3, -2, -1, 1, 2, 3, 5, 8]),
        ) {
            let mut c = coeffs;
            let top = c.len() - 1;
            c[top] = lead;
            c[0] = cst;
            let f = poly(&c);
            let params = params_for(&f);
            let verdict = multiplicative_dependence(&f, &params).unwrap();
            // Determinism.
            proptest::prop_assert_eq!(&verdict, &multiplicative_dependence(&f, &params).unwrap());
            // Degenerate inputs always admit a relation.
            if is_degenerate(&f).unwrap() {
                proptest::prop_assert!(verdict.is_dependent());
            }
            // Dependent relations re-verify at doubled precision.
            if let DependenceVerdict::Dependent { relation, .. } = &verdict {
                let reduced = distinct_nonzero_part(&f).unwrap();
                let profile = root_profile(&reduced, 2 * params.precision_start).unwrap();
                proptest::prop_assert!(
                    certify_relation(&profile, &reduced, relation, &params).unwrap()
                );
            }
            // Linear dependence never claims independence.
            let lin = linear_dependence(&f, &params).unwrap();
            proptest::prop_assert!(!lin.is_independent());
            if let DependenceVerdict::Dependent { relation, .. } = &lin {
                proptest::prop_assert!(relation.iter().any(|k| !k.is_zero()));
            }
        }
    }

    #[test]
    fn cascade_verdicts_are_deterministic() {
        let params = params_for(&poly(&[1, 0, 0, 0, 1]));
        for coeffs in [
            vec![8, -6, 1],
            vec![-2, 0, 0, 1],
            vec![3, 1, 0, 1],
            vec![7, -6, 1],
            vec![2, 1, 0, 0, 1],
        ] {
            let f = poly(&coeffs);
            let a = multiplicative_dependence(&f, &params).unwrap();
            let b = multiplicative_dependence(&f, &params).unwrap();
            assert_eq!(a, b);
        }
    }
}
