//! Exact arithmetic in quadratic number fields ℚ(√d) and an exact decision
//! procedure for multiplicative dependence of two norm-one elements.
//!
//! The ratio u = α/ᾱ of the two roots of an irreducible integer quadratic has
//! norm 1, and a multiplicative relation among the four roots of a product of
//! two quadratics over the same field collapses, after applying the
//! non-trivial automorphism, to a relation u^p·v^q = 1 between the two root
//! ratios together with a relation between rational norms. This module
//! decides u^p·v^q = 1 exactly.
//!
//! The decision works through valuation vectors. For a norm-one element u and
//! a rational prime p, the valuations of u at the primes above p vanish when
//! p is inert or ramified and are opposite integers ±m_p when p splits, with
//! m_p = v_p(denominator of trace u). The signed value is read off through a
//! p-adic embedding √d ↦ r_p where r_p² ≡ d (mod p^k). Elements whose
//! valuations vanish everywhere are units: roots of unity in the imaginary
//! case, and ±(powers of a common generator) in the real case, where the
//! exponent ratio is recovered from interval logarithms and then verified by
//! exact field arithmetic, so no unit-group computation is ever trusted
//! numerically.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::interval::RInt;
use crate::intpoly::IntPolynomial;

/// The field ℚ(√d) for a squarefree integer d ∉ {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadField {
    d: BigInt,
}

/// An element x + y·√d of a quadratic field, in rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElem {
    pub x: BigRational,
    pub y: BigRational,
}

impl QuadElem {
    pub fn from_rational(q: BigRational) -> QuadElem {
        QuadElem {
            x: q,
            y: BigRational::zero(),
        }
    }

    pub fn one() -> QuadElem {
        QuadElem::from_rational(BigRational::one())
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.y.is_zero() && self.x.is_one()
    }

    pub fn is_minus_one(&self) -> bool {
        self.y.is_zero() && self.x == -BigRational::one()
    }
}

/// Outcome of the norm-one dependence decision: either a verified pair of
/// exponents with u^p·v^q = 1 and (p, q) ≠ (0, 0), or a proof of
/// independence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairRelation {
    Dependent(i64, i64),
    Independent,
}

impl QuadField {
    /// Field with the given squarefree d ∉ {0, 1}.
    pub fn new(d: BigInt) -> Result<QuadField> {
        if d.is_zero() || d.is_one() {
            return Err(Error::InvalidInput(format!("ℚ(√{d}) is not quadratic")));
        }
        if arith::factor_bigint(&d).iter().any(|(_, e)| *e > 1) {
            return Err(Error::InvalidInput(format!("{d} is not squarefree")));
        }
        Ok(QuadField { d })
    }

    /// Splits a non-square discriminant as disc = m²·d with d squarefree and
    /// returns (ℚ(√d), m).
    pub fn from_discriminant(disc: &BigInt) -> Result<(QuadField, BigInt)> {
        if disc.is_zero() {
            return Err(Error::InvalidInput("zero discriminant".into()));
        }
        let mut m = BigInt::one();
        let mut d = if disc.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for (p, e) in arith::factor_bigint(disc) {
            m *= p.pow(e / 2);
            if e % 2 == 1 {
                d *= p;
            }
        }
        if d.is_one() {
            return Err(Error::InvalidInput(format!(
                "discriminant {disc} is a perfect square"
            )));
        }
        Ok((QuadField { d }, m))
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_real(&self) -> bool {
        self.d.is_positive()
    }

    pub fn elem(&self, x: BigRational, y: BigRational) -> QuadElem {
        QuadElem { x, y }
    }

    pub fn add(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem {
            x: &a.x + &b.x,
            y: &a.y + &b.y,
        }
    }

    pub fn sub(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem {
            x: &a.x - &b.x,
            y: &a.y - &b.y,
        }
    }

    pub fn neg(&self, a: &QuadElem) -> QuadElem {
        QuadElem {
            x: -a.x.clone(),
            y: -a.y.clone(),
        }
    }

    pub fn mul(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        let d = BigRational::from_integer(self.d.clone());
        QuadElem {
            x: &a.x * &b.x + &d * &a.y * &b.y,
            y: &a.x * &b.y + &a.y * &b.x,
        }
    }

    pub fn conj(&self, a: &QuadElem) -> QuadElem {
        QuadElem {
            x: a.x.clone(),
            y: -a.y.clone(),
        }
    }

    /// Field norm x² − d·y² (a rational).
    pub fn norm(&self, a: &QuadElem) -> BigRational {
        let d = BigRational::from_integer(self.d.clone());
        &a.x * &a.x - d * &a.y * &a.y
    }

    /// Field trace 2x (a rational).
    pub fn trace(&self, a: &QuadElem) -> BigRational {
        &a.x + &a.x
    }

    pub fn inv(&self, a: &QuadElem) -> QuadElem {
        let n = self.norm(a);
        assert!(!n.is_zero(), "inverse of zero element");
        QuadElem {
            x: &a.x / &n,
            y: -&a.y / n,
        }
    }

    pub fn div(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &QuadElem, e: i64) -> QuadElem {
        if e < 0 {
            return self.pow(&self.inv(a), -(e as i128) as i64);
        }
        let mut base = a.clone();
        let mut exp = e as u64;
        let mut acc = QuadElem::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Enclosure of the image of `a` under the real embedding √d > 0.
    /// Real fields only.
    pub fn embed(&self, a: &QuadElem, prec: u32) -> RInt {
        assert!(self.is_real(), "real embedding of an imaginary field");
        let sqrt_d = RInt::from_bigint(&self.d).sqrt(prec);
        let x = RInt::from_rational(&a.x, prec);
        let y = RInt::from_rational(&a.y, prec);
        x.add(&y.mul(&sqrt_d, prec), prec)
    }

    /// Order of `a` as a root of unity, if it is one. Torsion in a quadratic
    /// field has order 1, 2, 3, 4 or 6.
    pub fn unity_order(&self, a: &QuadElem) -> Option<u32> {
        for k in [1u32, 2, 3, 4, 6] {
            if self.pow(a, k as i64).is_one() {
                return Some(k);
            }
        }
        None
    }
}

/// Field and ratio u = α/ᾱ of the two roots of an irreducible integer
/// quadratic a·X² + b·X + c, taking α as the root with the +√d branch:
/// u = ((b² − 2ac) − b·m·√d)/(2ac) where b² − 4ac = m²·d. The ratio has
/// norm 1 by construction.
pub fn ratio_of_roots(g: &IntPolynomial) -> Result<(QuadField, QuadElem)> {
    if g.degree() != 2 {
        return Err(Error::InvalidInput(format!(
            "root ratio requires a quadratic, got degree {}",
            g.degree()
        )));
    }
    let a = g.coeff(2);
    let b = g.coeff(1);
    let c = g.coeff(0);
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    let (field, m) = QuadField::from_discriminant(&disc)?;
    let two_ac = BigInt::from(2) * &a * &c;
    let u = QuadElem {
        x: BigRational::new(&b * &b - BigInt::from(2) * &a * &c, two_ac.clone()),
        y: BigRational::new(-(&b * &m), two_ac),
    };
    debug_assert!(field.norm(&u).is_one());
    Ok((field, u))
}

fn val_p_bigint(n: &BigInt, p: &BigInt) -> i64 {
    assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0i64;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

fn val_p_rational(q: &BigRational, p: &BigInt) -> i64 {
    val_p_bigint(q.numer(), p) - val_p_bigint(q.denom(), p)
}

fn mod_pow_bigint(base: &BigInt, exp: &BigInt, m: &BigInt) -> BigInt {
    base.modpow(exp, m)
}

fn mod_inv_bigint(a: &BigInt, m: &BigInt) -> BigInt {
    // Extended Euclid; requires gcd(a, m) = 1.
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    assert!(r0.is_one(), "mod_inv of a non-unit");
    t0.mod_floor(m)
}

use num_integer::Integer;

/// Square root of `a` modulo an odd prime `p` (Tonelli–Shanks), canonicalized
/// to the smaller of the two residues. `None` for non-residues.
fn tonelli_shanks(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    let one = BigInt::one();
    let pm1 = p - &one;
    let legendre = mod_pow_bigint(&a, &(&pm1 / 2), p);
    if legendre != one {
        return None;
    }
    let r = if p.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
        mod_pow_bigint(&a, &((p + &one) / 4), p)
    } else {
        // Full Tonelli–Shanks: p − 1 = q·2^s with q odd.
        let mut q = pm1.clone();
        let mut s = 0u32;
        while q.is_even() {
            q /= 2;
            s += 1;
        }
        let mut z = BigInt::from(2);
        while mod_pow_bigint(&z, &(&pm1 / 2), p) == one {
            z += 1;
        }
        let mut m = s;
        let mut c = mod_pow_bigint(&z, &q, p);
        let mut t = mod_pow_bigint(&a, &q, p);
        let mut r = mod_pow_bigint(&a, &((&q + &one) / 2), p);
        while t != one {
            let mut i = 0u32;
            let mut t2 = t.clone();
            while t2 != one {
                t2 = (&t2 * &t2).mod_floor(p);
                i += 1;
                assert!(i < m, "tonelli: input is not a residue");
            }
            let b = mod_pow_bigint(&c, &(BigInt::one() << (m - i - 1)), p);
            m = i;
            c = (&b * &b).mod_floor(p);
            t = (&t * &c).mod_floor(p);
            r = (&r * &b).mod_floor(p);
        }
        r
    };
    let other = p - &r;
    Some(r.min(other))
}

/// Deterministic r with r² ≡ d (mod p^k), for d a unit square modulo the
/// prime p (p odd and d a quadratic residue, or p = 2 and d ≡ 1 mod 8).
pub fn padic_sqrt(d: &BigInt, p: &BigInt, k: u32) -> Option<BigInt> {
    assert!(k >= 1);
    let two = BigInt::from(2);
    if *p == two {
        if d.mod_floor(&BigInt::from(8)) != BigInt::one() {
            return None;
        }
        // Maintain r ≡ 1 (mod 4) with r² ≡ d (mod 2^j); the congruence class
        // mod 4 pins one of the four square roots, so the lift is canonical.
        let mut r = BigInt::one();
        for j in 3..k.max(3) {
            let modulus = BigInt::one() << (j + 1);
            if (&r * &r - d).mod_floor(&modulus) != BigInt::zero() {
                r += BigInt::one() << (j - 1);
            }
        }
        return Some(r.mod_floor(&(BigInt::one() << k)));
    }
    if (d % p).is_zero() {
        return None;
    }
    let r0 = tonelli_shanks(d, p)?;
    if r0.is_zero() {
        return None;
    }
    // Newton lifting with modulus squaring.
    let target = p.pow(k);
    let mut modulus = p.clone();
    let mut r = r0;
    while modulus < target {
        modulus = &modulus * &modulus;
        let denom = mod_inv_bigint(&(&r * &two).mod_floor(&modulus), &modulus);
        r = (&r - (&r * &r - d) * denom).mod_floor(&modulus);
    }
    debug_assert!((&r * &r - d).mod_floor(&target).is_zero());
    Some(r.mod_floor(&target))
}

/// Signed valuations of a norm-one element at the primes above the rational
/// primes dividing the denominator of its trace. Every such rational prime
/// splits, its two valuations of `u` are opposite, and the sign reported here
/// is taken at the prime selected by the canonical `padic_sqrt` embedding —
/// the same selection for every element of the field, so vectors of two
/// elements are directly comparable.
pub fn split_valuations(field: &QuadField, u: &QuadElem) -> Vec<(BigInt, i64)> {
    assert!(field.norm(u).is_one(), "split_valuations needs norm one");
    let trace = field.trace(u);
    let den = trace.denom().clone();
    let mut out = Vec::new();
    for (p, mag) in arith::factor_bigint(&den) {
        let m = mag as i64;
        // Common valuation −cap of x and y: the trace denominator absorbs one
        // factor of 2 into the half-integer ring, hence the p = 2 shift.
        let cap = if p == BigInt::from(2) { m + 1 } else { m };
        assert_eq!(val_p_rational(&u.x, &p), -cap);
        assert_eq!(val_p_rational(&u.y, &p), -cap);
        let k = (cap + m + 6) as u32;
        let r = padic_sqrt(&field.d, &p, k)
            .unwrap_or_else(|| panic!("prime {p} with non-zero valuation must split"));
        let modulus = p.pow(k);
        let scale = BigRational::from_integer(p.pow(cap as u32));
        let xs = &u.x * &scale;
        let ys = &u.y * &scale;
        let to_residue = |q: &BigRational| -> BigInt {
            let num = q.numer().mod_floor(&modulus);
            let den_inv = mod_inv_bigint(q.denom(), &modulus);
            (num * den_inv).mod_floor(&modulus)
        };
        let w = (to_residue(&xs) + to_residue(&ys) * &r).mod_floor(&modulus);
        assert!(!w.is_zero(), "p-adic precision exhausted");
        let kappa = val_p_bigint(&w, &p);
        let e = kappa - cap;
        assert!(
            e == m || e == -m,
            "valuation of a norm-one element must be ±{m}, got {e}"
        );
        out.push((p, e));
    }
    out
}

/// The simplest rational (smallest denominator, ties to smaller numerator) in
/// the closed interval [lo, hi].
fn simplest_rational_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational_between(&-hi.clone(), &-lo.clone());
    }
    // 0 < lo ≤ hi.
    let i = lo.ceil();
    if i <= *hi {
        return i;
    }
    let fl = lo.floor();
    let tail = simplest_rational_between(
        &(hi - &fl).recip(),
        &(lo - &fl).recip(),
    );
    fl + tail.recip()
}

/// Decides multiplicative dependence of two norm-one elements of a quadratic
/// field, with an exactly verified exponent pair on success. Callers pass
/// root ratios of irreducible quadratics over a common field; roots of unity
/// are legal inputs and short-circuit to a one-sided relation.
pub fn norm_one_dependence(
    field: &QuadField,
    u: &QuadElem,
    v: &QuadElem,
) -> Result<PairRelation> {
    if !field.norm(u).is_one() || !field.norm(v).is_one() {
        return Err(Error::InvalidInput("elements must have norm one".into()));
    }
    if let Some(k) = field.unity_order(u) {
        return Ok(PairRelation::Dependent(k as i64, 0));
    }
    if let Some(k) = field.unity_order(v) {
        return Ok(PairRelation::Dependent(0, k as i64));
    }
    let eu = split_valuations(field, u);
    let ev = split_valuations(field, v);
    match (eu.is_empty(), ev.is_empty()) {
        (true, true) => {
            // Two non-torsion units: impossible in an imaginary field, and in
            // a real field both are ±(powers of a common generator), so they
            // are always dependent; recover the exponent ratio from interval
            // logarithms and verify it exactly.
            assert!(
                field.is_real(),
                "imaginary units are roots of unity, handled above"
            );
            unit_pair_relation(field, u, v)
        }
        (true, false) | (false, true) => Ok(PairRelation::Independent),
        (false, false) => {
            // Merge supports; absent primes carry valuation 0.
            let mut support: Vec<BigInt> = eu.iter().chain(ev.iter()).map(|(p, _)| p.clone()).collect();
            support.sort();
            support.dedup();
            let at = |vec: &[(BigInt, i64)], p: &BigInt| -> i64 {
                vec.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
            };
            let pairs: Vec<(i64, i64)> = support
                .iter()
                .map(|p| (at(&eu, p), at(&ev, p)))
                .collect();
            let &(e0, f0) = pairs.iter().find(|(e, _)| *e != 0).expect("non-empty support");
            for &(e, f) in &pairs {
                if (e as i128) * (f0 as i128) != (f as i128) * (e0 as i128) {
                    return Ok(PairRelation::Independent);
                }
            }
            if f0 == 0 {
                // Proportionality with a zero column forces the other vector
                // to vanish entirely, contradicting non-emptiness.
                return Ok(PairRelation::Independent);
            }
            let g = gcd_i64(e0, f0);
            let (p0, q0) = (f0 / g, -(e0 / g));
            for &(e, f) in &pairs {
                assert_eq!(p0 as i128 * e as i128 + q0 as i128 * f as i128, 0);
            }
            let w = field.mul(&field.pow(u, p0), &field.pow(v, q0));
            debug_assert!(field.norm(&w).is_one());
            if field.is_real() {
                if w.is_one() {
                    Ok(PairRelation::Dependent(p0, q0))
                } else if w.is_minus_one() {
                    Ok(PairRelation::Dependent(2 * p0, 2 * q0))
                } else {
                    assert!(
                        !w.is_rational(),
                        "norm-one unit rationals are ±1"
                    );
                    // w = ±(non-trivial unit power): any relation would force
                    // a torsion power of it, impossible in a real field.
                    Ok(PairRelation::Independent)
                }
            } else {
                let k = field
                    .unity_order(&w)
                    .expect("imaginary units are roots of unity") as i64;
                Ok(PairRelation::Dependent(k * p0, k * q0))
            }
        }
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Relation between two non-torsion units of a real quadratic field. Both
/// are ±(powers of a common generator); the exponent ratio a/b equals
/// log|u|/log|v|, is reconstructed as the simplest rational in a shrinking
/// interval, and the candidate is accepted only after u^b·v^(−a) evaluates to
/// ±1 in exact field arithmetic.
fn unit_pair_relation(field: &QuadField, u: &QuadElem, v: &QuadElem) -> Result<PairRelation> {
    let mut prec: u32 = 96;
    loop {
        if prec > (1 << 22) {
            return Err(Error::PrecisionExceeded {
                requested: prec,
                achieved: 1 << 22,
            });
        }
        let eu = field.embed(u, prec).abs();
        let ev = field.embed(v, prec).abs();
        if !eu.strictly_positive() || !ev.strictly_positive() {
            prec *= 2;
            continue;
        }
        let lu = eu.ln(prec);
        let lv = ev.ln(prec);
        if lv.contains_zero() {
            prec *= 2;
            continue;
        }
        let ratio = lu.div(&lv, prec);
        let lo = ratio.lo().to_rational();
        let hi = ratio.hi().to_rational();
        let cand = simplest_rational_between(&lo, &hi);
        if cand.is_zero() {
            prec *= 2;
            continue;
        }
        let a = match cand.numer().to_i64() {
            Some(a) => a,
            None => {
                prec *= 2;
                continue;
            }
        };
        let b = match cand.denom().to_i64() {
            Some(b) => b,
            None => {
                prec *= 2;
                continue;
            }
        };
        let w = field.mul(&field.pow(u, b), &field.pow(v, -a));
        if w.is_one() {
            return Ok(PairRelation::Dependent(b, -a));
        }
        if w.is_minus_one() {
            return Ok(PairRelation::Dependent(2 * b, -2 * a));
        }
        prec *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn field_arithmetic_identities() {
        let f = QuadField::new(BigInt::from(2)).unwrap();
        let a = f.elem(q(1, 1), q(1, 1)); // 1 + √2
        assert_eq!(f.norm(&a), q(-1, 1));
        assert_eq!(f.mul(&a, &f.conj(&a)), QuadElem::from_rational(q(-1, 1)));
        assert!(f.mul(&a, &f.inv(&a)).is_one());
        assert_eq!(f.pow(&a, 3), f.elem(q(7, 1), q(5, 1)));
        assert_eq!(f.pow(&a, -2), f.elem(q(3, 1), q(-2, 1)));
        assert_eq!(f.trace(&f.pow(&a, 2)), q(6, 1));
        assert!(QuadField::new(BigInt::from(12)).is_err());
        assert!(QuadField::new(BigInt::one()).is_err());
    }

    #[test]
    fn discriminant_decomposition() {
        let (f, m) = QuadField::from_discriminant(&BigInt::from(12)).unwrap();
        assert_eq!((f.d().clone(), m), (BigInt::from(3), BigInt::from(2)));
        let (f, m) = QuadField::from_discriminant(&BigInt::from(-4)).unwrap();
        assert_eq!((f.d().clone(), m), (BigInt::from(-1), BigInt::from(2)));
        let (f, m) = QuadField::from_discriminant(&BigInt::from(45)).unwrap();
        assert_eq!((f.d().clone(), m), (BigInt::from(5), BigInt::from(3)));
        let (f, m) = QuadField::from_discriminant(&BigInt::from(8)).unwrap();
        assert_eq!((f.d().clone(), m), (BigInt::from(2), BigInt::from(2)));
        assert!(QuadField::from_discriminant(&BigInt::from(49)).is_err());
        assert!(QuadField::from_discriminant(&BigInt::zero()).is_err());
    }

    #[test]
    fn padic_square_roots() {
        let cases = [
            (BigInt::from(2), BigInt::from(7), 12u32),
            (BigInt::from(3), BigInt::from(13), 8),
            (BigInt::from(17), BigInt::from(2), 20),
            (BigInt::from(-23), BigInt::from(2), 16),
            (BigInt::from(-23), BigInt::from(3), 10),
        ];
        for (d, p, k) in cases {
            let r = padic_sqrt(&d, &p, k).unwrap();
            let modulus = p.pow(k);
            assert!((&r * &r - &d).mod_floor(&modulus).is_zero(), "d={d} p={p}");
            assert_eq!(r, padic_sqrt(&d, &p, k).unwrap(), "determinism");
        }
        // Non-residues and ramified primes have no unit square root.
        assert!(padic_sqrt(&BigInt::from(3), &BigInt::from(7), 4).is_none());
        assert!(padic_sqrt(&BigInt::from(3), &BigInt::from(2), 4).is_none());
        assert!(padic_sqrt(&BigInt::from(7), &BigInt::from(7), 4).is_none());
    }

    #[test]
    fn root_ratios_have_norm_one() {
        for coeffs in [[3i64, 1, 2], [1, -3, 1], [11, -7, 5], [4, 3, 2]] {
            let g = IntPolynomial::from_i64(&coeffs);
            let (f, u) = ratio_of_roots(&g).unwrap();
            assert!(f.norm(&u).is_one());
            let (a, b, c) = (coeffs[2], coeffs[1], coeffs[0]);
            assert_eq!(f.trace(&u), q(b * b - 2 * a * c, a * c));
        }
        assert!(ratio_of_roots(&IntPolynomial::from_i64(&[1, 2, 1])).is_err());
    }

    #[test]
    fn split_valuation_vectors() {
        let g = IntPolynomial::from_i64(&[3, 1, 2]); // 2X² + X + 3, disc −23
        let (f, u) = ratio_of_roots(&g).unwrap();
        let vals = split_valuations(&f, &u);
        let mags: Vec<(BigInt, i64)> = vals.iter().map(|(p, e)| (p.clone(), e.abs())).collect();
        assert_eq!(mags, vec![(BigInt::from(2), 1), (BigInt::from(3), 1)]);
        // Inversion negates, squaring doubles.
        let inv = split_valuations(&f, &f.inv(&u));
        assert_eq!(
            inv,
            vals.iter().map(|(p, e)| (p.clone(), -e)).collect::<Vec<_>>()
        );
        let sq = split_valuations(&f, &f.pow(&u, 2));
        assert_eq!(
            sq,
            vals.iter().map(|(p, e)| (p.clone(), 2 * e)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn planted_power_is_dependent() {
        let g = IntPolynomial::from_i64(&[3, 1, 2]);
        let (f, u) = ratio_of_roots(&g).unwrap();
        let v = f.pow(&u, 3);
        match norm_one_dependence(&f, &u, &v).unwrap() {
            PairRelation::Dependent(p, q) => {
                assert!(f.mul(&f.pow(&u, p), &f.pow(&v, q)).is_one());
                assert_eq!(p * -1, q * 3, "exponents proportional to (3, −1)");
            }
            PairRelation::Independent => panic!("planted power missed"),
        }
    }

    #[test]
    fn mismatched_valuations_are_independent() {
        // Same field ℚ(√−23), supports {2,3} with magnitudes 1 versus {2}
        // with magnitude 3: not proportional.
        let g = IntPolynomial::from_i64(&[3, 1, 2]);
        let h = IntPolynomial::from_i64(&[4, 3, 2]); // disc 9 − 32 = −23
        let (f, u) = ratio_of_roots(&g).unwrap();
        let (f2, v) = ratio_of_roots(&h).unwrap();
        assert_eq!(f, f2);
        assert_eq!(
            norm_one_dependence(&f, &u, &v).unwrap(),
            PairRelation::Independent
        );
        // Exhaustive exact cross-check over small exponents.
        for p in -6i64..=6 {
            for q in -6i64..=6 {
                if (p, q) != (0, 0) {
                    assert!(!f.mul(&f.pow(&u, p), &f.pow(&v, q)).is_one());
                }
            }
        }
    }

    #[test]
    fn real_unit_pair_is_dependent() {
        // X² − 3X + 1 and X² − 7X + 1 over ℚ(√5): ratios are ε⁴ and ε⁸ for
        // the golden ratio ε, so u² = v.
        let g = IntPolynomial::from_i64(&[1, -3, 1]);
        let h = IntPolynomial::from_i64(&[1, -7, 1]);
        let (f, u) = ratio_of_roots(&g).unwrap();
        let (f2, v) = ratio_of_roots(&h).unwrap();
        assert_eq!(f, f2);
        assert_eq!(f.pow(&u, 2), v);
        match norm_one_dependence(&f, &u, &v).unwrap() {
            PairRelation::Dependent(p, q) => {
                assert!(f.mul(&f.pow(&u, p), &f.pow(&v, q)).is_one());
                assert_eq!(p, -2 * q, "exponents proportional to (2, −1)");
            }
            PairRelation::Independent => panic!("unit powers missed"),
        }
        // A sign twist doubles the relation.
        let minus_v = f.neg(&v);
        match norm_one_dependence(&f, &u, &minus_v).unwrap() {
            PairRelation::Dependent(p, q) => {
                assert!(f.mul(&f.pow(&u, p), &f.pow(&minus_v, q)).is_one());
            }
            PairRelation::Independent => panic!("sign twist missed"),
        }
    }

    #[test]
    fn imaginary_torsion_twist_is_dependent() {
        // u = (1 + 4√−3)/7 has norm 1 and valuation support {7}; twisting by
        // a cube root of unity keeps the valuations, and the residual unit is
        // killed by tripling.
        let f = QuadField::new(BigInt::from(-3)).unwrap();
        let u = f.elem(q(1, 7), q(4, 7));
        assert!(f.norm(&u).is_one());
        let omega = f.elem(q(-1, 2), q(1, 2));
        assert_eq!(f.unity_order(&omega), Some(3));
        let v = f.mul(&u, &omega);
        match norm_one_dependence(&f, &u, &v).unwrap() {
            PairRelation::Dependent(p, q) => {
                assert!(f.mul(&f.pow(&u, p), &f.pow(&v, q)).is_one());
                assert_eq!(p, -q, "valuations of u and v agree");
                assert_eq!(p.abs(), 3, "the residual cube root needs tripling");
            }
            PairRelation::Independent => panic!("torsion twist missed"),
        }
    }

    #[test]
    fn torsion_inputs_short_circuit() {
        let f = QuadField::new(BigInt::from(-1)).unwrap();
        let i = f.elem(q(0, 1), q(1, 1));
        let u = f.elem(q(3, 5), q(4, 5));
        assert_eq!(
            norm_one_dependence(&f, &i, &u).unwrap(),
            PairRelation::Dependent(4, 0)
        );
        assert_eq!(
            norm_one_dependence(&f, &u, &i).unwrap(),
            PairRelation::Dependent(0, 4)
        );
    }

    #[test]
    fn simplest_rational_reconstruction() {
        let cases = [
            (q(332, 1000), q(334, 1000), q(1, 3)),
            (q(24999, 100000), q(25001, 100000), q(1, 4)),
            (q(-334, 1000), q(-332, 1000), q(-1, 3)),
            (q(-1, 10), q(1, 10), q(0, 1)),
            (q(21, 10), q(29, 10), q(5, 2)),
            (q(19, 10), q(31, 10), q(2, 1)),
            (q(5, 2), q(5, 2), q(5, 2)),
        ];
        for (lo, hi, want) in cases {
            assert_eq!(simplest_rational_between(&lo, &hi), want);
        }
    }
}
