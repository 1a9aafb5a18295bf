//! Integer polynomials: exact arithmetic, content/primitive decomposition,
//! gcds, resultants, square-free decomposition and rational-root extraction.
//!
//! Coefficients are stored low-to-high with a non-zero top coefficient (the
//! zero polynomial is the empty list). Everything in this module is exact
//! integer or rational arithmetic.

use crate::arith::{determinant_bigint, divisors_bigint, euler_phi};
use crate::error::{Error, Result};
use crate::interval::{CInt, RInt};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

/// A polynomial in `ℤ[X]`, coefficients low-to-high.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial, trimming high zero coefficients.
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial { coeffs: vec![BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> IntPolynomial {
        IntPolynomial::new(vec![c])
    }

    /// `c · X^k`.
    pub fn monomial(c: BigInt, k: usize) -> IntPolynomial {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Strict parser for the bracketed low-to-high coefficient format, e.g.
    /// `[-1,-1,1]` for `X² − X − 1`. Rejects the empty list and a zero top
    /// coefficient so every accepted input names a unique non-zero polynomial
    /// of definite degree.
    pub fn parse(input: &str) -> Result<IntPolynomial> {
        let s = input.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [c0,c1,...]: {input:?}")))?;
        if inner.trim().is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        let coeffs: Vec<BigInt> = inner
            .split(',')
            .map(|tok| {
                BigInt::from_str(tok.trim())
                    .map_err(|_| Error::Parse(format!("bad integer coefficient: {tok:?}")))
            })
            .collect::<Result<_>>()?;
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::Parse(
                "top coefficient must be non-zero (trim trailing zeros)".into(),
            ));
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; panics on the zero polynomial.
    pub fn degree(&self) -> usize {
        assert!(!self.coeffs.is_empty(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading().is_one()
    }

    /// Height `H(f) = max |cᵢ|`.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Multiplicity of the root 0, i.e. the number of low zero coefficients.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, rhs: &IntPolynomial) -> IntPolynomial {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `X^k · f`.
    pub fn mul_xk(&self, k: usize) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Reciprocal polynomial `X^deg · f(1/X)` (coefficients reversed).
    pub fn reciprocal(&self) -> IntPolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPolynomial::new(coeffs)
    }

    /// `f(−X)`.
    pub fn compose_neg(&self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c })
                .collect(),
        }
    }

    /// `f(X^k)`.
    pub fn compose_xk(&self, k: usize) -> IntPolynomial {
        assert!(k >= 1);
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPolynomial { coeffs }
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn evaluate_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn evaluate_rint(&self, x: &RInt, prec: u32) -> RInt {
        let mut acc = RInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x, prec).add(&RInt::from_bigint(c), prec);
        }
        acc
    }

    pub fn evaluate_cint(&self, z: &CInt, prec: u32) -> CInt {
        let mut acc = CInt::from_real(RInt::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z, prec).add(&CInt::from_real(RInt::from_bigint(c)), prec);
        }
        acc
    }

    /// Content: non-negative gcd of the coefficients (0 for the zero poly).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part, preserving the sign of the leading coefficient.
    pub fn primitive_part(&self) -> IntPolynomial {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Exact quotient over `ℤ`, or `None` when `d ∤ f` in `ℤ[X]`.
    pub fn divide_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dn = d.degree();
        let mut quot = vec![BigInt::zero(); self.degree() - dn + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dn].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(d.leading());
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let v = &rem[k + j] - &q * dc;
                rem[k + j] = v;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPolynomial::new(quot))
    }

    /// Pseudo-remainder: the `R` in `lc(d)^{δ+1} f = Q·d + R`, `δ = deg f − deg d`.
    pub fn pseudo_rem(&self, d: &IntPolynomial) -> IntPolynomial {
        assert!(!d.is_zero());
        if self.is_zero() || self.degree() < d.degree() {
            return self.clone();
        }
        let lc = d.leading().clone();
        let mut e = (self.degree() - d.degree() + 1) as i64;
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= d.degree() {
            let s = IntPolynomial::monomial(r.leading().clone(), r.degree() - d.degree());
            r = r.scale(&lc).sub(&s.mul(d));
            e -= 1;
        }
        let mut pad = BigInt::one();
        for _ in 0..e {
            pad = &pad * &lc;
        }
        r.scale(&pad)
    }

    /// Polynomial gcd over `ℤ` (primitive PRS), normalized to a positive
    /// leading coefficient; the content gcd is included.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() {
            return other.positive_leading();
        }
        if other.is_zero() {
            return self.positive_leading();
        }
        let content_gcd = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.positive_leading().scale(&content_gcd)
    }

    fn positive_leading(&self) -> IntPolynomial {
        if !self.is_zero() && self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Resultant `Res(f, g)` as the Bareiss determinant of the Sylvester
    /// matrix — exact, with the standard conventions for constants.
    pub fn resultant(&self, other: &IntPolynomial) -> BigInt {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        let (m, n) = (self.degree(), other.degree());
        if m == 0 {
            return self.leading().pow(n as u32);
        }
        if n == 0 {
            return other.leading().pow(m as u32);
        }
        let size = m + n;
        let mut matrix = vec![vec![BigInt::zero(); size]; size];
        // n rows of f's coefficients (high to low), then m rows of g's.
        for row in 0..n {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                matrix[row][row + k] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                matrix[n + row][row + k] = c.clone();
            }
        }
        determinant_bigint(&matrix)
    }

    /// Discriminant, via `Res(f, f') = (−1)^{n(n−1)/2} · lc(f) · disc(f)`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        assert!(n >= 1);
        let res = self.resultant(&self.derivative());
        let quo = &res / self.leading();
        if (n * (n - 1) / 2) % 2 == 1 {
            -quo
        } else {
            quo
        }
    }

    /// True when `f` has no repeated complex roots.
    pub fn is_squarefree(&self) -> bool {
        assert!(!self.is_zero());
        if self.degree() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Yun square-free decomposition of the primitive part: returns pairs
    /// `(gᵢ, i)` with each `gᵢ` square-free, pairwise coprime, `deg gᵢ ≥ 1`,
    /// and `∏ gᵢ^i = ± primitive_part(f)`.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPolynomial, u32)> {
        assert!(!self.is_zero());
        let f = self.primitive_part();
        if f.degree() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let g = f.gcd(&df);
        if g.degree() == 0 {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        let mut b = f.divide_exact(&g).expect("gcd divides");
        let mut c = df.divide_exact(&g).expect("gcd divides derivative");
        let mut d = c.sub(&b.derivative());
        let mut i = 1u32;
        while b.degree() > 0 {
            let p = b.gcd(&d);
            if p.degree() > 0 {
                out.push((p.clone(), i));
            }
            b = b.divide_exact(&p).expect("gcd divides");
            c = d.divide_exact(&p).expect("gcd divides");
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors (still over `ℤ`, primitive,
    /// positive leading coefficient): the polynomial with the same root set
    /// and all multiplicities one.
    pub fn squarefree_part(&self) -> IntPolynomial {
        let mut out = IntPolynomial::one();
        for (g, _) in self.squarefree_decomposition() {
            out = out.mul(&g);
        }
        out.positive_leading()
    }

    /// Distinct rational roots with multiplicities, found exactly from the
    /// divisor candidates of the outer coefficients.
    pub fn rational_roots(&self) -> Vec<(BigRational, u32)> {
        assert!(!self.is_zero());
        let mut out = Vec::new();
        let zero_mult = self.zero_root_multiplicity();
        if zero_mult == self.coeffs.len() {
            unreachable!("zero polynomial");
        }
        if zero_mult > 0 {
            out.push((BigRational::zero(), zero_mult as u32));
        }
        let f = IntPolynomial::new(self.coeffs[zero_mult..].to_vec()).primitive_part();
        if f.degree() == 0 {
            return out;
        }
        let a0 = f.constant_term().abs();
        let an = f.leading().abs();
        for p in divisors_bigint(&a0) {
            for q in divisors_bigint(&an) {
                if !p.gcd(&q).is_one() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand = BigRational::new(&p * BigInt::from(sign), q.clone());
                    if f.evaluate_rational(&cand).is_zero() {
                        // Multiplicity via repeated exact deflation by (qX − p).
                        let lin = IntPolynomial::new(vec![
                            -cand.numer().clone(),
                            cand.denom().clone(),
                        ]);
                        let mut mult = 0u32;
                        let mut rest = f.clone();
                        while let Some(qt) = rest.divide_exact(&lin) {
                            mult += 1;
                            rest = qt;
                            if rest.is_zero() || rest.degree() == 0 {
                                break;
                            }
                        }
                        debug_assert!(mult >= 1);
                        out.push((cand, mult));
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out.dedup_by(|a, b| a.0 == b.0);
        out
    }

    /// First `count` power sums `p_k = Σᵢ αᵢ^k` (with multiplicity) over all
    /// roots, as exact rationals via Newton's identities; `p_0 = deg f`.
    pub fn newton_power_sums(&self, count: usize) -> Vec<BigRational> {
        assert!(!self.is_zero());
        let n = self.degree();
        let an = BigRational::from_integer(self.leading().clone());
        // e_i = (−1)^i a_{n−i} / a_n   (elementary symmetric functions)
        let e: Vec<BigRational> = (0..=n)
            .map(|i| {
                let c = BigRational::from_integer(self.coeff(n - i)) / &an;
                if i % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        let mut p = vec![BigRational::from_integer(BigInt::from(n))];
        for k in 1..=count {
            // p_k = Σ_{j=1..k−1} (−1)^{j−1} e_j p_{k−j} + (−1)^{k−1} k e_k  (e_j = 0 for j > n)
            let mut sum = BigRational::zero();
            for j in 1..k {
                if j > n {
                    break;
                }
                let term = &e[j] * &p[k - j];
                sum = if (j - 1) % 2 == 0 { sum + term } else { sum - term };
            }
            if k <= n {
                let term = BigRational::from_integer(BigInt::from(k)) * &e[k];
                sum = if (k - 1) % 2 == 0 { sum + term } else { sum - term };
            }
            p.push(sum);
        }
        p
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<IntPolynomial> {
        IntPolynomial::parse(s)
    }
}

/// Exact Lagrange interpolation through integer points with distinct abscissa
/// values; `None` when the interpolant is not an integer polynomial.
pub fn lagrange_interpolate(points: &[(BigInt, BigInt)]) -> Option<IntPolynomial> {
    let k = points.len();
    assert!(k >= 1);
    // Rational coefficient accumulator, low-to-high.
    let mut acc = vec![BigRational::zero(); k];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis_i = ∏_{j≠i} (X − x_j) / (x_i − x_j)
        let mut basis = vec![BigRational::zero(); k];
        basis[0] = BigRational::one();
        let mut deg = 0usize;
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            // multiply basis by (X − x_j)
            for d in (0..=deg).rev() {
                let shifted = basis[d].clone();
                basis[d + 1] = &basis[d + 1] + &shifted;
                basis[d] = -BigRational::from_integer(xj.clone()) * shifted;
            }
            deg += 1;
            denom *= BigRational::from_integer(xi - xj);
        }
        let w = BigRational::from_integer(yi.clone()) / denom;
        for d in 0..=deg {
            acc[d] = &acc[d] + &basis[d] * &w;
        }
    }
    let mut coeffs = Vec::with_capacity(k);
    for c in acc {
        if !c.denom().is_one() {
            return None;
        }
        coeffs.push(c.to_integer());
    }
    Some(IntPolynomial::new(coeffs))
}

static CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u64, IntPolynomial>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The `m`-th cyclotomic polynomial `Φ_m`, exact and cached.
pub fn cyclotomic(m: u64) -> IntPolynomial {
    assert!(m >= 1);
    if let Some(p) = CYCLOTOMIC_CACHE.lock().unwrap().get(&m) {
        return p.clone();
    }
    let value = if m == 1 {
        IntPolynomial::from_i64(&[-1, 1])
    } else {
        // Φ_m = (X^m − 1) / ∏_{d | m, d < m} Φ_d
        let mut num = IntPolynomial::monomial(BigInt::one(), m as usize)
            .sub(&IntPolynomial::one());
        for d in 1..m {
            if m % d == 0 {
                num = num
                    .divide_exact(&cyclotomic(d))
                    .expect("cyclotomic division is exact");
            }
        }
        num
    };
    debug_assert_eq!(value.degree() as u64, euler_phi(m));
    CYCLOTOMIC_CACHE.lock().unwrap().insert(m, value.clone());
    value
}

/// All `m` with `φ(m) = n`, ascending. (Empty for odd `n > 1`.)
pub fn totient_preimages(n: u64) -> Vec<u64> {
    // φ(m) ≥ √(m/2) for all m, so m ≤ 2n² + 2 suffices.
    (1..=2 * n * n + 2).filter(|&m| euler_phi(m) == n).collect()
}
