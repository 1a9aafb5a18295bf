//! Complete factorization over `ℚ` (equivalently, into primitive irreducible
//! integer polynomials).
//!
//! Pipeline: content/sign extraction → zero roots → Yun square-free split →
//! rational-root deflation → for the remaining square-free parts of degree
//! ≥ 4, Zassenhaus: Berlekamp factorization modulo a small good prime, a
//! quadratic Hensel lift of a factor tree past the Mignotte bound, and
//! deterministic subset recombination. Non-monic inputs are monicized with
//! the `a^{n−1}·f(X/a)` transform and mapped back.

use crate::arith::is_prime_u64;
use crate::intpoly::IntPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `f = unit · ∏ factorsᵢ ^ multᵢ` with primitive irreducible factors of
/// positive leading coefficient, sorted by (degree, coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    /// Recomputes the original polynomial (used by tests and verification).
    pub fn product(&self) -> IntPolynomial {
        let mut out = IntPolynomial::constant(self.unit.clone());
        for (g, e) in &self.factors {
            for _ in 0..*e {
                out = out.mul(g);
            }
        }
        out
    }

    /// Number of distinct irreducible factors.
    pub fn distinct_count(&self) -> usize {
        self.factors.len()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1 && self.unit.abs().is_one()
    }
}

/// Factors a non-zero integer polynomial completely.
pub fn factor(f: &IntPolynomial) -> Factorization {
    assert!(!f.is_zero(), "factorization of the zero polynomial");
    let content = f.content();
    let sign = if f.leading().is_negative() { -1 } else { 1 };
    let unit = &content * BigInt::from(sign);
    let mut prim = f.primitive_part();
    if sign < 0 {
        prim = prim.neg();
    }
    let mut factors: Vec<(IntPolynomial, u32)> = Vec::new();
    let zmult = prim.zero_root_multiplicity();
    if zmult > 0 {
        factors.push((IntPolynomial::from_i64(&[0, 1]), zmult as u32));
        prim = IntPolynomial::new(prim.coeffs()[zmult..].to_vec());
    }
    if prim.degree() >= 1 {
        for (g, mult) in prim.squarefree_decomposition() {
            for h in factor_squarefree(&g) {
                factors.push((h, mult));
            }
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Factorization { unit, factors }
}

/// True when the primitive part of `f` is irreducible over `ℚ`.
pub fn is_irreducible(f: &IntPolynomial) -> bool {
    let fac = factor(f);
    fac.factors.len() == 1 && fac.factors[0].1 == 1
}

/// Factors a primitive square-free polynomial with positive leading
/// coefficient into irreducibles.
fn factor_squarefree(g: &IntPolynomial) -> Vec<IntPolynomial> {
    debug_assert!(g.is_squarefree() && !g.leading().is_negative());
    if g.degree() == 1 {
        return vec![g.clone()];
    }
    let mut rest = g.clone();
    let mut out = Vec::new();
    for (root, _mult) in g.rational_roots() {
        let mut lin = IntPolynomial::new(vec![-root.numer().clone(), root.denom().clone()]);
        if lin.leading().is_negative() {
            lin = lin.neg();
        }
        rest = rest.divide_exact(&lin).expect("root divides");
        out.push(lin);
    }
    if !rest.is_zero() && rest.degree() >= 1 {
        if rest.degree() <= 3 {
            // No rational roots remain, so degree 2 and 3 are irreducible.
            out.push(rest.primitive_part());
        } else {
            out.extend(zassenhaus(&rest.primitive_part()));
        }
    }
    out
}

/// Zassenhaus factorization of a primitive square-free polynomial of degree
/// ≥ 2 with positive leading coefficient and no rational roots.
fn zassenhaus(g: &IntPolynomial) -> Vec<IntPolynomial> {
    let a = g.leading().clone();
    if a.is_one() {
        return factor_monic(g);
    }
    // Monicize: g*(X) = a^{n−1} · g(X/a) has integer coefficients (the
    // coefficient of X^i becomes cᵢ·a^{n−1−i}) and the same splitting
    // structure; factors map back through X ↦ aX.
    let n = g.degree();
    let mut star_coeffs = vec![BigInt::zero(); n + 1];
    for (i, c) in g.coeffs().iter().enumerate() {
        star_coeffs[i] = if i == n {
            BigInt::one()
        } else {
            c * a.pow((n - 1 - i) as u32)
        };
    }
    let g_star = IntPolynomial::new(star_coeffs);
    let mut out = Vec::new();
    for h_star in factor_monic(&g_star) {
        // h(X) = primitive part of h*(aX).
        let mapped = IntPolynomial::new(
            h_star
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c * a.pow(i as u32))
                .collect(),
        )
        .primitive_part();
        let mapped = if mapped.leading().is_negative() {
            mapped.neg()
        } else {
            mapped
        };
        out.push(mapped);
    }
    // Internal consistency: the mapped factors must multiply back to g.
    let mut check = IntPolynomial::one();
    for h in &out {
        check = check.mul(h);
    }
    debug_assert_eq!(check, *g, "monic transform round-trip failed");
    out
}

/// Factors a monic square-free integer polynomial of degree ≥ 2.
fn factor_monic(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let n = f.degree();
    debug_assert!(f.is_monic() && n >= 2);
    // Smallest odd prime keeping f square-free mod p.
    let p = (3u64..)
        .filter(|&q| is_prime_u64(q))
        .find(|&q| {
            let fp = poly_mod_p(f, q);
            fp.len() == n + 1 && fp_is_squarefree(&fp, q)
        })
        .expect("a good prime exists");
    let modular = berlekamp(&poly_mod_p(f, p), p);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // Mignotte bound: any factor of f has |coefficients| ≤ C(n,⌊n/2⌋)·‖f‖₂.
    let norm2_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm2_ceil = norm2_sq.sqrt() + 1;
    let bound = binomial(n as u64, (n / 2) as u64) * norm2_ceil;
    let target = bound * 2 + 1;
    let leaves = lift_tree(f, &modular, p, &target);
    recombine(f, leaves, &lift_modulus(p, &target))
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// The modulus actually reached by the quadratic lift chain: the first
/// `p^(2^j) ≥ target`.
fn lift_modulus(p: u64, target: &BigInt) -> BigInt {
    let mut m = BigInt::from(p);
    while m < *target {
        m = &m * &m;
    }
    m
}

// ---------------------------------------------------------------------------
// GF(p) polynomial arithmetic (small p, u64 coefficients).
// ---------------------------------------------------------------------------

type FPoly = Vec<u64>; // low-to-high, trimmed, coefficients in [0, p)

fn fp_trim(mut a: FPoly) -> FPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mod_p(f: &IntPolynomial, p: u64) -> FPoly {
    fp_trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&BigInt::from(p)).try_into().unwrap())
            .collect(),
    )
}

fn fp_mul(a: &FPoly, b: &FPoly, p: u64) -> FPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + crate::arith::mul_mod_u64(x, y, p)) % p;
        }
    }
    fp_trim(out)
}

fn fp_sub(a: &FPoly, b: &FPoly, p: u64) -> FPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (k, o) in out.iter_mut().enumerate() {
        let x = a.get(k).copied().unwrap_or(0);
        let y = b.get(k).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    fp_trim(out)
}

/// Remainder of `a` modulo `b` (any non-zero `b`).
fn fp_rem(a: &FPoly, b: &FPoly, p: u64) -> FPoly {
    assert!(!b.is_empty());
    let inv = crate::arith::mod_inv_u64(*b.last().unwrap(), p);
    let mut r = a.clone();
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let scale = crate::arith::mul_mod_u64(*r.last().unwrap(), inv, p);
        if scale != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let sub = crate::arith::mul_mod_u64(scale, bc, p);
                r[k + j] = (r[k + j] + p - sub) % p;
            }
        }
        r.pop();
        r = fp_trim(r);
        if r.len() < b.len() {
            break;
        }
    }
    r
}

fn fp_gcd(a: &FPoly, b: &FPoly, p: u64) -> FPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

fn fp_monic(a: &FPoly, p: u64) -> FPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let inv = crate::arith::mod_inv_u64(*a.last().unwrap(), p);
    a.iter()
        .map(|&c| crate::arith::mul_mod_u64(c, inv, p))
        .collect()
}

fn fp_derivative(a: &FPoly, p: u64) -> FPoly {
    if a.len() <= 1 {
        return Vec::new();
    }
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| crate::arith::mul_mod_u64(k as u64 % p, c, p))
            .collect(),
    )
}

fn fp_is_squarefree(a: &FPoly, p: u64) -> bool {
    let d = fp_derivative(a, p);
    if d.is_empty() {
        return false;
    }
    fp_gcd(a, &d, p).len() == 1
}

/// `x^p mod f` by square-and-multiply.
fn fp_xp_mod(f: &FPoly, p: u64) -> FPoly {
    let mut result = vec![1u64];
    let mut base = fp_rem(&vec![0, 1], f, p);
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            result = fp_rem(&fp_mul(&result, &base, p), f, p);
        }
        e >>= 1;
        if e > 0 {
            base = fp_rem(&fp_mul(&base, &base, p), f, p);
        }
    }
    result
}

/// Extended Euclid over GF(p): returns `(s, t)` with `s·a + t·b = 1`,
/// `deg s < deg b`, `deg t < deg a`; requires `gcd(a, b) = 1`.
fn fp_bezout(a: &FPoly, b: &FPoly, p: u64) -> (FPoly, FPoly) {
    // Iterative extended Euclid on (r0, r1) = (a, b).
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0: FPoly = vec![1];
    let mut s1: FPoly = Vec::new();
    let mut t0: FPoly = Vec::new();
    let mut t1: FPoly = vec![1];
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        r0 = r1;
        r1 = r;
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        s0 = s1;
        s1 = s2;
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        t0 = t1;
        t1 = t2;
    }
    assert_eq!(r0.len(), 1, "bezout inputs not coprime");
    let inv = crate::arith::mod_inv_u64(r0[0], p);
    let scale = |v: &FPoly| -> FPoly {
        v.iter()
            .map(|&c| crate::arith::mul_mod_u64(c, inv, p))
            .collect()
    };
    (scale(&s0), scale(&t0))
}

fn fp_divrem(a: &FPoly, b: &FPoly, p: u64) -> (FPoly, FPoly) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let inv = crate::arith::mod_inv_u64(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - b.len() + 1];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let scale = crate::arith::mul_mod_u64(*r.last().unwrap(), inv, p);
        q[k] = scale;
        if scale != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let sub = crate::arith::mul_mod_u64(scale, bc, p);
                r[k + j] = (r[k + j] + p - sub) % p;
            }
        }
        r.pop();
        r = fp_trim(r);
        if r.len() < b.len() {
            break;
        }
    }
    (fp_trim(q), r)
}

/// Deterministic Berlekamp factorization of a monic square-free polynomial
/// over GF(p); returns monic irreducible factors sorted for reproducibility.
fn berlekamp(f: &FPoly, p: u64) -> Vec<FPoly> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.clone()];
    }
    // Petr–Berlekamp matrix: row i holds x^{ip} mod f.
    let xp = fp_xp_mod(f, p);
    let mut rows: Vec<FPoly> = Vec::with_capacity(n);
    let mut cur: FPoly = vec![1];
    for _ in 0..n {
        rows.push(cur.clone());
        cur = fp_rem(&fp_mul(&cur, &xp, p), f, p);
    }
    // Null space of (Q − I)ᵀ, i.e. vectors v with Σᵢ vᵢ x^{ip} = Σᵢ vᵢ xᵢ.
    let mut a = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for j in 0..n {
            a[j][i] = row.get(j).copied().unwrap_or(0);
        }
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = (row[i] + p - 1) % p;
    }
    let basis = fp_nullspace(a, p);
    let r = basis.len();
    if r == 1 {
        return vec![f.clone()];
    }
    let mut factors: Vec<FPoly> = vec![f.clone()];
    'outer: for v in basis {
        let vp = fp_trim(v);
        if vp.len() <= 1 {
            continue; // constant vector splits nothing
        }
        let mut next: Vec<FPoly> = Vec::new();
        for u in std::mem::take(&mut factors) {
            if u.len() <= 2 {
                next.push(u);
                continue;
            }
            let mut remaining = u;
            for c in 0..p {
                if remaining.len() <= 2 {
                    break;
                }
                let mut shifted = vp.clone();
                shifted[0] = (shifted[0] + p - c) % p;
                let g = fp_gcd(&remaining, &shifted, p);
                if g.len() > 1 && g.len() < remaining.len() {
                    let (q, rem) = fp_divrem(&remaining, &g, p);
                    debug_assert!(rem.is_empty());
                    next.push(g);
                    remaining = fp_monic(&q, p);
                }
            }
            next.push(remaining);
        }
        factors = next;
        if factors.len() == r {
            break 'outer;
        }
    }
    assert_eq!(factors.len(), r, "berlekamp split incomplete");
    factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    factors
}

/// Null space basis over GF(p) via Gaussian elimination.
fn fp_nullspace(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut pivot_in_col: Vec<Option<usize>> = vec![None; n];
    let mut row = 0usize;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        let inv = crate::arith::mod_inv_u64(a[row][col], p);
        for c in 0..n {
            a[row][c] = crate::arith::mul_mod_u64(a[row][c], inv, p);
        }
        for r in 0..n {
            if r != row && a[r][col] != 0 {
                let factor = a[r][col];
                for c in 0..n {
                    let sub = crate::arith::mul_mod_u64(factor, a[row][c], p);
                    a[r][c] = (a[r][c] + p - sub) % p;
                }
            }
        }
        pivot_in_col[col] = Some(row);
        row += 1;
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_in_col[free].is_some() {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for col in 0..n {
            if let Some(pr) = pivot_in_col[col] {
                v[col] = (p - a[pr][free] % p) % p;
            }
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Hensel lifting (monic factors, BigInt coefficients, symmetric residues).
// ---------------------------------------------------------------------------

type ZPoly = Vec<BigInt>; // low-to-high, trimmed

fn z_trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn z_from_fp(a: &FPoly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Symmetric residue in `(−m/2, m/2]`, coefficient-wise.
fn z_sym(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    z_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(out)
}

fn z_add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    z_trim(
        (0..n)
            .map(|k| {
                a.get(k).cloned().unwrap_or_else(BigInt::zero)
                    + b.get(k).cloned().unwrap_or_else(BigInt::zero)
            })
            .collect(),
    )
}

fn z_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    z_trim(
        (0..n)
            .map(|k| {
                a.get(k).cloned().unwrap_or_else(BigInt::zero)
                    - b.get(k).cloned().unwrap_or_else(BigInt::zero)
            })
            .collect(),
    )
}

/// Division with remainder by a monic divisor, coefficients mod `m`.
fn z_divrem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    assert!(b.last().map(|c| c.is_one()).unwrap_or(false), "divisor not monic");
    let mut r = z_sym(a, m);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let scale = r.last().unwrap().clone();
        q[k] = scale.clone();
        if !scale.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                let v = (&r[k + j] - &scale * bc).mod_floor(m);
                r[k + j] = v;
            }
        }
        r.pop();
        r = z_trim(r);
        if r.len() < b.len() {
            break;
        }
    }
    (z_sym(&q, m), z_sym(&r, m))
}

/// One quadratic Hensel step: given `f ≡ g·h (mod m)`, `s·g + t·h ≡ 1 (mod m)`
/// with `g, h` monic, produces the same data mod `m²`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = z_sym(&z_sub(f, &z_mul(g, h)), &m2);
    let (q, r) = z_divrem_monic(&z_mul(s, &e), h, &m2);
    let g1 = z_sym(&z_add(g, &z_add(&z_mul(t, &e), &z_mul(&q, g))), &m2);
    let h1 = z_sym(&z_add(h, &r), &m2);
    let one: ZPoly = vec![BigInt::one()];
    let b = z_sym(&z_sub(&z_add(&z_mul(s, &g1), &z_mul(t, &h1)), &one), &m2);
    let (c, d) = z_divrem_monic(&z_mul(s, &b), &h1, &m2);
    let s1 = z_sym(&z_sub(s, &d), &m2);
    let t1 = z_sym(&z_sub(&z_sub(t, &z_mul(t, &b)), &z_mul(&c, &g1)), &m2);
    (normalize_monic(g1, &m2), normalize_monic(h1, &m2), s1, t1)
}

/// The lifted factors are monic modulo m; pin the representative's leading
/// coefficient to exactly 1.
fn normalize_monic(mut a: ZPoly, m: &BigInt) -> ZPoly {
    a = z_sym(&a, m);
    let lc = a.last().expect("non-empty").clone();
    assert!(lc.is_one(), "hensel lift lost monicity");
    a
}

/// Lifts the modular factorization of monic `f` to the modulus reached by the
/// doubling chain past `target`, returning one lifted image per modular
/// factor (symmetric representatives).
fn lift_tree(f: &IntPolynomial, modular: &[FPoly], p: u64, target: &BigInt) -> Vec<ZPoly> {
    let f_z: ZPoly = f.coeffs().to_vec();
    let final_m = lift_modulus(p, target);
    lift_node(&z_sym(&f_z, &final_m), modular, p, &final_m)
}

fn lift_node(target_poly: &ZPoly, modular: &[FPoly], p: u64, final_m: &BigInt) -> Vec<ZPoly> {
    if modular.len() == 1 {
        return vec![target_poly.clone()];
    }
    let (left, right) = modular.split_at(modular.len() / 2);
    let g0 = left.iter().fold(vec![1u64], |acc, h| fp_mul(&acc, h, p));
    let h0 = right.iter().fold(vec![1u64], |acc, h| fp_mul(&acc, h, p));
    let (s0, t0) = fp_bezout(&g0, &h0, p);
    let mut m = BigInt::from(p);
    let mut g = z_sym(&z_from_fp(&g0), &m);
    let mut h = z_sym(&z_from_fp(&h0), &m);
    let mut s = z_sym(&z_from_fp(&s0), &m);
    let mut t = z_sym(&z_from_fp(&t0), &m);
    g = normalize_monic_mod_p(g, &m);
    h = normalize_monic_mod_p(h, &m);
    while m < *final_m {
        let (g1, h1, s1, t1) = hensel_step(target_poly, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    let mut out = lift_node(&g, left, p, final_m);
    out.extend(lift_node(&h, right, p, final_m));
    out
}

fn normalize_monic_mod_p(mut a: ZPoly, m: &BigInt) -> ZPoly {
    a = z_sym(&a, m);
    // Modular factors are monic by construction.
    assert!(a.last().map(|c| c.is_one()).unwrap_or(false));
    a
}

/// Deterministic subset recombination: smallest subsets of lifted factors
/// whose symmetric product divides `f` over `ℤ` are true irreducible factors.
fn recombine(f: &IntPolynomial, leaves: Vec<ZPoly>, modulus: &BigInt) -> Vec<IntPolynomial> {
    let mut rem = f.clone();
    let mut pool: Vec<ZPoly> = leaves;
    let mut out = Vec::new();
    let mut size = 1usize;
    while 2 * size <= pool.len() {
        let mut found = None;
        'subset: for subset in subsets_of_size(pool.len(), size) {
            let mut prod: ZPoly = vec![BigInt::one()];
            for &i in &subset {
                prod = z_sym(&z_mul(&prod, &pool[i]), modulus);
            }
            let cand = IntPolynomial::new(z_sym(&prod, modulus));
            if cand.is_zero() || cand.degree() == 0 {
                continue;
            }
            // Cheap screen first: the constant term must divide f(0).
            let c0 = cand.constant_term();
            if !c0.is_zero() && !(rem.constant_term() % &c0).is_zero() {
                continue 'subset;
            }
            if let Some(q) = rem.divide_exact(&cand) {
                out.push(cand);
                rem = q;
                found = Some(subset);
                break 'subset;
            }
        }
        match found {
            Some(subset) => {
                // Remove used leaves; retry the same size.
                let used: std::collections::HashSet<usize> = subset.into_iter().collect();
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !used.contains(i))
                    .map(|(_, v)| v)
                    .collect();
            }
            None => size += 1,
        }
    }
    if !rem.is_zero() && rem.degree() > 0 {
        out.push(rem);
    }
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    out
}

/// All index subsets of `{0..n}` of the given size, lexicographic.
fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::perfect_square_root;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs)
    }

    /// Spot-check that a claimed irreducible factor really is irreducible,
    /// by independent low-degree criteria.
    fn check_irreducible_claim(f: &IntPolynomial) {
        match f.degree() {
            0 => panic!("constant factor"),
            1 => {}
            2 => {
                let disc = f.discriminant();
                assert!(
                    perfect_square_root(&disc).is_none(),
                    "quadratic {f} splits (disc {disc})"
                );
            }
            _ => {
                assert!(f.rational_roots().is_empty(), "{f} has a rational root");
            }
        }
    }

    fn assert_factors(input: &IntPolynomial, expect_degrees: &[usize]) {
        let fac = factor(input);
        assert_eq!(fac.product(), *input, "product mismatch for {input}");
        let mut degrees: Vec<usize> = Vec::new();
        for (g, e) in &fac.factors {
            check_irreducible_claim(g);
            assert!(!g.leading().is_negative());
            assert_eq!(g.content(), BigInt::one(), "factor {g} not primitive");
            for _ in 0..*e {
                degrees.push(g.degree());
            }
        }
        degrees.sort_unstable();
        let mut want = expect_degrees.to_vec();
        want.sort_unstable();
        assert_eq!(degrees, want, "degree profile for {input}");
    }

    #[test]
    fn irreducibles_stay_whole() {
        for f in [
            p(&[1, 0, 1]),          // x² + 1
            p(&[-1, -1, 1]),        // x² − x − 1
            p(&[1, 2, 0, 1]),       // x³ + 2x + 1
            p(&[1, 1, 0, 0, 1]),    // x⁴ + x + 1
            p(&[1, 0, 0, 0, 1]),    // x⁴ + 1
            p(&[1, 0, -1, 0, 1]),   // Φ₁₂
            p(&[-1, -1, 0, 0, 0, 1]), // x⁵ − x − 1
        ] {
            let fac = factor(&f);
            assert!(fac.is_irreducible(), "{f} should be irreducible: {fac:?}");
        }
    }

    #[test]
    fn quartics_splitting_into_quadratics() {
        // x⁴ + 4 = (x² − 2x + 2)(x² + 2x + 2)
        let f = p(&[4, 0, 0, 0, 1]);
        let fac = factor(&f);
        assert_eq!(fac.factors.len(), 2);
        assert_factors(&f, &[2, 2]);
        let names: Vec<String> = fac.factors.iter().map(|(g, _)| g.to_string()).collect();
        assert!(names.contains(&"x^2 - 2x + 2".to_string()));
        assert!(names.contains(&"x^2 + 2x + 2".to_string()));
        // x⁴ + x² + 1 = (x² + x + 1)(x² − x + 1)
        assert_factors(&p(&[1, 0, 1, 0, 1]), &[2, 2]);
    }

    #[test]
    fn content_sign_and_multiplicity() {
        // −6(x − 3)²(x² + 1)(x² + x + 1)
        let f = p(&[-3, 1])
            .mul(&p(&[-3, 1]))
            .mul(&p(&[1, 0, 1]))
            .mul(&p(&[1, 1, 1]))
            .scale(&BigInt::from(-6));
        let fac = factor(&f);
        assert_eq!(fac.unit, BigInt::from(-6));
        assert_eq!(fac.product(), f);
        let with_mult: Vec<(String, u32)> = fac
            .factors
            .iter()
            .map(|(g, e)| (g.to_string(), *e))
            .collect();
        assert_eq!(
            with_mult,
            vec![
                ("x - 3".to_string(), 2),
                ("x^2 + 1".to_string(), 1),
                ("x^2 + x + 1".to_string(), 1),
            ]
        );
    }

    #[test]
    fn zero_roots_and_non_monic() {
        // 6x³(2x + 1)(3x + 2) = x³·(6x² + 7x + 2)·6 ... content bookkeeping
        let f = p(&[0, 0, 0, 1])
            .mul(&p(&[1, 2]))
            .mul(&p(&[2, 3]))
            .scale(&BigInt::from(5));
        assert_factors(&f, &[1, 1, 1, 1, 1]);
        let fac = factor(&f);
        assert_eq!(fac.unit, BigInt::from(5));
        assert!(fac.factors.iter().any(|(g, e)| g == &p(&[0, 1]) && *e == 3));
    }

    #[test]
    fn non_monic_quartic_with_quadratic_factors() {
        // (2x² + 1)(x² + 3) = 2x⁴ + 7x² + 3
        let f = p(&[3, 0, 7, 0, 2]);
        assert_factors(&f, &[2, 2]);
        // (2x² + x + 1)(3x − 5)
        let g = p(&[1, 1, 2]).mul(&p(&[-5, 3]));
        assert_factors(&g, &[1, 2]);
        // (2x² + x + 3)(5x² − x + 1): both irreducible, non-monic recombination
        let h = p(&[3, 1, 2]).mul(&p(&[1, -1, 5]));
        assert_factors(&h, &[2, 2]);
    }

    #[test]
    fn higher_degree_products() {
        // (x² + x + 1)(x³ − x − 1)(x − 2)
        let f = p(&[1, 1, 1]).mul(&p(&[-1, -1, 0, 1])).mul(&p(&[-2, 1]));
        assert_factors(&f, &[1, 2, 3]);
        // (x⁴ + 1)(x² + 1): sextic with quartic factor
        let g = p(&[1, 0, 0, 0, 1]).mul(&p(&[1, 0, 1]));
        assert_factors(&g, &[2, 4]);
        // Φ₁₅ (degree 8) is irreducible.
        let c15 = crate::intpoly::cyclotomic(15);
        assert!(factor(&c15).is_irreducible());
        // x⁶ − 1 = Φ₁Φ₂Φ₃Φ₆
        let x6 = IntPolynomial::monomial(BigInt::one(), 6).sub(&IntPolynomial::one());
        assert_factors(&x6, &[1, 1, 2, 2]);
    }

    #[test]
    fn repeated_nonlinear_factors() {
        // (x² + x + 1)²(x² + 1)
        let f = p(&[1, 1, 1]).mul(&p(&[1, 1, 1])).mul(&p(&[1, 0, 1]));
        let fac = factor(&f);
        assert_eq!(fac.product(), f);
        assert!(fac
            .factors
            .iter()
            .any(|(g, e)| g == &p(&[1, 1, 1]) && *e == 2));
    }

    #[test]
    fn exhaustive_small_monic_quartics_against_direct_split_search() {
        // For every monic quartic with coefficients in [−2, 2] and non-zero
        // constant term, compare factor()'s "has a degree-2 factor or splits"
        // answer against a direct integer search for quadratic divisors.
        let rng = -2i64..=2;
        let mut checked = 0u32;
        for a in rng.clone() {
            for b in rng.clone() {
                for c in rng.clone() {
                    for d in rng.clone() {
                        if d == 0 {
                            continue;
                        }
                        let f = p(&[d, c, b, a, 1]);
                        if !f.is_squarefree() {
                            continue;
                        }
                        let fac = factor(&f);
                        assert_eq!(fac.product(), f);
                        let splits = fac.factors.len() > 1 || fac.factors[0].1 > 1;
                        let direct = has_rational_root_or_quadratic_divisor(&f);
                        assert_eq!(splits, direct, "disagreement on {f}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 400);
    }

    /// Direct search: does a monic quartic have a monic quadratic integer
    /// divisor (or a rational root)?
    fn has_rational_root_or_quadratic_divisor(f: &IntPolynomial) -> bool {
        if !f.rational_roots().is_empty() {
            return true;
        }
        let s = f.constant_term();
        for b in crate::arith::divisors_bigint(&s) {
            for b_signed in [b.clone(), -b] {
                if (&s % &b_signed).is_zero() {
                    let d = &s / &b_signed;
                    // x⁴+px³+qx²+rx+s = (x²+ax+b)(x²+cx+d):
                    // a+c = p, b+d+ac = q, ad+bc = r
                    let pq = f.coeff(3);
                    let q = f.coeff(2);
                    let r = f.coeff(1);
                    let ac = &q - &b_signed - &d;
                    // a, c are roots of t² − p t + ac
                    let disc = &pq * &pq - BigInt::from(4) * &ac;
                    if let Some(sq) = perfect_square_root(&disc) {
                        for sgn in [1i64, -1] {
                            let two_a = &pq + BigInt::from(sgn) * &sq;
                            if (&two_a % BigInt::from(2)).is_zero() {
                                let a_val = two_a / BigInt::from(2);
                                let c_val = &pq - &a_val;
                                if &a_val * &d + &b_signed * &c_val == r {
                                    return true;
                                }
                            }
                        }
                    }
                }
            }
        }
        false
    }
}
