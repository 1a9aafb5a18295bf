//! Machine-word classifiers for the census hot loops.
//!
//! The general machinery in [`crate::depend`] decides each polynomial with
//! exact big-integer arithmetic; at census scale (tens of millions of
//! inputs) that is far too slow. This module replicates the same decisions
//! for the shapes the sweeps actually visit — quadratics with any leading
//! coefficient, monic cubics, monic quartics — in `i64`/`i128` arithmetic,
//! falling back to the exact path only on rare sub-cases (repeated factors,
//! two quadratic factors over one field). The unit tests enforce agreement
//! with the general machinery exhaustively on small coefficient boxes.
//!
//! Degeneracy (a quotient of two distinct non-zero roots being a root of
//! unity) is decided by a fixed battery of resultants: for a square-free
//! `f` with `f(0) ≠ 0`, some root quotient is a primitive `m`-th root of
//! unity iff `Res_y(f(y), f(ζ_m y)) = 0` in `ℤ[ζ_m]`. Galois theory caps the
//! orders that can occur: quotient fields embed in the splitting field, so
//! `(ℤ/m)^*` must be a subquotient of a Galois group of degree ≤ 4, leaving
//! `m ∈ {2,3,4,6}` for cubics and `m ∈ {2,3,4,5,6,8,10,12}` for quartics.
//! Each resultant is screened first modulo a prime `p ≡ 1 (mod 2520)`, where
//! every relevant `ζ_m` has an integer image: a non-zero image certifies a
//! miss, and the rare survivors are confirmed exactly in `ℤ[ζ_m]`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use once_cell::sync::Lazy;

use crate::depend::{self, SearchParameters};
use crate::intpoly::IntPolynomial;

/// Heights beyond which the word-size paths hand back to the general
/// machinery. The quartic screen's unit-norm test grows like `H¹²`, so its
/// cap is tighter.
pub(crate) const MAX_FAST_HEIGHT: i64 = 2000;
pub(crate) const MAX_FAST_HEIGHT_QUARTIC: i64 = 1000;

/// Shared per-run context: a smallest-prime-factor table covering every
/// integer the classifiers need to factor, and the search parameters for the
/// rare exact fallbacks.
pub(crate) struct FastCtx<'a> {
    pub spf: &'a [u32],
    pub params: &'a SearchParameters,
}

/// Size a smallest-prime-factor table must have for a degree/height box:
/// rational roots of quadratics need `~4H`, the quartic path also factors
/// quadratic-field discriminants bounded by `(H+3)² + 4H`.
pub(crate) fn spf_limit_for(degree: usize, h: i64) -> usize {
    let h = h.max(1) as usize;
    match degree {
        4 => ((h + 4) * (h + 4) + 4 * h + 16).max(4 * h + 16),
        _ => 4 * h + 16,
    }
}

/// Smallest-prime-factor sieve: `spf[x]` is the least prime dividing `x`
/// (for `x ≥ 2`).
pub(crate) fn spf_table(limit: usize) -> Vec<u32> {
    let n = limit.max(4);
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Exact square root of a non-negative integer, if it is a perfect square.
fn exact_sqrt(x: i64) -> Option<i64> {
    if x < 0 {
        return None;
    }
    let mut r = (x as f64).sqrt() as i64;
    while r > 0 && r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    if r * r == x {
        Some(r)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// multiplicative dependence of rational values via prime-exponent rank
// ---------------------------------------------------------------------------

/// Accumulate the prime exponents of `x` (times `sign`) into `map`. Returns
/// `false` when `x` outgrows the table, signalling the exact fallback.
fn accumulate_exponents(mut x: u64, sign: i32, spf: &[u32], map: &mut Vec<(i64, i32)>) -> bool {
    while x > 1 {
        if (x as usize) >= spf.len() {
            return false;
        }
        let p = spf[x as usize] as u64;
        let mut e = 0i32;
        while x % p == 0 {
            x /= p;
            e += 1;
        }
        let key = p as i64;
        if let Some(slot) = map.iter_mut().find(|(q, _)| *q == key) {
            slot.1 += sign * e;
        } else {
            map.push((key, sign * e));
        }
    }
    true
}

/// Row rank over ℚ by fraction-free elimination; entries stay far below
/// `i128` range for the tiny exponent matrices seen here.
fn rank_of_rows(mut mat: Vec<Vec<i128>>) -> usize {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(rank, pivot);
        for r in (rank + 1)..rows {
            if mat[r][col] != 0 {
                let a = mat[rank][col];
                let b = mat[r][col];
                for c in col..cols {
                    mat[r][c] = mat[r][c] * a - mat[rank][c] * b;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Exact multiplicative dependence of non-zero rationals `num/den`:
/// dependent iff the prime-exponent vectors of the absolute values are
/// linearly dependent (a sign obstruction is always fixed by doubling).
pub(crate) fn values_dependent(values: &[(i64, i64)], spf: &[u32]) -> bool {
    let mut primes: Vec<i64> = Vec::new();
    let mut maps: Vec<Vec<(i64, i32)>> = Vec::with_capacity(values.len());
    for &(num, den) in values {
        debug_assert!(num != 0 && den != 0);
        let mut map = Vec::new();
        if !accumulate_exponents(num.unsigned_abs(), 1, spf, &mut map)
            || !accumulate_exponents(den.unsigned_abs(), -1, spf, &mut map)
        {
            return values_dependent_exact(values);
        }
        for &(p, e) in &map {
            if e != 0 && !primes.contains(&p) {
                primes.push(p);
            }
        }
        maps.push(map);
    }
    let rows: Vec<Vec<i128>> = maps
        .iter()
        .map(|map| {
            primes
                .iter()
                .map(|p| {
                    map.iter()
                        .find(|(q, _)| q == p)
                        .map_or(0, |&(_, e)| e as i128)
                })
                .collect()
        })
        .collect();
    rank_of_rows(rows) < values.len()
}

fn values_dependent_exact(values: &[(i64, i64)]) -> bool {
    let rats: Vec<BigRational> = values
        .iter()
        .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
        .collect();
    depend::rational_dependence(&rats)
        .expect("non-zero rational values admit an exact dependence decision")
        .is_dependent()
}

/// Positive divisors of `n > 0`, in no particular order.
fn push_divisors(n: u64, spf: &[u32], out: &mut Vec<i64>) {
    out.clear();
    out.push(1);
    let mut x = n;
    while x > 1 {
        debug_assert!((x as usize) < spf.len(), "divisor table too small");
        let p = spf[x as usize] as u64;
        let mut e = 0;
        while x % p == 0 {
            x /= p;
            e += 1;
        }
        let len = out.len();
        let mut pe = 1i64;
        for _ in 0..e {
            pe *= p as i64;
            for i in 0..len {
                out.push(out[i] * pe);
            }
        }
    }
}

/// Signed square-free kernel of `x ≠ 0`: the product of the primes dividing
/// `x` to an odd power, with the sign of `x`. Two quadratic discriminants
/// generate the same field iff their kernels agree.
fn squarefree_kernel(x: i64, spf: &[u32]) -> i64 {
    debug_assert!(x != 0);
    let mut v = x.unsigned_abs();
    let mut kernel = 1i64;
    while v > 1 {
        debug_assert!((v as usize) < spf.len(), "kernel table too small");
        let p = spf[v as usize] as u64;
        let mut e = 0u32;
        while v % p == 0 {
            v /= p;
            e += 1;
        }
        if e % 2 == 1 {
            kernel *= p as i64;
        }
    }
    if x < 0 {
        -kernel
    } else {
        kernel
    }
}

// ---------------------------------------------------------------------------
// cyclotomic integer arithmetic for the degeneracy battery
// ---------------------------------------------------------------------------

/// Element of `ℤ[ζ_m]` as coefficients of `1, ζ, ζ², ζ³` (first `d = φ(m)`
/// entries used).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Cyc([i128; 4]);

impl Cyc {
    const ZERO: Cyc = Cyc([0; 4]);

    fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    fn add(self, other: Cyc) -> Cyc {
        let mut out = [0; 4];
        for i in 0..4 {
            out[i] = self.0[i] + other.0[i];
        }
        Cyc(out)
    }

    fn sub(self, other: Cyc) -> Cyc {
        let mut out = [0; 4];
        for i in 0..4 {
            out[i] = self.0[i] - other.0[i];
        }
        Cyc(out)
    }

    fn scale(self, v: i128) -> Cyc {
        let mut out = [0; 4];
        for i in 0..4 {
            out[i] = self.0[i] * v;
        }
        Cyc(out)
    }
}

/// Multiplication structure of `ℤ[ζ_m] = ℤ[x]/Φ_m`: `fold[k]` expresses
/// `ζ^{d+k}` over the power basis.
struct CycRing {
    d: usize,
    fold: [[i128; 4]; 3],
}

impl CycRing {
    fn new(m: u32) -> CycRing {
        // x^d ≡ −(lower-order part of Φ_m).
        let (d, top): (usize, [i128; 4]) = match m {
            2 => (1, [-1, 0, 0, 0]),
            3 => (2, [-1, -1, 0, 0]),
            4 => (2, [-1, 0, 0, 0]),
            6 => (2, [-1, 1, 0, 0]),
            5 => (4, [-1, -1, -1, -1]),
            8 => (4, [-1, 0, 0, 0]),
            10 => (4, [-1, 1, -1, 1]),
            12 => (4, [-1, 0, 1, 0]),
            _ => unreachable!("order outside the degeneracy battery"),
        };
        let mut fold = [[0i128; 4]; 3];
        fold[0] = top;
        for k in 1..3 {
            // ζ^{d+k} = ζ·ζ^{d+k−1}: shift, then reduce the overflow term.
            let prev = fold[k - 1];
            let mut row = [0i128; 4];
            for j in 1..d {
                row[j] = prev[j - 1];
            }
            let carry = prev[d - 1];
            for j in 0..d {
                row[j] += carry * top[j];
            }
            fold[k] = row;
        }
        CycRing { d, fold }
    }

    fn mul(&self, a: Cyc, b: Cyc) -> Cyc {
        let d = self.d;
        let mut acc = [0i128; 7];
        for i in 0..d {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..d {
                acc[i + j] += a.0[i] * b.0[j];
            }
        }
        let mut out = [0i128; 4];
        out[..d].copy_from_slice(&acc[..d]);
        for idx in d..(2 * d - 1).max(d) {
            let c = acc[idx];
            if c != 0 {
                let row = self.fold[idx - d];
                for j in 0..d {
                    out[j] += c * row[j];
                }
            }
        }
        Cyc(out)
    }

    fn zeta_pow(&self, j: usize) -> Cyc {
        if j < self.d {
            let mut out = [0i128; 4];
            out[j] = 1;
            return Cyc(out);
        }
        let mut out = [0i128; 4];
        out[self.d - 1] = 1;
        let mut acc = Cyc(out);
        let mut zeta = [0i128; 4];
        if self.d == 1 {
            zeta[0] = self.fold[0][0];
        } else {
            zeta[1] = 1;
        }
        for _ in 0..(j - (self.d - 1)) {
            acc = self.mul(acc, Cyc(zeta));
        }
        acc
    }
}

/// `Res_y(f(y), f(ζ_m y)) = 0` in `ℤ[ζ_m]`, via a Bézout determinant. Both
/// polynomials have full degree (the leading coefficients are units times
/// `ζ` powers), so determinant vanishing is exactly resultant vanishing,
/// which — by Galois symmetry over the primitive `m`-th roots — holds iff
/// some quotient of roots of `f` is a primitive `m`-th root of unity.
fn exact_shared_ratio(f: &[i64], m: u32) -> bool {
    let ring = CycRing::new(m);
    let n = f.len() - 1;
    debug_assert!((3..=4).contains(&n));
    let mut g = [Cyc::ZERO; 5];
    for (j, slot) in g.iter_mut().enumerate().take(n + 1) {
        *slot = ring.zeta_pow(j).scale(f[j] as i128);
    }
    let coeff = |t: usize| -> i128 {
        if t <= n {
            f[t] as i128
        } else {
            0
        }
    };
    let gc = |t: usize| -> Cyc {
        if t <= n {
            g[t]
        } else {
            Cyc::ZERO
        }
    };
    let mut b = [[Cyc::ZERO; 4]; 4];
    for (i, row) in b.iter_mut().enumerate().take(n) {
        for (j, slot) in row.iter_mut().enumerate().take(n) {
            let mut acc = Cyc::ZERO;
            for t in 0..=i.min(j) {
                let s = i + j + 1 - t;
                acc = acc.add(gc(t).scale(coeff(s))).sub(gc(s).scale(coeff(t)));
            }
            *slot = acc;
        }
    }
    let det = if n == 3 {
        let m00 = ring.mul(b[1][1], b[2][2]).sub(ring.mul(b[1][2], b[2][1]));
        let m01 = ring.mul(b[1][0], b[2][2]).sub(ring.mul(b[1][2], b[2][0]));
        let m02 = ring.mul(b[1][0], b[2][1]).sub(ring.mul(b[1][1], b[2][0]));
        ring.mul(b[0][0], m00)
            .sub(ring.mul(b[0][1], m01))
            .add(ring.mul(b[0][2], m02))
    } else {
        // Laplace expansion along the first two rows.
        let top = |i: usize, j: usize| ring.mul(b[0][i], b[1][j]).sub(ring.mul(b[0][j], b[1][i]));
        let bot = |i: usize, j: usize| ring.mul(b[2][i], b[3][j]).sub(ring.mul(b[2][j], b[3][i]));
        ring.mul(top(0, 1), bot(2, 3))
            .sub(ring.mul(top(0, 2), bot(1, 3)))
            .add(ring.mul(top(0, 3), bot(1, 2)))
            .add(ring.mul(top(1, 2), bot(0, 3)))
            .sub(ring.mul(top(1, 3), bot(0, 2)))
            .add(ring.mul(top(2, 3), bot(0, 1)))
    };
    det.is_zero()
}

/// Screening prime: `2521 ≡ 1 (mod 2520)`, so `𝔽_p` holds a primitive
/// `m`-th root of unity for every order in the battery.
const SCREEN_P: u64 = 2521;

/// Integer images of `ζ_m` in `𝔽_p`, indexed by `m`.
static SCREEN_ROOTS: Lazy<[u64; 13]> = Lazy::new(|| {
    let p = SCREEN_P;
    let pow = |mut b: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut g = 2;
    loop {
        // 2520 = 2³·3²·5·7; g is primitive iff no proper power collapses.
        if [2, 3, 5, 7].iter().all(|&q| pow(g, 2520 / q) != 1) {
            break;
        }
        g += 1;
    }
    let mut roots = [0u64; 13];
    for m in 1..=12u64 {
        if 2520 % m == 0 {
            roots[m as usize] = pow(g, 2520 / m);
        }
    }
    roots
});

/// Modular image of the battery resultant. A non-zero value certifies the
/// exact resultant is non-zero; zero only flags a candidate.
fn shared_ratio_candidate_mod_p(f: &[i64], m: u32) -> bool {
    let p = SCREEN_P as i64;
    let n = f.len() - 1;
    let w = SCREEN_ROOTS[m as usize] as i64;
    let mut fb = [0i64; 5];
    let mut gb = [0i64; 5];
    let mut wp = 1i64;
    for j in 0..=n {
        fb[j] = f[j].rem_euclid(p);
        gb[j] = fb[j] * wp % p;
        wp = wp * w % p;
    }
    let mut b = [[0i64; 4]; 4];
    for (i, row) in b.iter_mut().enumerate().take(n) {
        for (j, slot) in row.iter_mut().enumerate().take(n) {
            let mut acc = 0i64;
            for t in 0..=i.min(j) {
                let s = i + j + 1 - t;
                let (fs, ft) = (if s <= n { fb[s] } else { 0 }, fb[t]);
                let (gs, gt) = (if s <= n { gb[s] } else { 0 }, gb[t]);
                acc = (acc + fs * gt - ft * gs).rem_euclid(p);
            }
            *slot = acc;
        }
    }
    let mulp = |a: i64, b: i64| a * b % p;
    let det = if n == 3 {
        let m00 = (mulp(b[1][1], b[2][2]) - mulp(b[1][2], b[2][1])).rem_euclid(p);
        let m01 = (mulp(b[1][0], b[2][2]) - mulp(b[1][2], b[2][0])).rem_euclid(p);
        let m02 = (mulp(b[1][0], b[2][1]) - mulp(b[1][1], b[2][0])).rem_euclid(p);
        (mulp(b[0][0], m00) - mulp(b[0][1], m01) + mulp(b[0][2], m02)).rem_euclid(p)
    } else {
        let top =
            |i: usize, j: usize| (mulp(b[0][i], b[1][j]) - mulp(b[0][j], b[1][i])).rem_euclid(p);
        let bot =
            |i: usize, j: usize| (mulp(b[2][i], b[3][j]) - mulp(b[2][j], b[3][i])).rem_euclid(p);
        (mulp(top(0, 1), bot(2, 3)) - mulp(top(0, 2), bot(1, 3))
            + mulp(top(0, 3), bot(1, 2))
            + mulp(top(1, 2), bot(0, 3))
            - mulp(top(1, 3), bot(0, 2))
            + mulp(top(2, 3), bot(0, 1)))
        .rem_euclid(p)
    };
    det == 0
}

fn shared_ratio(f: &[i64], m: u32) -> bool {
    shared_ratio_candidate_mod_p(f, m) && exact_shared_ratio(f, m)
}

/// Degeneracy of a square-free monic cubic with `a₀ ≠ 0`. A pair `±β` of
/// roots exists iff `f = (x+a₂)(x²+a₁)` with `a₁ ≠ 0`, i.e. `a₀ = a₁a₂`;
/// higher orders come from the resultant battery.
pub(crate) fn cubic_degenerate(a2: i64, a1: i64, a0: i64) -> bool {
    debug_assert!(a0 != 0);
    if (a0 as i128) == (a1 as i128) * (a2 as i128) {
        return true;
    }
    let f = [a0, a1, a2, 1];
    [3u32, 4, 6].iter().any(|&m| shared_ratio(&f, m))
}

/// Degeneracy of a square-free monic quartic with `a₀ ≠ 0`. Eliminating the
/// odd part shows a pair `±β` exists iff `a₁² − a₁a₂a₃ + a₀a₃² = 0` (which
/// degenerates to `a₁ = 0`, an even polynomial, when `a₃ = 0`); the
/// remaining orders come from the battery.
pub(crate) fn quartic_degenerate(a3: i64, a2: i64, a1: i64, a0: i64) -> bool {
    debug_assert!(a0 != 0);
    let (b3, b2, b1, b0) = (a3 as i128, a2 as i128, a1 as i128, a0 as i128);
    if b1 * b1 - b1 * b2 * b3 + b0 * b3 * b3 == 0 {
        return true;
    }
    let f = [a0, a1, a2, a3, 1];
    [3u32, 4, 6, 5, 8, 10, 12].iter().any(|&m| shared_ratio(&f, m))
}

/// Word-size replica of the quartic pairing screen: hits iff some quotient
/// of complementary root-pair products (or of two roots) is a root of unity
/// of order dividing 12. Evaluates the resolvent-cubic conditions
/// `A(t)² = t·B(t)²` at `t = c·a₀` for `c ∈ {0,…,4}` and the order-12 case
/// as a `ℤ[√3]` norm.
pub(crate) fn quartic_screen_hit(a3: i64, a2: i64, a1: i64, a0: i64) -> bool {
    let (a3, a2, a1, a0) = (a3 as i128, a2 as i128, a1 as i128, a0 as i128);
    let c2 = -a2;
    let c1 = a1 * a3 - 4 * a0;
    let c0 = 4 * a0 * a2 - a0 * a3 * a3 - a1 * a1;
    for c in 0..=4i128 {
        let t = c * a0;
        let av = c2 * t + c0;
        let bv = t + c1;
        if av * av == t * bv * bv {
            return true;
        }
    }
    // t = a₀(2 ± √3): N(A(t)² − t·B(t)²) = 0 over ℚ(√3).
    let z = (2 * a0, a0);
    let mul = |x: (i128, i128), y: (i128, i128)| (x.0 * y.0 + 3 * x.1 * y.1, x.0 * y.1 + x.1 * y.0);
    let a = (c2 * z.0 + c0, c2 * z.1);
    let b = (z.0 + c1, z.1);
    let aa = mul(a, a);
    let zbb = mul(z, mul(b, b));
    let t = (aa.0 - zbb.0, aa.1 - zbb.1);
    t.0 * t.0 == 3 * t.1 * t.1
}

// ---------------------------------------------------------------------------
// per-degree label computation
// ---------------------------------------------------------------------------

/// Exact class facts for one polynomial; every field is a certain boolean
/// (the fast paths never return "unknown").
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct FastLabels {
    /// Distinct non-zero roots multiplicatively dependent.
    pub dependent: bool,
    /// Irreducible over ℚ (content ignored).
    pub irreducible: bool,
    /// Some quotient of distinct non-zero roots is a root of unity.
    pub degenerate: bool,
    /// Has a rational root, i.e. a degree-1 divisor.
    pub has_linear: bool,
    /// Has a degree-2 divisor (meaningful for quartics).
    pub has_quadratic_divisor: bool,
    /// Divisible by `x−1` or `x+1`.
    pub pm_one_root: bool,
    /// `|a₀| = |a_n|`.
    pub unit_ends: bool,
}

/// Labels of `a₂x² + a₁x + a₀`, any non-zero leading coefficient.
pub(crate) fn quadratic_labels(ctx: &FastCtx, a2: i64, a1: i64, a0: i64) -> FastLabels {
    debug_assert!(a2 != 0);
    let mut out = FastLabels {
        pm_one_root: a2 + a1 + a0 == 0 || a2 - a1 + a0 == 0,
        unit_ends: a0.abs() == a2.abs(),
        ..FastLabels::default()
    };
    if a0 == 0 {
        out.has_linear = true;
        out.dependent = a1 != 0 && a1.abs() == a2.abs();
        return out;
    }
    let disc = a1 * a1 - 4 * a0 * a2;
    if disc == 0 {
        out.has_linear = true;
        out.dependent = a1.abs() == 2 * a2.abs();
        return out;
    }
    if let Some(s) = exact_sqrt(disc) {
        out.has_linear = true;
        let g1 = (-a1 + s).gcd(&(2 * a2));
        let g2 = (-a1 - s).gcd(&(2 * a2));
        let r1 = ((-a1 + s) / g1, 2 * a2 / g1);
        let r2 = ((-a1 - s) / g2, 2 * a2 / g2);
        out.dependent = values_dependent(&[r1, r2], ctx.spf);
        out.degenerate = a1 == 0;
        return out;
    }
    out.irreducible = true;
    let aa = (a1 as i128) * (a1 as i128);
    let pq = (a0 as i128) * (a2 as i128);
    let torsion = a1 == 0 || aa == pq || aa == 2 * pq || aa == 3 * pq;
    out.degenerate = torsion;
    out.dependent = torsion || out.unit_ends;
    out
}

fn eval_cubic(a2: i64, a1: i64, a0: i64, x: i64) -> i128 {
    let (a2, a1, a0, x) = (a2 as i128, a1 as i128, a0 as i128, x as i128);
    ((x + a2) * x + a1) * x + a0
}

fn eval_quartic(a3: i64, a2: i64, a1: i64, a0: i64, x: i64) -> i128 {
    let (a3, a2, a1, a0, x) = (a3 as i128, a2 as i128, a1 as i128, a0 as i128, x as i128);
    (((x + a3) * x + a2) * x + a1) * x + a0
}

fn cubic_disc(a2: i64, a1: i64, a0: i64) -> i128 {
    let (a2, a1, a0) = (a2 as i128, a1 as i128, a0 as i128);
    18 * a2 * a1 * a0 - 4 * a2 * a2 * a2 * a0 + a2 * a2 * a1 * a1
        - 4 * a1 * a1 * a1
        - 27 * a0 * a0
}

fn cubic_disc_i128(c2: i128, c1: i128, c0: i128) -> i128 {
    18 * c2 * c1 * c0 - 4 * c2 * c2 * c2 * c0 + c2 * c2 * c1 * c1 - 4 * c1 * c1 * c1
        - 27 * c0 * c0
}

/// Labels of the monic cubic `x³ + a₂x² + a₁x + a₀`. `full = false` skips
/// the dependence and degeneracy work (callers that only need the
/// divisor/root facts).
pub(crate) fn cubic_labels(ctx: &FastCtx, a2: i64, a1: i64, a0: i64, full: bool) -> FastLabels {
    let mut out = FastLabels {
        pm_one_root: 1 + a2 + a1 + a0 == 0 || -1 + a2 - a1 + a0 == 0,
        unit_ends: a0.abs() == 1,
        ..FastLabels::default()
    };
    if a0 == 0 {
        // Non-zero roots are those of the quadratic cofactor of x.
        let q = quadratic_labels(ctx, 1, a2, a1);
        out.dependent = full && q.dependent;
        out.degenerate = full && q.degenerate;
        out.has_linear = true;
        out.has_quadratic_divisor = true;
        return out;
    }
    let disc = cubic_disc(a2, a1, a0);
    let mut divisors = Vec::new();
    push_divisors(a0.unsigned_abs(), ctx.spf, &mut divisors);
    if disc == 0 {
        // Exactly one repeated rational root; it is an integer divisor of a₀.
        let mut r = None;
        'search: for &d in &divisors {
            for cand in [d, -d] {
                let deriv = 3 * (cand as i128) * (cand as i128)
                    + 2 * (a2 as i128) * (cand as i128)
                    + a1 as i128;
                if eval_cubic(a2, a1, a0, cand) == 0 && deriv == 0 {
                    r = Some(cand);
                    break 'search;
                }
            }
        }
        let r = r.expect("a monic cubic with vanishing discriminant has an integer double root");
        let s = -a2 - 2 * r;
        out.has_linear = true;
        out.has_quadratic_divisor = true;
        if s == r {
            out.dependent = full && r.abs() == 1;
        } else {
            out.dependent = full && values_dependent(&[(r, 1), (s, 1)], ctx.spf);
            out.degenerate = full && s == -r;
        }
        return out;
    }
    let mut roots = Vec::new();
    for &d in &divisors {
        for cand in [d, -d] {
            if eval_cubic(a2, a1, a0, cand) == 0 {
                roots.push(cand);
            }
        }
    }
    let degenerate = full && cubic_degenerate(a2, a1, a0);
    out.degenerate = degenerate;
    match roots.len() {
        0 => {
            out.irreducible = true;
            out.dependent = full && (out.unit_ends || degenerate);
        }
        1 => {
            let r = roots[0];
            let c = -a0 / r;
            out.has_linear = true;
            out.has_quadratic_divisor = true;
            out.dependent = full && (degenerate || values_dependent(&[(r, 1), (c, 1)], ctx.spf));
        }
        3 => {
            out.has_linear = true;
            out.has_quadratic_divisor = true;
            let vals: Vec<(i64, i64)> = roots.iter().map(|&r| (r, 1)).collect();
            out.dependent = full && values_dependent(&vals, ctx.spf);
        }
        _ => unreachable!("a square-free monic cubic has 0, 1, or 3 rational roots"),
    }
    out
}

/// Two-monic-quadratic factorization `(x²+px+q)(x²+rx+s)` of a monic
/// quartic, if one exists. Only called when the quartic has no rational
/// root, so both factors are irreducible.
fn two_quadratic_split(
    a3: i64,
    a2: i64,
    a1: i64,
    a0: i64,
    divisors: &[i64],
) -> Option<(i64, i64, i64, i64)> {
    for &d in divisors {
        for q in [d, -d] {
            let s = a0 / q;
            if s == q {
                // (x²+px+q)(x²+rx+q): p+r = a₃, q·a₃ = a₁, pr = a₂ − 2q.
                if q * a3 != a1 {
                    continue;
                }
                let dd = a3 * a3 - 4 * (a2 - 2 * q);
                if let Some(t) = exact_sqrt(dd) {
                    if (a3 + t) % 2 == 0 {
                        return Some(((a3 + t) / 2, q, (a3 - t) / 2, q));
                    }
                }
            } else {
                let num = a1 - q * a3;
                if num % (s - q) != 0 {
                    continue;
                }
                let p = num / (s - q);
                let r = a3 - p;
                if q + s + p * r == a2 {
                    return Some((p, q, r, s));
                }
            }
        }
    }
    None
}

/// Labels of the monic quartic `x⁴ + a₃x³ + a₂x² + a₁x + a₀`.
pub(crate) fn quartic_labels(
    ctx: &FastCtx,
    a3: i64,
    a2: i64,
    a1: i64,
    a0: i64,
    full: bool,
) -> FastLabels {
    let mut out = FastLabels {
        pm_one_root: 1 + a3 + a2 + a1 + a0 == 0 || 1 - a3 + a2 - a1 + a0 == 0,
        unit_ends: a0.abs() == 1,
        ..FastLabels::default()
    };
    if a0 == 0 {
        // Non-zero roots are those of the cubic cofactor of x; a degree-2
        // divisor exists iff x² divides or the cubic has a rational root.
        let c = cubic_labels(ctx, a3, a2, a1, full);
        out.dependent = c.dependent;
        out.degenerate = c.degenerate;
        out.has_linear = true;
        out.has_quadratic_divisor = c.has_linear;
        return out;
    }
    // The resolvent cubic has the same discriminant as the quartic.
    let c2 = -(a2 as i128);
    let c1 = (a1 as i128) * (a3 as i128) - 4 * (a0 as i128);
    let c0 = 4 * (a0 as i128) * (a2 as i128)
        - (a0 as i128) * (a3 as i128) * (a3 as i128)
        - (a1 as i128) * (a1 as i128);
    let disc = cubic_disc_i128(c2, c1, c0);
    if disc == 0 {
        // Repeated factor (rare): decide through the exact machinery. A
        // monic quartic with a repeated factor always has a degree-2
        // divisor: (x−r)² or the repeated quadratic itself.
        let f = IntPolynomial::from_i64(&[a0, a1, a2, a3, 1]);
        if full {
            let verdict = depend::multiplicative_dependence(&f, ctx.params)
                .expect("the dependence cascade accepts any non-zero polynomial");
            assert!(
                !verdict.is_unknown(),
                "polynomials with repeated factors reduce to degree ≤ 3, which is decided exactly"
            );
            out.dependent = verdict.is_dependent();
            out.degenerate = depend::is_degenerate(&f)
                .expect("degeneracy is decidable for degree ≥ 2");
        }
        let mut divisors = Vec::new();
        push_divisors(a0.unsigned_abs(), ctx.spf, &mut divisors);
        out.has_linear = divisors.iter().any(|&d| {
            eval_quartic(a3, a2, a1, a0, d) == 0 || eval_quartic(a3, a2, a1, a0, -d) == 0
        });
        out.has_quadratic_divisor = true;
        return out;
    }
    let mut divisors = Vec::new();
    push_divisors(a0.unsigned_abs(), ctx.spf, &mut divisors);
    let mut roots = Vec::new();
    for &d in &divisors {
        for cand in [d, -d] {
            if eval_quartic(a3, a2, a1, a0, cand) == 0 {
                roots.push(cand);
            }
        }
    }
    let degenerate = full && quartic_degenerate(a3, a2, a1, a0);
    out.degenerate = degenerate;
    match roots.len() {
        0 => {
            if let Some((p, q, r, s)) = two_quadratic_split(a3, a2, a1, a0, &divisors) {
                out.has_quadratic_divisor = true;
                out.dependent = full
                    && (degenerate || {
                        if values_dependent(&[(q, 1), (s, 1)], ctx.spf) {
                            true
                        } else if squarefree_kernel(p * p - 4 * q, ctx.spf)
                            != squarefree_kernel(r * r - 4 * s, ctx.spf)
                        {
                            // Distinct quadratic fields: no surviving relation.
                            false
                        } else {
                            // Same field — the one case the word-size path
                            // hands back (norm-one unit relation search).
                            let f = IntPolynomial::from_i64(&[a0, a1, a2, a3, 1]);
                            let verdict = depend::multiplicative_dependence(&f, ctx.params)
                                .expect("the dependence cascade accepts any non-zero polynomial");
                            assert!(
                                !verdict.is_unknown(),
                                "two-quadratic shapes are decided exactly"
                            );
                            verdict.is_dependent()
                        }
                    });
            } else {
                out.irreducible = true;
                out.dependent =
                    full && (out.unit_ends || degenerate || quartic_screen_hit(a3, a2, a1, a0));
            }
        }
        1 => {
            let r = roots[0];
            // Synthetic division by (x − r).
            let b2 = a3 + r;
            let b1 = a2 + r * b2;
            let b0 = a1 + r * b1;
            debug_assert_eq!(a0 as i128 + (r as i128) * (b0 as i128), 0);
            out.has_linear = true;
            out.dependent = full && (degenerate || values_dependent(&[(r, 1), (b0, 1)], ctx.spf));
        }
        2 => {
            let (r1, r2) = (roots[0], roots[1]);
            let b2 = a3 + r1;
            let b1 = a2 + r1 * b2;
            let u1 = b2 + r2;
            let u0 = b1 + r2 * u1;
            out.has_linear = true;
            out.has_quadratic_divisor = true;
            out.dependent = full
                && (degenerate
                    || values_dependent(&[(r1, 1), (r2, 1), (u0, 1)], ctx.spf));
        }
        4 => {
            out.has_linear = true;
            out.has_quadratic_divisor = true;
            let vals: Vec<(i64, i64)> = roots.iter().map(|&r| (r, 1)).collect();
            out.dependent = full && values_dependent(&vals, ctx.spf);
        }
        _ => unreachable!("a square-free monic quartic has 0, 1, 2, or 4 rational roots"),
    }
    out
}

// ---------------------------------------------------------------------------
// factored enumeration of quartics with a quadratic divisor
// ---------------------------------------------------------------------------

/// Count of monic quartics `x⁴ + a₃x³ + a₂x² + a₁x + a₀` of height ≤ `h`
/// with a fixed `a₃` that admit a degree-2 divisor, by enumerating the
/// factorizations `(x²+px+q)(x²+rx+s)` instead of scanning coefficients.
///
/// Every factored quartic with `a₀ ≠ 0` satisfies `|q|+|s| ≤ H+1` (both
/// non-zero, product ≤ H), hence `|pr| ≤ 2H+1` and the factor order can be
/// chosen with `|p| ≤ √(2H+1)`. Quartics with `a₀ = 0` are counted
/// separately: they need `x²` to divide (`a₁ = 0`) or an integer root of
/// the cubic cofactor. Duplicates are removed with hash sets.
pub(crate) fn count_f2_slab(
    a3: i64,
    h: i64,
    set: &mut HashSet<(i32, i32, i32)>,
    set_zero: &mut HashSet<(i32, i32)>,
) -> u64 {
    set.clear();
    set_zero.clear();
    let p_bound = {
        let mut r = ((2 * h + 1) as f64).sqrt() as i64 + 1;
        while r * r > 2 * h + 1 {
            r -= 1;
        }
        r
    };
    for p in -p_bound..=p_bound {
        let r = a3 - p;
        for q in -h..=h {
            if q == 0 {
                continue;
            }
            // |qs| ≤ h
            let cap = h / q.abs();
            let mut lo = -cap;
            let mut hi = cap;
            // |q + s + pr| ≤ h
            let mid = q + p * r;
            lo = lo.max(-h - mid);
            hi = hi.min(h - mid);
            // |ps + qr| ≤ h
            if p == 0 {
                if (q * r).abs() > h {
                    continue;
                }
            } else {
                let (lo_n, hi_n) = (-h - q * r, h - q * r);
                let (a, b) = if p > 0 {
                    (div_ceil(lo_n, p), div_floor(hi_n, p))
                } else {
                    (div_ceil(hi_n, p), div_floor(lo_n, p))
                };
                lo = lo.max(a);
                hi = hi.min(b);
            }
            for s in lo..=hi {
                if s == 0 {
                    continue;
                }
                let a2 = q + s + p * r;
                let a1 = p * s + q * r;
                let a0 = q * s;
                debug_assert!(a2.abs() <= h && a1.abs() <= h && a0.abs() <= h && a0 != 0);
                set.insert((a2 as i32, a1 as i32, a0 as i32));
            }
        }
    }
    // a₀ = 0, a₁ ≠ 0: x·(cubic), degree-2 divisor iff the cubic has an
    // integer root d; then a₁ = −d(d² + a₃d + a₂).
    for d in -(h + 1)..=(h + 1) {
        if d == 0 {
            continue;
        }
        let cap = h / d.abs();
        let base = -(d * d + a3 * d);
        let lo = (base - cap).max(-h);
        let hi = (base + cap).min(h);
        for a2 in lo..=hi {
            let a1 = -d * (d * d + a3 * d + a2);
            if a1 != 0 && a1.abs() <= h {
                set_zero.insert((a2 as i32, a1 as i32));
            }
        }
    }
    // a₀ = 0, a₁ = 0: x² divides; every a₂ qualifies.
    set.len() as u64 + set_zero.len() as u64 + (2 * h + 1) as u64
}

fn div_floor(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize;
    use num_traits::Signed;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn test_ctx(h: i64) -> (Vec<u32>, SearchParameters) {
        let spf = spf_table(spf_limit_for(4, h));
        let params = SearchParameters::for_degree_height(4, h as f64);
        (spf, params)
    }

    fn oracle_labels(coeffs: &[i64]) -> FastLabels {
        let f = IntPolynomial::from_i64(coeffs);
        let params = SearchParameters::for_polynomial(&f);
        let verdict = depend::multiplicative_dependence(&f, &params).unwrap();
        assert!(!verdict.is_unknown(), "oracle hit an unknown on {f}");
        let fac = factorize::factor(&f);
        let degrees: Vec<usize> = fac
            .factors
            .iter()
            .flat_map(|(g, e)| std::iter::repeat(g.degree()).take(*e as usize))
            .collect();
        let mut sums = vec![false; coeffs.len()];
        sums[0] = true;
        for &d in &degrees {
            for k in (d..sums.len()).rev() {
                if sums[k - d] {
                    sums[k] = true;
                }
            }
        }
        let one = BigInt::from(1);
        let neg = BigInt::from(-1);
        FastLabels {
            dependent: verdict.is_dependent(),
            irreducible: fac.factors.len() == 1 && fac.factors[0].1 == 1,
            degenerate: depend::is_degenerate(&f).unwrap(),
            has_linear: degrees.contains(&1),
            has_quadratic_divisor: sums.get(2).copied().unwrap_or(false),
            pm_one_root: f.evaluate(&one) == BigInt::from(0) || f.evaluate(&neg) == BigInt::from(0),
            unit_ends: f.constant_term().abs() == f.leading().abs(),
        }
    }

    #[test]
    fn quadratic_labels_match_the_exact_machinery_exhaustively() {
        let (spf, params) = test_ctx(4);
        let ctx = FastCtx {
            spf: &spf,
            params: &params,
        };
        for a2 in -4i64..=4 {
            if a2 == 0 {
                continue;
            }
            for a1 in -4i64..=4 {
                for a0 in -4i64..=4 {
                    let fast = quadratic_labels(&ctx, a2, a1, a0);
                    let oracle = oracle_labels(&[a0, a1, a2]);
                    let fast_cmp = FastLabels {
                        has_quadratic_divisor: oracle.has_quadratic_divisor,
                        ..fast
                    };
                    assert_eq!(fast_cmp, oracle, "mismatch at {a2}x²+{a1}x+{a0}");
                }
            }
        }
    }

    #[test]
    fn cubic_labels_match_the_exact_machinery_exhaustively() {
        let (spf, params) = test_ctx(4);
        let ctx = FastCtx {
            spf: &spf,
            params: &params,
        };
        for a2 in -4i64..=4 {
            for a1 in -4i64..=4 {
                for a0 in -4i64..=4 {
                    let fast = cubic_labels(&ctx, a2, a1, a0, true);
                    let oracle = oracle_labels(&[a0, a1, a2, 1]);
                    assert_eq!(fast, oracle, "mismatch at x³+{a2}x²+{a1}x+{a0}");
                }
            }
        }
    }

    #[test]
    fn quartic_labels_match_the_exact_machinery_exhaustively() {
        let (spf, params) = test_ctx(2);
        let ctx = FastCtx {
            spf: &spf,
            params: &params,
        };
        for a3 in -2i64..=2 {
            for a2 in -2i64..=2 {
                for a1 in -2i64..=2 {
                    for a0 in -2i64..=2 {
                        let fast = quartic_labels(&ctx, a3, a2, a1, a0, true);
                        let oracle = oracle_labels(&[a0, a1, a2, a3, 1]);
                        assert_eq!(fast, oracle, "mismatch at x⁴+{a3}x³+{a2}x²+{a1}x+{a0}");
                    }
                }
            }
        }
    }

    #[test]
    fn quartic_labels_match_the_exact_machinery_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (spf, params) = test_ctx(20);
        let ctx = FastCtx {
            spf: &spf,
            params: &params,
        };
        for _ in 0..300 {
            let a3 = rng.gen_range(-20i64..=20);
            let a2 = rng.gen_range(-20i64..=20);
            let a1 = rng.gen_range(-20i64..=20);
            let a0 = rng.gen_range(-20i64..=20);
            let fast = quartic_labels(&ctx, a3, a2, a1, a0, true);
            let oracle = oracle_labels(&[a0, a1, a2, a3, 1]);
            assert_eq!(fast, oracle, "mismatch at x⁴+{a3}x³+{a2}x²+{a1}x+{a0}");
        }
    }

    #[test]
    fn degeneracy_battery_matches_the_ratio_polynomial_test() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..250 {
            let a2 = rng.gen_range(-12i64..=12);
            let a1 = rng.gen_range(-12i64..=12);
            let a0 = rng.gen_range(-12i64..=12);
            if a0 == 0 {
                continue;
            }
            let f = IntPolynomial::from_i64(&[a0, a1, a2, 1]);
            if !f.is_squarefree() {
                continue;
            }
            assert_eq!(
                cubic_degenerate(a2, a1, a0),
                depend::is_degenerate(&f).unwrap(),
                "cubic battery mismatch at x³+{a2}x²+{a1}x+{a0}"
            );
        }
        for _ in 0..250 {
            let a3 = rng.gen_range(-10i64..=10);
            let a2 = rng.gen_range(-10i64..=10);
            let a1 = rng.gen_range(-10i64..=10);
            let a0 = rng.gen_range(-10i64..=10);
            if a0 == 0 {
                continue;
            }
            let f = IntPolynomial::from_i64(&[a0, a1, a2, a3, 1]);
            if !f.is_squarefree() {
                continue;
            }
            assert_eq!(
                quartic_degenerate(a3, a2, a1, a0),
                depend::is_degenerate(&f).unwrap(),
                "quartic battery mismatch at x⁴+{a3}x³+{a2}x²+{a1}x+{a0}"
            );
        }
    }

    #[test]
    fn degeneracy_battery_hits_the_subtle_orders() {
        // Ratio of order 5 through the square of the 4-cycle: irreducible,
        // constant term not a unit, all pairing tests miss.
        assert!(quartic_degenerate(4, 16, 24, 16));
        // 16·Φ₅(−x/2): roots −2ζ₅^j, ratios of order 5.
        assert!(quartic_degenerate(-2, 4, -8, 16));
        // x⁴ − 2: ratios of order 4.
        assert!(quartic_degenerate(0, 0, 0, -2));
        // x⁴ + 1: ratios of order 4 among the primitive 8th roots.
        assert!(quartic_degenerate(0, 0, 0, 1));
        // Φ₅ itself.
        assert!(quartic_degenerate(1, 1, 1, 1));
        // x⁴ + x + 1 is not degenerate.
        assert!(!quartic_degenerate(0, 0, 1, 1));
        // x³ − 2: ratios of order 3.
        assert!(cubic_degenerate(0, 0, -2));
        // x³ − x − 1 (the minimal Pisot cubic) is not degenerate.
        assert!(!cubic_degenerate(0, -1, -1));
    }

    #[test]
    fn screen_replica_matches_the_big_integer_screen() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut checked = 0;
        for _ in 0..500 {
            let a3 = rng.gen_range(-30i64..=30);
            let a2 = rng.gen_range(-30i64..=30);
            let a1 = rng.gen_range(-30i64..=30);
            let a0 = rng.gen_range(-30i64..=30);
            if a0 == 0 {
                continue;
            }
            let f = IntPolynomial::from_i64(&[a0, a1, a2, a3, 1]);
            assert_eq!(
                quartic_screen_hit(a3, a2, a1, a0),
                depend::quartic_pairing_screen(&f),
                "screen mismatch at x⁴+{a3}x³+{a2}x²+{a1}x+{a0}"
            );
            checked += 1;
        }
        assert!(checked > 400);
    }

    #[test]
    fn factored_count_agrees_with_the_coefficient_scan() {
        let (spf, params) = test_ctx(6);
        let ctx = FastCtx {
            spf: &spf,
            params: &params,
        };
        let mut set = HashSet::new();
        let mut set_zero = HashSet::new();
        for h in [2i64, 4, 6] {
            for a3 in -h..=h {
                let mut scan = 0u64;
                for a2 in -h..=h {
                    for a1 in -h..=h {
                        for a0 in -h..=h {
                            if quartic_labels(&ctx, a3, a2, a1, a0, false).has_quadratic_divisor {
                                scan += 1;
                            }
                        }
                    }
                }
                let fast = count_f2_slab(a3, h, &mut set, &mut set_zero);
                assert_eq!(fast, scan, "F(2) count mismatch at a3 = {a3}, h = {h}");
            }
        }
    }

    #[test]
    fn exponent_rank_agrees_with_exact_rational_dependence() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let spf = spf_table(200);
        for _ in 0..300 {
            let m = rng.gen_range(1..=4usize);
            let values: Vec<(i64, i64)> = (0..m)
                .map(|_| {
                    let n = loop {
                        let v = rng.gen_range(-40i64..=40);
                        if v != 0 {
                            break v;
                        }
                    };
                    let d = rng.gen_range(1i64..=40);
                    (n, d)
                })
                .collect();
            assert_eq!(
                values_dependent(&values, &spf),
                values_dependent_exact(&values),
                "rank mismatch on {values:?}"
            );
        }
    }

    #[test]
    fn resolvent_discriminant_matches_the_quartic() {
        // (x−1)(x−2)(x−3)(x−4): resolvent (y−14)(y−11)(y−10), both
        // discriminants 144.
        let c2 = -(35i128);
        let c1 = (-50i128) * (-10) - 4 * 24;
        let c0 = 4 * 24 * 35 - 24 * 100 - 2500;
        assert_eq!(cubic_disc_i128(c2, c1, c0), 144);
    }
}
