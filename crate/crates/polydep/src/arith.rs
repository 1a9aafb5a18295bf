//! Integer utilities: deterministic factorization, primality testing, sieves,
//! perfect-power detection and exact integer kernels.
//!
//! Everything here is deterministic; the Pollard–Brent fallback walks a fixed
//! parameter sequence instead of drawing random seeds, so repeated runs always
//! take the same path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Deterministic Miller–Rabin, exact for all `u64`.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// have no composite pseudoprime below 3.3·10^24.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse mod a prime, via Fermat.
#[inline]
pub fn mod_inv_u64(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    mod_pow_u64(a, p - 2, p)
}

/// Pollard–Brent with a fixed, deterministic sweep of polynomial offsets.
fn pollard_brent_u64(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime_u64(n) && n % 2 == 1);
    for c in 1u64.. {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 24 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
    }
    unreachable!()
}

#[inline]
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Deterministic complete factorization of a `u64`, smallest primes first.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n <= 1 {
        return out;
    }
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    // Wheel over residues coprime to 30.
    let inc = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p.saturating_mul(p) <= n && p < 1 << 20 {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += inc[i];
        i = (i + 1) % 8;
    }
    if n > 1 {
        if is_prime_u64(n) {
            out.push((n, 1));
        } else {
            // Composite survivor of trial division: split recursively.
            let mut stack = vec![n];
            let mut primes: Vec<u64> = Vec::new();
            while let Some(m) = stack.pop() {
                if is_prime_u64(m) {
                    primes.push(m);
                } else {
                    let d = pollard_brent_u64(m);
                    stack.push(d);
                    stack.push(m / d);
                }
            }
            primes.sort_unstable();
            let mut i = 0;
            while i < primes.len() {
                let mut j = i;
                while j < primes.len() && primes[j] == primes[i] {
                    j += 1;
                }
                out.push((primes[i], (j - i) as u32));
                i = j;
            }
        }
    }
    out.sort_unstable();
    out
}

/// Complete factorization of `|n|` for a `BigInt`; delegates to the `u64`
/// path when possible and otherwise strips small primes before Pollard–Brent
/// on the arbitrary-precision remainder.
pub fn factor_bigint(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    if n <= BigInt::one() {
        return Vec::new();
    }
    if let Some(small) = n.to_u64() {
        return factor_u64(small)
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect();
    }
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in 2u64..=100_000 {
        if p > 5 && !is_prime_u64(p) {
            continue;
        }
        let pb = BigInt::from(p);
        if (&n % &pb).is_zero() {
            let mut e = 0;
            while (&n % &pb).is_zero() {
                n = &n / &pb;
                e += 1;
            }
            out.push((pb, e));
        }
        if let Some(small) = n.to_u64() {
            for (q, e) in factor_u64(small) {
                out.push((BigInt::from(q), e));
            }
            out.sort();
            return out;
        }
    }
    // Remainder is large; fall back to BigInt Pollard–Brent.
    let mut stack = vec![n];
    let mut primes: Vec<BigInt> = Vec::new();
    while let Some(m) = stack.pop() {
        if let Some(small) = m.to_u64() {
            for (q, e) in factor_u64(small) {
                for _ in 0..e {
                    primes.push(BigInt::from(q));
                }
            }
            continue;
        }
        if is_probable_prime_bigint(&m) {
            primes.push(m);
            continue;
        }
        let d = pollard_brent_bigint(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    primes.sort();
    let mut i = 0;
    while i < primes.len() {
        let mut j = i;
        while j < primes.len() && primes[j] == primes[i] {
            j += 1;
        }
        out.push((primes[i].clone(), (j - i) as u32));
        i = j;
    }
    out.sort();
    out
}

/// Miller–Rabin with a fixed witness list; probabilistic only beyond 64 bits,
/// where a false positive would require a pseudoprime to 40 fixed bases.
fn is_probable_prime_bigint(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigInt::one();
    let two = BigInt::from(2);
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d /= 2;
        s += 1;
    }
    'witness: for a in 2u64..42 {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent_bigint(n: &BigInt) -> BigInt {
    for c in 1u64.. {
        let cb = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &cb) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut count = 0u64;
        loop {
            x = f(&x);
            y = f(&f(&y));
            let d = (&x - &y).abs().gcd(n);
            count += 1;
            if !d.is_one() {
                if &d != n {
                    return d;
                }
                break;
            }
            if count > 1 << 22 {
                break;
            }
        }
    }
    unreachable!()
}

/// All positive divisors of `|n|`, sorted ascending; empty for `n = 0`.
pub fn divisors_bigint(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return Vec::new();
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in factor_bigint(n) {
        let prior = out.clone();
        let mut power = BigInt::one();
        for _ in 0..e {
            power = &power * &p;
            out.extend(prior.iter().map(|d| d * &power));
        }
    }
    out.sort();
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factor_u64(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Exact determinant of a square integer matrix by Bareiss fraction-free
/// elimination (all intermediate divisions are exact).
pub fn determinant_bigint(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    for row in &m {
        assert_eq!(row.len(), n, "determinant of non-square matrix");
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Smallest-prime-factor sieve for `0..=limit`; entry 0/1 are 0.
pub fn spf_table(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Exact integer square root test.
pub fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn perfect_square_root_i64(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt() as i64;
    for c in r.saturating_sub(2)..=r + 2 {
        if c >= 0 && c * c == n {
            return Some(c);
        }
    }
    None
}

/// Exponent map of a non-zero rational: `|q| = ∏ p^{e_p}` with `e_p ∈ ℤ`.
/// Returned sorted by prime. The sign is reported separately as `true` for
/// negative.
pub fn rational_exponents(q: &BigRational) -> (bool, Vec<(BigInt, i64)>) {
    assert!(!q.is_zero(), "rational_exponents of zero");
    let negative = q.is_negative();
    let mut map: Vec<(BigInt, i64)> = Vec::new();
    for (p, e) in factor_bigint(q.numer()) {
        map.push((p, e as i64));
    }
    for (p, e) in factor_bigint(q.denom()) {
        match map.iter_mut().find(|(q, _)| *q == p) {
            Some((_, exp)) => *exp -= e as i64,
            None => map.push((p, -(e as i64))),
        }
    }
    map.retain(|(_, e)| *e != 0);
    map.sort();
    (negative, map)
}

/// Basis of the integer kernel `{k ∈ ℤ^m : M·k = 0}` of an integer matrix
/// given in row-major order (`rows × m`). Vectors are primitive and the basis
/// is produced by rational elimination with deterministic pivot choice.
pub fn integer_kernel(rows: &[Vec<BigInt>], m: usize) -> Vec<Vec<BigInt>> {
    let n = rows.len();
    // Rational row echelon form with column pivots.
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), m);
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut pivot_col: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..m {
        let Some(pr) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = a[rank][col].recip();
        for c in col..m {
            let v = &a[rank][c] * &inv;
            a[rank][c] = v;
        }
        for r in 0..n {
            if r != rank && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..m {
                    let v = &a[r][c] - &factor * &a[rank][c];
                    a[r][c] = v;
                }
            }
        }
        pivot_col.push(col);
        rank += 1;
        if rank == n {
            break;
        }
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m];
        for &c in &pivot_col {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..m {
        if is_pivot[free] {
            continue;
        }
        let mut vec_q = vec![BigRational::zero(); m];
        vec_q[free] = BigRational::one();
        for (r, &pc) in pivot_col.iter().enumerate() {
            vec_q[pc] = -a[r][free].clone();
        }
        // Clear denominators and make primitive.
        let mut lcm = BigInt::one();
        for v in &vec_q {
            lcm = lcm.lcm(v.denom());
        }
        let mut ints: Vec<BigInt> = vec_q
            .iter()
            .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if !g.is_zero() && !g.is_one() {
            for v in &mut ints {
                *v = &*v / &g;
            }
        }
        basis.push(ints);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn factor_roundtrip_u64() {
        for n in [1u64, 2, 12, 97, 1 << 32, 600851475143, 999999999989] {
            let f = factor_u64(n);
            let back: u64 = f.iter().map(|(p, e)| p.pow(*e)).product();
            if n == 1 {
                assert!(f.is_empty());
            } else {
                assert_eq!(back, n);
                assert!(f.iter().all(|(p, _)| is_prime_u64(*p)));
            }
        }
    }

    #[test]
    fn factor_bigint_matches_u64() {
        let n = BigInt::from(2u64 * 3 * 3 * 1_000_003);
        let f = factor_bigint(&n);
        assert_eq!(
            f,
            vec![
                (BigInt::from(2), 1),
                (BigInt::from(3), 2),
                (BigInt::from(1_000_003), 1)
            ]
        );
    }

    #[test]
    fn spf_basics() {
        let t = spf_table(30);
        assert_eq!(t[2], 2);
        assert_eq!(t[9], 3);
        assert_eq!(t[29], 29);
        assert_eq!(t[30], 2);
    }

    #[test]
    fn rational_exponent_maps() {
        let q = BigRational::new(BigInt::from(-8), BigInt::from(18));
        // -8/18 = -(2^2 / 3^2)
        let (neg, map) = rational_exponents(&q);
        assert!(neg);
        assert_eq!(map, vec![(BigInt::from(2), 2), (BigInt::from(3), -2)]);
    }

    #[test]
    fn totient_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
        assert_eq!(euler_phi(360), 96);
    }

    #[test]
    fn determinant_small_cases() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect()
        };
        assert_eq!(determinant_bigint(&m(&[&[5]])), BigInt::from(5));
        assert_eq!(
            determinant_bigint(&m(&[&[1, 2], &[3, 4]])),
            BigInt::from(-2)
        );
        assert_eq!(
            determinant_bigint(&m(&[&[0, 1, 2], &[1, 0, 3], &[4, 5, 0]])),
            BigInt::from(22)
        );
        assert_eq!(
            determinant_bigint(&m(&[&[1, 2], &[2, 4]])),
            BigInt::zero()
        );
    }

    #[test]
    fn kernel_of_proportional_columns() {
        // Columns (2) and (4) as exponent vectors of 4 and 16 over prime 2:
        // kernel of [2 4] is generated by (2, -1).
        let rows = vec![vec![BigInt::from(2), BigInt::from(4)]];
        let k = integer_kernel(&rows, 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(v[0] == BigInt::from(2) && v[1] == BigInt::from(-1)
            || v[0] == BigInt::from(-2) && v[1] == BigInt::from(1));
    }

    #[test]
    fn kernel_trivial_when_independent() {
        // 2 and 3 are multiplicatively independent: matrix [[1,0],[0,1]].
        let rows = vec![
            vec![BigInt::one(), BigInt::zero()],
            vec![BigInt::zero(), BigInt::one()],
        ];
        assert!(integer_kernel(&rows, 2).is_empty());
    }
}
