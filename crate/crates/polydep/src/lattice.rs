//! Exact lattice reduction and integer-relation candidates.
//!
//! The LLL reduction here is exact (`BigInt` basis, `BigRational`
//! Gram–Schmidt data, caller-supplied Lovász parameter), so reduction never
//! produces a wrong basis — only possibly a less orthogonal one. Relation
//! finding embeds real enclosures into a lattice the usual way: candidates
//! coming out of it are *heuristic* and must be verified by the caller; this
//! module never claims a relation holds.

use crate::interval::RInt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The customary Lovász parameter 99/100 (close to the strongest 1).
pub fn default_delta() -> BigRational {
    BigRational::new(BigInt::from(99), BigInt::from(100))
}

/// In-place exact LLL reduction of the row basis (rows must be linearly
/// independent). `delta` is the Lovász parameter, required in (1/4, 1).
pub fn lll_reduce(basis: &mut [Vec<BigInt>], delta: &BigRational) {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    assert!(
        *delta > quarter && *delta < BigRational::one(),
        "Lovász parameter must lie in (1/4, 1)"
    );
    let n = basis.len();
    if n <= 1 {
        return;
    }
    let dim = basis[0].len();
    assert!(basis.iter().all(|r| r.len() == dim));

    // Gram–Schmidt data: mu[i][j] for j < i, and squared norms of b*_i.
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bstar2 = vec![BigRational::zero(); n];
    let gso = |basis: &[Vec<BigInt>],
               mu: &mut Vec<Vec<BigRational>>,
               bstar2: &mut Vec<BigRational>| {
        let n = basis.len();
        let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut v: Vec<BigRational> = basis[i]
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            for j in 0..i {
                let d = dot_ri(&basis[i], &bstar[j]);
                let m = if bstar2[j].is_zero() {
                    BigRational::zero()
                } else {
                    &d / &bstar2[j]
                };
                for (vk, bk) in v.iter_mut().zip(&bstar[j]) {
                    *vk -= &m * bk;
                }
                mu[i][j] = m;
            }
            bstar2[i] = dot_rr(&v, &v);
            assert!(!bstar2[i].is_zero(), "LLL input rows must be independent");
            bstar.push(v);
        }
    };
    gso(basis, &mut mu, &mut bstar2);

    let d = delta.clone();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut k = 1usize;
    while k < n {
        // Size-reduce row k against rows k-1 .. 0.
        for j in (0..k).rev() {
            let q = round_rational(&mu[k][j]);
            if !q.is_zero() {
                let (head, tail) = basis.split_at_mut(k);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= &q * y;
                }
                let qr = BigRational::from_integer(q);
                for i in 0..j {
                    let adj = &qr * &mu[j][i];
                    mu[k][i] -= adj;
                }
                mu[k][j] -= qr;
            }
        }
        debug_assert!(mu[k][..k].iter().all(|m| m.abs() <= half));
        // Lovász condition.
        let m = mu[k][k - 1].clone();
        let lhs = &bstar2[k];
        let rhs = (&d - &m * &m) * &bstar2[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            for j in 0..k.saturating_sub(1) {
                let t = mu[k][j].clone();
                mu[k][j] = mu[k - 1][j].clone();
                mu[k - 1][j] = t;
            }
            let b_new = &bstar2[k] + &m * &m * &bstar2[k - 1];
            let mu_new = &m * &bstar2[k - 1] / &b_new;
            bstar2[k] = &bstar2[k - 1] * &bstar2[k] / &b_new;
            bstar2[k - 1] = b_new;
            mu[k][k - 1] = mu_new.clone();
            for i in k + 1..n {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                mu[i][k - 1] = &t + &mu_new * &mu[i][k];
            }
            k = k.max(2) - 1;
        }
    }
}

fn dot_ri(a: &[BigInt], b: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += BigRational::from_integer(x.clone()) * y;
    }
    acc
}

fn dot_rr(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Nearest integer (ties toward even are unnecessary here; away from zero).
fn round_rational(r: &BigRational) -> BigInt {
    r.round().to_integer()
}

fn norm2(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x * x).sum()
}

/// `round(2^s · mid(x))` as an integer.
fn scaled_mid(x: &RInt, scale_bits: u32) -> BigInt {
    let mid = x.lo().add(x.hi()).mul_pow2(-1);
    let r = mid.to_rational() * BigRational::from_integer(BigInt::one() << scale_bits as usize);
    r.round().to_integer()
}

/// Candidate integer relations `Σ kᵢ·xᵢ ≈ 0` for the real enclosures `xs`,
/// ordered by vector length. Every candidate is heuristic and must be
/// verified exactly by the caller.
pub fn relation_candidates(
    xs: &[RInt],
    scale_bits: u32,
    count: usize,
    delta: &BigRational,
) -> Vec<Vec<BigInt>> {
    let m = xs.len();
    if m == 0 {
        return Vec::new();
    }
    let mut basis: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            let mut row = vec![BigInt::zero(); m + 1];
            row[i] = BigInt::one();
            row[m] = scaled_mid(&xs[i], scale_bits);
            row
        })
        .collect();
    lll_reduce(&mut basis, delta);
    basis.sort_by_key(norm2_key);
    basis
        .into_iter()
        .map(|row| row[..m].to_vec())
        .filter(|k| k.iter().any(|x| !x.is_zero()))
        .take(count)
        .collect()
}

/// First candidate relation, if any.
pub fn find_relation(xs: &[RInt], scale_bits: u32, delta: &BigRational) -> Option<Vec<BigInt>> {
    relation_candidates(xs, scale_bits, 1, delta).into_iter().next()
}

/// Candidate integer vectors `k` with `Σ kᵢ·reᵢ ≈ 0` and `Σ kᵢ·imᵢ ≈ 0`
/// simultaneously (two homogeneous constraints, no auxiliary column).
/// Heuristic; caller verifies.
pub fn relation_candidates_2d(
    res: &[RInt],
    ims: &[RInt],
    scale_bits: u32,
    count: usize,
    delta: &BigRational,
) -> Vec<Vec<BigInt>> {
    let m = res.len();
    assert_eq!(m, ims.len());
    if m == 0 {
        return Vec::new();
    }
    let mut basis: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            let mut row = vec![BigInt::zero(); m + 2];
            row[i] = BigInt::one();
            row[m] = scaled_mid(&res[i], scale_bits);
            row[m + 1] = scaled_mid(&ims[i], scale_bits);
            row
        })
        .collect();
    lll_reduce(&mut basis, delta);
    basis.sort_by_key(norm2_key);
    basis
        .into_iter()
        .map(|row| row[..m].to_vec())
        .filter(|k| k.iter().any(|x| !x.is_zero()))
        .take(count)
        .collect()
}

/// Candidate solutions of the simultaneous system
/// `Σ kᵢ·reᵢ ≈ 0` and `Σ kᵢ·imᵢ + j·aux ≈ 0` with `k ∈ ℤᵐ`, `j ∈ ℤ`.
/// Returns `(k, j)` pairs ordered by length; heuristic, caller verifies.
pub fn simultaneous_candidates(
    res: &[RInt],
    ims: &[RInt],
    aux: &RInt,
    scale_bits: u32,
    count: usize,
    delta: &BigRational,
) -> Vec<(Vec<BigInt>, BigInt)> {
    let m = res.len();
    assert_eq!(m, ims.len());
    if m == 0 {
        return Vec::new();
    }
    let cols = m + 3;
    let mut basis: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            let mut row = vec![BigInt::zero(); cols];
            row[i] = BigInt::one();
            row[m + 1] = scaled_mid(&res[i], scale_bits);
            row[m + 2] = scaled_mid(&ims[i], scale_bits);
            row
        })
        .collect();
    let mut aux_row = vec![BigInt::zero(); cols];
    aux_row[m] = BigInt::one();
    aux_row[m + 2] = scaled_mid(aux, scale_bits);
    basis.push(aux_row);
    lll_reduce(&mut basis, delta);
    basis.sort_by_key(norm2_key);
    basis
        .into_iter()
        .filter(|row| row[..m].iter().any(|x| !x.is_zero()))
        .map(|row| (row[..m].to_vec(), row[m].clone()))
        .take(count)
        .collect()
}

fn norm2_key(v: &Vec<BigInt>) -> BigInt {
    norm2(v)
}
