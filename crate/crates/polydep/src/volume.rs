//! Exact rational volume of the symmetric convex body `|xᵢ| ≤ 1`
//! (`i = 1,…,n−1`), `|Σxᵢ| ≤ 1`, via the piecewise-polynomial density of a
//! sum of independent uniforms computed by exact convolution.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A continuous piecewise polynomial with rational breakpoints, zero outside
/// its support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    /// Strictly increasing; one more entry than `pieces`.
    breakpoints: Vec<BigRational>,
    /// Coefficients in ascending degree order, one polynomial per interval.
    pieces: Vec<Vec<BigRational>>,
}

fn poly_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Coefficients of `p(x + s)`.
fn poly_shift(p: &[BigRational], s: &BigRational) -> Vec<BigRational> {
    // Horner on (x + s): acc ← acc·(x + s) + c.
    let mut acc: Vec<BigRational> = Vec::with_capacity(p.len());
    for c in p.iter().rev() {
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] += a;
            next[i] += a * s;
        }
        if next.is_empty() {
            next.push(BigRational::zero());
        }
        next[0] += c;
        acc = next;
    }
    if acc.is_empty() {
        acc.push(BigRational::zero());
    }
    acc
}

fn poly_antiderivative(p: &[BigRational]) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(p.len() + 1);
    out.push(BigRational::zero());
    for (i, c) in p.iter().enumerate() {
        out.push(c / BigRational::from(BigInt::from(i as i64 + 1)));
    }
    out
}

impl PiecewisePolynomial {
    /// Builds the function and asserts exact continuity at every interior
    /// breakpoint.
    fn new(breakpoints: Vec<BigRational>, pieces: Vec<Vec<BigRational>>) -> PiecewisePolynomial {
        assert_eq!(breakpoints.len(), pieces.len() + 1);
        assert!(breakpoints.windows(2).all(|w| w[0] < w[1]));
        for i in 0..pieces.len().saturating_sub(1) {
            let b = &breakpoints[i + 1];
            assert_eq!(
                poly_eval(&pieces[i], b),
                poly_eval(&pieces[i + 1], b),
                "discontinuity at breakpoint {b}"
            );
        }
        PiecewisePolynomial { breakpoints, pieces }
    }

    pub fn support(&self) -> (&BigRational, &BigRational) {
        (
            self.breakpoints.first().expect("non-empty support"),
            self.breakpoints.last().expect("non-empty support"),
        )
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    /// Degree of the highest-degree piece.
    pub fn degree(&self) -> usize {
        self.pieces
            .iter()
            .map(|p| p.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }

    /// Index of the piece whose closed interval contains `x`, if any.
    fn piece_index(&self, x: &BigRational) -> Option<usize> {
        if x < &self.breakpoints[0] || x > self.breakpoints.last().unwrap() {
            return None;
        }
        let mut i = match self.breakpoints.binary_search_by(|b| b.cmp(x)) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        if i == self.pieces.len() {
            i -= 1;
        }
        Some(i)
    }

    /// Exact value at `x` (zero outside the support; breakpoints are
    /// unambiguous by continuity).
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        match self.piece_index(x) {
            Some(i) => poly_eval(&self.pieces[i], x),
            None => BigRational::zero(),
        }
    }

    /// Exact integral over the whole support.
    pub fn integral(&self) -> BigRational {
        self.integrate(&self.breakpoints[0].clone(), &self.breakpoints.last().unwrap().clone())
    }

    /// Exact integral over `[lo, hi]` (clamped to the support).
    pub fn integrate(&self, lo: &BigRational, hi: &BigRational) -> BigRational {
        if hi <= lo {
            return BigRational::zero();
        }
        let a = lo.clone().max(self.breakpoints[0].clone());
        let b = hi.clone().min(self.breakpoints.last().unwrap().clone());
        if b <= a {
            return BigRational::zero();
        }
        let mut total = BigRational::zero();
        for (i, piece) in self.pieces.iter().enumerate() {
            let left = a.clone().max(self.breakpoints[i].clone());
            let right = b.clone().min(self.breakpoints[i + 1].clone());
            if right > left {
                let anti = poly_antiderivative(piece);
                total += poly_eval(&anti, &right) - poly_eval(&anti, &left);
            }
        }
        total
    }

    /// Cumulative integral from the left end of the support up to each
    /// breakpoint.
    fn cumulative(&self) -> Vec<BigRational> {
        let mut acc = BigRational::zero();
        let mut out = vec![BigRational::zero()];
        for (i, piece) in self.pieces.iter().enumerate() {
            let anti = poly_antiderivative(piece);
            acc += poly_eval(&anti, &self.breakpoints[i + 1]) - poly_eval(&anti, &self.breakpoints[i]);
            out.push(acc.clone());
        }
        out
    }

    /// Exact convolution with the box density `1/2` on `[−1, 1]`:
    /// `h(x) = (F(x+1) − F(x−1)) / 2` with `F` the antiderivative extended by
    /// constants outside the support.
    fn convolve_unit_box(&self) -> PiecewisePolynomial {
        let one = BigRational::one();
        let mut cuts: Vec<BigRational> = Vec::new();
        for b in &self.breakpoints {
            cuts.push(b - &one);
            cuts.push(b + &one);
        }
        cuts.sort();
        cuts.dedup();
        let cumulative = self.cumulative();
        let total = cumulative.last().unwrap().clone();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        // F(x + s) on an interval whose interior avoids shifted breakpoints,
        // as a polynomial in x.
        let shifted_antiderivative = |mid: &BigRational, s: &BigRational| -> Vec<BigRational> {
            let u = mid + s;
            if u <= self.breakpoints[0] {
                return vec![BigRational::zero()];
            }
            if u >= *self.breakpoints.last().unwrap() {
                return vec![total.clone()];
            }
            let i = self.piece_index(&u).expect("inside the support");
            let anti = poly_antiderivative(&self.pieces[i]);
            // F(y) = C_i + A_i(y) − A_i(b_i) for y in piece i; substitute
            // y = x + s.
            let mut shifted = poly_shift(&anti, s);
            shifted[0] += &cumulative[i] - poly_eval(&anti, &self.breakpoints[i]);
            shifted
        };
        let mut pieces = Vec::with_capacity(cuts.len() - 1);
        let two = BigRational::from(BigInt::from(2));
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) / &two;
            let upper = shifted_antiderivative(&mid, &one);
            let lower = shifted_antiderivative(&mid, &(-one.clone()));
            let n = upper.len().max(lower.len());
            let mut piece = vec![BigRational::zero(); n];
            for (i, c) in upper.into_iter().enumerate() {
                piece[i] += c;
            }
            for (i, c) in lower.into_iter().enumerate() {
                piece[i] -= c;
            }
            for c in piece.iter_mut() {
                *c *= &half;
            }
            while piece.len() > 1 && piece.last().unwrap().is_zero() {
                piece.pop();
            }
            pieces.push(piece);
        }
        PiecewisePolynomial::new(cuts, pieces)
    }
}

/// Exact density of the sum of `m` independent uniforms on `[−1, 1]`:
/// support `[−m, m]`, total mass 1, built by iterated exact convolution.
pub fn uniform_sum_density(m: u32) -> Result<PiecewisePolynomial> {
    if m == 0 {
        return Err(Error::InvalidInput("need at least one uniform".into()));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut density = PiecewisePolynomial::new(
        vec![
            BigRational::from(BigInt::from(-1)),
            BigRational::from(BigInt::one()),
        ],
        vec![vec![half]],
    );
    for _ in 1..m {
        density = density.convolve_unit_box();
    }
    Ok(density)
}

/// Exact volume `ν_n` of the body `|xᵢ| ≤ 1` (`i = 1,…,n−1`), `|Σxᵢ| ≤ 1`:
/// the cube slab probability `P(|Σ| ≤ 1)` times the cube volume `2^{n−1}`.
pub fn nu(n: u32) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidInput("volume is defined for n at least 2".into()));
    }
    let density = uniform_sum_density(n - 1)?;
    let one = BigRational::one();
    let mass = density.integrate(&(-one.clone()), &one);
    Ok(mass * BigRational::from(BigInt::from(2).pow(n - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn one_uniform_is_the_box() {
        let d = uniform_sum_density(1).unwrap();
        assert_eq!(d.support(), (&rat(-1, 1), &rat(1, 1)));
        assert_eq!(d.evaluate(&rat(0, 1)), rat(1, 2));
        assert_eq!(d.evaluate(&rat(1, 2)), rat(1, 2));
        assert_eq!(d.evaluate(&rat(3, 2)), rat(0, 1));
        assert_eq!(d.integral(), rat(1, 1));
    }

    #[test]
    fn two_uniforms_make_the_triangle() {
        let d = uniform_sum_density(2).unwrap();
        assert_eq!(d.support(), (&rat(-2, 1), &rat(2, 1)));
        assert_eq!(d.evaluate(&rat(0, 1)), rat(1, 2));
        assert_eq!(d.evaluate(&rat(1, 1)), rat(1, 4));
        assert_eq!(d.evaluate(&rat(-1, 1)), rat(1, 4));
        assert_eq!(d.evaluate(&rat(2, 1)), rat(0, 1));
        assert_eq!(d.integral(), rat(1, 1));
        assert_eq!(d.degree(), 1);
    }

    #[test]
    fn three_uniforms_peak_at_three_eighths() {
        let d = uniform_sum_density(3).unwrap();
        assert_eq!(d.support(), (&rat(-3, 1), &rat(3, 1)));
        assert_eq!(d.evaluate(&rat(0, 1)), rat(3, 8));
        assert_eq!(d.integral(), rat(1, 1));
        assert_eq!(d.degree(), 2);
    }

    #[test]
    fn zero_uniforms_is_invalid() {
        assert!(uniform_sum_density(0).is_err());
        assert!(nu(1).is_err());
        assert!(nu(0).is_err());
    }

    #[test]
    fn densities_integrate_to_one_and_are_symmetric() {
        for m in 1..=8u32 {
            let d = uniform_sum_density(m).unwrap();
            assert_eq!(d.integral(), rat(1, 1), "mass of the {m}-fold sum");
            // Symmetry at breakpoints and at midpoints of each piece.
            let mut probes: Vec<BigRational> = d.breakpoints().to_vec();
            for w in d.breakpoints().windows(2) {
                probes.push((&w[0] + &w[1]) / rat(2, 1));
            }
            for x in probes {
                assert_eq!(d.evaluate(&x), d.evaluate(&(-x.clone())), "asymmetry at {x}");
            }
        }
    }

    #[test]
    fn small_volumes_match_known_values() {
        assert_eq!(nu(2).unwrap(), rat(2, 1));
        assert_eq!(nu(3).unwrap(), rat(3, 1));
        assert_eq!(nu(4).unwrap(), rat(16, 3));
    }

    #[test]
    fn volume_sanity_bounds_and_monotonicity() {
        let mut previous_ratio: Option<BigRational> = None;
        for n in 2..=8u32 {
            let v = nu(n).unwrap();
            assert!(v > rat(0, 1));
            assert!(v <= BigRational::from(BigInt::from(2).pow(n)));
            let ratio = v / BigRational::from(BigInt::from(2).pow(n - 1));
            if let Some(prev) = previous_ratio {
                assert!(ratio <= prev, "slab probability must not increase with n");
            }
            previous_ratio = Some(ratio);
        }
    }

    #[test]
    fn monte_carlo_agrees_with_exact_volumes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let samples = 1_000_000u64;
        for n in 2..=8usize {
            let exact = nu(n as u32).unwrap();
            let p_exact = {
                let q = exact / BigRational::from(BigInt::from(2).pow(n as u32 - 1));
                q.numer().to_string().parse::<f64>().unwrap()
                    / q.denom().to_string().parse::<f64>().unwrap()
            };
            let mut hits = 0u64;
            for _ in 0..samples {
                let mut sum = 0.0f64;
                for _ in 0..n - 1 {
                    sum += rng.gen_range(-1.0f64..1.0);
                }
                if sum.abs() <= 1.0 {
                    hits += 1;
                }
            }
            let p_hat = hits as f64 / samples as f64;
            let sigma = (p_exact * (1.0 - p_exact) / samples as f64).sqrt();
            assert!(
                (p_hat - p_exact).abs() <= 4.0 * sigma,
                "n = {n}: estimate {p_hat} vs exact {p_exact} (sigma {sigma})"
            );
        }
    }
}
