//! Rigorous real intervals and complex rectangles over dyadic endpoints.
//!
//! Every operation rounds outward, so an interval that starts as an enclosure
//! of a real number stays one through any chain of operations. Transcendental
//! functions (`ln`, `atan`, `atan2`, the cached constants π and ln 2) carry
//! explicit series tail bounds; the working precision only controls how tight
//! the result is, never whether it is correct.

use crate::dyadic::{Dyadic, Rounding};
use num_bigint::BigInt;
use num_rational::BigRational;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Closed real interval `[lo, hi]` with dyadic endpoints.
#[derive(Debug, Clone)]
pub struct RInt {
    lo: Dyadic,
    hi: Dyadic,
}

impl RInt {
    pub fn from_endpoints(lo: Dyadic, hi: Dyadic) -> RInt {
        assert!(lo.le(&hi), "interval endpoints out of order");
        RInt { lo, hi }
    }

    pub fn point(v: Dyadic) -> RInt {
        RInt { lo: v.clone(), hi: v }
    }

    pub fn zero() -> RInt {
        RInt::point(Dyadic::zero())
    }

    pub fn from_i64(v: i64) -> RInt {
        RInt::point(Dyadic::from_i64(v))
    }

    pub fn from_bigint(v: &BigInt) -> RInt {
        RInt::point(Dyadic::from_bigint(v))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> RInt {
        RInt {
            lo: Dyadic::from_rational(q, prec, Rounding::Down),
            hi: Dyadic::from_rational(q, prec, Rounding::Up),
        }
    }

    /// Ball `[c − r, c + r]`.
    pub fn ball(c: &Dyadic, r: &Dyadic) -> RInt {
        assert!(r.sign() >= 0);
        RInt { lo: c.sub(r), hi: c.add(r) }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() <= 0 && self.hi.sign() >= 0
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        self.lo.le(v) && v.le(&self.hi)
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo.sign() > 0
    }

    pub fn strictly_negative(&self) -> bool {
        self.hi.sign() < 0
    }

    pub fn intersects(&self, other: &RInt) -> bool {
        self.lo.le(&other.hi) && other.lo.le(&self.hi)
    }

    pub fn round(&self, prec: u32) -> RInt {
        RInt {
            lo: self.lo.round(prec, Rounding::Down),
            hi: self.hi.round(prec, Rounding::Up),
        }
    }

    pub fn neg(&self) -> RInt {
        RInt { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn add(&self, rhs: &RInt, prec: u32) -> RInt {
        RInt {
            lo: self.lo.add(&rhs.lo).round(prec, Rounding::Down),
            hi: self.hi.add(&rhs.hi).round(prec, Rounding::Up),
        }
    }

    pub fn sub(&self, rhs: &RInt, prec: u32) -> RInt {
        self.add(&rhs.neg(), prec)
    }

    pub fn mul(&self, rhs: &RInt, prec: u32) -> RInt {
        let products = [
            self.lo.mul(&rhs.lo),
            self.lo.mul(&rhs.hi),
            self.hi.mul(&rhs.lo),
            self.hi.mul(&rhs.hi),
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            lo = lo.min(p);
            hi = hi.max(p);
        }
        RInt {
            lo: lo.round(prec, Rounding::Down),
            hi: hi.round(prec, Rounding::Up),
        }
    }

    /// Tighter than `mul(self, self)`: respects the sign structure.
    pub fn square(&self, prec: u32) -> RInt {
        let (lo, hi) = if self.lo.sign() >= 0 {
            (self.lo.mul(&self.lo), self.hi.mul(&self.hi))
        } else if self.hi.sign() <= 0 {
            (self.hi.mul(&self.hi), self.lo.mul(&self.lo))
        } else {
            let m = self.lo.abs().max(&self.hi.abs());
            (Dyadic::zero(), m.mul(&m))
        };
        RInt {
            lo: lo.round(prec, Rounding::Down),
            hi: hi.round(prec, Rounding::Up),
        }
    }

    pub fn abs(&self) -> RInt {
        if self.lo.sign() >= 0 {
            self.clone()
        } else if self.hi.sign() <= 0 {
            self.neg()
        } else {
            RInt {
                lo: Dyadic::zero(),
                hi: self.lo.abs().max(&self.hi.abs()),
            }
        }
    }

    pub fn recip(&self, prec: u32) -> RInt {
        assert!(!self.contains_zero(), "interval reciprocal across zero");
        let one = Dyadic::one();
        RInt {
            lo: one.div(&self.hi, prec, Rounding::Down),
            hi: one.div(&self.lo, prec, Rounding::Up),
        }
    }

    pub fn div(&self, rhs: &RInt, prec: u32) -> RInt {
        assert!(!rhs.contains_zero(), "interval division across zero");
        let cand = |a: &Dyadic, b: &Dyadic, dir: Rounding| a.div(b, prec + 2, dir);
        let lows = [
            cand(&self.lo, &rhs.lo, Rounding::Down),
            cand(&self.lo, &rhs.hi, Rounding::Down),
            cand(&self.hi, &rhs.lo, Rounding::Down),
            cand(&self.hi, &rhs.hi, Rounding::Down),
        ];
        let highs = [
            cand(&self.lo, &rhs.lo, Rounding::Up),
            cand(&self.lo, &rhs.hi, Rounding::Up),
            cand(&self.hi, &rhs.lo, Rounding::Up),
            cand(&self.hi, &rhs.hi, Rounding::Up),
        ];
        let mut lo = lows[0].clone();
        for c in &lows[1..] {
            lo = lo.min(c);
        }
        let mut hi = highs[0].clone();
        for c in &highs[1..] {
            hi = hi.max(c);
        }
        RInt {
            lo: lo.round(prec, Rounding::Down),
            hi: hi.round(prec, Rounding::Up),
        }
    }

    pub fn sqrt(&self, prec: u32) -> RInt {
        assert!(self.lo.sign() >= 0, "interval sqrt of negative range");
        RInt {
            lo: self.lo.sqrt(prec, Rounding::Down),
            hi: self.hi.sqrt(prec, Rounding::Up),
        }
    }

    pub fn mul_pow2(&self, k: i64) -> RInt {
        RInt { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    /// Integer power by binary exponentiation (non-negative exponent).
    pub fn powi(&self, mut n: u64, prec: u32) -> RInt {
        let mut acc = RInt::from_i64(1);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            n >>= 1;
            if n > 0 {
                base = base.square(prec);
            }
        }
        acc
    }

    /// Natural logarithm; requires `lo > 0`. Monotonicity gives the enclosure
    /// from rigorous point evaluations at the endpoints.
    pub fn ln(&self, prec: u32) -> RInt {
        assert!(self.strictly_positive(), "interval ln of non-positive range");
        let wp = prec + 64;
        let lo = ln_point(&self.lo, wp);
        let hi = ln_point(&self.hi, wp);
        RInt { lo: lo.lo, hi: hi.hi }.round(prec)
    }

    /// Arctangent; monotone, so endpoint evaluation is exact in spirit.
    pub fn atan(&self, prec: u32) -> RInt {
        let wp = prec + 64;
        let lo = atan_point(&self.lo, wp);
        let hi = atan_point(&self.hi, wp);
        RInt { lo: lo.lo, hi: hi.hi }.round(prec)
    }

    pub fn to_f64_mid(&self) -> f64 {
        self.mid().to_f64()
    }
}

/// Principal-branch `atan2(y, x)` over intervals, with values in `(−π, π]`.
/// Returns `None` when the rectangle cannot be placed in a branch-safe region
/// (it meets both the closed left half-axis and its complement); callers
/// refine their inputs and retry.
pub fn atan2(y: &RInt, x: &RInt, prec: u32) -> Option<RInt> {
    let wp = prec + 32;
    if x.strictly_positive() {
        return Some(y.div(x, wp).atan(wp).round(prec));
    }
    if y.strictly_positive() {
        // atan2 = π/2 − atan(x/y), valid for all x when y > 0.
        let half_pi = pi(wp).mul_pow2(-1);
        return Some(half_pi.sub(&x.div(y, wp).atan(wp), wp).round(prec));
    }
    if y.strictly_negative() {
        let half_pi = pi(wp).mul_pow2(-1);
        return Some(half_pi.neg().sub(&x.div(y, wp).atan(wp), wp).round(prec));
    }
    // x ≤ 0 possible and y straddles zero: the principal branch jumps here.
    None
}

/// Complex rectangle `re + i·im`.
#[derive(Debug, Clone)]
pub struct CInt {
    pub re: RInt,
    pub im: RInt,
}

impl CInt {
    pub fn new(re: RInt, im: RInt) -> CInt {
        CInt { re, im }
    }

    pub fn from_real(re: RInt) -> CInt {
        CInt { re, im: RInt::zero() }
    }

    pub fn point(re: Dyadic, im: Dyadic) -> CInt {
        CInt { re: RInt::point(re), im: RInt::point(im) }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn conj(&self) -> CInt {
        CInt { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> CInt {
        CInt { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, rhs: &CInt, prec: u32) -> CInt {
        CInt {
            re: self.re.add(&rhs.re, prec),
            im: self.im.add(&rhs.im, prec),
        }
    }

    pub fn sub(&self, rhs: &CInt, prec: u32) -> CInt {
        CInt {
            re: self.re.sub(&rhs.re, prec),
            im: self.im.sub(&rhs.im, prec),
        }
    }

    pub fn mul(&self, rhs: &CInt, prec: u32) -> CInt {
        CInt {
            re: self.re.mul(&rhs.re, prec).sub(&self.im.mul(&rhs.im, prec), prec),
            im: self.re.mul(&rhs.im, prec).add(&self.im.mul(&rhs.re, prec), prec),
        }
    }

    pub fn square(&self, prec: u32) -> CInt {
        CInt {
            re: self.re.square(prec).sub(&self.im.square(prec), prec),
            im: self.re.mul(&self.im, prec).mul_pow2(1),
        }
    }

    pub fn scale(&self, s: &RInt, prec: u32) -> CInt {
        CInt { re: self.re.mul(s, prec), im: self.im.mul(s, prec) }
    }

    pub fn abs2(&self, prec: u32) -> RInt {
        self.re.square(prec).add(&self.im.square(prec), prec)
    }

    pub fn abs(&self, prec: u32) -> RInt {
        self.abs2(prec + 2).sqrt(prec)
    }

    pub fn recip(&self, prec: u32) -> CInt {
        let d = self.abs2(prec + 8);
        self.conj().scale(&d.recip(prec + 8), prec)
    }

    pub fn div(&self, rhs: &CInt, prec: u32) -> CInt {
        self.mul(&rhs.recip(prec + 8), prec)
    }

    pub fn powi(&self, mut n: u64, prec: u32) -> CInt {
        let mut acc = CInt::from_real(RInt::from_i64(1));
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            n >>= 1;
            if n > 0 {
                base = base.square(prec);
            }
        }
        acc
    }

    /// `ln |z|` computed as `ln(re² + im²)/2`, avoiding the square root.
    pub fn ln_abs(&self, prec: u32) -> RInt {
        self.abs2(prec + 16).ln(prec + 8).mul_pow2(-1).round(prec)
    }

    /// Principal argument, when branch-safe at this precision.
    pub fn arg(&self, prec: u32) -> Option<RInt> {
        atan2(&self.im, &self.re, prec)
    }

    pub fn intersects(&self, other: &CInt) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }
}

// ---------------------------------------------------------------------------
// Transcendental cores.
// ---------------------------------------------------------------------------

/// Sum `Σ_{k=0..K} (±1)^k t^{2k+1}/(2k+1)` plus a rigorous tail enclosure.
///
/// Preconditions: `|t| ≤ 2^e_u` with `e_u ≤ -1`. The truncation error of both
/// the alternating (atan) and the positive (atanh) series is then bounded by
/// `2^{e_u (2K+3)}`: for the alternating series by the first omitted term, and
/// for atanh by the geometric bound `u^{2K+3}/(2K+3) · 1/(1−u²) ≤ u^{2K+3}`.
fn odd_power_series(t: &RInt, e_u: i64, alternating: bool, prec: u32) -> RInt {
    assert!(e_u <= -1);
    let wp = prec + 32;
    let needed = prec as i64 + 4;
    let k_max = {
        // smallest K with (2K+3)·(−e_u) ≥ needed
        let per = -e_u;
        let mut k = 0i64;
        while (2 * k + 3) * per < needed {
            k += 1;
        }
        k as u64
    };
    let t2 = t.square(wp);
    let mut power = t.clone();
    let mut acc = t.clone();
    for k in 1..=k_max {
        power = power.mul(&t2, wp);
        let term = power.div(&RInt::from_i64(2 * k as i64 + 1), wp);
        acc = if alternating && k % 2 == 1 {
            acc.sub(&term, wp)
        } else {
            acc.add(&term, wp)
        };
    }
    // Enlarging the tail is always sound; clamping keeps exponent arithmetic
    // sane when t is exactly (or nearly) zero.
    let tail_exp = e_u
        .saturating_mul(2 * k_max as i64 + 3)
        .max(-(wp as i64) - 64);
    let tail_mag = Dyadic::one().mul_pow2(tail_exp);
    acc.add(&RInt::ball(&Dyadic::zero(), &tail_mag), wp)
}

/// Power-of-two exponent `e` with `|t| ≤ 2^e`, from the wider endpoint.
fn pow2_upper_exponent(t: &RInt) -> i64 {
    let m = t.lo().abs().max(&t.hi().abs());
    if m.is_zero() {
        return i64::MIN / 4;
    }
    let (_, hi) = m.log2_abs_bounds();
    hi
}

/// Rigorous enclosure of `atan(x)` for a dyadic point.
fn atan_point(x: &Dyadic, prec: u32) -> RInt {
    if x.is_zero() {
        return RInt::zero();
    }
    if x.sign() < 0 {
        return atan_point(&x.neg(), prec).neg();
    }
    let wp = prec + 32;
    if Dyadic::one().lt(x) {
        // atan(x) = π/2 − atan(1/x) for x > 0.
        let inv = RInt::point(Dyadic::one()).div(&RInt::point(x.clone()), wp);
        let inner = atan_unit(&inv, wp);
        return pi(wp).mul_pow2(-1).sub(&inner, wp).round(prec);
    }
    atan_unit(&RInt::point(x.clone()), wp).round(prec)
}

/// `atan` of an interval inside `[0, 1]` (small outward slack tolerated),
/// by repeated half-angle reduction to `|t| ≤ 1/4` and the odd power series.
fn atan_unit(t: &RInt, prec: u32) -> RInt {
    let wp = prec + 32;
    let mut r = t.clone();
    let mut halvings = 0i64;
    loop {
        let e_u = pow2_upper_exponent(&r);
        if e_u <= -2 {
            let series = odd_power_series(&r, e_u, true, wp);
            return series.mul_pow2(halvings);
        }
        assert!(halvings < 8, "atan argument reduction failed to converge");
        // atan(t) = 2·atan(t / (1 + √(1+t²)))
        let denom = RInt::from_i64(1).add(
            &RInt::from_i64(1).add(&r.square(wp), wp).sqrt(wp),
            wp,
        );
        r = r.div(&denom, wp);
        halvings += 1;
    }
}

/// Rigorous enclosure of `ln(x)` for a dyadic point `x > 0`.
///
/// Normalizes `x = m · 2^e` with `m ∈ [3/4, 3/2)`, so `t = (m−1)/(m+1)` has
/// `|t| ≤ 1/5 < 1/4`, and uses `ln m = 2·atanh(t)`.
fn ln_point(x: &Dyadic, prec: u32) -> RInt {
    assert!(x.sign() > 0);
    let wp = prec + 32;
    let bits = x.mantissa_bits() as i64;
    let (lo_log, _) = x.log2_abs_bounds();
    let exp_part = lo_log - (bits - 1); // x = man · 2^exp_part, man ∈ [2^{b−1}, 2^b)
    // m0 = man · 2^{−(b−1)} ∈ [1, 2)
    let m0 = x.mul_pow2(-(exp_part + bits - 1));
    let three_halves = Dyadic::new(BigInt::from(3), -1);
    let (m, e) = if three_halves.le(&m0) {
        (m0.mul_pow2(-1), exp_part + bits)
    } else {
        (m0, exp_part + bits - 1)
    };
    let mi = RInt::point(m);
    let num = mi.sub(&RInt::from_i64(1), wp);
    let den = mi.add(&RInt::from_i64(1), wp);
    let t = num.div(&den, wp);
    // m ∈ [3/4, 3/2) forces |t| ≤ 1/5, so the bound is always ≤ 2^-2.
    let e_u = pow2_upper_exponent(&t);
    assert!(e_u <= -2, "ln normalization out of range");
    let atanh = odd_power_series(&t, e_u, false, wp);
    let ln_m = atanh.mul_pow2(1);
    if e == 0 {
        ln_m.round(prec)
    } else {
        ln2(wp).mul(&RInt::from_i64(e), wp).add(&ln_m, wp).round(prec)
    }
}

static PI_CACHE: Lazy<Mutex<HashMap<u32, RInt>>> = Lazy::new(|| Mutex::new(HashMap::new()));
static LN2_CACHE: Lazy<Mutex<HashMap<u32, RInt>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn cache_key(prec: u32) -> u32 {
    prec.div_ceil(64) * 64
}

/// Enclosure of π at the requested precision (cached per 64-bit band).
pub fn pi(prec: u32) -> RInt {
    let key = cache_key(prec);
    if let Some(v) = PI_CACHE.lock().unwrap().get(&key) {
        return v.clone();
    }
    let wp = key + 64;
    // Machin: π = 16·atan(1/5) − 4·atan(1/239).
    let fifth = RInt::from_rational(&BigRational::new(BigInt::from(1), BigInt::from(5)), wp);
    let a5 = odd_power_series(&fifth, -2, true, wp);
    let r239 = RInt::from_rational(&BigRational::new(BigInt::from(1), BigInt::from(239)), wp);
    let a239 = odd_power_series(&r239, -7, true, wp);
    let value = a5.mul_pow2(4).sub(&a239.mul_pow2(2), wp).round(key);
    PI_CACHE.lock().unwrap().insert(key, value.clone());
    value
}

pub fn two_pi(prec: u32) -> RInt {
    pi(prec).mul_pow2(1)
}

/// Enclosure of ln 2 via `ln 2 = 2·atanh(1/3)` (cached per 64-bit band).
pub fn ln2(prec: u32) -> RInt {
    let key = cache_key(prec);
    if let Some(v) = LN2_CACHE.lock().unwrap().get(&key) {
        return v.clone();
    }
    let wp = key + 64;
    let third = RInt::from_rational(&BigRational::new(BigInt::from(1), BigInt::from(3)), wp);
    let value = odd_power_series(&third, -1, false, wp).mul_pow2(1).round(key);
    LN2_CACHE.lock().unwrap().insert(key, value.clone());
    value
}
