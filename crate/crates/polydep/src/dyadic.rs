//! Arbitrary-precision dyadic numbers `man · 2^exp` with directed rounding.
//!
//! Dyadics are the scalar type underneath the interval layer: addition and
//! multiplication are exact, while division, square roots and rounding take an
//! explicit precision and direction so every approximation error lands on a
//! known side. This is what lets the interval layer guarantee outward
//! enclosures without ever trusting hardware floating point.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Rounding direction: `Down` towards −∞, `Up` towards +∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

impl Rounding {
    pub fn flip(self) -> Rounding {
        match self {
            Rounding::Down => Rounding::Up,
            Rounding::Up => Rounding::Down,
        }
    }
}

/// A dyadic rational `man · 2^exp`, kept canonical with `man` odd (or zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Dyadic {
        let mut d = Dyadic { man, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.man.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.man >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { man: BigInt::one(), exp: 0 }
    }

    pub fn from_i64(v: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: &BigInt) -> Dyadic {
        Dyadic::new(v.clone(), 0)
    }

    /// Exact conversion: every finite `f64` is dyadic.
    pub fn from_f64(v: f64) -> Dyadic {
        assert!(v.is_finite(), "cannot convert non-finite float");
        if v == 0.0 {
            return Dyadic::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (man, exp) = if exponent == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1 << 52), exponent - 1075)
        };
        Dyadic::new(BigInt::from(sign * man as i64), exp)
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn sign(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    /// Exact `self · 2^k`.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.man.is_zero() {
            Dyadic::zero()
        } else {
            Dyadic { man: self.man.clone(), exp: self.exp + k }
        }
    }

    /// Exact addition.
    pub fn add(&self, rhs: &Dyadic) -> Dyadic {
        if self.man.is_zero() {
            return rhs.clone();
        }
        if rhs.man.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &rhs.man << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, rhs: &Dyadic) -> Dyadic {
        self.add(&rhs.neg())
    }

    /// Exact multiplication.
    pub fn mul(&self, rhs: &Dyadic) -> Dyadic {
        if self.man.is_zero() || rhs.man.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { man: &self.man * &rhs.man, exp: self.exp + rhs.exp }
    }

    pub fn cmp(&self, rhs: &Dyadic) -> Ordering {
        match (self.sign(), rhs.sign()) {
            (a, b) if a < b => return Ordering::Less,
            (a, b) if a > b => return Ordering::Greater,
            (0, 0) => return Ordering::Equal,
            _ => {}
        }
        self.sub(rhs).man.sign().partial_cmp(&Sign::NoSign).map_or(Ordering::Equal, |o| o)
    }

    pub fn lt(&self, rhs: &Dyadic) -> bool {
        self.cmp(rhs) == Ordering::Less
    }

    pub fn le(&self, rhs: &Dyadic) -> bool {
        self.cmp(rhs) != Ordering::Greater
    }

    pub fn min(&self, rhs: &Dyadic) -> Dyadic {
        if self.le(rhs) { self.clone() } else { rhs.clone() }
    }

    pub fn max(&self, rhs: &Dyadic) -> Dyadic {
        if self.le(rhs) { rhs.clone() } else { self.clone() }
    }

    /// Mantissa bit length (0 for zero).
    pub fn mantissa_bits(&self) -> u64 {
        self.man.bits()
    }

    /// Bounds `(lo, hi)` with `2^lo ≤ |x| < 2^hi` (undefined for zero).
    pub fn log2_abs_bounds(&self) -> (i64, i64) {
        debug_assert!(!self.man.is_zero());
        let b = self.man.bits() as i64;
        (self.exp + b - 1, self.exp + b)
    }

    /// Round to at most `prec` mantissa bits in the given direction.
    pub fn round(&self, prec: u32, dir: Rounding) -> Dyadic {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = (bits - prec as u64) as i64;
        let man = match dir {
            Rounding::Down => self.man.div_floor(&(BigInt::one() << drop as u64)),
            Rounding::Up => {
                let (q, r) = self.man.div_mod_floor(&(BigInt::one() << drop as u64));
                if r.is_zero() {
                    q
                } else {
                    q + 1
                }
            }
        };
        Dyadic::new(man, self.exp + drop)
    }

    /// Directed division to `prec` bits.
    pub fn div(&self, rhs: &Dyadic, prec: u32, dir: Rounding) -> Dyadic {
        assert!(!rhs.man.is_zero(), "dyadic division by zero");
        if self.man.is_zero() {
            return Dyadic::zero();
        }
        let na = self.man.bits() as i64;
        let nb = rhs.man.bits() as i64;
        let t = (nb + prec as i64 + 2 - na).max(0) as u64;
        let num = &self.man << t;
        let (q, r) = num.div_mod_floor(&rhs.man);
        // div_mod_floor gives the floor for either sign of divisor only when
        // divisor is positive; normalize to a positive divisor first.
        let (q, r) = if rhs.man.is_negative() {
            // floor(a / b) with b < 0: recompute against |b| with negated a.
            let (q2, r2) = (-&self.man << t).div_mod_floor(&rhs.man.abs());
            (q2, r2)
        } else {
            (q, r)
        };
        let man = match dir {
            Rounding::Down => q,
            Rounding::Up => {
                if r.is_zero() {
                    q
                } else {
                    q + 1
                }
            }
        };
        Dyadic::new(man, self.exp - rhs.exp - t as i64).round(prec, dir)
    }

    /// Directed square root to `prec` bits; panics on negative input.
    pub fn sqrt(&self, prec: u32, dir: Rounding) -> Dyadic {
        assert!(!self.man.is_negative(), "dyadic sqrt of negative number");
        if self.man.is_zero() {
            return Dyadic::zero();
        }
        let bits = self.man.bits() as i64;
        let mut t = (2 * (prec as i64 + 2) - bits).max(0);
        if (self.exp - t) % 2 != 0 {
            t += 1;
        }
        let m = &self.man << t as u64;
        let r = m.sqrt();
        let man = match dir {
            Rounding::Down => r,
            Rounding::Up => {
                if &r * &r == m {
                    r
                } else {
                    r + 1
                }
            }
        };
        Dyadic::new(man, (self.exp - t) / 2).round(prec, dir)
    }

    /// Directed conversion from an exact rational.
    pub fn from_rational(q: &BigRational, prec: u32, dir: Rounding) -> Dyadic {
        Dyadic::from_bigint(q.numer()).div(&Dyadic::from_bigint(q.denom()), prec, dir)
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Lossy conversion for diagnostics and fast screens only.
    pub fn to_f64(&self) -> f64 {
        if self.man.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits();
        if bits <= 63 {
            return self.man.to_f64().unwrap_or(f64::NAN) * exp2_i64(self.exp);
        }
        let shift = bits - 63;
        let top = (&self.man >> shift).to_f64().unwrap_or(f64::NAN);
        top * exp2_i64(self.exp + shift as i64)
    }
}

fn exp2_i64(e: i64) -> f64 {
    if e >= 1024 {
        f64::INFINITY
    } else if e >= -1022 {
        // Exact: build the power of two directly from its bit pattern.
        f64::from_bits(((e + 1023) as u64) << 52)
    } else if e >= -1074 {
        f64::from_bits(1u64 << (e + 1074))
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Dyadic {
        Dyadic::from_i64(v)
    }

    #[test]
    fn exact_ops() {
        let a = d(6); // 3·2
        let b = d(10); // 5·2
        assert_eq!(a.add(&b), d(16));
        assert_eq!(a.mul(&b), d(60));
        assert_eq!(a.sub(&b), d(-4));
        assert_eq!(d(7).mul_pow2(3), d(56));
    }

    #[test]
    fn rounding_directions() {
        // 7 to 2 bits: down → 6 is wrong (6 = 3·2 has 2 significant bits ✓),
        // floor(7/2)·2 = 6, ceil → 8.
        let seven = d(7);
        assert_eq!(seven.round(2, Rounding::Down), d(6));
        assert_eq!(seven.round(2, Rounding::Up), d(8));
        let neg = d(-7);
        assert_eq!(neg.round(2, Rounding::Down), d(-8));
        assert_eq!(neg.round(2, Rounding::Up), d(-6));
    }

    #[test]
    fn division_brackets_true_value() {
        let one = d(1);
        let three = d(3);
        for prec in [8u32, 32, 128] {
            let lo = one.div(&three, prec, Rounding::Down);
            let hi = one.div(&three, prec, Rounding::Up);
            let third = BigRational::new(BigInt::one(), BigInt::from(3));
            assert!(lo.to_rational() <= third && third <= hi.to_rational());
            let w = hi.sub(&lo);
            let (_, hi_log) = w.log2_abs_bounds();
            assert!(hi_log <= -(prec as i64) + 2, "width 2^{hi_log} too large");
        }
        // Negative divisor.
        let q = d(5).div(&d(-3), 16, Rounding::Down);
        assert!(q.to_rational() <= BigRational::new(BigInt::from(-5), BigInt::from(3)));
    }

    #[test]
    fn sqrt_brackets_true_value() {
        for v in [2i64, 3, 10, 144, 1 << 40] {
            let x = d(v);
            let lo = x.sqrt(64, Rounding::Down);
            let hi = x.sqrt(64, Rounding::Up);
            assert!(lo.mul(&lo).to_rational() <= x.to_rational());
            assert!(x.to_rational() <= hi.mul(&hi).to_rational());
        }
        assert_eq!(d(144).sqrt(64, Rounding::Down), d(12));
        assert_eq!(d(144).sqrt(64, Rounding::Up), d(12));
    }

    #[test]
    fn f64_roundtrip_exact() {
        for v in [0.0f64, 1.0, -3.5, 0.1, 1e300, 5e-324] {
            let x = Dyadic::from_f64(v);
            assert_eq!(x.to_f64(), v);
        }
    }

    #[test]
    fn ordering() {
        assert!(d(-5).lt(&d(3)));
        assert!(Dyadic::new(BigInt::from(1), -1).lt(&d(1))); // 1/2 < 1
        assert_eq!(d(4).cmp(&Dyadic::new(BigInt::from(1), 2)), Ordering::Equal);
    }

    #[test]
    fn log2_bounds() {
        let x = d(12); // 8 ≤ 12 < 16
        assert_eq!(x.log2_abs_bounds(), (3, 4));
        let y = Dyadic::new(BigInt::from(1), -3); // exactly 2^-3
        assert_eq!(y.log2_abs_bounds(), (-3, -2));
    }
}
