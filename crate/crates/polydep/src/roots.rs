//! Certified complex root enclosures.
//!
//! Approximation is cheap and unvalidated (f64 Aberth–Ehrlich with
//! deterministic starts, then dyadic Newton polishing); certification is
//! separate and rigorous: at a polished point `z`, the disk of radius
//! `n·|g(z)/g′(z)|` around `z` contains at least one root of the square-free
//! polynomial `g` (the bound follows from `g′/g = Σ 1/(z−αᵢ)`), with the
//! quotient evaluated in outward-rounded interval arithmetic. Once the
//! `deg g` disks are pairwise disjoint, each contains exactly one root. All
//! geometric predicates on disks (disjointness, mirror intersection, nesting)
//! are exact dyadic arithmetic, so no verdict depends on rounding luck.

use crate::dyadic::{Dyadic, Rounding};
use crate::error::{Error, Result};
use crate::interval::{CInt, RInt};
use crate::intpoly::IntPolynomial;
use num_traits::Signed;

/// Conjugation status of one enclosed root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// The enclosed root is proven real.
    Real,
    /// The enclosed root is non-real; its complex conjugate is the root
    /// enclosed at this index.
    ConjugateOf(usize),
}

/// A certified disk containing exactly one distinct root of the polynomial.
#[derive(Debug, Clone)]
pub struct RootEnclosure {
    pub center_re: Dyadic,
    pub center_im: Dyadic,
    pub radius: Dyadic,
    pub multiplicity: u32,
    pub pairing: Pairing,
}

impl RootEnclosure {
    /// Covering rectangle for interval arithmetic downstream.
    pub fn to_cint(&self) -> CInt {
        CInt::new(
            RInt::ball(&self.center_re, &self.radius),
            RInt::ball(&self.center_im, &self.radius),
        )
    }

    pub fn is_real(&self) -> bool {
        matches!(self.pairing, Pairing::Real)
    }

    /// Enclosure of `|α|`.
    pub fn abs_interval(&self, prec: u32) -> RInt {
        let c = self.to_cint();
        c.abs(prec)
    }

    /// Exact test: the two closed disks do not intersect, i.e.
    /// `|c₁ − c₂| > r₁ + r₂` (compared through squares, no rounding).
    pub fn disjoint_from(&self, other: &RootEnclosure) -> bool {
        let dre = self.center_re.sub(&other.center_re);
        let dim = self.center_im.sub(&other.center_im);
        let dist2 = dre.mul(&dre).add(&dim.mul(&dim));
        let rsum = self.radius.add(&other.radius);
        rsum.mul(&rsum).lt(&dist2)
    }

    /// Exact test: the mirror image of `self` across the real axis meets
    /// `other`.
    pub fn mirror_intersects(&self, other: &RootEnclosure) -> bool {
        let dre = self.center_re.sub(&other.center_re);
        let dim = self.center_im.neg().sub(&other.center_im);
        let dist2 = dre.mul(&dre).add(&dim.mul(&dim));
        let rsum = self.radius.add(&other.radius);
        !rsum.mul(&rsum).lt(&dist2)
    }

    /// Exact test: `self` lies entirely inside `other` inflated to twice its
    /// radius (`|c₁ − c₂| + r₁ ≤ 2·r₂`).
    pub fn nested_in_doubled(&self, other: &RootEnclosure) -> bool {
        let dre = self.center_re.sub(&other.center_re);
        let dim = self.center_im.sub(&other.center_im);
        let dist2 = dre.mul(&dre).add(&dim.mul(&dim));
        let slack = other.radius.mul_pow2(1).sub(&self.radius);
        if slack.sign() < 0 {
            return false;
        }
        dist2.le(&slack.mul(&slack))
    }
}

/// All distinct roots of a polynomial, certified.
#[derive(Debug, Clone)]
pub struct RootProfile {
    /// Multiplicity of the root 0 (not represented in `roots`).
    pub zero_multiplicity: u32,
    /// Distinct non-zero roots, sorted by center (re, then im).
    pub roots: Vec<RootEnclosure>,
    /// Precision (bits) the enclosures were certified at.
    pub precision: u32,
}

impl RootProfile {
    /// Re-isolates at a higher precision and checks that every new disk nests
    /// inside exactly one old disk inflated to twice its radius. The result
    /// keeps the *original* root order (index `i` encloses the same root
    /// before and after), so exponent vectors indexed by this profile remain
    /// valid across refinement.
    pub fn refine(&self, f: &IntPolynomial, prec: u32) -> Result<RootProfile> {
        let prec = prec.max(self.precision + 32);
        let refined = root_profile(f, prec)?;
        if refined.roots.len() != self.roots.len() {
            return Err(Error::PrecisionExceeded {
                requested: prec,
                achieved: self.precision,
            });
        }
        // new index -> old index, forced by "nested in exactly one".
        let mut to_old = vec![usize::MAX; refined.roots.len()];
        let mut taken = vec![false; self.roots.len()];
        for (new_i, r) in refined.roots.iter().enumerate() {
            let hits: Vec<usize> = self
                .roots
                .iter()
                .enumerate()
                .filter(|(_, old)| r.nested_in_doubled(old))
                .map(|(i, _)| i)
                .collect();
            if hits.len() != 1 || taken[hits[0]] {
                return Err(Error::PrecisionExceeded {
                    requested: prec,
                    achieved: self.precision,
                });
            }
            to_old[new_i] = hits[0];
            taken[hits[0]] = true;
        }
        // Permute into the old order; conjugation indices (stated in new
        // positions) follow the same renaming.
        let mut roots: Vec<RootEnclosure> = self.roots.clone();
        for (new_i, r) in refined.roots.into_iter().enumerate() {
            roots[to_old[new_i]] = r;
        }
        for r in roots.iter_mut() {
            if let Pairing::ConjugateOf(j) = r.pairing {
                r.pairing = Pairing::ConjugateOf(to_old[j]);
            }
        }
        Ok(RootProfile {
            zero_multiplicity: refined.zero_multiplicity,
            roots,
            precision: prec,
        })
    }
}

/// Certified enclosures of the distinct roots of `f` with radii of order
/// `2^{−prec}`.
pub fn isolate_roots(f: &IntPolynomial, prec: u32) -> Result<Vec<RootEnclosure>> {
    Ok(root_profile(f, prec)?.roots)
}

/// Full root profile: zero multiplicity, certified disks for every distinct
/// non-zero root with multiplicities from the square-free decomposition, and
/// proven conjugation structure.
pub fn root_profile(f: &IntPolynomial, prec: u32) -> Result<RootProfile> {
    assert!(!f.is_zero(), "root profile of the zero polynomial");
    let zero_multiplicity = f.zero_root_multiplicity() as u32;
    let h = IntPolynomial::new(f.coeffs()[zero_multiplicity as usize..].to_vec());
    if h.degree() == 0 {
        return Ok(RootProfile {
            zero_multiplicity,
            roots: Vec::new(),
            precision: prec,
        });
    }
    let parts = h.squarefree_decomposition();
    let mut attempt = 0u32;
    loop {
        let cur = prec.saturating_mul(1 << attempt.min(5)).max(prec);
        match try_profile(&parts, cur, attempt, zero_multiplicity) {
            Ok(profile) => return Ok(profile),
            Err(_) if attempt < 7 => attempt += 1,
            Err(e) => return Err(e),
        }
    }
}

fn try_profile(
    parts: &[(IntPolynomial, u32)],
    prec: u32,
    attempt: u32,
    zero_multiplicity: u32,
) -> Result<RootProfile> {
    let mut roots: Vec<RootEnclosure> = Vec::new();
    let mut factor_of: Vec<usize> = Vec::new();
    for (fi, (g, mult)) in parts.iter().enumerate() {
        for (re, im, r) in isolate_squarefree(g, prec, attempt)? {
            roots.push(RootEnclosure {
                center_re: re,
                center_im: im,
                radius: r,
                multiplicity: *mult,
                pairing: Pairing::Real, // placeholder until proven below
            });
            factor_of.push(fi);
        }
    }
    // Global pairwise disjointness makes "exactly one root per disk" valid
    // across factors as well.
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if !roots[i].disjoint_from(&roots[j]) {
                return Err(Error::PrecisionExceeded {
                    requested: prec,
                    achieved: prec,
                });
            }
        }
    }
    // Sort deterministically, then prove the conjugation structure: the
    // mirror of each disk must meet exactly one disk of the same factor —
    // itself (real root) or its conjugate partner.
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&a, &b| {
        roots[a]
            .center_re
            .cmp(&roots[b].center_re)
            .then_with(|| roots[a].center_im.cmp(&roots[b].center_im))
    });
    let roots: Vec<RootEnclosure> = order.iter().map(|&i| roots[i].clone()).collect();
    let factor_of: Vec<usize> = order.iter().map(|&i| factor_of[i]).collect();
    let mut pairings: Vec<Pairing> = Vec::with_capacity(roots.len());
    for (i, r) in roots.iter().enumerate() {
        let matches: Vec<usize> = roots
            .iter()
            .enumerate()
            .filter(|(j, s)| factor_of[*j] == factor_of[i] && r.mirror_intersects(s))
            .map(|(j, _)| j)
            .collect();
        if matches.len() != 1 {
            return Err(Error::PrecisionExceeded {
                requested: prec,
                achieved: prec,
            });
        }
        pairings.push(if matches[0] == i {
            Pairing::Real
        } else {
            Pairing::ConjugateOf(matches[0])
        });
    }
    // Reciprocity check (ConjugateOf must be an involution).
    for (i, p) in pairings.iter().enumerate() {
        if let Pairing::ConjugateOf(j) = p {
            if pairings[*j] != Pairing::ConjugateOf(i) {
                return Err(Error::PrecisionExceeded {
                    requested: prec,
                    achieved: prec,
                });
            }
        }
    }
    let mut roots = roots;
    for (r, p) in roots.iter_mut().zip(pairings) {
        r.pairing = p;
    }
    Ok(RootProfile {
        zero_multiplicity,
        roots,
        precision: prec,
    })
}

/// Approximate, polish and certify the roots of one square-free factor.
/// Returns `(re, im, reported_radius)` triples (radius is twice the certified
/// bound, giving refinement headroom).
fn isolate_squarefree(
    g: &IntPolynomial,
    prec: u32,
    attempt: u32,
) -> Result<Vec<(Dyadic, Dyadic, Dyadic)>> {
    let n = g.degree();
    debug_assert!(n >= 1);
    let approx = aberth(g, 240 + 240 * attempt as usize, 0.40 + 0.31 * attempt as f64);
    let dg = g.derivative();
    let target = prec + 32;
    let mut out = Vec::with_capacity(n);
    for (x0, y0) in approx {
        let (zx, zy) = newton_polish(g, &dg, x0, y0, target).ok_or(Error::PrecisionExceeded {
            requested: prec,
            achieved: 0,
        })?;
        // Rigorous radius: n · |g(z)| / |g′(z)| evaluated in intervals.
        let wp = target + 64;
        let z = CInt::point(zx.clone(), zy.clone());
        let gz = g.evaluate_cint(&z, wp);
        let dgz = dg.evaluate_cint(&z, wp);
        let dg_abs = dgz.abs(wp);
        if !dg_abs.strictly_positive() {
            return Err(Error::PrecisionExceeded {
                requested: prec,
                achieved: 0,
            });
        }
        let ratio = gz.abs(wp).div(&dg_abs, wp);
        let certified = ratio
            .hi()
            .mul(&Dyadic::from_i64(n as i64))
            .round(64, Rounding::Up);
        // Reported radius: twice the certified one, but never zero (a zero
        // radius would defeat exact disjointness bookkeeping downstream).
        let floor = Dyadic::one().mul_pow2(-(wp as i64));
        let reported = certified.mul_pow2(1).max(&floor);
        out.push((zx, zy, reported));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Dyadic Newton polishing (point arithmetic; certification is separate).
// ---------------------------------------------------------------------------

fn newton_polish(
    g: &IntPolynomial,
    dg: &IntPolynomial,
    x0: f64,
    y0: f64,
    target: u32,
) -> Option<(Dyadic, Dyadic)> {
    if !x0.is_finite() || !y0.is_finite() {
        return None;
    }
    let mut zx = Dyadic::from_f64(x0);
    let mut zy = Dyadic::from_f64(y0);
    let mut wp: u32 = 96;
    loop {
        wp = wp.min(target + 32);
        let mut converged = false;
        for _ in 0..64 {
            let (gx, gy) = eval_point(g, &zx, &zy, wp);
            let (dx, dy) = eval_point(dg, &zx, &zy, wp);
            let den = dx.mul(&dx).add(&dy.mul(&dy));
            if den.is_zero() {
                return None;
            }
            // Δ = g/g′ = (g · conj(g′)) / |g′|²
            let nre = gx.mul(&dx).add(&gy.mul(&dy));
            let nim = gy.mul(&dx).sub(&gx.mul(&dy));
            let sx = nre.div(&den, wp, Rounding::Down);
            let sy = nim.div(&den, wp, Rounding::Down);
            zx = zx.sub(&sx).round(wp + 8, Rounding::Down);
            zy = zy.sub(&sy).round(wp + 8, Rounding::Down);
            // Converged at this precision when the step is ≲ 2^{−wp+10}
            // relative to the point scale.
            let step2 = sx.mul(&sx).add(&sy.mul(&sy));
            let scale2 = zx
                .mul(&zx)
                .add(&zy.mul(&zy))
                .max(&Dyadic::one());
            if step2.is_zero()
                || step2.log2_abs_bounds().1 <= scale2.log2_abs_bounds().0 - 2 * (wp as i64 - 10)
            {
                converged = true;
                break;
            }
        }
        if !converged {
            return None;
        }
        if wp >= target + 32 {
            return Some((zx, zy));
        }
        wp *= 2;
    }
}

fn eval_point(g: &IntPolynomial, zx: &Dyadic, zy: &Dyadic, wp: u32) -> (Dyadic, Dyadic) {
    let mut ax = Dyadic::zero();
    let mut ay = Dyadic::zero();
    for c in g.coeffs().iter().rev() {
        let nx = ax.mul(zx).sub(&ay.mul(zy)).add(&Dyadic::from_bigint(c));
        let ny = ax.mul(zy).add(&ay.mul(zx));
        ax = nx.round(wp, Rounding::Down);
        ay = ny.round(wp, Rounding::Down);
    }
    (ax, ay)
}

// ---------------------------------------------------------------------------
// f64 Aberth–Ehrlich (unvalidated approximation stage).
// ---------------------------------------------------------------------------

fn aberth(g: &IntPolynomial, iters: usize, angle_offset: f64) -> Vec<(f64, f64)> {
    let n = g.degree();
    let coeffs: Vec<f64> = g
        .coeffs()
        .iter()
        .map(|c| {
            use num_traits::ToPrimitive;
            c.to_f64().unwrap_or(0.0)
        })
        .collect();
    let lc = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lc).collect();
    // Fujiwara root bound for deterministic starting points.
    let mut bound: f64 = 0.0;
    for k in 1..=n {
        let mut t = (monic[n - k].abs()).powf(1.0 / k as f64);
        if k == n {
            t = (monic[0].abs() / 2.0).powf(1.0 / k as f64);
        }
        bound = bound.max(2.0 * t);
    }
    let radius = (bound * 0.7).max(0.5);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let th = 2.0 * std::f64::consts::PI * j as f64 / n as f64 + angle_offset;
            (radius * th.cos(), radius * th.sin())
        })
        .collect();
    for _ in 0..iters {
        let mut max_step = 0.0f64;
        for j in 0..n {
            let (px, py) = horner_c(&monic, z[j]);
            let (dx, dy) = horner_c(&derive_f64(&monic), z[j]);
            let (wx, wy) = cdiv_f64((px, py), (dx, dy));
            if !wx.is_finite() || !wy.is_finite() {
                continue;
            }
            let mut sx = 0.0f64;
            let mut sy = 0.0f64;
            for (k, zk) in z.iter().enumerate() {
                if k == j {
                    continue;
                }
                let (ix, iy) = cdiv_f64((1.0, 0.0), (z[j].0 - zk.0, z[j].1 - zk.1));
                sx += ix;
                sy += iy;
            }
            let denom = (1.0 - (wx * sx - wy * sy), -(wx * sy + wy * sx));
            let step = if denom.0.abs() + denom.1.abs() < 1e-12 {
                (wx, wy)
            } else {
                cdiv_f64((wx, wy), denom)
            };
            if step.0.is_finite() && step.1.is_finite() {
                z[j].0 -= step.0;
                z[j].1 -= step.1;
                let rel = (step.0.hypot(step.1)) / (1.0 + z[j].0.hypot(z[j].1));
                max_step = max_step.max(rel);
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

fn derive_f64(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, v)| v * k as f64)
        .collect()
}

fn horner_c(c: &[f64], z: (f64, f64)) -> (f64, f64) {
    let mut ax = 0.0f64;
    let mut ay = 0.0f64;
    for v in c.iter().rev() {
        let nx = ax * z.0 - ay * z.1 + v;
        let ny = ax * z.1 + ay * z.0;
        ax = nx;
        ay = ny;
    }
    (ax, ay)
}

fn cdiv_f64(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

// ---------------------------------------------------------------------------
// Mahler measure.
// ---------------------------------------------------------------------------

impl IntPolynomial {
    /// Rigorous enclosure of the Mahler measure
    /// `M(f) = |lc(f)| · ∏ max(1, |αᵢ|)` over all roots with multiplicity.
    pub fn mahler_measure(&self, prec: u32) -> Result<RInt> {
        assert!(!self.is_zero());
        let wp = prec + 32;
        let mut acc = RInt::from_bigint(&self.leading().abs());
        if self.degree() == 0 {
            return Ok(acc);
        }
        let profile = root_profile(self, wp)?;
        for root in &profile.roots {
            let a = root.abs_interval(wp);
            let one = Dyadic::one();
            let clamped = RInt::from_endpoints(a.lo().max(&one), a.hi().max(&one));
            acc = acc.mul(&clamped.powi(root.multiplicity as u64, wp), wp);
        }
        Ok(acc.round(prec))
    }
}
