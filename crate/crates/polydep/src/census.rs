//! Exhaustive censuses over integer polynomials of fixed degree and bounded
//! height.
//!
//! A census fixes a degree `n`, a height bound `H`, and a coefficient family
//! (monic, or general with `a_n ≠ 0`), then counts — without sampling — the
//! polynomials in each requested class: multiplicatively dependent roots,
//! the irreducible/reducible split of those, unit constant terms, `±1`
//! roots, fixed-degree divisors, degenerate irreducibles, and linearly
//! dependent roots. Counts are raw: no sign normalisation, no content
//! stripping, no deduplication, so they are directly comparable to the
//! asymptotic counting theorems via [`compare`].
//!
//! Enumeration is lexicographic on the coefficient tuple `(a_n, …, a_0)`
//! and partitioned into *slabs* — fibres of the leading two coefficients —
//! which are the unit of parallelism, sharding, and checkpointing. Counts
//! are exact sums over slabs, so they do not depend on thread or shard
//! scheduling. Wherever a verdict would be three-valued, the `Unknown`
//! outcomes are tallied separately, never folded into either side.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::depend::{self, SearchParameters};
use crate::error::{Error, Result};
use crate::factorize;
use crate::fastpath::{self, FastCtx, FastLabels};
use crate::intpoly::IntPolynomial;

/// Coefficient family swept by a census.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `a_n = 1`, the remaining `n` coefficients range over `[−H, H]`.
    Monic,
    /// `a_n ∈ [−H, H] \ {0}`, the rest range over `[−H, H]`.
    General,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Monic => write!(f, "monic"),
            Family::General => write!(f, "general"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().as_str() {
            "monic" => Ok(Family::Monic),
            "general" => Ok(Family::General),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

/// Census class. Unstarred letters count monic polynomials, starred ones
/// the general family:
///
/// * `M`/`Mstar` — distinct non-zero roots multiplicatively dependent;
/// * `I`/`Istar`, `R`/`Rstar` — the irreducible and reducible parts of `M`;
/// * `P` — irreducible with `f(0) = ±1`; `Pstar` — irreducible with
///   `|a_0| = |a_n|`;
/// * `Q`/`Qstar` — divisible by `X − 1` or `X + 1`;
/// * `F(k)` — admits a divisor of degree `k` over ℚ (`1 ≤ k ≤ n/2`);
/// * `DegIrr` — irreducible and degenerate (two distinct roots with a
///   root-of-unity quotient);
/// * `L` — distinct roots linearly dependent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLabel {
    M,
    I,
    R,
    MStar,
    IStar,
    RStar,
    P,
    PStar,
    Q,
    QStar,
    F(u32),
    DegIrr,
    L,
}

impl ClassLabel {
    /// Whether the label belongs to the monic (unstarred) family.
    fn requires_monic(&self) -> bool {
        matches!(
            self,
            ClassLabel::M | ClassLabel::I | ClassLabel::R | ClassLabel::P | ClassLabel::Q
        )
    }

    /// Whether the label belongs to the general (starred) family.
    fn requires_general(&self) -> bool {
        matches!(
            self,
            ClassLabel::MStar
                | ClassLabel::IStar
                | ClassLabel::RStar
                | ClassLabel::PStar
                | ClassLabel::QStar
        )
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::M => write!(f, "M"),
            ClassLabel::I => write!(f, "I"),
            ClassLabel::R => write!(f, "R"),
            ClassLabel::MStar => write!(f, "Mstar"),
            ClassLabel::IStar => write!(f, "Istar"),
            ClassLabel::RStar => write!(f, "Rstar"),
            ClassLabel::P => write!(f, "P"),
            ClassLabel::PStar => write!(f, "Pstar"),
            ClassLabel::Q => write!(f, "Q"),
            ClassLabel::QStar => write!(f, "Qstar"),
            ClassLabel::F(k) => write!(f, "F({k})"),
            ClassLabel::DegIrr => write!(f, "DegIrr"),
            ClassLabel::L => write!(f, "L"),
        }
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<ClassLabel> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        let simple = match lower.as_str() {
            "m" => Some(ClassLabel::M),
            "i" => Some(ClassLabel::I),
            "r" => Some(ClassLabel::R),
            "mstar" | "m*" => Some(ClassLabel::MStar),
            "istar" | "i*" => Some(ClassLabel::IStar),
            "rstar" | "r*" => Some(ClassLabel::RStar),
            "p" => Some(ClassLabel::P),
            "pstar" | "p*" => Some(ClassLabel::PStar),
            "q" => Some(ClassLabel::Q),
            "qstar" | "q*" => Some(ClassLabel::QStar),
            "degirr" => Some(ClassLabel::DegIrr),
            "l" => Some(ClassLabel::L),
            _ => None,
        };
        if let Some(c) = simple {
            return Ok(c);
        }
        let digits = lower
            .strip_prefix("f(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| lower.strip_prefix('f'));
        if let Some(digits) = digits {
            if let Ok(k) = digits.parse::<u32>() {
                return Ok(ClassLabel::F(k));
            }
        }
        Err(Error::Parse(format!("unknown class label `{t}`")))
    }
}

/// Description of one census run.
#[derive(Debug, Clone)]
pub struct CensusSpec {
    /// Degree `n ≥ 2` of every enumerated polynomial.
    pub degree: usize,
    /// Height bound `H ≥ 1` on the coefficients.
    pub height: i64,
    /// Coefficient family.
    pub family: Family,
    /// Classes to count; must be non-empty and consistent with the family.
    pub classes: BTreeSet<ClassLabel>,
    /// Search parameters forwarded to the dependence machinery.
    pub params: SearchParameters,
    /// Optional shard `(index, total)` with `index < total`: this run covers
    /// the slabs whose index is `≡ index (mod total)`.
    pub shard: Option<(u32, u32)>,
    /// Optional checkpoint file, written atomically after every chunk of
    /// slabs and validated on resume.
    pub checkpoint_path: Option<PathBuf>,
}

impl CensusSpec {
    /// A spec with default search parameters for the degree/height box.
    pub fn new(
        degree: usize,
        height: i64,
        family: Family,
        classes: BTreeSet<ClassLabel>,
    ) -> CensusSpec {
        CensusSpec {
            degree,
            height,
            family,
            classes,
            params: SearchParameters::for_degree_height(degree, height as f64),
            shard: None,
            checkpoint_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree < 2 {
            return Err(Error::InvalidInput("census degree must be at least 2".into()));
        }
        if self.height < 1 {
            return Err(Error::InvalidInput("census height must be at least 1".into()));
        }
        if self.classes.is_empty() {
            return Err(Error::InvalidInput("census class set is empty".into()));
        }
        for class in &self.classes {
            if class.requires_monic() && self.family != Family::Monic {
                return Err(Error::InvalidInput(format!(
                    "class {class} counts monic polynomials; use the starred form for the general family"
                )));
            }
            if class.requires_general() && self.family != Family::General {
                return Err(Error::InvalidInput(format!(
                    "class {class} counts the general family; use the unstarred form for monic"
                )));
            }
            if let ClassLabel::F(k) = class {
                if *k < 1 || 2 * (*k as usize) > self.degree {
                    return Err(Error::InvalidInput(format!(
                        "class F({k}) requires 1 ≤ k ≤ n/2 for degree n = {}",
                        self.degree
                    )));
                }
            }
        }
        if let Some((index, total)) = self.shard {
            if total == 0 || index >= total {
                return Err(Error::InvalidInput(format!(
                    "shard index {index} out of range for {total} shards"
                )));
            }
        }
        self.params.validate()
    }

    /// Number of polynomials in the family box.
    pub fn family_size(&self) -> u128 {
        let w = (2 * self.height + 1) as u128;
        match self.family {
            Family::Monic => w.pow(self.degree as u32),
            Family::General => (w - 1) * w.pow(self.degree as u32),
        }
    }
}

/// One row of census output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub degree: usize,
    pub height: i64,
    pub family: Family,
    pub class: ClassLabel,
    /// Polynomials certainly in the class.
    pub count_certain: u64,
    /// Polynomials whose membership could not be decided (only possible for
    /// classes built on a three-valued verdict).
    pub count_unknown: u64,
    pub elapsed_ms: u64,
    /// Classifier version that produced the row.
    pub version: String,
}

/// Result of a bounded census run: either every slab was processed, or the
/// slab budget ran out first (progress is in the checkpoint, if any).
#[derive(Debug, Clone)]
pub enum CensusOutcome {
    Complete(Vec<CensusRecord>),
    Paused {
        completed_slabs: u64,
        total_slabs: u64,
    },
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

/// Number of slabs (leading-two-coefficient fibres) of the family box.
fn total_slab_count(spec: &CensusSpec) -> u64 {
    let w = (2 * spec.height + 1) as u64;
    match spec.family {
        Family::Monic => w,
        Family::General => (w - 1) * w,
    }
}

/// Leading two coefficients `(a_n, a_{n−1})` of the slab at `index`, in
/// lexicographic order.
fn slab_coeffs(spec: &CensusSpec, index: u64) -> (i64, i64) {
    let h = spec.height;
    let w = (2 * h + 1) as u64;
    match spec.family {
        Family::Monic => (1, -h + index as i64),
        Family::General => {
            let lead_pos = (index / w) as i64;
            let lead = if lead_pos < h { -h + lead_pos } else { lead_pos - h + 1 };
            (lead, -h + (index % w) as i64)
        }
    }
}

fn in_shard(spec: &CensusSpec, slab: u64) -> bool {
    match spec.shard {
        Some((index, total)) => slab % total as u64 == index as u64,
        None => true,
    }
}

/// Walks every polynomial of the spec (restricted to its shard, if any) in
/// lexicographic coefficient order and returns how many were visited.
pub fn enumerate<V: FnMut(&IntPolynomial)>(spec: &CensusSpec, mut visitor: V) -> Result<u64> {
    spec.validate()?;
    let n = spec.degree;
    let h = spec.height;
    let mut coeffs = vec![0i64; n + 1];
    let mut visited = 0u64;
    for slab in 0..total_slab_count(spec) {
        if !in_shard(spec, slab) {
            continue;
        }
        let (lead, second) = slab_coeffs(spec, slab);
        coeffs[n] = lead;
        coeffs[n - 1] = second;
        for low in coeffs[..n - 1].iter_mut() {
            *low = -h;
        }
        loop {
            visitor(&IntPolynomial::from_i64(&coeffs));
            visited += 1;
            // Odometer: a_0 is the fastest-varying (last) lex position.
            let mut pos = 0;
            loop {
                if pos == n - 1 {
                    break;
                }
                if coeffs[pos] < h {
                    coeffs[pos] += 1;
                    break;
                }
                coeffs[pos] = -h;
                pos += 1;
            }
            if pos == n - 1 {
                break;
            }
        }
    }
    Ok(visited)
}

// ---------------------------------------------------------------------------
// per-polynomial classification
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Tri {
    In,
    Out,
    Unknown,
}

fn tri(b: bool) -> Tri {
    if b {
        Tri::In
    } else {
        Tri::Out
    }
}

/// Which expensive facts a class set needs.
#[derive(Clone, Copy, Debug, Default)]
struct NeedSet {
    dependence: bool,
    factors: bool,
    degenerate: bool,
    linear: bool,
}

fn needs_of(classes: &BTreeSet<ClassLabel>) -> NeedSet {
    let mut needs = NeedSet::default();
    for class in classes {
        match class {
            ClassLabel::M | ClassLabel::MStar => needs.dependence = true,
            ClassLabel::I | ClassLabel::IStar | ClassLabel::R | ClassLabel::RStar => {
                needs.dependence = true;
                needs.factors = true;
            }
            ClassLabel::P | ClassLabel::PStar | ClassLabel::F(_) => needs.factors = true,
            ClassLabel::Q | ClassLabel::QStar => {}
            ClassLabel::DegIrr => {
                needs.factors = true;
                needs.degenerate = true;
            }
            ClassLabel::L => needs.linear = true,
        }
    }
    needs
}

/// Exact facts about one polynomial, computed with the general machinery.
struct Facts {
    dependent: Tri,
    linear: Tri,
    irreducible: bool,
    /// Bitmask of degrees realised by products of irreducible factors.
    divisor_degrees: u32,
    degenerate: bool,
    pm_one_root: bool,
    unit_ends: bool,
}

fn compute_facts(f: &IntPolynomial, params: &SearchParameters, needs: &NeedSet) -> Result<Facts> {
    let one = BigInt::from(1);
    let minus_one = BigInt::from(-1);
    let mut facts = Facts {
        dependent: Tri::Unknown,
        linear: Tri::Unknown,
        irreducible: false,
        divisor_degrees: 1,
        degenerate: false,
        pm_one_root: f.evaluate(&one).is_zero() || f.evaluate(&minus_one).is_zero(),
        unit_ends: f.constant_term().abs() == f.leading().abs(),
    };
    if needs.dependence {
        facts.dependent = match depend::multiplicative_dependence(f, params)? {
            v if v.is_dependent() => Tri::In,
            v if v.is_independent() => Tri::Out,
            _ => Tri::Unknown,
        };
    }
    if needs.factors {
        let fac = factorize::factor(f);
        facts.irreducible = fac.factors.len() == 1 && fac.factors[0].1 == 1;
        let mut mask = 1u32;
        for (g, e) in &fac.factors {
            for _ in 0..*e {
                mask |= mask << g.degree();
            }
        }
        facts.divisor_degrees = mask;
    }
    if needs.degenerate {
        facts.degenerate = depend::is_degenerate(f)?;
    }
    if needs.linear {
        facts.linear = match depend::linear_dependence(f, params)? {
            v if v.is_dependent() => Tri::In,
            v if v.is_unknown() => Tri::Unknown,
            _ => Tri::Unknown,
        };
    }
    Ok(facts)
}

fn membership(facts: &Facts, class: &ClassLabel) -> Tri {
    match class {
        ClassLabel::M | ClassLabel::MStar => facts.dependent,
        ClassLabel::I | ClassLabel::IStar => {
            if facts.irreducible {
                facts.dependent
            } else {
                Tri::Out
            }
        }
        ClassLabel::R | ClassLabel::RStar => {
            if facts.irreducible {
                Tri::Out
            } else {
                facts.dependent
            }
        }
        ClassLabel::P | ClassLabel::PStar => tri(facts.irreducible && facts.unit_ends),
        ClassLabel::Q | ClassLabel::QStar => tri(facts.pm_one_root),
        ClassLabel::F(k) => tri(facts.divisor_degrees & (1u32 << k) != 0),
        ClassLabel::DegIrr => tri(facts.irreducible && facts.degenerate),
        ClassLabel::L => facts.linear,
    }
}

/// Every class label that certainly applies to `f`, together with a flag
/// recording whether any membership came back undecided (an undecided label
/// is omitted from the set, never guessed).
///
/// Monic inputs receive unstarred labels, all others starred ones; the
/// divisor labels `F(k)` and `DegIrr` are family-neutral. Linear dependence
/// (`L`) is never certain-by-construction, so it is left to explicit census
/// requests rather than reported here.
pub fn classify_labels(
    f: &IntPolynomial,
    params: &SearchParameters,
) -> Result<(BTreeSet<ClassLabel>, bool)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.degree();
    if n < 2 {
        return Err(Error::InvalidInput("classification requires degree at least 2".into()));
    }
    let monic = *f.leading() == BigInt::from(1);
    let mut candidates: Vec<ClassLabel> = if monic {
        vec![ClassLabel::M, ClassLabel::I, ClassLabel::R, ClassLabel::P, ClassLabel::Q]
    } else {
        vec![
            ClassLabel::MStar,
            ClassLabel::IStar,
            ClassLabel::RStar,
            ClassLabel::PStar,
            ClassLabel::QStar,
        ]
    };
    for k in 1..=(n / 2) as u32 {
        candidates.push(ClassLabel::F(k));
    }
    candidates.push(ClassLabel::DegIrr);
    let needs = NeedSet {
        dependence: true,
        factors: true,
        degenerate: true,
        linear: false,
    };
    let facts = compute_facts(f, params, &needs)?;
    let mut labels = BTreeSet::new();
    let mut had_unknown = false;
    for class in candidates {
        match membership(&facts, &class) {
            Tri::In => {
                labels.insert(class);
            }
            Tri::Out => {}
            Tri::Unknown => had_unknown = true,
        }
    }
    Ok((labels, had_unknown))
}

// ---------------------------------------------------------------------------
// census execution
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum SlabMode {
    /// Word-size quadratic classifier, both families.
    Quad,
    /// Word-size monic cubic classifier.
    Cubic,
    /// Word-size monic quartic classifier.
    Quartic,
    /// Factored enumeration of monic quartics with a quadratic divisor.
    QuarticDivisorCount,
    /// Exact big-integer classification (any degree, any class).
    Generic,
}

fn choose_mode(spec: &CensusSpec) -> SlabMode {
    if spec.classes.contains(&ClassLabel::L) {
        return SlabMode::Generic;
    }
    match (spec.degree, spec.family) {
        (2, _) if spec.height <= fastpath::MAX_FAST_HEIGHT => SlabMode::Quad,
        (3, Family::Monic) if spec.height <= fastpath::MAX_FAST_HEIGHT => SlabMode::Cubic,
        (4, Family::Monic) if spec.height <= fastpath::MAX_FAST_HEIGHT_QUARTIC => {
            if spec.classes.len() == 1 && spec.classes.contains(&ClassLabel::F(2)) {
                SlabMode::QuarticDivisorCount
            } else {
                SlabMode::Quartic
            }
        }
        _ => SlabMode::Generic,
    }
}

/// Whether the word-size paths must compute dependence and degeneracy (as
/// opposed to only the divisor/root/coefficient facts).
fn needs_full_labels(classes: &BTreeSet<ClassLabel>) -> bool {
    classes.iter().any(|c| {
        matches!(
            c,
            ClassLabel::M
                | ClassLabel::I
                | ClassLabel::R
                | ClassLabel::MStar
                | ClassLabel::IStar
                | ClassLabel::RStar
                | ClassLabel::DegIrr
        )
    })
}

fn fast_membership(labels: &FastLabels, class: &ClassLabel) -> bool {
    match class {
        ClassLabel::M | ClassLabel::MStar => labels.dependent,
        ClassLabel::I | ClassLabel::IStar => labels.irreducible && labels.dependent,
        ClassLabel::R | ClassLabel::RStar => !labels.irreducible && labels.dependent,
        ClassLabel::P | ClassLabel::PStar => labels.irreducible && labels.unit_ends,
        ClassLabel::Q | ClassLabel::QStar => labels.pm_one_root,
        ClassLabel::F(1) => labels.has_linear,
        ClassLabel::F(2) => labels.has_quadratic_divisor,
        ClassLabel::DegIrr => labels.irreducible && labels.degenerate,
        _ => unreachable!("class outside the word-size paths"),
    }
}

struct RunState<'a> {
    spec: &'a CensusSpec,
    classes: Vec<ClassLabel>,
    mode: SlabMode,
    full: bool,
    needs: NeedSet,
    spf: Vec<u32>,
}

impl RunState<'_> {
    fn process_slab(&self, slab: u64) -> Result<Vec<(u64, u64)>> {
        let spec = self.spec;
        let h = spec.height;
        let (lead, second) = slab_coeffs(spec, slab);
        let mut tally = vec![(0u64, 0u64); self.classes.len()];
        let ctx = FastCtx {
            spf: &self.spf,
            params: &spec.params,
        };
        let bump = |tally: &mut Vec<(u64, u64)>, labels: &FastLabels| {
            for (slot, class) in tally.iter_mut().zip(&self.classes) {
                if fast_membership(labels, class) {
                    slot.0 += 1;
                }
            }
        };
        match self.mode {
            SlabMode::Quad => {
                for a0 in -h..=h {
                    let labels = fastpath::quadratic_labels(&ctx, lead, second, a0);
                    bump(&mut tally, &labels);
                }
            }
            SlabMode::Cubic => {
                for a1 in -h..=h {
                    for a0 in -h..=h {
                        let labels = fastpath::cubic_labels(&ctx, second, a1, a0, self.full);
                        bump(&mut tally, &labels);
                    }
                }
            }
            SlabMode::Quartic => {
                for a2 in -h..=h {
                    for a1 in -h..=h {
                        for a0 in -h..=h {
                            let labels =
                                fastpath::quartic_labels(&ctx, second, a2, a1, a0, self.full);
                            bump(&mut tally, &labels);
                        }
                    }
                }
            }
            SlabMode::QuarticDivisorCount => {
                let mut set = std::collections::HashSet::new();
                let mut set_zero = std::collections::HashSet::new();
                tally[0].0 = fastpath::count_f2_slab(second, h, &mut set, &mut set_zero);
            }
            SlabMode::Generic => {
                let n = spec.degree;
                let mut coeffs = vec![-h; n + 1];
                coeffs[n] = lead;
                coeffs[n - 1] = second;
                loop {
                    let f = IntPolynomial::from_i64(&coeffs);
                    let facts = compute_facts(&f, &spec.params, &self.needs)?;
                    for (slot, class) in tally.iter_mut().zip(&self.classes) {
                        match membership(&facts, class) {
                            Tri::In => slot.0 += 1,
                            Tri::Out => {}
                            Tri::Unknown => slot.1 += 1,
                        }
                    }
                    let mut pos = 0;
                    loop {
                        if pos == n - 1 {
                            break;
                        }
                        if coeffs[pos] < h {
                            coeffs[pos] += 1;
                            break;
                        }
                        coeffs[pos] = -h;
                        pos += 1;
                    }
                    if pos == n - 1 {
                        break;
                    }
                }
            }
        }
        Ok(tally)
    }
}

// ---------------------------------------------------------------------------
// checkpointing
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CheckpointFile {
    fingerprint: String,
    /// Global index of the first slab not yet processed.
    next_slab: u64,
    /// Leading two coefficients of the last completed slab (readability).
    last_prefix: Option<(i64, i64)>,
    classes: Vec<String>,
    counts: Vec<(u64, u64)>,
    elapsed_ms: u64,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Stable digest of everything that must match for a checkpoint to be
/// resumable: the box, the family, the classes, the shard, the search
/// parameters, and the classifier version.
fn spec_fingerprint(spec: &CensusSpec) -> String {
    let classes: Vec<String> = spec.classes.iter().map(|c| c.to_string()).collect();
    let canon = format!(
        "degree={};height={};family={};classes={};shard={:?};bound={};prec={};maxprec={};delta={};version={}",
        spec.degree,
        spec.height,
        spec.family,
        classes.join(","),
        spec.shard,
        spec.params.exponent_bound,
        spec.params.precision_start,
        spec.params.max_precision,
        spec.params.lll_delta,
        env!("CARGO_PKG_VERSION"),
    );
    format!("{:016x}", fnv1a(canon.as_bytes()))
}

fn load_checkpoint(
    path: &std::path::Path,
    fingerprint: &str,
    classes: &[ClassLabel],
    total_slabs: u64,
) -> Result<CheckpointFile> {
    let text = std::fs::read_to_string(path)?;
    let file: CheckpointFile = serde_json::from_str(&text).map_err(|e| Error::CheckpointMismatch {
        expected: fingerprint.to_string(),
        found: format!("unreadable checkpoint ({e})"),
    })?;
    if file.fingerprint != fingerprint {
        return Err(Error::CheckpointMismatch {
            expected: fingerprint.to_string(),
            found: file.fingerprint,
        });
    }
    let expected_classes: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
    if file.classes != expected_classes || file.counts.len() != classes.len() {
        return Err(Error::CheckpointMismatch {
            expected: fingerprint.to_string(),
            found: format!("class list {:?}", file.classes),
        });
    }
    if file.next_slab > total_slabs {
        return Err(Error::CheckpointMismatch {
            expected: fingerprint.to_string(),
            found: format!("slab index {} out of range", file.next_slab),
        });
    }
    Ok(file)
}

fn save_checkpoint(path: &std::path::Path, file: &CheckpointFile) -> Result<()> {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "checkpoint".to_string());
    let tmp = path.with_file_name(format!("{name}.tmp"));
    std::fs::write(&tmp, serde_json::to_string_pretty(file)?)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Runs the census to completion. Equivalent to
/// [`run_census_limited`] with no slab budget.
pub fn run_census(spec: &CensusSpec) -> Result<Vec<CensusRecord>> {
    match run_census_limited(spec, None)? {
        CensusOutcome::Complete(records) => Ok(records),
        CensusOutcome::Paused { .. } => unreachable!("unbounded census runs complete"),
    }
}

/// Runs at most `max_slabs` further slabs of the census (all of them when
/// `None`), resuming from and updating the checkpoint if the spec carries
/// one. Chunks of slabs are classified in parallel; the final counts do not
/// depend on thread scheduling, shard assignment, or where a previous run
/// paused.
pub fn run_census_limited(spec: &CensusSpec, max_slabs: Option<u64>) -> Result<CensusOutcome> {
    spec.validate()?;
    let classes: Vec<ClassLabel> = spec.classes.iter().copied().collect();
    let total = total_slab_count(spec);
    let mine: Vec<u64> = (0..total).filter(|&s| in_shard(spec, s)).collect();
    let fingerprint = spec_fingerprint(spec);
    let mut tallies = vec![(0u64, 0u64); classes.len()];
    let mut done = 0usize;
    let mut elapsed_prior = 0u64;
    if let Some(path) = &spec.checkpoint_path {
        if path.exists() {
            let file = load_checkpoint(path, &fingerprint, &classes, total)?;
            done = mine.partition_point(|&s| s < file.next_slab);
            tallies = file.counts;
            elapsed_prior = file.elapsed_ms;
        }
    }
    let t0 = std::time::Instant::now();
    let mode = choose_mode(spec);
    let spf = match mode {
        SlabMode::Quad | SlabMode::Cubic | SlabMode::Quartic => {
            fastpath::spf_table(fastpath::spf_limit_for(spec.degree, spec.height))
        }
        _ => Vec::new(),
    };
    let state = RunState {
        spec,
        classes: classes.clone(),
        mode,
        full: needs_full_labels(&spec.classes),
        needs: needs_of(&spec.classes),
        spf,
    };
    let chunk = (total / 16).clamp(1, 64) as usize;
    let mut processed = 0u64;
    while done < mine.len() {
        let mut upper = (done + chunk).min(mine.len());
        if let Some(limit) = max_slabs {
            if processed >= limit {
                break;
            }
            upper = upper.min(done + (limit - processed) as usize);
        }
        let batch = &mine[done..upper];
        let results: Vec<Vec<(u64, u64)>> = batch
            .par_iter()
            .map(|&slab| state.process_slab(slab))
            .collect::<Result<Vec<_>>>()?;
        for row in results {
            for (slot, (certain, unknown)) in tallies.iter_mut().zip(row) {
                slot.0 += certain;
                slot.1 += unknown;
            }
        }
        processed += batch.len() as u64;
        done = upper;
        if let Some(path) = &spec.checkpoint_path {
            let next_slab = if done < mine.len() { mine[done] } else { total };
            let file = CheckpointFile {
                fingerprint: fingerprint.clone(),
                next_slab,
                last_prefix: done.checked_sub(1).map(|i| slab_coeffs(spec, mine[i])),
                classes: classes.iter().map(|c| c.to_string()).collect(),
                counts: tallies.clone(),
                elapsed_ms: elapsed_prior + t0.elapsed().as_millis() as u64,
            };
            save_checkpoint(path, &file)?;
        }
    }
    if done < mine.len() {
        return Ok(CensusOutcome::Paused {
            completed_slabs: done as u64,
            total_slabs: mine.len() as u64,
        });
    }
    let elapsed_ms = elapsed_prior + t0.elapsed().as_millis() as u64;
    let size = spec.family_size();
    let records = classes
        .iter()
        .zip(&tallies)
        .map(|(class, &(certain, unknown))| {
            debug_assert!((certain + unknown) as u128 <= size);
            CensusRecord {
                degree: spec.degree,
                height: spec.height,
                family: spec.family,
                class: *class,
                count_certain: certain,
                count_unknown: unknown,
                elapsed_ms,
                version: env!("CARGO_PKG_VERSION").to_string(),
            }
        })
        .collect();
    Ok(CensusOutcome::Complete(records))
}

// ---------------------------------------------------------------------------
// output and model comparison
// ---------------------------------------------------------------------------

/// Writes census rows as CSV (`degree,height,family,class,count_certain,
/// count_unknown,elapsed_ms,version`). With `no_timing`, the elapsed column
/// is zeroed so that repeated runs are byte-identical.
pub fn write_csv<W: std::io::Write>(
    records: &[CensusRecord],
    no_timing: bool,
    out: &mut W,
) -> Result<()> {
    writeln!(
        out,
        "degree,height,family,class,count_certain,count_unknown,elapsed_ms,version"
    )?;
    for r in records {
        let ms = if no_timing { 0 } else { r.elapsed_ms };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.degree, r.height, r.family, r.class, r.count_certain, r.count_unknown, ms, r.version
        )?;
    }
    Ok(())
}

/// Growth model `count(H) ≈ c · H^pow · (log H)^logpow`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticModel {
    pub leading_constant: BigRational,
    pub power: u32,
    pub log_power: u32,
}

/// One height of a model fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    pub height: i64,
    pub count: u64,
    pub unknown: u64,
    /// `count / (c · H^pow · (log H)^logpow)`.
    pub ratio: f64,
    /// Same ratio with the undecided polynomials included.
    pub bracket: f64,
    /// Empirical growth exponent `log(count_i/count_{i−1}) /
    /// log(H_i/H_{i−1})` against the previous row.
    pub growth: Option<f64>,
}

/// Census counts lined up against an asymptotic model.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub degree: usize,
    pub family: Family,
    pub class: ClassLabel,
    pub model: AsymptoticModel,
    pub rows: Vec<FitRow>,
}

impl FitReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "class": self.class.to_string(),
            "family": self.family.to_string(),
            "degree": self.degree,
            "model": {
                "c": self.model.leading_constant.to_string(),
                "pow": self.model.power,
                "logpow": self.model.log_power,
            },
            "rows": self.rows.iter().map(|row| {
                serde_json::json!({
                    "H": row.height,
                    "count": row.count,
                    "unknown": row.unknown,
                    "ratio": row.ratio,
                    "bracket": row.bracket,
                    "growth": row.growth,
                })
            }).collect::<Vec<_>>(),
        })
    }
}

/// Lines census records (same degree, family, and class, strictly
/// increasing heights) up against a growth model.
pub fn compare(records: &[CensusRecord], model: &AsymptoticModel) -> Result<FitReport> {
    if records.len() < 2 {
        return Err(Error::InvalidInput(
            "model comparison needs at least two heights".into(),
        ));
    }
    let first = &records[0];
    for r in records {
        if r.degree != first.degree || r.class != first.class || r.family != first.family {
            return Err(Error::InvalidInput(format!(
                "mixed census rows: {} {} degree {} vs {} {} degree {}",
                first.family, first.class, first.degree, r.family, r.class, r.degree
            )));
        }
    }
    for pair in records.windows(2) {
        if pair[1].height <= pair[0].height {
            return Err(Error::InvalidInput(
                "heights must be strictly increasing".into(),
            ));
        }
    }
    if model.leading_constant.is_zero() || model.leading_constant.is_negative() {
        return Err(Error::InvalidInput(
            "the model's leading constant must be positive".into(),
        ));
    }
    if model.log_power > 0 && first.height < 2 {
        return Err(Error::InvalidInput(
            "logarithmic models need heights of at least 2".into(),
        ));
    }
    let c = model
        .leading_constant
        .to_f64()
        .ok_or_else(|| Error::InvalidInput("model constant out of float range".into()))?;
    let mut rows = Vec::with_capacity(records.len());
    let mut prev: Option<&CensusRecord> = None;
    for r in records {
        let h = r.height as f64;
        let denom = c * h.powi(model.power as i32) * h.ln().powi(model.log_power as i32);
        let ratio = r.count_certain as f64 / denom;
        let bracket = (r.count_certain + r.count_unknown) as f64 / denom;
        let growth = prev.and_then(|p| {
            if p.count_certain == 0 || r.count_certain == 0 {
                None
            } else {
                let num = (r.count_certain as f64 / p.count_certain as f64).ln();
                let den = (r.height as f64 / p.height as f64).ln();
                Some(num / den)
            }
        });
        rows.push(FitRow {
            height: r.height,
            count: r.count_certain,
            unknown: r.count_unknown,
            ratio,
            bracket,
            growth,
        });
        prev = Some(r);
    }
    Ok(FitReport {
        degree: first.degree,
        family: first.family,
        class: first.class,
        model: model.clone(),
        rows,
    })
}

// ---------------------------------------------------------------------------
// multivariate zero-count bound
// ---------------------------------------------------------------------------

/// Hard cap on the number of box points [`zero_count_bound_check`] will
/// enumerate.
pub const ZERO_COUNT_BOX_LIMIT: u128 = 100_000_000;

/// Verifies the zero-count inequality for a non-zero multivariate integer
/// polynomial `g` of total degree `d ≥ 1` in `m` variables: the number of
/// zeros of `g` in the box `[−H, H]^m` is at most `d·m·(2H+1)^{m−1}`.
/// `g` is a list of `(exponent vector, coefficient)` terms. Boxes larger
/// than [`ZERO_COUNT_BOX_LIMIT`] points are refused rather than estimated.
pub fn zero_count_bound_check(g: &[(Vec<u32>, BigInt)], m: usize, h: i64) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidInput("at least one variable is required".into()));
    }
    if h < 1 {
        return Err(Error::InvalidInput("the box half-width must be at least 1".into()));
    }
    let terms: Vec<(&Vec<u32>, &BigInt)> = g
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e, c))
        .collect();
    if terms.is_empty() {
        return Err(Error::InvalidInput("the polynomial must be non-zero".into()));
    }
    let mut degree = 0u32;
    for (exps, _) in &terms {
        if exps.len() != m {
            return Err(Error::InvalidInput(format!(
                "exponent vector of length {} in {} variables",
                exps.len(),
                m
            )));
        }
        degree = degree.max(exps.iter().sum());
    }
    if degree == 0 {
        return Err(Error::InvalidInput(
            "a non-zero constant has no zeros to bound; total degree must be ≥ 1".into(),
        ));
    }
    let width = (2 * h + 1) as u128;
    let size = width.pow(m as u32);
    if size > ZERO_COUNT_BOX_LIMIT {
        return Err(Error::BoxTooLarge {
            size,
            limit: ZERO_COUNT_BOX_LIMIT,
        });
    }
    let small: Option<Vec<(&Vec<u32>, i128)>> = terms
        .iter()
        .map(|(e, c)| c.to_i128().map(|v| (*e, v)))
        .collect();
    let mut zeros: u128 = 0;
    let mut point = vec![-h; m];
    'outer: loop {
        let is_zero = match &small {
            Some(small_terms) => match eval_point_i128(small_terms, &point) {
                Some(v) => v == 0,
                None => eval_point_big(&terms, &point).is_zero(),
            },
            None => eval_point_big(&terms, &point).is_zero(),
        };
        if is_zero {
            zeros += 1;
        }
        let mut pos = 0;
        loop {
            if pos == m {
                break 'outer;
            }
            if point[pos] < h {
                point[pos] += 1;
                break;
            }
            point[pos] = -h;
            pos += 1;
        }
    }
    let bound = degree as u128 * m as u128 * width.pow(m as u32 - 1);
    Ok(zeros <= bound)
}

fn eval_point_i128(terms: &[(&Vec<u32>, i128)], point: &[i64]) -> Option<i128> {
    let mut acc: i128 = 0;
    for (exps, coeff) in terms {
        let mut term = *coeff;
        for (&x, &e) in point.iter().zip(exps.iter()) {
            for _ in 0..e {
                term = term.checked_mul(x as i128)?;
            }
        }
        acc = acc.checked_add(term)?;
    }
    Some(acc)
}

fn eval_point_big(terms: &[(&Vec<u32>, &BigInt)], point: &[i64]) -> BigInt {
    let mut acc = BigInt::from(0);
    for (exps, coeff) in terms {
        let mut term = (*coeff).clone();
        for (&x, &e) in point.iter().zip(exps.iter()) {
            for _ in 0..e {
                term *= BigInt::from(x);
            }
        }
        acc += term;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn spec(
        degree: usize,
        height: i64,
        family: Family,
        classes: &[ClassLabel],
    ) -> CensusSpec {
        CensusSpec::new(degree, height, family, classes.iter().copied().collect())
    }

    fn counts_of(records: &[CensusRecord]) -> Vec<(String, u64, u64)> {
        records
            .iter()
            .map(|r| (r.class.to_string(), r.count_certain, r.count_unknown))
            .collect()
    }

    #[test]
    fn enumerate_visits_the_documented_boxes() {
        let visited = enumerate(&spec(2, 3, Family::Monic, &[ClassLabel::M]), |_| {}).unwrap();
        assert_eq!(visited, 49);
        let visited = enumerate(&spec(2, 1, Family::General, &[ClassLabel::MStar]), |_| {}).unwrap();
        assert_eq!(visited, 18);
    }

    #[test]
    fn shards_partition_the_enumeration() {
        let mut all = Vec::new();
        enumerate(&spec(3, 2, Family::Monic, &[ClassLabel::M]), |f| {
            all.push(f.to_string())
        })
        .unwrap();
        let mut sharded = Vec::new();
        for index in 0..3u32 {
            let mut s = spec(3, 2, Family::Monic, &[ClassLabel::M]);
            s.shard = Some((index, 3));
            enumerate(&s, |f| sharded.push(f.to_string())).unwrap();
        }
        sharded.sort();
        let mut sorted_all = all.clone();
        sorted_all.sort();
        assert_eq!(sharded, sorted_all);
        assert_eq!(all.len(), 125);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let mut seen = Vec::new();
        enumerate(&spec(2, 1, Family::Monic, &[ClassLabel::M]), |f| {
            seen.push((f.coeff(1).to_i64().unwrap(), f.coeff(0).to_i64().unwrap()))
        })
        .unwrap();
        let mut expected = Vec::new();
        for a1 in -1..=1i64 {
            for a0 in -1..=1i64 {
                expected.push((a1, a0));
            }
        }
        assert_eq!(seen, expected);
    }

    #[test]
    fn classification_matches_the_documented_examples() {
        let params = SearchParameters::for_degree_height(2, 4.0);
        let (labels, unknown) =
            classify_labels(&IntPolynomial::from_i64(&[-1, 0, 1]), &params).unwrap();
        let expected: BTreeSet<ClassLabel> =
            [ClassLabel::M, ClassLabel::R, ClassLabel::Q, ClassLabel::F(1)]
                .into_iter()
                .collect();
        assert_eq!(labels, expected);
        assert!(!unknown);

        let (labels, unknown) =
            classify_labels(&IntPolynomial::from_i64(&[2, 1, 1]), &params).unwrap();
        assert!(labels.is_empty());
        assert!(!unknown);

        let (labels, unknown) =
            classify_labels(&IntPolynomial::from_i64(&[-1, -1, 1]), &params).unwrap();
        let expected: BTreeSet<ClassLabel> = [ClassLabel::M, ClassLabel::I, ClassLabel::P]
            .into_iter()
            .collect();
        assert_eq!(labels, expected);
        assert!(!unknown);
    }

    #[test]
    fn starred_labels_for_the_general_family() {
        let params = SearchParameters::for_degree_height(2, 4.0);
        // 2x² − 2: roots ±1.
        let (labels, unknown) =
            classify_labels(&IntPolynomial::from_i64(&[-2, 0, 2]), &params).unwrap();
        let expected: BTreeSet<ClassLabel> = [
            ClassLabel::MStar,
            ClassLabel::RStar,
            ClassLabel::QStar,
            ClassLabel::F(1),
        ]
        .into_iter()
        .collect();
        assert_eq!(labels, expected);
        assert!(!unknown);
    }

    #[test]
    fn monic_quadratic_census_matches_a_direct_scan() {
        let s = spec(
            2,
            10,
            Family::Monic,
            &[ClassLabel::M, ClassLabel::I, ClassLabel::R, ClassLabel::Q],
        );
        let records = run_census(&s).unwrap();
        let mut m = 0u64;
        let mut i = 0u64;
        let mut r = 0u64;
        let mut q = 0u64;
        let params = &s.params;
        enumerate(&s, |f| {
            let verdict = depend::multiplicative_dependence(f, params).unwrap();
            assert!(!verdict.is_unknown());
            let fac = factorize::factor(f);
            let irr = fac.factors.len() == 1 && fac.factors[0].1 == 1;
            if verdict.is_dependent() {
                m += 1;
                if irr {
                    i += 1;
                } else {
                    r += 1;
                }
            }
            let one = BigInt::from(1);
            let neg = BigInt::from(-1);
            if f.evaluate(&one).is_zero() || f.evaluate(&neg).is_zero() {
                q += 1;
            }
        })
        .unwrap();
        assert_eq!(
            counts_of(&records),
            vec![
                ("M".into(), m, 0),
                ("I".into(), i, 0),
                ("R".into(), r, 0),
                ("Q".into(), q, 0)
            ]
        );
        // The irreducible/reducible split partitions the dependent count.
        assert_eq!(m, i + r);
    }

    #[test]
    fn cubic_census_agrees_with_direct_loops_for_plus_minus_one_roots() {
        let s = spec(3, 10, Family::Monic, &[ClassLabel::Q]);
        let records = run_census(&s).unwrap();
        // Double loop: polynomials with f(1) = 0 plus those with f(−1) = 0,
        // minus those with both.
        let h = 10i64;
        let mut q = 0u64;
        for a2 in -h..=h {
            for a1 in -h..=h {
                for a0 in -h..=h {
                    let at_one = 1 + a2 + a1 + a0 == 0;
                    let at_neg = -1 + a2 - a1 + a0 == 0;
                    if at_one || at_neg {
                        q += 1;
                    }
                }
            }
        }
        assert_eq!(records[0].count_certain, q);
        assert_eq!(records[0].count_unknown, 0);
    }

    #[test]
    fn general_and_monic_word_size_paths_agree_with_the_generic_path() {
        for (degree, height, family) in [
            (2usize, 3i64, Family::General),
            (2, 4, Family::Monic),
            (3, 3, Family::Monic),
            (4, 2, Family::Monic),
        ] {
            let classes: Vec<ClassLabel> = match family {
                Family::Monic => vec![
                    ClassLabel::M,
                    ClassLabel::I,
                    ClassLabel::R,
                    ClassLabel::P,
                    ClassLabel::Q,
                    ClassLabel::F(1),
                    ClassLabel::DegIrr,
                ],
                Family::General => vec![
                    ClassLabel::MStar,
                    ClassLabel::IStar,
                    ClassLabel::RStar,
                    ClassLabel::PStar,
                    ClassLabel::QStar,
                    ClassLabel::F(1),
                    ClassLabel::DegIrr,
                ],
            };
            let mut classes = classes;
            if degree == 4 {
                classes.push(ClassLabel::F(2));
            }
            let s = spec(degree, height, family, &classes);
            let fast = run_census(&s).unwrap();
            assert_eq!(choose_mode(&s), match degree {
                2 => SlabMode::Quad,
                3 => SlabMode::Cubic,
                _ => SlabMode::Quartic,
            });
            // Force the generic path through per-polynomial facts.
            let needs = needs_of(&s.classes);
            let ordered: Vec<ClassLabel> = s.classes.iter().copied().collect();
            let mut tallies = vec![(0u64, 0u64); ordered.len()];
            enumerate(&s, |f| {
                let facts = compute_facts(f, &s.params, &needs).unwrap();
                for (slot, class) in tallies.iter_mut().zip(&ordered) {
                    match membership(&facts, class) {
                        Tri::In => slot.0 += 1,
                        Tri::Out => {}
                        Tri::Unknown => slot.1 += 1,
                    }
                }
            })
            .unwrap();
            let fast_counts: Vec<(u64, u64)> = fast
                .iter()
                .map(|r| (r.count_certain, r.count_unknown))
                .collect();
            assert_eq!(
                fast_counts, tallies,
                "fast/generic divergence at degree {degree}, H = {height}, {family}"
            );
        }
    }

    #[test]
    fn divisor_count_mode_agrees_with_the_label_scan() {
        let fast = run_census(&spec(4, 6, Family::Monic, &[ClassLabel::F(2)])).unwrap();
        let scan = run_census(&spec(4, 6, Family::Monic, &[ClassLabel::F(2), ClassLabel::Q]))
            .unwrap();
        let scanned = scan.iter().find(|r| r.class == ClassLabel::F(2)).unwrap();
        assert_eq!(fast[0].count_certain, scanned.count_certain);
        assert_eq!(fast[0].count_unknown, 0);
    }

    #[test]
    fn shard_counts_sum_to_the_full_census() {
        let full = run_census(&spec(2, 8, Family::General, &[ClassLabel::MStar])).unwrap();
        for shards in [2u32, 8] {
            let mut certain = 0u64;
            let mut unknown = 0u64;
            for index in 0..shards {
                let mut s = spec(2, 8, Family::General, &[ClassLabel::MStar]);
                s.shard = Some((index, shards));
                let part = run_census(&s).unwrap();
                certain += part[0].count_certain;
                unknown += part[0].count_unknown;
            }
            assert_eq!(certain, full[0].count_certain, "{shards} shards");
            assert_eq!(unknown, full[0].count_unknown);
        }
    }

    #[test]
    fn consecutive_runs_are_identical() {
        let s = spec(3, 6, Family::Monic, &[ClassLabel::M, ClassLabel::I]);
        let a = run_census(&s).unwrap();
        let b = run_census(&s).unwrap();
        assert_eq!(counts_of(&a), counts_of(&b));
    }

    #[test]
    fn checkpoint_pause_and_resume_reproduce_the_uninterrupted_counts() {
        let dir = std::env::temp_dir().join(format!("census-ck-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("resume.json");
        let _ = std::fs::remove_file(&path);
        let fresh = run_census(&spec(2, 9, Family::Monic, &[ClassLabel::M])).unwrap();
        let mut s = spec(2, 9, Family::Monic, &[ClassLabel::M]);
        s.checkpoint_path = Some(path.clone());
        let paused = run_census_limited(&s, Some(3)).unwrap();
        match paused {
            CensusOutcome::Paused {
                completed_slabs,
                total_slabs,
            } => {
                assert_eq!(completed_slabs, 3);
                assert_eq!(total_slabs, 19);
            }
            CensusOutcome::Complete(_) => panic!("expected a paused census"),
        }
        let resumed = run_census(&s).unwrap();
        assert_eq!(counts_of(&resumed), counts_of(&fresh));
        // Resuming a completed census replays the stored counts.
        let replay = run_census(&s).unwrap();
        assert_eq!(counts_of(&replay), counts_of(&fresh));
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn corrupt_or_foreign_checkpoints_are_rejected() {
        let dir = std::env::temp_dir().join(format!("census-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.json");
        std::fs::write(&path, "{ not json").unwrap();
        let mut s = spec(2, 5, Family::Monic, &[ClassLabel::M]);
        s.checkpoint_path = Some(path.clone());
        match run_census(&s) {
            Err(Error::CheckpointMismatch { found, .. }) => {
                assert!(found.contains("unreadable"), "found: {found}")
            }
            other => panic!("expected a checkpoint mismatch, got {other:?}"),
        }
        // A checkpoint from a different census is refused, not recounted.
        let mut other_spec = spec(2, 6, Family::Monic, &[ClassLabel::M]);
        other_spec.checkpoint_path = Some(path.clone());
        let _ = std::fs::remove_file(&path);
        run_census_limited(&other_spec, Some(2)).unwrap();
        match run_census(&s) {
            Err(Error::CheckpointMismatch { expected, found }) => assert_ne!(expected, found),
            other => panic!("expected a checkpoint mismatch, got {other:?}"),
        }
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn linear_dependence_census_matches_per_polynomial_verdicts() {
        let s = spec(2, 3, Family::Monic, &[ClassLabel::L]);
        assert_eq!(choose_mode(&s), SlabMode::Generic);
        let records = run_census(&s).unwrap();
        let mut certain = 0u64;
        let mut unknown = 0u64;
        enumerate(&s, |f| {
            match depend::linear_dependence(f, &s.params).unwrap() {
                v if v.is_dependent() => certain += 1,
                v if v.is_unknown() => unknown += 1,
                _ => {}
            }
        })
        .unwrap();
        assert_eq!(records[0].count_certain, certain);
        assert_eq!(records[0].count_unknown, unknown);
        assert!(certain > 0);
    }

    #[test]
    fn spec_validation_rejects_inconsistent_requests() {
        assert!(spec(2, 5, Family::General, &[ClassLabel::M]).validate().is_err());
        assert!(spec(2, 5, Family::Monic, &[ClassLabel::MStar]).validate().is_err());
        assert!(spec(2, 5, Family::Monic, &[ClassLabel::F(2)]).validate().is_err());
        assert!(spec(4, 5, Family::Monic, &[ClassLabel::F(2)]).validate().is_ok());
        assert!(spec(1, 5, Family::Monic, &[ClassLabel::M]).validate().is_err());
        assert!(spec(2, 0, Family::Monic, &[ClassLabel::M]).validate().is_err());
        let mut s = spec(2, 5, Family::Monic, &[ClassLabel::M]);
        s.classes.clear();
        assert!(s.validate().is_err());
        let mut s = spec(2, 5, Family::Monic, &[ClassLabel::M]);
        s.shard = Some((3, 3));
        assert!(s.validate().is_err());
    }

    #[test]
    fn class_labels_round_trip_through_strings() {
        let labels = [
            ClassLabel::M,
            ClassLabel::I,
            ClassLabel::R,
            ClassLabel::MStar,
            ClassLabel::IStar,
            ClassLabel::RStar,
            ClassLabel::P,
            ClassLabel::PStar,
            ClassLabel::Q,
            ClassLabel::QStar,
            ClassLabel::F(1),
            ClassLabel::F(2),
            ClassLabel::DegIrr,
            ClassLabel::L,
        ];
        for label in labels {
            assert_eq!(label.to_string().parse::<ClassLabel>().unwrap(), label);
        }
        assert_eq!("F2".parse::<ClassLabel>().unwrap(), ClassLabel::F(2));
        assert_eq!("mstar".parse::<ClassLabel>().unwrap(), ClassLabel::MStar);
        assert!("Z".parse::<ClassLabel>().is_err());
        assert_eq!("monic".parse::<Family>().unwrap(), Family::Monic);
        assert!("weird".parse::<Family>().is_err());
    }

    #[test]
    fn compare_reports_ratios_and_growth_for_exact_power_laws() {
        let mk = |h: i64, count: u64| CensusRecord {
            degree: 2,
            height: h,
            family: Family::Monic,
            class: ClassLabel::M,
            count_certain: count,
            count_unknown: 0,
            elapsed_ms: 0,
            version: "test".into(),
        };
        let records = vec![mk(10, 1000), mk(20, 4000), mk(40, 16000)];
        let model = AsymptoticModel {
            leading_constant: BigRational::from(BigInt::from(10)),
            power: 2,
            log_power: 0,
        };
        let report = compare(&records, &model).unwrap();
        assert_eq!(report.rows.len(), 3);
        assert!(report.rows[0].growth.is_none());
        for row in &report.rows {
            assert!((row.ratio - 1.0).abs() < 1e-12);
            assert!((row.bracket - 1.0).abs() < 1e-12);
        }
        for row in &report.rows[1..] {
            assert!((row.growth.unwrap() - 2.0).abs() < 1e-12);
        }
        let json = report.to_json();
        assert_eq!(json["class"], "M");
        assert_eq!(json["model"]["c"], "10");
        assert_eq!(json["model"]["pow"], 2);
        assert_eq!(json["rows"][0]["H"], 10);
        assert!(json["rows"][0]["growth"].is_null());
        // Mismatched rows are an error, not a silent fit.
        let mut wrong = records.clone();
        wrong[1].class = ClassLabel::Q;
        assert!(compare(&wrong, &model).is_err());
        let mut unsorted = records;
        unsorted.swap(0, 1);
        assert!(compare(&unsorted, &model).is_err());
    }

    #[test]
    fn zero_count_bound_holds_on_the_documented_examples() {
        // x₁x₂ on [−5,5]²: 21 zeros against the bound 2·2·11 = 44.
        let g = vec![(vec![1u32, 1u32], BigInt::from(1))];
        assert!(zero_count_bound_check(&g, 2, 5).unwrap());
        // x₁ − x₂: 11 zeros against 1·2·11 = 22.
        let g = vec![
            (vec![1u32, 0u32], BigInt::from(1)),
            (vec![0u32, 1u32], BigInt::from(-1)),
        ];
        assert!(zero_count_bound_check(&g, 2, 5).unwrap());
        // Oversized boxes are refused.
        match zero_count_bound_check(&g, 2, 100_000) {
            Err(Error::BoxTooLarge { .. }) => {}
            other => panic!("expected a box refusal, got {other:?}"),
        }
        // Constants and empty polynomials are rejected.
        assert!(zero_count_bound_check(&[], 2, 5).is_err());
        let constant = vec![(vec![0u32, 0u32], BigInt::from(3))];
        assert!(zero_count_bound_check(&constant, 2, 5).is_err());
    }

    #[test]
    fn zero_count_bound_holds_for_random_small_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let m = rng.gen_range(1..=3usize);
            let h = rng.gen_range(1..=8i64);
            let terms = rng.gen_range(1..=4usize);
            let g: Vec<(Vec<u32>, BigInt)> = (0..terms)
                .map(|_| {
                    let exps: Vec<u32> = (0..m)
                        .map(|_| rng.gen_range(0..=2u32))
                        .collect();
                    (exps, BigInt::from(rng.gen_range(-5i64..=5)))
                })
                .collect();
            let nonzero = g.iter().any(|(e, c)| !c.is_zero() && e.iter().any(|&x| x > 0));
            if !nonzero {
                continue;
            }
            // Drop constant-only polynomials (their zero set is empty or
            // everything; the bound concerns degree ≥ 1).
            let filtered: Vec<(Vec<u32>, BigInt)> = g
                .into_iter()
                .filter(|(e, c)| !c.is_zero() || e.iter().any(|&x| x > 0))
                .collect();
            match zero_count_bound_check(&filtered, m, h) {
                Ok(ok) => assert!(ok, "zero-count bound violated on {filtered:?}"),
                Err(Error::InvalidInput(_)) => {}
                Err(e) => panic!("unexpected failure: {e}"),
            }
        }
    }

    #[test]
    fn csv_output_has_the_fixed_header_and_zeroed_timing() {
        let records = vec![CensusRecord {
            degree: 2,
            height: 100,
            family: Family::Monic,
            class: ClassLabel::M,
            count_certain: 1003,
            count_unknown: 0,
            elapsed_ms: 153,
            version: "1.2.3".into(),
        }];
        let mut buf = Vec::new();
        write_csv(&records, false, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "degree,height,family,class,count_certain,count_unknown,elapsed_ms,version\n\
             2,100,monic,M,1003,0,153,1.2.3\n"
        );
        let mut buf = Vec::new();
        write_csv(&records, true, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("2,100,monic,M,1003,0,0,1.2.3"));
    }

    #[test]
    fn unit_and_divisor_classes_nest_per_polynomial() {
        // P ⊆ I ⊆ M: every irreducible with unit constant term is dependent.
        let params = SearchParameters::for_degree_height(3, 6.0);
        let s = spec(3, 6, Family::Monic, &[ClassLabel::M, ClassLabel::I, ClassLabel::P]);
        enumerate(&s, |f| {
            let (labels, unknown) = classify_labels(f, &params).unwrap();
            assert!(!unknown);
            if labels.contains(&ClassLabel::P) {
                assert!(labels.contains(&ClassLabel::I), "P ⊄ I at {f}");
            }
            if labels.contains(&ClassLabel::I) {
                assert!(labels.contains(&ClassLabel::M), "I ⊄ M at {f}");
            }
        })
        .unwrap();
        let records = run_census(&s).unwrap();
        let by: std::collections::BTreeMap<String, u64> = records
            .iter()
            .map(|r| (r.class.to_string(), r.count_certain))
            .collect();
        assert!(by["P"] <= by["I"]);
        assert!(by["I"] <= by["M"]);
    }
}
