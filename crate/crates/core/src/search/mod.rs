//! Exhaustive enumeration of lists under divisor, shape and norm constraints,
//! and the catalogs built from them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::list::SignedList;
use crate::rational::{integer, ExactRational};
use crate::{Error, ListType, Result};

mod catalog;
mod mitm;
mod presets;
mod shape;
mod sweep;

pub use catalog::{verify_catalog, Catalog, CatalogEntry, EntryIssue, VerifyReport};
pub use mitm::mitm_sum_zero;
pub use presets::{
    classify_length, combine_with_fixed, d2_family_probe, family_search_5, small_norm_catalog, D2Family,
    D2ProbeReport, SmallNormPreset,
};
pub use shape::{Domain, Shape};

/// A list with its exact norm.
pub type Hit = (SignedList, ExactRational);

/// Which norms to keep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormFilter {
    Any,
    Below(ExactRational),
    AtMost(ExactRational),
    Exactly(ExactRational),
}

impl NormFilter {
    pub fn accepts(&self, norm: &ExactRational) -> bool {
        match self {
            NormFilter::Any => true,
            NormFilter::Below(t) => norm < t,
            NormFilter::AtMost(t) => norm <= t,
            NormFilter::Exactly(t) => norm == t,
        }
    }

    /// Largest integer `X` with `X / scale` accepted as a value of `12 N`, and whether
    /// acceptance needs equality. `None` when nothing can be accepted.
    pub(crate) fn integer_cut(&self, scale: i128) -> Option<(i128, bool)> {
        let cut = |t: &ExactRational| -> Option<(i128, i128)> {
            let v = t * integer(12);
            Some((v.numer().to_i128()?.checked_mul(scale)?, v.denom().to_i128()?))
        };
        match self {
            NormFilter::Any => Some((i128::MAX, false)),
            NormFilter::AtMost(t) => {
                let (p, q) = cut(t)?;
                Some((crate::arith::div_floor_i128(p, q), false))
            }
            NormFilter::Below(t) => {
                let (p, q) = cut(t)?;
                Some((crate::arith::div_floor_i128(p - 1, q), false))
            }
            NormFilter::Exactly(t) => {
                let (p, q) = cut(t)?;
                if p % q != 0 {
                    None
                } else {
                    Some((p / q, true))
                }
            }
        }
    }
}

/// Extra constraint on the sum of the elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    None,
    /// `s(a) = 0`; in divisor sweeps the last element is `-(sum of the others)` and
    /// need not divide the modulus.
    SumZero,
}

/// How results are identified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dedup {
    /// Canonical form only.
    Exact,
    /// `a` and `-a` are the same; see [`normalize_sign`].
    UpToSign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeFilter {
    Any,
    TypeA,
    TypeB,
}

impl TypeFilter {
    pub fn accepts(&self, a: &SignedList) -> bool {
        match self {
            TypeFilter::Any => true,
            TypeFilter::TypeA => a.classify_type() == ListType::TypeA,
            TypeFilter::TypeB => a.classify_type() == ListType::TypeB,
        }
    }
}

/// A finite search: either every list of `length` elements from the signed divisors
/// of `support_modulus`, or every instance of `shape`.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub length: usize,
    pub constraint: Constraint,
    pub shape: Option<Shape>,
    pub support_modulus: Option<u64>,
    pub norm: NormFilter,
    pub type_filter: TypeFilter,
    pub dedup: Dedup,
}

impl SearchSpec {
    pub fn divisors(length: usize, modulus: u64) -> SearchSpec {
        SearchSpec {
            length,
            constraint: Constraint::None,
            shape: None,
            support_modulus: Some(modulus),
            norm: NormFilter::Any,
            type_filter: TypeFilter::Any,
            dedup: Dedup::UpToSign,
        }
    }

    pub fn shaped(shape: Shape) -> SearchSpec {
        SearchSpec {
            length: shape.slots.len(),
            constraint: Constraint::None,
            shape: Some(shape),
            support_modulus: None,
            norm: NormFilter::Any,
            type_filter: TypeFilter::Any,
            dedup: Dedup::UpToSign,
        }
    }

    pub fn with_norm(mut self, f: NormFilter) -> Self {
        self.norm = f;
        self
    }

    pub fn with_constraint(mut self, c: Constraint) -> Self {
        self.constraint = c;
        self
    }

    pub fn with_type(mut self, t: TypeFilter) -> Self {
        self.type_filter = t;
        self
    }

    pub fn with_dedup(mut self, d: Dedup) -> Self {
        self.dedup = d;
        self
    }
}

/// Runs independent shards of a search. Results come back in shard order.
pub trait ShardRunner {
    fn run(&self, shards: usize, job: &(dyn Fn(usize) -> Vec<Hit> + Sync)) -> Vec<Vec<Hit>>;
}

/// Runs shards one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl ShardRunner for Sequential {
    fn run(&self, shards: usize, job: &(dyn Fn(usize) -> Vec<Hit> + Sync)) -> Vec<Vec<Hit>> {
        (0..shards).map(job).collect()
    }
}

/// Picks the representative of `{a, -a}`: more negatives than positives, and on a
/// tie the first canonical element positive.
pub fn normalize_sign(a: &SignedList) -> SignedList {
    match a.negatives().cmp(&a.positives()) {
        Ordering::Greater => a.clone(),
        Ordering::Less => a.negate(),
        Ordering::Equal => match a.elements().first() {
            Some(x) if x.is_negative() => a.negate(),
            _ => a.clone(),
        },
    }
}

/// Every list satisfying `spec`, sorted canonically, each once under its dedup policy.
pub fn enumerate(spec: &SearchSpec) -> Result<Vec<Hit>> {
    enumerate_with(spec, &Sequential)
}

pub fn enumerate_with(spec: &SearchSpec, runner: &dyn ShardRunner) -> Result<Vec<Hit>> {
    let shards = match (&spec.shape, spec.support_modulus) {
        (Some(shape), _) => shape::run(spec, shape, runner)?,
        (None, Some(m)) => sweep::run(spec, m, runner)?,
        (None, None) => return Err(Error::InfiniteSearch),
    };
    Ok(merge(shards, spec.dedup))
}

/// Merges shard outputs into canonical order, dropping duplicates.
pub(crate) fn merge(shards: Vec<Vec<Hit>>, dedup: Dedup) -> Vec<Hit> {
    let mut out: BTreeMap<SignedList, ExactRational> = BTreeMap::new();
    for (l, n) in shards.into_iter().flatten() {
        let l = if dedup == Dedup::UpToSign { normalize_sign(&l) } else { l };
        out.entry(l).or_insert(n);
    }
    out.into_iter().collect()
}

/// Merges several result sets.
pub fn union(parts: Vec<Vec<Hit>>, dedup: Dedup) -> Vec<Hit> {
    merge(parts, dedup)
}

/// Canonical list from `i64` values known to be nonzero and non-degenerate.
pub(crate) fn list_from_sorted(xs: &[i64]) -> SignedList {
    SignedList::from_canonical_unchecked(xs.iter().map(|&x| BigInt::from(x)).collect())
}

pub(crate) fn sort_canonical(xs: &mut [i64]) {
    xs.sort_unstable_by(|&a, &b| crate::list::cmp_canonical_i64(a, b));
}

/// `x` and `-x` both present (input sorted canonically).
pub(crate) fn is_degenerate_sorted(xs: &[i64]) -> bool {
    xs.windows(2).any(|w| w[0] == -w[1])
}

/// Exact norm of an `i64` list, preferring 128-bit arithmetic.
pub(crate) fn norm_i64(xs: &[i64]) -> ExactRational {
    match crate::list::twelve_l_norm_i64(xs) {
        Some((s, l)) => ExactRational::new(BigInt::from(s), BigInt::from(l) * 12),
        None => list_from_sorted_any(xs).norm().expect("nonempty"),
    }
}

fn list_from_sorted_any(xs: &[i64]) -> SignedList {
    SignedList::from_i64(xs).expect("nonzero")
}

/// Checked conversion of an arbitrary modulus to `u64`.
pub fn modulus_u64(m: &BigInt) -> Result<u64> {
    m.to_u64().ok_or_else(|| Error::TooLarge(format!("modulus {m} exceeds 64 bits")))
}


