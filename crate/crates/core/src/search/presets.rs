//! The concrete searches: sporadic integral ratios of length 5, 7 and 9, the
//! small-norm catalogs, and the probe of two families with `D = 2`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{
    enumerate_with, mitm_sum_zero, union, Catalog, Constraint, Dedup, Domain, Hit, NormFilter,
    SearchSpec, Shape, ShardRunner, TypeFilter,
};
use crate::arith::gcd_u64;
use crate::integrality::{family_membership, landau_min_max, RatioSpec};
use crate::list::{make_list, SignedList};
use crate::rational::{ratio, ExactRational};
use crate::separation::{forced_coefficients, TYPE_A_7_SUM_ZERO_SUPPORT};
use crate::{Error, Result};

fn quarter() -> NormFilter {
    NormFilter::Exactly(ratio(1, 4))
}

/// `2^a 3^b 5^c 7^d`.
const fn smooth(a: u32, b: u32, c: u32, d: u32) -> u64 {
    2u64.pow(a) * 3u64.pow(b) * 5u64.pow(c) * 7u64.pow(d)
}

/// Coefficient rows for `[v0, -2 v0, v1, -2 v1, ...]` over `vars` variables.
fn doubled_pairs(pairs: usize, vars: usize) -> Vec<Vec<i64>> {
    let mut slots = Vec::new();
    for p in 0..pairs {
        for c in [1, -2] {
            let mut row = vec![0; vars];
            row[p] = c;
            slots.push(row);
        }
    }
    slots
}

fn chain(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// Drops members of the three infinite families.
fn sporadic_only(hits: Vec<Hit>) -> Vec<Hit> {
    hits.into_iter()
        .filter(|(l, _)| family_membership(l).map(|f| f.is_empty()).unwrap_or(false))
        .collect()
}

/// `[a, -2a, b, -3b, a + 2b]` with `|a| <= 108`, `|b| <= 72`, norm exactly 1/4,
/// family members removed.
pub fn family_search_5(runner: &dyn ShardRunner) -> Result<Vec<Hit>> {
    family_search_5_box(108, 72, runner)
}

pub(crate) fn family_search_5_box(a_max: u64, b_max: u64, runner: &dyn ShardRunner) -> Result<Vec<Hit>> {
    let shape = Shape::new(
        vec![Domain::Box(a_max), Domain::Box(b_max)],
        vec![vec![1, 0], vec![-2, 0], vec![0, 1], vec![0, -3], vec![1, 2]],
    );
    let spec = SearchSpec::shaped(shape).with_norm(quarter());
    Ok(sporadic_only(enumerate_with(&spec, runner)?))
}

fn sweep_5(runner: &dyn ShardRunner) -> Result<Vec<Hit>> {
    // four elements dividing 2^6 3^3 5^3, the fifth minus their sum
    let spec = SearchSpec::divisors(5, smooth(6, 3, 3, 0)).with_constraint(Constraint::SumZero).with_norm(quarter());
    enumerate_with(&spec, runner)
}

fn type_a_7(runner: &dyn ShardRunner) -> Result<Vec<Hit>> {
    let m = TYPE_A_7_SUM_ZERO_SUPPORT;
    let mut slots = doubled_pairs(3, 3);
    slots.push(vec![1, 1, 1]);
    let shape = Shape::new(vec![Domain::Divisors(m); 3], slots).with_order(&chain(3));
    enumerate_with(&SearchSpec::shaped(shape).with_norm(quarter()), runner)
}

fn pattern_7(runner: &dyn ShardRunner) -> Result<Vec<Hit>> {
    // [a, -2a, b, -2b, c, -3c, a + b + 2c]
    let m = smooth(6, 3, 3, 0);
    let slots = vec![
        vec![1, 0, 0],
        vec![-2, 0, 0],
        vec![0, 1, 0],
        vec![0, -2, 0],
        vec![0, 0, 1],
        vec![0, 0, -3],
        vec![1, 1, 2],
    ];
    let shape = Shape::new(vec![Domain::Divisors(m); 3], slots).with_order(&[(0, 1)]);
    enumerate_with(&SearchSpec::shaped(shape).with_norm(quarter()), runner)
}

fn type_b_7(runner: &dyn ShardRunner) -> Result<Vec<Hit>> {
    // three numerator and four denominator entries, all dividing 2^10 3^5
    let hits = mitm_sum_zero(smooth(10, 5, 0, 0), 3, 4, &quarter(), runner)?;
    Ok(hits.into_iter().filter(|(l, _)| TypeFilter::TypeB.accepts(l)).collect())
}

fn type_a_9(runner: &dyn ShardRunner) -> Result<Vec<Hit>> {
    let m = smooth(10, 4, 0, 0);
    let mut slots = doubled_pairs(4, 4);
    slots.push(vec![1, 1, 1, 1]);
    let shape = Shape::new(vec![Domain::Divisors(m); 4], slots).with_order(&chain(4));
    enumerate_with(&SearchSpec::shaped(shape).with_norm(quarter()), runner)
}

/// Every primitive sum-zero `B b + C c` over `c` in `partners` (and `-c`), with the
/// coefficients forced by the sum, filtered by norm.
pub fn combine_with_fixed(b: &SignedList, partners: &[SignedList], filter: &NormFilter) -> Result<Vec<Hit>> {
    let mut out = Vec::new();
    for c in partners {
        for c in [c.clone(), c.negate()] {
            let Some((bc, cc)) = forced_coefficients(b, &c) else { continue };
            let raw: Vec<BigInt> =
                b.elements().iter().map(|x| x * &bc).chain(c.elements().iter().map(|x| x * &cc)).collect();
            let a = make_list(raw)?;
            if a.len() != b.len() + c.len() || !a.is_primitive() || !a.sum().is_zero() {
                continue;
            }
            let n = a.norm()?;
            if filter.accepts(&n) {
                out.push((a, n));
            }
        }
    }
    Ok(out)
}

fn combination_9(runner: &dyn ShardRunner) -> Result<Vec<Hit>> {
    let small = small_norm_catalog(SmallNormPreset::TypeALength5, runner)?;
    let partners: Vec<SignedList> =
        small.entries.iter().filter(|e| e.norm <= ratio(13, 72)).map(|e| e.list.clone()).collect();
    let b = SignedList::from_i64(&[1, -2, -3, 6])?;
    combine_with_fixed(&b, &partners, &quarter())
}

/// The sporadic integral ratios of length 5, 7 or 9 found by the configured searches,
/// oriented with one more denominator factorial.
pub fn classify_length(n: usize, runner: &dyn ShardRunner) -> Result<Catalog> {
    let parts = match n {
        5 => vec![family_search_5(runner)?, sweep_5(runner)?],
        7 => vec![type_a_7(runner)?, pattern_7(runner)?, type_b_7(runner)?],
        9 => vec![type_a_9(runner)?, combination_9(runner)?],
        _ => return Err(Error::Precondition(format!("classification is available for lengths 5, 7, 9, not {n}"))),
    };
    let hits = sporadic_only(union(parts, Dedup::UpToSign));
    Ok(Catalog::new(&format!("sporadic-{n}"), &format!("search presets for length {n}"), hits))
}

/// The small-norm catalogs, each a fixed search recipe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SmallNormPreset {
    /// `[a, -2a, b]` with norm at most 3/20.
    TypeALength3,
    /// `[a, -3a, b]` of type B with norm at most 5/28.
    TripleLength3,
    /// `[a, -4a, b]` with no ratio -2 or -3 pair and norm at most 11/60.
    QuadrupleLength3,
    /// Type B, length 4, norm below 11/60.
    TypeBLength4,
    /// Type A, length 5, norm at most 31/168.
    TypeALength5,
    /// Type B, length 5, norm at most 5/24 (the minimum).
    TypeBLength5,
    /// Type A, length 6, norm below 11/60.
    TypeALength6,
    /// Type B, length 6, norm at most 7/36.
    TypeBLength6,
    /// Length 7, norm at most 5/24.
    MinimumLength7,
    /// Length 8, norm at most 8/45.
    MinimumLength8,
}

impl SmallNormPreset {
    pub const ALL: [SmallNormPreset; 10] = [
        SmallNormPreset::TypeALength3,
        SmallNormPreset::TripleLength3,
        SmallNormPreset::QuadrupleLength3,
        SmallNormPreset::TypeBLength4,
        SmallNormPreset::TypeALength5,
        SmallNormPreset::TypeBLength5,
        SmallNormPreset::TypeALength6,
        SmallNormPreset::TypeBLength6,
        SmallNormPreset::MinimumLength7,
        SmallNormPreset::MinimumLength8,
    ];

    pub fn length(&self) -> usize {
        match self {
            SmallNormPreset::TypeALength3 | SmallNormPreset::TripleLength3 | SmallNormPreset::QuadrupleLength3 => 3,
            SmallNormPreset::TypeBLength4 => 4,
            SmallNormPreset::TypeALength5 | SmallNormPreset::TypeBLength5 => 5,
            SmallNormPreset::TypeALength6 | SmallNormPreset::TypeBLength6 => 6,
            SmallNormPreset::MinimumLength7 => 7,
            SmallNormPreset::MinimumLength8 => 8,
        }
    }

    pub fn filter(&self) -> NormFilter {
        match self {
            SmallNormPreset::TypeALength3 => NormFilter::AtMost(ratio(3, 20)),
            SmallNormPreset::TripleLength3 => NormFilter::AtMost(ratio(5, 28)),
            SmallNormPreset::QuadrupleLength3 => NormFilter::AtMost(ratio(11, 60)),
            SmallNormPreset::TypeBLength4 => NormFilter::Below(ratio(11, 60)),
            SmallNormPreset::TypeALength5 => NormFilter::AtMost(ratio(31, 168)),
            SmallNormPreset::TypeBLength5 => NormFilter::AtMost(ratio(5, 24)),
            SmallNormPreset::TypeALength6 => NormFilter::Below(ratio(11, 60)),
            SmallNormPreset::TypeBLength6 => NormFilter::AtMost(ratio(7, 36)),
            SmallNormPreset::MinimumLength7 => NormFilter::AtMost(ratio(5, 24)),
            SmallNormPreset::MinimumLength8 => NormFilter::AtMost(ratio(8, 45)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SmallNormPreset::TypeALength3 => "type-a-3",
            SmallNormPreset::TripleLength3 => "triple-3",
            SmallNormPreset::QuadrupleLength3 => "quadruple-3",
            SmallNormPreset::TypeBLength4 => "type-b-4",
            SmallNormPreset::TypeALength5 => "type-a-5",
            SmallNormPreset::TypeBLength5 => "type-b-5",
            SmallNormPreset::TypeALength6 => "type-a-6",
            SmallNormPreset::TypeBLength6 => "type-b-6",
            SmallNormPreset::MinimumLength7 => "minimum-7",
            SmallNormPreset::MinimumLength8 => "minimum-8",
        }
    }

    pub fn from_name(s: &str) -> Option<SmallNormPreset> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }

    /// The preset with this length and cutoff.
    pub fn lookup(n: usize, filter: &NormFilter) -> Result<SmallNormPreset> {
        Self::ALL
            .into_iter()
            .find(|p| p.length() == n && p.filter() == *filter)
            .ok_or_else(|| Error::UnknownPreset(format!("no small-norm catalog for length {n} with {filter:?}")))
    }
}

/// `[a, -k a, b]`.
fn pair_shape_3(k: i64, bound: u64) -> Shape {
    Shape::new(vec![Domain::Box(bound), Domain::Box(bound)], vec![vec![1, 0], vec![-k, 0], vec![0, 1]])
}

/// Contains `x` and `-k x`.
fn has_ratio_pair(a: &SignedList, k: i64) -> bool {
    let xs = a.elements();
    xs.iter().any(|x| {
        let y = x * BigInt::from(-k);
        xs.contains(&y)
    })
}

/// Runs one small-norm recipe.
pub fn small_norm_catalog(preset: SmallNormPreset, runner: &dyn ShardRunner) -> Result<Catalog> {
    let f = preset.filter();
    let run = |spec: SearchSpec| enumerate_with(&spec.with_norm(f.clone()), runner);
    let hits = match preset {
        SmallNormPreset::TypeALength3 => run(SearchSpec::shaped(pair_shape_3(2, 12)))?,
        SmallNormPreset::TripleLength3 => run(SearchSpec::shaped(pair_shape_3(3, 64)).with_type(TypeFilter::TypeB))?,
        SmallNormPreset::QuadrupleLength3 => run(SearchSpec::shaped(pair_shape_3(4, 64)))?
            .into_iter()
            .filter(|(l, _)| !has_ratio_pair(l, 2) && !has_ratio_pair(l, 3))
            .collect(),
        SmallNormPreset::TypeBLength4 => {
            let swept = run(SearchSpec::divisors(4, smooth(6, 3, 0, 0)).with_type(TypeFilter::TypeB))?;
            // [a, -3a, b, -3b]
            let slots = vec![vec![1, 0], vec![-3, 0], vec![0, 1], vec![0, -3]];
            let shape = Shape::new(vec![Domain::Box(64); 2], slots).with_order(&[(0, 1)]);
            let pairs = run(SearchSpec::shaped(shape).with_type(TypeFilter::TypeB))?;
            union(vec![swept, pairs], Dedup::UpToSign)
        }
        SmallNormPreset::TypeALength5 => {
            // up to sign the unpaired element is negative
            let m = smooth(6, 2, 2, 2);
            let mut slots = doubled_pairs(2, 3);
            slots.push(vec![0, 0, 1]);
            let shape = Shape::new(vec![Domain::Divisors(m), Domain::Divisors(m), Domain::NegativeDivisors(m)], slots)
                .with_order(&[(0, 1)]);
            run(SearchSpec::shaped(shape))?
        }
        SmallNormPreset::TypeBLength5 => {
            run(SearchSpec::divisors(5, smooth(8, 4, 0, 0)).with_type(TypeFilter::TypeB))?
        }
        SmallNormPreset::TypeALength6 => {
            let shape = Shape::new(vec![Domain::Box(64); 3], doubled_pairs(3, 3)).with_order(&chain(3));
            run(SearchSpec::shaped(shape))?
        }
        SmallNormPreset::TypeBLength6 => {
            let swept = run(SearchSpec::divisors(6, smooth(5, 4, 0, 0)).with_type(TypeFilter::TypeB))?;
            // [a, -2a, -3a, 6a, b, -3b] and [a, -2a, 4a, b, -2b, 4b]
            let s1 = Shape::new(
                vec![Domain::Box(200); 2],
                vec![vec![1, 0], vec![-2, 0], vec![-3, 0], vec![6, 0], vec![0, 1], vec![0, -3]],
            );
            let s2 = Shape::new(
                vec![Domain::Box(200); 2],
                vec![vec![1, 0], vec![-2, 0], vec![4, 0], vec![0, 1], vec![0, -2], vec![0, 4]],
            )
            .with_order(&[(0, 1)]);
            let a = run(SearchSpec::shaped(s1).with_type(TypeFilter::TypeB))?;
            let b = run(SearchSpec::shaped(s2).with_type(TypeFilter::TypeB))?;
            union(vec![swept, a, b], Dedup::UpToSign)
        }
        SmallNormPreset::MinimumLength7 => {
            let mut slots = doubled_pairs(3, 4);
            slots.push(vec![0, 0, 0, 1]);
            let inner = Domain::Divisors(smooth(8, 3, 0, 0));
            let shape = Shape::new(vec![inner.clone(), inner.clone(), inner, Domain::Divisors(smooth(9, 3, 0, 0))], slots)
                .with_order(&chain(3));
            let typed = run(SearchSpec::shaped(shape))?;
            let swept = run(SearchSpec::divisors(7, 72))?;
            union(vec![typed, swept], Dedup::UpToSign)
        }
        SmallNormPreset::MinimumLength8 => run(SearchSpec::divisors(8, 120))?,
    };
    Ok(Catalog::new(preset.name(), "small-norm search preset", hits))
}

/// The two families with `D = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D2Family {
    /// `[-a, 2a, -4a, -b, 2b, -4b, 6(a+b), -3(a+b)]`.
    Eight,
    /// `[3a, 3b, -a, -b, -(a+b), -(a+b)]`.
    Six,
}

impl D2Family {
    /// The list for `(a, b)` after cancellation, or `None` if an element vanishes.
    pub fn instance(&self, a: i64, b: i64) -> Option<SignedList> {
        let s = a + b;
        let raw: Vec<i64> = match self {
            D2Family::Eight => vec![-a, 2 * a, -4 * a, -b, 2 * b, -4 * b, 6 * s, -3 * s],
            D2Family::Six => vec![3 * a, 3 * b, -a, -b, -s, -s],
        };
        if raw.contains(&0) {
            return None;
        }
        SignedList::from_i64(&raw).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D2ProbeReport {
    pub family: D2Family,
    pub tested: usize,
    pub integral: usize,
    pub skipped: usize,
    /// Instances whose step function dips below zero, or whose `D` is not 2.
    pub failures: Vec<(i64, i64)>,
    pub min_norm: Option<ExactRational>,
}

/// Checks every coprime `1 <= a, b <= bound` instance of a family with Landau's
/// criterion.
pub fn d2_family_probe(family: D2Family, bound: i64) -> Result<D2ProbeReport> {
    let mut r = D2ProbeReport { family, tested: 0, integral: 0, skipped: 0, failures: Vec::new(), min_norm: None };
    for a in 1..=bound {
        for b in 1..=bound {
            if gcd_u64(a as u64, b as u64) != 1 {
                continue;
            }
            let Some(list) = family.instance(a, b) else {
                r.skipped += 1;
                continue;
            };
            let spec = RatioSpec::from_list(&list)?;
            r.tested += 1;
            let n = list.norm()?;
            if r.min_norm.as_ref().is_none_or(|m| n < *m) {
                r.min_norm = Some(n);
            }
            if spec.d() == 2 && landau_min_max(&spec).integral() {
                r.integral += 1;
            } else {
                r.failures.push((a, b));
            }
        }
    }
    Ok(r)
}
