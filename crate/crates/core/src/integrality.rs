//! Integrality of factorial ratios `prod (ai n)! / prod (bj n)!`.
//!
//! Three independent tests: the step function
//! `f(x) = sum floor(ai x) - sum floor(bj x)` (integral for all `n` iff `f >= 0`),
//! the norm of the associated list, and prime valuations via Legendre's formula.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{divisors, gcd_u64, legendre, primes_up_to};
use crate::list::{make_list, SignedList};
use crate::rational::{ratio, ExactRational};
use crate::{Error, Result};

/// A factorial ratio with numerator `(a1 n)! ... (aK n)!` and denominator
/// `(b1 n)! ... (bL n)!`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatioSpec {
    num: Vec<u64>,
    den: Vec<u64>,
}

impl RatioSpec {
    /// Validates and sorts the two multisets.
    pub fn new(mut num: Vec<u64>, mut den: Vec<u64>) -> Result<Self> {
        if num.is_empty() || den.is_empty() {
            return Err(Error::Precondition("numerator and denominator must be nonempty".into()));
        }
        if num.iter().chain(&den).any(|&x| x == 0) {
            return Err(Error::ZeroElement);
        }
        let sa: u128 = num.iter().map(|&x| x as u128).sum();
        let sb: u128 = den.iter().map(|&x| x as u128).sum();
        if sa != sb {
            return Err(Error::Precondition(format!("unbalanced ratio: sums {sa} and {sb}")));
        }
        let top: BTreeSet<u64> = num.iter().copied().collect();
        if let Some(x) = den.iter().find(|x| top.contains(x)) {
            return Err(Error::Precondition(format!("{x} appears on both sides")));
        }
        num.sort_unstable();
        den.sort_unstable();
        Ok(RatioSpec { num, den })
    }

    pub fn numerator(&self) -> &[u64] {
        &self.num
    }

    pub fn denominator(&self) -> &[u64] {
        &self.den
    }

    /// `D = L - K`; negative when the numerator is longer.
    pub fn d(&self) -> i64 {
        self.den.len() as i64 - self.num.len() as i64
    }

    pub fn max_entry(&self) -> u64 {
        self.num.iter().chain(&self.den).copied().max().unwrap_or(0)
    }

    pub fn is_primitive(&self) -> bool {
        self.num.iter().chain(&self.den).fold(0, |g, &x| gcd_u64(g, x)) == 1
    }

    /// The list `[a1, ..., aK, -b1, ..., -bL]`.
    pub fn to_list(&self) -> SignedList {
        let raw = self
            .num
            .iter()
            .map(|&a| BigInt::from(a))
            .chain(self.den.iter().map(|&b| -BigInt::from(b)));
        make_list(raw).expect("entries are nonzero")
    }

    /// Reads a sum-zero list back: positives on top, negatives below.
    pub fn from_list(a: &SignedList) -> Result<Self> {
        if !a.sum().is_zero() {
            return Err(Error::Precondition(format!("{a} does not sum to zero")));
        }
        let mut num = Vec::new();
        let mut den = Vec::new();
        for e in a.elements() {
            let v = e
                .magnitude()
                .to_u64()
                .ok_or_else(|| Error::TooLarge(format!("{e} exceeds 64 bits")))?;
            if e.is_positive() {
                num.push(v);
            } else {
                den.push(v);
            }
        }
        RatioSpec::new(num, den)
    }

    /// Swaps numerator and denominator.
    pub fn flipped(&self) -> RatioSpec {
        RatioSpec { num: self.den.clone(), den: self.num.clone() }
    }
}

/// Free-function form of [`RatioSpec::to_list`].
pub fn to_list(r: &RatioSpec) -> SignedList {
    r.to_list()
}

/// `f(x)` at an arbitrary rational point.
pub fn landau_value(r: &RatioSpec, x: &ExactRational) -> BigInt {
    let mut total = BigInt::zero();
    for &a in &r.num {
        total += (x * ExactRational::from_integer(BigInt::from(a))).floor().to_integer();
    }
    for &b in &r.den {
        total -= (x * ExactRational::from_integer(BigInt::from(b))).floor().to_integer();
    }
    total
}

fn value_at(r: &RatioSpec, m: u64, q: u64) -> i64 {
    let fl = |a: u64| ((a as u128 * m as u128) / q as u128) as i64;
    r.num.iter().map(|&a| fl(a)).sum::<i64>() - r.den.iter().map(|&b| fl(b)).sum::<i64>()
}

/// Breakpoint denominators in ascending order: every divisor of some entry.
fn denominators(r: &RatioSpec) -> Vec<u64> {
    let mut qs = BTreeSet::new();
    let entries: BTreeSet<u64> = r.num.iter().chain(&r.den).copied().collect();
    for e in entries {
        qs.extend(divisors(e));
    }
    qs.into_iter().collect()
}

/// Extremes of `f` over one period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LandauRange {
    pub min: i64,
    pub max: i64,
    /// Smallest breakpoint in `[0, 1)` where the minimum is attained.
    pub argmin: ExactRational,
}

impl LandauRange {
    pub fn integral(&self) -> bool {
        self.min >= 0
    }
}

/// Exact minimum and maximum of `f` on `[0, 1)`. `f` is a right-continuous step
/// function of period 1 jumping only at `m/q` with `q` dividing an entry, so its
/// values at those points (each reduced fraction taken once) are all its values.
pub fn landau_min_max(r: &RatioSpec) -> LandauRange {
    let mut min = 0i64;
    let mut max = 0i64;
    let mut argmin = ratio(0, 1);
    for q in denominators(r) {
        for m in 1..q {
            if gcd_u64(m, q) != 1 {
                continue;
            }
            let v = value_at(r, m, q);
            if v < min || (v == min && ratio(m as i64, q as i64) < argmin && min < 0) {
                min = v;
                argmin = ratio(m as i64, q as i64);
            }
            max = max.max(v);
        }
    }
    LandauRange { min, max, argmin }
}

/// First breakpoint with `f < 0`, scanning small denominators first.
pub fn landau_counterexample(r: &RatioSpec) -> Option<ExactRational> {
    for q in denominators(r) {
        for m in 1..q {
            if gcd_u64(m, q) == 1 && value_at(r, m, q) < 0 {
                return Some(ratio(m as i64, q as i64));
            }
        }
    }
    None
}

/// `prod (ai n)! / prod (bj n)!` is an integer for every `n >= 1`.
pub fn is_integral(r: &RatioSpec) -> bool {
    landau_counterexample(r).is_none()
}

/// Result of the norm test on an odd sum-zero list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarterVerdict {
    pub integral: bool,
    pub norm: ExactRational,
    /// The list read as a ratio with one more factorial below than above.
    pub spec: RatioSpec,
}

/// For a primitive sum-zero list of odd length, integrality with `D = 1` holds
/// exactly when the norm is `1/4`.
pub fn norm_quarter_check(a: &SignedList) -> Result<QuarterVerdict> {
    if a.len().is_multiple_of(2) {
        return Err(Error::Precondition(format!("{a} has even length")));
    }
    if !a.sum().is_zero() {
        return Err(Error::Precondition(format!("{a} does not sum to zero")));
    }
    if !a.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    // a(0+) = (K - L)/2 must be -1/2
    let oriented = if a.positives() > a.negatives() { a.negate() } else { a.clone() };
    let norm = oriented.norm()?;
    let spec = RatioSpec::from_list(&oriented)?;
    Ok(QuarterVerdict { integral: norm == ratio(1, 4), norm, spec })
}

/// Outcome of the prime-valuation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    Pass,
    /// Smallest `n`, then smallest prime `p`, where the denominator has more factors of `p`.
    Fail { n: u64, p: u64 },
}

/// Checks `sum v_p((ai n)!) >= sum v_p((bj n)!)` for `1 <= n <= n_max` and every
/// prime `p` up to `max_entry * n` (optionally capped at `p_max`).
pub fn valuation_oracle(r: &RatioSpec, n_max: u64, p_max: Option<u64>) -> Result<OracleVerdict> {
    let top = r
        .max_entry()
        .checked_mul(n_max)
        .ok_or_else(|| Error::TooLarge("prime range overflows".into()))?;
    let limit = p_max.map_or(top, |c| c.min(top));
    if limit > 1 << 32 {
        return Err(Error::TooLarge(format!("prime range up to {limit}")));
    }
    let primes = primes_up_to(limit);
    for n in 1..=n_max {
        let reach = r.max_entry() * n;
        for &p in primes.iter().take_while(|&&p| p <= reach) {
            let up: u64 = r.num.iter().map(|&a| legendre(a * n, p)).sum();
            let down: u64 = r.den.iter().map(|&b| legendre(b * n, p)).sum();
            if up < down {
                return Ok(OracleVerdict::Fail { n, p });
            }
        }
    }
    Ok(OracleVerdict::Pass)
}

/// The three infinite families of integral ratios with `D = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `((a+b) n)! / ((a n)! (b n)!)`, `a <= b`.
    Binomial { a: u64, b: u64 },
    /// `(2a n)! (2b n)! / ((a n)! (b n)! ((a+b) n)!)`, `a <= b`.
    Second { a: u64, b: u64 },
    /// `(2a n)! (b n)! / ((a n)! (2b n)! ((a-b) n)!)`, `a > b`.
    Third { a: u64, b: u64 },
}

impl Family {
    /// The ratio for these parameters, with factorials common to both sides cancelled.
    pub fn ratio(&self) -> Result<RatioSpec> {
        let (num, den) = match *self {
            Family::Binomial { a, b } => (alloc::vec![a + b], alloc::vec![a, b]),
            Family::Second { a, b } => (alloc::vec![2 * a, 2 * b], alloc::vec![a, b, a + b]),
            Family::Third { a, b } => {
                if a <= b {
                    return Err(Error::Precondition(format!("third family needs a > b, got a={a}, b={b}")));
                }
                (alloc::vec![2 * a, b], alloc::vec![a, 2 * b, a - b])
            }
        };
        let mut den = den;
        let mut top = Vec::new();
        for x in num {
            match den.iter().position(|&y| y == x) {
                Some(i) => {
                    den.swap_remove(i);
                }
                None => top.push(x),
            }
        }
        RatioSpec::new(top, den)
    }
}

/// Every family a primitive odd sum-zero list belongs to, after orienting it so the
/// negatives are the longer side. Empty means a candidate sporadic list.
pub fn family_membership(a: &SignedList) -> Result<Vec<Family>> {
    if a.len().is_multiple_of(2) || !a.sum().is_zero() {
        return Err(Error::Precondition(format!("{a} is not an odd sum-zero list")));
    }
    if !a.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let oriented = if a.positives() > a.negatives() { a.negate() } else { a.clone() };
    let spec = RatioSpec::from_list(&oriented)?;
    let (num, den) = (spec.numerator(), spec.denominator());
    let mut out = BTreeSet::new();
    if num.len() == 1 && den.len() == 2 {
        out.insert(Family::Binomial { a: den[0], b: den[1] });
    }
    if num.len() == 2 && den.len() == 3 {
        let same = |mut xs: Vec<u64>, ys: &[u64]| {
            xs.sort_unstable();
            xs == ys
        };
        for i in 0..3 {
            for j in i + 1..3 {
                let (x, y) = (den[i], den[j]);
                let rest = den[3 - i - j];
                if rest == x + y && same(alloc::vec![2 * x, 2 * y], num) {
                    out.insert(Family::Second { a: x, b: y });
                }
            }
        }
        for (two_a, b) in [(num[0], num[1]), (num[1], num[0])] {
            if two_a % 2 == 0 && two_a / 2 > b {
                let x = two_a / 2;
                if same(alloc::vec![x, 2 * b, x - b], den) {
                    out.insert(Family::Third { a: x, b });
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Integer value of the ratio at `n`, for small cases.
pub fn ratio_value(r: &RatioSpec, n: u64) -> ExactRational {
    let fact = |m: u64| (1..=m).fold(BigInt::from(1), |acc, k| acc * k);
    let top = r.num.iter().fold(BigInt::from(1), |acc, &a| acc * fact(a * n));
    let bottom = r.den.iter().fold(BigInt::from(1), |acc, &b| acc * fact(b * n));
    ExactRational::new(top, bottom)
}
