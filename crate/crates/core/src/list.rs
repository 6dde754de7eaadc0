//! Canonical signed lists and their norms.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{divisors, gcd_u64, lcm_u128};
use crate::rational::{psi, ExactRational};
use crate::{Error, Result};

/// Pairing structure of a list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ListType {
    /// Splits into pairs `(a, -2a)`, plus one leftover when the length is odd.
    TypeA,
    TypeB,
}

/// A non-degenerate list of nonzero integers in canonical order:
/// ascending absolute value, negative before positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SignedList {
    elements: Vec<BigInt>,
}

/// Canonical element order.
pub fn cmp_canonical(a: &BigInt, b: &BigInt) -> Ordering {
    a.magnitude()
        .cmp(b.magnitude())
        .then_with(|| a.is_positive().cmp(&b.is_positive()))
}

pub fn cmp_canonical_i64(a: i64, b: i64) -> Ordering {
    a.unsigned_abs()
        .cmp(&b.unsigned_abs())
        .then_with(|| (a > 0).cmp(&(b > 0)))
}

impl Ord for SignedList {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.elements.iter().zip(&other.elements) {
            match cmp_canonical(a, b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.elements.len().cmp(&other.elements.len())
    }
}

impl PartialOrd for SignedList {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// Builds the canonical non-degenerate list, cancelling `(a, -a)` pairs.
pub fn make_list<I, T>(raw: I) -> Result<SignedList>
where
    I: IntoIterator<Item = T>,
    T: Into<BigInt>,
{
    // net multiplicity per absolute value: positives minus negatives
    let mut net: BTreeMap<BigInt, i64> = BTreeMap::new();
    for x in raw {
        let x: BigInt = x.into();
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let sign = if x.is_positive() { 1 } else { -1 };
        *net.entry(x.abs()).or_insert(0) += sign;
    }
    let mut elements = Vec::new();
    for (abs, c) in net {
        let v = if c > 0 { abs.clone() } else { -abs.clone() };
        for _ in 0..c.unsigned_abs() {
            elements.push(v.clone());
        }
    }
    Ok(SignedList { elements })
}

impl SignedList {
    pub fn new<I, T>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        make_list(raw)
    }

    pub fn from_i64(raw: &[i64]) -> Result<Self> {
        make_list(raw.iter().copied())
    }

    pub fn empty() -> Self {
        SignedList { elements: Vec::new() }
    }

    /// Wraps elements already known to be canonical and non-degenerate.
    pub(crate) fn from_canonical_unchecked(elements: Vec<BigInt>) -> Self {
        debug_assert!(elements.windows(2).all(|w| cmp_canonical(&w[0], &w[1]) != Ordering::Greater));
        SignedList { elements }
    }

    pub fn elements(&self) -> &[BigInt] {
        &self.elements
    }

    /// Length `l(a)`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Element sum `s(a)`.
    pub fn sum(&self) -> BigInt {
        self.elements.iter().sum()
    }

    pub fn positives(&self) -> usize {
        self.elements.iter().filter(|e| e.is_positive()).count()
    }

    pub fn negatives(&self) -> usize {
        self.len() - self.positives()
    }

    /// gcd of the absolute values; zero for the empty list.
    pub fn content(&self) -> BigInt {
        self.elements
            .iter()
            .fold(BigInt::zero(), |g, e| g.gcd(e))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides out the content.
    pub fn primitive_part(&self) -> SignedList {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        SignedList { elements: self.elements.iter().map(|e| e / &g).collect() }
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.elements.iter().map(|e| e.to_i64()).collect()
    }

    pub fn negate(&self) -> SignedList {
        make_list(self.elements.iter().map(|e| -e)).expect("nonzero")
    }

    /// Norm `(1/12) sum_{i,j} gcd(ai,aj)^2 / (ai aj)`; errors on the empty list.
    pub fn norm(&self) -> Result<ExactRational> {
        self.norm_opt(false)
    }

    /// Like [`SignedList::norm`], but with `allow_empty` the empty list has norm 0.
    pub fn norm_opt(&self, allow_empty: bool) -> Result<ExactRational> {
        if self.is_empty() {
            return if allow_empty { Ok(ExactRational::zero()) } else { Err(Error::EmptyList) };
        }
        if let Some(xs) = self.to_i64() {
            if let Some((s, l)) = twelve_l_norm_i64(&xs) {
                return Ok(BigRational::new(BigInt::from(s), BigInt::from(l) * 12));
            }
        }
        Ok(self.norm_big())
    }

    fn norm_big(&self) -> ExactRational {
        let abs: Vec<BigInt> = self.elements.iter().map(|e| e.abs()).collect();
        let l = abs.iter().fold(BigInt::one(), |acc, a| acc.lcm(a));
        let mut s = BigInt::zero();
        for i in 0..abs.len() {
            s += &l;
            for j in i + 1..abs.len() {
                let g = abs[i].gcd(&abs[j]);
                let lij = &abs[i] / &g * &abs[j];
                let term = &g * (&l / lij) * 2;
                if self.elements[i].is_positive() == self.elements[j].is_positive() {
                    s += term;
                } else {
                    s -= term;
                }
            }
        }
        BigRational::new(s, l * 12)
    }

    /// The norm as `int_0^1 a(x)^2 dx`, computed from the step structure of
    /// `a(x) = c(x) - s x` without any gcd identity.
    pub fn norm_by_integration(&self) -> Result<ExactRational> {
        self.norm_by_integration_opt(false)
    }

    pub fn norm_by_integration_opt(&self, allow_empty: bool) -> Result<ExactRational> {
        if self.is_empty() {
            return if allow_empty { Ok(ExactRational::zero()) } else { Err(Error::EmptyList) };
        }
        let xs = self
            .to_i64()
            .ok_or_else(|| Error::TooLarge(format!("{self} has elements beyond 64 bits")))?;
        integrate_square(&xs)
    }

    /// `a(x) = sum psi(aj x)`, with `psi(n) = 1/2` at integers.
    pub fn evaluate(&self, x: &ExactRational) -> ExactRational {
        let mut total = ExactRational::zero();
        for e in &self.elements {
            let t = x * BigRational::from_integer(e.clone());
            total += psi(&t);
        }
        total
    }

    /// Replaces each odd `a` by `2a, -a` and cancels; `a(x + 1/2)` as a list.
    pub fn involute(&self) -> SignedList {
        let two = BigInt::from(2);
        let mut raw = Vec::with_capacity(self.len() * 2);
        for e in &self.elements {
            if e.is_even() {
                raw.push(e.clone());
            } else {
                raw.push(e * &two);
                raw.push(-e);
            }
        }
        make_list(raw).expect("nonzero")
    }

    pub fn scale(&self, k: &BigInt) -> Result<SignedList> {
        if k.is_zero() {
            return Err(Error::ZeroElement);
        }
        make_list(self.elements.iter().map(|e| e * k))
    }

    pub fn scale_i64(&self, k: i64) -> Result<SignedList> {
        self.scale(&BigInt::from(k))
    }

    /// Concatenation with degeneracies removed.
    pub fn concat(&self, other: &SignedList) -> SignedList {
        make_list(self.elements.iter().chain(&other.elements).cloned()).expect("nonzero")
    }

    pub fn classify_type(&self) -> ListType {
        if is_type_a(&self.elements) {
            ListType::TypeA
        } else {
            ListType::TypeB
        }
    }
}

/// Free-function forms of the list operations.
pub fn norm(a: &SignedList) -> Result<ExactRational> {
    a.norm()
}

pub fn norm_by_integration(a: &SignedList) -> Result<ExactRational> {
    a.norm_by_integration()
}

pub fn evaluate(a: &SignedList, x: &ExactRational) -> ExactRational {
    a.evaluate(x)
}

pub fn involute(a: &SignedList) -> SignedList {
    a.involute()
}

pub fn scale(a: &SignedList, k: i64) -> Result<SignedList> {
    a.scale_i64(k)
}

pub fn concat(a: &SignedList, b: &SignedList) -> SignedList {
    a.concat(b)
}

pub fn classify_type(a: &SignedList) -> ListType {
    a.classify_type()
}

fn is_type_a(elements: &[BigInt]) -> bool {
    // distinct values in canonical order with multiplicities
    let mut distinct: Vec<(BigInt, usize)> = Vec::new();
    for e in elements {
        match distinct.last_mut() {
            Some((v, c)) if v == e => *c += 1,
            _ => distinct.push((e.clone(), 1)),
        }
    }
    let pairs_ok = |counts: &mut BTreeMap<BigInt, usize>| -> bool {
        // Relation x -> -2x forms chains; match greedily from the small end.
        for (v, _) in &distinct {
            let c = counts[v];
            if c == 0 {
                continue;
            }
            let partner = v * BigInt::from(-2);
            match counts.get_mut(&partner) {
                Some(pc) if *pc >= c => *pc -= c,
                _ => return false,
            }
            *counts.get_mut(v).unwrap() = 0;
        }
        true
    };
    let base: BTreeMap<BigInt, usize> = distinct.iter().cloned().collect();
    if elements.len().is_multiple_of(2) {
        let mut counts = base;
        return pairs_ok(&mut counts);
    }
    for (v, _) in &distinct {
        let mut counts = base.clone();
        *counts.get_mut(v).unwrap() -= 1;
        if pairs_ok(&mut counts) {
            return true;
        }
    }
    false
}

/// For a nonempty list returns `(S, L)` with `L = lcm |ai|` and
/// `S = sum_{i,j} sign(ai aj) gcd(ai,aj) L / lcm(ai,aj)`, so the norm is `S / (12 L)`.
/// `None` if 128-bit arithmetic would overflow.
pub(crate) fn twelve_l_norm_i64(xs: &[i64]) -> Option<(i128, u128)> {
    let mut l: u128 = 1;
    for &x in xs {
        l = lcm_u128(l, x.unsigned_abs() as u128)?;
        if l > (1u128 << 100) {
            return None;
        }
    }
    let li = l as i128;
    let n = xs.len() as i128;
    let mut s: i128 = n.checked_mul(li)?;
    for i in 0..xs.len() {
        let ai = xs[i].unsigned_abs();
        for j in i + 1..xs.len() {
            let aj = xs[j].unsigned_abs();
            let g = gcd_u64(ai, aj) as u128;
            let lij = (ai as u128 / g) * aj as u128;
            let term = (g * (l / lij)) as i128;
            let term = term.checked_mul(2)?;
            s = if (xs[i] > 0) == (xs[j] > 0) { s.checked_add(term)? } else { s.checked_sub(term)? };
        }
    }
    Some((s, l))
}

/// Breakpoint budget for [`SignedList::norm_by_integration`].
pub const INTEGRATION_LIMIT: u64 = 5_000_000;

fn integrate_square(xs: &[i64]) -> Result<ExactRational> {
    let total: u64 = xs.iter().map(|x| x.unsigned_abs()).sum();
    if total > INTEGRATION_LIMIT {
        return Err(Error::TooLarge(format!(
            "sum of |elements| is {total}, integration limit is {INTEGRATION_LIMIT}"
        )));
    }
    let n = xs.len() as i128;
    let s: i128 = xs.iter().map(|&x| x as i128).sum();
    // C = 2 c(x) where c(x) = n/2 + sum floor(aj x); a(x) = c(x) - s x off breakpoints.
    let c_end: i128 = n + 2 * xs.iter().map(|&a| if a > 0 { a as i128 - 1 } else { a as i128 }).sum::<i128>();

    let mut qs: BTreeSet<u64> = BTreeSet::new();
    for &a in xs {
        for d in divisors(a.unsigned_abs()) {
            if d > 1 {
                qs.insert(d);
            }
        }
    }

    // Abel summation over the jumps at interior breakpoints t = m/q:
    //   int c^2  = c_end^2 - sum d(c^2) t
    //   int x c  = c_end/2 - sum d(c) t^2 / 2
    let mut jump_sq = ExactRational::zero(); // sum dC^2 * t
    let mut jump_t2 = ExactRational::zero(); // sum dC * t^2
    for &q in &qs {
        let qi = q as i128;
        let mut a_q: i128 = 0;
        let mut b_q: i128 = 0;
        for m in 1..q {
            if gcd_u64(m, q) != 1 {
                continue;
            }
            let mi = m as i128;
            let mut right: i128 = n;
            let mut left: i128 = n;
            for &a in xs {
                let p = a as i128 * mi;
                if p % qi == 0 {
                    let k = p / qi;
                    if a > 0 {
                        right += 2 * k;
                        left += 2 * (k - 1);
                    } else {
                        right += 2 * (k - 1);
                        left += 2 * k;
                    }
                } else {
                    let f = crate::arith::div_floor_i128(p, qi);
                    right += 2 * f;
                    left += 2 * f;
                }
            }
            if right != left {
                a_q += (right * right - left * left) * mi;
                b_q += (right - left) * mi * mi;
            }
        }
        if a_q != 0 {
            jump_sq += BigRational::new(BigInt::from(a_q), BigInt::from(qi));
        }
        if b_q != 0 {
            jump_t2 += BigRational::new(BigInt::from(b_q), BigInt::from(qi * qi));
        }
    }
    let r = |x: i128| BigRational::from_integer(BigInt::from(x));
    let four = r(4);
    let int_c2 = (r(c_end * c_end) - jump_sq) / &four;
    let int_xc = (r(c_end) - jump_t2) / &four;
    Ok(int_c2 - r(2 * s) * int_xc + r(s * s) / r(3))
}
