//! k-separations `a = B b + C c` of primitive lists, the norm identity they
//! satisfy, and the divisor-support bound for lists of bounded separation.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{divisors, primes_up_to};
use crate::list::{make_list, SignedList};
use crate::rational::ExactRational;
use crate::{Error, Result};

/// Largest list length accepted by the subset scans.
pub const MAX_SCAN_LEN: usize = 20;

/// Divisor modulus for Type A lists of length 7 that are at most 7-separated.
pub const TYPE_A_7_SUPPORT: u64 = 2u64.pow(9) * 3u64.pow(3) * 5u64.pow(3) * 7u64.pow(3);
/// The same with sum zero; bounds the three paired elements.
pub const TYPE_A_7_SUM_ZERO_SUPPORT: u64 = 2u64.pow(6) * 3u64.pow(2) * 5u64.pow(2) * 7u64.pow(2);

/// A certified k-separation of a parent list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeparationWitness {
    pub k: u64,
    /// Primitive list `b`, first canonical element positive.
    pub b_part: SignedList,
    /// Primitive list `c`, first canonical element positive.
    pub c_part: SignedList,
    pub b_coef: BigInt,
    pub c_coef: BigInt,
    /// Positions in the parent's canonical order that form `B b`.
    pub b_indices: Vec<usize>,
}

impl SeparationWitness {
    pub fn k_divides_b(&self) -> bool {
        (&self.b_coef % BigInt::from(self.k)).is_zero()
    }

    /// `b~`: `(B/k) b` when `k | B`, else `B b`.
    pub fn reduced_b(&self) -> SignedList {
        let coef = if self.k_divides_b() { &self.b_coef / BigInt::from(self.k) } else { self.b_coef.clone() };
        self.b_part.scale(&coef).expect("nonzero coefficient")
    }

    /// `c~`: `C c` when `k | B`, else `(C/k) c`.
    pub fn reduced_c(&self) -> SignedList {
        let coef = if self.k_divides_b() { self.c_coef.clone() } else { &self.c_coef / BigInt::from(self.k) };
        self.c_part.scale(&coef).expect("nonzero coefficient")
    }
}

fn check_scan_input(a: &SignedList) -> Result<()> {
    if a.len() < 2 {
        return Err(Error::Precondition(format!("separation needs length >= 2, got {}", a.len())));
    }
    if a.len() > MAX_SCAN_LEN {
        return Err(Error::Precondition(format!("length {} exceeds subset scan limit", a.len())));
    }
    if !a.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    Ok(())
}

struct Split {
    // parent positions of each side
    s_idx: Vec<usize>,
    t_idx: Vec<usize>,
    s_coef: BigInt,
    t_coef: BigInt,
}

/// Signed gcd making the first canonical element of `part / coef` positive.
fn signed_content(part: &[&BigInt]) -> BigInt {
    let g = part.iter().fold(BigInt::zero(), |g, e| g.gcd(*e));
    if part[0].is_negative() {
        -g
    } else {
        g
    }
}

fn splits(a: &SignedList) -> Vec<Split> {
    let n = a.len();
    let el = a.elements();
    let full = (1u32 << n) - 1;
    let mut out = Vec::new();
    // each unordered partition once: the side holding position 0 is `s`
    for mask in 1..full {
        if mask & 1 == 0 {
            continue;
        }
        let s_idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let t_idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        let s: Vec<&BigInt> = s_idx.iter().map(|&i| &el[i]).collect();
        let t: Vec<&BigInt> = t_idx.iter().map(|&i| &el[i]).collect();
        let s_coef = signed_content(&s);
        let t_coef = signed_content(&t);
        out.push(Split { s_idx, t_idx, s_coef, t_coef });
    }
    out
}

/// Condition 3: for `x` on the `k`-divisible side and `y` on the other,
/// `gcd(x, y) = gcd(x / k, y)`.
fn gcd_preserved(el: &[BigInt], high: &[usize], low: &[usize], k: &BigInt) -> bool {
    for &i in high {
        let x = &el[i];
        let xk = x / k;
        for &j in low {
            let y = &el[j];
            if x.gcd(y) != xk.gcd(y) {
                return false;
            }
        }
    }
    true
}

fn witness_from(a: &SignedList, sp: &Split, k: u64) -> SeparationWitness {
    let el = a.elements();
    let side = |idx: &[usize], coef: &BigInt| {
        make_list(idx.iter().map(|&i| &el[i] / coef)).expect("nonzero")
    };
    let s_list = side(&sp.s_idx, &sp.s_coef);
    let t_list = side(&sp.t_idx, &sp.t_coef);
    let s_parent = make_list(sp.s_idx.iter().map(|&i| el[i].clone())).expect("nonzero");
    let t_parent = make_list(sp.t_idx.iter().map(|&i| el[i].clone())).expect("nonzero");
    // b is the shorter side; ties go to the canonically smaller parent sublist
    let s_is_b = match sp.s_idx.len().cmp(&sp.t_idx.len()) {
        core::cmp::Ordering::Less => true,
        core::cmp::Ordering::Greater => false,
        core::cmp::Ordering::Equal => s_parent <= t_parent,
    };
    if s_is_b {
        SeparationWitness {
            k,
            b_part: s_list,
            c_part: t_list,
            b_coef: sp.s_coef.clone(),
            c_coef: sp.t_coef.clone(),
            b_indices: sp.s_idx.clone(),
        }
    } else {
        SeparationWitness {
            k,
            b_part: t_list,
            c_part: s_list,
            b_coef: sp.t_coef.clone(),
            c_coef: sp.s_coef.clone(),
            b_indices: sp.t_idx.clone(),
        }
    }
}

fn split_valid_for(a: &SignedList, sp: &Split, k: u64) -> bool {
    let kb = BigInt::from(k);
    let s_div = (&sp.s_coef % &kb).is_zero();
    let t_div = (&sp.t_coef % &kb).is_zero();
    match (s_div, t_div) {
        (true, false) => gcd_preserved(a.elements(), &sp.s_idx, &sp.t_idx, &kb),
        (false, true) => gcd_preserved(a.elements(), &sp.t_idx, &sp.s_idx, &kb),
        _ => false,
    }
}

/// All k-separations of a primitive list, one per unordered partition.
pub fn find_separations(a: &SignedList, k: u64) -> Result<Vec<SeparationWitness>> {
    check_scan_input(a)?;
    if k < 2 {
        return Err(Error::Precondition(format!("k must be >= 2, got {k}")));
    }
    let mut found = BTreeSet::new();
    for sp in splits(a) {
        debug_assert!(sp.s_coef.gcd(&sp.t_coef).is_one(), "primitive parent forces coprime coefficients");
        if split_valid_for(a, &sp, k) {
            let w = witness_from(a, &sp, k);
            found.insert((w.b_part.clone(), w.c_part.clone(), w.b_coef.clone(), w.c_coef.clone(), w));
        }
    }
    Ok(found.into_iter().map(|t| t.4).collect())
}

pub fn is_k_separated(a: &SignedList, k: u64) -> Result<bool> {
    check_scan_input(a)?;
    Ok(splits(a).iter().any(|sp| split_valid_for(a, sp, k)))
}

/// Largest `k >= 2` with a k-separation, or 1 if none exists.
pub fn max_separation(a: &SignedList) -> Result<u64> {
    check_scan_input(a)?;
    let mut best = 1u64;
    for sp in splits(a) {
        for coef in [&sp.s_coef, &sp.t_coef] {
            let m = coef
                .magnitude()
                .to_u64()
                .ok_or_else(|| Error::TooLarge(format!("coefficient {coef}")))?;
            for k in divisors(m) {
                if k > best && split_valid_for(a, &sp, k) {
                    best = k;
                }
            }
        }
    }
    Ok(best)
}

/// Both sides of `N(a) = (1 - 1/k)(N(b) + N(c)) + (1/k) N(b~ + c~)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub norm_a: ExactRational,
    pub norm_b: ExactRational,
    pub norm_c: ExactRational,
    pub norm_tilde: ExactRational,
    pub tilde_len: usize,
}

impl Decomposition {
    pub fn rhs(&self, k: u64) -> ExactRational {
        let k = BigRational::from_integer(BigInt::from(k));
        let one = ExactRational::one();
        (&one - one.clone() / &k) * (&self.norm_b + &self.norm_c) + &self.norm_tilde / k
    }
}

/// Recomputes both sides of the separation identity and the length/parity facts.
pub fn check_decomposition(a: &SignedList, w: &SeparationWitness) -> Result<Decomposition> {
    let bad = |m: alloc::string::String| Err(Error::InvalidWitness(m));
    let bb = w.b_part.scale(&w.b_coef)?;
    let cc = w.c_part.scale(&w.c_coef)?;
    if bb.len() + cc.len() != a.len() || &bb.concat(&cc) != a {
        return bad(format!("{} B={} + {} C={} does not rebuild {a}", w.b_part, w.b_coef, w.c_part, w.c_coef));
    }
    let tilde = w.reduced_b().concat(&w.reduced_c());
    let d = Decomposition {
        norm_a: a.norm()?,
        norm_b: w.b_part.norm()?,
        norm_c: w.c_part.norm()?,
        norm_tilde: tilde.norm_opt(true)?,
        tilde_len: tilde.len(),
    };
    if d.rhs(w.k) != d.norm_a {
        return bad(format!("identity fails for {a} with k={}", w.k));
    }
    let diff = w.b_part.len().abs_diff(w.c_part.len());
    if d.tilde_len < diff {
        return bad(format!("l(b~ + c~) = {} < {diff}", d.tilde_len));
    }
    if d.tilde_len % 2 != a.len() % 2 {
        return bad(format!("l(b~ + c~) = {} has the wrong parity", d.tilde_len));
    }
    Ok(d)
}

/// Divisor modulus for primitive length-`n` lists that are at most k-separated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportBound {
    pub n: usize,
    pub k: u64,
    pub factors: Vec<(u64, u32)>,
    pub modulus: BigInt,
}

/// `prod_{p <= k} p^(r (n - 1))` with `p^r <= k < p^(r+1)`.
pub fn support_bound(n: usize, k: u64) -> SupportBound {
    assert!(n >= 1 && k >= 2);
    let mut factors = Vec::new();
    let mut modulus = BigInt::one();
    for p in primes_up_to(k) {
        let mut r = 0u32;
        let mut pr = 1u64;
        while pr.checked_mul(p).is_some_and(|x| x <= k) {
            pr *= p;
            r += 1;
        }
        let e = r * (n as u32 - 1);
        factors.push((p, e));
        modulus *= BigInt::from(p).pow(e);
    }
    SupportBound { n, k, factors, modulus }
}

/// The coefficients making `s(B b + C c) = 0`, normalised to `B > 0`;
/// `None` when either sum vanishes.
pub fn forced_coefficients(b: &SignedList, c: &SignedList) -> Option<(BigInt, BigInt)> {
    let sb = b.sum();
    let sc = c.sum();
    if sb.is_zero() || sc.is_zero() {
        return None;
    }
    let g = sb.gcd(&sc);
    let mut bc = -(&sc / &g);
    let mut cc = &sb / &g;
    if bc.is_negative() {
        bc = -bc;
        cc = -cc;
    }
    Some((bc, cc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn l(xs: &[i64]) -> SignedList {
        SignedList::from_i64(xs).unwrap()
    }

    #[test]
    fn p_squared_example() {
        let a = l(&[1, -5, 25]);
        let ws = find_separations(&a, 5).unwrap();
        assert_eq!(ws.len(), 2);
        let coefs: Vec<(i64, i64)> = ws
            .iter()
            .map(|w| {
                assert_eq!((&w.b_part, &w.c_part), (&l(&[1]), &l(&[1, -5])));
                (w.b_coef.to_i64().unwrap(), w.c_coef.to_i64().unwrap())
            })
            .collect();
        assert!(coefs.contains(&(1, -5)) && coefs.contains(&(25, 1)));
        for w in &ws {
            check_decomposition(&a, w).unwrap();
        }
        assert_eq!(max_separation(&a).unwrap(), 5);
    }

    #[test]
    fn chebyshev_separations() {
        let a = l(&[30, -15, -10, -6, 1]);
        for k in [2, 3, 5] {
            let ws = find_separations(&a, k).unwrap();
            assert!(!ws.is_empty(), "k={k}");
            for w in &ws {
                let d = check_decomposition(&a, w).unwrap();
                assert_eq!(d.norm_a, ratio(1, 4));
            }
        }
        assert!(find_separations(&a, 6).unwrap().is_empty());
        assert_eq!(max_separation(&a).unwrap(), 5);
    }

    #[test]
    fn two_element_degenerate_tail() {
        let a = l(&[1, -2]);
        let ws = find_separations(&a, 2).unwrap();
        assert_eq!(ws.len(), 1);
        let d = check_decomposition(&a, &ws[0]).unwrap();
        assert_eq!(d.norm_b, ratio(1, 12));
        assert_eq!(d.norm_c, ratio(1, 12));
        assert_eq!(d.norm_tilde, ratio(0, 1));
        assert_eq!(d.tilde_len, 0);
        assert_eq!(max_separation(&a).unwrap(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(find_separations(&l(&[2, -4]), 2), Err(Error::NotPrimitive));
        assert!(find_separations(&l(&[1]), 2).is_err());
    }

    #[test]
    fn support_bound_examples() {
        assert_eq!(support_bound(4, 4).modulus, BigInt::from(1728));
        let m = BigInt::from(2).pow(12u32) * BigInt::from(3).pow(6u32) * BigInt::from(5).pow(6u32) * BigInt::from(7).pow(6u32);
        assert_eq!(support_bound(7, 7).modulus, m);
        assert_eq!(support_bound(2, 2).modulus, BigInt::from(2));
    }

    #[test]
    fn forced_coefficient_examples() {
        let (b, c) = forced_coefficients(&l(&[1, -2, -3, 6]), &l(&[1, -2, 4, -8, 16])).unwrap();
        assert_eq!((b, c), (BigInt::from(11), BigInt::from(-2)));
        let (b, c) = forced_coefficients(&l(&[1]), &l(&[1, 2])).unwrap();
        assert_eq!((b, c), (BigInt::from(3), BigInt::from(-1)));
        assert_eq!(forced_coefficients(&l(&[1, 2, -3]), &l(&[1])), None);
    }
}
