//! Divisor lists weighted by the Liouville function, `[lambda(d) d : d | N]`,
//! which give small norms for highly composite `N`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::arith::{divisors_of_factorization, factorize, prime_pi, primes_up_to};
use crate::bounds::BoundTable;
use crate::list::{make_list, SignedList};
use crate::rational::{integer, ratio, ExactRational};
use crate::{Error, Result};

/// `N` as `[(p, e)]` with ascending primes.
pub type Factorization = Vec<(u64, u32)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiouvilleList {
    pub n: u64,
    pub list: SignedList,
    pub d_of_n: u64,
}

/// `d(N)` from a factorization.
pub fn divisor_count(f: &[(u64, u32)]) -> BigInt {
    f.iter().fold(BigInt::one(), |acc, &(_, e)| acc * (e + 1))
}

pub fn value_of(f: &[(u64, u32)]) -> BigInt {
    f.iter().fold(BigInt::one(), |acc, &(p, e)| acc * BigInt::from(p).pow(e))
}

/// The list `[lambda(d) d : d | N]`.
pub fn build_liouville(n: u64) -> Result<LiouvilleList> {
    if n == 0 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    let f = factorize(n);
    let raw = divisors_of_factorization(&f).into_iter().map(|d| {
        let omega: u32 = f.iter().map(|&(p, _)| crate::arith::valuation(d, p)).sum();
        let d = BigInt::from(d);
        if omega.is_multiple_of(2) {
            d
        } else {
            -d
        }
    });
    let list = make_list(raw)?;
    let d_of_n = list.len() as u64;
    Ok(LiouvilleList { n, list, d_of_n })
}

/// `f(p^k) = 1 + 2 sum_{j=1..k} ((k+1-j)/(k+1)) (-1)^j / p^j`.
fn local_factor(p: u64, k: u32) -> ExactRational {
    let mut s = ExactRational::one();
    let mut pj = BigInt::one();
    for j in 1..=k {
        pj *= p;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let coef = ratio(2 * sign * (k as i64 + 1 - j as i64), k as i64 + 1);
        s += coef / ExactRational::from_integer(pj.clone());
    }
    s
}

/// `(d(N)/12) prod_{p^k || N} f(p^k)`, the norm of the Liouville list of `N`.
pub fn liouville_norm_from_factorization(f: &[(u64, u32)]) -> ExactRational {
    let mut v = ExactRational::from_integer(divisor_count(f)) / integer(12);
    for &(p, k) in f {
        v *= local_factor(p, k);
    }
    v
}

pub fn liouville_norm_formula(n: u64) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    Ok(liouville_norm_from_factorization(&factorize(n)))
}

/// `N_k = prod_{p <= k} p^r` with `r = floor(2^(k / pi(k)))`.
pub fn n_k(k: u64) -> Result<Factorization> {
    if k < 2 {
        return Err(Error::Precondition(format!("need k >= 2, got {k}")));
    }
    let pi = prime_pi(k) as u32;
    let cap = BigInt::one() << k;
    // largest r with r^pi <= 2^k
    let mut r: u32 = 1;
    while BigInt::from(r + 1).pow(pi) <= cap {
        r += 1;
    }
    Ok(primes_up_to(k).into_iter().map(|p| (p, r)).collect())
}

/// One row of the desk-scale comparison between the Liouville construction and
/// the lower bound at the same length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRow {
    pub k: u64,
    pub factorization: Factorization,
    pub n: usize,
    pub upper: ExactRational,
    pub lower: ExactRational,
}

impl ProbeRow {
    pub fn ratio(&self) -> ExactRational {
        &self.upper / &self.lower
    }

    /// `2^k <= d(N_k) < 2^(k+1)`.
    pub fn length_in_dyadic_range(&self) -> bool {
        let n = self.n as u128;
        (1u128 << self.k) <= n && n < (1u128 << (self.k + 1))
    }
}

/// Norm of the Liouville list of `N_k` against the lower bound for `G(d(N_k))`.
pub fn asymptotic_ratio_probe(table: &BoundTable, k: u64) -> Result<ProbeRow> {
    let f = n_k(k)?;
    let n = divisor_count(&f);
    let n: usize = n
        .try_into()
        .map_err(|_| Error::TooLarge(format!("d(N_{k}) does not fit in usize")))?;
    let upper = liouville_norm_from_factorization(&f);
    let lower = table.g_at(n);
    Ok(ProbeRow { k, factorization: f, n, upper, lower })
}

/// `p b + e c` for the sign `e` giving the smaller norm, with `p` a prime larger
/// than every element of `c`, so the two parts cannot collide.
pub fn prime_concat(b: &SignedList, c: &SignedList, p: u64) -> Result<(SignedList, ExactRational)> {
    let big_p = BigInt::from(p);
    if c.elements().iter().any(|e| e.magnitude() >= big_p.magnitude()) {
        return Err(Error::Precondition(format!("{p} does not exceed the elements of {c}")));
    }
    let pb = b.scale(&big_p)?;
    let mut best: Option<(SignedList, ExactRational)> = None;
    for cc in [c.clone(), c.negate()] {
        let l = pb.concat(&cc);
        let v = l.norm()?;
        if best.as_ref().is_none_or(|(_, w)| v < *w) {
            best = Some((l, v));
        }
    }
    Ok(best.expect("two candidates"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lists() {
        let l = |n| build_liouville(n).unwrap().list;
        assert_eq!(l(4), SignedList::from_i64(&[1, -2, 4]).unwrap());
        assert_eq!(l(6), SignedList::from_i64(&[1, -2, -3, 6]).unwrap());
        assert_eq!(l(12), SignedList::from_i64(&[1, -2, -3, 4, 6, -12]).unwrap());
        assert_eq!(build_liouville(36).unwrap().d_of_n, 9);
        assert!(build_liouville(0).is_err());
    }

    #[test]
    fn formula_values() {
        assert_eq!(local_factor(2, 2), ratio(1, 2));
        assert_eq!(liouville_norm_formula(4).unwrap(), ratio(1, 8));
        assert_eq!(liouville_norm_formula(6).unwrap(), ratio(1, 9));
        assert_eq!(liouville_norm_formula(1).unwrap(), ratio(1, 12));
    }

    #[test]
    fn formula_matches_norm() {
        for n in 1..=600u64 {
            let l = build_liouville(n).unwrap();
            assert_eq!(l.list.norm().unwrap(), liouville_norm_formula(n).unwrap(), "N={n}");
        }
    }

    #[test]
    fn n_k_exponents() {
        assert_eq!(n_k(2).unwrap(), vec![(2, 4)]);
        assert_eq!(n_k(3).unwrap(), vec![(2, 2), (3, 2)]);
        assert_eq!(value_of(&n_k(3).unwrap()), BigInt::from(36));
    }

    #[test]
    fn probe_bounds_are_consistent() {
        let t = crate::bounds::build_table(128, 3).unwrap();
        for k in 2..=12 {
            let row = asymptotic_ratio_probe(&t, k).unwrap();
            assert!(row.upper >= row.lower, "k={k}");
        }
        assert_eq!(asymptotic_ratio_probe(&t, 2).unwrap().n, 5);
    }

    #[test]
    fn prime_concat_is_near_additive() {
        let b = SignedList::from_i64(&[1, -2, -3, 6]).unwrap();
        let c = SignedList::from_i64(&[1, -2, 4]).unwrap();
        let (l, v) = prime_concat(&b, &c, 1_000_003).unwrap();
        assert_eq!(l.len(), 7);
        let sum = b.norm().unwrap() + c.norm().unwrap();
        assert!(v <= &sum + ratio(1, 100_000));
        assert!(prime_concat(&b, &c, 3).is_err());
    }
}
