//! Small-integer number theory: gcd, primes, factorisation, divisors, factorial valuations.

use alloc::vec;
use alloc::vec::Vec;

/// Binary gcd.
#[inline]
pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

#[inline]
pub fn gcd_i64(a: i64, b: i64) -> u64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs())
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `lcm(a, b)`, `None` on overflow.
pub fn lcm_u64(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd_u64(a, b)).checked_mul(b)
}

pub fn lcm_u128(a: u128, b: u128) -> Option<u128> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd_u128(a, b)).checked_mul(b)
}

/// Primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// The `r`-th prime, 1-based (`nth_prime(1) == 2`).
pub fn nth_prime(r: usize) -> u64 {
    assert!(r >= 1, "primes are 1-indexed");
    let mut limit = 16u64;
    loop {
        let ps = primes_up_to(limit);
        if ps.len() >= r {
            return ps[r - 1];
        }
        limit *= 2;
    }
}

/// Number of primes `<= n`.
pub fn prime_pi(n: u64) -> usize {
    primes_up_to(n).len()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorisation, primes ascending. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor zero");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `prod p^e`, ascending.
pub fn divisors_of_factorization(f: &[(u64, u32)]) -> Vec<u64> {
    let mut ds = vec![1u64];
    for &(p, e) in f {
        let len = ds.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn divisors(n: u64) -> Vec<u64> {
    divisors_of_factorization(&factorize(n))
}

/// Positive and negative divisors of `n` in canonical list order
/// (ascending absolute value, negative first).
pub fn signed_divisors(n: u64) -> Vec<i64> {
    let mut out = Vec::new();
    for d in divisors(n) {
        out.push(-(d as i64));
        out.push(d as i64);
    }
    out
}

/// `v_p(n)` for `n > 0`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    assert!(n > 0 && p > 1);
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Legendre's formula: `v_p(m!) = sum_{t >= 1} floor(m / p^t)`.
pub fn legendre(m: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = m;
    while q >= p {
        q /= p;
        total += q;
    }
    total
}

/// Floor division for signed 128-bit values with positive divisor.
#[inline]
pub fn div_floor_i128(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    let q = a / b;
    if (a % b != 0) && (a < 0) {
        q - 1
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_matches_euclid() {
        for a in 0..60u64 {
            for b in 0..60u64 {
                let mut x = a;
                let mut y = b;
                while y != 0 {
                    let t = x % y;
                    x = y;
                    y = t;
                }
                assert_eq!(gcd_u64(a, b), x, "{a} {b}");
            }
        }
        assert_eq!(gcd_i64(-12, 18), 6);
    }

    #[test]
    fn primes_and_factors() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(nth_prime(1), 2);
        assert_eq!(nth_prime(4), 7);
        assert_eq!(nth_prime(100), 541);
        assert_eq!(factorize(1728), vec![(2, 6), (3, 3)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1728).len(), 28);
        assert_eq!(signed_divisors(6), vec![-1, 1, -2, 2, -3, 3, -6, 6]);
    }

    #[test]
    fn legendre_small() {
        // 10! = 2^8 3^4 5^2 7
        assert_eq!(legendre(10, 2), 8);
        assert_eq!(legendre(10, 3), 4);
        assert_eq!(legendre(10, 5), 2);
        assert_eq!(legendre(10, 7), 1);
        assert_eq!(legendre(10, 11), 0);
    }

    #[test]
    fn floor_division() {
        assert_eq!(div_floor_i128(7, 2), 3);
        assert_eq!(div_floor_i128(-7, 2), -4);
        assert_eq!(div_floor_i128(-8, 2), -4);
    }
}
