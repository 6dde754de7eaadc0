//! Recursive exact lower bounds for the minimal norms `G_r(n)`, `G(n)`,
//! `G(n; d)` and the sum-zero variant `G~(n; d)`.
//!
//! `G_r(n)` is the infimum over lists of length `n` whose elements only have
//! prime factors among the first `r` primes (`G_0(n) = n^2 / 12`).

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::nth_prime;
use crate::rational::{integer, ratio, ExactRational};
use crate::{Error, Result};

pub const DEFAULT_N_MAX: usize = 256;
pub const DEFAULT_R_MAX: usize = 3;

/// A lower bound that may be `+inf` (e.g. `G(n; d)` for `d >= n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(ExactRational),
    Infinite,
}

impl Bound {
    pub fn finite(&self) -> Option<&ExactRational> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Bound::Infinite)
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
            (Bound::Finite(_), Bound::Infinite) => Ordering::Less,
            (Bound::Infinite, Bound::Finite(_)) => Ordering::Greater,
            (Bound::Infinite, Bound::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Bound {
    type Output = Bound;
    fn add(self, rhs: &Bound) -> Bound {
        match (self, rhs) {
            (Bound::Finite(a), Bound::Finite(b)) => Bound::Finite(a + b),
            _ => Bound::Infinite,
        }
    }
}

/// Lower bounds indexed by length; index 0 holds the empty-list value 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundTable {
    pub n_max: usize,
    pub r_max: usize,
    /// `gr[r][n]` bounds `G_r(n)`.
    pub gr: Vec<Vec<ExactRational>>,
    /// `g[n]` bounds `G(n)`.
    pub g: Vec<ExactRational>,
    /// `g1[n]` bounds `G(n; 1)`; infinite for `n <= 1`.
    pub g1: Vec<Bound>,
}

fn min_in_place(best: &mut ExactRational, cand: ExactRational) {
    if cand < *best {
        *best = cand;
    }
}

/// One row of the recursion: entries for `n >= 2` are
/// `min(base[n], min_i s_i, min_i (1 - 1/p) s_i + min_j row[j] / p)` with
/// `s_i = row[i] + other[n - i]` and `j` over `|n - 2i| <= j < n`, `j = n (mod 2)`.
fn recurse_row(n_max: usize, p: u64, base: &[ExactRational], other: Option<&[ExactRational]>) -> Vec<ExactRational> {
    let pinv = ratio(1, p as i64);
    let keep = integer(1) - &pinv;
    let mut row = vec![ExactRational::zero(), ratio(1, 12)];
    let mut suffix_min: Vec<ExactRational> = Vec::with_capacity(n_max + 1);
    for n in 2..=n_max {
        // suffix_min[lo] = min row[j] for lo <= j < n, j = n mod 2
        suffix_min.clear();
        suffix_min.resize(n, ExactRational::zero());
        let mut j = n as isize - 2;
        let mut cur: Option<ExactRational> = None;
        while j >= 0 {
            let v = &row[j as usize];
            cur = Some(match cur {
                Some(c) if &c <= v => c,
                _ => v.clone(),
            });
            suffix_min[j as usize] = cur.clone().unwrap();
            j -= 2;
        }
        let mut best = base[n].clone();
        for i in 1..n {
            let tail = match other {
                Some(o) => &o[n - i],
                None => &row[n - i],
            };
            let s = &row[i] + tail;
            let lo = n.abs_diff(2 * i);
            let cand = &keep * &s + &suffix_min[lo] * &pinv;
            min_in_place(&mut best, s);
            min_in_place(&mut best, cand);
        }
        row.push(best);
    }
    row
}

/// Fills `G_1..G_{r_max}` by the prime-separation recursion, then `G` with the
/// next prime, then `G(n; 1) >= min_i G(i) + G(n - i)`.
pub fn build_table(n_max: usize, r_max: usize) -> Result<BoundTable> {
    if n_max < 2 {
        return Err(Error::Precondition(alloc::format!("n_max must be >= 2, got {n_max}")));
    }
    if r_max < 1 {
        return Err(Error::Precondition(alloc::format!("r_max must be >= 1, got {r_max}")));
    }
    let g0: Vec<ExactRational> = (0..=n_max as i64).map(|n| ratio(n * n, 12)).collect();
    let mut gr = vec![g0];
    for r in 1..=r_max {
        let row = recurse_row(n_max, nth_prime(r), &gr[r - 1], Some(&gr[r - 1]));
        gr.push(row);
    }
    let g = recurse_row(n_max, nth_prime(r_max + 1), &gr[r_max], None);
    let mut g1 = vec![Bound::Infinite, Bound::Infinite];
    for n in 2..=n_max {
        let best = (1..n).map(|i| &g[i] + &g[n - i]).min().expect("n >= 2");
        g1.push(Bound::Finite(best));
    }
    Ok(BoundTable { n_max, r_max, gr, g, g1 })
}

impl BoundTable {
    pub fn default_table() -> BoundTable {
        build_table(DEFAULT_N_MAX, DEFAULT_R_MAX).expect("valid defaults")
    }

    /// Lower bound for `G(n)`: the table inside its range, the product bound beyond.
    pub fn g_at(&self, n: usize) -> ExactRational {
        if n <= self.n_max {
            self.g[n].clone()
        } else {
            mertens_product_bound(n)
        }
    }
}

/// `(1/12)(n/3 + (2/3) sum_{k<n} (-1/2)^k)`, the norm of `[(-2)^j : j < n]`.
pub fn g1_closed_form(n: usize) -> ExactRational {
    assert!(n >= 1);
    let mut alt = ExactRational::zero();
    let mut term = ExactRational::one();
    let step = ratio(-1, 2);
    for _ in 0..n {
        alt += &term;
        term *= &step;
    }
    (ratio(n as i64, 3) + ratio(2, 3) * alt) / integer(12)
}

/// `(n/12) prod_{j <= m} (p_j - 1)/(p_j + 1)` with `2^m <= n < 2^(m+1)`.
pub fn mertens_product_bound(n: usize) -> ExactRational {
    assert!(n >= 2);
    let m = (usize::BITS - 1 - n.leading_zeros()) as usize;
    let mut v = ratio(n as i64, 12);
    for j in 1..=m {
        let p = nth_prime(j) as i64;
        v *= ratio(p - 1, p + 1);
    }
    v
}

/// `G(n; d) = min over compositions of n into d + 1 parts of sum G(l_j)`, with
/// table lower bounds for `G`.
pub fn g_nd_lower(table: &BoundTable, n: usize, d: usize) -> Bound {
    if d >= n {
        return Bound::Infinite;
    }
    let parts = d + 1;
    composition_min(n, parts, 1, |l| Bound::Finite(table.g_at(l)))
}

/// Lower bound for `G~(n; d)`: the minimum of `G(n; d + 1)` and compositions into
/// `d + 1` parts of length at least 3, each part bounded by `G(l; 1)`, raised to 1/4
/// for odd `l`.
pub fn g_tilde_lower(table: &BoundTable, n: usize, d: usize) -> Result<Bound> {
    if n < d + 2 {
        return Err(Error::Precondition(alloc::format!("need d <= n - 2, got n={n}, d={d}")));
    }
    let quarter = ratio(1, 4);
    // sum-zero base: at least G(l;1), and 1/4 for odd l
    let base = |l: usize| {
        let g = g_nd_lower(table, l, 1);
        if l % 2 == 1 && g < Bound::Finite(quarter.clone()) {
            Bound::Finite(quarter.clone())
        } else {
            g
        }
    };
    let split = composition_min(n, d + 1, 3, base);
    Ok(core::cmp::min(g_nd_lower(table, n, d + 1), split))
}

/// Minimum of `sum f(l_j)` over compositions of `n` into `parts` parts, each `>= min_part`.
fn composition_min(n: usize, parts: usize, min_part: usize, f: impl Fn(usize) -> Bound) -> Bound {
    if parts * min_part > n {
        return Bound::Infinite;
    }
    let vals: Vec<Bound> = (0..=n).map(|l| if l >= min_part { f(l) } else { Bound::Infinite }).collect();
    // best[m]: minimum over compositions of m into the parts placed so far
    let mut best: Vec<Bound> = (0..=n).map(|m| vals[m].clone()).collect();
    for _ in 1..parts {
        let mut next = vec![Bound::Infinite; n + 1];
        for m in 0..=n {
            if best[m].is_infinite() {
                continue;
            }
            for l in min_part..=n - m {
                let cand = &best[m] + &vals[l];
                if cand < next[m + l] {
                    next[m + l] = cand;
                }
            }
        }
        best = next;
    }
    best[n].clone()
}

/// Which lower-bound row to threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    /// `G(n)`: no integral ratio beyond the returned length.
    G,
    /// `G(n; 1)`: at most finitely many beyond the returned length.
    G1,
}

/// Length cap `M` for integral factorial ratios with `L - K = D`: every such ratio
/// has `K + L <= M`. Only lengths `n = D (mod 2)` can occur, so `M` is one more
/// than the largest such `n` whose bound is still `<= D^2 / 4`.
pub fn max_length_for_d(table: &BoundTable, d: u64, which: Threshold) -> Result<usize> {
    if d == 0 {
        return Err(Error::Precondition("D must be >= 1".into()));
    }
    let limit = crate::rational::big_ratio(BigInt::from(d * d), BigInt::from(4));
    // beyond the table: the product bound is smallest at n_max + 1 or the next power of two
    let next_pow = (table.n_max + 1).next_power_of_two();
    let beyond = core::cmp::min(mertens_product_bound(table.n_max + 1), mertens_product_bound(next_pow));
    if beyond <= limit {
        let mut m = 2usize;
        while mertens_product_bound(m) <= limit {
            m *= 2;
        }
        return Err(Error::TableTooSmall { needed: m - 1, have: table.n_max });
    }
    let parity = (d % 2) as usize;
    let mut last = None;
    for n in 1..=table.n_max {
        if n % 2 != parity {
            continue;
        }
        let v = match which {
            Threshold::G => Bound::Finite(table.g[n].clone()),
            Threshold::G1 => table.g1[n].clone(),
        };
        if v <= Bound::Finite(limit.clone()) {
            last = Some(n);
        }
    }
    match last {
        Some(n) if n + 2 <= table.n_max => Ok(n + 1),
        _ => Err(Error::TableTooSmall { needed: table.n_max + 2, have: table.n_max }),
    }
}
