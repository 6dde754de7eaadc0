//! Multisets of signed divisors of a modulus `M`, walked in canonical order.
//!
//! With `w(x, y) = sign(xy) M gcd(x, y) / lcm(x, y)` a list of length `n` has
//! `12 M N = n M + 2 sum_{i<j} w(ai, aj)`. Each depth keeps the row sums
//! `acc[k] = sum_i w(ai, ck)` so the last element costs O(1).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{list_from_sorted, sort_canonical, Constraint, Dedup, Hit, NormFilter, SearchSpec, ShardRunner, TypeFilter};
use crate::arith::{gcd_u64, signed_divisors};
use crate::rational::{integer, ExactRational};
use crate::{Error, Result};

/// `x * q` against `p * scale`, for a threshold `12 t = p / q`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Cut {
    p: i128,
    q: i128,
    mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Any,
    Below,
    AtMost,
    Exactly,
}

impl Cut {
    pub(crate) fn new(f: &NormFilter) -> Result<Cut> {
        let (t, mode) = match f {
            NormFilter::Any => return Ok(Cut { p: 0, q: 1, mode: Mode::Any }),
            NormFilter::Below(t) => (t, Mode::Below),
            NormFilter::AtMost(t) => (t, Mode::AtMost),
            NormFilter::Exactly(t) => (t, Mode::Exactly),
        };
        let v = t * integer(12);
        let too_big = || Error::TooLarge("norm threshold exceeds 128 bits".into());
        Ok(Cut { p: v.numer().to_i128().ok_or_else(too_big)?, q: v.denom().to_i128().ok_or_else(too_big)?, mode })
    }

    /// Whether `12 N = x / scale` passes.
    #[inline]
    pub(crate) fn accepts(&self, x: i128, scale: i128) -> bool {
        if self.mode == Mode::Any {
            return true;
        }
        let (lhs, rhs) = match (x.checked_mul(self.q), self.p.checked_mul(scale)) {
            (Some(l), Some(r)) => (l, r),
            _ => return self.accepts_big(x, scale),
        };
        match self.mode {
            Mode::Any => true,
            Mode::Below => lhs < rhs,
            Mode::AtMost => lhs <= rhs,
            Mode::Exactly => lhs == rhs,
        }
    }

    fn accepts_big(&self, x: i128, scale: i128) -> bool {
        let lhs = BigInt::from(x) * self.q;
        let rhs = BigInt::from(self.p) * scale;
        match self.mode {
            Mode::Any => true,
            Mode::Below => lhs < rhs,
            Mode::AtMost => lhs <= rhs,
            Mode::Exactly => lhs == rhs,
        }
    }
}

struct Sweep {
    vals: Vec<i64>,
    abs: Vec<u64>,
    partner: Vec<usize>,
    /// Row-major pair weights.
    w: Vec<i64>,
    m: i128,
    n: usize,
    free: usize,
    dependent: bool,
    max_pos: usize,
    cut: Cut,
    /// `(bound, exact)` on `12 M N` for lists without a dependent element.
    bound: Option<(i128, bool)>,
    types: TypeFilter,
}

pub(super) fn run(spec: &SearchSpec, m: u64, runner: &dyn ShardRunner) -> Result<Vec<Vec<Hit>>> {
    if m == 0 {
        return Err(Error::Precondition("support modulus must be positive".into()));
    }
    if m > 1 << 40 {
        return Err(Error::TooLarge(alloc::format!("support modulus {m} is beyond the sweep range")));
    }
    let dependent = spec.constraint == Constraint::SumZero;
    let n = spec.length;
    if n == 0 || (dependent && n < 2) {
        return Err(Error::Precondition(alloc::format!("length {n} is too short")));
    }
    let vals = signed_divisors(m);
    let k = vals.len();
    let abs: Vec<u64> = vals.iter().map(|v| v.unsigned_abs()).collect();
    let partner: Vec<usize> = (0..k).map(|i| i ^ 1).collect();
    let mut w = vec![0i64; k * k];
    for i in 0..k {
        for j in 0..k {
            let g = gcd_u64(abs[i], abs[j]);
            let l = abs[i] / g * abs[j];
            let v = (g * (m / l)) as i64;
            w[i * k + j] = if (vals[i] > 0) == (vals[j] > 0) { v } else { -v };
        }
    }
    let max_pos = if spec.dedup == Dedup::UpToSign { n / 2 } else { n };
    let sweep = Sweep {
        vals,
        abs,
        partner,
        w,
        m: m as i128,
        n,
        free: if dependent { n - 1 } else { n },
        dependent,
        max_pos,
        cut: Cut::new(&spec.norm)?,
        bound: spec.norm.integer_cut(m as i128),
        types: spec.type_filter,
    };
    if !dependent && sweep.bound.is_none() {
        return Ok(Vec::new());
    }
    Ok(runner.run(k, &|first| sweep.shard(first)))
}

struct Frame {
    idx: Vec<usize>,
    acc: Vec<Vec<i64>>,
    cnt: Vec<u32>,
    out: Vec<Hit>,
}

impl Sweep {
    fn shard(&self, first: usize) -> Vec<Hit> {
        let k = self.vals.len();
        let mut f = Frame { idx: vec![0; self.free], acc: vec![vec![0; k]; self.free + 1], cnt: vec![0; k], out: Vec::new() };
        // depth 0 is fixed to the shard's element
        let pos = (self.vals[first] > 0) as usize;
        if pos > self.max_pos {
            return f.out;
        }
        f.idx[0] = first;
        f.cnt[first] += 1;
        if self.free == 1 {
            self.leaf(&mut f, 0, self.abs[first], self.vals[first] as i128, pos);
        } else {
            for j in first..k {
                f.acc[1][j] = self.w[first * k + j];
            }
            self.descend(&mut f, 1, 0, self.abs[first], self.vals[first] as i128, pos);
        }
        f.out
    }

    /// Chooses the element at `depth` given the pair sum, gcd, sum and positive
    /// count of the prefix.
    fn descend(&self, f: &mut Frame, depth: usize, p: i64, g: u64, s: i128, pos: usize) {
        let k = self.vals.len();
        let start = f.idx[depth - 1];
        let last = depth + 1 == self.free;
        if last && !self.dependent {
            self.last_level(f, depth, p, g, pos);
            return;
        }
        for j in start..k {
            if f.cnt[self.partner[j]] > 0 {
                continue;
            }
            let pj = pos + (self.vals[j] > 0) as usize;
            if pj > self.max_pos {
                continue;
            }
            let pn = p + f.acc[depth][j];
            let gn = gcd_u64(g, self.abs[j]);
            let sn = s + self.vals[j] as i128;
            f.idx[depth] = j;
            f.cnt[j] += 1;
            if last {
                self.dependent_leaf(f, pn, gn, sn, pj);
            } else {
                let (lo, hi) = f.acc.split_at_mut(depth + 1);
                let (cur, next) = (&lo[depth], &mut hi[0]);
                let row = &self.w[j * k..(j + 1) * k];
                for t in j..k {
                    next[t] = cur[t] + row[t];
                }
                self.descend(f, depth + 1, pn, gn, sn, pj);
            }
            f.cnt[j] -= 1;
        }
    }

    fn leaf(&self, f: &mut Frame, p: i64, g: u64, s: i128, pos: usize) {
        if self.dependent {
            self.dependent_leaf(f, p, g, s, pos);
        } else {
            let x = self.n as i128 * self.m + 2 * p as i128;
            if g == 1 && self.passes_bound(x) {
                self.emit(f, None, x, self.m);
            }
        }
    }

    #[inline]
    fn passes_bound(&self, x: i128) -> bool {
        match self.bound {
            Some((b, exact)) => {
                if exact {
                    x == b
                } else {
                    x <= b
                }
            }
            None => false,
        }
    }

    /// Final element of a list without dependent element: the hot loop.
    fn last_level(&self, f: &mut Frame, depth: usize, p: i64, g: u64, pos: usize) {
        let k = self.vals.len();
        let start = f.idx[depth - 1];
        let base = self.n as i128 * self.m + 2 * p as i128;
        for j in start..k {
            let x = base + 2 * f.acc[depth][j] as i128;
            if !self.passes_bound(x) {
                continue;
            }
            if f.cnt[self.partner[j]] > 0 || pos + (self.vals[j] > 0) as usize > self.max_pos {
                continue;
            }
            if gcd_u64(g, self.abs[j]) != 1 {
                continue;
            }
            f.idx[depth] = j;
            self.emit(f, None, x, self.m);
        }
    }

    fn dependent_leaf(&self, f: &mut Frame, p: i64, g: u64, s: i128, pos: usize) {
        if g != 1 || s == 0 {
            return;
        }
        let e = -s;
        if e.unsigned_abs() > i64::MAX as u128 {
            return;
        }
        let e = e as i64;
        if pos + (e > 0) as usize > self.max_pos {
            return;
        }
        // -e among the chosen would cancel
        if let Ok(ix) = self.vals.binary_search_by(|&v| crate::list::cmp_canonical_i64(v, -e)) {
            if f.cnt[ix] > 0 {
                return;
            }
        }
        let ea = e.unsigned_abs();
        let mut t: i128 = 0;
        for &i in &f.idx {
            let gi = gcd_u64(self.abs[i], ea) as i128;
            let term = gi * gi * (self.m / self.abs[i] as i128);
            if (self.vals[i] > 0) == (e > 0) {
                t += term;
            } else {
                t -= term;
            }
        }
        let scale = match self.m.checked_mul(ea as i128) {
            Some(v) => v,
            None => return,
        };
        let x = self.n as i128 * scale + 2 * p as i128 * ea as i128 + 2 * t;
        if self.cut.accepts(x, scale) {
            self.emit(f, Some(e), x, scale);
        }
    }

    fn emit(&self, f: &mut Frame, extra: Option<i64>, x: i128, scale: i128) {
        let mut xs: Vec<i64> = f.idx.iter().map(|&i| self.vals[i]).collect();
        if let Some(e) = extra {
            xs.push(e);
            sort_canonical(&mut xs);
        }
        let list = list_from_sorted(&xs);
        if !self.types.accepts(&list) {
            return;
        }
        let norm = ExactRational::new(BigInt::from(x), BigInt::from(scale) * 12);
        f.out.push((list, norm));
    }
}
