//! Sum-zero lists over the divisors of `M` with a fixed number of positive
//! elements, matched by sum between the positive and negative halves.

use alloc::vec::Vec;

use super::sweep::Cut;
use super::{list_from_sorted, sort_canonical, Hit, NormFilter, ShardRunner};
use crate::arith::{divisors, gcd_u64};
use crate::rational::ExactRational;
use crate::{Error, Result};

use num_bigint::BigInt;

fn multisets(vals: &[u64], k: usize, start: usize, cur: &mut Vec<u64>, out: &mut Vec<(u64, Vec<u64>)>) {
    if cur.len() == k {
        out.push((cur.iter().sum(), cur.clone()));
        return;
    }
    for i in start..vals.len() {
        cur.push(vals[i]);
        multisets(vals, k, i, cur, out);
        cur.pop();
    }
}

/// Primitive non-degenerate lists `[x1..x_pos, -y1..-y_neg]` with all `xi`, `yj`
/// dividing `m` and `sum x = sum y`, filtered by norm.
pub fn mitm_sum_zero(m: u64, pos: usize, neg: usize, filter: &NormFilter, runner: &dyn ShardRunner) -> Result<Vec<Hit>> {
    if pos == 0 || neg == 0 {
        return Err(Error::Precondition("both halves must be nonempty".into()));
    }
    if m == 0 || m > 1 << 40 {
        return Err(Error::Precondition("modulus out of range".into()));
    }
    let cut = Cut::new(filter)?;
    let ds = divisors(m);
    let mut tops = Vec::new();
    multisets(&ds, pos, 0, &mut Vec::new(), &mut tops);
    tops.sort_unstable();
    let job = |first: usize| -> Vec<Hit> {
        let mut bottoms = Vec::new();
        let mut cur = alloc::vec![ds[first]];
        multisets(&ds, neg, first, &mut cur, &mut bottoms);
        let mut out = Vec::new();
        for (s, ys) in bottoms {
            let lo = tops.partition_point(|t| t.0 < s);
            for (_, xs) in tops[lo..].iter().take_while(|t| t.0 == s) {
                if xs.iter().any(|x| ys.contains(x)) {
                    continue;
                }
                if xs.iter().chain(&ys).fold(0, |g, &v| gcd_u64(g, v)) != 1 {
                    continue;
                }
                let mut list: Vec<i64> = xs.iter().map(|&x| x as i64).chain(ys.iter().map(|&y| -(y as i64))).collect();
                sort_canonical(&mut list);
                let Some((s12, l)) = crate::list::twelve_l_norm_i64(&list) else { continue };
                if cut.accepts(s12, l as i128) {
                    let norm = ExactRational::new(BigInt::from(s12), BigInt::from(l) * 12);
                    out.push((list_from_sorted(&list), norm));
                }
            }
        }
        out
    };
    let shards = runner.run(ds.len(), &job);
    Ok(super::merge(shards, super::Dedup::UpToSign))
}
