//! Parametrised lists: each slot is an integer linear form in a few free variables.

use alloc::vec::Vec;

use super::sweep::Cut;
use super::{is_degenerate_sorted, list_from_sorted, sort_canonical, Constraint, Hit, SearchSpec, ShardRunner};
use crate::arith::{divisors, gcd_u64, signed_divisors};
use crate::rational::ExactRational;
use crate::{Error, Result};

use num_bigint::BigInt;

/// Values a free variable runs over, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    /// `0 < |v| <= bound`.
    Box(u64),
    /// Signed divisors of the modulus.
    Divisors(u64),
    /// Negative divisors of the modulus.
    NegativeDivisors(u64),
    Values(Vec<i64>),
}

impl Domain {
    pub fn values(&self) -> Vec<i64> {
        match self {
            Domain::Box(b) => (1..=*b as i64).flat_map(|v| [-v, v]).collect(),
            Domain::Divisors(m) => signed_divisors(*m),
            Domain::NegativeDivisors(m) => divisors(*m).into_iter().map(|d| -(d as i64)).collect(),
            Domain::Values(v) => v.clone(),
        }
    }
}

/// `slots[s][v]` is the coefficient of variable `v` in slot `s`. A pair `(i, j)` in
/// `ordered` restricts to `index(var i) <= index(var j)` in their (shared) domain,
/// for variables that play interchangeable roles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub vars: Vec<Domain>,
    pub slots: Vec<Vec<i64>>,
    pub ordered: Vec<(usize, usize)>,
}

impl Shape {
    pub fn new(vars: Vec<Domain>, slots: Vec<Vec<i64>>) -> Shape {
        Shape { vars, slots, ordered: Vec::new() }
    }

    pub fn with_order(mut self, pairs: &[(usize, usize)]) -> Shape {
        self.ordered.extend_from_slice(pairs);
        self
    }

    /// The elements for one assignment, or `None` if a slot is zero or too large.
    pub fn instantiate(&self, assignment: &[i64]) -> Option<Vec<i64>> {
        let mut xs = Vec::with_capacity(self.slots.len());
        for coef in &self.slots {
            let mut v: i128 = 0;
            for (c, a) in coef.iter().zip(assignment) {
                v += *c as i128 * *a as i128;
            }
            if v == 0 || v.unsigned_abs() > i64::MAX as u128 {
                return None;
            }
            xs.push(v as i64);
        }
        Some(xs)
    }
}

struct Run<'a> {
    shape: &'a Shape,
    domains: Vec<Vec<i64>>,
    sum_zero: bool,
    cut: Cut,
    spec: &'a SearchSpec,
}

pub(super) fn run(spec: &SearchSpec, shape: &Shape, runner: &dyn ShardRunner) -> Result<Vec<Vec<Hit>>> {
    if shape.vars.is_empty() || shape.slots.is_empty() {
        return Err(Error::Precondition("shape needs variables and slots".into()));
    }
    if shape.slots.iter().any(|s| s.len() != shape.vars.len()) {
        return Err(Error::Precondition("slot arity differs from variable count".into()));
    }
    if spec.length != shape.slots.len() {
        return Err(Error::Precondition("spec length differs from shape length".into()));
    }
    for &(i, j) in &shape.ordered {
        if i >= j || j >= shape.vars.len() || shape.vars[i] != shape.vars[j] {
            return Err(Error::Precondition("ordered variables must share a domain and be listed i < j".into()));
        }
    }
    let domains: Vec<Vec<i64>> = shape.vars.iter().map(Domain::values).collect();
    let r = Run { shape, domains, sum_zero: spec.constraint == Constraint::SumZero, cut: Cut::new(&spec.norm)?, spec };
    let first = r.domains[0].len();
    Ok(runner.run(first, &|i| r.shard(i)))
}

impl Run<'_> {
    fn shard(&self, first: usize) -> Vec<Hit> {
        let mut idx = alloc::vec![0usize; self.domains.len()];
        let mut out = Vec::new();
        idx[0] = first;
        self.descend(&mut idx, 1, &mut out);
        out
    }

    fn descend(&self, idx: &mut [usize], depth: usize, out: &mut Vec<Hit>) {
        if depth == self.domains.len() {
            self.leaf(idx, out);
            return;
        }
        let start = self
            .shape
            .ordered
            .iter()
            .filter(|&&(_, j)| j == depth)
            .map(|&(i, _)| idx[i])
            .max()
            .unwrap_or(0);
        for v in start..self.domains[depth].len() {
            idx[depth] = v;
            self.descend(idx, depth + 1, out);
        }
    }

    fn leaf(&self, idx: &[usize], out: &mut Vec<Hit>) {
        let assignment: Vec<i64> = idx.iter().enumerate().map(|(d, &i)| self.domains[d][i]).collect();
        let Some(mut xs) = self.shape.instantiate(&assignment) else { return };
        if self.sum_zero && xs.iter().map(|&x| x as i128).sum::<i128>() != 0 {
            return;
        }
        sort_canonical(&mut xs);
        if is_degenerate_sorted(&xs) {
            return;
        }
        if xs.iter().fold(0, |g, &x| gcd_u64(g, x.unsigned_abs())) != 1 {
            return;
        }
        let norm = match crate::list::twelve_l_norm_i64(&xs) {
            Some((s, l)) => {
                if !self.cut.accepts(s, l as i128) {
                    return;
                }
                ExactRational::new(BigInt::from(s), BigInt::from(l) * 12)
            }
            None => {
                let n = super::norm_i64(&xs);
                if !self.spec.norm.accepts(&n) {
                    return;
                }
                n
            }
        };
        let list = list_from_sorted(&xs);
        if self.spec.type_filter.accepts(&list) {
            out.push((list, norm));
        }
    }
}
