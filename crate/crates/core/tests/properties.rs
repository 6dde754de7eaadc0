use num_bigint::BigInt;
use proptest::prelude::*;
use ratio_lab_core::bounds::{build_table, g1_closed_form, g_nd_lower, g_tilde_lower, Bound};
use ratio_lab_core::integrality::{landau_min_max, landau_value, RatioSpec};
use ratio_lab_core::list::{make_list, SignedList};
use ratio_lab_core::rational::{big_ratio, half, ratio};
use ratio_lab_core::separation::{check_decomposition, find_separations, max_separation};

fn nonzero(bound: i64) -> impl Strategy<Value = i64> {
    (1..=bound, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v })
}

fn list(max_len: usize, bound: i64) -> impl Strategy<Value = SignedList> {
    prop::collection::vec(nonzero(bound), 1..=max_len)
        .prop_filter_map("cancels to nothing", |xs| make_list(xs).ok().filter(|l| !l.is_empty()))
}

fn primitive(max_len: usize, bound: i64) -> impl Strategy<Value = SignedList> {
    list(max_len, bound).prop_map(|l| l.primitive_part()).prop_filter("length >= 2", |l| l.len() >= 2)
}

/// An odd-length list with sum zero: random free part plus its negated sum.
fn odd_sum_zero(bound: i64) -> impl Strategy<Value = SignedList> {
    prop::collection::vec(nonzero(bound), 2..=6).prop_filter_map("not a clean odd sum-zero list", |mut xs| {
        if xs.len() % 2 == 1 {
            xs.pop();
        }
        let s: i64 = xs.iter().sum();
        if s == 0 {
            return None;
        }
        xs.push(-s);
        let n = xs.len();
        make_list(xs).ok().filter(|l| l.len() == n)
    })
}

/// A generic point: prime denominator above every element, so no `a x` is an integer.
fn generic_point() -> impl Strategy<Value = num_rational::BigRational> {
    (1i64..10007).prop_map(|m| big_ratio(BigInt::from(m), BigInt::from(10007)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn norm_matches_integration(a in list(8, 1000)) {
        prop_assert_eq!(a.norm().unwrap(), a.norm_by_integration().unwrap());
    }

    #[test]
    fn norm_is_invariant_under_negation_and_scaling(a in list(7, 200), k in nonzero(30)) {
        let n = a.norm().unwrap();
        prop_assert_eq!(a.negate().norm().unwrap(), n.clone());
        prop_assert_eq!(a.scale_i64(k).unwrap().norm().unwrap(), n);
    }

    #[test]
    fn involution_shifts_by_half(a in list(6, 200), x in generic_point()) {
        let shifted = &x + half();
        prop_assert_eq!(a.involute().evaluate(&x), a.evaluate(&shifted));
    }

    #[test]
    fn involution_preserves_norm(a in list(6, 200)) {
        // N(a) is the mean square of a, so a half-period shift cannot change it
        let n = a.norm().unwrap();
        let inv = a.involute();
        if !inv.is_empty() {
            prop_assert_eq!(inv.norm().unwrap(), n);
        }
    }

    #[test]
    fn involution_is_an_involution(a in list(6, 200)) {
        prop_assert_eq!(a.involute().involute(), a);
    }

    #[test]
    fn odd_sum_zero_norm_is_at_least_a_quarter(a in odd_sum_zero(300), x in generic_point()) {
        prop_assert!(a.norm().unwrap() >= ratio(1, 4));
        let v = a.evaluate(&x) - half();
        prop_assert!(v.is_integer(), "{} at {}", a, x);
    }

    #[test]
    fn landau_symmetry(a in odd_sum_zero(60), x in generic_point()) {
        // f(x) + f(-x) = D when no breakpoint is hit
        let oriented = if a.positives() > a.negatives() { a.negate() } else { a };
        let spec = RatioSpec::from_list(&oriented).unwrap();
        let f = landau_value(&spec, &x) + landau_value(&spec, &-x.clone());
        prop_assert_eq!(f, BigInt::from(spec.d()));
    }

    #[test]
    fn landau_range_brackets_values(a in odd_sum_zero(40), x in generic_point()) {
        let oriented = if a.positives() > a.negatives() { a.negate() } else { a };
        let spec = RatioSpec::from_list(&oriented).unwrap();
        let r = landau_min_max(&spec);
        let v = landau_value(&spec, &x);
        prop_assert!(BigInt::from(r.min) <= v && v <= BigInt::from(r.max));
    }

    #[test]
    fn separation_identity_on_every_witness(a in primitive(6, 60)) {
        if a.elements().iter().any(|x| a.elements().contains(&-x)) {
            return Ok(());
        }
        let top = max_separation(&a).unwrap();
        for k in 2..=top.min(12) {
            for w in find_separations(&a, k).unwrap() {
                check_decomposition(&a, &w).unwrap();
            }
        }
        if top >= 2 {
            prop_assert!(!find_separations(&a, top).unwrap().is_empty());
        }
    }
}

fn norm_of(xs: &[i64]) -> num_rational::BigRational {
    SignedList::from_i64(xs).unwrap().norm().unwrap()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

#[test]
fn two_and_three_term_closed_forms() {
    for a in 1..=25i64 {
        for b in -25..=25i64 {
            if b == 0 || b == -a || gcd(a, b) != 1 {
                continue;
            }
            // [a, b] with coprime entries
            let ab = big_ratio(BigInt::from(1), BigInt::from(a * b));
            assert_eq!(norm_of(&[a, b]), (ratio(1, 1) + ab.clone()) / BigInt::from(6));
            for p in [2i64, 3, 5, 7] {
                if [a, -p * a].contains(&-b) || b == -p * a {
                    continue;
                }
                let base = ratio(1, 4) - ratio(1, 6 * p);
                let want = if b % p != 0 {
                    base + ratio(p - 1, 6 * p) * ab.clone()
                } else {
                    base - ratio(p - 1, 6) * ab.clone()
                };
                assert_eq!(norm_of(&[a, -p * a, b]), want, "[{a}, {}, {b}]", -p * a);
            }
            if b != 4 * a && b != -a {
                let want = if b % 2 != 0 {
                    ratio(5, 24) + ratio(1, 8) * ab.clone()
                } else if b % 4 != 0 {
                    ratio(5, 24)
                } else {
                    ratio(5, 24) - ratio(1, 2) * ab.clone()
                };
                assert_eq!(norm_of(&[a, -4 * a, b]), want, "[{a}, {}, {b}]", -4 * a);
            }
            if b != -2 * a && 2 * b != -a && b != a && b != 2 * a && 2 * b != a {
                let want = if (a * b) % 2 != 0 {
                    ratio(1, 6) + ratio(1, 6) * ab.clone()
                } else {
                    ratio(1, 6) - ratio(1, 12) * ab.clone()
                };
                assert_eq!(norm_of(&[a, -2 * a, b, -2 * b]), want, "[{a}, {b}] doubled");
            }
        }
    }
}

#[test]
fn closed_form_matches_table_and_norm() {
    let t = build_table(20, 3).unwrap();
    for n in 1..=20 {
        let chain: Vec<i64> = (0..n as u32).map(|j| (-2i64).pow(j)).collect();
        let direct = SignedList::from_i64(&chain).unwrap().norm().unwrap();
        assert_eq!(g1_closed_form(n), direct, "n = {n}");
        assert_eq!(t.gr[1][n], direct, "n = {n}");
    }
}

#[test]
fn bounds_never_exceed_witnessed_norms() {
    let t = build_table(40, 3).unwrap();
    let witnesses: &[&[i64]] = &[
        &[1, -2],
        &[1, -2, 4],
        &[1, -2, -3, 6],
        &[4, -6, 9],
        &[1, -6, -10, -15, 30],
        &[1, -2, -3, 6, 9, -18, 36],
        &[1, -2, -3, 6, -5, 10, 15, -30],
        &[1, -2, -3, 4, 6, -12],
    ];
    for w in witnesses {
        let l = SignedList::from_i64(w).unwrap();
        let n = l.norm().unwrap();
        assert!(t.g[l.len()] <= n, "{l}");
        if l.sum() == BigInt::from(0) {
            let b = g_tilde_lower(&t, l.len(), 0).unwrap();
            assert!(b <= Bound::Finite(n.clone()), "{l}");
        }
    }
    // Liouville lists of growing length
    for n in [6u64, 12, 30, 60, 210] {
        let l = ratio_lab_core::liouville::build_liouville(n).unwrap();
        if l.list.len() <= 40 {
            assert!(t.g[l.list.len()] <= l.list.norm().unwrap());
        }
    }
    assert!(g_nd_lower(&t, 3, 3).is_infinite());
}
