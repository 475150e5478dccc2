use proptest::prelude::*;

use mvhodge::characters::{character, character_table};
use mvhodge::exact::{
    rat, series_exp, series_log, GaussianRational, LaurentSeries, Rational, Ring, TauPolynomial,
};
use mvhodge::genfun::{cut_join_linear, cut_join_nonlinear, ps_exp, ps_log, PartitionSeries};
use mvhodge::partitions::{enumerate_partitions, partitions_up_to};
use mvhodge::Partition;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (small_rat(), small_rat()).prop_map(|(a, b)| GaussianRational::new(a, b))
}

fn tau_poly() -> impl Strategy<Value = TauPolynomial> {
    prop::collection::vec(gaussian(), 0..5).prop_map(TauPolynomial::new)
}

fn partition_up_to(n: usize) -> impl Strategy<Value = Partition> {
    let all = partitions_up_to(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

/// A partition series with no constant term, truncated at `weight`.
fn partition_series(weight: i64) -> impl Strategy<Value = PartitionSeries<Rational>> {
    prop::collection::vec((partition_up_to(weight as usize), small_rat()), 0..8).prop_map(
        move |terms| {
            let mut s = PartitionSeries::zero(weight);
            for (mu, c) in terms {
                if !mu.is_empty() {
                    s.add_term(mu, &c);
                }
            }
            s
        },
    )
}

fn ring_axioms<R: Ring + PartialEq + std::fmt::Debug>(a: &R, b: &R, c: &R) {
    assert_eq!(a.plus(b), b.plus(a));
    assert_eq!(a.times(b), b.times(a));
    assert_eq!(a.plus(b).plus(c), a.plus(&b.plus(c)));
    assert_eq!(a.times(b).times(c), a.times(&b.times(c)));
    assert_eq!(a.times(&b.plus(c)), a.times(b).plus(&a.times(c)));
    assert_eq!(a.plus(&R::zero()), a.clone());
    assert_eq!(a.times(&R::one()), a.clone());
    assert!(a.minus(a).is_zero());
    assert_eq!(a.negated().negated(), a.clone());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_ring_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        ring_axioms(&a, &b, &c);
        if !a.is_zero() {
            prop_assert!(a.times(&a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn tau_polynomial_ring_axioms(a in tau_poly(), b in tau_poly(), c in tau_poly()) {
        ring_axioms(&a, &b, &c);
        prop_assert_eq!(a.reflect().reflect(), a.clone());
        prop_assert_eq!(a.times(&b).derivative(), a.derivative().times(&b).plus(&a.times(&b.derivative())));
    }

    #[test]
    fn tau_division_is_exact_on_products(a in tau_poly(), b in tau_poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.times(&b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn series_log_inverts_exp(coeffs in prop::collection::vec(small_rat(), 1..7), order in 3i64..9) {
        let x = LaurentSeries::new(1, coeffs, order);
        let back = series_log(&series_exp(&x, order).unwrap(), order).unwrap();
        for k in 0..=order {
            prop_assert_eq!(back.coeff(k), x.coeff(k));
        }
    }

    #[test]
    fn partition_series_log_inverts_exp(f in partition_series(5)) {
        let e = ps_exp(&f).unwrap();
        prop_assert_eq!(ps_log(&e).unwrap(), f);
    }

    #[test]
    fn partition_series_product_is_associative(
        a in partition_series(5), b in partition_series(5), c in partition_series(5)
    ) {
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b), b.times(&a));
    }

    #[test]
    fn cut_join_conjugates_through_exp(f in partition_series(5)) {
        let e = ps_exp(&f).unwrap();
        prop_assert_eq!(cut_join_linear(&e), e.times(&cut_join_nonlinear(&f)).truncate(5));
    }

    #[test]
    fn cut_join_is_linear(a in partition_series(5), b in partition_series(5), s in small_rat()) {
        let lhs = cut_join_linear(&a.plus(&b.scaled(&s)));
        prop_assert_eq!(lhs, cut_join_linear(&a).plus(&cut_join_linear(&b).scaled(&s)));
    }

    #[test]
    fn sign_twist(d in 1usize..=8, i in 0usize..22, j in 0usize..22) {
        let shapes = enumerate_partitions(d);
        let nu = &shapes[i % shapes.len()];
        let mu = &shapes[j % shapes.len()];
        let sign = if (d - mu.length()).is_multiple_of(2) { 1 } else { -1 };
        prop_assert_eq!(character(&nu.transpose(), mu).unwrap(), sign * character(nu, mu).unwrap());
    }

    #[test]
    fn partition_text_roundtrip(mu in partition_up_to(9)) {
        prop_assume!(!mu.is_empty());
        prop_assert_eq!(mu.label().parse::<Partition>().unwrap(), mu.clone());
        prop_assert_eq!(mu.transpose().transpose(), mu.clone());
        prop_assert_eq!(mu.kappa(), -mu.transpose().kappa());
    }
}

/// Cycle type of every permutation of `0..d` via Heap's algorithm.
fn cycle_type_counts(d: usize) -> std::collections::BTreeMap<Partition, u128> {
    fn cycle_type(p: &[usize]) -> Partition {
        let mut seen = vec![false; p.len()];
        let mut parts = Vec::new();
        for s in 0..p.len() {
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
                len += 1;
            }
            if len > 0 {
                parts.push(len);
            }
        }
        Partition::new(parts)
    }
    let mut counts = std::collections::BTreeMap::new();
    let mut p: Vec<usize> = (0..d).collect();
    let mut c = vec![0usize; d];
    *counts.entry(cycle_type(&p)).or_insert(0) += 1;
    let mut i = 0;
    while i < d {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            *counts.entry(cycle_type(&p)).or_insert(0) += 1;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    counts
}

#[test]
fn class_sizes_times_centralizers_give_factorial() {
    for d in 1..=8usize {
        let factorial: u128 = (1..=d as u128).product();
        let counts = cycle_type_counts(d);
        assert_eq!(counts.len(), enumerate_partitions(d).len());
        for (mu, n) in counts {
            assert_eq!(mu.z() * n, factorial, "{mu}");
        }
    }
}

#[test]
fn character_table_columns_have_integer_norms() {
    for d in 1..=8 {
        let t = character_table(d);
        for (k, mu) in t.partitions.iter().enumerate() {
            let s: i64 = t.values.iter().map(|row| row[k] * row[k]).sum();
            assert_eq!(s as u128, mu.z());
        }
    }
}
