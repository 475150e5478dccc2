//! The sine-product amplitude `V_nu(lambda)`, built two independent ways.
//!
//! Exact forms live in `y = q^(1/2) = exp(-i lambda/2)`, where
//! `2 sin(m lambda/2) = -i (y^-m - y^m)`.

use crate::exact::{
    int, sin_half_series, GaussianRational, LaurentSeries, QHalfFraction, QHalfLaurent, Rational,
    Ring,
};
use crate::partitions::Partition;

/// `2 sin(m lambda / 2)` as a Laurent polynomial in `y`.
pub fn two_sine(m: i64) -> QHalfLaurent {
    QHalfLaurent::from_terms([
        (-m, GaussianRational::i().negated()),
        (m, GaussianRational::i()),
    ])
}

fn product_of_sines(args: impl IntoIterator<Item = i64>) -> QHalfLaurent {
    args.into_iter()
        .fold(QHalfLaurent::one(), |acc, m| acc.times(&two_sine(m)))
}

/// The row form: a ratio over pairs of rows times one sine per cell,
/// `prod_{a<b} S(nu_a - nu_b + b - a) / S(b - a) / prod_{i, v} S(v - i + l)`.
pub fn v_nu_product(nu: &Partition) -> QHalfFraction {
    let parts: Vec<i64> = nu.parts().iter().map(|&p| p as i64).collect();
    let l = parts.len() as i64;
    let mut num_args = Vec::new();
    let mut den_args = Vec::new();
    for a in 0..parts.len() {
        for b in a + 1..parts.len() {
            let gap = (b - a) as i64;
            num_args.push(parts[a] - parts[b] + gap);
            den_args.push(gap);
        }
    }
    for (i, &row) in parts.iter().enumerate() {
        let i = i as i64 + 1;
        den_args.extend((1..=row).map(|v| v - i + l));
    }
    QHalfFraction::new(product_of_sines(num_args), product_of_sines(den_args))
}

/// The hook form `1 / prod_{x in nu} 2 sin(h(x) lambda / 2)`.
pub fn v_nu_hook(nu: &Partition) -> QHalfFraction {
    QHalfFraction::new(
        QHalfLaurent::one(),
        product_of_sines(nu.hooks().into_iter().map(|h| h as i64)),
    )
}

/// Cross-multiplied equality of the row and hook forms.
pub fn v_nu_forms_agree(nu: &Partition) -> bool {
    v_nu_product(nu).cross_equal(&v_nu_hook(nu))
}

/// Lambda-expansion of `V_nu` through `order`, from the hook form.
pub fn v_nu_series(nu: &Partition, order: i64) -> LaurentSeries<Rational> {
    let d = nu.size() as i64;
    // Each sine has valuation one; the product has valuation d and its reciprocal loses d more.
    let work = order + d + 1;
    let denom = nu.hooks().iter().fold(LaurentSeries::one(), |acc, &h| {
        acc.times(&sin_half_series(&int(h as i64), work).scaled(&int(2)))
    });
    denom
        .reciprocal(order)
        .expect("sine products have a unit leading coefficient")
        .truncate(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::partitions::partitions_up_to;

    fn p<const N: usize>(parts: [usize; N]) -> Partition {
        Partition::from(parts)
    }

    #[test]
    fn single_cell() {
        let v = v_nu_product(&p([1]));
        assert_eq!(v.num, QHalfLaurent::one());
        assert_eq!(v.den, two_sine(1));
        assert!(v_nu_forms_agree(&p([1])));
    }

    #[test]
    fn small_shapes_agree() {
        for nu in partitions_up_to(7) {
            assert!(v_nu_forms_agree(&nu), "{nu}");
        }
    }

    #[test]
    fn a_wrong_hook_set_is_rejected() {
        let wrong = QHalfFraction::new(QHalfLaurent::one(), product_of_sines([2, 2, 1]));
        assert!(!v_nu_product(&p([2, 1])).cross_equal(&wrong));
    }

    #[test]
    fn series_for_one_cell() {
        let s = v_nu_series(&p([1]), 3);
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.coeff(-1), int(1));
        assert_eq!(s.coeff(1), rat(1, 24));
        assert_eq!(s.coeff(3), rat(7, 5760));
        assert_eq!(s.trunc_order(), 3);
        assert!(s.coeff(0).is_zero() && s.coeff(2).is_zero());
    }

    #[test]
    fn series_leading_term_is_inverse_hook_product() {
        let s = v_nu_series(&p([2, 1]), 2);
        assert_eq!(s.valuation(), Some(-3));
        assert_eq!(s.coeff(-3), rat(1, 3));
        for nu in partitions_up_to(5) {
            let s = v_nu_series(&nu, 4);
            let d = nu.size() as i64;
            let hooks: i64 = nu.hooks().iter().map(|&h| h as i64).product();
            assert_eq!(s.coeff(-d), rat(1, hooks));
            assert!(s.terms().all(|(e, _)| (e - d).rem_euclid(2) == 0));
        }
    }

    #[test]
    fn series_matches_exact_row_form() {
        for nu in partitions_up_to(4) {
            let from_q = v_nu_product(&nu).to_lambda_series(5).unwrap();
            let from_hooks = v_nu_series(&nu, 5).map_coeffs(|c| GaussianRational::real(c.clone()));
            assert_eq!(from_q, from_hooks, "{nu}");
        }
    }
}
