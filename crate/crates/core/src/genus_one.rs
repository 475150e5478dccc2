//! Genus-one intersection numbers of psi classes, optionally with one `lambda_1`, reduced by
//! the string and dilaton equations to `<tau_1>_1` and `<lambda_1 tau_0>_1`.
//!
//! Results are kept as linear forms in those two base integrals so the same reduction can be
//! run backwards (solving for the bases from Hurwitz numbers).

use serde::Serialize;

use crate::exact::{int, rat, Rational, Ring};
use crate::partitions::Partition;

/// `psi * <tau_1>_1 + lambda * <lambda_1>_{1,1}`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct GenusOneForm {
    #[serde(serialize_with = "crate::exact::ring::ser_rat")]
    pub psi: Rational,
    #[serde(serialize_with = "crate::exact::ring::ser_rat")]
    pub lambda: Rational,
}

/// Both base integrals equal `1/24`.
pub fn base_value() -> Rational {
    rat(1, 24)
}

impl GenusOneForm {
    pub fn zero() -> Self {
        GenusOneForm {
            psi: int(0),
            lambda: int(0),
        }
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        GenusOneForm {
            psi: &self.psi + &rhs.psi,
            lambda: &self.lambda + &rhs.lambda,
        }
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        GenusOneForm {
            psi: &self.psi * s,
            lambda: &self.lambda * s,
        }
    }

    pub fn evaluate(&self, psi_base: &Rational, lambda_base: &Rational) -> Rational {
        &self.psi * psi_base + &self.lambda * lambda_base
    }

    pub fn value(&self) -> Rational {
        self.evaluate(&base_value(), &base_value())
    }
}

/// `<tau_{a_1} ... tau_{a_n}>_1`, nonzero only when `sum a_i = n`.
pub fn psi_integral(a: &[usize]) -> GenusOneForm {
    reduce(a, false)
}

/// `<lambda_1 tau_{a_1} ... tau_{a_n}>_1`, nonzero only when `sum a_i = n - 1`.
pub fn lambda_psi_integral(a: &[usize]) -> GenusOneForm {
    reduce(a, true)
}

fn reduce(a: &[usize], with_lambda: bool) -> GenusOneForm {
    let n = a.len();
    let degree: usize = a.iter().sum();
    if n == 0 || degree + usize::from(with_lambda) != n {
        return GenusOneForm::zero();
    }
    if n == 1 {
        return if with_lambda {
            GenusOneForm {
                psi: int(0),
                lambda: int(1),
            }
        } else {
            GenusOneForm {
                psi: int(1),
                lambda: int(0),
            }
        };
    }
    if let Some(pos) = a.iter().position(|&x| x == 0) {
        // string
        let mut rest = a.to_vec();
        rest.remove(pos);
        let mut acc = GenusOneForm::zero();
        for j in 0..rest.len() {
            if rest[j] > 0 {
                let mut lowered = rest.clone();
                lowered[j] -= 1;
                acc = acc.plus(&reduce(&lowered, with_lambda));
            }
        }
        return acc;
    }
    if let Some(pos) = a.iter().position(|&x| x == 1) {
        // dilaton: <tau_1 X>_{1,n} = (n - 1) <X>_{1,n-1}
        let mut rest = a.to_vec();
        rest.remove(pos);
        return reduce(&rest, with_lambda).scaled(&int(n as i64 - 1));
    }
    GenusOneForm::zero()
}

/// Calls `f` on every composition `a` of `total` into `parts` nonnegative entries.
fn for_each_composition(total: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(total: usize, slots: usize, prefix: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if slots == 1 {
            prefix.push(total);
            f(prefix);
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(total - first, slots - 1, prefix, f);
            prefix.pop();
        }
    }
    if parts > 0 {
        rec(total, parts, &mut Vec::new(), f);
    }
}

/// `int_{M_{1,l}} (lambda_1)^e / prod (1 - mu_i psi_i)` for `e` in `{0, 1}`.
pub fn psi_moment(mu: &Partition, with_lambda: bool) -> GenusOneForm {
    let l = mu.length();
    let total = l - usize::from(with_lambda);
    let mut acc = GenusOneForm::zero();
    for_each_composition(total, l, &mut |a| {
        let weight: Rational = mu
            .parts()
            .iter()
            .zip(a)
            .map(|(&m, &e)| Ring::pow(&int(m as i64), e as u32))
            .product();
        let term = if with_lambda {
            lambda_psi_integral(a)
        } else {
            psi_integral(a)
        };
        acc = acc.plus(&term.scaled(&weight));
    });
    acc
}

/// `int Lambda_1(1) / prod (1 - mu_i psi_i)` over `M_{1,l}` with `Lambda_1(u) = u - lambda_1`:
/// the Hodge side of the genus-one ELSV formula.
pub fn elsv_hodge_form(mu: &Partition) -> GenusOneForm {
    psi_moment(mu, false).plus(&psi_moment(mu, true).scaled(&int(-1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(psi_integral(&[1]).value(), rat(1, 24));
        assert_eq!(psi_integral(&[1, 1]).value(), rat(1, 24));
        assert_eq!(psi_integral(&[2, 0]).value(), rat(1, 24));
        assert_eq!(psi_integral(&[1, 1, 1]).value(), rat(1, 12));
        assert_eq!(psi_integral(&[3, 0, 0]).value(), rat(1, 24));
        assert_eq!(psi_integral(&[2, 1, 0]).value(), rat(1, 12));
        assert_eq!(psi_integral(&[2, 2, 0, 0]).value(), rat(1, 6));
        assert_eq!(lambda_psi_integral(&[0]).value(), rat(1, 24));
        assert_eq!(lambda_psi_integral(&[1, 0]).value(), rat(1, 24));
        assert_eq!(lambda_psi_integral(&[1, 1, 0]).value(), rat(1, 12));
        assert!(psi_integral(&[2]).value().is_zero());
    }

    #[test]
    fn lambda_one_integrals_match_closed_form() {
        // <lambda_1 tau_{a_1}...tau_{a_n}>_1 = binom(n-1; a) / 24
        let check = |a: &[usize]| {
            let n = a.len() as u64;
            let mut multinom = crate::exact::ring::factorial(n - 1);
            for &x in a {
                multinom /= crate::exact::ring::factorial(x as u64);
            }
            assert_eq!(
                lambda_psi_integral(a).value(),
                Rational::from_integer(multinom) / Rational::from_integer(24.into())
            );
        };
        check(&[2, 0, 0]);
        check(&[1, 1, 0]);
        check(&[3, 1, 0, 0, 0]);
        check(&[2, 2, 0, 0, 0]);
    }

    #[test]
    fn elsv_hodge_side() {
        let f = elsv_hodge_form(&Partition::row(2));
        assert_eq!((f.psi.clone(), f.lambda.clone()), (int(2), int(-1)));
        assert_eq!(
            elsv_hodge_form(&Partition::from([1, 1])).value(),
            rat(1, 24)
        );
    }
}
