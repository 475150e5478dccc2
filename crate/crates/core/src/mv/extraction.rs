//! Reading the triple Hodge polynomials `C_{g,mu}(tau)` off `R`, and what they must satisfy.

use serde::Serialize;

use super::series::MvSeries;
use crate::error::{Error, Result};
use crate::exact::ring::factorial;
use crate::exact::{
    int, rat, rat_big, sin_half_series, GaussianRational, Rational, Ring, TauPolynomial,
};
use crate::genus_one::{psi_moment, GenusOneForm};
use crate::partitions::{cut_join_neighbors, enumerate_partitions, split_coefficient, Partition};

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CgmuPolynomial {
    pub g: u32,
    pub mu: Partition,
    pub poly: TauPolynomial,
}

impl CgmuPolynomial {
    /// `2g - 2 + |mu| + l(mu)`.
    pub fn degree_bound(&self) -> i64 {
        lambda_exponent(self.g, &self.mu) + self.mu.size() as i64
    }

    pub fn degree_ok(&self) -> bool {
        self.poly
            .degree()
            .is_none_or(|deg| deg as i64 <= self.degree_bound())
    }

    /// `C(-tau - 1) = (-1)^{|mu| - l(mu)} C(tau)`.
    pub fn symmetry_ok(&self) -> bool {
        let reflected = self.poly.reflect();
        if (self.mu.size() - self.mu.length()).is_multiple_of(2) {
            reflected == self.poly
        } else {
            reflected == self.poly.negated()
        }
    }
}

/// `2g - 2 + l(mu)`, the lambda-exponent carrying `C_{g,mu}` in `R`.
pub fn lambda_exponent(g: u32, mu: &Partition) -> i64 {
    2 * g as i64 - 2 + mu.length() as i64
}

/// The coefficient of `lambda^{2g-2+l(mu)} p_mu` in `R`.
pub fn extract_c_gmu(r: &MvSeries, g: u32, mu: &Partition) -> Result<CgmuPolynomial> {
    if mu.size() as i64 > r.max_weight {
        return Err(Error::TruncationExceeded {
            requested: mu.size() as i64,
            available: r.max_weight,
        });
    }
    let poly = r.coeff(mu).checked_coeff(lambda_exponent(g, mu))?;
    Ok(CgmuPolynomial {
        g,
        mu: mu.clone(),
        poly,
    })
}

/// The tau-dependent prefactor of `C_{g,mu}`:
/// `-i^{|mu|+l(mu)} / |Aut mu| (tau(tau+1))^{l-1} prod_i prod_{a<mu_i} (mu_i tau + a) / (mu_i - 1)!`.
pub fn c_gmu_prefactor(mu: &Partition) -> TauPolynomial {
    let d = mu.size() as i64;
    let l = mu.length() as i64;
    let scalar = GaussianRational::i_pow(d + l)
        .negated()
        .scaled(&(int(1) / mu.aut_rational()));
    let tt1 = TauPolynomial::linear(1, 0).times(&TauPolynomial::linear(1, 1));
    let mut poly = Ring::pow(&tt1, (l - 1).max(0) as u32);
    for &m in mu.parts() {
        let m = m as i64;
        for a in 1..m {
            poly = poly.times(&TauPolynomial::linear(m, a));
        }
        poly = poly.scaled(&(int(1) / rat_big(factorial((m - 1) as u64))));
    }
    poly.scale_gaussian(&scalar)
}

/// `C_{g,mu}` from its definition, given the triple Hodge integral as a tau-polynomial.
pub fn c_gmu_from_hodge(g: u32, mu: &Partition, hodge: &TauPolynomial) -> CgmuPolynomial {
    CgmuPolynomial {
        g,
        mu: mu.clone(),
        poly: c_gmu_prefactor(mu).times(hodge),
    }
}

/// `int Lambda(1) Lambda(tau) Lambda(-tau-1) / prod (1 - mu_i psi_i)`, recovered from `R` by
/// exact division by the prefactor; a remainder is an error.
pub fn hodge_polynomial(r: &MvSeries, g: u32, mu: &Partition) -> Result<TauPolynomial> {
    extract_c_gmu(r, g, mu)?
        .poly
        .div_exact(&c_gmu_prefactor(mu))
}

/// Genus-zero triple Hodge integral: `|mu|^{l(mu)-3}`.
pub fn genus_zero_hodge(mu: &Partition) -> TauPolynomial {
    let d = int(mu.size() as i64);
    let e = mu.length() as i32 - 3;
    TauPolynomial::constant(GaussianRational::real(d.pow(e)))
}

/// Genus-one triple Hodge integral from psi and lambda_1 integrals, using
/// `Lambda(1) Lambda(tau) Lambda(-tau-1) = -tau(tau+1) + (tau^2 + tau + 1) lambda_1`
/// (with `lambda_1^2 = 0`).
pub fn genus_one_hodge(mu: &Partition) -> TauPolynomial {
    let value = |f: GenusOneForm| GaussianRational::real(f.value());
    let psi_only = TauPolynomial::constant(value(psi_moment(mu, false)));
    let with_lambda = TauPolynomial::constant(value(psi_moment(mu, true)));
    let a = TauPolynomial::linear(1, 0)
        .times(&TauPolynomial::linear(1, 1))
        .negated();
    let b = TauPolynomial::from_rationals([int(1), int(1), int(1)]);
    a.times(&psi_only).plus(&b.times(&with_lambda))
}

/// The `x^{2g}` coefficients of `(x/2) / sin(x/2)` for `2g <= order`.
pub fn lambda_g_coefficients(order: i64) -> Vec<Rational> {
    let sine = sin_half_series(&int(1), order + 3);
    let s = sine
        .reciprocal(order - 1)
        .expect("unit leading coefficient")
        .shift(1)
        .scaled(&rat(1, 2));
    (0..=order / 2).map(|g| s.coeff(2 * g)).collect()
}

/// One summand of the tau-derivative relation between extracted polynomials.
#[derive(Clone, Debug, Serialize)]
pub struct CutJoinDerivativeCheck {
    pub g: u32,
    pub mu: Partition,
    pub passed: bool,
}

/// `dC_{g,mu}/dtau = i ( sum_{cut sources} c C_{g,nu} + sum_{join sources} c C_{g-1,nu}
/// + sum I3 C_{g1,nu1} C_{g2,nu2} )`, with `c` the coefficient of `p_mu` in `Omega(p_nu)/2` and
/// the last sum over ordered pairs with `g1 + g2 = g`.
pub fn c_gmu_cutjoin_check(r: &MvSeries, g: u32, mu: &Partition) -> Result<CutJoinDerivativeCheck> {
    let c = |g: i64, nu: &Partition| -> Result<TauPolynomial> {
        if g < 0 {
            return Ok(TauPolynomial::zero());
        }
        Ok(extract_c_gmu(r, g as u32, nu)?.poly)
    };
    let d = mu.size();
    let mut rhs = TauPolynomial::zero();
    for nu in enumerate_partitions(d) {
        for n in cut_join_neighbors(&nu) {
            if &n.target != mu {
                continue;
            }
            // A source with fewer parts sits in the same genus.
            let genus = if nu.length() < mu.length() {
                g as i64
            } else {
                g as i64 - 1
            };
            rhs = rhs.plus(&c(genus, &nu)?.scaled(&n.coefficient));
        }
    }
    for d1 in 1..d {
        for nu1 in enumerate_partitions(d1) {
            for nu2 in enumerate_partitions(d - d1) {
                let w = split_coefficient(&nu1, &nu2, mu);
                if w.is_zero() {
                    continue;
                }
                for g1 in 0..=g {
                    let prod = c(g1 as i64, &nu1)?.times(&c((g - g1) as i64, &nu2)?);
                    rhs = rhs.plus(&prod.scaled(&w));
                }
            }
        }
    }
    let lhs = c(g as i64, mu)?.derivative();
    Ok(CutJoinDerivativeCheck {
        g,
        mu: mu.clone(),
        passed: lhs == rhs.scale_gaussian(&GaussianRational::i()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mv::series::{build_r, build_r_star};

    fn p<const N: usize>(parts: [usize; N]) -> Partition {
        Partition::from(parts)
    }

    #[test]
    fn lambda_g_values() {
        let c = lambda_g_coefficients(4);
        assert_eq!(c, vec![int(1), rat(1, 24), rat(7, 5760)]);
    }

    #[test]
    fn definition_route_small_cases() {
        let i = GaussianRational::i();
        let c01 = c_gmu_from_hodge(0, &p([1]), &genus_zero_hodge(&p([1])));
        assert_eq!(c01.poly, TauPolynomial::constant(GaussianRational::one()));
        let c02 = c_gmu_from_hodge(0, &p([2]), &genus_zero_hodge(&p([2])));
        let expected = TauPolynomial::linear(2, 1).scale_gaussian(&i.scaled(&rat(1, 4)));
        assert_eq!(c02.poly, expected);
        let c011 = c_gmu_from_hodge(0, &p([1, 1]), &genus_zero_hodge(&p([1, 1])));
        let expected = TauPolynomial::linear(1, 0)
            .times(&TauPolynomial::linear(1, 1))
            .scaled(&rat(-1, 4));
        assert_eq!(c011.poly, expected);
        let c11 = c_gmu_from_hodge(1, &p([1]), &genus_one_hodge(&p([1])));
        assert_eq!(
            c11.poly,
            TauPolynomial::constant(GaussianRational::real(rat(1, 24)))
        );
    }

    #[test]
    fn extraction_matches_definition_low_weight() {
        let r = build_r(&build_r_star(3, 4).unwrap()).unwrap();
        for mu in crate::partitions::partitions_up_to(3) {
            let c0 = extract_c_gmu(&r, 0, &mu).unwrap();
            assert_eq!(c0, c_gmu_from_hodge(0, &mu, &genus_zero_hodge(&mu)), "{mu}");
            let c1 = extract_c_gmu(&r, 1, &mu).unwrap();
            assert_eq!(c1, c_gmu_from_hodge(1, &mu, &genus_one_hodge(&mu)), "{mu}");
            assert!(c0.degree_ok() && c0.symmetry_ok() && c1.symmetry_ok());
        }
        assert!(extract_c_gmu(&r, 5, &p([1])).is_err());
        assert!(extract_c_gmu(&r, 0, &p([4])).is_err());
    }

    #[test]
    fn derivative_relation_low_weight() {
        let r = build_r(&build_r_star(3, 4).unwrap()).unwrap();
        for mu in crate::partitions::partitions_up_to(3) {
            for g in 0..=1 {
                assert!(c_gmu_cutjoin_check(&r, g, &mu).unwrap().passed, "{g} {mu}");
            }
        }
    }
}
