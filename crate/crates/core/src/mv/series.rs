//! The generating functions `R•` and `R = log R•`, and the identities they satisfy.

use rayon::prelude::*;
use serde::Serialize;

use super::vnu::v_nu_series;
use crate::characters::character;
use crate::error::Result;
use crate::exact::{int, rat, series_exp, GaussianRational, LaurentSeries, Ring, TauPolynomial};
use crate::genfun::{cut_join_linear, cut_join_nonlinear, ps_log, PartitionSeries};
use crate::partitions::{enumerate_partitions, Partition};

/// Coefficient ring of `R` and `R•`: lambda-series whose coefficients are polynomials in tau.
pub type LambdaTau = LaurentSeries<TauPolynomial>;

/// Extra lambda-precision carried while building, so the log still reaches the requested order.
fn working_order(max_weight: i64, lambda_order: i64) -> i64 {
    lambda_order + max_weight + 1
}

#[derive(Clone, Debug)]
pub struct MvSeries {
    pub body: PartitionSeries<LambdaTau>,
    pub lambda_order: i64,
    pub max_weight: i64,
}

impl MvSeries {
    /// Smallest trunc order over all stored coefficients (the order every coefficient reaches).
    pub fn effective_order(&self) -> i64 {
        self.body
            .terms()
            .map(|(_, c)| c.trunc_order())
            .min()
            .unwrap_or(self.lambda_order)
    }

    pub fn coeff(&self, mu: &Partition) -> LambdaTau {
        self.body.coeff(mu)
    }
}

/// `sum_{|mu| <= max_weight} p_mu / z_mu sum_nu chi_nu(mu) W_nu`, with `W_nu` supplied per
/// irreducible and computed in parallel within each degree.
fn character_sum<C, F>(max_weight: i64, weight: F) -> Result<PartitionSeries<LaurentSeries<C>>>
where
    C: Ring,
    F: Fn(&Partition) -> Result<LaurentSeries<C>> + Sync,
{
    let mut out = PartitionSeries::one(max_weight);
    for d in 1..=max_weight.max(0) as usize {
        let nus = enumerate_partitions(d);
        let ws: Vec<LaurentSeries<C>> = nus.par_iter().map(&weight).collect::<Result<_>>()?;
        for mu in &nus {
            let mut acc = LaurentSeries::<C>::zero();
            for (nu, w) in nus.iter().zip(&ws) {
                let chi = character(nu, mu)?;
                if chi != 0 {
                    acc = acc.plus(&w.scaled(&int(chi)));
                }
            }
            out.add_term(mu.clone(), &acc.scaled(&(int(1) / mu.z_rational())));
        }
    }
    Ok(out)
}

/// `exp(i (tau + 1/2) kappa lambda / 2) V_nu(lambda)` through `order`.
fn mv_weight(nu: &Partition, order: i64) -> Result<LambdaTau> {
    let d = nu.size() as i64;
    let half_kappa_i = GaussianRational::new(int(0), rat(nu.kappa(), 2));
    let linear = TauPolynomial::linear(1, 0)
        .plus(&TauPolynomial::constant(GaussianRational::real(rat(1, 2))))
        .scale_gaussian(&half_kappa_i);
    let e = series_exp(&LaurentSeries::monomial(linear, 1), order + d)?;
    let v = v_nu_series(nu, order)
        .map_coeffs(|c| TauPolynomial::constant(GaussianRational::real(c.clone())));
    Ok(e.times(&v).truncate(order))
}

/// `R•` through p-weight `max_weight`, carrying enough lambda-precision for `R` to reach
/// `lambda_order`.
pub fn build_r_star(max_weight: i64, lambda_order: i64) -> Result<MvSeries> {
    let work = working_order(max_weight, lambda_order);
    let body = character_sum(max_weight, |nu| mv_weight(nu, work))?;
    Ok(MvSeries {
        body,
        lambda_order,
        max_weight,
    })
}

/// `R = log R•`.
pub fn build_r(r_star: &MvSeries) -> Result<MvSeries> {
    Ok(MvSeries {
        body: ps_log(&r_star.body)?,
        ..r_star.clone()
    })
}

/// Outcome of comparing two generating functions coefficient by coefficient.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub passed: bool,
    /// Lambda-order through which every compared coefficient was known on both sides.
    pub compared_through: i64,
    /// Number of `p_mu` coefficients compared, each a lambda-series.
    pub partitions_checked: usize,
    pub first_mismatch: Option<String>,
}

/// Compares two partition series through weight `max_weight` and lambda-order `order`; a
/// coefficient known to less than `order` on either side counts as a failure.
pub fn compare_series<C: Ring>(
    lhs: &PartitionSeries<LaurentSeries<C>>,
    rhs: &PartitionSeries<LaurentSeries<C>>,
    max_weight: i64,
    order: i64,
) -> IdentityCheck {
    let mut keys: Vec<Partition> = lhs
        .terms()
        .chain(rhs.terms())
        .map(|(m, _)| m.clone())
        .filter(|m| m.size() as i64 <= max_weight)
        .collect();
    keys.sort();
    keys.dedup();
    let mut check = IdentityCheck {
        passed: true,
        compared_through: order,
        partitions_checked: 0,
        first_mismatch: None,
    };
    for mu in keys {
        let (a, b) = (lhs.coeff(&mu), rhs.coeff(&mu));
        let reach = a.trunc_order().min(b.trunc_order());
        check.compared_through = check.compared_through.min(reach);
        let equal = reach >= order && a.truncate(order) == b.truncate(order);
        check.partitions_checked += 1;
        if !equal && check.first_mismatch.is_none() {
            check.passed = false;
            check.first_mismatch = Some(if reach < order {
                format!("p_{mu}: known only through lambda^{reach}")
            } else {
                format!("p_{mu}: coefficients differ")
            });
        }
    }
    check
}

fn tau_derivative(f: &PartitionSeries<LambdaTau>) -> PartitionSeries<LambdaTau> {
    f.map_coeffs(|c| c.map_coeffs(TauPolynomial::derivative))
}

/// Multiplies by `i lambda / 2`.
fn times_i_lambda_half(f: &PartitionSeries<LambdaTau>) -> PartitionSeries<LambdaTau> {
    let s = TauPolynomial::constant(GaussianRational::new(int(0), rat(1, 2)));
    f.map_coeffs(|c| c.shift(1).scale_by(&s))
}

#[derive(Clone, Debug, Serialize)]
pub struct TauEquationReport {
    /// `dR•/dtau = (i lambda / 2) Omega(R•)`
    pub linear: IdentityCheck,
    /// `dR/dtau = (i lambda / 2) (Omega(R) + sum i j p_{i+j} dR/dp_i dR/dp_j)`
    pub nonlinear: IdentityCheck,
}

impl TauEquationReport {
    pub fn passed(&self) -> bool {
        self.linear.passed && self.nonlinear.passed
    }
}

/// Both cut-and-join equations, coefficientwise in `(mu, lambda-power, tau-power)`.
pub fn tau_equation_check(r_star: &MvSeries, r: &MvSeries) -> TauEquationReport {
    let (w, l) = (r_star.max_weight, r_star.lambda_order);
    let linear = compare_series(
        &tau_derivative(&r_star.body),
        &times_i_lambda_half(&cut_join_linear(&r_star.body)),
        w,
        l,
    );
    let nonlinear = compare_series(
        &tau_derivative(&r.body),
        &times_i_lambda_half(&cut_join_nonlinear(&r.body)),
        w,
        l,
    );
    TauEquationReport { linear, nonlinear }
}

/// `-i^{d+1} / (2 d sin(d lambda / 2))` through `order`.
pub fn initial_condition_term(d: usize, order: i64) -> LaurentSeries<GaussianRational> {
    let d = d as i64;
    let sine = crate::exact::sin_half_series(&int(d), order + 3).scaled(&int(2 * d));
    let recip = sine.reciprocal(order).expect("unit leading coefficient");
    let c = GaussianRational::i_pow(d + 1).negated();
    recip
        .map_coeffs(|x| GaussianRational::real(x.clone()))
        .scale_by(&c)
        .truncate(order)
}

/// `log R•` at `tau = 0` against `-sum_d i^{d+1} p_d / (2 d sin(d lambda / 2))`.
///
/// `R•` is rebuilt with Gaussian coefficients (`tau` set to zero before expanding), so this
/// check does not share the tau-polynomial pipeline.
pub fn initial_condition_check(max_weight: i64, lambda_order: i64) -> Result<IdentityCheck> {
    let work = working_order(max_weight, lambda_order);
    let r_star = character_sum(max_weight, |nu| {
        let d = nu.size() as i64;
        let x = LaurentSeries::monomial(GaussianRational::new(int(0), rat(nu.kappa(), 4)), 1);
        let e = series_exp(&x, work + d)?;
        let v = v_nu_series(nu, work).map_coeffs(|c| GaussianRational::real(c.clone()));
        Ok(e.times(&v).truncate(work))
    })?;
    let r = ps_log(&r_star)?;
    let expected = PartitionSeries::from_terms(
        (1..=max_weight.max(0) as usize)
            .map(|d| (Partition::row(d), initial_condition_term(d, work))),
        max_weight,
    );
    Ok(compare_series(&r, &expected, max_weight, lambda_order))
}

/// `(mu, exponent)` pairs of `R` breaking the pole/parity pattern: a nonzero coefficient of
/// `lambda^m p_mu` needs `m >= l(mu) - 2` and `m ≡ l(mu) (mod 2)`.
pub fn pole_parity_violations(r: &MvSeries) -> Vec<(Partition, i64)> {
    let mut out = Vec::new();
    for (mu, c) in r.body.terms() {
        let l = mu.length() as i64;
        for (m, _) in c.terms() {
            if m < l - 2 || (m - l).rem_euclid(2) != 0 {
                out.push((mu.clone(), m));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p<const N: usize>(parts: [usize; N]) -> Partition {
        Partition::from(parts)
    }

    #[test]
    fn low_weight_coefficients() {
        let rs = build_r_star(2, 4).unwrap();
        assert!(rs.coeff(&Partition::empty()).is_one());
        let p1 = rs.coeff(&p([1]));
        let v1 = v_nu_series(&p([1]), p1.trunc_order())
            .map_coeffs(|c| TauPolynomial::constant(GaussianRational::real(c.clone())));
        assert_eq!(p1, v1);
    }

    #[test]
    fn tau_equation_small() {
        let rs = build_r_star(3, 5).unwrap();
        let r = build_r(&rs).unwrap();
        assert!(r.effective_order() >= 5);
        let rep = tau_equation_check(&rs, &r);
        assert!(rep.passed(), "{rep:?}");
        assert!(pole_parity_violations(&r).is_empty());
    }

    #[test]
    fn initial_condition_small() {
        let c = initial_condition_check(3, 6).unwrap();
        assert!(c.passed, "{c:?}");
        let t1 = initial_condition_term(1, 3);
        assert_eq!(t1.coeff(-1), GaussianRational::one());
        let t2 = initial_condition_term(2, 3);
        assert_eq!(t2.coeff(-1), GaussianRational::new(int(0), rat(1, 4)));
    }

    #[test]
    fn tau_zero_specialization_agrees() {
        let rs = build_r_star(3, 4).unwrap();
        let r = build_r(&rs).unwrap();
        let zero = GaussianRational::zero();
        for d in 1..=3 {
            let at0 = r.coeff(&Partition::row(d)).map_coeffs(|t| t.eval(&zero));
            assert_eq!(at0.truncate(4), initial_condition_term(d, 4));
        }
        assert!(r
            .coeff(&p([1, 1]))
            .map_coeffs(|t| t.eval(&zero))
            .truncate(4)
            .is_zero());
    }

    #[test]
    fn detects_a_perturbed_series() {
        let rs = build_r_star(2, 4).unwrap();
        let mut bad = rs.clone();
        bad.body
            .add_term(p([2]), &LaurentSeries::monomial(TauPolynomial::tau(), 2));
        let r = build_r(&bad).unwrap();
        assert!(!tau_equation_check(&bad, &r).passed());
    }
}
