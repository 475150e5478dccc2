//! The linear transfer system relating the polynomials `J^k` and its derivative-ladder solution.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::linalg::kernel;
use crate::exact::ring::{binomial, factorial};
use crate::exact::{int, rat_big, Rational, Ring, TauPolynomial};

/// Rows `i = 0..l-1`, columns `k = 0..=l`, entries `k!/(k-i)!` (zero for `k < i`).
pub fn transfer_matrix(l: usize) -> Vec<Vec<Rational>> {
    (0..l)
        .map(|i| {
            (0..=l)
                .map(|k| {
                    if k < i {
                        int(0)
                    } else {
                        rat_big(factorial(k as u64) / factorial((k - i) as u64))
                    }
                })
                .collect()
        })
        .collect()
}

/// The same system before the change of basis: entries `(r - k)^i`.
pub fn transfer_matrix_raw(l: usize, r: usize) -> Vec<Vec<Rational>> {
    (0..l)
        .map(|i| {
            (0..=l)
                .map(|k| Ring::pow(&int(r as i64 - k as i64), i as u32))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferKernel {
    pub dimension: usize,
    /// Kernel generator scaled so its first entry is 1.
    #[serde(serialize_with = "ser_vec")]
    pub vector: Vec<Rational>,
}

fn ser_vec<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&crate::exact::rat_to_string(x))?;
    }
    seq.end()
}

fn normalized_kernel(m: &[Vec<Rational>]) -> Result<TransferKernel> {
    let basis = kernel(m);
    let dimension = basis.len();
    let first = basis
        .first()
        .ok_or_else(|| Error::Singular("trivial kernel".into()))?;
    let lead = first
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .ok_or_else(|| Error::Singular("zero kernel vector".into()))?;
    let vector = first.iter().map(|x| x / &lead).collect();
    Ok(TransferKernel { dimension, vector })
}

/// Kernel of [`transfer_matrix`], solved by exact elimination.
pub fn transfer_system_kernel(l: usize) -> Result<TransferKernel> {
    normalized_kernel(&transfer_matrix(l))
}

pub fn transfer_system_kernel_raw(l: usize, r: usize) -> Result<TransferKernel> {
    normalized_kernel(&transfer_matrix_raw(l, r))
}

/// `(-1)^k C(l, k)` for `k = 0..=l`.
pub fn alternating_binomials(l: usize) -> Vec<Rational> {
    (0..=l)
        .map(|k| {
            let b = rat_big(binomial(l as u64, k as u64));
            if k % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// `J^k = (-1)^k / k! d^k J^0 / dtau^k` for `k = 0..=r`.
pub fn derivative_ladder(j0: &TauPolynomial, r: usize) -> Vec<TauPolynomial> {
    let mut ladder = vec![j0.clone()];
    for k in 1..=r {
        let next = ladder[k - 1]
            .derivative()
            .scaled(&Rational::new((-1).into(), (k as i64).into()));
        ladder.push(next);
    }
    ladder
}

/// Whether `a^k_j = [tau^j] J^k` solve `sum_k (r - k)^i a^k_{l-k} = 0` for all
/// `0 <= i < l <= r`.
pub fn ladder_solves_transfer_system(ladder: &[TauPolynomial], r: usize) -> bool {
    for l in 1..=r {
        for i in 0..l {
            let mut acc = crate::exact::GaussianRational::zero();
            for (k, jk) in ladder.iter().enumerate().take(l + 1) {
                let w = Ring::pow(&int(r as i64 - k as i64), i as u32);
                acc.plus_assign(&jk.coeff(l - k).scaled(&w));
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn derivative_ladder_check(j0: &TauPolynomial, r: usize) -> bool {
    ladder_solves_transfer_system(&derivative_ladder(j0, r), r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussianRational;

    #[test]
    fn small_kernels() {
        let k = transfer_system_kernel(1).unwrap();
        assert_eq!((k.dimension, k.vector), (1, vec![int(1), int(-1)]));
        let k = transfer_system_kernel(2).unwrap();
        assert_eq!(k.vector, vec![int(1), int(-2), int(1)]);
    }

    #[test]
    fn matches_binomials_through_ten() {
        for l in 1..=10 {
            let k = transfer_system_kernel(l).unwrap();
            assert_eq!(k.dimension, 1);
            assert_eq!(k.vector, alternating_binomials(l));
            let raw = transfer_system_kernel_raw(l, l + 3).unwrap();
            assert_eq!(raw.vector, alternating_binomials(l));
        }
    }

    #[test]
    fn ladder_accepts_derivatives_and_rejects_perturbations() {
        let j0 = TauPolynomial::from_rationals([int(3), int(-1), int(2), int(5)]);
        assert!(derivative_ladder_check(&j0, 3));
        assert!(derivative_ladder_check(&j0, 5));
        let j = TauPolynomial::new(vec![GaussianRational::i(), GaussianRational::one()]);
        assert!(derivative_ladder_check(&j, 2));
        let mut ladder = derivative_ladder(&j0, 3);
        ladder[1] = ladder[1].plus(&TauPolynomial::tau());
        assert!(!ladder_solves_transfer_system(&ladder, 3));
    }
}
