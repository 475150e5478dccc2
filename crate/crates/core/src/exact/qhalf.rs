//! Laurent polynomials in `y = q^(1/2)`.
//!
//! Exponents are stored as integers counting units of `q^(1/2)`, so `q^k` lives at `2k`.

use std::collections::BTreeMap;
use std::fmt;

use super::gaussian::GaussianRational;
use super::laurent::LaurentSeries;
use super::ring::{factorial, int, rat_big, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QHalfLaurent {
    terms: BTreeMap<i64, GaussianRational>,
}

impl QHalfLaurent {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, GaussianRational)>) -> Self {
        let mut out = QHalfLaurent::default();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    /// `c * y^half_exp`.
    pub fn monomial(c: GaussianRational, half_exp: i64) -> Self {
        Self::from_terms([(half_exp, c)])
    }

    /// `q^k`, i.e. `y^(2k)`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(GaussianRational::one(), 2 * k)
    }

    /// `1 - q^k`.
    pub fn one_minus_q_pow(k: i64) -> Self {
        Self::one().minus(&Self::q_pow(k))
    }

    fn add_term(&mut self, e: i64, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        slot.plus_assign(c);
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, half_exp: i64) -> GaussianRational {
        self.terms.get(&half_exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Substitutes `y = value`; negative powers need `value != 0`.
    pub fn eval(&self, value: &GaussianRational) -> Result<GaussianRational> {
        let inv = value.inverse();
        let mut acc = GaussianRational::zero();
        for (&e, c) in &self.terms {
            let p = if e >= 0 {
                value.pow(e as u32)
            } else {
                inv.as_ref().ok_or(Error::NotInvertible)?.pow((-e) as u32)
            };
            acc.plus_assign(&c.times(&p));
        }
        Ok(acc)
    }

    /// Order of vanishing at `lambda = 0` under `y = exp(-i lambda / 2)`.
    ///
    /// This is the first `k` with `sum_e c_e e^k != 0`; a Vandermonde argument bounds it by
    /// the number of terms.
    pub fn lambda_valuation(&self) -> Option<i64> {
        (0..self.terms.len() as u32)
            .find(|&k| {
                let moment = self
                    .terms
                    .iter()
                    .fold(GaussianRational::zero(), |acc, (&e, c)| {
                        acc.plus(&c.scaled(&Ring::pow(&int(e), k)))
                    });
                !moment.is_zero()
            })
            .map(i64::from)
    }

    /// Expands under `y = exp(-i lambda / 2)` into a lambda-series through `order`.
    pub fn to_lambda_series(&self, order: i64) -> LaurentSeries<GaussianRational> {
        let n = (order + 1).max(0) as usize;
        let mut out = vec![GaussianRational::zero(); n];
        for (&e, c) in &self.terms {
            // y^e = exp(-i e lambda / 2) = sum_k (-i e / 2)^k lambda^k / k!
            let step = GaussianRational::i()
                .negated()
                .scaled(&Rational::new(e.into(), 2.into()));
            let mut power = c.clone();
            for (k, slot) in out.iter_mut().enumerate() {
                slot.plus_assign(&power.scaled(&(int(1) / rat_big(factorial(k as u64)))));
                power = power.times(&step);
            }
        }
        LaurentSeries::new(0, out, order)
    }
}

impl Ring for QHalfLaurent {
    fn zero() -> Self {
        QHalfLaurent::default()
    }

    fn one() -> Self {
        Self::monomial(GaussianRational::one(), 0)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.plus_assign(rhs);
        out
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn times(&self, rhs: &Self) -> Self {
        // Dense accumulation; exponent spans here stay in the hundreds.
        let (Some(a_lo), Some(b_lo)) = (self.min_exp(), rhs.min_exp()) else {
            return Self::zero();
        };
        let span = (self.max_exp().unwrap() - a_lo + rhs.max_exp().unwrap() - b_lo + 1) as usize;
        let mut dense = vec![GaussianRational::zero(); span];
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                dense[(ea - a_lo + eb - b_lo) as usize].plus_assign(&ca.times(cb));
            }
        }
        Self::from_terms(
            dense
                .into_iter()
                .enumerate()
                .map(|(k, c)| (a_lo + b_lo + k as i64, c)),
        )
    }

    fn negated(&self) -> Self {
        QHalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c.negated())).collect(),
        }
    }

    fn scaled(&self, s: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.scaled(s))))
    }

    fn inverse(&self) -> Option<Self> {
        if self.terms.len() == 1 {
            let (&e, c) = self.terms.iter().next().unwrap();
            return Some(Self::monomial(c.inverse()?, -e));
        }
        None
    }

    fn plus_assign(&mut self, rhs: &Self) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl fmt::Display for QHalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c}*y^{e}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exact equality of two q^(1/2)-Laurent polynomials after dropping zero entries.
pub fn qhalf_eval_check(lhs: &QHalfLaurent, rhs: &QHalfLaurent) -> bool {
    let nz = |p: &QHalfLaurent| -> Vec<(i64, GaussianRational)> {
        p.terms()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e, c.clone()))
            .collect()
    };
    nz(lhs) == nz(rhs)
}

/// A quotient `num / den` of q^(1/2)-Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QHalfFraction {
    pub num: QHalfLaurent,
    pub den: QHalfLaurent,
}

impl QHalfFraction {
    pub fn new(num: QHalfLaurent, den: QHalfLaurent) -> Self {
        QHalfFraction { num, den }
    }

    /// Equality as rational functions, decided by cross-multiplication.
    pub fn cross_equal(&self, other: &QHalfFraction) -> bool {
        qhalf_eval_check(&self.num.times(&other.den), &other.num.times(&self.den))
    }

    /// Lambda-expansion under `y = exp(-i lambda / 2)`, valid through `order`.
    pub fn to_lambda_series(&self, order: i64) -> Result<LaurentSeries<GaussianRational>> {
        // The denominator may vanish to order `v` at lambda = 0; over-expand to compensate.
        let v = self.den.lambda_valuation().ok_or(Error::NotInvertible)?;
        let work = order + 2 * v.max(0) + 1;
        let num = self.num.to_lambda_series(work);
        let den = self.den.to_lambda_series(work);
        Ok(num.times(&den.reciprocal(work)?).truncate(order))
    }
}
