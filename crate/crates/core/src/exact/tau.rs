use std::fmt;

use serde::{Serialize, Serializer};

use super::gaussian::GaussianRational;
use super::ring::{int, Rational, Ring};
use crate::error::{Error, Result};

/// Dense polynomial in the formal variable tau with Gaussian-rational coefficients.
///
/// `coeffs[k]` is the coefficient of `tau^k`; trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TauPolynomial {
    coeffs: Vec<GaussianRational>,
}

impl TauPolynomial {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TauPolynomial { coeffs }
    }

    pub fn from_rationals(coeffs: impl IntoIterator<Item = Rational>) -> Self {
        Self::new(coeffs.into_iter().map(GaussianRational::real).collect())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `tau`.
    pub fn tau() -> Self {
        Self::new(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    /// `a*tau + b` with integer coefficients.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_rationals([int(b), int(a)])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scaled(&int(k as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, at: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| acc.times(at).plus(c))
    }

    /// Composition `p(q(tau))`.
    pub fn compose(&self, inner: &TauPolynomial) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(TauPolynomial::zero(), |acc, c| {
                acc.times(inner).plus(&TauPolynomial::constant(c.clone()))
            })
    }

    /// `p(-tau - 1)`, the reflection exchanging the two framing parameters.
    pub fn reflect(&self) -> Self {
        self.compose(&TauPolynomial::linear(-1, -1))
    }

    pub fn scale_gaussian(&self, s: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.times(s)).collect())
    }

    /// Euclidean division over the Gaussian-rational field.
    pub fn div_rem(&self, divisor: &TauPolynomial) -> Result<(TauPolynomial, TauPolynomial)> {
        let lead_inv = divisor
            .coeffs
            .last()
            .and_then(|c| c.inverse())
            .ok_or(Error::NotInvertible)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((TauPolynomial::zero(), self.clone()));
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].times(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].minus(&c.times(d));
            }
            quot[k] = c;
        }
        Ok((TauPolynomial::new(quot), TauPolynomial::new(rem)))
    }

    /// Exact quotient; a nonzero remainder is an error carrying all three polynomials.
    pub fn div_exact(&self, divisor: &TauPolynomial) -> Result<TauPolynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::NonzeroRemainder {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
                remainder: r.to_string(),
            });
        }
        Ok(q)
    }
}

impl Ring for TauPolynomial {
    fn zero() -> Self {
        TauPolynomial { coeffs: Vec::new() }
    }

    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            o.plus_assign(c);
        }
        Self::new(out)
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j].plus_assign(&a.times(b));
                }
            }
        }
        Self::new(out)
    }

    fn negated(&self) -> Self {
        TauPolynomial {
            coeffs: self.coeffs.iter().map(|c| c.negated()).collect(),
        }
    }

    fn scaled(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scaled(s)).collect())
    }

    fn inverse(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            self.coeffs[0].inverse().map(Self::constant)
        } else {
            None
        }
    }

    fn plus_assign(&mut self, rhs: &Self) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs
                .resize(rhs.coeffs.len(), GaussianRational::zero());
        }
        for (o, c) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            o.plus_assign(c);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(GaussianRational::real(r.clone()))
    }
}

impl From<GaussianRational> for TauPolynomial {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for TauPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for TauPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::rat;

    #[test]
    fn degrees_add_under_multiplication() {
        let p = TauPolynomial::linear(2, 1);
        let q = TauPolynomial::tau().times(&TauPolynomial::linear(1, 1));
        assert_eq!(p.times(&q).degree(), Some(3));
        assert_eq!(TauPolynomial::zero().degree(), None);
    }

    #[test]
    fn reflection_of_tau_times_tau_plus_one_is_fixed() {
        let p = TauPolynomial::tau().times(&TauPolynomial::linear(1, 1));
        assert_eq!(p.reflect(), p);
        let odd = TauPolynomial::linear(2, 1);
        assert_eq!(odd.reflect(), odd.negated());
    }

    #[test]
    fn exact_division_and_remainder() {
        let a = TauPolynomial::linear(2, 1);
        let b = TauPolynomial::linear(3, -1);
        let prod = a.times(&b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        let err = prod.plus(&TauPolynomial::one()).div_exact(&b).unwrap_err();
        assert!(matches!(err, Error::NonzeroRemainder { .. }));
    }

    #[test]
    fn derivative_and_eval() {
        let p = TauPolynomial::from_rationals([rat(1, 2), int(0), int(3)]);
        assert_eq!(p.derivative(), TauPolynomial::linear(6, 0));
        assert_eq!(
            p.eval(&GaussianRational::from_int(2)),
            GaussianRational::real(rat(25, 2))
        );
    }
}
