//! Truncated Laurent series in the genus parameter `lambda`.
//!
//! A series carries the last exponent through which its coefficients are known
//! (`trunc_order`). Arithmetic propagates that bound, so a product of series with poles
//! automatically reports the smaller range on which it is still exact.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::ring::{factorial, int, rat_big, Rational, Ring};
use crate::error::{Error, Result};

/// Truncation marker for series that are exact (finitely many terms, nothing dropped).
pub const EXACT: i64 = i64::MAX;

#[derive(Clone, PartialEq, Debug)]
pub struct LaurentSeries<C> {
    min_exp: i64,
    coeffs: Vec<C>,
    trunc_order: i64,
}

impl<C: Ring> LaurentSeries<C> {
    /// Builds `sum coeffs[k] * lambda^(min_exp + k)`, known through `trunc_order`.
    pub fn new(min_exp: i64, coeffs: Vec<C>, trunc_order: i64) -> Self {
        let mut s = LaurentSeries {
            min_exp,
            coeffs,
            trunc_order,
        };
        s.normalize();
        s
    }

    pub fn exact(min_exp: i64, coeffs: Vec<C>) -> Self {
        Self::new(min_exp, coeffs, EXACT)
    }

    pub fn zero_to(trunc_order: i64) -> Self {
        LaurentSeries {
            min_exp: 0,
            coeffs: Vec::new(),
            trunc_order,
        }
    }

    pub fn monomial(c: C, exp: i64) -> Self {
        Self::exact(exp, vec![c])
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    fn normalize(&mut self) {
        if self.trunc_order != EXACT {
            let keep = (self.trunc_order - self.min_exp + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.min_exp = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc_order
    }

    pub fn is_exact(&self) -> bool {
        self.trunc_order == EXACT
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.min_exp)
    }

    /// Largest exponent carrying a stored (nonzero) coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    /// Lower bound on the true valuation, used for precision bookkeeping.
    fn precision_valuation(&self) -> i64 {
        self.valuation()
            .unwrap_or_else(|| add_precision(self.trunc_order, 1))
    }

    /// Coefficient of `lambda^exp`; zero outside the stored range.
    pub fn coeff(&self, exp: i64) -> C {
        if exp < self.min_exp {
            return C::zero();
        }
        self.coeffs
            .get((exp - self.min_exp) as usize)
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Coefficient of `lambda^exp`, refusing exponents past the known range.
    pub fn checked_coeff(&self, exp: i64) -> Result<C> {
        if exp > self.trunc_order {
            return Err(Error::TruncationExceeded {
                requested: exp,
                available: self.trunc_order,
            });
        }
        Ok(self.coeff(exp))
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.min_exp + k as i64, c))
    }

    pub fn truncate(&self, order: i64) -> Self {
        Self::new(
            self.min_exp,
            self.coeffs.clone(),
            order.min(self.trunc_order),
        )
    }

    /// Multiplication by `lambda^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
            trunc_order: if self.is_exact() {
                EXACT
            } else {
                self.trunc_order + k
            },
        }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> LaurentSeries<D> {
        LaurentSeries::new(
            self.min_exp,
            self.coeffs.iter().map(f).collect(),
            self.trunc_order,
        )
    }

    pub fn scale_by(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.times(c))
    }

    /// Truncated multiplicative inverse, valid through `min(order, implied precision)`.
    pub fn reciprocal(&self, order: i64) -> Result<Self> {
        let v = self.valuation().ok_or(Error::NotInvertible)?;
        let a0_inv = self.coeffs[0].inverse().ok_or(Error::NotInvertible)?;
        // Relative precision: coefficients of lambda^(v+k) known for k <= trunc - v.
        let rel = self.trunc_order.saturating_sub(v);
        let trunc = order.min(rel.saturating_sub(v));
        if trunc > i64::MAX / 4 {
            return Err(Error::TruncationExceeded {
                requested: EXACT,
                available: order,
            });
        }
        let n_terms = (trunc + v + 1).max(0) as usize;
        let mut b: Vec<C> = Vec::with_capacity(n_terms);
        for n in 0..n_terms {
            if n == 0 {
                b.push(a0_inv.clone());
                continue;
            }
            let mut acc = C::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                acc.plus_assign(&self.coeffs[k].times(&b[n - k]));
            }
            b.push(acc.times(&a0_inv).negated());
        }
        Ok(Self::new(-v, b, trunc))
    }
}

impl<C: Ring> Ring for LaurentSeries<C> {
    fn zero() -> Self {
        Self::zero_to(EXACT)
    }

    fn one() -> Self {
        Self::constant(C::one())
    }

    /// Ignores the truncation order: a known constant 1 is a unit for log.
    fn is_one(&self) -> bool {
        self.min_exp == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        let trunc = self.trunc_order.min(rhs.trunc_order);
        if self.is_zero() {
            return rhs.truncate(trunc);
        }
        if rhs.is_zero() {
            return self.truncate(trunc);
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self
            .max_exp()
            .unwrap()
            .max(rhs.max_exp().unwrap())
            .min(trunc);
        if hi < lo {
            return Self::zero_to(trunc);
        }
        let mut out = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in self.terms().chain(rhs.terms()) {
            if e <= hi {
                out[(e - lo) as usize].plus_assign(c);
            }
        }
        Self::new(lo, out, trunc)
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn times(&self, rhs: &Self) -> Self {
        let va = self.precision_valuation();
        let vb = rhs.precision_valuation();
        let trunc = add_precision(self.trunc_order, vb).min(add_precision(rhs.trunc_order, va));
        if self.is_zero() || rhs.is_zero() {
            return Self::zero_to(trunc);
        }
        let lo = self.min_exp + rhs.min_exp;
        let full_hi = self.max_exp().unwrap() + rhs.max_exp().unwrap();
        let hi = full_hi.min(trunc);
        if hi < lo {
            return Self::zero_to(trunc);
        }
        let mut out = vec![C::zero(); (hi - lo + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.min_exp + i as i64;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let e = ea + rhs.min_exp + j as i64;
                if e > hi {
                    break;
                }
                if !b.is_zero() {
                    out[(e - lo) as usize].plus_assign(&a.times(b));
                }
            }
        }
        Self::new(lo, out, trunc)
    }

    fn negated(&self) -> Self {
        LaurentSeries {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| c.negated()).collect(),
            trunc_order: self.trunc_order,
        }
    }

    fn scaled(&self, s: &Rational) -> Self {
        self.map_coeffs(|c| c.scaled(s))
    }

    fn inverse(&self) -> Option<Self> {
        // Only exact monomials have exact inverses; everything else needs a truncation order.
        if self.is_exact() && self.coeffs.len() == 1 {
            let c = self.coeffs[0].inverse()?;
            return Some(Self::monomial(c, -self.min_exp));
        }
        None
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(C::from_rational(r))
    }
}

fn add_precision(trunc: i64, valuation: i64) -> i64 {
    if trunc == EXACT || valuation == EXACT {
        EXACT
    } else {
        trunc + valuation
    }
}

/// `sin(c * lambda / 2)` expanded through `lambda^order`.
pub fn sin_half_series<C: Ring>(c: &C, order: i64) -> LaurentSeries<C> {
    assert!(order >= 1, "sine series needs order >= 1");
    let half = c.scaled(&Rational::new(1.into(), 2.into()));
    let half_sq = half.times(&half);
    let mut coeffs = vec![C::zero(); order as usize + 1];
    let mut power = half; // (c/2)^(2k+1)
    let mut k = 0u64;
    while 2 * k < order as u64 {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        let denom = rat_big(factorial(2 * k + 1));
        coeffs[2 * k as usize + 1] = power.scaled(&(int(sign) / denom));
        power = power.times(&half_sq);
        k += 1;
    }
    LaurentSeries::new(0, coeffs, order)
}

/// `exp(x)` for a series with no constant or polar part.
pub fn series_exp<C: Ring>(x: &LaurentSeries<C>, order: i64) -> Result<LaurentSeries<C>> {
    if let Some(v) = x.valuation() {
        if v < 1 {
            return Err(Error::BadSeriesTerm {
                exponent: v,
                reason: "exp needs a series with only positive exponents",
            });
        }
    }
    let trunc = order.min(x.trunc_order);
    if trunc > i64::MAX / 4 {
        return Err(Error::TruncationExceeded {
            requested: EXACT,
            available: order,
        });
    }
    let n_terms = (trunc + 1).max(0) as usize;
    let mut e: Vec<C> = Vec::with_capacity(n_terms);
    // n e_n = sum_{k=1}^{n} k x_k e_{n-k}
    for n in 0..n_terms {
        if n == 0 {
            e.push(C::one());
            continue;
        }
        let mut acc = C::zero();
        for k in 1..=n {
            let xk = x.coeff(k as i64);
            if !xk.is_zero() {
                acc.plus_assign(&xk.times(&e[n - k]).scaled(&int(k as i64)));
            }
        }
        e.push(acc.scaled(&Rational::new(1.into(), (n as i64).into())));
    }
    Ok(LaurentSeries::new(0, e, trunc))
}

/// `log(x)` for a series of the form `1 + h` with `h` of positive valuation.
pub fn series_log<C: Ring>(x: &LaurentSeries<C>, order: i64) -> Result<LaurentSeries<C>> {
    if let Some((e, _)) = x.terms().find(|(e, _)| *e < 0) {
        return Err(Error::BadSeriesTerm {
            exponent: e,
            reason: "log needs a series without polar part",
        });
    }
    if !x.coeff(0).is_one() {
        return Err(Error::BadSeriesTerm {
            exponent: 0,
            reason: "log needs constant term 1",
        });
    }
    let trunc = order.min(x.trunc_order);
    if trunc > i64::MAX / 4 {
        return Err(Error::TruncationExceeded {
            requested: EXACT,
            available: order,
        });
    }
    let n_terms = (trunc + 1).max(0) as usize;
    let mut l: Vec<C> = vec![C::zero(); n_terms];
    // n l_n = n x_n - sum_{k=1}^{n-1} k l_k x_{n-k}
    for n in 1..n_terms {
        let mut acc = x.coeff(n as i64).scaled(&int(n as i64));
        for (k, lk) in l.iter().enumerate().take(n).skip(1) {
            if lk.is_zero() {
                continue;
            }
            let xr = x.coeff((n - k) as i64);
            if !xr.is_zero() {
                acc = acc.minus(&lk.times(&xr).scaled(&int(k as i64)));
            }
        }
        l[n] = acc.scaled(&Rational::new(1.into(), (n as i64).into()));
    }
    Ok(LaurentSeries::new(0, l, trunc))
}

impl<C: Ring + fmt::Display> fmt::Display for LaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*L^{e}")?;
        }
        if first {
            write!(f, "0")?;
        }
        if !self.is_exact() {
            write!(f, " + O(L^{})", self.trunc_order + 1)?;
        }
        Ok(())
    }
}

impl<C: Ring + Serialize> Serialize for LaurentSeries<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LaurentSeries", 3)?;
        s.serialize_field("min_exp", &self.min_exp)?;
        let trunc = (!self.is_exact()).then_some(self.trunc_order);
        s.serialize_field("trunc_order", &trunc)?;
        s.serialize_field("coeffs", &self.coeffs)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gaussian::GaussianRational;
    use crate::exact::ring::rat;
    use crate::exact::tau::TauPolynomial;

    fn q(coeffs: &[(i64, i64)], min_exp: i64, trunc: i64) -> LaurentSeries<Rational> {
        LaurentSeries::new(
            min_exp,
            coeffs.iter().map(|&(n, d)| rat(n, d)).collect(),
            trunc,
        )
    }

    #[test]
    fn sine_half_angle_examples() {
        let s = sin_half_series(&int(1), 5);
        assert_eq!(s, q(&[(1, 2), (0, 1), (-1, 48), (0, 1), (1, 3840)], 1, 5));
        let s = sin_half_series(&int(2), 3);
        assert_eq!(s, q(&[(1, 1), (0, 1), (-1, 6)], 1, 3));
        let s = sin_half_series(&int(0), 5);
        assert!(s.is_zero());
        assert_eq!(s.trunc_order(), 5);
    }

    #[test]
    fn exp_examples() {
        let lam = LaurentSeries::monomial(int(1), 1);
        let e = series_exp(&lam, 4).unwrap();
        assert_eq!(e, q(&[(1, 1), (1, 1), (1, 2), (1, 6), (1, 24)], 0, 4));
        let e0 = series_exp(&LaurentSeries::<Rational>::zero(), 4).unwrap();
        assert_eq!(e0, LaurentSeries::new(0, vec![int(1)], 4));
    }

    #[test]
    fn exp_of_framing_phase() {
        // x = i (tau + 1/2) kappa/2 lambda with kappa = 2
        let i = GaussianRational::i();
        let tau_half = TauPolynomial::from_rationals([rat(1, 2), int(1)]);
        let x = LaurentSeries::monomial(tau_half.scale_gaussian(&i), 1);
        let e = series_exp(&x, 2).unwrap();
        assert_eq!(e.coeff(0), TauPolynomial::one());
        assert_eq!(e.coeff(1), tau_half.scale_gaussian(&i));
        assert_eq!(e.coeff(2), tau_half.times(&tau_half).scaled(&rat(-1, 2)));
    }

    #[test]
    fn exp_rejects_constant_and_polar_terms() {
        let x = q(&[(1, 1)], -2, 4);
        match series_exp(&x, 4) {
            Err(Error::BadSeriesTerm { exponent, .. }) => assert_eq!(exponent, -2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(series_exp(&q(&[(3, 1)], 0, 4), 4).is_err());
    }

    #[test]
    fn log_examples() {
        let one = LaurentSeries::constant(int(1));
        assert!(series_log(&one, 5).unwrap().is_zero());
        let x = LaurentSeries::exact(0, vec![int(1), int(1)]);
        let l = series_log(&x, 4).unwrap();
        assert_eq!(l, q(&[(1, 1), (-1, 2), (1, 3), (-1, 4)], 1, 4));
        assert!(series_log(&LaurentSeries::constant(int(2)), 3).is_err());
    }

    #[test]
    fn reciprocal_of_two_sine() {
        // 1/(2 sin(lambda/2)) = 1/lambda + lambda/24 + 7 lambda^3/5760 + ...
        let two_sin = sin_half_series(&int(1), 9).scaled(&int(2));
        let r = two_sin.reciprocal(3).unwrap();
        assert_eq!(r.coeff(-1), int(1));
        assert_eq!(r.coeff(1), rat(1, 24));
        assert_eq!(r.coeff(3), rat(7, 5760));
        assert_eq!(r.trunc_order(), 3);
        assert!(LaurentSeries::<Rational>::zero().reciprocal(3).is_err());
    }

    #[test]
    fn products_track_precision_through_poles() {
        let pole = LaurentSeries::exact(-3, vec![int(1)]);
        let known = q(&[(1, 1), (1, 1)], 0, 5);
        let p = pole.times(&known);
        assert_eq!(p.trunc_order(), 2);
        let p2 = known.times(&known);
        assert_eq!(p2.trunc_order(), 5);
        let shifted = known.shift(2);
        assert_eq!(shifted.valuation(), Some(2));
        assert_eq!(shifted.trunc_order(), 7);
        assert_eq!(shifted.coeff(3), int(1));
    }

    #[test]
    fn json_shape() {
        let s = q(&[(1, 2)], 1, 3);
        let v =
            serde_json::to_string(&s.map_coeffs(|c| GaussianRational::real(c.clone()))).unwrap();
        assert_eq!(
            v,
            r#"{"min_exp":1,"trunc_order":3,"coeffs":[{"re":"1/2","im":"0/1"}]}"#
        );
    }
}
