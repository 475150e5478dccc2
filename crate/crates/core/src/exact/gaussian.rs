use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::ring::{int, rat_to_string, Rational, Ring};

/// Exact complex number `re + im*i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::from_int(1),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => Self::i().negated(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        GaussianRational::default()
    }

    fn one() -> Self {
        Self::from_int(1)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    fn minus(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        // Skip work for the common purely real / purely imaginary operands.
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::real(&self.re * &rhs.re);
        }
        if self.im.is_zero() {
            return GaussianRational {
                re: &self.re * &rhs.re,
                im: &self.re * &rhs.im,
            };
        }
        if rhs.im.is_zero() {
            return GaussianRational {
                re: &self.re * &rhs.re,
                im: &self.im * &rhs.re,
            };
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn negated(&self) -> Self {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }

    fn scaled(&self, s: &Rational) -> Self {
        GaussianRational {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    fn inverse(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    fn plus_assign(&mut self, rhs: &Self) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }

    fn from_rational(r: &Rational) -> Self {
        Self::real(r.clone())
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        self.plus(rhs)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        self.minus(rhs)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        self.times(rhs)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        self.negated()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({}{}{}i)", self.re, sign, self.im.abs())
            }
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("GaussianRational", 2)?;
        s.serialize_field("re", &rat_to_string(&self.re))?;
        s.serialize_field("im", &rat_to_string(&self.im))?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::rat;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::new(rat(a, b), rat(c, d))
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(i.times(&i), GaussianRational::from_int(-1));
        for k in -8..8 {
            assert_eq!(GaussianRational::i_pow(k), i.pow(k.rem_euclid(4) as u32));
        }
    }

    #[test]
    fn inverse_is_exact() {
        let z = g(3, 2, -5, 7);
        assert_eq!(z.times(&z.inverse().unwrap()), GaussianRational::one());
        assert!(GaussianRational::zero().inverse().is_none());
    }

    #[test]
    fn display_and_json() {
        assert_eq!(g(1, 2, -1, 3).to_string(), "(1/2-1/3i)");
        assert_eq!(GaussianRational::i().to_string(), "1i");
        let v = serde_json::to_string(&g(1, 4, 0, 1)).unwrap();
        assert_eq!(v, r#"{"re":"1/4","im":"0/1"}"#);
    }
}
