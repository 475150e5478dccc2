//! The scalar and series tower: rationals, Gaussian rationals, tau-polynomials,
//! truncated Laurent series in lambda, and Laurent polynomials in `q^(1/2)`.

pub mod gaussian;
pub mod laurent;
pub mod linalg;
pub mod qhalf;
pub mod ring;
pub mod tau;

pub use gaussian::GaussianRational;
pub use laurent::{series_exp, series_log, sin_half_series, LaurentSeries, EXACT};
pub use qhalf::{qhalf_eval_check, QHalfFraction, QHalfLaurent};
pub use ring::{int, rat, rat_big, rat_to_string, Rational, Ring};
pub use tau::TauPolynomial;
