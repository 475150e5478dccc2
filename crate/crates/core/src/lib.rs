//! Exact computation and cross-verification of the combinatorics behind the Marino-Vafa
//! formula for triple Hodge integrals.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact`]: rationals, Gaussian rationals, tau-polynomials, truncated lambda-series,
//!   Laurent polynomials in `q^(1/2)`.
//! * [`partitions`]: partitions, hooks, `kappa`, `z`, cut/join neighbours.
//! * [`characters`]: Murnaghan–Nakayama characters, central characters, Schur functions.
//! * [`genfun`]: power-sum generating functions with `exp`/`log` and cut-and-join operators.
//! * [`mv`]: the generating functions `R` and `R•`, extraction of `C_{g,mu}(tau)`.
//! * [`genus_one`]: genus-one psi/lambda_1 integrals reduced by string and dilaton.
//! * [`hurwitz`]: Hurwitz numbers by characters and brute force, ELSV, cut-and-join.
//! * [`verify`]: named verification suites with deterministic JSON reports.

pub mod characters;
pub mod error;
pub mod exact;
pub mod genfun;
pub mod genus_one;
pub mod hurwitz;
pub mod mv;
pub mod partitions;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::Partition;
