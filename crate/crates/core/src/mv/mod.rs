//! The Mariño–Vafa generating functions and the triple Hodge polynomials read off them.

pub mod extraction;
pub mod series;
pub mod transfer;
pub mod vnu;

pub use extraction::{
    c_gmu_cutjoin_check, c_gmu_from_hodge, c_gmu_prefactor, extract_c_gmu, genus_one_hodge,
    genus_zero_hodge, hodge_polynomial, lambda_g_coefficients, CgmuPolynomial,
};
pub use series::{
    build_r, build_r_star, initial_condition_check, tau_equation_check, IdentityCheck, LambdaTau,
    MvSeries, TauEquationReport,
};
pub use transfer::{derivative_ladder_check, transfer_system_kernel, TransferKernel};
pub use vnu::{v_nu_forms_agree, v_nu_hook, v_nu_product, v_nu_series};
