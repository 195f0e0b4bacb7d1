//! Dunkl operators: exact on polynomials, by finite differences on callables.

pub mod numeric;
pub mod poly;

pub use numeric::{
    default_step, dunkl_gradient_num, dunkl_laplacian_num, integration_by_parts_residual, CallableField, IbpReport,
    Smoothness,
};
pub use poly::{dunkl_apply_poly, dunkl_laplacian_poly, MonomialDoc, Polynomial};
