//! Numerical building blocks: quadrature, special functions.

pub mod bessel;
pub mod dawson;
pub mod quad;
