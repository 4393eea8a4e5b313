//! Jacobi polynomials, Gamma-function ratios and Gauss–Jacobi quadrature.

pub mod gamma;
pub mod jacobi;
pub mod quadrature;

pub use gamma::{ln_beta, ln_gamma, log_poch_ratio};
pub use jacobi::{jacobi_p, JacobiParams, JacobiSequence};
pub use quadrature::{exact_order, gauss_jacobi, gr_7391, weight_moment, QuadratureRule};
