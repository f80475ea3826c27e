//! Floating-point machinery shared by the corroboration layer.

pub mod ode;
pub mod quadrature;
