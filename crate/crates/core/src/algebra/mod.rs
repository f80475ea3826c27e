//! Exact rational arithmetic on bivariate polynomials.

mod gcd;
mod linear;
mod lines;
mod poly;
mod rational;
mod upoly;

pub use gcd::{common_factor, gcd_bivariate, is_coprime};
pub use linear::{substitute_linear, transform_system, LinearMap};
pub use lines::{
    angular_form, form_sign, invariant_lines_through_origin, radial_form, real_linear_factor_exists,
    real_linear_factors, AngularSign, InvariantLine, InvariantLines, LineThroughOrigin,
};
pub use poly::{grlex_cmp, is_first_integral, lie_derivative, BivariatePoly, Exponent, PolyF64};
pub use rational::{from_f64, int, rat, sign, simplest_in, to_f64, Rational};
pub use upoly::{RealRoot, UniPoly};
