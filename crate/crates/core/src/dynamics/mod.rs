//! Numeric corroboration: return maps, multipliers, circle quadrature,
//! reversibility and orbits.

mod homogeneous;
mod polar;
mod trajectory;

use serde::Serialize;

use crate::algebra::{BivariatePoly, Rational};

pub use homogeneous::{closed_form_integral, homogeneous_integral, TrigQuadrature};
pub use polar::{
    estimate_v1, estimate_v1_with, estimate_v1_within, polar_rhs, read_defects, return_map, return_map_within, rho_ladder, v1_formula, NumericReading,
    PolarSystem, ReturnMapSample, V1Estimate,
};
pub use trajectory::{trajectory, winding_from, Orbit, OrbitEnd, OrbitPoint, TrajectoryOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reversibility {
    /// Invariant under `(x, y, t) -> (-x, y, -t)`.
    XReversible,
    /// Invariant under `(x, y, t) -> (x, -y, -t)`.
    YReversible,
    None,
}

/// Exact reversibility test; `XReversible` wins when both hold.
pub fn reversibility(p: &BivariatePoly, q: &BivariatePoly) -> Reversibility {
    let minus = -Rational::from_integer(1.into());
    let one = Rational::from_integer(1.into());
    let flip_x = |h: &BivariatePoly| h.scale_vars(&minus, &one);
    let flip_y = |h: &BivariatePoly| h.scale_vars(&one, &minus);
    if flip_x(p) == *p && flip_x(q) == -q {
        Reversibility::XReversible
    } else if flip_y(p) == -p && flip_y(q) == *q {
        Reversibility::YReversible
    } else {
        Reversibility::None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> BivariatePoly {
        BivariatePoly::x()
    }
    fn y() -> BivariatePoly {
        BivariatePoly::y()
    }

    #[test]
    fn reversibility_examples() {
        let p = &y() + &x().pow(2);
        let q = &x().pow(3) + &(&x() * &y());
        assert_eq!(reversibility(&p, &q), Reversibility::XReversible);
        let p = &y() + &x().pow(4);
        let q = &x().pow(7) + &(&x().pow(3) * &y());
        assert_eq!(reversibility(&p, &q), Reversibility::XReversible);
        assert_eq!(reversibility(&x(), &y()), Reversibility::None);
        assert_eq!(reversibility(&y(), &x().pow(2)), Reversibility::YReversible);
    }
}
