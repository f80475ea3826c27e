use num::Zero;

use super::poly::BivariatePoly;
use super::rational::Rational;
use crate::error::{domain, Result};

/// The linear map `(x, y) -> (m[0][0] x + m[0][1] y, m[1][0] x + m[1][1] y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    pub m: [[Rational; 2]; 2],
}

impl LinearMap {
    pub fn new(m00: Rational, m01: Rational, m10: Rational, m11: Rational) -> Self {
        Self { m: [[m00, m01], [m10, m11]] }
    }

    pub fn identity() -> Self {
        use num::One;
        Self::new(Rational::one(), Rational::zero(), Rational::zero(), Rational::one())
    }

    pub fn det(&self) -> Rational {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.is_zero() {
            return domain("singular linear map");
        }
        let [[a, b], [c, e]] = &self.m;
        Ok(Self::new(e / &d, -b / &d, -c / &d, a / &d))
    }

    /// Images of the coordinate functions: `(m00 x + m01 y, m10 x + m11 y)`.
    fn coordinate_images(&self) -> (BivariatePoly, BivariatePoly) {
        let row = |r: &[Rational; 2]| {
            &BivariatePoly::monomial(r[0].clone(), 1, 0) + &BivariatePoly::monomial(r[1].clone(), 0, 1)
        };
        (row(&self.m[0]), row(&self.m[1]))
    }
}

/// `p` composed with the linear map: `p(m00 x + m01 y, m10 x + m11 y)`.
pub fn substitute_linear(p: &BivariatePoly, m: &LinearMap) -> Result<BivariatePoly> {
    if m.det().is_zero() {
        return domain("substitution matrix is singular");
    }
    let (sx, sy) = m.coordinate_images();
    Ok(p.compose(&sx, &sy))
}

/// The system `x' = P, y' = Q` rewritten in coordinates `u` with `(x, y) = M u`:
/// `u' = M^{-1} (P, Q)(M u)`.
pub fn transform_system(
    p: &BivariatePoly,
    q: &BivariatePoly,
    m: &LinearMap,
) -> Result<(BivariatePoly, BivariatePoly)> {
    let inv = m.inverse()?;
    let ps = substitute_linear(p, m)?;
    let qs = substitute_linear(q, m)?;
    let new_p = &ps.scale(&inv.m[0][0]) + &qs.scale(&inv.m[0][1]);
    let new_q = &ps.scale(&inv.m[1][0]) + &qs.scale(&inv.m[1][1]);
    Ok((new_p, new_q))
}
