//! Monodromy of the origin: the sign test on the lowest-degree angular form
//! and the criterion for nilpotent singular points.

use num::{Signed, Zero};
use serde::Serialize;

use crate::algebra::{angular_form, form_sign, transform_system, AngularSign, BivariatePoly, LinearMap, Rational};
use crate::error::{Error, Result};
use crate::series::{compose_with_branch, implicit_branch, leading_term, LeadingTerm};

/// Jacobian of `(p, q)` at the origin, row-major.
pub fn linear_part(p: &BivariatePoly, q: &BivariatePoly) -> [[Rational; 2]; 2] {
    [[p.coeff(1, 0), p.coeff(0, 1)], [q.coeff(1, 0), q.coeff(0, 1)]]
}

pub fn origin_is_singular(p: &BivariatePoly, q: &BivariatePoly) -> bool {
    p.coeff(0, 0).is_zero() && q.coeff(0, 0).is_zero()
}

/// Why a system could not be brought to the nilpotent form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotNilpotent {
    ZeroLinearPart,
    NonNilpotentLinearPart,
}

/// `x' = y + P2, y' = Q2` together with how it was reached.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentForm {
    pub p2: BivariatePoly,
    pub q2: BivariatePoly,
    /// Time was multiplied by this factor.
    pub time_scale: Rational,
    /// The coordinate change `u = M v`, if any.
    pub transform: Option<LinearMap>,
    pub swapped: bool,
}

/// Rescales time and, if needed, exchanges or changes coordinates so that
/// the linear part becomes `[[0, 1], [0, 0]]`.
pub fn to_nilpotent_form(
    p: &BivariatePoly,
    q: &BivariatePoly,
) -> Result<std::result::Result<NilpotentForm, NotNilpotent>> {
    if !origin_is_singular(p, q) {
        return Err(Error::OriginNotSingular);
    }
    let [[a, b], [c, d]] = linear_part(p, q);
    if a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero() {
        return Ok(Err(NotNilpotent::ZeroLinearPart));
    }
    if !(&a + &d).is_zero() || !(&a * &d - &b * &c).is_zero() {
        return Ok(Err(NotNilpotent::NonNilpotentLinearPart));
    }
    let strip = |p: &BivariatePoly, lin: &BivariatePoly, k: &Rational| {
        (p - lin).scale(&k.recip())
    };
    let form = if a.is_zero() && c.is_zero() {
        let y = BivariatePoly::y().scale(&b);
        NilpotentForm {
            p2: strip(p, &y, &b),
            q2: q.scale(&b.recip()),
            time_scale: b.recip(),
            transform: None,
            swapped: false,
        }
    } else if a.is_zero() && b.is_zero() {
        let (ps, qs) = (q.swap_xy(), p.swap_xy());
        let y = BivariatePoly::y().scale(&c);
        NilpotentForm {
            p2: strip(&ps, &y, &c),
            q2: qs.scale(&c.recip()),
            time_scale: c.recip(),
            transform: None,
            swapped: true,
        }
    } else {
        // columns J e2 and e2, with e2 chosen so that J e2 != 0
        let (e1, e2) = if b.is_zero() && d.is_zero() {
            ((a.clone(), c.clone()), (Rational::from_integer(1.into()), Rational::zero()))
        } else {
            ((b.clone(), d.clone()), (Rational::zero(), Rational::from_integer(1.into())))
        };
        let m = LinearMap::new(e1.0, e2.0, e1.1, e2.1);
        let (pt, qt) = transform_system(p, q, &m)?;
        NilpotentForm {
            p2: &pt - &BivariatePoly::y(),
            q2: qt,
            time_scale: Rational::from_integer(1.into()),
            transform: Some(m),
            swapped: false,
        }
    };
    debug_assert!(form.p2.min_degree().is_none_or(|k| k >= 2));
    debug_assert!(form.q2.min_degree().is_none_or(|k| k >= 2));
    Ok(Ok(form))
}

/// Leading data of `f(x) = Q2(x, F(x))` and `phi(x) = div(y + P2, Q2)(x, F(x))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AndreevData {
    pub a: Rational,
    pub alpha: usize,
    pub phi_zero: bool,
    pub b: Option<Rational>,
    pub beta: Option<usize>,
    /// `(alpha + 1) / 2` when `alpha` is odd.
    pub n: Option<usize>,
    pub truncation_order: usize,
}

pub fn andreev_data(p2: &BivariatePoly, q2: &BivariatePoly, order: usize) -> Result<AndreevData> {
    let branch = implicit_branch(p2, order)?;
    let f = compose_with_branch(q2, &branch);
    let (a, alpha) = match leading_term(&f) {
        LeadingTerm::Term { coefficient, exponent } => (coefficient, exponent),
        LeadingTerm::ZeroToTruncation { order } => return Err(Error::NotIsolated(order)),
    };
    let div = &p2.derivative_x() + &q2.derivative_y();
    let phi = compose_with_branch(&div, &branch);
    let (phi_zero, b, beta) = match leading_term(&phi) {
        LeadingTerm::Term { coefficient, exponent } => (false, Some(coefficient), Some(exponent)),
        LeadingTerm::ZeroToTruncation { .. } => (true, None, None),
    };
    let n = (alpha % 2 == 1).then_some(alpha.div_ceil(2));
    Ok(AndreevData { a, alpha, phi_zero, b, beta, n, truncation_order: order })
}

/// Monodromy of a nilpotent singular point from its leading data.
pub fn nilpotent_monodromic(data: &AndreevData) -> bool {
    if !data.a.is_negative() {
        return false;
    }
    let Some(n) = data.n else { return false };
    if data.phi_zero {
        return true;
    }
    let (Some(b), Some(beta)) = (&data.b, data.beta) else { return false };
    if beta + 1 > n {
        return true;
    }
    if beta + 1 == n {
        let disc = b * b + &data.a * Rational::from_integer((4 * n).into());
        return disc.is_negative();
    }
    false
}

/// Sign behaviour of `x Q_k - y P_k` for the lowest degree `k` present in `(p, q)`.
pub fn angular_sign_definite(p: &BivariatePoly, q: &BivariatePoly) -> AngularSign {
    let k = match (p.min_degree(), q.min_degree()) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => return AngularSign::IdenticallyZero,
    };
    let h = angular_form(&p.homogeneous_part(k), &q.homogeneous_part(k));
    form_sign(&h).expect("angular form of homogeneous parts is homogeneous")
}
