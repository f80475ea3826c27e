//! The integral of `f/g` over the unit circle for homogeneous systems, where
//! `f = x P + y Q` and `g = x Q - y P`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::algebra::{angular_form, radial_form, real_linear_factor_exists, to_f64, BivariatePoly, Rational};
use crate::catalog::CubicForm;
use crate::error::{domain, Result};
use crate::numeric::quadrature;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrigQuadrature {
    /// `None` exactly when `singular`.
    pub f_over_g_integral: Option<f64>,
    /// `g` vanishes somewhere on the circle.
    pub singular: bool,
}

const TOL: f64 = 1e-12;
const SCAN: usize = 1440;

pub fn homogeneous_integral(p: &BivariatePoly, q: &BivariatePoly) -> Result<TrigQuadrature> {
    let (dp, dq) = (p.degree(), q.degree());
    if !p.is_homogeneous() || !q.is_homogeneous() || dp != dq || dp.is_none() {
        return domain("integral needs homogeneous P, Q of equal degree");
    }
    let g = angular_form(p, q);
    if g.is_zero() || real_linear_factor_exists(&g)? {
        return Ok(TrigQuadrature { f_over_g_integral: None, singular: true });
    }
    let f = radial_form(p, q).to_f64_poly();
    let gx = g.derivative_x().to_f64_poly();
    let gy = g.derivative_y().to_f64_poly();
    let g = g.to_f64_poly();
    let dg = |t: f64| {
        let (c, s) = (t.cos(), t.sin());
        -s * gx.eval(c, s) + c * gy.eval(c, s)
    };
    let breaks = extrema(&dg);
    let value = quadrature::integrate(
        |t| {
            let (c, s) = (t.cos(), t.sin());
            f.eval(c, s) / g.eval(c, s)
        },
        0.0,
        2.0 * PI,
        &breaks,
        TOL,
    )?;
    Ok(TrigQuadrature { f_over_g_integral: Some(value), singular: false })
}

/// Zeros of `dg` on `(0, 2 pi)` located by a sign scan and bisection.
fn extrema(dg: &impl Fn(f64) -> f64) -> Vec<f64> {
    let step = 2.0 * PI / SCAN as f64;
    let mut out = Vec::new();
    let mut prev = dg(0.0);
    for k in 1..=SCAN {
        let t = k as f64 * step;
        let cur = dg(t);
        if prev != 0.0 && cur != 0.0 && (prev < 0.0) != (cur < 0.0) {
            let (mut lo, mut hi, mut flo) = (t - step, t, prev);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let fm = dg(mid);
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        prev = cur;
    }
    out
}

/// Closed forms of the integral for the two canonical forms whose angular
/// form has no real linear factor. For `cubic-nf6` the radical expression is
/// used when `mu > 1/3` and the equivalent `pi sqrt(2/(3 mu + 1))` otherwise.
pub fn closed_form_integral(form: CubicForm, params: &BTreeMap<String, Rational>) -> Option<f64> {
    let g = |k: &str| params.get(k).map(to_f64).unwrap_or(0.0);
    let (sum, alpha) = (g("p1") + g("p3"), g("alpha"));
    match form {
        CubicForm::Nf7 => Some(PI * sum / alpha),
        CubicForm::Nf6 => {
            let mu = g("mu");
            let factor = if mu > 1.0 / 3.0 {
                let s = (9.0 * mu * mu - 1.0).sqrt();
                ((3.0 * mu + s).sqrt() - (3.0 * mu - s).sqrt()) / s
            } else {
                (2.0 / (3.0 * mu + 1.0)).sqrt()
            };
            Some(factor * PI * sum / alpha)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn params(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn rotating_form_examples() {
        let pr = params(&[("p1", int(2)), ("p2", int(0)), ("p3", int(1)), ("alpha", int(1))]);
        let (p, q) = CubicForm::Nf7.system(&pr).unwrap();
        let v = homogeneous_integral(&p, &q).unwrap().f_over_g_integral.unwrap();
        assert!((v - 3.0 * PI).abs() < 1e-10, "{v}");

        let pr = params(&[("p1", rat(5, 3)), ("p2", int(7)), ("p3", rat(-5, 3)), ("alpha", int(-1))]);
        let (p, q) = CubicForm::Nf7.system(&pr).unwrap();
        let v = homogeneous_integral(&p, &q).unwrap().f_over_g_integral.unwrap();
        assert!(v.abs() < 1e-10);
    }

    #[test]
    fn quartic_angular_form_example() {
        let pr = params(&[("p1", int(1)), ("p2", int(0)), ("p3", int(0)), ("alpha", int(1)), ("mu", int(1))]);
        let (p, q) = CubicForm::Nf6.system(&pr).unwrap();
        let v = homogeneous_integral(&p, &q).unwrap().f_over_g_integral.unwrap();
        assert!((v - 2.2214).abs() < 1e-4);
        assert!((v - PI / 2f64.sqrt()).abs() < 1e-10);
        let c = closed_form_integral(CubicForm::Nf6, &pr).unwrap();
        assert!((v - c).abs() < 1e-10);
    }

    #[test]
    fn closed_form_branches_agree_near_threshold() {
        let a = closed_form_integral(
            CubicForm::Nf6,
            &params(&[("p1", int(1)), ("p3", int(0)), ("alpha", int(1)), ("mu", rat(1_000_001, 3_000_000))]),
        )
        .unwrap();
        // the factor is 1 at mu = 1/3
        let b = PI;
        assert!((a - b).abs() < 1e-5);
    }

    #[test]
    fn singular_when_line_exists() {
        // x' = x^3, y' = y^3: every axis is invariant
        let x = BivariatePoly::x();
        let y = BivariatePoly::y();
        let r = homogeneous_integral(&x.pow(3), &y.pow(3)).unwrap();
        assert!(r.singular && r.f_over_g_integral.is_none());
        assert!(homogeneous_integral(&x.pow(3), &y.pow(2)).is_err());
    }
}
