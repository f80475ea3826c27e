use std::f64::consts::PI;

use super::rules::Analysis;
use super::verdict::{Corroboration, Outcome};
use crate::algebra::{angular_form, to_f64, BivariatePoly};
use crate::catalog::{Family, FamilyKind};
use crate::dynamics::{estimate_v1_with, estimate_v1_within, homogeneous_integral, read_defects, v1_formula, winding_from, PolarSystem};
use crate::error::Error;
use crate::parallel::Execution;

/// Escape factor used once the default window fails.
pub const WIDE_WINDOW: f64 = 1e12;

#[derive(Clone, Debug)]
pub struct CorroborationOptions {
    /// Start of the winding orbit, on the positive `x` axis.
    pub winding_radius: f64,
    pub revolutions: f64,
    pub t_max: f64,
    pub return_map: bool,
    pub exec: Execution,
}

impl Default for CorroborationOptions {
    fn default() -> Self {
        Self { winding_radius: 0.01, revolutions: 3.0, t_max: 1e12, return_map: true, exec: Execution::default() }
    }
}

/// Polar index and the field in the coordinates where `s1 = 1`.
fn polar_setup(analysis: &Analysis, p: &BivariatePoly, q: &BivariatePoly) -> Option<(u32, BivariatePoly, BivariatePoly)> {
    let (sig, tag) = analysis.matched.as_ref()?;
    if sig.s1 == 1 {
        Some((sig.s2, p.clone(), q.clone()))
    } else if sig.s2 == 1 {
        let (ps, qs) = tag.reconstruct().ok()?;
        Some((sig.s1, ps, qs))
    } else {
        None
    }
}

/// Forward-time multiplier of one revolution predicted in closed form.
pub fn expected_multiplier(analysis: &Analysis, p: &BivariatePoly, q: &BivariatePoly) -> Option<f64> {
    let outcome = &analysis.verdict.outcome;
    if !matches!(outcome, Outcome::Center | Outcome::GlobalCenter | Outcome::Focus { .. }) {
        return None;
    }
    let (_, tag) = analysis.matched.as_ref()?;
    let c = |k: &str| to_f64(&tag.get(k));
    match tag.family {
        FamilyKind::Catalog(Family::S11D1) => {
            let tr = c("a10") + c("b01");
            let det = c("a10") * c("b01") - c("a01") * c("b10");
            let omega = (det - tr * tr / 4.0).sqrt();
            Some((PI * tr / omega).exp())
        }
        FamilyKind::Catalog(Family::S12D2 | Family::S14D4) => Some(1.0),
        FamilyKind::Catalog(Family::S13D3) => {
            let s = 3.0 * c("a30") + c("b21");
            let denom = c("a30") * c("b21") - c("a01") * c("b50");
            v1_formula(3, Some(2), s / denom.sqrt()).ok()
        }
        FamilyKind::Catalog(Family::S11D3) | FamilyKind::Canonical(_) => {
            let integral = homogeneous_integral(p, q).ok()?.f_over_g_integral?;
            let g = angular_form(p, q).to_f64_poly();
            let sign = if g.eval(1.0, 0.0) != 0.0 { g.eval(1.0, 0.0).signum() } else { g.eval(0.0, 1.0).signum() };
            Some((sign * integral).exp())
        }
        _ => None,
    }
}

/// Runs the numeric checks that apply to the verdict in `analysis`.
pub fn corroborate(
    analysis: &Analysis,
    p: &BivariatePoly,
    q: &BivariatePoly,
    opts: &CorroborationOptions,
) -> Corroboration {
    let mut out = Corroboration::default();
    match winding_from(p, q, opts.winding_radius, opts.revolutions, opts.t_max) {
        Ok(orbit) => {
            out.winding = Some(orbit.final_winding());
            out.orbit_end = Some(orbit.end);
        }
        Err(e) => out.notes.push(format!("winding orbit failed: {e}")),
    }
    let monodromic = matches!(
        analysis.verdict.outcome,
        Outcome::Center | Outcome::GlobalCenter | Outcome::Focus { .. }
    );
    if opts.return_map && monodromic {
        match polar_setup(analysis, p, q) {
            Some((n, pp, qq)) => {
                let ps = PolarSystem::new(&pp, &qq, n);
                let mut attempt = estimate_v1_with(&ps, opts.exec);
                if let Err(Error::Escape { .. }) = attempt {
                    out.notes.push(format!("orbit shape exceeds [rho/100, 100 rho]; window widened to {WIDE_WINDOW:e}"));
                    attempt = estimate_v1_within(&ps, opts.exec, WIDE_WINDOW);
                }
                match attempt {
                    Ok(est) => {
                        out.return_map = est.samples.clone();
                        out.reading = Some(read_defects(&est.samples));
                        out.multiplier = Some(est);
                    }
                    Err(e) => out.notes.push(format!("return map: {e}")),
                }
            }
            None => out.notes.push("no generalized polar coordinates for this signature".into()),
        }
    }
    out.multiplier_expected = expected_multiplier(analysis, p, q);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::classifier::{analyze, ClassifyOptions};
    use crate::dynamics::NumericReading;

    #[test]
    fn nilpotent_center_reads_as_center() {
        let x = BivariatePoly::x();
        let y = BivariatePoly::y();
        let p = &y + &x.pow(2);
        let q = &x.pow(3).scale(&int(-3)) + &(&x * &y);
        let a = analyze(&p, &q, &ClassifyOptions::default()).unwrap();
        assert_eq!(a.verdict.outcome, Outcome::Center);
        let c = corroborate(&a, &p, &q, &CorroborationOptions::default());
        assert!(c.winding.unwrap().abs() >= 3.0 - 1e-9, "{c:?}");
        assert_eq!(c.reading, Some(NumericReading::CenterConsistent));
        assert!((c.multiplier.unwrap().value - 1.0).abs() < 1e-6);
        assert_eq!(c.multiplier_expected, Some(1.0));
    }

    #[test]
    fn linear_focus_multiplier() {
        let x = BivariatePoly::x();
        let y = BivariatePoly::y();
        let p = &x.scale(&crate::algebra::rat(1, 10)) + &y;
        let q = &y.scale(&crate::algebra::rat(1, 10)) - &x;
        let a = analyze(&p, &q, &ClassifyOptions::default()).unwrap();
        let c = corroborate(&a, &p, &q, &CorroborationOptions::default());
        let expected = c.multiplier_expected.unwrap();
        assert!((expected - (0.2 * PI).exp()).abs() < 1e-12);
        assert!((c.multiplier.unwrap().value - expected).abs() < 1e-6 * expected);
    }
}
