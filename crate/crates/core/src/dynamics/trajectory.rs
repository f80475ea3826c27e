//! Cartesian orbits with cumulative winding about the origin.

use serde::Serialize;

use crate::algebra::BivariatePoly;
use crate::error::{domain, Result};
use crate::numeric::ode::{integrate, solve, Control, Tolerances};

#[derive(Clone, Debug)]
pub struct TrajectoryOptions {
    pub t_max: f64,
    /// Stop once `|winding|` reaches this many revolutions.
    pub stop_after_revolutions: Option<f64>,
    /// Stop when the distance to the origin exceeds `escape_factor * |start|`.
    pub escape_factor: f64,
    /// Stop when the distance falls below `capture_factor * |start|`.
    pub capture_factor: f64,
    /// Keep every `stride`-th accepted step.
    pub stride: usize,
    pub tol: Tolerances,
}

impl Default for TrajectoryOptions {
    fn default() -> Self {
        Self {
            t_max: 1e3,
            stop_after_revolutions: None,
            escape_factor: 1e8,
            capture_factor: 1e-10,
            stride: 1,
            tol: Tolerances { rtol: 1e-11, atol: 1e-15, max_steps: 400_000, h_max: f64::INFINITY },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrbitPoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    /// Cumulative polar angle in revolutions.
    pub winding: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitEnd {
    TimeElapsed,
    WindingReached,
    /// Left the escape radius: finite-time blow-up or an unbounded orbit.
    Escaped { time: f64 },
    Captured { time: f64 },
    StepBudget,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Orbit {
    pub points: Vec<OrbitPoint>,
    pub end: OrbitEnd,
}

impl Orbit {
    pub fn final_winding(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.winding)
    }

    pub fn max_abs_winding(&self) -> f64 {
        self.points.iter().map(|p| p.winding.abs()).fold(0.0, f64::max)
    }
}

fn unwrap_angle(prev: f64, raw: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let base = prev.rem_euclid(tau);
    let mut delta = raw.rem_euclid(tau) - base;
    if delta > std::f64::consts::PI {
        delta -= tau;
    } else if delta < -std::f64::consts::PI {
        delta += tau;
    }
    prev + delta
}

pub fn trajectory(
    p: &BivariatePoly,
    q: &BivariatePoly,
    start: (f64, f64),
    opts: &TrajectoryOptions,
) -> Result<Orbit> {
    let r0 = start.0.hypot(start.1);
    if r0 == 0.0 {
        return domain("trajectory cannot start at the origin");
    }
    let (pf, qf) = (p.to_f64_poly(), q.to_f64_poly());
    let mut angle = start.1.atan2(start.0);
    let angle0 = angle;
    let mut points = vec![OrbitPoint { t: 0.0, x: start.0, y: start.1, winding: 0.0 }];
    let mut end = OrbitEnd::TimeElapsed;
    let mut count = 0usize;
    let tau = std::f64::consts::TAU;
    let rhs = |_: f64, u: &[f64; 2]| Ok([pf.eval(u[0], u[1]), qf.eval(u[0], u[1])]);
    // step start and angle there, kept for refining a winding stop
    let mut crossing: Option<(f64, [f64; 2], f64)> = None;
    let result = integrate(
        rhs,
        0.0,
        [start.0, start.1],
        opts.t_max,
        &opts.tol,
        |s| {
            let (x, y) = (s.y1[0], s.y1[1]);
            // sub-sample the chord so fast rotation is not aliased
            let (x0, y0) = (s.y0[0], s.y0[1]);
            let angle_before = angle;
            for k in 1..=4 {
                let w = k as f64 / 4.0;
                let (xi, yi) = (x0 + w * (x - x0), y0 + w * (y - y0));
                if xi != 0.0 || yi != 0.0 {
                    angle = unwrap_angle(angle, yi.atan2(xi));
                }
            }
            let winding = (angle - angle0) / tau;
            count += 1;
            let r = x.hypot(y);
            let stop = if !r.is_finite() || r > opts.escape_factor * r0 {
                end = OrbitEnd::Escaped { time: s.t1 };
                true
            } else if r < opts.capture_factor * r0 {
                end = OrbitEnd::Captured { time: s.t1 };
                true
            } else if opts.stop_after_revolutions.is_some_and(|n| winding.abs() >= n) {
                end = OrbitEnd::WindingReached;
                crossing = Some((s.t0, *s.y0, angle_before));
                true
            } else {
                false
            };
            if stop || count % opts.stride.max(1) == 0 {
                points.push(OrbitPoint { t: s.t1, x, y, winding });
            }
            if stop { Control::Stop } else { Control::Continue }
        },
    );
    match result {
        Ok(_) => {}
        Err(crate::error::Error::Integration(msg)) if msg.contains("step budget") => end = OrbitEnd::StepBudget,
        Err(crate::error::Error::Integration(msg)) if msg.contains("underflow") => {
            // step collapse near a blow-up time
            end = OrbitEnd::Escaped { time: points.last().map_or(0.0, |p| p.t) };
        }
        Err(e) => return Err(e),
    }
    if let (OrbitEnd::WindingReached, Some((t0, y0, before)), Some(target)) =
        (end, crossing, opts.stop_after_revolutions)
    {
        if let Some(last) = points.last_mut() {
            *last = refine_crossing(rhs, t0, y0, before, angle0, last.t, target, &opts.tol)?;
        }
    }
    Ok(Orbit { points, end })
}

/// Bisects the step `[t0, t1]` for the time at which `|winding|` equals `target`.
#[allow(clippy::too_many_arguments)]
fn refine_crossing<F>(
    rhs: F,
    t0: f64,
    y0: [f64; 2],
    before: f64,
    angle0: f64,
    t1: f64,
    target: f64,
    tol: &Tolerances,
) -> Result<OrbitPoint>
where
    F: Fn(f64, &[f64; 2]) -> Result<[f64; 2]> + Copy,
{
    let tau = std::f64::consts::TAU;
    let at = |t: f64| -> Result<OrbitPoint> {
        let u = if t == t0 { y0 } else { solve(rhs, t0, y0, t, tol)? };
        let winding = (unwrap_angle(before, u[1].atan2(u[0])) - angle0) / tau;
        Ok(OrbitPoint { t, x: u[0], y: u[1], winding })
    };
    let (mut lo, mut hi) = (t0, t1);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if at(mid)?.winding.abs() >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    at(hi)
}

/// Revolutions completed by the orbit from `(radius, 0)` within the budget,
/// stopping at `target` revolutions.
pub fn winding_from(p: &BivariatePoly, q: &BivariatePoly, radius: f64, target: f64, t_max: f64) -> Result<Orbit> {
    let opts = TrajectoryOptions {
        t_max,
        stop_after_revolutions: Some(target),
        stride: 64,
        ..TrajectoryOptions::default()
    };
    trajectory(p, q, (radius, 0.0), &opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, lie_derivative, rat};

    fn x() -> BivariatePoly {
        BivariatePoly::x()
    }
    fn y() -> BivariatePoly {
        BivariatePoly::y()
    }

    #[test]
    fn linear_center_closes() {
        let opts = TrajectoryOptions { t_max: std::f64::consts::TAU, ..TrajectoryOptions::default() };
        let orbit = trajectory(&y(), &-&x(), (1.0, 0.0), &opts).unwrap();
        let last = orbit.points.last().unwrap();
        assert!((last.x - 1.0).abs() < 1e-9 && last.y.abs() < 1e-9);
        assert!((last.winding + 1.0).abs() < 1e-9);
    }

    #[test]
    fn winding_stop_lands_on_the_start_ray() {
        let opts = TrajectoryOptions { stop_after_revolutions: Some(1.0), ..TrajectoryOptions::default() };
        let orbit = trajectory(&y(), &-&x(), (1.0, 0.0), &opts).unwrap();
        let last = orbit.points.last().unwrap();
        assert_eq!(orbit.end, OrbitEnd::WindingReached);
        assert!((last.x - 1.0).abs() < 1e-9 && last.y.abs() < 1e-9, "{last:?}");
        assert!((last.t - std::f64::consts::TAU).abs() < 1e-9);
    }

    #[test]
    fn cusp_winding_is_bounded() {
        let orbit = trajectory(&y(), &x().pow(2), (1.0, 0.0), &TrajectoryOptions::default()).unwrap();
        assert!(matches!(orbit.end, OrbitEnd::Escaped { .. }));
        assert!(orbit.max_abs_winding() < 1.0);
    }

    #[test]
    fn monodromic_nilpotent_winds() {
        // x' = y + x^2, y' = -3 x^3 + x y
        let p = &y() + &x().pow(2);
        let q = &x().pow(3).scale(&int(-3)) + &(&x() * &y());
        let orbit = winding_from(&p, &q, 0.01, 3.0, 1e9).unwrap();
        assert_eq!(orbit.end, OrbitEnd::WindingReached);
    }

    #[test]
    fn first_integral_is_conserved() {
        // x' = y, y' = -x^3 with H = y^2/2 + x^4/4
        let q = -&x().pow(3);
        let h = &y().pow(2).scale(&rat(1, 2)) + &x().pow(4).scale(&rat(1, 4));
        assert!(lie_derivative(&h, &y(), &q).is_zero());
        let opts = TrajectoryOptions { t_max: 50.0, ..TrajectoryOptions::default() };
        let orbit = trajectory(&y(), &q, (0.8, 0.1), &opts).unwrap();
        let hf = h.to_f64_poly();
        let h0 = hf.eval(0.8, 0.1);
        for pt in &orbit.points {
            assert!((hf.eval(pt.x, pt.y) - h0).abs() <= 1e-8 * h0);
        }
    }
}
