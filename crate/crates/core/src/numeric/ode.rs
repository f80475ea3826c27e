//! Adaptive Dormand–Prince 5(4) integration of small fixed-size systems.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Upper bound on `|h|`; `f64::INFINITY` for none.
    pub h_max: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { rtol: 1e-12, atol: 1e-14, max_steps: 2_000_000, h_max: f64::INFINITY }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// One Dormand–Prince step: returns the fifth-order solution, the embedded
/// error vector and the derivative at the new point.
pub fn dopri_step<const N: usize, F>(
    f: &mut F,
    t: f64,
    y: &[f64; N],
    k1: &[f64; N],
    h: f64,
) -> Result<([f64; N], [f64; N], [f64; N])>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    let k2 = f(t + C2 * h, &axpy(y, h, &[(A21, k1)]))?;
    let k3 = f(t + C3 * h, &axpy(y, h, &[(A31, k1), (A32, &k2)]))?;
    let k4 = f(t + C4 * h, &axpy(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]))?;
    let k5 = f(t + C5 * h, &axpy(y, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]))?;
    let k6 = f(t + h, &axpy(y, h, &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]))?;
    let y1 = axpy(y, h, &[(B1, k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
    let k7 = f(t + h, &y1)?;
    let mut err = [0.0; N];
    for i in 0..N {
        err[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
    }
    Ok((y1, err, k7))
}

/// What an observer wants after an accepted step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
}

/// An accepted step from `(t0, y0)` to `(t1, y1)`.
pub struct StepView<'a, const N: usize> {
    pub t0: f64,
    pub y0: &'a [f64; N],
    pub t1: f64,
    pub y1: &'a [f64; N],
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Endpoint<const N: usize> {
    pub t: f64,
    pub y: [f64; N],
    pub steps: usize,
    /// The observer requested the stop before `t_end`.
    pub stopped: bool,
}

fn error_norm<const N: usize>(err: &[f64; N], y0: &[f64; N], y1: &[f64; N], tol: &Tolerances) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        let sc = tol.atol + tol.rtol * y0[i].abs().max(y1[i].abs());
        s += (err[i] / sc).powi(2);
    }
    (s / N as f64).sqrt()
}

fn initial_step<const N: usize>(y0: &[f64; N], k1: &[f64; N], tol: &Tolerances, span: f64) -> f64 {
    let mut d0 = 0.0;
    let mut d1 = 0.0;
    for i in 0..N {
        let sc = tol.atol + tol.rtol * y0[i].abs();
        d0 += (y0[i] / sc).powi(2);
        d1 += (k1[i] / sc).powi(2);
    }
    let (d0, d1) = ((d0 / N as f64).sqrt(), (d1 / N as f64).sqrt());
    let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h.min(span.abs()).min(tol.h_max)
}

/// Integrates `y' = f(t, y)` from `t0` to `t_end` (either direction), calling
/// `observer` after every accepted step.
pub fn integrate<const N: usize, F, O>(
    mut f: F,
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    tol: &Tolerances,
    mut observer: O,
) -> Result<Endpoint<N>>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
    O: FnMut(&StepView<'_, N>) -> Control,
{
    let dir = if t_end >= t0 { 1.0 } else { -1.0 };
    let (mut t, mut y) = (t0, y0);
    if t_end == t0 {
        return Ok(Endpoint { t, y, steps: 0, stopped: false });
    }
    let mut k1 = f(t, &y)?;
    let mut h = initial_step(&y, &k1, tol, t_end - t0);
    let mut steps = 0;
    let mut last_rejected = false;
    loop {
        if steps >= tol.max_steps {
            return Err(Error::Integration(format!("step budget of {} exhausted at t = {t}", tol.max_steps)));
        }
        let remaining = (t_end - t).abs();
        let mut h_try = h.min(remaining).min(tol.h_max);
        let last = h_try >= remaining;
        if last {
            h_try = remaining;
        }
        if h_try <= f64::EPSILON * t.abs().max(1.0) * 4.0 && !last {
            return Err(Error::Integration(format!("step size underflow at t = {t}")));
        }
        let (y1, err, k7) = dopri_step(&mut f, t, &y, &k1, dir * h_try)?;
        let norm = error_norm(&err, &y, &y1, tol);
        if !norm.is_finite() {
            h = h_try * 0.1;
            last_rejected = true;
            steps += 1;
            continue;
        }
        if norm <= 1.0 {
            let t1 = if last { t_end } else { t + dir * h_try };
            steps += 1;
            let control = observer(&StepView { t0: t, y0: &y, t1, y1: &y1 });
            t = t1;
            y = y1;
            k1 = k7;
            if control == Control::Stop {
                return Ok(Endpoint { t, y, steps, stopped: true });
            }
            if last {
                return Ok(Endpoint { t, y, steps, stopped: false });
            }
            let mut factor = 0.9 * norm.max(1e-10).powf(-0.2);
            factor = factor.clamp(0.2, 5.0);
            if last_rejected {
                factor = factor.min(1.0);
            }
            h = h_try * factor;
            last_rejected = false;
        } else {
            h = h_try * (0.9 * norm.powf(-0.2)).max(0.1);
            last_rejected = true;
            steps += 1;
        }
    }
}

/// Integrates to `t_end` without observation.
pub fn solve<const N: usize, F>(f: F, t0: f64, y0: [f64; N], t_end: f64, tol: &Tolerances) -> Result<[f64; N]>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    Ok(integrate(f, t0, y0, t_end, tol, |_| Control::Continue)?.y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn harmonic_oscillator_period() {
        let y = solve(|_, y: &[f64; 2]| Ok([-y[1], y[0]]), 0.0, [1.0, 0.0], 2.0 * PI, &Tolerances::default())
            .unwrap();
        assert!((y[0] - 1.0).abs() < 1e-10 && y[1].abs() < 1e-10, "{y:?}");
    }

    #[test]
    fn backward_in_time() {
        let y = solve(|_, y: &[f64; 1]| Ok([y[0]]), 1.0, [1.0], 0.0, &Tolerances::default()).unwrap();
        assert!((y[0] - (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn observer_can_stop() {
        let end = integrate(
            |_, y: &[f64; 1]| Ok([1.0 + 0.0 * y[0]]),
            0.0,
            [0.0],
            10.0,
            &Tolerances { h_max: 0.5, ..Tolerances::default() },
            |s| if s.y1[0] > 2.0 { Control::Stop } else { Control::Continue },
        )
        .unwrap();
        assert!(end.stopped && end.t > 2.0 && end.t <= 2.5 + 1e-12);
    }

    #[test]
    fn rhs_errors_propagate() {
        let r = solve(
            |t, _: &[f64; 1]| if t > 0.5 { Err(Error::Integration("boom".into())) } else { Ok([1.0]) },
            0.0,
            [0.0],
            1.0,
            &Tolerances::default(),
        );
        assert!(r.is_err());
    }
}
