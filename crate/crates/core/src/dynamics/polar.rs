//! Return maps in (generalized) polar coordinates and the first Lyapunov
//! multiplier.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{BivariatePoly, PolyF64};
use crate::error::{domain, Error, Result};
use crate::gentrig::GenTrigContext;
use crate::numeric::ode::{integrate, Control, Tolerances};
use crate::parallel::Execution;

/// A vector field read in the coordinates `x = r Cs(theta)`, `y = r^n Sn(theta)`.
#[derive(Clone, Debug)]
pub struct PolarSystem {
    source: (BivariatePoly, BivariatePoly),
    p: PolyF64,
    q: PolyF64,
    ctx: Arc<GenTrigContext>,
}

impl PolarSystem {
    pub fn new(p: &BivariatePoly, q: &BivariatePoly, n: u32) -> Self {
        Self::with_context(p, q, Arc::new(GenTrigContext::new(n)))
    }

    pub fn with_context(p: &BivariatePoly, q: &BivariatePoly, ctx: Arc<GenTrigContext>) -> Self {
        Self { source: (p.clone(), q.clone()), p: p.to_f64_poly(), q: q.to_f64_poly(), ctx }
    }

    pub fn n(&self) -> u32 {
        self.ctx.n()
    }

    pub fn context(&self) -> &GenTrigContext {
        &self.ctx
    }

    pub fn source(&self) -> (&BivariatePoly, &BivariatePoly) {
        (&self.source.0, &self.source.1)
    }

    /// The same field with time reversed.
    pub fn reversed(&self) -> Self {
        Self::with_context(&-&self.source.0, &-&self.source.1, self.ctx.clone())
    }

    /// `(r', theta')` at the polar point `(r, theta)`, with the scale of the
    /// two terms making up `theta'`.
    fn rates(&self, r: f64, theta: f64) -> (f64, f64, f64) {
        let n = self.ctx.n() as i32;
        let (x, y) = self.ctx.from_polar(r, theta);
        let (xd, yd) = (self.p.eval(x, y), self.q.eval(x, y));
        let r_dot = (x.powi(2 * n - 1) * xd + y * yd) / r.powi(2 * n - 1);
        let denom = r.powi(n + 1);
        let th_dot = (x * yd - n as f64 * y * xd) / denom;
        let scale = ((x * yd).abs() + n as f64 * (y * xd).abs()) / denom;
        (r_dot, th_dot, scale)
    }
}

/// `dr/dtheta` and the sign of `theta'`.
pub fn polar_rhs(ps: &PolarSystem, r: f64, theta: f64) -> Result<(f64, i8)> {
    if !(r > 0.0) {
        return domain(format!("polar radius must be positive, got {r}"));
    }
    let (r_dot, th_dot, scale) = ps.rates(r, theta);
    if !(th_dot.abs() > 1e-14 * scale) || scale == 0.0 {
        return Err(Error::AngularStall { r, theta, rate: th_dot });
    }
    Ok((r_dot / th_dot, if th_dot > 0.0 { 1 } else { -1 }))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReturnMapSample {
    pub rho: f64,
    pub image: f64,
    pub defect: f64,
    pub revolutions_integrated: u32,
}

/// One forward-time revolution starting from `(rho, 0)`; fails with
/// [`Error::Escape`] if `r` leaves `[rho/100, 100 rho]`.
pub fn return_map(ps: &PolarSystem, rho: f64) -> Result<ReturnMapSample> {
    return_map_within(ps, rho, 100.0)
}

/// [`return_map`] with the escape window `[rho/factor, factor rho]`.
/// Weight-homogeneous orbits have a scale-free shape, so near the edge of
/// the monodromic region a wider window than the default may be needed.
pub fn return_map_within(ps: &PolarSystem, rho: f64, factor: f64) -> Result<ReturnMapSample> {
    if !(rho > 0.0) || !(factor > 1.0) {
        return domain(format!("return map needs rho > 0 and factor > 1, got {rho}, {factor}"));
    }
    let (_, sign) = polar_rhs(ps, rho, 0.0)?;
    let (lo, hi) = (rho / factor, rho * factor);
    let rhs = |theta: f64, u: &[f64; 1]| -> Result<[f64; 1]> {
        if !(u[0] > lo * 0.5 && u[0] < hi * 2.0) {
            return Err(Error::Escape { lo, hi, theta });
        }
        let (v, s) = polar_rhs(ps, u[0], theta)?;
        if s != sign {
            return Err(Error::AngularStall { r: u[0], theta, rate: 0.0 });
        }
        Ok([v])
    };
    let tol = Tolerances { rtol: 1e-12, atol: 1e-14 * lo.min(1.0), ..Tolerances::default() };
    let mut escaped = None;
    let end = integrate(rhs, 0.0, [rho], sign as f64 * ps.context().period(), &tol, |s| {
        if s.y1[0] < lo || s.y1[0] > hi {
            escaped = Some(s.t1);
            Control::Stop
        } else {
            Control::Continue
        }
    })?;
    if let Some(theta) = escaped {
        return Err(Error::Escape { lo, hi, theta });
    }
    let image = end.y[0];
    Ok(ReturnMapSample { rho, image, defect: image - rho, revolutions_integrated: 1 })
}

/// Radii `10^-2, 10^-2.25, ..., 10^-3`.
pub fn rho_ladder() -> Vec<f64> {
    (0..5).map(|k| 10f64.powf(-2.0 - 0.25 * k as f64)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct V1Estimate {
    pub value: f64,
    pub error: f64,
    pub samples: Vec<ReturnMapSample>,
}

/// `lim P(rho)/rho` by Richardson extrapolation over [`rho_ladder`].
pub fn estimate_v1(ps: &PolarSystem) -> Result<V1Estimate> {
    estimate_v1_with(ps, Execution::Sequential)
}

pub fn estimate_v1_with(ps: &PolarSystem, exec: Execution) -> Result<V1Estimate> {
    estimate_v1_within(ps, exec, 100.0)
}

/// [`estimate_v1_with`] using [`return_map_within`] at every radius.
pub fn estimate_v1_within(ps: &PolarSystem, exec: Execution, factor: f64) -> Result<V1Estimate> {
    let ladder = rho_ladder();
    let samples: Vec<ReturnMapSample> =
        exec.map(&ladder, |&rho| return_map_within(ps, rho, factor)).into_iter().collect::<Result<_>>()?;
    let ratios: Vec<f64> = samples.iter().map(|s| s.image / s.rho).collect();
    let (value, error) = richardson(&ratios, 10f64.powf(-0.25));
    Ok(V1Estimate { value, error, samples })
}

/// Extrapolates `R(rho_k)`, `rho_{k+1} = q rho_k`, to `rho = 0` assuming an
/// expansion in integer powers of `rho`; returns the value and the last
/// correction as error estimate.
fn richardson(values: &[f64], q: f64) -> (f64, f64) {
    let mut level = values.to_vec();
    let mut prev_best = *level.last().unwrap();
    let mut best = prev_best;
    let mut qp = q;
    for _ in 0..2 {
        if level.len() < 2 {
            break;
        }
        level = level.windows(2).map(|w| (w[1] - qp * w[0]) / (1.0 - qp)).collect();
        prev_best = best;
        best = *level.last().unwrap();
        qp *= q;
    }
    (best, (best - prev_best).abs())
}

/// First Lyapunov multiplier of `x' = -y, y' = x^(2n-1) + b x^beta y + ...`:
/// `exp(2 b pi / (n sqrt(4n - b^2)))` when `beta = n - 1` and `n` is odd, 1 otherwise.
pub fn v1_formula(n: usize, beta: Option<usize>, b: f64) -> Result<f64> {
    if n % 2 == 0 || beta != Some(n.saturating_sub(1)) {
        return Ok(1.0);
    }
    let nf = n as f64;
    let disc = 4.0 * nf - b * b;
    if !(disc > 0.0) {
        return domain(format!("b^2 = {} must be below 4n = {}", b * b, 4.0 * nf));
    }
    Ok((2.0 * b * std::f64::consts::PI / (nf * disc.sqrt())).exp())
}

/// Reading of a set of return-map samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NumericReading {
    /// `|defect| / rho < 1e-6` at every radius.
    CenterConsistent,
    /// `|defect| / rho > 1e-4` somewhere with one sign throughout.
    Focus { expanding: bool },
    Inconclusive,
}

pub fn read_defects(samples: &[ReturnMapSample]) -> NumericReading {
    if samples.is_empty() {
        return NumericReading::Inconclusive;
    }
    let rel: Vec<f64> = samples.iter().map(|s| s.defect / s.rho).collect();
    if rel.iter().all(|d| d.abs() < 1e-6) {
        return NumericReading::CenterConsistent;
    }
    let all_pos = rel.iter().all(|d| *d > 0.0);
    let all_neg = rel.iter().all(|d| *d < 0.0);
    if (all_pos || all_neg) && rel.iter().any(|d| d.abs() > 1e-4) {
        return NumericReading::Focus { expanding: all_pos };
    }
    NumericReading::Inconclusive
}
