//! Generalized trigonometric functions `Cs`, `Sn`: the solution of
//! `x' = -y, y' = x^(2n-1)` with `x(0) = 1, y(0) = 0`.

use statrs::function::gamma::gamma;

use crate::error::{domain, Result};
use crate::numeric::ode::{dopri_step, Tolerances};

/// Period `2 sqrt(pi/n) Gamma(1/(2n)) / Gamma((n+1)/(2n))`.
pub fn period(n: u32) -> f64 {
    assert!(n >= 1, "period needs n >= 1");
    let n = n as f64;
    2.0 * (std::f64::consts::PI / n).sqrt() * gamma(1.0 / (2.0 * n)) / gamma((n + 1.0) / (2.0 * n))
}

const CHECKPOINTS: usize = 512;
const TABLE_ORDER: usize = 30;
const EVAL_ORDER: usize = 18;

/// Taylor coefficients of `(Cs, Sn)` around a point with values `(c, s)`.
fn taylor(n: u32, c: f64, s: f64, order: usize) -> (Vec<f64>, Vec<f64>) {
    let k = (2 * n - 1) as usize;
    let mut xs = vec![0.0; order + 1];
    let mut ys = vec![0.0; order + 1];
    xs[0] = c;
    ys[0] = s;
    // pw[j] holds the series of x^(j+1), filled one degree at a time
    let mut pw = vec![vec![0.0; order + 1]; k];
    for i in 0..order {
        pw[0][i] = xs[i];
        for j in 1..k {
            pw[j][i] = (0..=i).map(|l| xs[l] * pw[j - 1][i - l]).sum();
        }
        xs[i + 1] = -ys[i] / (i + 1) as f64;
        ys[i + 1] = pw[k - 1][i] / (i + 1) as f64;
    }
    (xs, ys)
}

fn horner(cs: &[f64], h: f64) -> f64 {
    cs.iter().rev().fold(0.0, |acc, c| acc * h + c)
}

/// Period and a table of `(Cs, Sn)` on a uniform grid over a quarter period.
#[derive(Clone, Debug)]
pub struct GenTrigContext {
    n: u32,
    period: f64,
    step: f64,
    table: Vec<(f64, f64)>,
}

impl GenTrigContext {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "generalized trig needs n >= 1");
        let period = period(n);
        let step = period / 4.0 / CHECKPOINTS as f64;
        let mut table = Vec::with_capacity(CHECKPOINTS + 1);
        let (mut c, mut s) = (1.0, 0.0);
        table.push((c, s));
        for _ in 0..CHECKPOINTS {
            let (xs, ys) = taylor(n, c, s, TABLE_ORDER);
            c = horner(&xs, step);
            s = horner(&ys, step);
            (c, s) = project(n, c, s);
            table.push((c, s));
        }
        Self { n, period, step, table }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// `(Cs, Sn)` on `[0, T/4]`.
    fn quarter(&self, theta: f64) -> (f64, f64) {
        let idx = ((theta / self.step).round() as usize).min(CHECKPOINTS);
        let h = theta - idx as f64 * self.step;
        let (c0, s0) = self.table[idx];
        if h == 0.0 {
            return (c0, s0);
        }
        let (xs, ys) = taylor(self.n, c0, s0, EVAL_ORDER);
        project(self.n, horner(&xs, h), horner(&ys, h))
    }

    pub fn cs_sn(&self, theta: f64) -> (f64, f64) {
        let t = self.period;
        let mut th = theta.rem_euclid(t);
        let mut sign = 1.0;
        if th >= t / 2.0 {
            th -= t / 2.0;
            sign = -1.0;
        }
        let (c, s) = if th > t / 4.0 {
            let (c, s) = self.quarter((t / 2.0 - th).max(0.0));
            (-c, s)
        } else {
            self.quarter(th)
        };
        (sign * c, sign * s)
    }

    /// `(x, y) = (r Cs, r^n Sn)`.
    pub fn from_polar(&self, r: f64, theta: f64) -> (f64, f64) {
        let (c, s) = self.cs_sn(theta);
        (r * c, r.powi(self.n as i32) * s)
    }

    /// `r = (x^(2n) + n y^2)^(1/(2n))` and `theta` in `[0, T)`.
    pub fn polar_coords(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        if x == 0.0 && y == 0.0 {
            return domain("generalized polar coordinates of the origin");
        }
        let n = self.n as i32;
        let nf = self.n as f64;
        // scale first so the 2n-th powers neither overflow nor underflow
        let scale = x.abs().max(y.abs().powf(1.0 / nf));
        let (xs, ys) = (x / scale, y / scale.powi(n));
        let r = scale * (xs.powi(2 * n) + nf * ys * ys).powf(1.0 / (2.0 * nf));
        let c = x / r;
        let s = y / r.powi(n);
        let phi = self.quarter_angle(c.abs(), s.abs());
        let t = self.period;
        let theta = match (c >= 0.0, s >= 0.0) {
            (true, true) => phi,
            (false, true) => t / 2.0 - phi,
            (false, false) => t / 2.0 + phi,
            (true, false) => t - phi,
        };
        Ok((r, if theta >= t { theta - t } else { theta }))
    }

    /// The `phi` in `[0, T/4]` with `Cs(phi) = c`, `Sn(phi) = s`, `c, s >= 0`.
    fn quarter_angle(&self, c: f64, s: f64) -> f64 {
        let nf = self.n as f64;
        let use_sn = nf * s * s <= 0.5;
        // Sn increases and Cs decreases on [0, T/4]
        let residual = |phi: f64| {
            let (cp, sp) = self.quarter(phi);
            if use_sn { sp - s } else { c - cp }
        };
        let (mut lo, mut hi) = (0.0, self.period / 4.0);
        let mut phi = {
            // table lookup seeds the bracket
            let target = if use_sn { s } else { c };
            let k = self.table.partition_point(|&(tc, ts)| if use_sn { ts < target } else { tc > target });
            (k as f64 * self.step).min(hi)
        };
        for _ in 0..100 {
            let f = residual(phi);
            if f == 0.0 {
                return phi;
            }
            if f > 0.0 { hi = phi } else { lo = phi }
            let (cp, sp) = self.quarter(phi);
            let deriv = if use_sn { cp.powi(2 * self.n as i32 - 1) } else { sp };
            let newton = phi - f / deriv;
            if deriv > 0.0 && (f / deriv).abs() < 1e-16 * self.period {
                return newton.clamp(lo, hi);
            }
            phi = if deriv > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if hi - lo < 1e-15 * self.period {
                break;
            }
        }
        phi
    }

    /// Independent period estimate: first return of the Dormand–Prince solution
    /// to the positive `x` axis.
    pub fn period_by_first_return(n: u32) -> Result<f64> {
        let k = 2 * n as i32 - 1;
        let mut f = |_: f64, u: &[f64; 2]| Ok([-u[1], u[0].powi(k)]);
        let tol = Tolerances { rtol: 1e-13, atol: 1e-15, ..Tolerances::default() };
        let (mut t, mut u) = (0.0, [1.0, 0.0]);
        let mut k1 = f(t, &u)?;
        let mut h = 1e-3;
        let mut prev_y = 0.0;
        let mut crossed_down = false;
        for _ in 0..tol.max_steps {
            let (u1, err, k7) = dopri_step(&mut f, t, &u, &k1, h)?;
            let norm = err
                .iter()
                .zip(u.iter().zip(u1.iter()))
                .map(|(e, (a, b))| (e / (tol.atol + tol.rtol * a.abs().max(b.abs()))).powi(2))
                .sum::<f64>()
                .sqrt();
            if norm > 1.0 {
                h *= (0.9 * norm.powf(-0.2)).max(0.1);
                continue;
            }
            if prev_y < 0.0 && u1[1] < 0.0 {
                crossed_down = true;
            }
            if crossed_down && u[1] < 0.0 && u1[1] >= 0.0 && u1[0] > 0.0 {
                // Newton on y(t + tau) = 0 with single steps from the bracketing point.
                let mut tau = h * (-u[1]) / (u1[1] - u[1]);
                for _ in 0..50 {
                    let (ut, _, kt) = dopri_step(&mut f, t, &u, &k1, tau)?;
                    let dtau = ut[1] / kt[1];
                    tau -= dtau;
                    if dtau.abs() < 1e-17 {
                        break;
                    }
                }
                return Ok(t + tau);
            }
            prev_y = u1[1];
            t += h;
            u = u1;
            k1 = k7;
            h *= (0.9 * norm.max(1e-10).powf(-0.2)).clamp(0.2, 5.0);
        }
        domain("first return not found")
    }
}

/// Rescales `(c, s)` onto `c^(2n) + n s^2 = 1` when the drift exceeds `1e-12`.
fn project(n: u32, c: f64, s: f64) -> (f64, f64) {
    let e = c.powi(2 * n as i32) + n as f64 * s * s;
    if (e - 1.0).abs() <= 1e-12 {
        return (c, s);
    }
    // scaling c by l and s by l^n keeps the point on the same generalized ray
    let l = e.powf(-1.0 / (2.0 * n as f64));
    (c * l, s * l.powi(n as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn classical_case() {
        assert!((period(1) - 2.0 * PI).abs() < 1e-12);
        let ctx = GenTrigContext::new(1);
        for k in 0..50 {
            let th = -7.0 + 0.37 * k as f64;
            let (c, s) = ctx.cs_sn(th);
            assert!((c - th.cos()).abs() < 1e-13 && (s - th.sin()).abs() < 1e-13, "{th}");
        }
        let (c, s) = ctx.cs_sn(PI / 2.0);
        assert!(c.abs() < 1e-14 && (s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn period_n2() {
        assert!((period(2) - 7.416298709205487).abs() < 1e-12, "{}", period(2));
    }

    #[test]
    fn first_return_matches_gamma_formula() {
        for n in 1..=5 {
            let t = GenTrigContext::period_by_first_return(n).unwrap();
            assert!((t - period(n)).abs() < 1e-9, "n = {n}: {t} vs {}", period(n));
        }
    }

    #[test]
    fn origin_and_half_period() {
        for n in 1..=4 {
            let ctx = GenTrigContext::new(n);
            assert_eq!(ctx.cs_sn(0.0), (1.0, 0.0));
            let th = 0.3 * ctx.period();
            let (c, s) = ctx.cs_sn(th);
            let (c2, s2) = ctx.cs_sn(th + ctx.period() / 2.0);
            assert!((c + c2).abs() < 1e-12 && (s + s2).abs() < 1e-12);
        }
    }

    #[test]
    fn table_agrees_with_dopri() {
        // independent check of the quarter table against the adaptive integrator
        use crate::numeric::ode::solve;
        for n in 2..=4 {
            let ctx = GenTrigContext::new(n);
            let k = 2 * n as i32 - 1;
            let th = 0.23 * ctx.period();
            let tol = Tolerances { rtol: 1e-13, atol: 1e-15, ..Tolerances::default() };
            let u = solve(|_, u: &[f64; 2]| Ok([-u[1], u[0].powi(k)]), 0.0, [1.0, 0.0], th, &tol).unwrap();
            let (c, s) = ctx.cs_sn(th);
            assert!((c - u[0]).abs() < 1e-11 && (s - u[1]).abs() < 1e-11, "n = {n}");
        }
    }

    #[test]
    fn polar_examples() {
        let ctx = GenTrigContext::new(1);
        let (r, th) = ctx.polar_coords(0.0, 1.0).unwrap();
        assert!((r - 1.0).abs() < 1e-15 && (th - PI / 2.0).abs() < 1e-13);
        for n in 1..=4 {
            let ctx = GenTrigContext::new(n);
            let (r, th) = ctx.polar_coords(1.0, 0.0).unwrap();
            assert!((r - 1.0).abs() < 1e-15 && th.abs() < 1e-15);
        }
        let ctx = GenTrigContext::new(2);
        let (r, th) = ctx.polar_coords(0.0, 0.5f64.sqrt()).unwrap();
        assert!((r - 1.0).abs() < 1e-14 && (th - ctx.period() / 4.0).abs() < 1e-10, "{r} {th}");
        assert!(ctx.polar_coords(0.0, 0.0).is_err());
    }

    #[test]
    fn polar_round_trip_all_quadrants() {
        for n in 1..=4 {
            let ctx = GenTrigContext::new(n);
            for k in 0..200 {
                let th = ctx.period() * k as f64 / 200.0;
                let r = 10f64.powf(-3.0 + 6.0 * ((k * 37) % 200) as f64 / 200.0);
                let (x, y) = ctx.from_polar(r, th);
                let (r2, th2) = ctx.polar_coords(x, y).unwrap();
                let (x2, y2) = ctx.from_polar(r2, th2);
                let scale = r.max(r.powi(n as i32));
                assert!((x - x2).abs() <= 1e-10 * scale && (y - y2).abs() <= 1e-10 * scale, "n={n} k={k}");
                assert!((r - r2).abs() <= 1e-12 * r);
            }
        }
    }
}
