//! Orbit samples on rings of initial conditions, as CSV and optional SVG.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use whvf::algebra::BivariatePoly;
use whvf::dynamics::{trajectory, Orbit, TrajectoryOptions};
use whvf::parallel::Execution;

#[derive(Clone, Debug)]
pub struct PortraitOptions {
    pub radii: Vec<f64>,
    pub count: usize,
    pub t_max: f64,
    pub revolutions: f64,
}

pub struct Portrait {
    pub orbits: Vec<Orbit>,
}

pub fn compute(p: &BivariatePoly, q: &BivariatePoly, opts: &PortraitOptions, exec: Execution) -> Result<Portrait> {
    let starts: Vec<(f64, f64)> = opts
        .radii
        .iter()
        .flat_map(|&r| {
            (0..opts.count).map(move |k| {
                let a = std::f64::consts::TAU * k as f64 / opts.count as f64;
                (r * a.cos(), r * a.sin())
            })
        })
        .collect();
    let traj = TrajectoryOptions {
        t_max: opts.t_max,
        stop_after_revolutions: Some(opts.revolutions),
        ..TrajectoryOptions::default()
    };
    let orbits = exec
        .map(&starts, |&s| trajectory(p, q, s, &traj))
        .into_iter()
        .collect::<whvf::error::Result<Vec<_>>>()?;
    Ok(Portrait { orbits })
}

impl Portrait {
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
        w.write_record(["orbit_id", "t", "x", "y", "winding"])?;
        for (id, orbit) in self.orbits.iter().enumerate() {
            for pt in &orbit.points {
                w.write_record([
                    id.to_string(),
                    format!("{:e}", pt.t),
                    format!("{:e}", pt.x),
                    format!("{:e}", pt.y),
                    format!("{:e}", pt.winding),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// One polyline per orbit in a square view of half-width `extent`.
    pub fn to_svg(&self, extent: f64) -> String {
        let size = 600.0;
        let scale = size / (2.0 * extent);
        let map = |x: f64, y: f64| ((x + extent) * scale, (extent - y) * scale);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="white"/>"##);
        let (cx, cy) = map(0.0, 0.0);
        let _ = writeln!(s, r##"<line x1="0" y1="{cy}" x2="{size}" y2="{cy}" stroke="#ccc"/>"##);
        let _ = writeln!(s, r##"<line x1="{cx}" y1="0" x2="{cx}" y2="{size}" stroke="#ccc"/>"##);
        for orbit in &self.orbits {
            let pts: Vec<String> = orbit
                .points
                .iter()
                .filter(|p| p.x.abs() <= 4.0 * extent && p.y.abs() <= 4.0 * extent)
                .map(|p| {
                    let (u, v) = map(p.x, p.y);
                    format!("{u:.2},{v:.2}")
                })
                .collect();
            if pts.len() > 1 {
                let _ = writeln!(
                    s,
                    r##"<polyline fill="none" stroke="#1f4e9c" stroke-width="1" points="{}"/>"##,
                    pts.join(" ")
                );
            }
        }
        let _ = writeln!(s, r##"<circle cx="{cx}" cy="{cy}" r="3" fill="#c0392b"/>"##);
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_center_orbits_close() {
        let x = BivariatePoly::x();
        let y = BivariatePoly::y();
        let opts = PortraitOptions { radii: vec![0.5, 1.0], count: 4, t_max: 100.0, revolutions: 1.0 };
        let portrait = compute(&y, &-&x, &opts, Execution::Sequential).unwrap();
        assert_eq!(portrait.orbits.len(), 8);
        for o in &portrait.orbits {
            let (a, b) = (o.points.first().unwrap(), o.points.last().unwrap());
            assert!((a.x - b.x).abs() < 1e-6 && (a.y - b.y).abs() < 1e-6);
        }
        let svg = portrait.to_svg(1.2);
        assert_eq!(svg.matches("<polyline").count(), 8);
    }
}
