//! Truncated power series over the rationals and the implicit branch
//! `y = F(x)` of `y + P2(x, y) = 0` through the origin.

use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::algebra::{BivariatePoly, Rational};
use crate::error::{domain, Result};

/// `sum_{i < order} c_i x^i + O(x^order)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order] }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    /// The monomial `x` truncated at `order`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero_to_truncation(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self { coeffs: self.coeffs.iter().take(order).cloned().collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self { coeffs: (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    fn powers(&self, k: usize) -> Vec<PowerSeries> {
        let mut out = Vec::with_capacity(k + 1);
        let mut one = Self::zero(self.order());
        if self.order() > 0 {
            one.coeffs[0] = Rational::one();
        }
        out.push(one);
        for i in 0..k {
            let next = out[i].mul(self);
            out.push(next);
        }
        out
    }
}

/// `p(x, y)` with `y` replaced by the series `f`, truncated at `f.order()`.
pub fn compose_with_branch(p: &BivariatePoly, f: &PowerSeries) -> PowerSeries {
    let order = f.order();
    let fp = f.powers(p.degree_y().unwrap_or(0) as usize);
    let mut out = PowerSeries::zero(order);
    for (&(u, v), c) in p.terms() {
        let u = u as usize;
        if u >= order {
            continue;
        }
        let base = &fp[v as usize];
        for i in 0..order - u {
            if !base.coeffs[i].is_zero() {
                out.coeffs[i + u] += c * &base.coeffs[i];
            }
        }
    }
    out
}

/// Leading behaviour of a truncated series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum LeadingTerm {
    Term { coefficient: Rational, exponent: usize },
    ZeroToTruncation { order: usize },
}

pub fn leading_term(s: &PowerSeries) -> LeadingTerm {
    match s.coeffs.iter().position(|c| !c.is_zero()) {
        Some(i) => LeadingTerm::Term { coefficient: s.coeffs[i].clone(), exponent: i },
        None => LeadingTerm::ZeroToTruncation { order: s.order() },
    }
}

/// The branch `F` with `F(0) = 0` and `F + P2(x, F) = O(x^order)`.
///
/// `p2` must have no constant or linear terms; each fixed-point pass
/// `F <- -P2(x, F)` then fixes at least one more coefficient.
pub fn implicit_branch(p2: &BivariatePoly, order: usize) -> Result<PowerSeries> {
    if order < 2 {
        return domain("implicit branch needs truncation order >= 2");
    }
    if p2.min_degree().is_some_and(|d| d < 2) {
        return domain(format!("{p2} has terms of degree < 2"));
    }
    let mut f = PowerSeries::zero(order);
    for _ in 0..order {
        let next = compose_with_branch(p2, &f).scale(&-Rational::one());
        if next == f {
            break;
        }
        f = next;
    }
    Ok(f)
}

/// Default truncation order `4 * max(deg P, deg Q) + 8`.
pub fn default_order(p: &BivariatePoly, q: &BivariatePoly) -> usize {
    let m = p.degree().unwrap_or(0).max(q.degree().unwrap_or(0)) as usize;
    4 * m + 8
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})x^{i}"))
            .collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        write!(f, "{body} + O(x^{})", self.order())
    }
}
