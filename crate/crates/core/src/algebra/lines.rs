//! Real linear factors of binary forms and invariant straight lines through
//! the origin.

use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::Serialize;

use super::poly::BivariatePoly;
use super::rational::Rational;
use super::upoly::{RealRoot, UniPoly};
use crate::error::{domain, Result};

/// The line `a*x + b*y = 0` with `(a, b)` primitive and sign-normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LineThroughOrigin {
    pub a: BigInt,
    pub b: BigInt,
}

impl LineThroughOrigin {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return domain("line direction (0, 0)");
        }
        let g = a.gcd(&b);
        let (mut a, mut b) = (a / &g, b / &g);
        let first_negative = if a.is_zero() { b.is_negative() } else { a.is_negative() };
        if first_negative {
            a = -a;
            b = -b;
        }
        Ok(Self { a, b })
    }

    /// The line `y = k x`.
    pub fn from_slope(k: &Rational) -> Self {
        Self::new(k.numer().clone(), -k.denom().clone()).expect("denominator is nonzero")
    }

    pub fn x_axis() -> Self {
        Self::new(BigInt::zero(), BigInt::one()).unwrap()
    }

    pub fn y_axis() -> Self {
        Self::new(BigInt::one(), BigInt::zero()).unwrap()
    }

    pub fn as_poly(&self) -> BivariatePoly {
        &BivariatePoly::monomial(Rational::from_integer(self.a.clone()), 1, 0)
            + &BivariatePoly::monomial(Rational::from_integer(self.b.clone()), 0, 1)
    }

    /// Direct check: the line is invariant iff `(a x + b y) | (a P + b Q)`.
    pub fn is_invariant_for(&self, p: &BivariatePoly, q: &BivariatePoly) -> bool {
        let a = Rational::from_integer(self.a.clone());
        let b = Rational::from_integer(self.b.clone());
        let combo = &p.scale(&a) + &q.scale(&b);
        self.as_poly().divides(&combo)
    }
}

impl fmt::Display for LineThroughOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.as_poly())
    }
}

/// One invariant line of a vector field through the origin.
#[derive(Clone, Debug, PartialEq)]
pub enum InvariantLine {
    Exact(LineThroughOrigin),
    /// `y = k x` with `k` irrational, isolated in `(lo, hi)`.
    IrrationalSlope { lo: Rational, hi: Rational },
}

impl fmt::Display for InvariantLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantLine::Exact(l) => write!(f, "{l}"),
            InvariantLine::IrrationalSlope { lo, hi } => {
                write!(f, "y = k*x, k irrational in ({lo}, {hi})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum InvariantLines {
    Finite(Vec<InvariantLine>),
    /// `x Q - y P` vanishes along every line: all lines through the origin are invariant.
    Pencil,
}

impl InvariantLines {
    pub fn is_empty(&self) -> bool {
        matches!(self, InvariantLines::Finite(v) if v.is_empty())
    }

    pub fn lines(&self) -> &[InvariantLine] {
        match self {
            InvariantLines::Finite(v) => v,
            InvariantLines::Pencil => &[],
        }
    }
}

/// `h(1, t)` for a binary form `h`.
fn dehomogenize(h: &BivariatePoly) -> UniPoly {
    let d = h.degree_y().unwrap_or(0) as usize;
    let mut cs = vec![Rational::zero(); d + 1];
    for (&(_, v), c) in h.terms() {
        cs[v as usize] = c.clone();
    }
    UniPoly::new(cs)
}

fn require_homogeneous(h: &BivariatePoly) -> Result<u32> {
    if h.is_zero() {
        return domain("zero polynomial has no well-defined linear factors");
    }
    if !h.is_homogeneous() {
        return domain(format!("{h} is not homogeneous"));
    }
    Ok(h.degree().unwrap())
}

/// Multiplicity of `x` as a factor of the binary form `h`.
fn x_multiplicity(h: &BivariatePoly, m: u32) -> u32 {
    m - dehomogenize(h).degree().unwrap_or(0) as u32
}

/// True iff the binary form `h` has a real factor of degree one.
pub fn real_linear_factor_exists(h: &BivariatePoly) -> Result<bool> {
    let m = require_homogeneous(h)?;
    if x_multiplicity(h, m) > 0 {
        return Ok(true);
    }
    Ok(dehomogenize(h).count_real_roots() > 0)
}

/// Real linear factors of a binary form with their multiplicities.
pub fn real_linear_factors(h: &BivariatePoly) -> Result<Vec<(InvariantLine, u32)>> {
    let m = require_homogeneous(h)?;
    let mut out = Vec::new();
    let kx = x_multiplicity(h, m);
    if kx > 0 {
        out.push((InvariantLine::Exact(LineThroughOrigin::y_axis()), kx));
    }
    // h(1, t) = 0 at t = k means (k x - y) | h.
    for (i, f) in dehomogenize(h).square_free_decomposition().into_iter().enumerate() {
        for root in f.real_roots() {
            let line = match root {
                RealRoot::Rational(k) => InvariantLine::Exact(LineThroughOrigin::from_slope(&k)),
                RealRoot::Interval { lo, hi } => InvariantLine::IrrationalSlope { lo, hi },
            };
            out.push((line, i as u32 + 1));
        }
    }
    Ok(out)
}

/// Sign behaviour of the binary form `x Q_n - y P_n` on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AngularSign {
    /// No real linear factor: the form keeps one strict sign.
    Definite,
    /// A real linear factor of odd multiplicity: the form changes sign.
    ChangesSign,
    /// Only even-multiplicity real factors: the form vanishes without changing sign.
    SemiDefinite,
    IdenticallyZero,
}

/// Classifies a binary form by exact parity of its real linear factors.
pub fn form_sign(h: &BivariatePoly) -> Result<AngularSign> {
    if h.is_zero() {
        return Ok(AngularSign::IdenticallyZero);
    }
    let factors = real_linear_factors(h)?;
    if factors.is_empty() {
        Ok(AngularSign::Definite)
    } else if factors.iter().any(|(_, k)| k % 2 == 1) {
        Ok(AngularSign::ChangesSign)
    } else {
        Ok(AngularSign::SemiDefinite)
    }
}

/// Every real line through the origin invariant under `x' = P, y' = Q`.
pub fn invariant_lines_through_origin(
    p: &BivariatePoly,
    q: &BivariatePoly,
) -> Result<InvariantLines> {
    if p.is_zero() && q.is_zero() {
        return domain("zero vector field");
    }
    // Q(x, k x) - k P(x, k x) = sum_j c_j(k) x^j
    let max_deg = p.degree().unwrap_or(0).max(q.degree().unwrap_or(0)) as usize;
    let mut coeffs: Vec<Vec<Rational>> = vec![vec![Rational::zero(); max_deg + 2]; max_deg + 1];
    for (&(u, v), c) in q.terms() {
        coeffs[(u + v) as usize][v as usize] += c;
    }
    for (&(u, v), c) in p.terms() {
        coeffs[(u + v) as usize][v as usize + 1] -= c;
    }
    let polys: Vec<UniPoly> = coeffs.into_iter().map(UniPoly::new).collect();
    let common = polys.iter().fold(UniPoly::zero(), |g, c| g.gcd(c));

    let y_axis_invariant = BivariatePoly::x().divides(p);
    if common.is_zero() {
        return Ok(InvariantLines::Pencil);
    }
    let mut lines = Vec::new();
    if y_axis_invariant {
        lines.push(InvariantLine::Exact(LineThroughOrigin::y_axis()));
    }
    for root in common.real_roots() {
        lines.push(match root {
            RealRoot::Rational(k) => InvariantLine::Exact(LineThroughOrigin::from_slope(&k)),
            RealRoot::Interval { lo, hi } => InvariantLine::IrrationalSlope { lo, hi },
        });
    }
    Ok(InvariantLines::Finite(lines))
}

/// `x Q - y P`.
pub fn angular_form(p: &BivariatePoly, q: &BivariatePoly) -> BivariatePoly {
    &(&BivariatePoly::x() * q) - &(&BivariatePoly::y() * p)
}

/// `x P + y Q`.
pub fn radial_form(p: &BivariatePoly, q: &BivariatePoly) -> BivariatePoly {
    &(&BivariatePoly::x() * p) + &(&BivariatePoly::y() * q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn x() -> BivariatePoly {
        BivariatePoly::x()
    }
    fn y() -> BivariatePoly {
        BivariatePoly::y()
    }
    fn c(n: i64) -> BivariatePoly {
        BivariatePoly::constant(int(n))
    }

    #[test]
    fn real_factor_examples() {
        let h = &x().pow(2) + &y().pow(2);
        assert!(!real_linear_factor_exists(&h).unwrap());

        // x^4 + 6 mu x^2 y^2 + y^4, mu = 0
        let h = &x().pow(4) + &y().pow(4);
        assert!(!real_linear_factor_exists(&h).unwrap());

        // (x - y)(x + y)(x^2 + y^2)
        let h = &(&(&x() - &y()) * &(&x() + &y())) * &(&x().pow(2) + &y().pow(2));
        assert!(real_linear_factor_exists(&h).unwrap());

        assert!(real_linear_factor_exists(&(&x() * &y())).unwrap());
        assert!(real_linear_factor_exists(&(&x() + &c(1))).is_err());
    }

    #[test]
    fn invariant_line_examples() {
        // x' = a10 x, y' = b_p0 x^p + b01 y
        let p = x().scale(&rat(3, 2));
        let q = &x().pow(3).scale(&int(2)) + &y().scale(&int(-1));
        let lines = invariant_lines_through_origin(&p, &q).unwrap();
        assert!(lines.lines().contains(&InvariantLine::Exact(LineThroughOrigin::y_axis())));

        let lines = invariant_lines_through_origin(&y(), &(-&x())).unwrap();
        assert!(lines.is_empty());

        let lines = invariant_lines_through_origin(&x(), &y()).unwrap();
        assert_eq!(lines, InvariantLines::Pencil);
    }

    #[test]
    fn irrational_slopes_are_flagged() {
        // y' - 2 x' vanishes on y = +-sqrt(2) x for x' = y, y' = 2x
        let lines = invariant_lines_through_origin(&y(), &x().scale(&int(2))).unwrap();
        let ls = lines.lines();
        assert_eq!(ls.len(), 2);
        assert!(ls.iter().all(|l| matches!(l, InvariantLine::IrrationalSlope { .. })));
    }

    #[test]
    fn line_normalization() {
        let l = LineThroughOrigin::from_slope(&rat(-2, 3));
        assert_eq!((l.a.clone(), l.b.clone()), (BigInt::from(2), BigInt::from(3)));
        assert_eq!(LineThroughOrigin::from_slope(&int(0)), LineThroughOrigin::x_axis());
    }

    #[test]
    fn sign_classes() {
        assert_eq!(form_sign(&(&x().pow(2) + &y().pow(2))).unwrap(), AngularSign::Definite);
        assert_eq!(form_sign(&y().pow(3)).unwrap(), AngularSign::ChangesSign);
        assert_eq!(
            form_sign(&(&y().pow(2) * &(&x().pow(2) + &y().pow(2)))).unwrap(),
            AngularSign::SemiDefinite
        );
        assert_eq!(form_sign(&BivariatePoly::zero()).unwrap(), AngularSign::IdenticallyZero);
    }
}
