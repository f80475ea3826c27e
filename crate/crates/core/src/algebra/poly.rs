use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

use super::rational::{denom_lcm_numer_gcd, to_f64, Rational};

/// Exponent pair `(u, v)` of the monomial `x^u y^v`.
pub type Exponent = (u32, u32);

/// Graded-lex comparison with `x > y`: higher total degree first, then higher `x` power.
pub fn grlex_cmp(a: &Exponent, b: &Exponent) -> Ordering {
    (a.0 + a.1).cmp(&(b.0 + b.1)).then(a.0.cmp(&b.0))
}

/// Sparse bivariate polynomial with exact rational coefficients.
///
/// No zero coefficient is ever stored, so the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<Exponent, Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, u: u32, v: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((u, v), c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Adds `c * x^u y^v`, dropping the entry if it cancels.
    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(u, v)| u == 0 && v == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, u: u32, v: u32) -> Rational {
        self.terms.get(&(u, v)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = Exponent> + '_ {
        self.terms.keys().copied()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(u, v)| u + v).max()
    }

    /// Lowest total degree among stored terms.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(u, v)| u + v).min()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(u, _)| u).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, v)| v).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|&(u, v)| u + v);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Leading term under graded-lex order.
    pub fn leading_term(&self) -> Option<(Exponent, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex_cmp(a.0, b.0))
            .map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(u, v), c) in &self.terms {
            acc += c * num::pow(x.clone(), u as usize) * num::pow(y.clone(), v as usize);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(u, v), c)| to_f64(c) * x.powi(u as i32) * y.powi(v as i32))
            .sum()
    }

    pub fn derivative_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.0 > 0)
                .map(|(&(u, v), c)| ((u - 1, v), c * Rational::from_integer(BigInt::from(u)))),
        )
    }

    pub fn derivative_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.1 > 0)
                .map(|(&(u, v), c)| ((u, v - 1), c * Rational::from_integer(BigInt::from(v)))),
        )
    }

    /// Substitutes `x -> sx`, `y -> sy`.
    pub fn compose(&self, sx: &Self, sy: &Self) -> Self {
        let max_u = self.degree_x().unwrap_or(0) as usize;
        let max_v = self.degree_y().unwrap_or(0) as usize;
        let xp = powers(sx, max_u);
        let yp = powers(sy, max_v);
        let mut acc = Self::zero();
        for (&(u, v), c) in &self.terms {
            let t = (&xp[u as usize] * &yp[v as usize]).scale(c);
            acc = &acc + &t;
        }
        acc
    }

    /// `p(y, x)`.
    pub fn swap_xy(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(u, v), c)| ((v, u), c.clone())).collect(),
        }
    }

    /// `p(sx * x, sy * y)` for signs or scalars `sx`, `sy`.
    pub fn scale_vars(&self, sx: &Rational, sy: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(u, v), c)| {
            (
                (u, v),
                c * num::pow(sx.clone(), u as usize) * num::pow(sy.clone(), v as usize),
            )
        }))
    }

    /// Decomposition into homogeneous parts, ordered by increasing degree.
    pub fn homogeneous_parts(&self) -> Vec<(u32, BivariatePoly)> {
        let mut parts: BTreeMap<u32, BivariatePoly> = BTreeMap::new();
        for (&(u, v), c) in &self.terms {
            parts.entry(u + v).or_default().terms.insert((u, v), c.clone());
        }
        parts.into_iter().collect()
    }

    /// Homogeneous part of degree `d` (possibly zero).
    pub fn homogeneous_part(&self, d: u32) -> BivariatePoly {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0 + e.1 == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Rescales to integer coefficients with unit content and a positive
    /// graded-lex leading coefficient.
    pub fn primitive_normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (l, g) = denom_lcm_numer_gcd(self.terms.values());
        let mut factor = Rational::new(l, g.abs());
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Division with remainder by a single divisor under graded-lex order.
    /// The remainder is zero exactly when `d` divides `self`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (lt_e, lt_c) = d.leading_term().map(|(e, c)| (e, c.clone())).unwrap();
        let mut quotient = Self::zero();
        let mut remainder = Self::zero();
        let mut p = self.clone();
        while let Some((e, c)) = p.leading_term().map(|(e, c)| (e, c.clone())) {
            if e.0 >= lt_e.0 && e.1 >= lt_e.1 {
                let q = Self::monomial(&c / &lt_c, e.0 - lt_e.0, e.1 - lt_e.1);
                p = &p - &(&q * d);
                quotient = &quotient + &q;
            } else {
                p.terms.remove(&e);
                remainder.add_term(e, c);
            }
        }
        (quotient, remainder)
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, p: &Self) -> bool {
        p.div_exact(self).is_some()
    }

    /// Compiles into a floating-point evaluator.
    pub fn to_f64_poly(&self) -> PolyF64 {
        PolyF64 {
            terms: self
                .terms
                .iter()
                .map(|(&(u, v), c)| (to_f64(c), u, v))
                .collect(),
            max_u: self.degree_x().unwrap_or(0),
            max_v: self.degree_y().unwrap_or(0),
        }
    }
}

fn powers(p: &BivariatePoly, k: usize) -> Vec<BivariatePoly> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(BivariatePoly::one());
    for i in 0..k {
        let next = &out[i] * p;
        out.push(next);
    }
    out
}

/// Floating-point image of a [`BivariatePoly`] for the numeric layers.
#[derive(Clone, Debug)]
pub struct PolyF64 {
    terms: Vec<(f64, u32, u32)>,
    max_u: u32,
    max_v: u32,
}

impl PolyF64 {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut xp = [1.0f64; 16];
        let mut yp = [1.0f64; 16];
        if self.max_u < 16 && self.max_v < 16 {
            for i in 1..=self.max_u as usize {
                xp[i] = xp[i - 1] * x;
            }
            for i in 1..=self.max_v as usize {
                yp[i] = yp[i - 1] * y;
            }
            self.terms
                .iter()
                .map(|&(c, u, v)| c * xp[u as usize] * yp[v as usize])
                .sum()
        } else {
            self.terms
                .iter()
                .map(|&(c, u, v)| c * x.powi(u as i32) * y.powi(v as i32))
                .sum()
        }
    }
}

impl fmt::Display for BivariatePoly {
    /// Prints in the `.sys` input grammar, e.g. `3/2*x^2*y - y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|a, b| grlex_cmp(b.0, a.0));
        for (i, (&(u, v), c)) in entries.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (u == 0 && v == 0) {
                factors.push(mag.to_string());
            }
            match u {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{u}")),
            }
            match v {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{v}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariatePoly({self})")
    }
}

impl<'a> Add<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(u1, v1), a) in &self.terms {
            for (&(u2, v2), b) in &rhs.terms {
                out.add_term((u1 + u2, v1 + v2), a * b);
            }
        }
        out
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BivariatePoly> for BivariatePoly {
            type Output = BivariatePoly;
            fn $m(self, rhs: BivariatePoly) -> BivariatePoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a BivariatePoly> for BivariatePoly {
            type Output = BivariatePoly;
            fn $m(self, rhs: &BivariatePoly) -> BivariatePoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        -&self
    }
}

/// `P * dH/dx + Q * dH/dy`.
pub fn lie_derivative(h: &BivariatePoly, p: &BivariatePoly, q: &BivariatePoly) -> BivariatePoly {
    &(p * &h.derivative_x()) + &(q * &h.derivative_y())
}

/// True when `h` is nonconstant and its Lie derivative along `(p, q)` vanishes.
pub fn is_first_integral(h: &BivariatePoly, p: &BivariatePoly, q: &BivariatePoly) -> bool {
    !h.is_constant() && lie_derivative(h, p, q).is_zero()
}
