//! Dense univariate polynomials over the rationals, with Sturm-sequence real
//! root counting and isolation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

use super::rational::{denom_lcm_numer_gcd, simplest_in, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    /// `coeffs[i]` multiplies `t^i`; no trailing zeros.
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + super::rational::to_f64(c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Integer coefficients with unit content and positive leading coefficient.
    pub fn primitive_integer(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (l, g) = denom_lcm_numer_gcd(self.coeffs.iter());
        let mut f = Rational::new(l, g.abs());
        if self.lc().unwrap().is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lc().unwrap().clone();
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.primitive_integer();
        }
        a.monic()
    }

    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Yun's algorithm: monic square-free factors `f_i` with `self = c * prod f_i^i`.
    /// Entry `k` of the result holds the factor of multiplicity `k + 1`.
    pub fn square_free_decomposition(&self) -> Vec<UniPoly> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        loop {
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
        }
        while out.last().is_some_and(|p| p.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    /// Sturm sequence of the square-free part.
    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let p0 = self.square_free_part();
        let mut seq = vec![p0.clone()];
        if p0.degree().unwrap_or(0) == 0 {
            return seq;
        }
        let mut a = p0;
        let mut b = a.derivative();
        while !b.is_zero() {
            seq.push(b.clone());
            let r = -&a.rem(&b);
            a = b;
            // Positive rescaling keeps the sign pattern and bounds coefficient growth.
            b = match r.lc() {
                None => r,
                Some(lc) => r.scale(&lc.abs().recip()),
            };
        }
        seq
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        let seq = self.sturm_sequence();
        let at_neg = sign_variations(seq.iter().map(|p| sign_at_neg_inf(p)));
        let at_pos = sign_variations(seq.iter().map(|p| sign_at_pos_inf(p)));
        at_neg - at_pos
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots_in(&self, lo: &Rational, hi: &Rational) -> usize {
        let seq = self.sturm_sequence();
        count_with(&seq, lo, hi)
    }

    /// Isolates every distinct real root. Rational roots are reported exactly.
    pub fn real_roots(&self) -> Vec<RealRoot> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sqf = self.square_free_part().primitive_integer();
        let seq = sqf.sturm_sequence();
        let bound = cauchy_bound(&sqf);
        let mut intervals = Vec::new();
        isolate(&seq, -bound.clone(), bound, &mut intervals);
        let lc = sqf.lc().unwrap().abs();
        intervals
            .into_iter()
            .map(|(lo, hi)| classify_root(&sqf, &seq, lo, hi, &lc))
            .collect()
    }
}

/// One isolated real root.
#[derive(Clone, Debug, PartialEq)]
pub enum RealRoot {
    Rational(Rational),
    /// Irrational root strictly inside `(lo, hi)`.
    Interval { lo: Rational, hi: Rational },
}

impl RealRoot {
    pub fn approx(&self) -> f64 {
        use super::rational::to_f64;
        match self {
            RealRoot::Rational(q) => to_f64(q),
            RealRoot::Interval { lo, hi } => 0.5 * (to_f64(lo) + to_f64(hi)),
        }
    }
}

fn sign(q: &Rational) -> i32 {
    super::rational::sign(q)
}

fn sign_at_pos_inf(p: &UniPoly) -> i32 {
    p.lc().map(sign).unwrap_or(0)
}

fn sign_at_neg_inf(p: &UniPoly) -> i32 {
    let s = sign_at_pos_inf(p);
    if p.degree().unwrap_or(0) % 2 == 1 {
        -s
    } else {
        s
    }
}

fn sign_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn variations_at(seq: &[UniPoly], t: &Rational) -> usize {
    sign_variations(seq.iter().map(|p| sign(&p.eval(t))))
}

fn count_with(seq: &[UniPoly], lo: &Rational, hi: &Rational) -> usize {
    variations_at(seq, lo).saturating_sub(variations_at(seq, hi))
}

fn cauchy_bound(p: &UniPoly) -> Rational {
    let lc = p.lc().unwrap().abs();
    let m = p.coeffs[..p.coeffs.len() - 1]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::one()
}

fn isolate(seq: &[UniPoly], lo: Rational, hi: Rational, out: &mut Vec<(Rational, Rational)>) {
    match count_with(seq, &lo, &hi) {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
            isolate(seq, lo, mid.clone(), out);
            isolate(seq, mid, hi, out);
        }
    }
}

/// Refines `(lo, hi]` holding one simple root of the integer polynomial `p`
/// and decides whether that root is rational.
fn classify_root(
    p: &UniPoly,
    seq: &[UniPoly],
    mut lo: Rational,
    mut hi: Rational,
    lc: &Rational,
) -> RealRoot {
    if p.eval(&hi).is_zero() {
        return RealRoot::Rational(hi);
    }
    // Distinct fractions with denominators <= lc are at least 1/lc^2 apart.
    let width_target = (lc * lc * Rational::from_integer(BigInt::from(2))).recip();
    let display_target = Rational::new(BigInt::one(), BigInt::from(1u64 << 40));
    let target = if width_target < display_target { width_target } else { display_target };
    let two = Rational::from_integer(BigInt::from(2));
    while &hi - &lo > target {
        let mid = (&lo + &hi) / &two;
        if p.eval(&mid).is_zero() && count_with(seq, &lo, &mid) == 1 {
            return RealRoot::Rational(mid);
        }
        if count_with(seq, &lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let cand = simplest_in(&lo, &hi);
    if cand.denom() <= lc.numer() && p.eval(&cand).is_zero() {
        RealRoot::Rational(cand)
    } else {
        RealRoot::Interval { lo, hi }
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})t^{i}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}
