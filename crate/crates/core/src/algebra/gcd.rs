//! Bivariate GCD over the rationals via primitive pseudo-remainder sequences
//! in `Q[x][y]`.

use num::Zero;

use super::poly::BivariatePoly;
use super::rational::Rational;
use super::upoly::UniPoly;
use crate::error::{domain, Result};

/// Coefficients of `p` as a polynomial in `y` over `Q[x]`.
fn y_coeffs(p: &BivariatePoly) -> Vec<UniPoly> {
    let dy = p.degree_y().unwrap_or(0) as usize;
    let dx = p.degree_x().unwrap_or(0) as usize;
    let mut rows = vec![vec![Rational::zero(); dx + 1]; dy + 1];
    for (&(u, v), c) in p.terms() {
        rows[v as usize][u as usize] = c.clone();
    }
    rows.into_iter().map(UniPoly::new).collect()
}

fn from_y_coeffs(cs: &[UniPoly]) -> BivariatePoly {
    BivariatePoly::from_terms(cs.iter().enumerate().flat_map(|(v, c)| {
        c.coeffs()
            .iter()
            .enumerate()
            .map(move |(u, a)| ((u as u32, v as u32), a.clone()))
    }))
}

fn trim(cs: &mut Vec<UniPoly>) {
    while cs.last().is_some_and(UniPoly::is_zero) {
        cs.pop();
    }
}

fn content(cs: &[UniPoly]) -> UniPoly {
    cs.iter().fold(UniPoly::zero(), |g, c| g.gcd(c))
}

fn primitive_part(cs: &[UniPoly]) -> Vec<UniPoly> {
    let c = content(cs);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<UniPoly> = cs.iter().map(|a| a.div_rem(&c).0).collect();
    trim(&mut out);
    out
}

/// Sparse pseudo-remainder of `a` by `b` in `R[y]`, `R = Q[x]`.
fn pseudo_rem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let db = b.len() - 1;
    let lcb = b[db].clone();
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<UniPoly> = r.iter().map(|c| c * &lcb).collect();
        for (j, bj) in b.iter().enumerate() {
            next[j + shift] = &next[j + shift] - &(&lcr * bj);
        }
        trim(&mut next);
        r = next;
    }
    r
}

/// Greatest common divisor of `p` and `q`, normalized to integer coefficients
/// with unit content and a positive graded-lex leading coefficient.
pub fn gcd_bivariate(p: &BivariatePoly, q: &BivariatePoly) -> Result<BivariatePoly> {
    if p.is_zero() && q.is_zero() {
        return domain("gcd of two zero polynomials is undefined");
    }
    if p.is_zero() {
        return Ok(q.primitive_normalized());
    }
    if q.is_zero() {
        return Ok(p.primitive_normalized());
    }
    let pc = y_coeffs(p);
    let qc = y_coeffs(q);
    let cont = content(&pc).gcd(&content(&qc));

    let (mut a, mut b) = (primitive_part(&pc), primitive_part(&qc));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            // b is a nonzero element of Q[x] after taking primitive parts: a unit in y.
            a = vec![UniPoly::one()];
            break;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive_part(&r);
    }
    let g = from_y_coeffs(&a);
    let c = from_y_coeffs(&[cont]);
    Ok((&g * &c).primitive_normalized())
}

pub fn is_coprime(p: &BivariatePoly, q: &BivariatePoly) -> Result<bool> {
    Ok(gcd_bivariate(p, q)?.degree() == Some(0))
}

/// Returns the shared factor when `p` and `q` are not coprime.
pub fn common_factor(p: &BivariatePoly, q: &BivariatePoly) -> Result<Option<BivariatePoly>> {
    let g = gcd_bivariate(p, q)?;
    Ok((g.degree() != Some(0)).then_some(g))
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
    fn spec_examples() {
        let g = gcd_bivariate(&(&x().pow(2) - &y().pow(2)), &(&x() - &y())).unwrap();
        assert_eq!(g, &x() - &y());

        let g = gcd_bivariate(&(&x() * &(&x() + &y())), &(&x() * &(&x() - &y()))).unwrap();
        assert_eq!(g, x());

        // y + x^2 divides x^3 + x y
        let g = gcd_bivariate(&(&y() + &x().pow(2)), &(&x().pow(3) + &(&x() * &y()))).unwrap();
        assert_eq!(g, &y() + &x().pow(2));
        // a20 = 0 and generic b's: coprime
        let g = gcd_bivariate(&y(), &(&x().pow(3).scale(&int(2)) + &(&x() * &y()))).unwrap();
        assert_eq!(g, c(1));
        let g = gcd_bivariate(&(&y() + &x().pow(2)), &(&x().pow(3).scale(&int(2)) + &(&x() * &y()))).unwrap();
        assert_eq!(g, c(1));
    }

    #[test]
    fn both_zero_is_domain_error() {
        assert!(gcd_bivariate(&BivariatePoly::zero(), &BivariatePoly::zero()).is_err());
    }

    #[test]
    fn pure_x_content_is_found() {
        // (x^2 + 1) (y + x) and (x^2 + 1) (y - 2)
        let k = &x().pow(2) + &c(1);
        let g = gcd_bivariate(&(&k * &(&y() + &x())), &(&k * &(&y() - &c(2)))).unwrap();
        assert_eq!(g, k);
    }

    #[test]
    fn rational_scaling_is_normalized_away() {
        let f = &x().scale(&rat(2, 3)) - &y().scale(&rat(4, 5));
        let p = &f * &(&x() + &c(1));
        let q = &f * &y().pow(2);
        let g = gcd_bivariate(&p, &q).unwrap();
        assert_eq!(g, &(&c(5) * &x()) - &(&c(6) * &y()));
    }
}
