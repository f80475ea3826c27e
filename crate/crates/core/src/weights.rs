//! Weight signatures of quasi-homogeneous systems and catalog matching.

use std::collections::BTreeMap;
use std::fmt;

use num::Integer;
use serde::Serialize;

use crate::algebra::{is_coprime, BivariatePoly, Rational};
use crate::catalog::{Component, Family, FamilyTag};
use crate::error::{Error, Result};

/// `(s1, s2, d)` with `gcd(s1, s2) = 1`: `P(l^s1 x, l^s2 y) = l^(s1-1+d) P` and
/// `Q(l^s1 x, l^s2 y) = l^(s2-1+d) Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightSignature {
    pub s1: u32,
    pub s2: u32,
    pub d: u32,
}

impl WeightSignature {
    pub fn new(s1: u32, s2: u32, d: u32) -> Self {
        Self { s1, s2, d }
    }

    /// The weight degree each monomial of `p` and `q` pins down, if they all agree.
    pub fn degree_for(s1: u32, s2: u32, p: &BivariatePoly, q: &BivariatePoly) -> Option<u32> {
        let (s1, s2) = (s1 as i64, s2 as i64);
        let from_p = p.support().map(|(u, v)| s1 * u as i64 + s2 * v as i64 - s1 + 1);
        let from_q = q.support().map(|(u, v)| s1 * u as i64 + s2 * v as i64 - s2 + 1);
        let mut all = from_p.chain(from_q);
        let d = all.next()?;
        if d < 1 || all.any(|e| e != d) {
            return None;
        }
        Some(d as u32)
    }

    /// Exact check of the defining exponent relations.
    pub fn holds_for(&self, p: &BivariatePoly, q: &BivariatePoly) -> bool {
        let (s1, s2, d) = (self.s1, self.s2, self.d);
        p.support().all(|(u, v)| s1 * u + s2 * v == s1 - 1 + d)
            && q.support().all(|(u, v)| s1 * u + s2 * v == s2 - 1 + d)
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.s2, self.s1, self.d)
    }

    fn sort_key(&self) -> (u32, u32, u32) {
        (self.d, self.s1, self.s2)
    }
}

impl fmt::Display for WeightSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s=({},{}), d={}", self.s1, self.s2, self.d)
    }
}

/// Every primitive signature with `s1, s2 <= max degree + 1`, smallest
/// `(d, s1, s2)` first. Requires `p`, `q` coprime.
pub fn detect_weight_signatures(p: &BivariatePoly, q: &BivariatePoly) -> Result<Vec<WeightSignature>> {
    if !is_coprime(p, q)? {
        let g = crate::algebra::gcd_bivariate(p, q)?;
        return Err(Error::NotCoprime(g.to_string()));
    }
    Ok(signatures_unchecked(p, q))
}

/// Signature enumeration without the coprimality precondition.
pub fn signatures_unchecked(p: &BivariatePoly, q: &BivariatePoly) -> Vec<WeightSignature> {
    let bound = p.degree().unwrap_or(0).max(q.degree().unwrap_or(0)) + 1;
    let mut out = Vec::new();
    for s1 in 1..=bound {
        for s2 in 1..=bound {
            if s1.gcd(&s2) != 1 {
                continue;
            }
            if let Some(d) = WeightSignature::degree_for(s1, s2, p, q) {
                out.push(WeightSignature::new(s1, s2, d));
            }
        }
    }
    out.sort_by_key(WeightSignature::sort_key);
    out
}

/// Result of matching a system against the catalog.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyMatch {
    Matched(FamilyTag),
    OutsideCatalog,
}

/// Matches `(p, q)` with signature `sig` to its catalog family. Signatures with
/// `s1 > s2` are matched after exchanging `x` and `y`.
pub fn classify_family(p: &BivariatePoly, q: &BivariatePoly, sig: &WeightSignature) -> FamilyMatch {
    if sig.d > 4 {
        return FamilyMatch::OutsideCatalog;
    }
    let (p, q, sig, swapped) = if sig.s1 > sig.s2 {
        (q.swap_xy(), p.swap_xy(), sig.swapped(), true)
    } else {
        (p.clone(), q.clone(), *sig, false)
    };
    let Some(family) = Family::from_signature(sig.s1, sig.s2, sig.d) else {
        return FamilyMatch::OutsideCatalog;
    };
    let power = (family == Family::S1pD1).then_some(sig.s2);
    let slots = family.slots(power);
    let fits = |poly: &BivariatePoly, comp: Component| {
        poly.support()
            .all(|e| slots.iter().any(|s| s.component == comp && s.exponent == e))
    };
    if !fits(&p, Component::P) || !fits(&q, Component::Q) {
        return FamilyMatch::OutsideCatalog;
    }
    let coefficients: BTreeMap<String, Rational> = slots
        .iter()
        .map(|s| {
            let src = match s.component {
                Component::P => &p,
                Component::Q => &q,
            };
            (s.name.clone(), src.coeff(s.exponent.0, s.exponent.1))
        })
        .collect();
    let mut tag = FamilyTag::catalog(family, coefficients, power);
    tag.swapped = swapped;
    FamilyMatch::Matched(tag)
}

/// Tries each signature in order and returns the first catalog match.
pub fn match_catalog(
    p: &BivariatePoly,
    q: &BivariatePoly,
    sigs: &[WeightSignature],
) -> Option<(WeightSignature, FamilyTag)> {
    sigs.iter().find_map(|sig| match classify_family(p, q, sig) {
        FamilyMatch::Matched(tag) => Some((*sig, tag)),
        FamilyMatch::OutsideCatalog => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::catalog::{FamilyKind, ALL_FAMILIES};

    fn m(c: Rational, u: u32, v: u32) -> BivariatePoly {
        BivariatePoly::monomial(c, u, v)
    }

    #[test]
    fn signature_examples() {
        let p = m(rat(3, 2), 0, 1);
        let q = m(int(-2), 2, 0);
        assert_eq!(detect_weight_signatures(&p, &q).unwrap(), vec![WeightSignature::new(2, 3, 2)]);

        let p = &m(int(2), 1, 0) + &m(int(-1), 0, 1);
        let q = &m(int(5), 1, 0) + &m(int(3), 0, 1);
        assert_eq!(detect_weight_signatures(&p, &q).unwrap(), vec![WeightSignature::new(1, 1, 1)]);

        let p = &m(int(2), 4, 0) + &m(int(-1), 0, 1);
        let q = &m(int(5), 7, 0) + &m(int(3), 3, 1);
        assert_eq!(detect_weight_signatures(&p, &q).unwrap(), vec![WeightSignature::new(1, 4, 4)]);
    }

    #[test]
    fn non_coprime_rejected() {
        let p = m(int(1), 2, 0);
        let q = m(int(1), 3, 0);
        assert!(matches!(detect_weight_signatures(&p, &q), Err(Error::NotCoprime(_))));
    }

    #[test]
    fn family_examples() {
        let p = &m(int(1), 2, 0) + &m(int(1), 0, 1);
        let q = &m(int(1), 3, 0) + &m(int(1), 1, 1);
        // not coprime, so matched without the detection precondition
        let sigs = signatures_unchecked(&p, &q);
        let (_, tag) = match_catalog(&p, &q, &sigs).unwrap();
        assert_eq!(tag.family, FamilyKind::Catalog(Family::S12D2));
        for k in ["a20", "a01", "b30", "b11"] {
            assert_eq!(tag.get(k), int(1));
        }

        let sigs = detect_weight_signatures(&m(int(1), 0, 1), &m(int(1), 4, 0)).unwrap();
        let (_, tag) = match_catalog(&m(int(1), 0, 1), &m(int(1), 4, 0), &sigs).unwrap();
        assert_eq!(tag.family, FamilyKind::Catalog(Family::S25D4));

        // x' = x^5, y' = y^5 has weight degree 5 for s = (1,1)
        let sigs = detect_weight_signatures(&m(int(1), 5, 0), &m(int(1), 0, 5)).unwrap();
        assert!(sigs.iter().all(|s| s.d >= 5));
        assert!(match_catalog(&m(int(1), 5, 0), &m(int(1), 0, 5), &sigs).is_none());
    }

    #[test]
    fn swapped_signature_matches_mirror_family() {
        // x' = b20 y^2 mirror of the cusp: x' = -y^2, y' = x
        let p = m(int(-1), 0, 2);
        let q = m(int(1), 1, 0);
        let sigs = detect_weight_signatures(&p, &q).unwrap();
        assert_eq!(sigs, vec![WeightSignature::new(3, 2, 2)]);
        let (_, tag) = match_catalog(&p, &q, &sigs).unwrap();
        assert_eq!(tag.family, FamilyKind::Catalog(Family::S23D2));
        assert!(tag.swapped);
        assert_eq!(tag.reconstruct_original().unwrap(), (p, q));
    }

    #[test]
    fn all_ones_round_trip() {
        for family in ALL_FAMILIES {
            let power = (family == Family::S1pD1).then_some(3);
            let coefficients = family.slots(power).into_iter().map(|s| (s.name, int(1))).collect();
            let tag = FamilyTag::catalog(family, coefficients, power);
            let (p, q) = tag.reconstruct().unwrap();
            let (s1, s2, d) = family.signature(power);
            let sig = WeightSignature::new(s1, s2, d);
            assert!(sig.holds_for(&p, &q), "{family}");
            assert_eq!(classify_family(&p, &q, &sig), FamilyMatch::Matched(tag), "{family}");
        }
    }

    #[test]
    fn homogeneous_systems_have_unit_weights() {
        let p = &m(int(1), 3, 0) + &m(int(-2), 1, 2);
        let q = &m(int(1), 0, 3) + &m(int(1), 2, 1);
        let sigs = signatures_unchecked(&p, &q);
        assert_eq!(sigs[0], WeightSignature::new(1, 1, 3));
    }
}
