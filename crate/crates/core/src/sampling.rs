//! Seeded random instances of the catalog families and canonical forms.

use std::collections::BTreeMap;

use num::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{int, is_coprime, rat, transform_system, BivariatePoly, LinearMap, Rational};
use crate::catalog::{CubicForm, Family, FamilyKind, FamilyTag};
use crate::classifier::{analyze, canonical_form_check, decision_table, ClassifyOptions, CoarseClass, Verdict};
use crate::error::Result;

/// One random system together with the tag that generated it.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    /// The family that was asked for.
    pub family: FamilyKind,
    /// Catalog tag or, for raw cubics, the canonical form before the transform.
    pub source: FamilyTag,
    pub p: BivariatePoly,
    pub q: BivariatePoly,
}

impl Sample {
    /// Coarse class predicted by the condition-only table for `source`.
    pub fn expected(&self) -> Option<CoarseClass> {
        decision_table(&self.source)
    }

    /// The full decision procedure: canonical tags go through the form check,
    /// everything else through signature detection on `(p, q)`.
    pub fn classify(&self, opts: &ClassifyOptions) -> Result<Verdict> {
        match self.family {
            FamilyKind::Canonical(_) => canonical_form_check(&self.source),
            FamilyKind::Catalog(_) => Ok(analyze(&self.p, &self.q, opts)?.verdict),
        }
    }
}

const MAX_TRIES: usize = 10_000;

/// Small rational with numerator in `-6..=6`, denominator in `1..=4`; zero
/// with probability `zero_prob`.
pub fn small_rational(rng: &mut impl Rng, zero_prob: f64) -> Rational {
    if rng.gen_bool(zero_prob) {
        return Rational::zero();
    }
    loop {
        let num: i64 = rng.gen_range(-6..=6);
        if num != 0 {
            return rat(num, rng.gen_range(1..=4));
        }
    }
}

/// Invertible map with small integer entries.
pub fn random_transform(rng: &mut impl Rng) -> LinearMap {
    loop {
        let mut e = || int(rng.gen_range(-3..=3));
        let m = LinearMap::new(e(), e(), e(), e());
        if !m.det().is_zero() {
            return m;
        }
    }
}

fn params(pairs: Vec<(&str, Rational)>) -> BTreeMap<String, Rational> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Admissible random parameters of a canonical form; `center` imposes
/// `p3 = -p1` on the two forms that can have one.
pub fn canonical_params(form: CubicForm, rng: &mut impl Rng, center: bool) -> BTreeMap<String, Rational> {
    let p1 = small_rational(rng, 0.1);
    let p2 = small_rational(rng, 0.1);
    let p3 = if center && matches!(form, CubicForm::Nf6 | CubicForm::Nf7) { -&p1 } else { small_rational(rng, 0.1) };
    let alpha = if rng.gen_bool(0.5) { Rational::one() } else { -Rational::one() };
    let mut out = vec![("p1", p1), ("p2", p2), ("p3", p3)];
    match form {
        CubicForm::Nf1 => out.push(("mu", small_rational(rng, 0.0))),
        CubicForm::Nf3 | CubicForm::Nf8 => {}
        CubicForm::Nf6 => {
            // mu = k/6 with k in -1..=12, skipping mu = 1/3
            let k = loop {
                let k: i64 = rng.gen_range(-1..=12);
                if k != 2 {
                    break k;
                }
            };
            out.push(("alpha", alpha));
            out.push(("mu", rat(k, 6)));
        }
        _ => out.push(("alpha", alpha)),
    }
    params(out)
}

fn catalog_tag(family: Family, rng: &mut impl Rng) -> FamilyTag {
    let power = (family == Family::S1pD1).then(|| rng.gen_range(2..=5));
    let coefficients = family
        .slots(power)
        .into_iter()
        .map(|s| (s.name, small_rational(rng, 0.1)))
        .collect();
    FamilyTag::catalog(family, coefficients, power)
}

/// Pins the exact center equalities of a family before rejection sampling.
fn impose_center_equalities(tag: &mut FamilyTag) {
    let FamilyKind::Catalog(family) = tag.family else { return };
    match family {
        Family::S11D1 => {
            let b01 = -tag.get("a10");
            tag.coefficients.insert("b01".into(), b01);
        }
        Family::S13D3 => {
            let b21 = -tag.get("a30") * int(3);
            tag.coefficients.insert("b21".into(), b21);
        }
        _ => {}
    }
}

fn can_be_center(family: Family) -> bool {
    matches!(family, Family::S11D1 | Family::S12D2 | Family::S13D3 | Family::S14D4)
}

fn coprime(p: &BivariatePoly, q: &BivariatePoly) -> bool {
    !p.is_zero() && !q.is_zero() && is_coprime(p, q).unwrap_or(false)
}

/// The forms a raw cubic is drawn from. `cubic-nf8` is left out because
/// its components always share a factor.
pub const RAW_CUBIC_SOURCES: [CubicForm; 7] = [
    CubicForm::Nf1,
    CubicForm::Nf2,
    CubicForm::Nf3,
    CubicForm::Nf4,
    CubicForm::Nf5,
    CubicForm::Nf6,
    CubicForm::Nf7,
];

/// One coprime instance. With probability 1/2 the center conditions of the
/// family are imposed when the family admits centers.
pub fn sample_one(kind: FamilyKind, rng: &mut impl Rng) -> Result<Sample> {
    let want_center = rng.gen_bool(0.5);
    match kind {
        FamilyKind::Canonical(form) => {
            for _ in 0..MAX_TRIES {
                let source = FamilyTag::canonical(form, canonical_params(form, rng, want_center));
                let (p, q) = source.reconstruct()?;
                if form == CubicForm::Nf8 || coprime(&p, &q) {
                    return Ok(Sample { family: kind, source, p, q });
                }
            }
        }
        FamilyKind::Catalog(Family::S11D3) => {
            for _ in 0..MAX_TRIES {
                let form = RAW_CUBIC_SOURCES[rng.gen_range(0..RAW_CUBIC_SOURCES.len())];
                let source = FamilyTag::canonical(form, canonical_params(form, rng, want_center));
                let (p0, q0) = source.reconstruct()?;
                let (p, q) = transform_system(&p0, &q0, &random_transform(rng))?;
                if coprime(&p, &q) {
                    return Ok(Sample { family: kind, source, p, q });
                }
            }
        }
        FamilyKind::Catalog(family) => {
            let center = want_center && can_be_center(family);
            for _ in 0..MAX_TRIES {
                let mut source = catalog_tag(family, rng);
                if center {
                    impose_center_equalities(&mut source);
                    if decision_table(&source) != Some(CoarseClass::Center) {
                        continue;
                    }
                }
                let (p, q) = source.reconstruct()?;
                if coprime(&p, &q) {
                    return Ok(Sample { family: kind, source, p, q });
                }
            }
        }
    }
    Err(crate::error::Error::Domain(format!("no coprime sample of {kind} in {MAX_TRIES} draws")))
}

/// Stream index of a family, so each family draws from its own sequence.
fn stream(kind: FamilyKind) -> u64 {
    match kind {
        FamilyKind::Catalog(f) => crate::catalog::ALL_FAMILIES.iter().position(|g| *g == f).unwrap() as u64,
        FamilyKind::Canonical(c) => 100 + crate::catalog::ALL_CUBIC_FORMS.iter().position(|g| *g == c).unwrap() as u64,
    }
}

pub fn family_rng(kind: FamilyKind, seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream(kind));
    rng
}

/// `count` deterministic samples of one family.
pub fn sample_family(kind: FamilyKind, count: usize, seed: u64) -> Result<Vec<Sample>> {
    let mut rng = family_rng(kind, seed);
    (0..count).map(|_| sample_one(kind, &mut rng)).collect()
}

/// Every catalog family followed by every canonical form.
pub fn all_kinds() -> Vec<FamilyKind> {
    crate::catalog::ALL_FAMILIES
        .iter()
        .map(|f| FamilyKind::Catalog(*f))
        .chain(crate::catalog::ALL_CUBIC_FORMS.iter().map(|c| FamilyKind::Canonical(*c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let kind = FamilyKind::Catalog(Family::S13D3);
        assert_eq!(sample_family(kind, 5, 7).unwrap(), sample_family(kind, 5, 7).unwrap());
        assert_ne!(sample_family(kind, 5, 7).unwrap(), sample_family(kind, 5, 8).unwrap());
    }

    #[test]
    fn centers_are_drawn() {
        for f in [Family::S11D1, Family::S12D2, Family::S13D3, Family::S14D4] {
            let samples = sample_family(FamilyKind::Catalog(f), 40, 1).unwrap();
            let centers = samples.iter().filter(|s| s.expected() == Some(CoarseClass::Center)).count();
            assert!(centers >= 5, "{f}: {centers}");
        }
    }

    #[test]
    fn raw_cubics_are_homogeneous_and_coprime() {
        for s in sample_family(FamilyKind::Catalog(Family::S11D3), 20, 3).unwrap() {
            assert!(s.p.is_homogeneous() && s.q.is_homogeneous());
            assert_eq!(s.p.degree(), Some(3));
            assert!(is_coprime(&s.p, &s.q).unwrap());
        }
    }
}
