//! Catalog of weight-homogeneous coprime systems of weight degree 1 to 4 and
//! the canonical forms of cubic homogeneous systems.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{int, rat, BivariatePoly, Rational};
use crate::error::{Error, Result};

/// Catalog families, named by weight exponent `(s1, s2)` and weight degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// `x' = a10 x + a01 y, y' = b10 x + b01 y`.
    S11D1,
    /// `x' = a10 x, y' = b_p0 x^p + b01 y`, `p > 1`.
    S1pD1,
    S11D2,
    /// `x' = a20 x^2 + a01 y, y' = b30 x^3 + b11 x y`.
    S12D2,
    /// `x' = a01 y, y' = b20 x^2`.
    S23D2,
    S11D3,
    S12D3,
    /// `x' = a30 x^3 + a01 y, y' = b50 x^5 + b21 x^2 y`.
    S13D3,
    S11D4,
    S12D4,
    S13D4,
    /// `x' = a40 x^4 + a01 y, y' = b70 x^7 + b31 x^3 y`.
    S14D4,
    S23D4,
    /// `x' = a01 y, y' = b40 x^4`.
    S25D4,
}

/// Canonical forms of cubic homogeneous systems, in the usual order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CubicForm {
    /// Invariant lines `x = y`, `x = -y`; parameters `p1, p2, p3, mu`, `mu != 0`.
    Nf1,
    /// `x Q - y P = -6 alpha y^2 (x^2 - 2xy - y^2)`.
    Nf2,
    Nf3,
    Nf4,
    Nf5,
    /// `x Q - y P = alpha (x^4 + 6 mu x^2 y^2 + y^4)`, `mu > -1/3`, `mu != 1/3`.
    Nf6,
    /// `x Q - y P = alpha (x^2 + y^2)^2`.
    Nf7,
    Nf8,
}

pub const ALL_FAMILIES: [Family; 14] = [
    Family::S11D1,
    Family::S1pD1,
    Family::S11D2,
    Family::S12D2,
    Family::S23D2,
    Family::S11D3,
    Family::S12D3,
    Family::S13D3,
    Family::S11D4,
    Family::S12D4,
    Family::S13D4,
    Family::S14D4,
    Family::S23D4,
    Family::S25D4,
];

pub const ALL_CUBIC_FORMS: [CubicForm; 8] = [
    CubicForm::Nf1,
    CubicForm::Nf2,
    CubicForm::Nf3,
    CubicForm::Nf4,
    CubicForm::Nf5,
    CubicForm::Nf6,
    CubicForm::Nf7,
    CubicForm::Nf8,
];

/// Which component a template monomial belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    P,
    Q,
}

/// One named coefficient slot: `name * x^u y^v` in `P` or `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub name: String,
    pub component: Component,
    pub exponent: (u32, u32),
}

fn slot(component: Component, u: u32, v: u32) -> Slot {
    let prefix = match component {
        Component::P => 'a',
        Component::Q => 'b',
    };
    Slot { name: format!("{prefix}{u}{v}"), component, exponent: (u, v) }
}

/// All monomials `x^u y^v` with `s1 u + s2 v = target`.
fn weighted_monomials(s1: u32, s2: u32, target: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for v in 0..=target / s2 {
        let rest = target - s2 * v;
        if rest % s1 == 0 {
            out.push((rest / s1, v));
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

impl Family {
    pub fn id(self) -> &'static str {
        match self {
            Family::S11D1 => "s11-d1",
            Family::S1pD1 => "s1p-d1",
            Family::S11D2 => "s11-d2",
            Family::S12D2 => "s12-d2",
            Family::S23D2 => "s23-d2",
            Family::S11D3 => "s11-d3",
            Family::S12D3 => "s12-d3",
            Family::S13D3 => "s13-d3",
            Family::S11D4 => "s11-d4",
            Family::S12D4 => "s12-d4",
            Family::S13D4 => "s13-d4",
            Family::S14D4 => "s14-d4",
            Family::S23D4 => "s23-d4",
            Family::S25D4 => "s25-d4",
        }
    }

    /// `(s1, s2, d)`; for [`Family::S1pD1`] the exponent `p` supplies `s2`.
    pub fn signature(self, p: Option<u32>) -> (u32, u32, u32) {
        match self {
            Family::S11D1 => (1, 1, 1),
            Family::S1pD1 => (1, p.unwrap_or(2), 1),
            Family::S11D2 => (1, 1, 2),
            Family::S12D2 => (1, 2, 2),
            Family::S23D2 => (2, 3, 2),
            Family::S11D3 => (1, 1, 3),
            Family::S12D3 => (1, 2, 3),
            Family::S13D3 => (1, 3, 3),
            Family::S11D4 => (1, 1, 4),
            Family::S12D4 => (1, 2, 4),
            Family::S13D4 => (1, 3, 4),
            Family::S14D4 => (1, 4, 4),
            Family::S23D4 => (2, 3, 4),
            Family::S25D4 => (2, 5, 4),
        }
    }

    pub fn from_signature(s1: u32, s2: u32, d: u32) -> Option<Family> {
        if s1 == 1 && d == 1 && s2 > 1 {
            return Some(Family::S1pD1);
        }
        ALL_FAMILIES
            .iter()
            .copied()
            .filter(|f| *f != Family::S1pD1)
            .find(|f| f.signature(None) == (s1, s2, d))
    }

    /// Coefficient slots. Every monomial of the weighted support is a slot.
    pub fn slots(self, p: Option<u32>) -> Vec<Slot> {
        let (s1, s2, d) = self.signature(p);
        let mut out: Vec<Slot> = weighted_monomials(s1, s2, s1 - 1 + d)
            .into_iter()
            .map(|(u, v)| slot(Component::P, u, v))
            .collect();
        out.extend(
            weighted_monomials(s1, s2, s2 - 1 + d)
                .into_iter()
                .map(|(u, v)| slot(Component::Q, u, v)),
        );
        out
    }

    pub fn is_homogeneous(self) -> bool {
        matches!(self, Family::S11D1 | Family::S11D2 | Family::S11D3 | Family::S11D4)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_FAMILIES
            .iter()
            .copied()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::Domain(format!("unknown family '{s}'")))
    }
}

impl CubicForm {
    pub fn id(self) -> &'static str {
        match self {
            CubicForm::Nf1 => "cubic-nf1",
            CubicForm::Nf2 => "cubic-nf2",
            CubicForm::Nf3 => "cubic-nf3",
            CubicForm::Nf4 => "cubic-nf4",
            CubicForm::Nf5 => "cubic-nf5",
            CubicForm::Nf6 => "cubic-nf6",
            CubicForm::Nf7 => "cubic-nf7",
            CubicForm::Nf8 => "cubic-nf8",
        }
    }

    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            CubicForm::Nf1 => &["p1", "p2", "p3", "mu"],
            CubicForm::Nf2 | CubicForm::Nf4 | CubicForm::Nf5 | CubicForm::Nf7 => {
                &["p1", "p2", "p3", "alpha"]
            }
            CubicForm::Nf3 | CubicForm::Nf8 => &["p1", "p2", "p3"],
            CubicForm::Nf6 => &["p1", "p2", "p3", "alpha", "mu"],
        }
    }

    /// Checks the admissibility constraints of the form's parameters.
    pub fn validate(self, params: &BTreeMap<String, Rational>) -> Result<()> {
        for name in self.parameter_names() {
            if !params.contains_key(*name) {
                return Err(Error::CanonicalParameters(format!(
                    "{} requires parameter {name}",
                    self.id()
                )));
            }
        }
        if let Some(extra) = params.keys().find(|k| !self.parameter_names().contains(&k.as_str())) {
            return Err(Error::CanonicalParameters(format!(
                "{} has no parameter {extra}",
                self.id()
            )));
        }
        if let Some(alpha) = params.get("alpha") {
            if alpha.abs() != Rational::one() {
                return Err(Error::CanonicalParameters(format!(
                    "alpha = {alpha} violates alpha = +-1"
                )));
            }
        }
        let mu = params.get("mu");
        match self {
            CubicForm::Nf1 if mu.is_some_and(Zero::is_zero) => {
                Err(Error::CanonicalParameters("mu = 0 violates mu != 0".into()))
            }
            CubicForm::Nf6 => {
                let mu = mu.unwrap();
                if *mu <= rat(-1, 3) {
                    Err(Error::CanonicalParameters(format!("mu = {mu} violates mu > -1/3")))
                } else if *mu == rat(1, 3) {
                    Err(Error::CanonicalParameters("mu = 1/3 violates mu != 1/3".into()))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// The system `(P, Q)` for the given parameters.
    pub fn system(self, params: &BTreeMap<String, Rational>) -> Result<(BivariatePoly, BivariatePoly)> {
        self.validate(params)?;
        let g = |k: &str| params.get(k).cloned().unwrap_or_else(Rational::zero);
        let (p1, p2, p3) = (g("p1"), g("p2"), g("p3"));
        let (alpha, mu) = (g("alpha"), g("mu"));
        let cubic = |c: [Rational; 4]| {
            BivariatePoly::from_terms(
                c.into_iter().enumerate().map(|(i, a)| ((3 - i as u32, i as u32), a)),
            )
        };
        let three = int(3);
        let six = int(6);
        Ok(match self {
            CubicForm::Nf1 => (
                cubic([p1.clone(), p2.clone(), p3.clone(), mu.clone()]),
                cubic([mu, p1, p2, p3]),
            ),
            CubicForm::Nf2 => (
                cubic([
                    p1.clone(),
                    &p2 + &three * &alpha,
                    &p3 - &six * &alpha,
                    -&six * &alpha,
                ]),
                cubic([Rational::zero(), p1, &p2 - &three * &alpha, &p3 + &six * &alpha]),
            ),
            CubicForm::Nf3 => (
                cubic([p1.clone(), p2.clone(), &p3 + int(2), int(-4)]),
                cubic([Rational::zero(), p1, p2, &p3 - int(2)]),
            ),
            CubicForm::Nf4 => (
                cubic([p1.clone(), &p2 - &three * &alpha, p3.clone(), int(-6)]),
                cubic([Rational::zero(), p1, &p2 + &three * &alpha, p3]),
            ),
            CubicForm::Nf5 => (
                cubic([p1.clone(), p2.clone(), p3.clone(), -alpha]),
                cubic([Rational::zero(), p1, p2, p3]),
            ),
            CubicForm::Nf6 => {
                let am = &three * &alpha * &mu;
                (
                    cubic([p1.clone(), &p2 - &am, p3.clone(), -alpha.clone()]),
                    cubic([alpha, p1, &p2 + &am, p3]),
                )
            }
            CubicForm::Nf7 => (
                cubic([p1.clone(), &p2 - &alpha, p3.clone(), -alpha.clone()]),
                cubic([alpha.clone(), p1, &p2 + &alpha, p3]),
            ),
            CubicForm::Nf8 => {
                // y (p1 x^2 + p2 x y + p3 y^2) in the second component, read homogeneously.
                let r = BivariatePoly::from_terms([((2, 0), p1), ((1, 1), p2), ((0, 2), p3)]);
                (&BivariatePoly::x() * &r, &BivariatePoly::y() * &r)
            }
        })
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CubicForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_CUBIC_FORMS
            .iter()
            .copied()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::Domain(format!("unknown canonical form '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum FamilyKind {
    Catalog(Family),
    Canonical(CubicForm),
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Catalog(c) => write!(f, "{c}"),
            FamilyKind::Canonical(c) => write!(f, "{c}"),
        }
    }
}

/// A catalog match with its named coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyTag {
    pub family: FamilyKind,
    pub coefficients: BTreeMap<String, Rational>,
    /// Exponent `p` of the `s1p-d1` family.
    pub power: Option<u32>,
    /// The match was made after exchanging `x` and `y`.
    pub swapped: bool,
}

impl FamilyTag {
    pub fn catalog(family: Family, coefficients: BTreeMap<String, Rational>, power: Option<u32>) -> Self {
        Self { family: FamilyKind::Catalog(family), coefficients, power, swapped: false }
    }

    pub fn canonical(form: CubicForm, params: BTreeMap<String, Rational>) -> Self {
        Self { family: FamilyKind::Canonical(form), coefficients: params, power: None, swapped: false }
    }

    pub fn get(&self, name: &str) -> Rational {
        self.coefficients.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(P, Q)` in the (possibly swapped) coordinates of the match.
    pub fn reconstruct(&self) -> Result<(BivariatePoly, BivariatePoly)> {
        match self.family {
            FamilyKind::Canonical(form) => form.system(&self.coefficients),
            FamilyKind::Catalog(family) => {
                let mut p = BivariatePoly::zero();
                let mut q = BivariatePoly::zero();
                for s in family.slots(self.power) {
                    let term = BivariatePoly::monomial(self.get(&s.name), s.exponent.0, s.exponent.1);
                    match s.component {
                        Component::P => p = &p + &term,
                        Component::Q => q = &q + &term,
                    }
                }
                Ok((p, q))
            }
        }
    }

    /// `(P, Q)` in the original coordinates of the input.
    pub fn reconstruct_original(&self) -> Result<(BivariatePoly, BivariatePoly)> {
        let (p, q) = self.reconstruct()?;
        Ok(if self.swapped { (q.swap_xy(), p.swap_xy()) } else { (p, q) })
    }
}
