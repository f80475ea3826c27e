//! The center conditions read straight off the coefficients, with no
//! normal forms, series or quadrature. Used as an independent check of
//! the full decision procedure.

use num::{Signed, Zero};
use serde::Serialize;

use super::verdict::Outcome;
use crate::algebra::{int, Rational};
use crate::catalog::{CubicForm, Family, FamilyKind, FamilyTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoarseClass {
    Center,
    Cusp,
    NotCenter,
}

/// `None` for the raw cubic family, whose conditions live on the canonical forms.
pub fn decision_table(tag: &FamilyTag) -> Option<CoarseClass> {
    let c = |name: &str| tag.get(name);
    let center = |yes: bool| Some(if yes { CoarseClass::Center } else { CoarseClass::NotCenter });
    let inequality = |k: i64, ak: Rational, a01: Rational, top: Rational, mid: Rational| {
        let s = &ak * int(k) + &mid;
        (&s * &s + (top * a01 - mid * ak) * int(4 * k)).is_negative()
    };
    match tag.family {
        FamilyKind::Canonical(form) => match form {
            CubicForm::Nf6 | CubicForm::Nf7 => center((c("p1") + c("p3")).is_zero()),
            _ => center(false),
        },
        FamilyKind::Catalog(family) => match family {
            Family::S11D1 => {
                let det = c("a10") * c("b01") - c("a01") * c("b10");
                center(c("b01") == -c("a10") && det.is_positive())
            }
            Family::S23D2 | Family::S25D4 => Some(CoarseClass::Cusp),
            Family::S12D2 => center(inequality(2, c("a20"), c("a01"), c("b30"), c("b11"))),
            Family::S13D3 => center(
                inequality(3, c("a30"), c("a01"), c("b50"), c("b21")) && (c("a30") * int(3) + c("b21")).is_zero(),
            ),
            Family::S14D4 => center(inequality(4, c("a40"), c("a01"), c("b70"), c("b31"))),
            Family::S11D3 => None,
            Family::S1pD1
            | Family::S11D2
            | Family::S11D4
            | Family::S12D3
            | Family::S12D4
            | Family::S13D4
            | Family::S23D4 => center(false),
        },
    }
}

/// Collapses a verdict; `None` when the classifier reached no decision.
pub fn coarse_class(outcome: &Outcome) -> Option<CoarseClass> {
    match outcome {
        Outcome::Center | Outcome::GlobalCenter => Some(CoarseClass::Center),
        Outcome::Cusp { .. } => Some(CoarseClass::Cusp),
        Outcome::Focus { .. } | Outcome::NotMonodromic { .. } | Outcome::NoCenter { .. } => {
            Some(CoarseClass::NotCenter)
        }
        Outcome::OutsideCatalog | Outcome::Inconclusive { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn tag(family: Family, pairs: &[(&str, i64)]) -> FamilyTag {
        let map: BTreeMap<String, Rational> = pairs.iter().map(|(k, v)| (k.to_string(), int(*v))).collect();
        FamilyTag::catalog(family, map, None)
    }

    #[test]
    fn rows() {
        assert_eq!(decision_table(&tag(Family::S11D1, &[("a01", 1), ("b10", -1)])), Some(CoarseClass::Center));
        assert_eq!(decision_table(&tag(Family::S11D1, &[("a01", 1), ("b10", 1)])), Some(CoarseClass::NotCenter));
        assert_eq!(
            decision_table(&tag(Family::S12D2, &[("a20", 1), ("a01", 1), ("b30", -3), ("b11", 1)])),
            Some(CoarseClass::Center)
        );
        assert_eq!(
            decision_table(&tag(Family::S13D3, &[("a01", 1), ("b50", -2), ("b21", 1)])),
            Some(CoarseClass::NotCenter)
        );
        assert_eq!(decision_table(&tag(Family::S25D4, &[("a01", 1), ("b40", 1)])), Some(CoarseClass::Cusp));
        assert_eq!(decision_table(&tag(Family::S11D3, &[])), None);
    }
}
