use std::collections::BTreeMap;

use proptest::prelude::*;
use whvf::algebra::{is_coprime, rat, transform_system, LinearMap, Rational};
use whvf::catalog::{Family, FamilyTag};
use whvf::classifier::{classify, coarse_class, decision_table};

fn coefficient() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn tag_strategy(family: Family) -> impl Strategy<Value = FamilyTag> {
    let names: Vec<String> = family.slots(None).into_iter().map(|s| s.name).collect();
    proptest::collection::vec(coefficient(), names.len()).prop_map(move |values| {
        let map: BTreeMap<String, Rational> = names.iter().cloned().zip(values).collect();
        FamilyTag::catalog(family, map, None)
    })
}

fn any_tag() -> impl Strategy<Value = FamilyTag> {
    prop_oneof![
        tag_strategy(Family::S11D1),
        tag_strategy(Family::S12D2),
        tag_strategy(Family::S13D3),
        tag_strategy(Family::S14D4),
        tag_strategy(Family::S12D4),
        tag_strategy(Family::S23D2),
        tag_strategy(Family::S25D4),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classifier_matches_table(tag in any_tag()) {
        let (p, q) = tag.reconstruct().unwrap();
        prop_assume!(!p.is_zero() && !q.is_zero() && is_coprime(&p, &q).unwrap());
        let v = classify(&p, &q).unwrap();
        prop_assert_eq!(coarse_class(&v.outcome), decision_table(&tag));
    }

    #[test]
    fn exchanging_axes_keeps_the_outcome(tag in any_tag()) {
        let (p, q) = tag.reconstruct().unwrap();
        prop_assume!(!p.is_zero() && !q.is_zero() && is_coprime(&p, &q).unwrap());
        let a = classify(&p, &q).unwrap().outcome;
        let b = classify(&q.swap_xy(), &p.swap_xy()).unwrap().outcome;
        prop_assert_eq!(a.label(), b.label());
    }

    #[test]
    fn diagonal_scaling_keeps_the_outcome(tag in any_tag(), c in coefficient()) {
        prop_assume!(c != rat(0, 1));
        let (p, q) = tag.reconstruct().unwrap();
        prop_assume!(!p.is_zero() && !q.is_zero() && is_coprime(&p, &q).unwrap());
        let m = LinearMap::new(rat(1, 1), rat(0, 1), rat(0, 1), c);
        let (ps, qs) = transform_system(&p, &q, &m).unwrap();
        let a = classify(&p, &q).unwrap().outcome;
        let b = classify(&ps, &qs).unwrap().outcome;
        prop_assert_eq!(coarse_class(&a), coarse_class(&b));
    }
}
