//! Numeric soundness of exact verdicts over seeded random instances.

use whvf::catalog::{Family, FamilyKind};
use whvf::classifier::{analyze, corroborate, ClassifyOptions, CorroborationOptions, Outcome, Stability};
use whvf::dynamics::{return_map_within, PolarSystem};
use whvf::parallel::Execution;
use whvf::sampling::{all_kinds, sample_family, Sample};

const SEED: u64 = 77;

fn polar_of(s: &Sample) -> (u32, whvf::algebra::BivariatePoly, whvf::algebra::BivariatePoly) {
    if let FamilyKind::Canonical(_) = s.family {
        return (1, s.p.clone(), s.q.clone());
    }
    let a = analyze(&s.p, &s.q, &ClassifyOptions::default()).unwrap();
    let (sig, tag) = a.matched.unwrap();
    if sig.s1 == 1 {
        (sig.s2, s.p.clone(), s.q.clone())
    } else {
        let (p, q) = tag.reconstruct().unwrap();
        (sig.s1, p, q)
    }
}

#[test]
fn focus_defects_have_the_predicted_sign() {
    let samples: Vec<Sample> =
        all_kinds().into_iter().flat_map(|k| sample_family(k, 100, SEED).unwrap()).collect();
    let opts = ClassifyOptions::default();
    let results = Execution::Parallel.map(&samples, |s| {
        let Outcome::Focus { stability } = s.classify(&opts).unwrap().outcome else { return None };
        let (n, p, q) = polar_of(s);
        let ps = PolarSystem::new(&p, &q, n);
        let rel: Vec<f64> = [1e-2, 1e-3]
            .iter()
            .filter_map(|&rho| return_map_within(&ps, rho, 1e12).ok().map(|m| m.defect / rho))
            .collect();
        Some((s.family, stability, rel))
    });
    let mut foci = 0;
    for (family, stability, rel) in results.into_iter().flatten() {
        foci += 1;
        if rel.is_empty() {
            // multiplier beyond 1e12: nothing to compare at these radii
            continue;
        }
        let expanding = stability == Stability::Unstable;
        assert!(rel.iter().all(|d| (*d > 0.0) == expanding), "{family}: {rel:?} vs {stability:?}");
        assert!(rel.iter().any(|d| d.abs() > 1e-4), "{family}: {rel:?}");
    }
    assert!(foci > 50, "{foci}");
}

#[test]
fn corroboration_of_a_family_nine_focus() {
    // a01 = 1, a30 = 0, b21 = 1, b50 = -2
    let x = whvf::algebra::BivariatePoly::x();
    let y = whvf::algebra::BivariatePoly::y();
    let q = &x.pow(5).scale(&whvf::algebra::int(-2)) + &(&x.pow(2) * &y);
    let a = analyze(&y, &q, &ClassifyOptions::default()).unwrap();
    assert_eq!(a.verdict.outcome, Outcome::Focus { stability: Stability::Unstable });
    assert_eq!(a.matched.as_ref().unwrap().1.family, FamilyKind::Catalog(Family::S13D3));
    let c = corroborate(&a, &y, &q, &CorroborationOptions::default());
    let est = c.multiplier.unwrap().value;
    let want = c.multiplier_expected.unwrap();
    assert!((est - want).abs() < 1e-3 * want, "{est} vs {want}");
    assert!((want - 1.5477).abs() < 1e-4);
}
