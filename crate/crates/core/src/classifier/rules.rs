use num::{Signed, Zero};

use super::verdict::{cite, Condition, Outcome, Reason, Stability, Verdict};
use crate::algebra::{
    angular_form, int, invariant_lines_through_origin, is_first_integral, real_linear_factors, to_f64,
    AngularSign, BivariatePoly, InvariantLine, InvariantLines, LineThroughOrigin,
};
use crate::catalog::{CubicForm, Family, FamilyKind, FamilyTag};
use crate::dynamics::{homogeneous_integral, reversibility, v1_formula, Reversibility};
use crate::error::{Error, Result};
use crate::monodromy::{andreev_data, angular_sign_definite, nilpotent_monodromic, to_nilpotent_form};
use crate::series::default_order;
use crate::weights::{detect_weight_signatures, match_catalog, WeightSignature};

/// Knobs of the exact decision procedure.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifyOptions {
    /// `|integral| <` this counts as zero on the quadrature route.
    pub zero_tol: f64,
    /// `|integral| >` this counts as nonzero on the quadrature route.
    pub nonzero_tol: f64,
    /// Truncation order of the implicit branch; `None` for the default.
    pub max_order: Option<usize>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { zero_tol: 1e-10, nonzero_tol: 1e-6, max_order: None }
    }
}

/// Signatures, catalog match and verdict of one system.
#[derive(Clone, Debug, PartialEq)]
pub struct Analysis {
    pub signatures: Vec<WeightSignature>,
    pub matched: Option<(WeightSignature, FamilyTag)>,
    pub verdict: Verdict,
}

pub fn classify(p: &BivariatePoly, q: &BivariatePoly) -> Result<Verdict> {
    Ok(analyze(p, q, &ClassifyOptions::default())?.verdict)
}

pub fn analyze(p: &BivariatePoly, q: &BivariatePoly, opts: &ClassifyOptions) -> Result<Analysis> {
    let signatures = detect_weight_signatures(p, q)?;
    let usable: Vec<WeightSignature> = signatures.iter().copied().filter(|s| s.d <= 4).collect();
    let matched = match_catalog(p, q, &usable);
    let verdict = match &matched {
        None => Verdict::exact(Outcome::OutsideCatalog, Vec::new()),
        Some((_, tag)) => classify_tag(tag, p, q, opts)?,
    };
    Ok(Analysis { signatures, matched, verdict })
}

/// Decides a matched catalog instance. `p`, `q` are in the input coordinates.
pub fn classify_tag(tag: &FamilyTag, p: &BivariatePoly, q: &BivariatePoly, opts: &ClassifyOptions) -> Result<Verdict> {
    let family = match tag.family {
        FamilyKind::Canonical(_) => return canonical_form_check(tag),
        FamilyKind::Catalog(f) => f,
    };
    let (pt, qt) = tag.reconstruct()?;
    let unswap = |l: LineThroughOrigin| {
        if tag.swapped {
            LineThroughOrigin::new(l.b, l.a).expect("nonzero line")
        } else {
            l
        }
    };
    let line = |l: LineThroughOrigin, cite: &str| -> Verdict {
        debug_assert!(l.is_invariant_for(&pt, &qt));
        let l = unswap(l);
        let cond = Condition::new("invariant line", l.to_string(), "exact division", true, cite);
        Verdict::exact(Outcome::NoCenter { reason: Reason::InvariantLine { line: l.to_string() } }, vec![cond])
    };
    let y_axis = LineThroughOrigin::y_axis;
    let x_axis = LineThroughOrigin::x_axis;
    Ok(match family {
        Family::S11D1 => linear(tag, &pt, &qt, &unswap),
        Family::S1pD1 => line(y_axis(), cite::LINEAR),
        Family::S11D2 => even_degree(2),
        Family::S11D4 => even_degree(4),
        Family::S23D2 => cusp(tag, &pt, &qt, "a01", "b20", 3, cite::DEGREE_TWO),
        Family::S25D4 => cusp(tag, &pt, &qt, "a01", "b40", 5, cite::DEGREE_FOUR),
        Family::S12D3 | Family::S13D4 | Family::S23D4 => {
            let c = if family == Family::S12D3 { cite::DEGREE_THREE } else { cite::DEGREE_FOUR };
            line(y_axis(), c)
        }
        Family::S12D4 => {
            if tag.get("a02").is_zero() {
                line(y_axis(), cite::DEGREE_FOUR)
            } else {
                debug_assert_eq!(angular_sign_definite(&pt, &qt), AngularSign::ChangesSign);
                let h = angular_form(&pt.homogeneous_part(2), &qt.homogeneous_part(2));
                let cond = Condition::new("lowest angular form", "x*Q_2 - y*P_2 = -a02*y^3", &h, false, cite::ANGULAR);
                Verdict::exact(Outcome::NotMonodromic { reason: Reason::SignChange { form: h.to_string() } }, vec![cond])
            }
        }
        Family::S12D2 | Family::S13D3 | Family::S14D4 => {
            let k = match family {
                Family::S12D2 => 2,
                Family::S13D3 => 3,
                _ => 4,
            };
            let (a_k0, b_top) = (format!("a{k}0"), format!("b{}0", 2 * k - 1));
            if tag.get("a01").is_zero() {
                line(y_axis(), nilpotent_cite(k))
            } else if tag.get(&b_top).is_zero() {
                line(x_axis(), nilpotent_cite(k))
            } else {
                nilpotent_family(tag, k, &a_k0, &b_top, &pt, &qt, opts)?
            }
        }
        Family::S11D3 => homogeneous_cubic_center(p, q, opts)?,
    })
}

fn nilpotent_cite(k: u32) -> &'static str {
    match k {
        2 => cite::DEGREE_TWO,
        3 => cite::DEGREE_THREE,
        _ => cite::DEGREE_FOUR,
    }
}

fn even_degree(degree: u32) -> Verdict {
    let cond = Condition::new("odd degree", "m odd", degree, false, cite::EVEN_DEGREE);
    Verdict::exact(Outcome::NoCenter { reason: Reason::EvenDegree { degree } }, vec![cond])
}

fn linear(
    tag: &FamilyTag,
    p: &BivariatePoly,
    q: &BivariatePoly,
    unswap: &dyn Fn(LineThroughOrigin) -> LineThroughOrigin,
) -> Verdict {
    let (a10, a01, b10, b01) = (tag.get("a10"), tag.get("a01"), tag.get("b10"), tag.get("b01"));
    let trace = &a10 + &b01;
    let det = &a10 * &b01 - &a01 * &b10;
    let conds = vec![
        Condition::new("zero trace", "b01 = -a10", format!("a10 + b01 = {trace}"), trace.is_zero(), cite::LINEAR),
        Condition::new("positive determinant", "a10*b01 - a01*b10 > 0", &det, det.is_positive(), cite::LINEAR),
    ];
    if trace.is_zero() && det.is_positive() {
        return Verdict::exact(Outcome::Center, conds);
    }
    let disc = &trace * &trace - &det * int(4);
    if disc.is_negative() {
        let stability = if trace.is_positive() { Stability::Unstable } else { Stability::Stable };
        return Verdict::exact(Outcome::Focus { stability }, conds);
    }
    let line = match invariant_lines_through_origin(p, q).expect("nonzero field") {
        InvariantLines::Pencil => "every line through the origin".to_string(),
        InvariantLines::Finite(ls) => match ls.into_iter().next().expect("real eigenvector") {
            InvariantLine::Exact(l) => unswap(l).to_string(),
            other => other.to_string(),
        },
    };
    let mut conds = conds;
    conds.push(Condition::new("invariant line", &line, "real eigenvector", true, cite::INVARIANT_LINE));
    Verdict::exact(Outcome::NoCenter { reason: Reason::InvariantLine { line } }, conds)
}

fn cusp(
    tag: &FamilyTag,
    p: &BivariatePoly,
    q: &BivariatePoly,
    a: &str,
    b: &str,
    power: u32,
    citation: &str,
) -> Verdict {
    // H = (a/2) y^2 - (b/power) x^power for the (2,3) family, its negative for (2,5)
    let (ca, cb) = (tag.get(a), tag.get(b));
    let mut h = &BivariatePoly::monomial(&ca / int(2), 0, 2) - &BivariatePoly::monomial(&cb / int(power as i64), power, 0);
    if power == 5 {
        h = -h;
    }
    let ok = is_first_integral(&h, p, q);
    debug_assert!(ok);
    let h = if tag.swapped { h.swap_xy() } else { h };
    let conds = vec![
        Condition::new("first integral", format!("X(H) = 0 for H = {h}"), "0", ok, cite::CUSP),
        Condition::new("family", "cusp family", tag.family.to_string(), true, citation),
    ];
    Verdict::exact(Outcome::Cusp { reason: Reason::CuspFirstIntegral { integral: h.to_string() } }, conds)
}

/// Families `x' = a_k0 x^k + a01 y, y' = b_(2k-1)0 x^(2k-1) + b_(k-1)1 x^(k-1) y`.
fn nilpotent_family(
    tag: &FamilyTag,
    k: u32,
    a_k0: &str,
    b_top: &str,
    p: &BivariatePoly,
    q: &BivariatePoly,
    opts: &ClassifyOptions,
) -> Result<Verdict> {
    let mid = format!("b{}1", k - 1);
    let (ak, a01, bt, bm) = (tag.get(a_k0), tag.get("a01"), tag.get(b_top), tag.get(&mid));
    let kk = int(k as i64);
    let s = &ak * &kk + &bm;
    let mono = &s * &s + (&bt * &a01 - &bm * &ak) * int(4 * k as i64);
    let citation = nilpotent_cite(k);
    let mut conds = vec![
        Condition::new("nondegenerate", format!("a01*{b_top} != 0"), &a01 * &bt, true, citation),
        Condition::new(
            "monodromy inequality",
            format!("({k}*{a_k0} + {mid})^2 + {}*({b_top}*a01 - {mid}*{a_k0}) < 0", 4 * k),
            &mono,
            mono.is_negative(),
            citation,
        ),
    ];

    // the same question through the nilpotent criterion
    let form = to_nilpotent_form(p, q)?.map_err(|e| Error::Domain(format!("{e:?}")))?;
    let order = opts.max_order.unwrap_or_else(|| default_order(p, q));
    let data = andreev_data(&form.p2, &form.q2, order)?;
    let monodromic = nilpotent_monodromic(&data);
    let detail = format!(
        "a = {}, alpha = {}, {}",
        data.a,
        data.alpha,
        match (&data.b, data.beta) {
            (Some(b), Some(beta)) => format!("b = {b}, beta = {beta}"),
            _ => format!("phi = 0 to order {}", data.truncation_order),
        }
    );
    conds.push(Condition::new("nilpotent criterion", "a < 0, alpha = 2n - 1, phi condition", &detail, monodromic, cite::NILPOTENT));
    if monodromic != mono.is_negative() {
        return Err(Error::Domain(format!("monodromy routes disagree for {tag:?}")));
    }
    if !monodromic {
        return Ok(Verdict::exact(Outcome::NotMonodromic { reason: Reason::NilpotentCriterion { detail } }, conds));
    }
    if k == 3 {
        let center = s.is_zero();
        conds.push(Condition::new("trace condition", "3*a30 + b21 = 0", &s, center, citation));
        let reduced = &bt * &a01 + &ak * &ak * int(3);
        conds.push(Condition::new(
            "reduced inequality",
            "b50*a01 < -3*a30^2 (given 3*a30 + b21 = 0)",
            &reduced,
            reduced.is_negative(),
            citation,
        ));
        // forward-time multiplier of the original system
        let denom = &ak * &bm - &a01 * &bt;
        let b_fwd = to_f64(&s) / to_f64(&denom).sqrt();
        let v1 = v1_formula(3, Some(2), b_fwd)?;
        conds.push(Condition::new("first multiplier", "V1 = exp(2*b*pi/(n*sqrt(4n - b^2))) equals 1", format!("{v1:.12}"), center, cite::MULTIPLIER));
        if !center {
            let stability = if s.is_positive() { Stability::Unstable } else { Stability::Stable };
            return Ok(Verdict::exact(Outcome::Focus { stability }, conds));
        }
        Ok(Verdict::exact(Outcome::Center, conds))
    } else {
        let rev = reversibility(p, q) == Reversibility::XReversible;
        conds.push(Condition::new("reversible", "(x, y, t) -> (-x, y, -t)", rev, rev, cite::REVERSIBLE));
        Ok(Verdict::exact(Outcome::Center, conds))
    }
}

/// Global center test for homogeneous systems of odd degree by the circle
/// integral of `f/g`.
pub fn homogeneous_cubic_center(p: &BivariatePoly, q: &BivariatePoly, opts: &ClassifyOptions) -> Result<Verdict> {
    let (dp, dq) = (p.degree(), q.degree());
    let homogeneous = p.is_homogeneous() && q.is_homogeneous() && dp == dq && dp.is_some();
    let degree = dp.or(dq).unwrap_or(0);
    if !homogeneous || degree % 2 == 0 {
        return Ok(even_degree(degree));
    }
    let g = angular_form(p, q);
    let factors = real_linear_factors(&g)?;
    let mut conds = vec![Condition::new(
        "no real linear factor",
        format!("x*Q - y*P = {g}"),
        format!("{} real factors", factors.len()),
        factors.is_empty(),
        cite::HOMOGENEOUS,
    )];
    if let Some((factor, _)) = factors.first() {
        let reason = Reason::AngularFormFactor { form: g.to_string(), factor: factor.to_string() };
        return Ok(Verdict::exact(Outcome::NoCenter { reason }, conds));
    }
    let quad = homogeneous_integral(p, q)?;
    let value = quad.f_over_g_integral.expect("nonsingular");
    conds.push(Condition::new(
        "zero circle integral",
        "integral over [0, 2 pi] of f/g = 0",
        format!("{value:.6e}"),
        value.abs() < opts.zero_tol,
        cite::HOMOGENEOUS,
    ));
    let mut verdict = if value.abs() < opts.zero_tol {
        Verdict::exact(Outcome::GlobalCenter, conds)
    } else if value.abs() > opts.nonzero_tol {
        // forward time runs along the sign of g
        let g_sign = to_f64(&g.eval(&int(1), &int(0))).signum() as f64;
        let g_sign = if g_sign == 0.0 { to_f64(&g.eval(&int(0), &int(1))).signum() } else { g_sign };
        let stability = if g_sign * value > 0.0 { Stability::Unstable } else { Stability::Stable };
        Verdict::exact(Outcome::Focus { stability }, conds)
    } else {
        Verdict::exact(
            Outcome::Inconclusive { detail: format!("|integral| = {:.3e} between tolerances", value.abs()) },
            conds,
        )
    };
    verdict.numeric_equality = true;
    Ok(verdict)
}

/// Exact verdict for a system given by canonical-form parameters.
pub fn canonical_form_check(tag: &FamilyTag) -> Result<Verdict> {
    let FamilyKind::Canonical(form) = tag.family else {
        return Err(Error::Domain(format!("{} is not a canonical form", tag.family)));
    };
    let (p, q) = form.system(&tag.coefficients)?;
    let line = |l: LineThroughOrigin| {
        let ok = l.is_invariant_for(&p, &q);
        debug_assert!(ok);
        let cond = Condition::new("invariant line", l.to_string(), "exact division", ok, cite::CANONICAL);
        Verdict::exact(Outcome::NoCenter { reason: Reason::InvariantLine { line: l.to_string() } }, vec![cond])
    };
    Ok(match form {
        CubicForm::Nf1 => {
            let l = LineThroughOrigin::new(1.into(), (-1).into())?;
            line(l)
        }
        CubicForm::Nf2 => {
            let alpha = tag.get("alpha");
            let x = BivariatePoly::x();
            let y = BivariatePoly::y();
            let k = &(&x.pow(2) - &(&x * &y).scale(&int(2))) - &y.pow(2);
            let expect = (&y.pow(2) * &k).scale(&(&alpha * int(-6)));
            let g = angular_form(&p, &q);
            let form_text = format!("{}*y^2*(x^2 - 2*x*y - y^2)", &alpha * int(-6));
            let cond = Condition::new(
                "no real linear factor",
                "x*Q - y*P = -6*alpha*y^2*(x^2 - 2*x*y - y^2)",
                &g,
                false,
                cite::CANONICAL,
            );
            debug_assert_eq!(g, expect);
            let reason = Reason::AngularFormFactor { form: form_text, factor: "y".into() };
            Verdict::exact(Outcome::NoCenter { reason }, vec![cond])
        }
        CubicForm::Nf3 | CubicForm::Nf4 | CubicForm::Nf5 | CubicForm::Nf8 => line(LineThroughOrigin::x_axis()),
        CubicForm::Nf6 | CubicForm::Nf7 => {
            let sum = &tag.get("p1") + &tag.get("p3");
            let g = angular_form(&p, &q);
            let definite = real_linear_factors(&g)?.is_empty();
            let conds = vec![
                Condition::new("no real linear factor", format!("x*Q - y*P = {g}"), definite, definite, cite::CANONICAL),
                Condition::new("center condition", "p3 = -p1", format!("p1 + p3 = {sum}"), sum.is_zero(), cite::CANONICAL),
            ];
            if sum.is_zero() {
                Verdict::exact(Outcome::Center, conds)
            } else {
                let stability = if sum.is_positive() { Stability::Unstable } else { Stability::Stable };
                Verdict::exact(Outcome::Focus { stability }, conds)
            }
        }
    })
}
