use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use whvf::catalog::FamilyTag;
use whvf::classifier::{Analysis, Verdict};
use whvf::dynamics::OrbitEnd;

use crate::parse::SystemSource;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub input: InputEcho,
    pub weight_signatures: Vec<String>,
    pub family: FamilyReport,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub file: Option<String>,
    pub line: usize,
    pub dx_dt: String,
    pub dy_dt: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_form: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, String>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum FamilyReport {
    Matched {
        id: String,
        signature: String,
        coefficients: BTreeMap<String, String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        power: Option<u32>,
        swapped: bool,
    },
    Outside(&'static str),
}

#[derive(Debug, Serialize)]
pub struct Timings {
    pub classify_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_ms: Option<f64>,
}

fn strings(tag: &FamilyTag) -> BTreeMap<String, String> {
    tag.coefficients.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

impl Report {
    pub fn new(source: &SystemSource, analysis: &Analysis, timings: Option<Timings>) -> Self {
        let input = InputEcho {
            file: source.origin.file.clone(),
            line: source.origin.line,
            dx_dt: source.p.to_string(),
            dy_dt: source.q.to_string(),
            canonical_form: source.canonical.as_ref().map(|t| t.family.to_string()),
            parameters: source.canonical.as_ref().map(strings).unwrap_or_default(),
        };
        let family = match &analysis.matched {
            Some((sig, tag)) => FamilyReport::Matched {
                id: tag.family.to_string(),
                signature: sig.to_string(),
                coefficients: strings(tag),
                power: tag.power,
                swapped: tag.swapped,
            },
            None => FamilyReport::Outside("OutsideCatalog"),
        };
        Report {
            schema: SCHEMA,
            input,
            weight_signatures: analysis.signatures.iter().map(ToString::to_string).collect(),
            family,
            verdict: analysis.verdict.clone(),
            timings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "dx/dt = {}", self.input.dx_dt);
        let _ = writeln!(s, "dy/dt = {}", self.input.dy_dt);
        if let Some(form) = &self.input.canonical_form {
            let params: Vec<String> = self.input.parameters.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            let _ = writeln!(s, "canonical form: {form} ({})", params.join(", "));
        }
        let _ = writeln!(s, "weight signatures: {}", self.weight_signatures.join("; "));
        match &self.family {
            FamilyReport::Matched { id, signature, coefficients, swapped, .. } => {
                let coeffs: Vec<String> = coefficients.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                let note = if *swapped { ", after exchanging x and y" } else { "" };
                let _ = writeln!(s, "family: {id} [{signature}{note}] {}", coeffs.join(", "));
            }
            FamilyReport::Outside(label) => {
                let _ = writeln!(s, "family: {label}");
            }
        }
        let v = &self.verdict;
        let _ = writeln!(s, "outcome: {}", v.outcome);
        if v.numeric_equality {
            let _ = writeln!(s, "  (numeric equality at tolerance 1e-10)");
        }
        if !v.conditions.is_empty() {
            let _ = writeln!(s, "conditions:");
        }
        for c in &v.conditions {
            let mark = if c.satisfied { "holds" } else { "fails" };
            let _ = writeln!(s, "  [{mark}] {}: {} (value {})", c.name, c.expression, c.value);
            let _ = writeln!(s, "          {}", c.citation);
        }
        if let Some(n) = &v.numeric {
            let _ = writeln!(s, "numeric corroboration:");
            if let Some(w) = n.winding {
                let end = match n.orbit_end {
                    Some(OrbitEnd::WindingReached) => "target reached".to_string(),
                    Some(OrbitEnd::Escaped { time }) => format!("escaped at t = {time:.6e}"),
                    Some(OrbitEnd::Captured { time }) => format!("captured at t = {time:.6e}"),
                    Some(OrbitEnd::TimeElapsed) => "time budget used".into(),
                    Some(OrbitEnd::StepBudget) => "step budget used".into(),
                    None => String::new(),
                };
                let _ = writeln!(s, "  winding from (0.01, 0): {w:.4} revolutions ({end})");
            }
            for m in &n.return_map {
                let _ = writeln!(s, "  return map rho = {:.4e}: defect/rho = {:.3e}", m.rho, m.defect / m.rho);
            }
            if let Some(r) = n.reading {
                let _ = writeln!(s, "  reading: {r:?}");
            }
            if let Some(m) = &n.multiplier {
                let _ = writeln!(s, "  V1 estimate: {:.6} (+- {:.1e})", m.value, m.error);
            }
            if let Some(e) = n.multiplier_expected {
                let _ = writeln!(s, "  V1 closed form: {e:.6}");
            }
            for note in &n.notes {
                let _ = writeln!(s, "  note: {note}");
            }
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(s, "classify: {:.2} ms", t.classify_ms);
            if let Some(n) = t.numeric_ms {
                let _ = writeln!(s, "numeric: {n:.2} ms");
            }
        }
        s
    }
}
