//! Batch agreement between the classifier and the condition-only table.

use serde::Serialize;

use crate::catalog::FamilyKind;
use crate::classifier::{coarse_class, ClassifyOptions, CoarseClass, Outcome};
use crate::error::Result;
use crate::parallel::Execution;
use crate::sampling::{sample_family, Sample};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub index: usize,
    pub p: String,
    pub q: String,
    pub expected: Option<CoarseClass>,
    pub outcome: Option<Outcome>,
    pub error: Option<String>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub family: String,
    pub seed: u64,
    pub agreements: usize,
    pub mismatches: usize,
    pub records: Vec<SweepRecord>,
}

fn check(index: usize, sample: &Sample, opts: &ClassifyOptions) -> SweepRecord {
    let expected = sample.expected();
    let (outcome, error) = match sample.classify(opts) {
        Ok(v) => (Some(v.outcome), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let got = outcome.as_ref().and_then(coarse_class);
    SweepRecord {
        index,
        p: sample.p.to_string(),
        q: sample.q.to_string(),
        agrees: expected.is_some() && got == expected,
        expected,
        outcome,
        error,
    }
}

pub fn sweep(kind: FamilyKind, count: usize, seed: u64, opts: &ClassifyOptions, exec: Execution) -> Result<SweepReport> {
    let samples: Vec<(usize, Sample)> = sample_family(kind, count, seed)?.into_iter().enumerate().collect();
    let records = exec.map(&samples, |(i, s)| check(*i, s, opts));
    let agreements = records.iter().filter(|r| r.agrees).count();
    Ok(SweepReport {
        family: kind.to_string(),
        seed,
        agreements,
        mismatches: records.len() - agreements,
        records,
    })
}
