//! Exact center/focus decisions for the weight-homogeneous catalog.

mod corroborate;
mod decision_table;
mod rules;
mod verdict;

pub use corroborate::{corroborate, expected_multiplier, CorroborationOptions, WIDE_WINDOW};
pub use decision_table::{coarse_class, decision_table, CoarseClass};
pub use rules::{analyze, canonical_form_check, classify, classify_tag, homogeneous_cubic_center, Analysis, ClassifyOptions};
pub use verdict::{cite, Condition, Corroboration, Outcome, Reason, Stability, Verdict};
