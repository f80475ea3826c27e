use std::fmt;

use serde::Serialize;

use crate::dynamics::{NumericReading, OrbitEnd, ReturnMapSample, V1Estimate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Stable,
    Unstable,
}

/// Machine-checkable grounds for a negative verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reason {
    /// A line through the origin verified invariant by exact division.
    InvariantLine { line: String },
    /// The lowest-degree angular form changes sign, so `theta'` does.
    SignChange { form: String },
    /// Homogeneous of even degree: no center is possible.
    EvenDegree { degree: u32 },
    /// `x Q - y P` has a real linear factor.
    AngularFormFactor { form: String, factor: String },
    /// Verified first integral of a cusp family.
    CuspFirstIntegral { integral: String },
    /// The nilpotent monodromy criterion fails.
    NilpotentCriterion { detail: String },
    /// The circle integral of `f/g` is bounded away from zero.
    NonzeroIntegral { value: f64 },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::InvariantLine { line } => write!(f, "invariant line {line}"),
            Reason::SignChange { form } => write!(f, "angular form {form} changes sign"),
            Reason::EvenDegree { degree } => write!(f, "homogeneous of even degree {degree}"),
            Reason::AngularFormFactor { form, factor } => {
                write!(f, "x*Q - y*P = {form} has the real factor {factor}")
            }
            Reason::CuspFirstIntegral { integral } => write!(f, "cusp with first integral H = {integral}"),
            Reason::NilpotentCriterion { detail } => write!(f, "nilpotent monodromy criterion fails: {detail}"),
            Reason::NonzeroIntegral { value } => write!(f, "circle integral of f/g = {value:.12e} is nonzero"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Center,
    GlobalCenter,
    Focus { stability: Stability },
    Cusp { reason: Reason },
    NotMonodromic { reason: Reason },
    NoCenter { reason: Reason },
    OutsideCatalog,
    Inconclusive { detail: String },
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Center => "Center",
            Outcome::GlobalCenter => "GlobalCenter",
            Outcome::Focus { .. } => "Focus",
            Outcome::Cusp { .. } => "Cusp",
            Outcome::NotMonodromic { .. } => "NotMonodromic",
            Outcome::NoCenter { .. } => "NoCenter",
            Outcome::OutsideCatalog => "OutsideCatalog",
            Outcome::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn is_center(&self) -> bool {
        matches!(self, Outcome::Center | Outcome::GlobalCenter)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Focus { stability } => write!(f, "Focus ({stability:?})"),
            Outcome::Cusp { reason } | Outcome::NotMonodromic { reason } | Outcome::NoCenter { reason } => {
                write!(f, "{} ({reason})", self.label())
            }
            Outcome::Inconclusive { detail } => write!(f, "Inconclusive ({detail})"),
            _ => f.write_str(self.label()),
        }
    }
}

/// One evaluated hypothesis of a criterion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition {
    pub name: String,
    pub expression: String,
    pub value: String,
    pub satisfied: bool,
    pub citation: String,
}

impl Condition {
    pub fn new(
        name: impl Into<String>,
        expression: impl Into<String>,
        value: impl ToString,
        satisfied: bool,
        citation: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            expression: expression.into(),
            value: value.to_string(),
            satisfied,
            citation: citation.into(),
        }
    }
}

/// Numeric evidence gathered independently of the exact decision.
#[derive(Clone, Debug, PartialEq, Serialize, Default)]
pub struct Corroboration {
    /// Revolutions completed from `(0.01, 0)` and how the orbit ended.
    pub winding: Option<f64>,
    pub orbit_end: Option<OrbitEnd>,
    pub return_map: Vec<ReturnMapSample>,
    pub reading: Option<NumericReading>,
    pub multiplier: Option<V1Estimate>,
    /// The multiplier predicted in closed form, when one is known.
    pub multiplier_expected: Option<f64>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub conditions: Vec<Condition>,
    /// The decision used floating-point quadrature.
    pub numeric_equality: bool,
    pub numeric: Option<Corroboration>,
}

impl Verdict {
    pub fn exact(outcome: Outcome, conditions: Vec<Condition>) -> Self {
        Self { outcome, conditions, numeric_equality: false, numeric: None }
    }
}

pub mod cite {
    pub const LINEAR: &str = "center criterion for linear systems (weight degree 1)";
    pub const DEGREE_TWO: &str = "center conditions for weight degree 2 families";
    pub const DEGREE_THREE: &str = "center conditions for weight degree 3 families";
    pub const DEGREE_FOUR: &str = "center conditions for weight degree 4 families";
    pub const HOMOGENEOUS: &str = "global center criterion for homogeneous systems (no real linear factor of xQ - yP and zero circle integral of f/g)";
    pub const EVEN_DEGREE: &str = "global center criterion for homogeneous systems: the degree must be odd";
    pub const NILPOTENT: &str = "monodromy criterion for nilpotent singular points (implicit branch y = F(x), leading terms of f and phi)";
    pub const ANGULAR: &str = "monodromy forces a definite sign of the lowest-degree angular form";
    pub const INVARIANT_LINE: &str = "an invariant line through the origin excludes a center";
    pub const CUSP: &str = "cusp families: the origin is always a cusp (first integral verified)";
    pub const REVERSIBLE: &str = "reversibility under (x, y, t) -> (-x, y, -t) turns a monodromic point into a center";
    pub const MULTIPLIER: &str = "first generalized Lyapunov multiplier of the nilpotent normal form";
    pub const CANONICAL: &str = "canonical forms of cubic homogeneous systems and their center conditions";
}
