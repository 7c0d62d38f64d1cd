//! Scenario files: a frame, a list of sources and fusion options, as JSON.
//!
//! ```json
//! {
//!   "name": "zadeh",
//!   "frame": ["M", "C", "T"],
//!   "sources": [
//!     { "id": "D1", "kind": "mass", "values": { "M": 0.99, "T": 0.01 } },
//!     { "id": "D2", "kind": "distribution", "values": { "M": 0, "C": 1, "T": 0.01 } }
//!   ],
//!   "options": { "rule": "conjunctive", "tau": 0.5, "h_min": 0.1, "nu": 0.5, "weights": "uniform" }
//! }
//! ```
//!
//! Mass keys are union expressions (`"M|T"`); distribution keys are single
//! labels and every label must appear. `weights` is `"uniform"`,
//! `"adaptive"` or an object mapping source ids to weights.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagnostics::{
    FusionMode, ReportOptions, Source, WeightPolicy, DEFAULT_H_MIN, DEFAULT_NU, DEFAULT_TAU,
};
use crate::error::Error;
use crate::evidence::{MassFunction, SUM_TOLERANCE};
use crate::frame::Frame;
use crate::possibility::PossibilityDistribution;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub frame: Vec<String>,
    pub sources: Vec<SourceSpec>,
    #[serde(default)]
    pub options: ScenarioOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceSpec {
    pub id: String,
    pub kind: SourceKind,
    pub values: IndexMap<String, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    Mass,
    Distribution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Dempster,
    #[default]
    Conjunctive,
    Disjunctive,
    MeasureLevel,
}

impl Rule {
    /// Possibilistic mode used in reports. Dempster scenarios still get a
    /// possibilistic path, with conjunctive fusion.
    pub fn fusion_mode(self) -> FusionMode {
        match self {
            Rule::Dempster | Rule::Conjunctive => FusionMode::Conjunctive,
            Rule::Disjunctive => FusionMode::Disjunctive,
            Rule::MeasureLevel => FusionMode::MeasureLevel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum NamedWeights {
    #[default]
    Uniform,
    Adaptive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightsSpec {
    Named(NamedWeights),
    Explicit(IndexMap<String, f64>),
}

impl Default for WeightsSpec {
    fn default() -> Self {
        WeightsSpec::Named(NamedWeights::Uniform)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioOptions {
    #[serde(default)]
    pub rule: Rule,
    #[serde(default = "default_tau")]
    pub tau: f64,
    #[serde(default = "default_h_min")]
    pub h_min: f64,
    #[serde(default = "default_nu")]
    pub nu: f64,
    #[serde(default)]
    pub weights: WeightsSpec,
}

fn default_tau() -> f64 {
    DEFAULT_TAU
}

fn default_h_min() -> f64 {
    DEFAULT_H_MIN
}

fn default_nu() -> f64 {
    DEFAULT_NU
}

impl Default for ScenarioOptions {
    fn default() -> Self {
        Self {
            rule: Rule::default(),
            tau: DEFAULT_TAU,
            h_min: DEFAULT_H_MIN,
            nu: DEFAULT_NU,
            weights: WeightsSpec::default(),
        }
    }
}

/// Scenario problems, each naming the offending field.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid structure at line {line}, column {column}: {message}")]
    Structure {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid frame: {0}")]
    InvalidFrame(Error),
    #[error("scenario has no sources")]
    NoSources,
    #[error("duplicate source id `{0}`")]
    DuplicateSource(String),
    #[error("{field}: unknown label `{label}`")]
    UnknownLabel { field: String, label: String },
    #[error("{field}: no value for label `{label}`")]
    MissingLabel { field: String, label: String },
    #[error("{field}: mass assigned to the empty set")]
    EmptySetMass { field: String },
    #[error("{field}: value {value} is outside [0, 1]")]
    ValueOutOfRange { field: String, value: f64 },
    #[error("sources[{source_id}]: masses sum to {sum}, expected 1")]
    InvalidMassSum { source_id: String, sum: f64 },
    #[error("options.weights: {0}")]
    InvalidWeights(String),
}

/// Parses and validates a scenario with the default sum tolerance.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    parse_scenario_with(text, SUM_TOLERANCE)
}

pub fn parse_scenario_with(text: &str, tolerance: f64) -> Result<Scenario, ScenarioError> {
    let scenario: Scenario = serde_json::from_str(text).map_err(|e| {
        let (line, column, message) = (e.line(), e.column(), e.to_string());
        match e.classify() {
            serde_json::error::Category::Data => ScenarioError::Structure {
                line,
                column,
                message,
            },
            _ => ScenarioError::Syntax {
                line,
                column,
                message,
            },
        }
    })?;
    scenario.build_sources(tolerance)?;
    scenario.report_options()?;
    Ok(scenario)
}

impl Scenario {
    pub fn build_frame(&self) -> Result<Frame, ScenarioError> {
        Frame::new(self.frame.iter().cloned()).map_err(ScenarioError::InvalidFrame)
    }

    /// Typed sources, validated against the frame.
    pub fn build_sources(&self, tolerance: f64) -> Result<Vec<Source>, ScenarioError> {
        let frame = self.build_frame()?;
        if self.sources.is_empty() {
            return Err(ScenarioError::NoSources);
        }
        let mut out: Vec<Source> = Vec::with_capacity(self.sources.len());
        for spec in &self.sources {
            if out.iter().any(|s| s.id == spec.id) {
                return Err(ScenarioError::DuplicateSource(spec.id.clone()));
            }
            out.push(spec.build(&frame, tolerance)?);
        }
        Ok(out)
    }

    pub fn report_options(&self) -> Result<ReportOptions, ScenarioError> {
        let o = &self.options;
        for (field, value) in [("tau", o.tau), ("h_min", o.h_min), ("nu", o.nu)] {
            check(&format!("options.{field}"), value)?;
        }
        let weights = match &o.weights {
            WeightsSpec::Named(NamedWeights::Uniform) => WeightPolicy::Uniform,
            WeightsSpec::Named(NamedWeights::Adaptive) => WeightPolicy::Adaptive,
            WeightsSpec::Explicit(map) => {
                for (id, &w) in map {
                    if !self.sources.iter().any(|s| &s.id == id) {
                        return Err(ScenarioError::InvalidWeights(format!(
                            "unknown source `{id}`"
                        )));
                    }
                    check(&format!("options.weights[{id}]"), w)?;
                }
                if let Some(s) = self.sources.iter().find(|s| !map.contains_key(&s.id)) {
                    return Err(ScenarioError::InvalidWeights(format!(
                        "no weight for source `{}`",
                        s.id
                    )));
                }
                WeightPolicy::Explicit(map.clone())
            }
        };
        Ok(ReportOptions {
            mode: o.rule.fusion_mode(),
            tau: o.tau,
            h_min: o.h_min,
            nu: o.nu,
            weights,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }
}

impl SourceSpec {
    fn build(&self, frame: &Frame, tolerance: f64) -> Result<Source, ScenarioError> {
        let field = |key: &str| format!("sources[{}].values[{key:?}]", self.id);
        match self.kind {
            SourceKind::Mass => {
                let mut assignments = Vec::with_capacity(self.values.len());
                for (expr, &value) in &self.values {
                    check(&field(expr), value)?;
                    if expr.trim().is_empty() || expr.trim() == "∅" {
                        return Err(ScenarioError::EmptySetMass { field: field(expr) });
                    }
                    let set = frame.parse_set(expr).map_err(|e| match e {
                        Error::UnknownLabel(label) => ScenarioError::UnknownLabel {
                            field: field(expr),
                            label,
                        },
                        other => ScenarioError::InvalidFrame(other),
                    })?;
                    assignments.push((set, value));
                }
                let sum: f64 = assignments.iter().map(|(_, v)| v).sum();
                if (sum - 1.0).abs() > tolerance {
                    return Err(ScenarioError::InvalidMassSum {
                        source_id: self.id.clone(),
                        sum,
                    });
                }
                let m = MassFunction::with_tolerance(frame, assignments, tolerance).map_err(
                    |e| match e {
                        Error::InvalidMassSum { sum } => ScenarioError::InvalidMassSum {
                            source_id: self.id.clone(),
                            sum,
                        },
                        Error::ValueOutOfRange { value, .. } => ScenarioError::ValueOutOfRange {
                            field: format!("sources[{}].values", self.id),
                            value,
                        },
                        other => ScenarioError::InvalidFrame(other),
                    },
                )?;
                Ok(Source::mass(self.id.clone(), m))
            }
            SourceKind::Distribution => {
                for (label, &value) in &self.values {
                    if frame.index_of(label).is_err() {
                        return Err(ScenarioError::UnknownLabel {
                            field: field(label),
                            label: label.clone(),
                        });
                    }
                    check(&field(label), value)?;
                }
                if let Some(label) = frame
                    .labels()
                    .iter()
                    .find(|l| !self.values.contains_key(*l))
                {
                    return Err(ScenarioError::MissingLabel {
                        field: format!("sources[{}].values", self.id),
                        label: label.clone(),
                    });
                }
                let pairs: Vec<(&str, f64)> =
                    self.values.iter().map(|(k, &v)| (k.as_str(), v)).collect();
                let d = PossibilityDistribution::new(frame, &pairs)
                    .map_err(ScenarioError::InvalidFrame)?;
                Ok(Source::distribution(self.id.clone(), d))
            }
        }
    }
}

fn check(field: &str, value: f64) -> Result<(), ScenarioError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(ScenarioError::ValueOutOfRange {
            field: field.to_string(),
            value,
        })
    }
}
