//! Multi-source fusion and conflict reporting.
//!
//! [`build_report`] runs both paradigms on the same sources: Dempster's rule
//! (with its conflict mass kept as an output) and possibilistic fusion (with
//! its consistency height kept as an output). Pairwise contradictions between
//! sources are listed explicitly, and the recommendation refuses to pick a
//! hypothesis when the evidence is contradictory or inconclusive.

use std::fmt;

use indexmap::IndexMap;
use serde::Serialize;

use crate::error::{check_unit, Error, Result};
use crate::evidence::{conjunctive_combine_all, MassFunction, SUM_TOLERANCE};
use crate::exec::Execution;
use crate::frame::Frame;
use crate::possibility::{
    fuse_conjunctive, fuse_disjunctive, fuse_measure_level_all, PossibilityAssessment,
    PossibilityDistribution,
};
use crate::render;
use crate::transform::{consonant_mass, contour, per_source_report};

/// Default contradiction threshold τ.
pub const DEFAULT_TAU: f64 = 0.5;
/// Default conflict floor on the consistency height.
pub const DEFAULT_H_MIN: f64 = 0.1;
/// Default necessity required to recommend a hypothesis.
pub const DEFAULT_NU: f64 = 0.5;

/// What a source contributes.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceEvidence {
    Mass(MassFunction),
    Distribution(PossibilityDistribution),
}

/// A named body of evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct Source {
    pub id: String,
    pub evidence: SourceEvidence,
}

impl Source {
    pub fn mass(id: impl Into<String>, m: MassFunction) -> Self {
        Self {
            id: id.into(),
            evidence: SourceEvidence::Mass(m),
        }
    }

    pub fn distribution(id: impl Into<String>, d: PossibilityDistribution) -> Self {
        Self {
            id: id.into(),
            evidence: SourceEvidence::Distribution(d),
        }
    }

    pub fn frame(&self) -> &Frame {
        match &self.evidence {
            SourceEvidence::Mass(m) => m.frame(),
            SourceEvidence::Distribution(d) => d.frame(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.evidence {
            SourceEvidence::Mass(_) => "mass",
            SourceEvidence::Distribution(_) => "distribution",
        }
    }

    /// The source as a possibility distribution: masses go through the
    /// contour transform, distributions are used as given.
    pub fn to_distribution(&self) -> PossibilityDistribution {
        match &self.evidence {
            SourceEvidence::Mass(m) => contour(m),
            SourceEvidence::Distribution(d) => d.clone(),
        }
    }

    /// The source as a mass function: distributions go through the
    /// consonant construction, which needs a normal distribution.
    pub fn to_mass(&self) -> Result<MassFunction> {
        match &self.evidence {
            SourceEvidence::Mass(m) => Ok(m.clone()),
            SourceEvidence::Distribution(d) => consonant_mass(d),
        }
    }

    /// Singleton assessments: `[Bel, Pl]` for masses, `[Nec, Pos]` for
    /// distributions.
    pub fn assess(&self) -> SourceAssessments {
        let per_hypothesis = match &self.evidence {
            SourceEvidence::Mass(m) => per_source_report(m),
            SourceEvidence::Distribution(d) => (0..d.frame().len())
                .map(|i| d.assess_bits(1 << i))
                .collect(),
        };
        SourceAssessments {
            id: self.id.clone(),
            frame: self.frame().clone(),
            per_hypothesis,
        }
    }
}

/// One source's singleton assessments, in frame order.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceAssessments {
    pub id: String,
    pub frame: Frame,
    pub per_hypothesis: Vec<PossibilityAssessment>,
}

/// Source `necessary_in` holds `hypothesis` necessary to a degree that
/// source `impossible_in` rules out.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contradiction {
    pub hypothesis: String,
    pub necessary_in: String,
    pub impossible_in: String,
    pub necessity: f64,
    pub possibility: f64,
    pub description: String,
}

impl Contradiction {
    pub fn gap(&self) -> f64 {
        self.necessity - self.possibility
    }
}

/// Flags `(A, i, j)` whenever `Nec_i(A) - Pos_j(A) > tau`, scanning every
/// singleton and every ordered pair of distinct sources.
pub fn detect_contradictions(
    assessments: &[SourceAssessments],
    tau: f64,
) -> Result<Vec<Contradiction>> {
    let Some(first) = assessments.first() else {
        return Ok(Vec::new());
    };
    for s in assessments {
        first.frame.ensure_same(&s.frame)?;
    }
    let mut found = Vec::new();
    for (h, label) in first.frame.labels().iter().enumerate() {
        for si in assessments {
            for sj in assessments {
                if std::ptr::eq(si, sj) {
                    continue;
                }
                let necessity = si.per_hypothesis[h].necessity;
                let possibility = sj.per_hypothesis[h].possibility;
                if necessity - possibility > tau {
                    found.push(Contradiction {
                        hypothesis: label.clone(),
                        necessary_in: si.id.clone(),
                        impossible_in: sj.id.clone(),
                        necessity,
                        possibility,
                        description: format!(
                            "{} holds {label} necessary to degree {} but {} finds it possible only to degree {}",
                            si.id,
                            render::number(necessity),
                            sj.id,
                            render::number(possibility),
                        ),
                    });
                }
            }
        }
    }
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SourceWeight {
    pub source: String,
    pub weight: f64,
}

/// Mean pairwise consistency of each distribution with all the others. A
/// lone source gets weight one.
pub fn consistency_weights(dists: &[PossibilityDistribution]) -> Result<Vec<f64>> {
    let first = dists.first().ok_or(Error::NoSources)?;
    for d in dists {
        first.frame().ensure_same(d.frame())?;
    }
    if dists.len() == 1 {
        return Ok(vec![1.0]);
    }
    let peers = (dists.len() - 1) as f64;
    Ok((0..dists.len())
        .map(|i| {
            let total: f64 = (0..dists.len())
                .filter(|&j| j != i)
                .map(|j| {
                    fuse_conjunctive(&dists[i], &dists[j])
                        .expect("frames checked")
                        .consistency
                })
                .sum();
            total / peers
        })
        .collect())
}

/// Adaptive source weights, `w_i = mean_{j≠i} h(d_i, d_j)`.
pub fn adaptive_weights(sources: &[Source]) -> Result<Vec<SourceWeight>> {
    let dists: Vec<PossibilityDistribution> = sources.iter().map(Source::to_distribution).collect();
    Ok(sources
        .iter()
        .zip(consistency_weights(&dists)?)
        .map(|(s, weight)| SourceWeight {
            source: s.id.clone(),
            weight,
        })
        .collect())
}

/// Distribution-level combination rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FusionRule {
    Conjunctive,
    Disjunctive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedFusion {
    pub distribution: PossibilityDistribution,
    /// Height of the fused distribution, present for conjunctive fusion.
    pub consistency: Option<f64>,
}

/// Discounts each source by its weight, then folds left with `rule`.
pub fn fuse_weighted(
    sources: &[PossibilityDistribution],
    weights: &[f64],
    rule: FusionRule,
) -> Result<WeightedFusion> {
    if sources.len() != weights.len() {
        return Err(Error::LengthMismatch {
            expected: sources.len(),
            got: weights.len(),
        });
    }
    let discounted = discount_all(sources, weights)?;
    let (first, rest) = discounted.split_first().ok_or(Error::NoSources)?;
    let mut acc = first.clone();
    for d in rest {
        acc = match rule {
            FusionRule::Conjunctive => fuse_conjunctive(&acc, d)?.distribution,
            FusionRule::Disjunctive => fuse_disjunctive(&acc, d)?,
        };
    }
    let consistency = (rule == FusionRule::Conjunctive).then(|| acc.height());
    Ok(WeightedFusion {
        distribution: acc,
        consistency,
    })
}

fn discount_all(
    sources: &[PossibilityDistribution],
    weights: &[f64],
) -> Result<Vec<PossibilityDistribution>> {
    sources
        .iter()
        .zip(weights)
        .map(|(d, &w)| d.discount(w))
        .collect()
}

/// How the possibilistic path combines sources in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FusionMode {
    #[default]
    Conjunctive,
    Disjunctive,
    /// Per-event min of possibility and max of necessity.
    MeasureLevel,
}

impl fmt::Display for FusionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FusionMode::Conjunctive => "conjunctive",
            FusionMode::Disjunctive => "disjunctive",
            FusionMode::MeasureLevel => "measure-level",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub enum WeightPolicy {
    /// Every source at full weight.
    #[default]
    Uniform,
    Adaptive,
    Explicit(IndexMap<String, f64>),
}

impl WeightPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            WeightPolicy::Uniform => "uniform",
            WeightPolicy::Adaptive => "adaptive",
            WeightPolicy::Explicit(_) => "explicit",
        }
    }

    pub fn resolve(&self, sources: &[Source]) -> Result<Vec<SourceWeight>> {
        match self {
            WeightPolicy::Uniform => Ok(sources
                .iter()
                .map(|s| SourceWeight {
                    source: s.id.clone(),
                    weight: 1.0,
                })
                .collect()),
            WeightPolicy::Adaptive => adaptive_weights(sources),
            WeightPolicy::Explicit(map) => {
                if let Some(unknown) = map.keys().find(|k| !sources.iter().any(|s| &s.id == *k)) {
                    return Err(Error::UnknownSource(unknown.clone()));
                }
                sources
                    .iter()
                    .map(|s| {
                        let weight = *map
                            .get(&s.id)
                            .ok_or_else(|| Error::MissingWeight(s.id.clone()))?;
                        check_unit(format!("weight of {}", s.id), weight)?;
                        Ok(SourceWeight {
                            source: s.id.clone(),
                            weight,
                        })
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    pub mode: FusionMode,
    pub tau: f64,
    pub h_min: f64,
    pub nu: f64,
    pub weights: WeightPolicy,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            mode: FusionMode::default(),
            tau: DEFAULT_TAU,
            h_min: DEFAULT_H_MIN,
            nu: DEFAULT_NU,
            weights: WeightPolicy::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Recommendation {
    Decide { hypothesis: String },
    InsufficientInformation,
    HardConflict,
}

impl fmt::Display for Recommendation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recommendation::Decide { hypothesis } => write!(f, "DECIDE({hypothesis})"),
            Recommendation::InsufficientInformation => f.write_str("INSUFFICIENT_INFORMATION"),
            Recommendation::HardConflict => f.write_str("HARD_CONFLICT"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportSettings {
    pub mode: FusionMode,
    pub tau: f64,
    pub h_min: f64,
    pub nu: f64,
    pub weights: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisAssessment {
    pub hypothesis: String,
    pub necessity: f64,
    pub possibility: f64,
    pub width: f64,
    pub consistent: bool,
}

impl HypothesisAssessment {
    fn new(hypothesis: &str, a: PossibilityAssessment) -> Self {
        Self {
            hypothesis: hypothesis.to_string(),
            necessity: a.necessity,
            possibility: a.possibility,
            width: a.width(),
            consistent: a.consistent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SourceReport {
    pub id: String,
    pub kind: &'static str,
    pub hypotheses: Vec<HypothesisAssessment>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FocalMass {
    pub set: Vec<String>,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DstHypothesis {
    pub hypothesis: String,
    pub mass: f64,
    pub belief: f64,
    pub plausibility: f64,
}

/// Outcome of the Dempster path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DstOutcome {
    /// Conflict mass `K` of the combined sources.
    pub conflict: f64,
    pub total_conflict: bool,
    /// Normalized focal elements; absent under total conflict.
    pub combined: Option<Vec<FocalMass>>,
    /// Singleton mass, belief and plausibility of the normalized result.
    pub hypotheses: Option<Vec<DstHypothesis>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisValue {
    pub hypothesis: String,
    pub value: f64,
}

/// Outcome of the possibilistic path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PossibilisticOutcome {
    pub mode: FusionMode,
    pub weights: Vec<SourceWeight>,
    /// Fused distribution; absent in measure-level mode, which works per
    /// event.
    pub distribution: Option<Vec<HypothesisValue>>,
    /// Height of the pointwise minimum of the weighted sources.
    pub consistency: f64,
    pub hypotheses: Vec<HypothesisAssessment>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FusionReport {
    pub frame: Vec<String>,
    pub settings: ReportSettings,
    pub per_source: Vec<SourceReport>,
    /// Absent when some source cannot be expressed as a mass function.
    pub dst: Option<DstOutcome>,
    /// Why `dst` is absent.
    pub dst_unavailable: Option<String>,
    pub possibilistic: PossibilisticOutcome,
    pub contradictions: Vec<Contradiction>,
    pub recommendation: Recommendation,
}

/// Runs both fusion paths over `sources` and assembles the full report.
/// Total conflict in the Dempster path is recorded, never raised.
pub fn build_report(sources: &[Source], options: &ReportOptions) -> Result<FusionReport> {
    build_report_with(sources, options, Execution::default())
}

pub fn build_report_with(
    sources: &[Source],
    options: &ReportOptions,
    exec: Execution,
) -> Result<FusionReport> {
    let first = sources.first().ok_or(Error::NoSources)?;
    let frame = first.frame().clone();
    for s in sources {
        frame.ensure_same(s.frame())?;
    }
    check_unit("tau", options.tau)?;
    check_unit("h_min", options.h_min)?;
    check_unit("nu", options.nu)?;
    let labels = frame.labels();

    let assessments = exec.map_slice(sources, Source::assess);
    let per_source = sources
        .iter()
        .zip(&assessments)
        .map(|(s, a)| SourceReport {
            id: s.id.clone(),
            kind: s.kind(),
            hypotheses: labels
                .iter()
                .zip(&a.per_hypothesis)
                .map(|(l, &x)| HypothesisAssessment::new(l, x))
                .collect(),
        })
        .collect();

    let (dst, dst_unavailable) = match dst_path(sources) {
        Ok(outcome) => (Some(outcome), None),
        Err(reason) => (None, Some(reason)),
    };

    let weights = options.weights.resolve(sources)?;
    let raw: Vec<PossibilityDistribution> = exec.map_slice(sources, Source::to_distribution);
    let weight_values: Vec<f64> = weights.iter().map(|w| w.weight).collect();
    let conjunctive = fuse_weighted(&raw, &weight_values, FusionRule::Conjunctive)?;
    let consistency = conjunctive
        .consistency
        .expect("conjunctive fusion reports its height");

    let distribution = match options.mode {
        FusionMode::Conjunctive => Some(conjunctive.distribution),
        FusionMode::Disjunctive => {
            Some(fuse_weighted(&raw, &weight_values, FusionRule::Disjunctive)?.distribution)
        }
        FusionMode::MeasureLevel => None,
    };
    let fused: Vec<PossibilityAssessment> = match &distribution {
        Some(d) => (0..frame.len()).map(|i| d.assess_bits(1 << i)).collect(),
        None => {
            let discounted = discount_all(&raw, &weight_values)?;
            (0..frame.len())
                .map(|i| fuse_measure_level_all(&discounted, &frame.singleton(i)?))
                .collect::<Result<_>>()?
        }
    };

    let contradictions = detect_contradictions(&assessments, options.tau)?;
    let recommendation = recommend(labels, &fused, consistency, &contradictions, options);

    Ok(FusionReport {
        frame: labels.to_vec(),
        settings: ReportSettings {
            mode: options.mode,
            tau: options.tau,
            h_min: options.h_min,
            nu: options.nu,
            weights: options.weights.name(),
        },
        per_source,
        dst,
        dst_unavailable,
        possibilistic: PossibilisticOutcome {
            mode: options.mode,
            weights,
            distribution: distribution.map(|d| {
                labels
                    .iter()
                    .zip(d.values())
                    .map(|(l, &value)| HypothesisValue {
                        hypothesis: l.clone(),
                        value,
                    })
                    .collect()
            }),
            consistency,
            hypotheses: labels
                .iter()
                .zip(&fused)
                .map(|(l, &a)| HypothesisAssessment::new(l, a))
                .collect(),
        },
        contradictions,
        recommendation,
    })
}

fn dst_path(sources: &[Source]) -> std::result::Result<DstOutcome, String> {
    let masses = sources
        .iter()
        .map(|s| s.to_mass().map_err(|e| format!("source {}: {e}", s.id)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let conj = conjunctive_combine_all(&masses).map_err(|e| e.to_string())?;
    let conflict = conj.conflict();
    let Ok(combined) = conj.normalize() else {
        return Ok(DstOutcome {
            conflict,
            total_conflict: true,
            combined: None,
            hypotheses: None,
        });
    };
    let frame = combined.frame();
    Ok(DstOutcome {
        conflict,
        total_conflict: false,
        combined: Some(
            combined
                .focal_bits()
                .iter()
                .map(|&(bits, mass)| FocalMass {
                    set: frame.labels_of(bits),
                    mass,
                })
                .collect(),
        ),
        hypotheses: Some(
            frame
                .labels()
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let interval = combined.interval_bits(1 << i);
                    DstHypothesis {
                        hypothesis: l.clone(),
                        mass: combined.mass_bits(1 << i),
                        belief: interval.lower,
                        plausibility: interval.upper,
                    }
                })
                .collect(),
        ),
    })
}

fn recommend(
    labels: &[String],
    fused: &[PossibilityAssessment],
    consistency: f64,
    contradictions: &[Contradiction],
    options: &ReportOptions,
) -> Recommendation {
    if consistency < options.h_min || !contradictions.is_empty() {
        return Recommendation::HardConflict;
    }
    let best = fused
        .iter()
        .map(|a| a.necessity)
        .fold(f64::NEG_INFINITY, f64::max);
    let leaders: Vec<usize> = (0..fused.len())
        .filter(|&i| best - fused[i].necessity <= SUM_TOLERANCE)
        .collect();
    match leaders.as_slice() {
        [only] if best >= options.nu => Recommendation::Decide {
            hypothesis: labels[*only].clone(),
        },
        _ => Recommendation::InsufficientInformation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mct() -> Frame {
        Frame::new(["M", "C", "T"]).unwrap()
    }

    fn mass(frame: &Frame, entries: &[(&str, f64)]) -> MassFunction {
        MassFunction::new(
            frame,
            entries
                .iter()
                .map(|&(e, v)| (frame.parse_set(e).unwrap(), v)),
        )
        .unwrap()
    }

    fn zadeh() -> Vec<Source> {
        let f = mct();
        vec![
            Source::mass("D1", mass(&f, &[("M", 0.99), ("T", 0.01)])),
            Source::mass("D2", mass(&f, &[("C", 0.99), ("T", 0.01)])),
        ]
    }

    fn assess_all(sources: &[Source]) -> Vec<SourceAssessments> {
        sources.iter().map(Source::assess).collect()
    }

    #[test]
    fn contradictions_in_zadeh_scenario() {
        let found = detect_contradictions(&assess_all(&zadeh()), DEFAULT_TAU).unwrap();
        let keys: Vec<(&str, &str, &str)> = found
            .iter()
            .map(|c| {
                (
                    c.hypothesis.as_str(),
                    c.necessary_in.as_str(),
                    c.impossible_in.as_str(),
                )
            })
            .collect();
        assert_eq!(keys, vec![("M", "D1", "D2"), ("C", "D2", "D1")]);
        assert_eq!(found[0].necessity, 0.99);
        assert_eq!(found[0].possibility, 0.0);
        assert_eq!(found[0].gap(), 0.99);
    }

    #[test]
    fn no_contradictions_without_disagreement() {
        let z = zadeh();
        let same = vec![
            z[0].clone(),
            Source {
                id: "D1b".into(),
                ..z[0].clone()
            },
        ];
        assert!(detect_contradictions(&assess_all(&same), DEFAULT_TAU)
            .unwrap()
            .is_empty());
        let f = mct();
        let ign = vec![
            Source::distribution("a", PossibilityDistribution::ignorance(&f)),
            Source::distribution("b", PossibilityDistribution::ignorance(&f)),
        ];
        assert!(detect_contradictions(&assess_all(&ign), DEFAULT_TAU)
            .unwrap()
            .is_empty());
        assert!(detect_contradictions(&[], DEFAULT_TAU).unwrap().is_empty());
    }

    #[test]
    fn contradiction_scan_rejects_mixed_frames() {
        let mut a = assess_all(&zadeh());
        let g = Frame::new(["x", "y", "z"]).unwrap();
        a.push(Source::distribution("g", PossibilityDistribution::ignorance(&g)).assess());
        assert_eq!(
            detect_contradictions(&a, DEFAULT_TAU).unwrap_err(),
            Error::FrameMismatch
        );
    }

    #[test]
    fn adaptive_weight_examples() {
        let w = adaptive_weights(&zadeh()).unwrap();
        assert_eq!(
            w.iter().map(|w| w.weight).collect::<Vec<_>>(),
            vec![0.01, 0.01]
        );

        let f = mct();
        let d = PossibilityDistribution::from_values(&f, vec![1.0, 0.4, 0.2]).unwrap();
        let three: Vec<Source> = ["a", "b", "c"]
            .iter()
            .map(|id| Source::distribution(*id, d.clone()))
            .collect();
        assert!(adaptive_weights(&three)
            .unwrap()
            .iter()
            .all(|w| w.weight == 1.0));
        assert_eq!(adaptive_weights(&three[..1]).unwrap()[0].weight, 1.0);
        assert_eq!(adaptive_weights(&[]).unwrap_err(), Error::NoSources);
    }

    #[test]
    fn adding_a_conflicting_source_lowers_weights() {
        let f = mct();
        let d = PossibilityDistribution::indicator(&f.set(&["M"]).unwrap());
        let mut sources: Vec<Source> = (0..3)
            .map(|i| Source::distribution(format!("s{i}"), d.clone()))
            .collect();
        let before = adaptive_weights(&sources).unwrap();
        sources.push(Source::distribution(
            "rebel",
            PossibilityDistribution::indicator(&f.set(&["C"]).unwrap()),
        ));
        let after = adaptive_weights(&sources).unwrap();
        for (b, a) in before.iter().zip(&after) {
            assert!(a.weight < b.weight);
        }
        assert_eq!(after[3].weight, 0.0);
    }

    #[test]
    fn weighted_fusion_examples() {
        let dists: Vec<PossibilityDistribution> =
            zadeh().iter().map(Source::to_distribution).collect();
        let f = mct();
        let conj = fuse_weighted(&dists, &[1.0, 1.0], FusionRule::Conjunctive).unwrap();
        assert_eq!(conj.distribution.values(), &[0.0, 0.0, 0.01]);
        assert_eq!(conj.consistency, Some(0.01));
        for rule in [FusionRule::Conjunctive, FusionRule::Disjunctive] {
            let zero = fuse_weighted(&dists, &[0.0, 0.0], rule).unwrap();
            assert_eq!(zero.distribution, PossibilityDistribution::ignorance(&f));
        }
        let disj = fuse_weighted(&dists, &[1.0, 1.0], FusionRule::Disjunctive).unwrap();
        assert_eq!(disj.consistency, None);
        let single = fuse_weighted(&dists[..1], &[1.0], FusionRule::Conjunctive).unwrap();
        assert_eq!(single.distribution, dists[0]);
        assert_eq!(
            fuse_weighted(&dists, &[1.0], FusionRule::Conjunctive).unwrap_err(),
            Error::LengthMismatch {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn zadeh_report() {
        let report = build_report(&zadeh(), &ReportOptions::default()).unwrap();
        let dst = report.dst.as_ref().unwrap();
        assert!((dst.conflict - 0.9999).abs() < 1e-12);
        assert!(!dst.total_conflict);
        let combined = dst.combined.as_ref().unwrap();
        assert_eq!(
            combined,
            &vec![FocalMass {
                set: vec!["T".into()],
                mass: 1.0
            }]
        );
        assert_eq!(report.possibilistic.consistency, 0.01);
        assert_eq!(report.contradictions.len(), 2);
        assert_eq!(report.recommendation, Recommendation::HardConflict);
        assert_eq!(report.per_source[0].hypotheses[0].necessity, 0.99);
    }

    #[test]
    fn agreeing_sources_decide() {
        let f = mct();
        let m = mass(&f, &[("M", 0.99), ("T", 0.01)]);
        let sources = vec![Source::mass("a", m.clone()), Source::mass("b", m)];
        let report = build_report(&sources, &ReportOptions::default()).unwrap();
        assert!((report.possibilistic.hypotheses[0].necessity - 0.99).abs() < 1e-15);
        assert!(report.contradictions.is_empty());
        assert_eq!(
            report.recommendation,
            Recommendation::Decide {
                hypothesis: "M".into()
            }
        );
    }

    #[test]
    fn vacuous_sources_are_inconclusive() {
        let f = mct();
        let sources = vec![
            Source::mass("a", MassFunction::vacuous(&f)),
            Source::mass("b", MassFunction::vacuous(&f)),
        ];
        let report = build_report(&sources, &ReportOptions::default()).unwrap();
        assert_eq!(report.dst.as_ref().unwrap().conflict, 0.0);
        assert!(report.contradictions.is_empty());
        assert_eq!(
            report.recommendation,
            Recommendation::InsufficientInformation
        );
    }

    #[test]
    fn ties_do_not_decide() {
        let f = mct();
        let d = PossibilityDistribution::from_values(&f, vec![1.0, 1.0, 0.0]).unwrap();
        let sources = vec![Source::distribution("a", d)];
        let options = ReportOptions {
            nu: 0.0,
            ..ReportOptions::default()
        };
        let report = build_report(&sources, &options).unwrap();
        assert_eq!(
            report.recommendation,
            Recommendation::InsufficientInformation
        );
    }

    #[test]
    fn total_conflict_is_recorded_not_raised() {
        let f = mct();
        let sources = vec![
            Source::mass("a", mass(&f, &[("M", 1.0)])),
            Source::mass("b", mass(&f, &[("C", 1.0)])),
        ];
        let report = build_report(&sources, &ReportOptions::default()).unwrap();
        let dst = report.dst.unwrap();
        assert!(dst.total_conflict);
        assert_eq!(dst.conflict, 1.0);
        assert!(dst.combined.is_none());
        assert_eq!(report.recommendation, Recommendation::HardConflict);
    }

    #[test]
    fn subnormal_distribution_source_skips_dst() {
        let f = mct();
        let sources = vec![
            Source::distribution(
                "a",
                PossibilityDistribution::from_values(&f, vec![0.5, 0.2, 0.1]).unwrap(),
            ),
            Source::distribution("b", PossibilityDistribution::ignorance(&f)),
        ];
        let report = build_report(&sources, &ReportOptions::default()).unwrap();
        assert!(report.dst.is_none());
        assert!(report.dst_unavailable.unwrap().contains("source a"));
    }

    #[test]
    fn measure_level_mode_keeps_inconsistency() {
        let f = mct();
        let sources = vec![
            Source::distribution(
                "D1",
                PossibilityDistribution::from_values(&f, vec![1.0, 0.0, 0.01]).unwrap(),
            ),
            Source::distribution(
                "D2",
                PossibilityDistribution::from_values(&f, vec![0.0, 1.0, 0.01]).unwrap(),
            ),
        ];
        let options = ReportOptions {
            mode: FusionMode::MeasureLevel,
            ..ReportOptions::default()
        };
        let report = build_report(&sources, &options).unwrap();
        let m = &report.possibilistic.hypotheses[0];
        assert_eq!(
            (m.possibility, m.necessity, m.consistent),
            (0.0, 0.99, false)
        );
        assert!(report.possibilistic.distribution.is_none());
    }

    #[test]
    fn explicit_weights_must_cover_sources() {
        let z = zadeh();
        let mut map = IndexMap::new();
        map.insert("D1".to_string(), 0.5);
        assert_eq!(
            WeightPolicy::Explicit(map.clone()).resolve(&z).unwrap_err(),
            Error::MissingWeight("D2".into())
        );
        map.insert("D2".to_string(), 1.0);
        map.insert("D3".to_string(), 1.0);
        assert_eq!(
            WeightPolicy::Explicit(map).resolve(&z).unwrap_err(),
            Error::UnknownSource("D3".into())
        );
    }

    #[test]
    fn report_rejects_empty_and_mixed_inputs() {
        assert_eq!(
            build_report(&[], &ReportOptions::default()).unwrap_err(),
            Error::NoSources
        );
        let mut sources = zadeh();
        let g = Frame::new(["x"]).unwrap();
        sources.push(Source::mass("g", MassFunction::vacuous(&g)));
        assert_eq!(
            build_report(&sources, &ReportOptions::default()).unwrap_err(),
            Error::FrameMismatch
        );
    }

    #[test]
    fn execution_strategies_give_identical_reports() {
        let options = ReportOptions {
            weights: WeightPolicy::Adaptive,
            ..ReportOptions::default()
        };
        let seq = build_report_with(&zadeh(), &options, Execution::Sequential).unwrap();
        let par = build_report_with(&zadeh(), &options, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
    }
}
