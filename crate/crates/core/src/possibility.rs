//! Possibility distributions and the dual possibility/necessity measures.
//!
//! On a finite frame a maxitive measure is fully determined by its values on
//! singletons, so a [`PossibilityDistribution`] stores one degree per
//! hypothesis and derives
//!
//! - `Pos(A) = max_{ω∈A} π(ω)` with `Pos(∅) = 0`,
//! - `Nec(A) = 1 - Pos(¬A)`.
//!
//! Fusion never renormalizes. A subnormal result (height below one) is the
//! conflict signal and is kept as is.

use serde::Serialize;

use crate::error::{check_unit, Error, Result};
use crate::evidence::SUM_TOLERANCE;
use crate::frame::{members_of, Frame, HypothesisSet};

/// A possibility degree for every hypothesis of a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PossibilityDistribution {
    frame: Frame,
    pi: Vec<f64>,
}

/// The pair `(Nec(A), Pos(A))` for one event.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PossibilityAssessment {
    pub possibility: f64,
    pub necessity: f64,
    /// `necessity <= possibility` (within tolerance). False marks a
    /// contradiction that was deliberately left unrepaired.
    pub consistent: bool,
}

impl PossibilityAssessment {
    pub fn new(possibility: f64, necessity: f64) -> Self {
        Self {
            possibility,
            necessity,
            consistent: necessity <= possibility + SUM_TOLERANCE,
        }
    }

    /// Epistemic uncertainty, `Pos(A) - Nec(A)`. Negative for inconsistent
    /// assessments.
    pub fn width(&self) -> f64 {
        self.possibility - self.necessity
    }
}

/// Result of [`fuse_conjunctive`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConjunctiveFusion {
    pub distribution: PossibilityDistribution,
    /// Height of the fused distribution, `max_ω min(π1(ω), π2(ω))`.
    pub consistency: f64,
}

impl PossibilityDistribution {
    /// Builds a distribution from `(label, value)` pairs. Every label of the
    /// frame must be given exactly once.
    pub fn new<S: AsRef<str>>(frame: &Frame, values: &[(S, f64)]) -> Result<Self> {
        let mut pi = vec![None; frame.len()];
        for (label, value) in values {
            let label = label.as_ref();
            let i = frame.index_of(label)?;
            check_unit(format!("π({label})"), *value)?;
            pi[i] = Some(*value);
        }
        let pi = pi
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MissingLabel(frame.labels()[i].clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            frame: frame.clone(),
            pi,
        })
    }

    /// Builds a distribution from values in frame order.
    pub fn from_values(frame: &Frame, values: Vec<f64>) -> Result<Self> {
        if values.len() != frame.len() {
            return Err(Error::LengthMismatch {
                expected: frame.len(),
                got: values.len(),
            });
        }
        for (i, &v) in values.iter().enumerate() {
            check_unit(format!("π({})", frame.labels()[i]), v)?;
        }
        Ok(Self {
            frame: frame.clone(),
            pi: values,
        })
    }

    /// Every hypothesis fully possible.
    pub fn ignorance(frame: &Frame) -> Self {
        Self {
            frame: frame.clone(),
            pi: vec![1.0; frame.len()],
        }
    }

    /// π = 1 on `set`, 0 elsewhere.
    pub fn indicator(set: &HypothesisSet) -> Self {
        let frame = set.frame().clone();
        let pi = (0..frame.len())
            .map(|i| if set.contains(i) { 1.0 } else { 0.0 })
            .collect();
        Self { frame, pi }
    }

    pub(crate) fn from_raw(frame: Frame, pi: Vec<f64>) -> Self {
        Self { frame, pi }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Degrees in frame order.
    pub fn values(&self) -> &[f64] {
        &self.pi
    }

    pub fn value(&self, label: &str) -> Result<f64> {
        Ok(self.pi[self.frame.index_of(label)?])
    }

    /// `max_ω π(ω)`.
    pub fn height(&self) -> f64 {
        self.pi.iter().copied().fold(0.0, f64::max)
    }

    /// Height equals one within tolerance.
    pub fn is_normal(&self) -> bool {
        (self.height() - 1.0).abs() <= SUM_TOLERANCE
    }

    pub fn pos(&self, a: &HypothesisSet) -> Result<f64> {
        self.frame.ensure_same(a.frame())?;
        Ok(self.pos_bits(a.bits()))
    }

    pub fn nec(&self, a: &HypothesisSet) -> Result<f64> {
        self.frame.ensure_same(a.frame())?;
        Ok(self.nec_bits(a.bits()))
    }

    pub fn assess(&self, a: &HypothesisSet) -> Result<PossibilityAssessment> {
        self.frame.ensure_same(a.frame())?;
        Ok(self.assess_bits(a.bits()))
    }

    pub(crate) fn pos_bits(&self, bits: u32) -> f64 {
        members_of(bits).map(|i| self.pi[i]).fold(0.0, f64::max)
    }

    pub(crate) fn nec_bits(&self, bits: u32) -> f64 {
        1.0 - self.pos_bits(!bits & self.frame.full_bits())
    }

    pub(crate) fn assess_bits(&self, bits: u32) -> PossibilityAssessment {
        PossibilityAssessment::new(self.pos_bits(bits), self.nec_bits(bits))
    }

    /// Discounts by source reliability: `π_w(ω) = max(π(ω), 1 - weight)`.
    /// Weight one leaves the source untouched, weight zero erases it.
    pub fn discount(&self, weight: f64) -> Result<Self> {
        check_unit("weight", weight)?;
        let floor = 1.0 - weight;
        Ok(Self {
            frame: self.frame.clone(),
            pi: self.pi.iter().map(|&p| p.max(floor)).collect(),
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.frame.ensure_same(&other.frame)?;
        Ok(Self {
            frame: self.frame.clone(),
            pi: self
                .pi
                .iter()
                .zip(&other.pi)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }
}

/// Pointwise minimum. The result is not renormalized; its height is the
/// consistency of the two sources.
pub fn fuse_conjunctive(
    d1: &PossibilityDistribution,
    d2: &PossibilityDistribution,
) -> Result<ConjunctiveFusion> {
    let distribution = d1.zip_with(d2, f64::min)?;
    let consistency = distribution.height();
    Ok(ConjunctiveFusion {
        distribution,
        consistency,
    })
}

/// Pointwise maximum.
pub fn fuse_disjunctive(
    d1: &PossibilityDistribution,
    d2: &PossibilityDistribution,
) -> Result<PossibilityDistribution> {
    d1.zip_with(d2, f64::max)
}

/// Per-event fusion on measure values:
/// `Pos12(A) = min(Pos1(A), Pos2(A))`, `Nec12(A) = max(Nec1(A), Nec2(A))`.
///
/// Under conflict this can give necessity above possibility. That state is
/// reported through `consistent = false` and never clamped.
pub fn fuse_measure_level(
    d1: &PossibilityDistribution,
    d2: &PossibilityDistribution,
    a: &HypothesisSet,
) -> Result<PossibilityAssessment> {
    fuse_measure_level_all(&[d1.clone(), d2.clone()], a)
}

/// Measure-level fusion over any number of sources.
pub fn fuse_measure_level_all(
    sources: &[PossibilityDistribution],
    a: &HypothesisSet,
) -> Result<PossibilityAssessment> {
    let first = sources.first().ok_or(Error::NoSources)?;
    let mut possibility = f64::INFINITY;
    let mut necessity = f64::NEG_INFINITY;
    for d in sources {
        first.frame.ensure_same(&d.frame)?;
        d.frame.ensure_same(a.frame())?;
        possibility = possibility.min(d.pos_bits(a.bits()));
        necessity = necessity.max(d.nec_bits(a.bits()));
    }
    Ok(PossibilityAssessment::new(possibility, necessity))
}

/// `h(d1, d2) = max_ω min(π1(ω), π2(ω))`. One when some hypothesis is fully
/// possible for both sources, near zero under near-total conflict.
pub fn consistency_degree(
    d1: &PossibilityDistribution,
    d2: &PossibilityDistribution,
) -> Result<f64> {
    Ok(fuse_conjunctive(d1, d2)?.consistency)
}
