//! Dempster-Shafer evidence: mass functions, belief and plausibility,
//! conflict mass and Dempster's normalized combination.
//!
//! Mass functions are sparse: only focal elements (subsets with strictly
//! positive mass) are stored, ordered by membership word.

use std::collections::BTreeMap;

use crate::error::{check_unit, Error, Result};
use crate::exec::Execution;
use crate::frame::{Frame, HypothesisSet};

/// Tolerance for sum-to-one and normalization checks.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Dempster's rule is refused once the conflict reaches `1 - TOTAL_CONFLICT_MARGIN`.
pub const TOTAL_CONFLICT_MARGIN: f64 = 1e-9;

/// Closed interval `[lower, upper]` of support for an event, e.g.
/// `[Bel(A), Pl(A)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeliefInterval {
    pub lower: f64,
    pub upper: f64,
}

impl BeliefInterval {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        check_unit("lower bound", lower)?;
        check_unit("upper bound", upper)?;
        if lower > upper + SUM_TOLERANCE {
            return Err(Error::ValueOutOfRange {
                what: format!("lower bound above upper bound {upper}"),
                value: lower,
            });
        }
        Ok(Self { lower, upper })
    }

    /// Degree of epistemic uncertainty: `upper - lower`.
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// A basic probability assignment over a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    focal: Vec<(u32, f64)>,
}

impl MassFunction {
    /// Builds a mass function, summing duplicate subsets and dropping
    /// zero entries. Masses must sum to one within [`SUM_TOLERANCE`].
    pub fn new<I>(frame: &Frame, assignments: I) -> Result<Self>
    where
        I: IntoIterator<Item = (HypothesisSet, f64)>,
    {
        Self::with_tolerance(frame, assignments, SUM_TOLERANCE)
    }

    pub fn with_tolerance<I>(frame: &Frame, assignments: I, tolerance: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (HypothesisSet, f64)>,
    {
        let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
        for (set, value) in assignments {
            frame.ensure_same(set.frame())?;
            check_unit(format!("m({set})"), value)?;
            if set.is_empty() {
                return Err(Error::MassOnEmptySet);
            }
            *acc.entry(set.bits()).or_insert(0.0) += value;
        }
        let sum: f64 = acc.values().sum();
        if (sum - 1.0).abs() > tolerance {
            return Err(Error::InvalidMassSum { sum });
        }
        // merged duplicates may overshoot one by rounding; anything larger
        // already failed the sum check
        Ok(Self {
            frame: frame.clone(),
            focal: acc
                .into_iter()
                .filter(|&(_, v)| v > 0.0)
                .map(|(b, v)| (b, v.min(1.0)))
                .collect(),
        })
    }

    /// Total ignorance: all mass on the whole frame.
    pub fn vacuous(frame: &Frame) -> Self {
        Self {
            frame: frame.clone(),
            focal: vec![(frame.full_bits(), 1.0)],
        }
    }

    /// Assembles a mass function from already validated focal elements.
    pub(crate) fn from_sorted(frame: Frame, focal: Vec<(u32, f64)>) -> Self {
        debug_assert!(focal.windows(2).all(|w| w[0].0 < w[1].0));
        Self { frame, focal }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Focal elements as `(membership word, mass)`, ascending by word.
    pub fn focal_bits(&self) -> &[(u32, f64)] {
        &self.focal
    }

    pub fn focal_elements(&self) -> impl Iterator<Item = (HypothesisSet, f64)> + '_ {
        self.focal.iter().map(|&(bits, v)| {
            (
                self.frame
                    .set_from_bits(bits)
                    .expect("focal bits fit frame"),
                v,
            )
        })
    }

    pub fn mass(&self, set: &HypothesisSet) -> Result<f64> {
        self.frame.ensure_same(set.frame())?;
        Ok(self.mass_bits(set.bits()))
    }

    pub(crate) fn mass_bits(&self, bits: u32) -> f64 {
        self.focal
            .binary_search_by_key(&bits, |&(b, _)| b)
            .map(|i| self.focal[i].1)
            .unwrap_or(0.0)
    }

    /// Every focal element is a singleton.
    pub fn is_bayesian(&self) -> bool {
        self.focal.iter().all(|&(b, _)| b.count_ones() == 1)
    }

    /// Focal elements form a nested chain.
    pub fn is_consonant(&self) -> bool {
        let mut chain: Vec<u32> = self.focal.iter().map(|&(b, _)| b).collect();
        chain.sort_by_key(|b| b.count_ones());
        chain.windows(2).all(|w| w[0] & !w[1] == 0)
    }

    /// `Bel(A)`: total mass of focal elements inside `A`.
    pub fn belief(&self, a: &HypothesisSet) -> Result<f64> {
        self.frame.ensure_same(a.frame())?;
        Ok(self.belief_bits(a.bits()))
    }

    /// `Pl(A)`: total mass of focal elements meeting `A`.
    pub fn plausibility(&self, a: &HypothesisSet) -> Result<f64> {
        self.frame.ensure_same(a.frame())?;
        Ok(self.plausibility_bits(a.bits()))
    }

    /// `[Bel(A), Pl(A)]`.
    pub fn interval(&self, a: &HypothesisSet) -> Result<BeliefInterval> {
        self.frame.ensure_same(a.frame())?;
        Ok(self.interval_bits(a.bits()))
    }

    // folds start at +0.0; `Sum` for f64 yields -0.0 on empty input
    pub(crate) fn belief_bits(&self, bits: u32) -> f64 {
        self.focal
            .iter()
            .filter(|&&(b, _)| b & !bits == 0)
            .fold(0.0, |acc, &(_, v)| acc + v)
    }

    pub(crate) fn plausibility_bits(&self, bits: u32) -> f64 {
        self.focal
            .iter()
            .filter(|&&(b, _)| b & bits != 0)
            .fold(0.0, |acc, &(_, v)| acc + v)
    }

    pub(crate) fn interval_bits(&self, bits: u32) -> BeliefInterval {
        BeliefInterval {
            lower: self.belief_bits(bits),
            upper: self.plausibility_bits(bits),
        }
    }
}

/// Unnormalized conjunctive combination. The entry on ∅ is the conflict
/// mass `K` and is always present, even when zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjunctiveMass {
    frame: Frame,
    masses: Vec<(u32, f64)>,
}

impl ConjunctiveMass {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// `(membership word, mass)` pairs ascending by word; the first entry
    /// is ∅.
    pub fn masses(&self) -> &[(u32, f64)] {
        &self.masses
    }

    pub fn mass(&self, set: &HypothesisSet) -> Result<f64> {
        self.frame.ensure_same(set.frame())?;
        Ok(self
            .masses
            .iter()
            .find(|&&(b, _)| b == set.bits())
            .map_or(0.0, |&(_, v)| v))
    }

    /// Conflict mass `K`, the mass that landed on ∅.
    pub fn conflict(&self) -> f64 {
        self.masses[0].1
    }

    pub fn is_total_conflict(&self) -> bool {
        self.conflict() >= 1.0 - TOTAL_CONFLICT_MARGIN
    }

    /// Dempster normalization: drop ∅ and rescale the rest by `1 - K`.
    ///
    /// The divisor is the sum of the surviving masses, which equals `1 - K`
    /// but avoids the cancellation in `1.0 - K` when `K` is close to one.
    pub fn normalize(&self) -> Result<MassFunction> {
        let conflict = self.conflict();
        if self.is_total_conflict() {
            return Err(Error::TotalConflict { conflict });
        }
        let kept = &self.masses[1..];
        let denom: f64 = kept.iter().map(|&(_, v)| v).sum();
        let focal = kept
            .iter()
            .filter(|&&(_, v)| v > 0.0)
            .map(|&(b, v)| (b, v / denom))
            .collect();
        Ok(MassFunction::from_sorted(self.frame.clone(), focal))
    }
}

/// Conflict mass `K = Σ_{B∩C=∅} m1(B)·m2(C)`.
pub fn conflict(m1: &MassFunction, m2: &MassFunction) -> Result<f64> {
    m1.frame.ensure_same(&m2.frame)?;
    let (left, right) = canonical_pair(&m1.focal, &m2.focal);
    let mut k = 0.0;
    for &(b, vb) in left {
        for &(c, vc) in right {
            if b & c == 0 {
                k += vb * vc;
            }
        }
    }
    Ok(k)
}

/// Conjunctive combination before normalization.
pub fn conjunctive_combine(m1: &MassFunction, m2: &MassFunction) -> Result<ConjunctiveMass> {
    conjunctive_combine_with(m1, m2, Execution::default())
}

pub fn conjunctive_combine_with(
    m1: &MassFunction,
    m2: &MassFunction,
    exec: Execution,
) -> Result<ConjunctiveMass> {
    m1.frame.ensure_same(&m2.frame)?;
    Ok(ConjunctiveMass {
        frame: m1.frame.clone(),
        masses: conjunctive_raw(&m1.focal, &m2.focal, exec),
    })
}

/// Conjunctive combination of any number of sources, folded left to right.
pub fn conjunctive_combine_all(sources: &[MassFunction]) -> Result<ConjunctiveMass> {
    let (first, rest) = sources.split_first().ok_or(Error::NoSources)?;
    let mut masses = first.focal.clone();
    for m in rest {
        first.frame.ensure_same(&m.frame)?;
        masses = conjunctive_raw(&masses, &m.focal, Execution::default());
    }
    if !matches!(masses.first(), Some(&(0, _))) {
        masses.insert(0, (0, 0.0));
    }
    Ok(ConjunctiveMass {
        frame: first.frame.clone(),
        masses,
    })
}

/// Dempster's rule of combination.
pub fn dempster_combine(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    conjunctive_combine(m1, m2)?.normalize()
}

/// Products of every focal pair, accumulated per intersection. Rows are
/// produced in parallel but summed in row-major order, so the result does
/// not depend on the execution strategy. The ∅ entry is always present.
type Focal = [(u32, f64)];

/// Orders two operands so that accumulation order, and so the rounding,
/// is the same for `(a, b)` and `(b, a)`.
fn canonical_pair<'a>(a: &'a Focal, b: &'a Focal) -> (&'a Focal, &'a Focal) {
    let key = |s: &Focal| s.iter().map(|&(x, v)| (x, v.to_bits())).collect::<Vec<_>>();
    if key(a) <= key(b) {
        (a, b)
    } else {
        (b, a)
    }
}

fn conjunctive_raw(a: &[(u32, f64)], b: &[(u32, f64)], exec: Execution) -> Vec<(u32, f64)> {
    let (a, b) = canonical_pair(a, b);
    let rows: Vec<Vec<(u32, f64)>> = exec.map_slice(a, |&(x, vx)| {
        b.iter().map(|&(y, vy)| (x & y, vx * vy)).collect()
    });
    let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
    acc.insert(0, 0.0);
    for (bits, v) in rows.into_iter().flatten() {
        *acc.entry(bits).or_insert(0.0) += v;
    }
    acc.into_iter().collect()
}
