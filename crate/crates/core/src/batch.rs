//! Powerset-wide sweeps: measure tables indexed by membership word and
//! exhaustive audits of the possibility axioms.
//!
//! These are the hot loops of the crate. Each comes in a `_with` form taking
//! an [`Execution`] so callers (and the benches) can pick the strategy; the
//! plain form uses the default.

use crate::evidence::{BeliefInterval, MassFunction};
use crate::exec::Execution;
use crate::possibility::{PossibilityAssessment, PossibilityDistribution};

/// `[Bel(A), Pl(A)]` for every subset, indexed by membership word.
pub fn interval_table(m: &MassFunction) -> Vec<BeliefInterval> {
    interval_table_with(m, Execution::default())
}

pub fn interval_table_with(m: &MassFunction, exec: Execution) -> Vec<BeliefInterval> {
    exec.map_range(m.frame().subset_count(), |bits| {
        m.interval_bits(bits as u32)
    })
}

/// `(Pos(A), Nec(A))` for every subset, indexed by membership word.
pub fn assessment_table(d: &PossibilityDistribution) -> Vec<PossibilityAssessment> {
    assessment_table_with(d, Execution::default())
}

pub fn assessment_table_with(
    d: &PossibilityDistribution,
    exec: Execution,
) -> Vec<PossibilityAssessment> {
    exec.map_range(d.frame().subset_count(), |bits| d.assess_bits(bits as u32))
}

/// Violation counts from an exhaustive sweep over all subset pairs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AxiomAudit {
    pub subsets: usize,
    pub pairs: usize,
    /// `Pos(∅) = 0`, and `Pos(Ω) = 1` when the distribution is normal.
    pub boundary: usize,
    /// `Pos(A ∪ B) = max(Pos(A), Pos(B))`.
    pub maxitivity: usize,
    /// `Nec(A ∩ B) = min(Nec(A), Nec(B))`.
    pub min_rule: usize,
    /// `Nec(A) = 1 - Pos(¬A)`.
    pub duality: usize,
    /// For distributions of height exactly one: `Nec(A) ≤ Pos(A)`, and `Nec(A) > 0`
    /// implies `Pos(A) = 1`.
    pub ordering: usize,
}

impl AxiomAudit {
    pub fn violations(&self) -> usize {
        self.boundary + self.maxitivity + self.min_rule + self.duality + self.ordering
    }

    pub fn is_clean(&self) -> bool {
        self.violations() == 0
    }

    fn merge(mut self, other: AxiomAudit) -> Self {
        self.subsets += other.subsets;
        self.pairs += other.pairs;
        self.boundary += other.boundary;
        self.maxitivity += other.maxitivity;
        self.min_rule += other.min_rule;
        self.duality += other.duality;
        self.ordering += other.ordering;
        self
    }
}

/// Checks every axiom on every subset pair, with exact comparisons.
pub fn audit_axioms(d: &PossibilityDistribution) -> AxiomAudit {
    audit_axioms_with(d, Execution::default())
}

pub fn audit_axioms_with(d: &PossibilityDistribution, exec: Execution) -> AxiomAudit {
    let full = d.frame().full_bits();
    let count = d.frame().subset_count();
    // the ordering laws are exact only when the height is exactly one
    let normal = d.height() == 1.0;
    let pos: Vec<f64> = (0..count).map(|a| d.pos_bits(a as u32)).collect();
    let nec: Vec<f64> = (0..count).map(|a| d.nec_bits(a as u32)).collect();

    let per_row = exec.map_range(count, |a| {
        let mut audit = AxiomAudit {
            subsets: 1,
            pairs: count,
            ..AxiomAudit::default()
        };
        if nec[a] != 1.0 - pos[!(a as u32) as usize & full as usize] {
            audit.duality += 1;
        }
        if normal && (nec[a] > pos[a] || (nec[a] > 0.0 && pos[a] != 1.0)) {
            audit.ordering += 1;
        }
        for b in 0..count {
            if pos[a | b] != pos[a].max(pos[b]) {
                audit.maxitivity += 1;
            }
            if nec[a & b] != nec[a].min(nec[b]) {
                audit.min_rule += 1;
            }
        }
        audit
    });

    let mut audit = per_row
        .into_iter()
        .fold(AxiomAudit::default(), AxiomAudit::merge);
    if pos[0] != 0.0 {
        audit.boundary += 1;
    }
    if normal && pos[full as usize] != 1.0 {
        audit.boundary += 1;
    }
    audit
}
