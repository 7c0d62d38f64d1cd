//! Bridges between mass functions and possibility distributions.

use crate::error::{Error, Result};
use crate::evidence::{MassFunction, SUM_TOLERANCE};
use crate::possibility::{PossibilityAssessment, PossibilityDistribution};

/// Contour transform: `π(ω) = Pl({ω})`.
pub fn contour(m: &MassFunction) -> PossibilityDistribution {
    let frame = m.frame().clone();
    let pi = (0..frame.len())
        .map(|i| m.plausibility_bits(1 << i))
        .collect();
    PossibilityDistribution::from_raw(frame, pi)
}

/// Consonant mass function whose plausibility is `d`'s possibility measure.
///
/// Distinct levels `1 = v1 > v2 > ... > vk` give nested focal elements
/// `{ω : π(ω) ≥ vi}` with mass `vi - v(i+1)`, taking `v(k+1) = 0`. Values
/// within [`SUM_TOLERANCE`] of each other share a level.
pub fn consonant_mass(d: &PossibilityDistribution) -> Result<MassFunction> {
    if !d.is_normal() {
        return Err(Error::SubnormalDistribution { height: d.height() });
    }
    let pi = d.values();
    let mut order: Vec<usize> = (0..pi.len()).collect();
    order.sort_by(|&a, &b| pi[b].total_cmp(&pi[a]).then(a.cmp(&b)));

    // (cumulative member word, level value), highest level first
    let mut levels: Vec<(u32, f64)> = Vec::new();
    let mut members = 0u32;
    for &i in &order {
        match levels.last_mut() {
            Some((bits, level)) if *level - pi[i] <= SUM_TOLERANCE => {
                *bits |= 1 << i;
                members = *bits;
            }
            _ => {
                members |= 1 << i;
                levels.push((members, pi[i]));
            }
        }
    }

    let mut focal: Vec<(u32, f64)> = levels
        .iter()
        .enumerate()
        .map(|(k, &(bits, level))| {
            let below = levels.get(k + 1).map_or(0.0, |&(_, v)| v);
            (bits, level - below)
        })
        .filter(|&(_, mass)| mass > 0.0)
        .collect();
    focal.sort_by_key(|&(bits, _)| bits);
    Ok(MassFunction::from_sorted(d.frame().clone(), focal))
}

/// Per-hypothesis assessment of one source: possibility `Pl({ω})` and
/// necessity `Bel({ω})`, in frame order.
///
/// For Bayesian masses both coincide with the mass itself. For general
/// masses necessity is taken to be belief.
pub fn per_source_report(m: &MassFunction) -> Vec<PossibilityAssessment> {
    (0..m.frame().len())
        .map(|i| {
            let interval = m.interval_bits(1 << i);
            PossibilityAssessment::new(interval.upper, interval.lower)
        })
        .collect()
}
