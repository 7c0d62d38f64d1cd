//! Generators and brute-force oracles shared by the integration tests.
//!
//! The oracles work on dense `2^n` tables indexed by membership word and
//! never call into the library's combination or measure code.

#![allow(dead_code)]

use evfuse::{Frame, MassFunction, PossibilityDistribution};
use rand::Rng;

pub fn frame(n: usize) -> Frame {
    Frame::new((0..n).map(|i| format!("h{i}"))).expect("valid frame")
}

/// Random mass function with up to `max_focal` focal elements.
pub fn random_mass<R: Rng>(rng: &mut R, frame: &Frame, max_focal: usize) -> MassFunction {
    let full = frame.full_bits();
    let count = rng.gen_range(1..=max_focal);
    let mut entries: Vec<(u32, f64)> = (0..count)
        .map(|_| (rng.gen_range(1..=full), rng.gen_range(0.01..1.0)))
        .collect();
    let total: f64 = entries.iter().map(|&(_, v)| v).sum();
    for e in &mut entries {
        e.1 /= total;
    }
    mass_from_bits(frame, &entries)
}

/// Random mass function whose focal elements all contain `anchor`, so any
/// two such masses have zero conflict.
pub fn anchored_mass<R: Rng>(
    rng: &mut R,
    frame: &Frame,
    anchor: usize,
    max_focal: usize,
) -> MassFunction {
    let full = frame.full_bits();
    let count = rng.gen_range(1..=max_focal);
    let mut entries: Vec<(u32, f64)> = (0..count)
        .map(|_| {
            (
                rng.gen_range(0..=full) | (1 << anchor),
                rng.gen_range(0.01..1.0),
            )
        })
        .collect();
    let total: f64 = entries.iter().map(|&(_, v)| v).sum();
    for e in &mut entries {
        e.1 /= total;
    }
    mass_from_bits(frame, &entries)
}

pub fn mass_from_bits(frame: &Frame, entries: &[(u32, f64)]) -> MassFunction {
    let sets = entries
        .iter()
        .map(|&(bits, v)| (frame.set_from_bits(bits).expect("subset of frame"), v));
    MassFunction::new(frame, sets).expect("valid mass function")
}

/// Random distribution with arbitrary values in `[0, 1]`; normal when
/// `normal` is set.
pub fn random_distribution<R: Rng>(
    rng: &mut R,
    frame: &Frame,
    normal: bool,
) -> PossibilityDistribution {
    let n = frame.len();
    let mut values: Vec<f64> = (0..n)
        .map(|_| match rng.gen_range(0..10) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.gen::<f64>(),
        })
        .collect();
    if normal {
        values[rng.gen_range(0..n)] = 1.0;
    }
    PossibilityDistribution::from_values(frame, values).expect("values in range")
}

/// Random normal distribution whose values are multiples of `2^-bits`, so
/// level differences and their partial sums are exact in binary floating point.
pub fn dyadic_distribution<R: Rng>(
    rng: &mut R,
    frame: &Frame,
    bits: u32,
) -> PossibilityDistribution {
    let n = frame.len();
    let scale = (1u64 << bits) as f64;
    let levels = 1u64 << bits;
    let mut values: Vec<f64> = (0..n)
        .map(|_| rng.gen_range(0..=levels) as f64 / scale)
        .collect();
    values[rng.gen_range(0..n)] = 1.0;
    PossibilityDistribution::from_values(frame, values).expect("values in range")
}

/// Dense mass table of length `2^n`.
pub fn dense(m: &MassFunction) -> Vec<f64> {
    let mut table = vec![0.0; m.frame().subset_count()];
    for (set, v) in m.focal_elements() {
        table[set.bits() as usize] += v;
    }
    table
}

/// Dempster's rule by direct double enumeration over all subset pairs.
/// Returns `(K, normalized table)`; the table is `None` under total conflict.
pub fn brute_force_dempster(m1: &MassFunction, m2: &MassFunction) -> (f64, Option<Vec<f64>>) {
    let a = dense(m1);
    let b = dense(m2);
    let size = a.len();
    let mut joint = vec![0.0; size];
    for x in 0..size {
        for y in 0..size {
            joint[x & y] += a[x] * b[y];
        }
    }
    let k = joint[0];
    if 1.0 - k <= 1e-12 {
        return (k, None);
    }
    let mut out: Vec<f64> = joint.iter().map(|v| v / (1.0 - k)).collect();
    out[0] = 0.0;
    (k, Some(out))
}

/// `Pos` over every subset from the raw values, by maximum over members.
pub fn brute_force_pos(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    (0..1usize << n)
        .map(|bits| {
            (0..n)
                .filter(|i| bits & (1 << i) != 0)
                .map(|i| values[i])
                .fold(0.0, f64::max)
        })
        .collect()
}

/// `Bel` and `Pl` over every subset from a dense mass table.
pub fn brute_force_bel_pl(table: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let size = table.len();
    let mut bel = vec![0.0; size];
    let mut pl = vec![0.0; size];
    for a in 0..size {
        for (b, &v) in table.iter().enumerate() {
            if b != 0 && b & !a == 0 {
                bel[a] += v;
            }
            if b & a != 0 {
                pl[a] += v;
            }
        }
    }
    (bel, pl)
}
