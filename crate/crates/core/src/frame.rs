//! Frames of discernment and the subset algebra over them.
//!
//! A [`Frame`] is an ordered, finite set of mutually exclusive hypotheses.
//! Subsets are [`HypothesisSet`]s encoded as membership words: bit `i` set
//! means label `i` belongs to the set. Every binary operation checks that
//! both operands come from the same frame.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported frame. Measures are evaluated by enumerating the
/// powerset, so `2^20` subsets is the ceiling.
pub const MAX_FRAME_SIZE: usize = 20;

/// Ordered set of distinct hypothesis labels. Cheap to clone.
#[derive(Clone)]
pub struct Frame {
    labels: Arc<[String]>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel(i));
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: frames hold at least one label.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels.get(index).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Membership word of the whole frame.
    pub fn full_bits(&self) -> u32 {
        (1u32 << self.len()) - 1
    }

    /// Number of subsets, `2^n`.
    pub fn subset_count(&self) -> usize {
        1usize << self.len()
    }

    pub fn empty_set(&self) -> HypothesisSet {
        HypothesisSet::raw(self.clone(), 0)
    }

    /// The whole frame, Ω.
    pub fn full_set(&self) -> HypothesisSet {
        HypothesisSet::raw(self.clone(), self.full_bits())
    }

    pub fn singleton(&self, index: usize) -> Result<HypothesisSet> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange {
                index,
                size: self.len(),
            });
        }
        Ok(HypothesisSet::raw(self.clone(), 1 << index))
    }

    pub fn set_from_bits(&self, bits: u32) -> Result<HypothesisSet> {
        if bits & !self.full_bits() != 0 {
            let index = (31 - (bits & !self.full_bits()).leading_zeros()) as usize;
            return Err(Error::IndexOutOfRange {
                index,
                size: self.len(),
            });
        }
        Ok(HypothesisSet::raw(self.clone(), bits))
    }

    /// Builds a set from labels. Repeated labels are harmless.
    pub fn set<S: AsRef<str>>(&self, labels: &[S]) -> Result<HypothesisSet> {
        let mut bits = 0;
        for label in labels {
            bits |= 1 << self.index_of(label.as_ref())?;
        }
        Ok(HypothesisSet::raw(self.clone(), bits))
    }

    /// Parses a union expression such as `"M|T"`. Whitespace around labels
    /// is ignored.
    pub fn parse_set(&self, expr: &str) -> Result<HypothesisSet> {
        let labels: Vec<&str> = expr.split('|').map(str::trim).collect();
        self.set(&labels)
    }

    /// All `2^n` subsets in ascending membership-word order, from ∅ to Ω.
    pub fn subsets(&self) -> Subsets {
        Subsets {
            frame: self.clone(),
            next: 0,
            end: self.subset_count() as u64,
        }
    }

    pub(crate) fn same_as(&self, other: &Frame) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }

    pub(crate) fn ensure_same(&self, other: &Frame) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    /// Renders a membership word as `{M,T}` or `∅`.
    pub(crate) fn format_bits(&self, bits: u32) -> String {
        if bits == 0 {
            return "∅".to_string();
        }
        let names: Vec<&str> = members_of(bits).map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub(crate) fn labels_of(&self, bits: u32) -> Vec<String> {
        members_of(bits).map(|i| self.labels[i].clone()).collect()
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Frame {}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Frame").field(&self.labels).finish()
    }
}

pub(crate) fn members_of(bits: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| bits & (1 << i) != 0)
}

/// A subset of a frame.
#[derive(Clone, PartialEq, Eq)]
pub struct HypothesisSet {
    frame: Frame,
    bits: u32,
}

impl HypothesisSet {
    fn raw(frame: Frame, bits: u32) -> Self {
        Self { frame, bits }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == self.frame.full_bits()
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.frame.len() && self.bits & (1 << index) != 0
    }

    /// Member indices in ascending order.
    pub fn members(&self) -> impl Iterator<Item = usize> {
        members_of(self.bits)
    }

    pub fn union(&self, other: &HypothesisSet) -> Result<HypothesisSet> {
        self.frame.ensure_same(&other.frame)?;
        Ok(Self::raw(self.frame.clone(), self.bits | other.bits))
    }

    pub fn intersection(&self, other: &HypothesisSet) -> Result<HypothesisSet> {
        self.frame.ensure_same(&other.frame)?;
        Ok(Self::raw(self.frame.clone(), self.bits & other.bits))
    }

    /// Complement relative to the owning frame.
    pub fn complement(&self) -> HypothesisSet {
        Self::raw(self.frame.clone(), !self.bits & self.frame.full_bits())
    }

    pub fn is_subset_of(&self, other: &HypothesisSet) -> Result<bool> {
        self.frame.ensure_same(&other.frame)?;
        Ok(self.bits & !other.bits == 0)
    }

    pub fn is_disjoint(&self, other: &HypothesisSet) -> Result<bool> {
        self.frame.ensure_same(&other.frame)?;
        Ok(self.bits & other.bits == 0)
    }

    pub fn labels(&self) -> Vec<String> {
        self.frame.labels_of(self.bits)
    }
}

impl fmt::Display for HypothesisSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.frame.format_bits(self.bits))
    }
}

impl fmt::Debug for HypothesisSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HypothesisSet({self})")
    }
}

/// Iterator over every subset of a frame. See [`Frame::subsets`].
pub struct Subsets {
    frame: Frame,
    next: u64,
    end: u64,
}

impl Iterator for Subsets {
    type Item = HypothesisSet;

    fn next(&mut self) -> Option<HypothesisSet> {
        if self.next >= self.end {
            return None;
        }
        let bits = self.next as u32;
        self.next += 1;
        Some(HypothesisSet::raw(self.frame.clone(), bits))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Subsets {}
