use thiserror::Error;

/// Errors raised by the measure and fusion layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a frame needs at least one hypothesis label")]
    EmptyFrame,
    #[error("hypothesis label at position {0} is empty")]
    EmptyLabel(usize),
    #[error("duplicate hypothesis label `{0}`")]
    DuplicateLabel(String),
    #[error("frame has {0} labels, at most {max} are supported", max = crate::frame::MAX_FRAME_SIZE)]
    FrameTooLarge(usize),
    #[error("unknown hypothesis label `{0}`")]
    UnknownLabel(String),
    #[error("hypothesis index {index} out of range for a frame of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("operands belong to different frames")]
    FrameMismatch,
    #[error("mass assigned to the empty set")]
    MassOnEmptySet,
    #[error("{what} = {value} is outside [0, 1]")]
    ValueOutOfRange { what: String, value: f64 },
    #[error("masses sum to {sum}, expected 1")]
    InvalidMassSum { sum: f64 },
    #[error("no value given for hypothesis `{0}`")]
    MissingLabel(String),
    #[error("total conflict (K = {conflict}): Dempster's rule is undefined")]
    TotalConflict { conflict: f64 },
    #[error("distribution is subnormal (height {height}), a normal distribution is required")]
    SubnormalDistribution { height: f64 },
    #[error("expected {expected} weights, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("at least one source is required")]
    NoSources,
    #[error("no weight given for source `{0}`")]
    MissingWeight(String),
    #[error("weight given for unknown source `{0}`")]
    UnknownSource(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_unit(what: impl Into<String>, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::ValueOutOfRange {
            what: what.into(),
            value,
        })
    }
}
