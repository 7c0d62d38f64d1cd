//! Evidence fusion under Dempster-Shafer theory and possibility theory.
//!
//! The crate keeps conflict visible. Dempster's rule is implemented exactly,
//! with its conflict mass `K` exposed, next to possibilistic fusion by
//! pointwise min/max which never renormalizes. [`diagnostics::build_report`]
//! runs both on the same sources and produces a structured verdict that
//! refuses to decide under contradiction.
//!
//! ```
//! use evfuse::{dempster_combine, conflict, Frame, MassFunction};
//!
//! let frame = Frame::new(["M", "C", "T"])?;
//! let d1 = MassFunction::new(&frame, [(frame.parse_set("M")?, 0.99), (frame.parse_set("T")?, 0.01)])?;
//! let d2 = MassFunction::new(&frame, [(frame.parse_set("C")?, 0.99), (frame.parse_set("T")?, 0.01)])?;
//! assert!((conflict(&d1, &d2)? - 0.9999).abs() < 1e-12);
//! let m12 = dempster_combine(&d1, &d2)?;
//! assert_eq!(m12.mass(&frame.parse_set("T")?)?, 1.0);
//! # Ok::<(), evfuse::Error>(())
//! ```

pub mod batch;
pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod evidence;
pub mod exec;
pub mod frame;
pub mod possibility;
pub mod render;
pub mod scenario;
pub mod transform;

pub use diagnostics::{
    build_report, FusionMode, FusionReport, Recommendation, ReportOptions, Source,
};
pub use error::{Error, Result};
pub use evidence::{conflict, conjunctive_combine, dempster_combine, BeliefInterval, MassFunction};
pub use exec::Execution;
pub use frame::{Frame, HypothesisSet};
pub use possibility::{
    consistency_degree, fuse_conjunctive, fuse_disjunctive, fuse_measure_level,
    PossibilityAssessment, PossibilityDistribution,
};
pub use transform::{consonant_mass, contour, per_source_report};
