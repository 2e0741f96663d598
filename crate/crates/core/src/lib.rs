//! MIMO symbol detection under hardware impairments.
//!
//! Simulates a frequency-flat MIMO link whose RF front ends distort the
//! transmitted and received baseband signals, and provides detectors that
//! learn the distortion from the frame being detected:
//!
//! - **Coarse ML** — minimum-distance detection against an LS channel
//!   estimate, ignoring impairments. Cheap, biased, and the source of the
//!   noisy labels everything else trains on.
//! - **Model-driven** — a per-class Gaussian model of the distorted received
//!   signal fitted by expectation-maximization that also estimates the
//!   label-noise transition matrix of the coarse decisions.
//! - **Data-driven** — a small MLP trained on the model-driven labels with a
//!   warm-up period, loss-based sample selection, EMA soft targets, and a
//!   confidence-weighted corrected update. A naive variant trains the same
//!   network without the robust phase.
//!
//! The [`harness`] module wires these into a seeded Monte-Carlo
//! symbol-error-rate experiment driven by the `simulate` binary.

pub mod channel;
pub mod constellation;
pub mod emnl;
pub mod estimation;
pub mod harness;
pub mod impairments;
pub mod linalg;
pub mod mlp;
pub mod rng;
pub mod robust;

use std::path::PathBuf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("rank-deficient matrix: {0}")]
    RankDeficient(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
