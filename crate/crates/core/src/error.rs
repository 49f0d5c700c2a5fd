// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the domain of the operation (zero where nonzero is
    /// required, an excluded parameter value, a singular curve...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A seed that fails the construction's hypotheses.
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    /// A runtime verification of a constructed object failed. This indicates a
    /// bug rather than bad input.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
