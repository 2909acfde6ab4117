//! Error type shared by all solvers in the crate.

use thiserror::Error;

/// Errors produced by parameter handling, eigenvalue solvers, time steppers,
/// and the threshold search.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates a hard precondition (non-positive rate, empty
    /// interval, bad grid size).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Root finding for the carrying density u* failed; the growth function
    /// is inconsistent with the stated assumptions.
    #[error("root finding failed: {0}")]
    RootFind(String),

    /// The k-y system has no root compatible with a positive eigenfunction
    /// in the scanned region. Should not occur for admissible parameters.
    #[error("eigen solve failed: {0}")]
    EigenSolve(String),

    /// An iterative solver ran out of its iteration budget.
    #[error("{what} did not converge within {iterations} iterations ({detail})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        detail: String,
    },

    /// Time step too large for the explicit part of a splitting.
    #[error("stability violation: {0}")]
    Stability(String),

    /// A simulation step kept getting rejected below the minimum step size.
    #[error("step rejected below dt_min at t = {t}: {reason}")]
    StepRejection { t: f64, reason: String },

    /// The threshold bisection bracket does not straddle the threshold.
    #[error("bracket endpoints ({lo}, {hi}) both produced verdict {verdict}")]
    BracketNotStraddling { lo: f64, hi: f64, verdict: String },

    /// Config file parse error with a 1-based line number.
    #[error("config parse error at line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
