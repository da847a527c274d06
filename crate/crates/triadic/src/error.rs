//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while analysing a recurrence.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A term with negative index was requested but |c| != 1, so backward
    /// extension leaves the integers.
    #[error("term at n={n} is not an integer: backward extension requires |c| = 1")]
    NonIntegralTerm { n: i64 },

    /// The characteristic polynomial has a repeated root, so the Binet
    /// decomposition (and everything downstream of it) is unavailable.
    #[error("characteristic polynomial has a repeated root (discriminant 0)")]
    DegenerateCharPoly,

    /// The prime divides c, so the companion matrix is singular mod p and no
    /// period exists.
    #[error("prime {p} divides the trailing coefficient; companion matrix is singular mod p")]
    InadmissiblePrime { p: u64 },

    /// Tried to invert a non-unit residue.
    #[error("residue {residue} is not a unit mod {modulus}")]
    NotAUnit { residue: String, modulus: String },

    /// Input outside the domain of the requested operation (e.g. p-adic log of
    /// a non-1-unit, exp of an argument with too small a valuation).
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested precision could not be certified with the working
    /// precision available.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// The Newton iteration cannot start or does not contract (series zero is
    /// not simple at the working precision).
    #[error("Hensel lifting failed: {0}")]
    HenselFails(String),

    /// A decision procedure could not reach a verdict at the precision used.
    #[error("indeterminate: {0}")]
    Indeterminate(String),

    /// The characteristic polynomial factors over Q, so the cubic-field
    /// hypotheses do not apply.
    #[error("characteristic polynomial is reducible over Q")]
    ReducibleCharPoly,

    /// The archimedean ratio test hit an exactly-degenerate configuration.
    #[error("archimedean ratio is degenerate for this sequence")]
    DegenerateRatio,

    /// A hypothesis required by a certification step failed outright.
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    /// No valuation law is available for the requested class.
    #[error("no law available: {0}")]
    NoLawAvailable(String),

    /// A computation exceeded its resource budget (e.g. period search cap).
    #[error("resource budget exceeded: {0}")]
    ResourceExhausted(String),

    /// Config-file syntax error.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Config file is missing a required key.
    #[error("missing required key: {key}")]
    MissingKey { key: String },

    /// Semantic validation of an input failed.
    #[error("invalid input: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
