//! p-adic valuation analysis for third-order integer linear recurrences.
//!
//! Given a sequence `x_n = a·x_{n-1} + b·x_{n-2} + c·x_{n-3}` with integer
//! initial values, this crate decides per prime whether `ν_p(x_n)` is
//! unbounded only on residue classes containing a twisted integral zero,
//! derives the explicit valuation law where one exists, certifies
//! twisted-integral-zero sets, and solves the factorial equation `x_n = m!`.
//!
//! The main entry points, in dependency order:
//!
//! * [`sequence`] — recurrence terms (exact, rational, modular), characteristic
//!   data, periods mod prime powers, finite differences.
//! * [`numeric`] — exact dyadic fixed-point arithmetic, certified real roots of
//!   the characteristic cubic.
//! * [`padic`] — truncated p-adic arithmetic: valuation, inverse, log, exp.
//! * [`series`] — the interpolating p-adic series of a residue class and its
//!   certified coefficients; Strassman counting and Hensel zeros.
//! * [`conjecture`] — the per-prime fails/holds decision and range scans.
//! * [`tiz`] — twisted-integral-zero certification (Galois, archimedean ratio,
//!   cube-root hypotheses) and exact zero search.
//! * [`law`] — explicit valuation laws per residue class, with verification.
//! * [`diophantine`] — factorial valuations, growth bounds, and the complete
//!   solution of `x_n = m!`.
//! * [`report`] — config parsing and the command layer used by the `triadic`
//!   binary and the examples.

pub mod error;
pub mod sequence;
pub mod numeric;
pub mod padic;
pub mod series;
pub mod conjecture;
pub mod tiz;
pub mod law;
pub mod diophantine;
pub mod report;

pub use error::{Error, Result};
pub use sequence::RecurrenceSpec;
