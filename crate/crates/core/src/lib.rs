//! Exact continued fractions of `sqrt(f(n))` for power sums `f(n) = sum a_i b_i^n`.
//!
//! The crate is organized bottom-up:
//!
//! - [`form`]: the power-sum ring, with a text syntax (`2*4^n + 1`).
//! - [`surd`]: streaming continued fractions of `sqrt(D)`, convergents and
//!   fundamental Pell solutions.
//! - [`expansion`]: the truncated binomial expansion of `sqrt(f(n))` and a
//!   decision procedure for whether `f(2n+j)` is a square of a power sum up to
//!   a small remainder.
//! - [`growth`]: small Pell-type solutions, denominators of `f(n)/b^n`, and
//!   partial-quotient profiles, measured over ranges of `n`.
//! - [`harness`]: family runs, identity checks and CSV/JSON output used by the
//!   `powersum-cf` binary.
//!
//! Every statistic is computed from exact integers; comparisons against
//! irrational quantities go through [`interval`] enclosures.

pub mod arith;
pub mod error;
pub mod expansion;
pub mod form;
pub mod growth;
pub mod harness;
pub mod interval;
pub(crate) mod serde_big;
pub mod surd;

pub use error::{Error, Result};
pub use form::{normalize, Beta, FormClass, PowerSumForm};
pub use surd::{
    cf_sqrt, cf_stream, convergents, fundamental_pell, isqrt, period_length, CfExpansion,
    Convergent, PellSolution,
};
