//! Exact decomposition of `n/p` into two unit fractions.
//!
//! * [`arith`]: gcd, primality, divisor enumeration on machine integers with
//!   overflow reported as an error.
//! * [`theorem`]: the closed form for prime `p ∤ n`, plus a checkable replay
//!   of why no other solutions exist.
//! * [`general`]: brute-force and divisor-identity solvers for any `n, m`.
//! * [`egyptian`]: splitting, greedy expansion, decomposition tables.
//! * [`cli`]: the `unitfrac` command line.

pub mod arith;
pub mod cli;
pub mod egyptian;
pub mod error;
pub mod general;
pub mod solution;
pub mod theorem;

pub use arith::PositiveInt;
pub use error::{Error, Result};
pub use general::GeneralInstance;
pub use solution::{OrderedPair, Regime, SolutionSet};
pub use theorem::{CaseTag, SolveInstance};
