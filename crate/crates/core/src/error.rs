use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Input problems (bad instance, overflow, out-of-range rationals) are kept
/// apart from internal consistency failures so the CLI can map them onto
/// different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{quantity} must be a positive integer, got 0")]
    Zero { quantity: &'static str },

    #[error("n must be at least 2 for the closed form, got n = {n}; use the general solver for n = 1")]
    CoefficientTooSmall { n: u64 },

    #[error("p = {p} is not prime")]
    NotPrime { p: u64 },

    #[error("p = {p} divides n = {n}; the closed form needs gcd(n, p) = 1, use the general solver (`oracle`, `count`) instead")]
    NotCoprime { n: u64, p: u64 },

    #[error("arithmetic overflow while computing {quantity}")]
    Overflow { quantity: &'static str },

    #[error("({x}, {y}) does not solve {n}xy = {p}(x + y)")]
    NotASolution { n: u64, p: u64, x: u64, y: u64 },

    #[error("rational {num}/{den} is outside the greedy domain 0 < q < 2")]
    OutOfGreedyRange { num: String, den: String },

    #[error("proof replay failed at `{step}`: {detail}")]
    ProofReplay { step: &'static str, detail: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that point at a bug rather than at bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::ProofReplay { .. } | Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
