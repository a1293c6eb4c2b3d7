//! Solution pairs and solution sets of `n·x·y = m·(x + y)`, shared by the
//! closed-form solver and the general oracles.

use std::fmt;

use crate::arith::{checked_add, checked_mul, PositiveInt};
use crate::error::Result;
use crate::theorem::CaseTag;

/// One ordered solution `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedPair {
    pub x: PositiveInt,
    pub y: PositiveInt,
}

impl OrderedPair {
    pub fn new(x: PositiveInt, y: PositiveInt) -> Self {
        OrderedPair { x, y }
    }

    /// Builds a pair from raw integers, rejecting zeros.
    pub fn from_raw(x: u64, y: u64) -> Result<Self> {
        Ok(OrderedPair {
            x: PositiveInt::named(x, "x")?,
            y: PositiveInt::named(y, "y")?,
        })
    }

    pub fn swapped(self) -> Self {
        OrderedPair { x: self.y, y: self.x }
    }

    pub fn as_tuple(self) -> (u64, u64) {
        (self.x.get(), self.y.get())
    }
}

impl fmt::Display for OrderedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Both sides of `n·x·y = m·(x + y)`, evaluated exactly.
pub fn equation_sides(n: u64, m: u64, x: u64, y: u64) -> Result<(u128, u128)> {
    let lhs = checked_mul(checked_mul(n as u128, x as u128, "n·x·y")?, y as u128, "n·x·y")?;
    let sum = checked_add(x as u128, y as u128, "x + y")?;
    let rhs = checked_mul(m as u128, sum, "m·(x + y)")?;
    Ok((lhs, rhs))
}

/// Whether a set carries the closed-form guarantees or is a plain oracle result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `(n, m)` meets the closed-form hypotheses and this is its case.
    Theorem(CaseTag),
    /// Outside the hypotheses (n = 1, composite m, or m | n); no count law applies.
    General,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Theorem(tag) => tag.label(),
            Regime::General => "General",
        }
    }
}

/// Every ordered solution of one instance, sorted by `(x, y)` with no
/// duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    n: PositiveInt,
    m: PositiveInt,
    regime: Regime,
    pairs: Vec<OrderedPair>,
}

impl SolutionSet {
    /// Sorts and deduplicates `pairs`.
    pub(crate) fn new(n: PositiveInt, m: PositiveInt, regime: Regime, mut pairs: Vec<OrderedPair>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        SolutionSet { n, m, regime, pairs }
    }

    pub fn n(&self) -> PositiveInt {
        self.n
    }

    /// The denominator `m` (the prime `p` for closed-form sets).
    pub fn denominator(&self) -> PositiveInt {
        self.m
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// The closed-form case, if the instance is inside the hypotheses.
    pub fn case(&self) -> Option<CaseTag> {
        match self.regime {
            Regime::Theorem(tag) => Some(tag),
            Regime::General => None,
        }
    }

    pub fn pairs(&self) -> &[OrderedPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: &OrderedPair) -> bool {
        self.pairs.binary_search(pair).is_ok()
    }

    pub fn is_swap_closed(&self) -> bool {
        self.pairs.iter().all(|p| self.contains(&p.swapped()))
    }

    pub fn raw_pairs(&self) -> Vec<(u64, u64)> {
        self.pairs.iter().map(|p| p.as_tuple()).collect()
    }
}
