//! Unit-fraction utilities: splitting one unit fraction into two, greedy
//! expansion of a rational into distinct unit fractions, and per-prime
//! decomposition tables built from the closed form.
//!
//! Denominators are arbitrary precision. Greedy denominators grow roughly
//! doubly exponentially (`5/121` already needs a 25-digit one), so machine
//! words are not enough even for small inputs.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{self, PositiveInt};
use crate::error::{Error, Result};
use crate::solution::SolutionSet;
use crate::theorem::{solve, SolveInstance};

/// `1/den`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitFraction {
    den: BigUint,
}

impl UnitFraction {
    pub fn new(den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Zero { quantity: "denominator" });
        }
        Ok(UnitFraction { den })
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }
}

impl From<PositiveInt> for UnitFraction {
    fn from(k: PositiveInt) -> Self {
        UnitFraction { den: BigUint::from(k.get()) }
    }
}

impl fmt::Display for UnitFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}", self.den)
    }
}

/// A positive rational kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositiveRational {
    num: BigUint,
    den: BigUint,
}

impl PositiveRational {
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if num.is_zero() {
            return Err(Error::Zero { quantity: "numerator" });
        }
        if den.is_zero() {
            return Err(Error::Zero { quantity: "denominator" });
        }
        let g = num.gcd(&den);
        Ok(PositiveRational { num: num / &g, den: den / g })
    }

    pub fn from_u64(num: u64, den: u64) -> Result<Self> {
        Self::new(BigUint::from(num), BigUint::from(den))
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    /// `self − unit`, or `None` when the difference is zero. The caller
    /// guarantees `unit ≤ self`.
    fn minus_unit(&self, unit: &UnitFraction) -> Option<PositiveRational> {
        // a/b − 1/c = (a·c − b) / (b·c)
        let num = &self.num * &unit.den - &self.den;
        if num.is_zero() {
            return None;
        }
        let den = &self.den * &unit.den;
        let g = num.gcd(&den);
        Some(PositiveRational { num: num / &g, den: den / g })
    }
}

impl fmt::Display for PositiveRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// `1/k = 1/(k+1) + 1/(k(k+1))`.
pub fn split(k: PositiveInt) -> (UnitFraction, UnitFraction) {
    let k = BigUint::from(k.get());
    let next = &k + 1u32;
    let product = &k * &next;
    (UnitFraction { den: next }, UnitFraction { den: product })
}

/// A rational written as a sum of distinct unit fractions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub source: PositiveRational,
    pub terms: Vec<UnitFraction>,
}

/// One greedy step: the unit fraction taken and what is left afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyStep {
    pub term: UnitFraction,
    pub remainder: Option<PositiveRational>,
}

/// Iterator over the greedy steps of a rational in `(0, 2)`.
///
/// Each step takes `1/⌈b/a⌉` from the remainder `a/b`; the new numerator
/// `a·⌈b/a⌉ − b` is strictly below `a`, so the iteration ends.
#[derive(Debug, Clone)]
pub struct Greedy {
    remainder: Option<PositiveRational>,
}

impl Greedy {
    pub fn new(q: &PositiveRational) -> Result<Self> {
        if q.num >= BigUint::from(2u32) * &q.den {
            return Err(Error::OutOfGreedyRange {
                num: q.num.to_string(),
                den: q.den.to_string(),
            });
        }
        Ok(Greedy { remainder: Some(q.clone()) })
    }
}

impl Iterator for Greedy {
    type Item = GreedyStep;

    fn next(&mut self) -> Option<GreedyStep> {
        let current = self.remainder.take()?;
        let term = UnitFraction { den: current.den.div_ceil(&current.num) };
        let remainder = current.minus_unit(&term);
        self.remainder = remainder.clone();
        Some(GreedyStep { term, remainder })
    }
}

/// Greedy expansion of `q`, `0 < q < 2`.
///
/// Values in `[1, 2)` start with the term `1/1`. `q ≥ 2` is rejected, since a
/// distinct-denominator expansion would need the harmonic series to pass 2.
pub fn greedy(q: &PositiveRational) -> Result<Expansion> {
    let terms = Greedy::new(q)?.map(|step| step.term).collect();
    Ok(Expansion { source: q.clone(), terms })
}

/// One table row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub instance: SolveInstance,
    pub solutions: SolutionSet,
}

/// Decompositions of `n/p` for every prime `p` in a range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub n: PositiveInt,
    pub rows: Vec<TableRow>,
    /// Primes in range that divide `n`; outside the closed form, so no row.
    pub skipped: Vec<u64>,
}

/// Builds the table for fixed `n ≥ 2` over primes `p ∈ [p_min, p_max]`,
/// rows ascending in `p`. An empty range gives an empty table.
pub fn table(n: u64, p_min: u64, p_max: u64) -> Result<Table> {
    if n < 2 {
        return Err(Error::CoefficientTooSmall { n });
    }
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for p in arith::primes_in(p_min, p_max) {
        if n % p == 0 {
            skipped.push(p);
            continue;
        }
        let instance = SolveInstance::new(n, p)?;
        let solutions = solve(&instance)?;
        rows.push(TableRow { instance, solutions });
    }
    Ok(Table {
        n: PositiveInt::new(n).expect("n >= 2"),
        rows,
        skipped,
    })
}

impl Expansion {
    /// Exact sum of the terms, in lowest terms. `None` for an empty expansion.
    pub fn sum(&self) -> Option<PositiveRational> {
        let mut num = BigUint::zero();
        let mut den = BigUint::one();
        for t in &self.terms {
            // num/den + 1/t = (num·t + den) / (den·t)
            num = &num * &t.den + &den;
            den *= &t.den;
            let g = num.gcd(&den);
            num /= &g;
            den /= g;
        }
        PositiveRational::new(num, den).ok()
    }
}
