//! Two independent solvers for `n·x·y = m·(x + y)` with any `n, m ≥ 1`.
//!
//! [`brute_force`] scans the only window where the smaller coordinate can
//! live; [`divisor_solve`] factors the equation as `(n·x − m)(n·y − m) = m²`
//! and walks the divisors of `m²`. Neither shares code with the closed form,
//! so each can serve as an oracle for it and for the other.

use crate::arith::{self, narrow, PositiveInt};
use crate::error::Result;
use crate::solution::{OrderedPair, Regime, SolutionSet};
use crate::theorem::{classify, SolveInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneralInstance {
    pub n: PositiveInt,
    pub m: PositiveInt,
}

impl GeneralInstance {
    pub fn new(n: u64, m: u64) -> Result<Self> {
        Ok(GeneralInstance {
            n: PositiveInt::named(n, "n")?,
            m: PositiveInt::named(m, "m")?,
        })
    }

    /// The closed-form case when `(n, m)` meets its hypotheses, otherwise
    /// [`Regime::General`].
    pub fn regime(&self) -> Regime {
        match SolveInstance::new(self.n.get(), self.m.get()) {
            Ok(inst) => Regime::Theorem(classify(&inst)),
            Err(_) => Regime::General,
        }
    }
}

/// Exhaustive search over the representative `x ≤ y`.
///
/// From `1/x + 1/y = n/m` with `x ≤ y`: `n·x > m` (otherwise `1/x ≥ n/m`
/// leaves nothing for `1/y`) and `n·x ≤ 2m` (`1/x` carries at least half).
/// So `x ∈ [⌊m/n⌋ + 1, ⌊2m/n⌋]` and `y = m·x / (n·x − m)` when exact.
pub fn brute_force(inst: &GeneralInstance) -> Result<SolutionSet> {
    let (n, m) = (inst.n.get() as u128, inst.m.get() as u128);
    let lo = m / n + 1;
    let hi = 2 * m / n;
    let mut pairs = Vec::new();
    let mut x = lo;
    while x <= hi {
        let excess = n * x - m;
        let num = m * x;
        if num % excess == 0 {
            let y = num / excess;
            if y >= x {
                let pair = OrderedPair::from_raw(narrow(x, "x")?, narrow(y, "y")?)?;
                pairs.push(pair);
                pairs.push(pair.swapped());
            }
        }
        x += 1;
    }
    Ok(SolutionSet::new(inst.n, inst.m, inst.regime(), pairs))
}

/// Solutions from the factorization `(n·x − m)(n·y − m) = m²`.
///
/// Both factors are positive for any solution, so each divisor pair
/// `a·b = m²` with `a ≤ b` yields a candidate `x = (a + m)/n`, `y = (b + m)/n`
/// whenever both divisions are exact. `a = b = m` gives the single symmetric
/// candidate.
pub fn divisor_solve(inst: &GeneralInstance) -> Result<SolutionSet> {
    let (n, m) = (inst.n.get() as u128, inst.m.get() as u128);
    let square = m * m;
    let mut pairs = Vec::new();
    for a in arith::divisors_of_square(inst.m.get()) {
        if a > m {
            break;
        }
        let b = square / a;
        // b ≤ m², so b + m cannot overflow u128
        if (a + m) % n == 0 && (b + m) % n == 0 {
            let pair = OrderedPair::from_raw(narrow((a + m) / n, "x")?, narrow((b + m) / n, "y")?)?;
            pairs.push(pair);
            pairs.push(pair.swapped());
        }
    }
    Ok(SolutionSet::new(inst.n, inst.m, inst.regime(), pairs))
}

/// Number of ordered solutions.
pub fn count(inst: &GeneralInstance) -> Result<usize> {
    brute_force(inst).map(|set| set.len())
}

/// One instance where the two solvers disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub n: u64,
    pub m: u64,
    pub brute_force_only: Vec<(u64, u64)>,
    pub divisor_only: Vec<(u64, u64)>,
}

/// Outcome of running both solvers over `n ∈ [1, n_max]`, `m ∈ [1, m_max]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SweepReport {
    pub instances: u64,
    pub solutions: u64,
    pub disagreements: Vec<Disagreement>,
}

pub fn cross_check(n_max: u64, m_max: u64) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for n in 1..=n_max {
        for m in 1..=m_max {
            let inst = GeneralInstance::new(n, m)?;
            let bf = brute_force(&inst)?;
            let dv = divisor_solve(&inst)?;
            report.instances += 1;
            report.solutions += bf.len() as u64;
            if bf.pairs() != dv.pairs() {
                let only = |a: &SolutionSet, b: &SolutionSet| {
                    a.pairs()
                        .iter()
                        .filter(|p| !b.contains(p))
                        .map(|p| p.as_tuple())
                        .collect()
                };
                report.disagreements.push(Disagreement {
                    n,
                    m,
                    brute_force_only: only(&bf, &dv),
                    divisor_only: only(&dv, &bf),
                });
            }
        }
    }
    Ok(report)
}
