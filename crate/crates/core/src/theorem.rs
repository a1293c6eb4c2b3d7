//! Closed-form solutions of `n·x·y = p·(x + y)` for a prime `p` not dividing
//! `n ≥ 2`, equivalently `n/p = 1/x + 1/y`.
//!
//! The solution set is fully determined by how `n` relates to `p + 1`:
//!
//! * `n = 2`, `p ≥ 3`: three pairs, `(p, p)` and `((p+1)/2, p(p+1)/2)` in both orders;
//! * `n ≥ 3`, `n | p + 1`: two pairs, `((p+1)/n, p(p+1)/n)` in both orders;
//! * `n ∤ p + 1`: nothing.
//!
//! [`derive_trace`] replays the uniqueness argument on a concrete pair: write
//! the pair as `(d·u1, d·u2)` with `gcd(u1, u2) = 1`, reduce the equation to
//! `p(u1 + u2) = n·d·u1·u2`, locate the factor `p` in exactly one of `u1`,
//! `u2`, `d`, and check the equations that branch forces.

use std::fmt;

use crate::arith::{self, checked_mul, narrow, PositiveInt};
use crate::error::{Error, Result};
use crate::solution::{equation_sides, OrderedPair, Regime, SolutionSet};

/// Validated closed-form input: `n ≥ 2`, `p` prime, `gcd(n, p) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SolveInstance {
    n: PositiveInt,
    p: PositiveInt,
}

impl SolveInstance {
    pub fn new(n: u64, p: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::CoefficientTooSmall { n });
        }
        if !arith::is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        if n % p == 0 {
            return Err(Error::NotCoprime { n, p });
        }
        Ok(SolveInstance {
            n: PositiveInt::new(n).expect("n >= 2"),
            p: PositiveInt::new(p).expect("p is prime"),
        })
    }

    pub fn n(&self) -> u64 {
        self.n.get()
    }

    pub fn p(&self) -> u64 {
        self.p.get()
    }
}

impl fmt::Display for SolveInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.n, self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `n = 2`, `p ≥ 3`: exactly three solutions.
    NEquals2,
    /// `n ≥ 3`, `n | p + 1`: exactly two solutions.
    NDividesPPlus1,
    /// `n ∤ p + 1`: no solution.
    NoSolution,
}

impl CaseTag {
    pub fn label(self) -> &'static str {
        match self {
            CaseTag::NEquals2 => "CaseI_NEquals2",
            CaseTag::NDividesPPlus1 => "CaseII_NDividesPPlus1",
            CaseTag::NoSolution => "CaseIII_NoSolution",
        }
    }

    /// Number of ordered solutions the case guarantees.
    pub fn solution_count(self) -> usize {
        match self {
            CaseTag::NEquals2 => 3,
            CaseTag::NDividesPPlus1 => 2,
            CaseTag::NoSolution => 0,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn classify(inst: &SolveInstance) -> CaseTag {
    let (n, p) = (inst.n(), inst.p());
    // p + 1 cannot overflow: u64::MAX is not prime.
    let divides = (p + 1) % n == 0;
    if n == 2 && p >= 3 {
        CaseTag::NEquals2
    } else if n >= 3 && divides {
        CaseTag::NDividesPPlus1
    } else {
        // n = 2 with p = 2 never reaches here (rejected as non-coprime), so
        // the only remaining possibility is n ∤ p + 1.
        debug_assert!(!divides);
        CaseTag::NoSolution
    }
}

/// Convenience wrapper validating `(n, p)` before classifying.
pub fn classify_raw(n: u64, p: u64) -> Result<CaseTag> {
    SolveInstance::new(n, p).map(|inst| classify(&inst))
}

/// The closed-form solution set, sorted by `(x, y)`.
///
/// Every pair is re-checked against the equation before returning; a mismatch
/// is reported as [`Error::Internal`].
pub fn solve(inst: &SolveInstance) -> Result<SolutionSet> {
    let case = classify(inst);
    let (n, p) = (inst.n(), inst.p());
    let mut pairs = Vec::with_capacity(case.solution_count());

    match case {
        CaseTag::NEquals2 | CaseTag::NDividesPPlus1 => {
            let small = (p + 1) / n;
            let large = narrow(checked_mul(p as u128, small as u128, "p(p+1)/n")?, "p(p+1)/n")?;
            let a = OrderedPair::from_raw(small, large)?;
            pairs.push(a);
            pairs.push(a.swapped());
            if case == CaseTag::NEquals2 {
                pairs.push(OrderedPair::from_raw(p, p)?);
            }
        }
        CaseTag::NoSolution => {}
    }

    let set = SolutionSet::new(inst.n, inst.p, Regime::Theorem(case), pairs);
    if set.len() != case.solution_count() {
        return Err(Error::Internal(format!(
            "{} produced {} pairs for {}",
            inst,
            set.len(),
            case
        )));
    }
    for pair in set.pairs() {
        if !verify(inst, pair)? {
            return Err(Error::Internal(format!(
                "closed-form pair {pair} fails the equation for {inst}"
            )));
        }
    }
    Ok(set)
}

pub fn solve_raw(n: u64, p: u64) -> Result<SolutionSet> {
    solve(&SolveInstance::new(n, p)?)
}

/// True iff `n·x·y = p·(x + y)` holds exactly.
pub fn verify(inst: &SolveInstance, pair: &OrderedPair) -> Result<bool> {
    let (lhs, rhs) = equation_sides(inst.n(), inst.p(), pair.x.get(), pair.y.get())?;
    Ok(lhs == rhs)
}

/// A pair written as `(d·u1, d·u2)` with `d = gcd(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanonicalDecomposition {
    pub d: PositiveInt,
    pub u1: PositiveInt,
    pub u2: PositiveInt,
}

pub fn canonical_decomposition(pair: &OrderedPair) -> CanonicalDecomposition {
    let (x, y) = pair.as_tuple();
    let d = arith::gcd(x, y);
    let pos = |v| PositiveInt::new(v).expect("quotient of positive integers");
    CanonicalDecomposition {
        d: pos(d),
        u1: pos(x / d),
        u2: pos(y / d),
    }
}

/// Where the prime factor `p` of `n·d·u1·u2` sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    PDividesU1,
    PDividesU2,
    PDividesD,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::PDividesU1 => "Case1a_PDividesU1",
            Branch::PDividesU2 => "Case1b_PDividesU2",
            Branch::PDividesD => "Case2_PDividesD",
        }
    }
}

/// The relations checked while replaying the argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `p·(u1 + u2) = n·d·u1·u2`
    Reduced,
    /// `u = p·v1` has cofactor `v1 = 1`.
    CofactorIsOne,
    /// `p = u·(n·d − 1)`, `u` being the component not divisible by `p`.
    PrimeAsCofactorProduct,
    /// `u1 = u2 = 1` once `p | d`.
    UnitsAreOne,
    /// `2 = n·δ` where `d = p·δ`.
    TwoIsNDelta,
}

impl Relation {
    pub fn label(self) -> &'static str {
        match self {
            Relation::Reduced => "p(u1+u2) = n*d*u1*u2",
            Relation::CofactorIsOne => "v1 = 1",
            Relation::PrimeAsCofactorProduct => "p = u*(n*d - 1)",
            Relation::UnitsAreOne => "u1 = u2 = 1",
            Relation::TwoIsNDelta => "2 = n*delta",
        }
    }
}

/// One checked relation with both sides recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Check {
    pub relation: Relation,
    pub lhs: u128,
    pub rhs: u128,
}

impl Check {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Replay of the uniqueness argument on one solution pair.
///
/// In the `p | d` branch the recovered solution is `x = y = p`, i.e. `d = p`
/// with `u1 = u2 = 1`; it is the pair `(x, y)`, not `(u1, u2)`, that equals
/// `(p, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub decomposition: CanonicalDecomposition,
    pub branch: Branch,
    /// Present on the `p | u1` / `p | u2` branches.
    pub v1: Option<PositiveInt>,
    /// Present on the `p | d` branch.
    pub delta: Option<PositiveInt>,
    pub checks: Vec<Check>,
}

impl DerivationTrace {
    fn outcome(&self, relation: Relation) -> bool {
        let mut matching = self.checks.iter().filter(|c| c.relation == relation).peekable();
        matching.peek().is_some() && matching.all(Check::holds)
    }

    /// `p = u·(n·d − 1)` was checked and held (the `p | u1` / `p | u2` branches).
    pub fn prime_identity_holds(&self) -> bool {
        self.outcome(Relation::PrimeAsCofactorProduct)
    }

    /// `2 = n·δ` was checked and held (the `p | d` branch).
    pub fn two_identity_holds(&self) -> bool {
        self.outcome(Relation::TwoIsNDelta)
    }

    pub fn all_checks_hold(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::holds)
    }
}

fn require(checks: &mut Vec<Check>, relation: Relation, lhs: u128, rhs: u128) -> Result<()> {
    let check = Check { relation, lhs, rhs };
    checks.push(check);
    if check.holds() {
        Ok(())
    } else {
        Err(Error::ProofReplay {
            step: relation.label(),
            detail: format!("left side {lhs} != right side {rhs}"),
        })
    }
}

/// Replays the uniqueness argument for a solution pair.
///
/// Fails with [`Error::NotASolution`] when the pair does not solve the
/// equation. Any other failure is a [`Error::ProofReplay`], which for a genuine
/// solution means an arithmetic bug.
pub fn derive_trace(inst: &SolveInstance, pair: &OrderedPair) -> Result<DerivationTrace> {
    let (n, p) = (inst.n(), inst.p());
    if !verify(inst, pair)? {
        return Err(Error::NotASolution {
            n,
            p,
            x: pair.x.get(),
            y: pair.y.get(),
        });
    }

    let dec = canonical_decomposition(pair);
    let (d, u1, u2) = (dec.d.get() as u128, dec.u1.get() as u128, dec.u2.get() as u128);
    let (n, p) = (n as u128, p as u128);
    let mut checks = Vec::new();

    if arith::gcd_u128(u1, u2) != 1 {
        return Err(Error::ProofReplay {
            step: "gcd(u1, u2) = 1",
            detail: format!("gcd({u1}, {u2}) != 1"),
        });
    }

    let reduced_lhs = checked_mul(p, u1 + u2, "p(u1+u2)")?;
    let ndu = checked_mul(checked_mul(n, d, "n·d")?, checked_mul(u1, u2, "u1·u2")?, "n·d·u1·u2")?;
    require(&mut checks, Relation::Reduced, reduced_lhs, ndu)?;

    let candidates = [
        (Branch::PDividesU1, u1 % p == 0),
        (Branch::PDividesU2, u2 % p == 0),
        (Branch::PDividesD, d % p == 0),
    ];
    let mut hits = candidates.iter().filter(|(_, hit)| *hit).map(|(b, _)| *b);
    let branch = match (hits.next(), hits.next()) {
        (Some(b), None) => b,
        (None, _) => {
            return Err(Error::ProofReplay {
                step: "locate p",
                detail: format!("p = {p} divides none of d = {d}, u1 = {u1}, u2 = {u2}"),
            })
        }
        (Some(_), Some(_)) => {
            return Err(Error::ProofReplay {
                step: "locate p",
                detail: format!("p = {p} divides more than one of d = {d}, u1 = {u1}, u2 = {u2}"),
            })
        }
    };

    let pos = |v: u128| PositiveInt::new(v as u64).expect("nonzero quotient");
    let (v1, delta) = match branch {
        Branch::PDividesU1 | Branch::PDividesU2 => {
            let (divisible, other) = if branch == Branch::PDividesU1 { (u1, u2) } else { (u2, u1) };
            let v1 = divisible / p;
            require(&mut checks, Relation::CofactorIsOne, v1, 1)?;
            // n·d ≥ 2 since n ≥ 2
            let nd_minus_one = checked_mul(n, d, "n·d")? - 1;
            let rhs = checked_mul(other, nd_minus_one, "u·(n·d − 1)")?;
            require(&mut checks, Relation::PrimeAsCofactorProduct, p, rhs)?;
            (Some(pos(v1)), None)
        }
        Branch::PDividesD => {
            let delta = d / p;
            require(&mut checks, Relation::UnitsAreOne, u1 + u2, 2)?;
            let rhs = checked_mul(n, delta, "n·δ")?;
            require(&mut checks, Relation::TwoIsNDelta, 2, rhs)?;
            (None, Some(pos(delta)))
        }
    };

    Ok(DerivationTrace {
        decomposition: dec,
        branch,
        v1,
        delta,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: u64, p: u64) -> SolveInstance {
        SolveInstance::new(n, p).unwrap()
    }

    fn pair(x: u64, y: u64) -> OrderedPair {
        OrderedPair::from_raw(x, y).unwrap()
    }

    #[test]
    fn instance_validation_has_distinct_diagnostics() {
        assert_eq!(SolveInstance::new(1, 5), Err(Error::CoefficientTooSmall { n: 1 }));
        assert_eq!(SolveInstance::new(0, 5), Err(Error::CoefficientTooSmall { n: 0 }));
        assert_eq!(SolveInstance::new(3, 9), Err(Error::NotPrime { p: 9 }));
        assert_eq!(SolveInstance::new(3, 1), Err(Error::NotPrime { p: 1 }));
        assert_eq!(SolveInstance::new(10, 5), Err(Error::NotCoprime { n: 10, p: 5 }));
        assert_eq!(SolveInstance::new(2, 2), Err(Error::NotCoprime { n: 2, p: 2 }));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&inst(2, 5)), CaseTag::NEquals2);
        assert_eq!(classify(&inst(3, 5)), CaseTag::NDividesPPlus1);
        assert_eq!(classify(&inst(3, 7)), CaseTag::NoSolution);
        assert_eq!(classify(&inst(3, 2)), CaseTag::NDividesPPlus1);
        // n = p + 1 gives the pair (1, p)
        assert_eq!(classify(&inst(8, 7)), CaseTag::NDividesPPlus1);
        assert_eq!(classify(&inst(9, 7)), CaseTag::NoSolution);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&inst(2, 3)).unwrap().raw_pairs(), vec![(2, 6), (3, 3), (6, 2)]);
        assert_eq!(solve(&inst(3, 5)).unwrap().raw_pairs(), vec![(2, 10), (10, 2)]);
        assert!(solve(&inst(4, 5)).unwrap().is_empty());
        // frozen from exhaustive enumeration over x in [7, 13]
        assert_eq!(solve(&inst(2, 13)).unwrap().raw_pairs(), vec![(7, 91), (13, 13), (91, 7)]);
        assert_eq!(solve(&inst(3, 2)).unwrap().raw_pairs(), vec![(1, 2), (2, 1)]);
        assert_eq!(solve(&inst(8, 7)).unwrap().raw_pairs(), vec![(1, 7), (7, 1)]);
    }

    #[test]
    fn introductory_special_cases() {
        // 2xy = q(x + y), q an odd prime: x = (q+1)/2, y = q(q+1)/2
        for q in [3u64, 5, 7, 11, 101] {
            let set = solve(&inst(2, q)).unwrap();
            assert!(set.contains(&pair((q + 1) / 2, q * (q + 1) / 2)));
        }
        // 3xy = q(x + y), q ≡ 2 (mod 3): x = (q+1)/3, y = q(q+1)/3
        for q in [2u64, 5, 11, 17, 29] {
            let set = solve(&inst(3, q)).unwrap();
            assert!(set.contains(&pair((q + 1) / 3, q * (q + 1) / 3)));
        }
    }

    #[test]
    fn large_prime_overflows_cleanly() {
        let p = 18_446_744_073_709_551_557u64;
        assert_eq!(
            solve(&inst(2, p)),
            Err(Error::Overflow { quantity: "p(p+1)/n" })
        );
    }

    #[test]
    fn verify_examples() {
        assert!(verify(&inst(2, 3), &pair(3, 3)).unwrap());
        assert_eq!(equation_sides(2, 3, 3, 3).unwrap(), (18, 18));
        assert!(verify(&inst(3, 5), &pair(2, 10)).unwrap());
        assert_eq!(equation_sides(3, 5, 2, 10).unwrap(), (60, 60));
        assert!(!verify(&inst(2, 3), &pair(4, 4)).unwrap());
    }

    #[test]
    fn decomposition_examples() {
        let dec = canonical_decomposition(&pair(10, 2));
        assert_eq!((dec.d.get(), dec.u1.get(), dec.u2.get()), (2, 5, 1));
        let dec = canonical_decomposition(&pair(3, 3));
        assert_eq!((dec.d.get(), dec.u1.get(), dec.u2.get()), (3, 1, 1));
        let dec = canonical_decomposition(&pair(1, 1));
        assert_eq!((dec.d.get(), dec.u1.get(), dec.u2.get()), (1, 1, 1));
    }

    #[test]
    fn trace_examples() {
        let t = derive_trace(&inst(2, 3), &pair(6, 2)).unwrap();
        assert_eq!(t.branch, Branch::PDividesU1);
        assert_eq!(t.v1.map(PositiveInt::get), Some(1));
        assert_eq!(t.delta, None);
        assert_eq!((t.decomposition.d.get(), t.decomposition.u1.get(), t.decomposition.u2.get()), (2, 3, 1));
        assert!(t.prime_identity_holds());
        assert!(!t.two_identity_holds());
        assert!(t.all_checks_hold());

        let t = derive_trace(&inst(2, 3), &pair(3, 3)).unwrap();
        assert_eq!(t.branch, Branch::PDividesD);
        assert_eq!(t.delta.map(PositiveInt::get), Some(1));
        assert_eq!(t.v1, None);
        assert!(t.two_identity_holds());
        assert!(!t.prime_identity_holds());

        let t = derive_trace(&inst(3, 5), &pair(2, 10)).unwrap();
        assert_eq!(t.branch, Branch::PDividesU2);
        assert_eq!((t.decomposition.d.get(), t.decomposition.u1.get(), t.decomposition.u2.get()), (2, 1, 5));
        let p_check = t
            .checks
            .iter()
            .find(|c| c.relation == Relation::PrimeAsCofactorProduct)
            .unwrap();
        assert_eq!((p_check.lhs, p_check.rhs), (5, 5));
    }

    #[test]
    fn trace_rejects_non_solutions() {
        assert_eq!(
            derive_trace(&inst(2, 3), &pair(4, 4)),
            Err(Error::NotASolution { n: 2, p: 3, x: 4, y: 4 })
        );
    }
}
