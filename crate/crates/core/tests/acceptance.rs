//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use unitfrac::arith::{gcd, is_prime};
use unitfrac::egyptian::{greedy, split, Greedy, PositiveRational};
use unitfrac::general::{brute_force, cross_check, divisor_solve, GeneralInstance};
use unitfrac::solution::equation_sides;
use unitfrac::theorem::{classify, derive_trace, solve, Branch, CaseTag, SolveInstance};
use unitfrac::PositiveInt;

const P_MAX: u64 = 997;
const N_RANGE: std::ops::RangeInclusive<u64> = 2..=200;
const CRITERION_1_BUDGET: Duration = Duration::from_secs(5);
const CRITERION_7_BUDGET: Duration = Duration::from_secs(2);

type Outcome = Result<String, String>;

fn primes() -> Vec<u64> {
    // independent of arith::is_prime
    (2..=P_MAX).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

fn grid() -> Vec<SolveInstance> {
    let mut out = Vec::new();
    for p in primes() {
        for n in N_RANGE {
            if gcd(n, p) == 1 {
                out.push(SolveInstance::new(n, p).expect("grid instance is valid"));
            }
        }
    }
    out
}

fn expected_count(n: u64, p: u64) -> usize {
    if n == 2 && p >= 3 {
        3
    } else if n >= 3 && (p + 1) % n == 0 {
        2
    } else {
        0
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let grid = grid();
    let mut failures = Vec::new();
    for inst in &grid {
        let set = solve(inst).map_err(|e| format!("{inst}: {e}"))?;
        let want = expected_count(inst.n(), inst.p());
        if set.len() != want || set.case().map(CaseTag::solution_count) != Some(want) {
            failures.push(format!("{inst}: got {} pairs", set.len()));
        }
    }
    let elapsed = start.elapsed();
    if !failures.is_empty() {
        return Err(format!("{} exceptions, first: {}", failures.len(), failures[0]));
    }
    if elapsed >= CRITERION_1_BUDGET {
        return Err(format!("took {elapsed:?}, budget {CRITERION_1_BUDGET:?}"));
    }
    Ok(format!("{} instances, 0 exceptions, {elapsed:?}", grid.len()))
}

fn criterion_2() -> Outcome {
    let grid = grid();
    for inst in &grid {
        let closed = solve(inst).map_err(|e| e.to_string())?;
        let oracle = brute_force(&GeneralInstance::new(inst.n(), inst.p()).unwrap()).map_err(|e| e.to_string())?;
        if closed.pairs() != oracle.pairs() {
            return Err(format!("{inst}: closed form {:?} vs brute force {:?}", closed.raw_pairs(), oracle.raw_pairs()));
        }
        if closed.regime() != oracle.regime() {
            return Err(format!("{inst}: case tags differ"));
        }
    }
    Ok(format!("{} instances list-identical", grid.len()))
}

fn criterion_3() -> Outcome {
    let report = cross_check(50, 500).map_err(|e| e.to_string())?;
    if !report.disagreements.is_empty() {
        return Err(format!("{} disagreements, first {:?}", report.disagreements.len(), report.disagreements[0]));
    }
    // both solvers directly, so the sweep helper is not the only route
    for n in 1..=50 {
        for m in 1..=500 {
            let inst = GeneralInstance::new(n, m).unwrap();
            let a = brute_force(&inst).map_err(|e| e.to_string())?;
            let b = divisor_solve(&inst).map_err(|e| e.to_string())?;
            if a.pairs() != b.pairs() {
                return Err(format!("{n}/{m} disagrees"));
            }
        }
    }
    let out = Command::new(env!("CARGO_BIN_EXE_unitfrac"))
        .args(["diff", "--n-max", "50", "--m-max", "500"])
        .output()
        .map_err(|e| e.to_string())?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    if out.status.code() != Some(0) || !stderr.contains("0 disagreements") {
        return Err(format!("diff exited {:?}: {stderr}", out.status.code()));
    }
    Ok(format!("{} instances, {} solutions, 0 disagreements; `diff` exit 0", report.instances, report.solutions))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for p in primes() {
        let p128 = p as u128;
        let (lhs, rhs) = equation_sides(2, p, p, p).map_err(|e| e.to_string())?;
        if lhs != 2 * p128 * p128 || rhs != 2 * p128 * p128 {
            return Err(format!("(p, p) at p = {p}: {lhs} / {rhs}"));
        }
        checked += 1;
        for n in N_RANGE {
            if (p + 1) % n != 0 {
                continue;
            }
            let small = (p + 1) / n;
            let (lhs, rhs) = equation_sides(n, p, p * small, small).map_err(|e| e.to_string())?;
            let want = p128 * (p128 + 1) * (p128 + 1) / n as u128;
            if p128 * (p128 + 1) * (p128 + 1) % n as u128 != 0 || lhs != want || rhs != want {
                return Err(format!("n = {n}, p = {p}: {lhs} / {rhs}, expected {want}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} identities exact"))
}

fn criterion_5() -> Outcome {
    let (mut case1, mut case2) = (0, 0);
    for inst in grid() {
        let set = solve(&inst).map_err(|e| e.to_string())?;
        for pair in set.pairs() {
            let trace = derive_trace(&inst, pair).map_err(|e| format!("{inst} {pair}: {e}"))?;
            if !trace.all_checks_hold() {
                return Err(format!("{inst} {pair}: failing check"));
            }
            match trace.branch {
                Branch::PDividesU1 | Branch::PDividesU2 => {
                    if !trace.prime_identity_holds() || trace.v1.map(PositiveInt::get) != Some(1) {
                        return Err(format!("{inst} {pair}: p = u(nd - 1) missing"));
                    }
                    case1 += 1;
                }
                Branch::PDividesD => {
                    if !trace.two_identity_holds() || trace.delta.map(PositiveInt::get) != Some(1) {
                        return Err(format!("{inst} {pair}: 2 = n*delta missing"));
                    }
                    case2 += 1;
                }
            }
        }
    }
    Ok(format!("{case1} p|u traces, {case2} p|d traces, all checks hold"))
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x1e44a);
    let mut constructed = 0;
    while constructed < 10_000 {
        let a: u64 = rng.gen_range(1..=1_000_000);
        let b: u64 = rng.gen_range(1..=1_000_000);
        if gcd(a, b) != 1 {
            continue;
        }
        let c = a * rng.gen_range(1..=1_000_000u64);
        if (b as u128 * c as u128) % a as u128 != 0 {
            return Err(format!("construction broken for ({a}, {b}, {c})"));
        }
        if c % a != 0 {
            return Err(format!("a ∤ c for ({a}, {b}, {c})"));
        }
        constructed += 1;
    }
    // c drawn freely, kept only when a | bc
    let mut sampled = 0;
    while sampled < 10_000 {
        let a: u64 = rng.gen_range(1..=60);
        let b: u64 = rng.gen_range(1..=1_000_000);
        let c: u64 = rng.gen_range(1..=1_000_000);
        if gcd(a, b) != 1 || (b as u128 * c as u128) % a as u128 != 0 {
            continue;
        }
        if c % a != 0 {
            return Err(format!("a ∤ c for ({a}, {b}, {c})"));
        }
        sampled += 1;
    }
    Ok(format!("{constructed} constructed + {sampled} sampled triples"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    for k in 1..=1_000_000u64 {
        let (a, b) = split(PositiveInt::new(k).unwrap());
        let a = u128::try_from(a.den()).map_err(|_| "denominator too large".to_string())?;
        let b = u128::try_from(b.den()).map_err(|_| "denominator too large".to_string())?;
        if Ratio::new(1, a) + Ratio::new(1, b) != Ratio::new(1u128, k as u128) {
            return Err(format!("k = {k}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= CRITERION_7_BUDGET {
        return Err(format!("took {elapsed:?}, budget {CRITERION_7_BUDGET:?}"));
    }
    Ok(format!("k in [1, 10^6] exact, {elapsed:?}"))
}

fn criterion_8() -> Outcome {
    let mut fractions = 0;
    for b in 2..=200u64 {
        for a in 1..b {
            if gcd(a, b) != 1 {
                continue;
            }
            let q = PositiveRational::from_u64(a, b).unwrap();
            let expansion = greedy(&q).map_err(|e| e.to_string())?;
            let total: BigRational = expansion
                .terms
                .iter()
                .map(|t| BigRational::new(BigInt::from(1), BigInt::from(t.den().clone())))
                .sum();
            if total != BigRational::new(BigInt::from(a), BigInt::from(b)) {
                return Err(format!("{a}/{b} sums to {total}"));
            }
            if !expansion.terms.windows(2).all(|w| w[0].den() < w[1].den()) {
                return Err(format!("{a}/{b}: denominators not strictly increasing"));
            }
            let numerators: Vec<BigUint> = std::iter::once(BigUint::from(a))
                .chain(Greedy::new(&q).unwrap().filter_map(|s| s.remainder).map(|r| r.num().clone()))
                .collect();
            if !numerators.windows(2).all(|w| w[1] < w[0]) {
                return Err(format!("{a}/{b}: remainder numerators do not decrease"));
            }
            fractions += 1;
        }
    }
    Ok(format!("{fractions} fractions exact with strictly increasing denominators"))
}

fn main() -> ExitCode {
    // sanity: the grid and the library agree on what a prime is
    assert!(primes().iter().all(|&p| is_prime(p)));
    assert_eq!(classify(&SolveInstance::new(3, 2).unwrap()), CaseTag::NDividesPPlus1);

    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 closed-form solution counts", criterion_1),
        ("2 closed form equals brute force", criterion_2),
        ("3 brute force equals divisor identity", criterion_3),
        ("4 verification identities 2p^2 and p(p+1)^2/n", criterion_4),
        ("5 proof replay totality", criterion_5),
        ("6 Euclid's lemma", criterion_6),
        ("7 splitting identity", criterion_7),
        ("8 greedy expansion exactness", criterion_8),
    ];

    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
