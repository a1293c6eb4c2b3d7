//! Exact integer primitives.
//!
//! Everything here works on `u64` inputs. Intermediate products are widened to
//! `u128`; anything that could still leave that range goes through checked
//! operations and surfaces as [`Error::Overflow`], never as a wrapped value.

use std::fmt;

use crate::error::{Error, Result};

/// A strictly positive machine integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositiveInt(u64);

impl PositiveInt {
    pub const ONE: PositiveInt = PositiveInt(1);

    /// Returns `None` for zero.
    pub const fn new(value: u64) -> Option<Self> {
        if value == 0 {
            None
        } else {
            Some(PositiveInt(value))
        }
    }

    /// Like [`PositiveInt::new`], naming the offending quantity on failure.
    pub fn named(value: u64, quantity: &'static str) -> Result<Self> {
        Self::new(value).ok_or(Error::Zero { quantity })
    }

    #[inline]
    pub const fn get(self) -> u64 {
        self.0
    }
}

impl From<PositiveInt> for u64 {
    fn from(v: PositiveInt) -> u64 {
        v.0
    }
}

impl fmt::Display for PositiveInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Greatest common divisor by Euclid's algorithm. `gcd(a, 0) = a`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn coprime(a: u64, b: u64) -> bool {
    gcd(a, b) == 1
}

/// Integer square root, `floor(sqrt(n))`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // f64 gets within one of the answer; fix up exactly.
    let mut r = (n as f64).sqrt() as u64;
    while (r as u128) * (r as u128) > n as u128 {
        r -= 1;
    }
    while ((r + 1) as u128) * ((r + 1) as u128) <= n as u128 {
        r += 1;
    }
    r
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// The first twelve primes are a deterministic witness set for every n < 3.3e24,
// which covers all of u64.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for the whole `u64` range.
///
/// Small inputs are settled by the witness list itself; the rest go through
/// strong-pseudoprime rounds with the fixed witness set.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n == w {
            return true;
        }
        if n % w == 0 {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }

    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Ascending list of primes in `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if lo > hi {
        return Vec::new();
    }
    (lo..=hi).filter(|&p| is_prime(p)).collect()
}

/// All positive divisors of `m` in increasing order, by trial division up to
/// `sqrt(m)`. Returns an empty list for `m = 0`.
pub fn divisors(m: u64) -> Vec<u64> {
    if m == 0 {
        return Vec::new();
    }
    let mut low = Vec::new();
    let mut high = Vec::new();
    let root = isqrt(m);
    for d in 1..=root {
        if m % d == 0 {
            low.push(d);
            if d != m / d {
                high.push(m / d);
            }
        }
    }
    low.extend(high.into_iter().rev());
    low
}

/// Prime factorization of `m` as `(prime, exponent)` pairs, primes ascending.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if m < 2 {
        return out;
    }
    let mut push = |p: u64, m: &mut u64| {
        let mut e = 0;
        while *m % p == 0 {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut m);
    let mut f = 3u64;
    while f.checked_mul(f).is_some_and(|sq| sq <= m) {
        push(f, &mut m);
        f += 2;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Divisors of `m²` in increasing order, built from the factorization of `m`
/// so that `m²` itself never has to be trial-divided.
pub fn divisors_of_square(m: u64) -> Vec<u128> {
    if m == 0 {
        return Vec::new();
    }
    let mut divs: Vec<u128> = vec![1];
    for (p, e) in factorize(m) {
        let p = p as u128;
        let current = divs.len();
        let mut power = 1u128;
        for _ in 0..2 * e {
            // p^k divides m² < 2^128, so this product cannot overflow.
            power *= p;
            for i in 0..current {
                divs.push(divs[i] * power);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub(crate) fn checked_mul(a: u128, b: u128, quantity: &'static str) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow { quantity })
}

pub(crate) fn checked_add(a: u128, b: u128, quantity: &'static str) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow { quantity })
}

pub(crate) fn narrow(v: u128, quantity: &'static str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow { quantity })
}
