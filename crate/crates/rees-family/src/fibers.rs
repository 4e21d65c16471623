//! Fibers of the family over the primes: how t^2 + at + b splits mod p and
//! how many primes of the family ring or of a duplication sit over (p).

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Cap on sweep endpoints (the sieve is linear in this bound).
pub const MAX_SWEEP: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiberError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("computation too large: {0}")]
    TooLarge(String),
}

/// How a monic quadratic splits over a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Splitting {
    TwoDistinctRoots,
    DoubleRoot,
    Irreducible,
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Splitting::TwoDistinctRoots => "two-distinct-roots",
            Splitting::DoubleRoot => "double-root",
            Splitting::Irreducible => "irreducible",
        };
        write!(f, "{s}")
    }
}

/// Number of primes of the family ring over (p); the split case depends on
/// how the ideal meets (p), so it is reported as a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyFiber {
    Exactly(u8),
    AtMostTwo,
}

impl fmt::Display for FamilyFiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyFiber::Exactly(n) => write!(f, "{n}"),
            FamilyFiber::AtMostTwo => write!(f, "<=2"),
        }
    }
}

impl Serialize for FamilyFiber {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// Everything the fiber analysis reports for one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub p: u64,
    pub discriminant: i128,
    pub splitting: Splitting,
    /// Primes of Z[t]/(t^2+at+b) over (p).
    pub primes_over_quadratic: u8,
    /// Primes of the family ring over (p).
    pub primes_over_family: FamilyFiber,
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
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

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    (a as u128 * b as u128 % n as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1u64 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Legendre symbol (d | p) for odd prime p, via Euler's criterion.
pub fn legendre(d: i128, p: u64) -> i32 {
    let r = d.rem_euclid(p as i128) as u64;
    if r == 0 {
        return 0;
    }
    let e = pow_mod_u64(r, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// Splitting type of t^2 + at + b over F_p.
pub fn splitting_mod_p(p: u64, a: i64, b: i64) -> Result<Splitting, FiberError> {
    if !is_prime(p) {
        return Err(FiberError::InvalidArgument(format!("{p} is not prime")));
    }
    if p == 2 {
        // the discriminant is blind in characteristic 2, count roots directly
        return Ok(brute_force_splitting(p, a, b).expect("2 is prime"));
    }
    let disc = discriminant(a, b);
    Ok(match legendre(disc, p) {
        0 => Splitting::DoubleRoot,
        1 => Splitting::TwoDistinctRoots,
        _ => Splitting::Irreducible,
    })
}

/// Splitting type by exhaustive root counting; oracle for `splitting_mod_p`.
pub fn brute_force_splitting(p: u64, a: i64, b: i64) -> Result<Splitting, FiberError> {
    if !is_prime(p) {
        return Err(FiberError::InvalidArgument(format!("{p} is not prime")));
    }
    if p > 1 << 20 {
        return Err(FiberError::TooLarge(
            "exhaustive root counting is capped at p <= 2^20".into(),
        ));
    }
    let pm = p as i128;
    let (a, b) = (a as i128, b as i128);
    let roots = (0..pm)
        .filter(|&r| (r * r + a * r + b).rem_euclid(pm) == 0)
        .count();
    Ok(match roots {
        2 => Splitting::TwoDistinctRoots,
        // over a field a quadratic with exactly one root has it doubled
        1 => Splitting::DoubleRoot,
        0 => Splitting::Irreducible,
        _ => unreachable!("a quadratic over a field has at most two roots"),
    })
}

pub fn discriminant(a: i64, b: i64) -> i128 {
    (a as i128) * (a as i128) - 4 * (b as i128)
}

/// Primes of the family ring over (p), from the splitting type alone.
///
/// Irreducible and double-root fibers give exactly one prime (the fiber
/// ring is local there); the split case contracts to at most two.
pub fn count_primes_over(p: u64, a: i64, b: i64) -> Result<FiberReport, FiberError> {
    let splitting = splitting_mod_p(p, a, b)?;
    let (quadratic, family) = match splitting {
        Splitting::TwoDistinctRoots => (2, FamilyFiber::AtMostTwo),
        Splitting::DoubleRoot => (1, FamilyFiber::Exactly(1)),
        Splitting::Irreducible => (1, FamilyFiber::Exactly(1)),
    };
    Ok(FiberReport {
        p,
        discriminant: discriminant(a, b),
        splitting,
        primes_over_quadratic: quadratic,
        primes_over_family: family,
    })
}

/// Primes of the duplication R join I over (p), for I = (gens) in Z:
/// one when I lands inside (p), two otherwise.
pub fn duplication_fiber(p: u64, gens: &[i64]) -> Result<u8, FiberError> {
    if !is_prime(p) {
        return Err(FiberError::InvalidArgument(format!("{p} is not prime")));
    }
    let collapsed = gens.iter().all(|&g| g.rem_euclid(p as i64) == 0);
    Ok(if collapsed { 1 } else { 2 })
}

/// Splitting of t^2 + at + b over Q: decided by the discriminant being a
/// perfect square.
pub fn splitting_over_rationals(a: i64, b: i64) -> Splitting {
    let disc = discriminant(a, b);
    if disc == 0 {
        return Splitting::DoubleRoot;
    }
    if disc < 0 {
        return Splitting::Irreducible;
    }
    let root = (disc as u128).isqrt();
    if root * root == disc as u128 {
        Splitting::TwoDistinctRoots
    } else {
        Splitting::Irreducible
    }
}

/// Fiber reports for every prime up to and including `p_max`.
pub fn sweep(a: i64, b: i64, p_max: u64) -> Result<Vec<FiberReport>, FiberError> {
    if p_max > MAX_SWEEP {
        return Err(FiberError::TooLarge(format!(
            "sweep endpoint {p_max} exceeds the cap {MAX_SWEEP}"
        )));
    }
    let mut out = Vec::new();
    for p in 2..=p_max {
        if is_prime(p) {
            out.push(count_primes_over(p, a, b)?);
        }
    }
    Ok(out)
}
