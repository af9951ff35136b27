//! Elementary arithmetic functions: Euler's totient, the Möbius function,
//! Ramanujan sums and the inverse map from a value of `μ(M)/φ(M)` back to
//! the moduli `M` realizing it.
//!
//! Arguments throughout the crate stay well below `10^6`, so factorization
//! is plain trial division.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;
use thiserror::Error;

use crate::cyclofield::{self, CycloError};

/// A rational number in lowest terms with a positive denominator.
pub type Fraction = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumTheoryError {
    #[error("argument must be a positive integer, got 0")]
    Zero,
    #[error("lcm of an empty set is undefined")]
    EmptySet,
    #[error("Ramanujan sum c_{n}({k}) did not reduce to a rational integer")]
    NonIntegral { n: u64, k: i64 },
    #[error(transparent)]
    Field(#[from] CycloError),
}

fn positive(n: u64) -> Result<u64, NumTheoryError> {
    if n == 0 {
        Err(NumTheoryError::Zero)
    } else {
        Ok(n)
    }
}

/// Prime factorization `n = ∏ p^e`, primes ascending. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> Result<u64, NumTheoryError> {
    let n = positive(n)?;
    Ok(factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

pub fn moebius(n: u64) -> Result<i64, NumTheoryError> {
    let n = positive(n)?;
    let mut mu = 1;
    for (_, e) in factorize(n) {
        if e > 1 {
            return Ok(0);
        }
        mu = -mu;
    }
    Ok(mu)
}

/// `gcd(k, n)` with `k` reduced modulo `n` first; `k ≡ 0` gives `n`.
pub fn gcd_mod(k: i64, n: u64) -> u64 {
    let r = k.rem_euclid(n as i64) as u64;
    if r == 0 {
        n
    } else {
        r.gcd(&n)
    }
}

/// `c_n(k)` through the closed form `φ(n)·μ(M)/φ(M)`, `M = n/gcd(k,n)`.
pub fn ramanujan_sum(n: u64, k: i64) -> Result<i64, NumTheoryError> {
    let n = positive(n)?;
    let m = n / gcd_mod(k, n);
    Ok(euler_phi(n)? as i64 / euler_phi(m)? as i64 * moebius(m)?)
}

/// `c_n(k)` evaluated as the literal sum `Σ_{gcd(j,n)=1} ζ_n^{kj}` inside
/// `Q(ζ_n)`. The result must reduce to a rational integer; anything else is
/// reported as an arithmetic fault.
pub fn ramanujan_sum_direct(n: u64, k: i64) -> Result<i64, NumTheoryError> {
    let n = positive(n)?;
    let field = cyclofield::field(n)?;
    let kk = k.rem_euclid(n as i64) as u64;
    let exponents: Vec<u64> = (1..=n)
        .filter(|j| j.gcd(&n) == 1)
        .map(|j| (kk * j) % n)
        .collect();
    let sum = field.power_sum(&exponents);
    if sum[1..].iter().any(|&c| c != 0) {
        return Err(NumTheoryError::NonIntegral { n, k });
    }
    Ok(sum[0])
}

/// `μ(m)/φ(m)` in lowest terms.
pub fn fraction_mu_phi(m: u64) -> Result<Fraction, NumTheoryError> {
    let phi = euler_phi(m)? as i64;
    Ok(Fraction::new(moebius(m)?, phi))
}

/// Every `M` with `μ(M)/φ(M) = v`.
///
/// Nonzero values have the shape `±1/d`; since `φ(M) ≥ √(M/2)` every
/// candidate satisfies `M ≤ 2d²`, so the scan below is exhaustive. Zero is
/// realized by every non-squarefree `M` and yields the empty set here, as
/// do values that are not of the form `±1/d`.
pub fn moduli_for_fraction(v: Fraction) -> BTreeSet<u64> {
    if *v.numer() == 0 || v.numer().abs() != 1 {
        return BTreeSet::new();
    }
    let d = *v.denom() as u64;
    (1..=2 * d * d)
        .filter(|&m| fraction_mu_phi(m).map(|f| f == v).unwrap_or(false))
        .collect()
}

pub fn lcm_set(values: &[u64]) -> Result<u64, NumTheoryError> {
    if values.is_empty() {
        return Err(NumTheoryError::EmptySet);
    }
    values.iter().try_fold(1u64, |acc, &v| {
        positive(v)?;
        Ok(acc.lcm(&v))
    })
}

/// Distinct nonzero values of `μ(M)/φ(M)` over `1 ≤ M ≤ bound`, ordered by
/// decreasing absolute value (negative before positive on ties).
pub fn realizable_fractions(bound: u64) -> Vec<Fraction> {
    let set: BTreeSet<Fraction> = (1..=bound)
        .filter_map(|m| fraction_mu_phi(m).ok())
        .filter(|f| *f.numer() != 0)
        .collect();
    let mut out: Vec<Fraction> = set.into_iter().collect();
    out.sort_by(|a, b| b.abs().cmp(&a.abs()).then(a.cmp(b)));
    out
}
