//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)−1}` modulo
//! `Φ_N`, so two elements are equal exactly when their coefficient vectors
//! are. Each modulus carries a table of the reductions of `ζ^k`,
//! `0 ≤ k < N`, built once and shared through a process-wide cache.

mod ball;
mod elem;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::numtheory::euler_phi;
use crate::poly::cyclotomic_poly;

pub use ball::ComplexBall;
pub use elem::{sign_predicate, sign_predicate_refined, CycloElem, SignQuery};

/// Upper bound on `N·φ(N)` for the power table of a single modulus.
pub const MAX_TABLE_ENTRIES: u64 = 20_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("operands live in Q(zeta_{left}) and Q(zeta_{right})")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("Q(zeta_{from}) does not embed into Q(zeta_{to})")]
    NotDivisible { from: u64, to: u64 },
    #[error("{j} is not a unit modulo {n}")]
    NotCoprime { j: i64, n: u64 },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("power table for Q(zeta_{n}) would exceed {MAX_TABLE_ENTRIES} entries")]
    TableTooLarge { n: u64 },
    #[error("coefficients of zeta^k mod Phi_{n} overflow 64-bit integers")]
    Overflow { n: u64 },
}

/// Reduction data for one modulus `N`.
#[derive(Debug)]
pub struct CycloField {
    order: u64,
    degree: usize,
    powers: Vec<Vec<i64>>,
}

impl CycloField {
    fn build(n: u64) -> Result<Self, CycloError> {
        let degree = euler_phi(n).map_err(|_| CycloError::ZeroModulus)? as usize;
        if n.saturating_mul(degree as u64) > MAX_TABLE_ENTRIES {
            return Err(CycloError::TableTooLarge { n });
        }
        let phi: Vec<i64> = cyclotomic_poly(n)
            .coeffs()
            .iter()
            .map(|c| c.to_i64().ok_or(CycloError::Overflow { n }))
            .collect::<Result<_, _>>()?;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by ζ, then fold the overflow coefficient back with Φ_N (monic)
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (c, p) in cur.iter_mut().zip(&phi) {
                    *c = p
                        .checked_mul(top)
                        .and_then(|t| c.checked_sub(t))
                        .ok_or(CycloError::Overflow { n })?;
                }
            }
        }
        Ok(CycloField { order: n, degree, powers })
    }

    /// `N`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `φ(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of `ζ^k`, any integer `k`.
    pub fn power(&self, k: i64) -> &[i64] {
        &self.powers[k.rem_euclid(self.order as i64) as usize]
    }

    /// Coefficient vector of `Σ ζ^{e}` over the given exponents (already
    /// reduced modulo `N`).
    pub fn power_sum(&self, exponents: &[u64]) -> Vec<i64> {
        let mut acc = vec![0i64; self.degree];
        self.accumulate(exponents, &mut acc);
        acc
    }

    /// Exact test `Σ ζ^{e} = 0`, reusing `scratch` between calls.
    pub fn power_sum_is_zero(&self, exponents: &[u64], scratch: &mut Vec<i64>) -> bool {
        scratch.clear();
        scratch.resize(self.degree, 0);
        self.accumulate(exponents, scratch);
        scratch.iter().all(|&c| c == 0)
    }

    fn accumulate(&self, exponents: &[u64], acc: &mut [i64]) {
        for &e in exponents {
            for (a, p) in acc.iter_mut().zip(&self.powers[(e % self.order) as usize]) {
                *a += p;
            }
        }
    }

    /// The exponent `k` with `ζ^k` equal to the given coefficient vector,
    /// if there is one.
    pub fn root_exponent(&self, coeffs: &[i64]) -> Option<u64> {
        self.powers.iter().position(|p| p == coeffs).map(|k| k as u64)
    }
}

fn cache() -> &'static RwLock<HashMap<u64, Arc<CycloField>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shared reduction data for `Q(ζ_n)`. Concurrent first requests may each
/// build the table; the first insert wins and every caller sees the same
/// instance afterwards.
pub fn field(n: u64) -> Result<Arc<CycloField>, CycloError> {
    if n == 0 {
        return Err(CycloError::ZeroModulus);
    }
    if let Some(f) = cache().read().expect("field cache poisoned").get(&n) {
        return Ok(f.clone());
    }
    let built = Arc::new(CycloField::build(n)?);
    Ok(cache()
        .write()
        .expect("field cache poisoned")
        .entry(n)
        .or_insert(built)
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_table_basics() {
        let f = field(3).unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.power(2), &[-1, -1]);
        assert_eq!(f.power(-1), f.power(2));
        let f2 = field(2).unwrap();
        assert_eq!(f2.power(1), &[-1]);
        let f1 = field(1).unwrap();
        assert_eq!(f1.power(5), &[1]);
    }

    #[test]
    fn vanishing_sums() {
        let f = field(210).unwrap();
        let mut scratch = Vec::new();
        // f(ζ^15, ζ^30) at N = 210
        assert!(f.power_sum_is_zero(&[0, 15, 30, 120, 105, 135], &mut scratch));
        assert!(!f.power_sum_is_zero(&[0, 30], &mut scratch));
        assert!(f.power_sum_is_zero(&[0, 70, 140], &mut scratch));
    }

    #[test]
    fn cache_shares_instances() {
        let a = field(30).unwrap();
        let b = field(30).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(field(0).unwrap_err(), CycloError::ZeroModulus);
    }

    #[test]
    fn concurrent_first_build() {
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| field(462).unwrap()))
            .collect();
        let fields: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for f in &fields[1..] {
            assert!(Arc::ptr_eq(&fields[0], f));
        }
    }

    #[test]
    fn root_exponent_lookup() {
        let f = field(15).unwrap();
        assert_eq!(f.root_exponent(&f.power(11).to_vec()), Some(11));
        let mut not_root = f.power(1).to_vec();
        not_root[0] += 1;
        assert_eq!(f.root_exponent(&not_root), None);
    }
}
