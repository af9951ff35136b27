use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::IntPoly;
use crate::numtheory::{divisors, euler_phi};

fn cache() -> &'static Mutex<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Φ_n(x)`, obtained as `(xⁿ − 1) / ∏_{d | n, d < n} Φ_d(x)`.
///
/// # Panics
/// If `n == 0`.
pub fn cyclotomic_poly(n: u64) -> Arc<IntPoly> {
    assert!(n > 0, "cyclotomic polynomial index must be positive");
    if let Some(p) = cache().lock().expect("cache poisoned").get(&n) {
        return p.clone();
    }
    let mut denom = IntPoly::constant(BigInt::one());
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        denom = &denom * &cyclotomic_poly(d);
    }
    let phi = IntPoly::x_pow_minus_one(n as usize)
        .exact_div(&denom)
        .expect("product of proper-divisor cyclotomic polynomials divides x^n - 1");
    let phi = Arc::new(phi);
    cache()
        .lock()
        .expect("cache poisoned")
        .entry(n)
        .or_insert(phi)
        .clone()
}

/// All `n` with `Φ_n | f`. Candidates satisfy `φ(n) ≤ deg f`, and since
/// `φ(n) ≥ √(n/2)` they are bounded by `n ≤ 2·(deg f)²`, which makes the
/// scan complete.
///
/// # Panics
/// If `f` is zero.
pub fn cyclotomic_divisors(f: &IntPoly) -> BTreeSet<u64> {
    let d = f.degree().expect("cyclotomic_divisors of the zero polynomial") as u64;
    (1..=(2 * d * d).max(1))
        .filter(|&n| euler_phi(n).map(|p| p <= d).unwrap_or(false))
        .filter(|&n| {
            f.rem_monic(&cyclotomic_poly(n))
                .map(|r| r.is_zero())
                .unwrap_or(false)
        })
        .collect()
}
