//! The case a pivot set leaves open: fraction identities built only from
//! non-pivot values, and the systems `f = 0, g_{i₁}^l = g_{i₂}^l = g_{i₃}^l = 1`
//! they lead to.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use serde::Serialize;

use super::systems::{eliminate, eliminate_y_side, AuxSystem};
use super::{PipelineError, TorusEquation};
use crate::cyclofield::field;
use crate::numtheory::{lcm_set, moduli_for_fraction, realizable_fractions, Fraction};
use crate::par::Execution;
use crate::poly::cyclotomic_divisors;

/// Sort key putting larger magnitudes first, negatives before positives.
fn order_key(v: Fraction) -> (Fraction, Fraction) {
    (-v.abs(), v)
}

/// Realizable values of magnitude at least `floor`, excluding pivots.
fn candidates(floor: Fraction, pivots: &BTreeSet<Fraction>) -> Vec<Fraction> {
    // |μ(M)/φ(M)| ≥ 1/d needs φ(M) ≤ d, hence M ≤ 2d²
    let d = (floor.recip().ceil()).to_integer().max(1) as u64;
    realizable_fractions(2 * d * d)
        .into_iter()
        .filter(|v| v.abs() >= floor && !pivots.contains(v))
        .collect()
}

fn search(
    need: Fraction,
    slots: usize,
    prev: Option<Fraction>,
    pivots: &BTreeSet<Fraction>,
    prefix: &mut Vec<Fraction>,
    out: &mut Vec<Vec<Fraction>>,
) -> Result<(), PipelineError> {
    let zero = Fraction::from(0);
    if slots == 0 {
        if need == zero {
            out.push(prefix.clone());
        }
        return Ok(());
    }
    if need == zero {
        if slots >= 2 {
            return Err(PipelineError::InfiniteResidualFamily { slots });
        }
        if !pivots.contains(&zero) {
            prefix.push(zero);
            out.push(prefix.clone());
            prefix.pop();
        }
        return Ok(());
    }
    // later values are no larger in magnitude, so one of them is ≥ |need|/slots
    let floor = need.abs() / Fraction::from(slots as i64);
    for v in candidates(floor, pivots) {
        if prev.is_some_and(|p| order_key(v) < order_key(p)) {
            continue;
        }
        prefix.push(v);
        search(need - v, slots - 1, Some(v), pivots, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Every multiset of `m` realizable values `μ(M)/φ(M)` avoiding the pivots
/// with `1 + Σ = 0`, each listed by decreasing magnitude. The value `0`
/// (non-squarefree `M`) is allowed.
pub fn residual_equalities(
    m: usize,
    pivots: &BTreeSet<Fraction>,
) -> Result<Vec<Vec<Fraction>>, PipelineError> {
    let mut out = Vec::new();
    search(Fraction::from(-1), m, None, pivots, &mut Vec::new(), &mut out)?;
    Ok(out)
}

/// Exponents `l` forced by residual identities: a nonzero value occurring at
/// least three times pins three of the `g_i` to order `l` for each `l` in
/// its modulus set. Identities without such a value are returned as
/// uncovered.
pub fn pinned_exponents(equalities: &[Vec<Fraction>]) -> (BTreeSet<u64>, Vec<Vec<Fraction>>) {
    let mut ls = BTreeSet::new();
    let mut uncovered = Vec::new();
    for eqn in equalities {
        let mut counts: BTreeMap<Fraction, usize> = BTreeMap::new();
        for &v in eqn {
            *counts.entry(v).or_default() += 1;
        }
        let pinned: BTreeSet<u64> = counts
            .iter()
            .filter(|(v, &c)| c >= 3 && *v.numer() != 0)
            .flat_map(|(&v, _)| moduli_for_fraction(v))
            .collect();
        if pinned.is_empty() {
            uncovered.push(eqn.clone());
        }
        ls.extend(pinned);
    }
    (ls, uncovered)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleSystem {
    pub indices: [usize; 3],
    pub l: u64,
    /// `"lattice"` when two constraints have independent exponent vectors,
    /// `"resultant"` otherwise.
    pub method: &'static str,
    /// Modulus of the enumeration grid.
    pub modulus: u64,
    pub solutions: Vec<(u64, u64)>,
}

/// All `{i₁ < i₂ < i₃}` with each `l`, ordered by `l`, then indices.
pub fn triple_systems(m: usize, ls: &BTreeSet<u64>) -> Vec<([usize; 3], u64)> {
    let mut out = Vec::new();
    for &l in ls {
        for i in 1..=m {
            for j in i + 1..=m {
                for k in j + 1..=m {
                    out.push(([i, j, k], l));
                }
            }
        }
    }
    out
}

fn det(p: (i64, i64), q: (i64, i64)) -> i64 {
    p.0 * q.1 - p.1 * q.0
}

/// Solves `f = 0, g_i^l = 1 (i ∈ indices)`. With two constraints of
/// determinant `Δ ≠ 0`, both `x` and `y` have order dividing `l·|Δ|`, so
/// the grid at that modulus is complete. If every pair is degenerate the
/// modulus comes from the cyclotomic factors of the single-constraint
/// eliminations instead.
pub fn solve_triple_system(
    eq: &TorusEquation,
    indices: [usize; 3],
    l: u64,
) -> Result<TripleSystem, PipelineError> {
    let exps = eq.exponents();
    let vec = |i: usize| exps[i - 1];
    let pair = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(p, q)| det(vec(indices[p]), vec(indices[q])))
        .find(|&d| d != 0);
    let (method, modulus) = match pair {
        Some(d) => ("lattice", l * d.unsigned_abs()),
        None => {
            let sys = AuxSystem { monomial_index: indices[0], l };
            let mut orders: BTreeSet<u64> = BTreeSet::new();
            for poly in [eliminate(eq, sys)?, eliminate_y_side(eq, sys)?] {
                if poly.degree().unwrap_or(0) > 0 {
                    orders.extend(cyclotomic_divisors(&poly));
                }
            }
            let orders: Vec<u64> = orders.into_iter().collect();
            let n = if orders.is_empty() { 1 } else { lcm_set(&orders)? };
            ("resultant", n)
        }
    };
    if modulus > super::MAX_MODULUS {
        return Err(PipelineError::ModulusTooLarge { n: modulus, limit: super::MAX_MODULUS });
    }
    let fld = field(modulus)?;
    let mut scratch = Vec::new();
    let mut solutions = Vec::new();
    for a in 0..modulus {
        for b in 0..modulus {
            let ks = eq.k_vector(a, b, modulus);
            if indices.iter().any(|&i| (l * ks[i - 1]) % modulus != 0) {
                continue;
            }
            let mut terms = vec![0];
            terms.extend(ks);
            if fld.power_sum_is_zero(&terms, &mut scratch) {
                solutions.push((a, b));
            }
        }
    }
    Ok(TripleSystem { indices, l, method, modulus, solutions })
}

/// Solves every triple system.
pub fn solve_triple_systems(
    eq: &TorusEquation,
    ls: &BTreeSet<u64>,
    exec: Execution,
) -> Result<Vec<TripleSystem>, PipelineError> {
    let all = triple_systems(eq.term_count(), ls);
    exec.map(&all, |&(idx, l)| solve_triple_system(eq, idx, l))
        .into_iter()
        .collect()
}
