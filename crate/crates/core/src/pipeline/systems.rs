//! Pivot sets, auxiliary systems `f = 0, g_i^l = 1`, and their elimination
//! to univariate polynomials whose cyclotomic factors bound the modulus.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{PipelineError, TorusEquation};
use crate::numtheory::{lcm_set, moduli_for_fraction, realizable_fractions, Fraction};
use crate::par::Execution;
use crate::poly::{cyclotomic_divisors, resultant_wrt_x, resultant_wrt_y, BiLaurent, IntPoly};

/// Largest modulus the enumeration stage accepts.
pub const MAX_MODULUS: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Route {
    #[serde(rename = "main")]
    Main,
    #[serde(rename = "alternative")]
    Alternative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotConfig {
    pub values: BTreeSet<Fraction>,
    pub route: Route,
}

impl PivotConfig {
    /// `{−1, −1/2, −1/4}`
    pub fn main() -> Self {
        PivotConfig {
            values: [Fraction::from(-1), Fraction::new(-1, 2), Fraction::new(-1, 4)].into(),
            route: Route::Main,
        }
    }

    /// `{−1, −1/2}`
    pub fn alternative() -> Self {
        PivotConfig {
            values: [Fraction::from(-1), Fraction::new(-1, 2)].into(),
            route: Route::Alternative,
        }
    }

    /// The exponents `l` with `g^l = 1` forced by a pivot value.
    pub fn exponents(&self) -> BTreeSet<u64> {
        self.values.iter().flat_map(|&v| moduli_for_fraction(v)).collect()
    }
}

/// One system `f = 0, g_i^l = 1`; `monomial_index` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AuxSystem {
    #[serde(rename = "i")]
    pub monomial_index: usize,
    pub l: u64,
}

/// Largest magnitude among negative realizable values `μ(M)/φ(M)` that are
/// not pivots, over `M ≤ bound`.
fn largest_unpivoted(values: &BTreeSet<Fraction>, bound: u64) -> Fraction {
    realizable_fractions(bound)
        .into_iter()
        .filter(|v| *v.numer() < 0 && !values.contains(v))
        .map(|v| -v)
        .max()
        .unwrap_or_else(|| Fraction::from(0))
}

/// Whether omitting every pivot forces `1 + Σ fractions > 0` for `m`
/// fractions: each negative non-pivot value has magnitude at most `w` and
/// `m·w < 1`.
pub fn validate_pivot(m: usize, values: &BTreeSet<Fraction>) -> bool {
    let bound = 2 * (m as u64 + 1).pow(2);
    largest_unpivoted(values, bound) * Fraction::from(m as i64) < Fraction::from(1)
}

/// The smallest pivot set that passes [`validate_pivot`], taking negative
/// realizable values in order of decreasing magnitude.
pub fn minimal_pivot_set(m: usize) -> BTreeSet<Fraction> {
    let bound = 2 * (m as u64 + 1).pow(2);
    let mut values = BTreeSet::new();
    for v in realizable_fractions(bound).into_iter().filter(|v| *v.numer() < 0) {
        if validate_pivot(m, &values) {
            break;
        }
        values.insert(v);
    }
    values
}

/// All `(i, l)` for `i = 1..=m` and `l` forced by the pivots, ordered by
/// `i`, then `l`.
pub fn generate_systems(m: usize, config: &PivotConfig) -> Vec<AuxSystem> {
    let ls = config.exponents();
    (1..=m)
        .flat_map(|i| ls.iter().map(move |&l| AuxSystem { monomial_index: i, l }))
        .collect()
}

/// `g^l − 1` as a Laurent polynomial.
fn power_minus_one(g: &BiLaurent, l: u64) -> BiLaurent {
    &g.pow(l as u32) - &BiLaurent::one()
}

/// `squarefree(primitive(Res_y(f, g_i^l − 1)))`. Every solution of the
/// system has an `x` that is a root of the result.
pub fn eliminate(eq: &TorusEquation, sys: AuxSystem) -> Result<IntPoly, PipelineError> {
    let g = eq.monomial(sys.monomial_index);
    let r = resultant_wrt_y(&eq.polynomial(), &power_minus_one(&g, sys.l))?;
    Ok(r.primitive_part().squarefree_part())
}

/// The same elimination with the roles of `x` and `y` exchanged.
pub fn eliminate_y_side(eq: &TorusEquation, sys: AuxSystem) -> Result<IntPoly, PipelineError> {
    let g = eq.monomial(sys.monomial_index);
    let r = resultant_wrt_x(&eq.polynomial(), &power_minus_one(&g, sys.l))?;
    Ok(r.primitive_part().squarefree_part())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminatedSystem {
    #[serde(flatten)]
    pub system: AuxSystem,
    #[serde(rename = "deg_F")]
    pub degree: usize,
    pub cyclotomic_divisors: BTreeSet<u64>,
    #[serde(skip)]
    pub polynomial: IntPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub systems: Vec<EliminatedSystem>,
    pub index_set: BTreeSet<u64>,
    pub modulus: u64,
}

fn eliminate_and_scan(
    eq: &TorusEquation,
    sys: AuxSystem,
    y_side: bool,
) -> Result<EliminatedSystem, PipelineError> {
    let polynomial = if y_side { eliminate_y_side(eq, sys)? } else { eliminate(eq, sys)? };
    let degree = polynomial.degree().unwrap_or(0);
    let cyclotomic_divisors = if degree == 0 {
        BTreeSet::new()
    } else {
        cyclotomic_divisors(&polynomial)
    };
    Ok(EliminatedSystem { system: sys, degree, cyclotomic_divisors, polynomial })
}

/// Eliminates every system and collects the orders of the cyclotomic
/// factors. For an equation symmetric under `x ↔ y` the `x` side bounds
/// both coordinates; otherwise the `y` side is scanned too. The modulus is
/// the lcm of the collected orders.
pub fn scan_systems(
    eq: &TorusEquation,
    systems: &[AuxSystem],
    exec: Execution,
) -> Result<ScanResult, PipelineError> {
    if systems.is_empty() {
        return Err(PipelineError::NoSystems);
    }
    let x_side: Vec<EliminatedSystem> = exec
        .map(systems, |&s| eliminate_and_scan(eq, s, false))
        .into_iter()
        .collect::<Result<_, _>>()?;
    let mut index_set: BTreeSet<u64> =
        x_side.iter().flat_map(|s| s.cyclotomic_divisors.iter().copied()).collect();
    if !eq.is_symmetric() {
        let y_side: Vec<EliminatedSystem> = exec
            .map(systems, |&s| eliminate_and_scan(eq, s, true))
            .into_iter()
            .collect::<Result<_, _>>()?;
        index_set.extend(y_side.iter().flat_map(|s| s.cyclotomic_divisors.iter().copied()));
    }
    let orders: Vec<u64> = index_set.iter().copied().collect();
    let modulus = if orders.is_empty() { 1 } else { lcm_set(&orders)? };
    if modulus > MAX_MODULUS {
        return Err(PipelineError::ModulusTooLarge { n: modulus, limit: MAX_MODULUS });
    }
    Ok(ScanResult { systems: x_side, index_set, modulus })
}
