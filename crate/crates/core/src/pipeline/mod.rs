//! The solver: pivot analysis, elimination of the auxiliary systems,
//! modulus selection, exhaustive enumeration over `(ζ_N^a, ζ_N^b)`,
//! classification and audits of every solution, the positivity filter, and
//! the alternative route through residual fraction identities.

mod classify;
mod enumerate;
mod report;
mod residual;
mod systems;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cyclofield::CycloError;
use crate::numtheory::NumTheoryError;
use crate::poly::{BiLaurent, PolyError};

pub use classify::{
    class_members, classify, matches_template, ramanujan_audit, sharygin_filter, vanishing_sum_decompose, Block,
    BlockKind, ClassTag, RamanujanPattern, ALPHA, BETA, GAMMA, MINUS_ONE, REFERENCE_MODULUS,
};
pub use enumerate::{brute_force_enumerate, SolutionRecord};
pub use report::{
    alternative_route, expected_residual_equalities, main_route, prove, solve_generic, Assertion,
    ProofReport, RouteReport, RouteSelection, SolveReport, Status,
};
pub use residual::{
    pinned_exponents, residual_equalities, solve_triple_system, solve_triple_systems, triple_systems,
    TripleSystem,
};
pub use systems::{
    eliminate, eliminate_y_side, generate_systems, minimal_pivot_set, scan_systems,
    validate_pivot, AuxSystem, EliminatedSystem, PivotConfig, Route, ScanResult, MAX_MODULUS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] CycloError),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
    #[error("no auxiliary systems to scan")]
    NoSystems,
    #[error("modulus {n} exceeds the enumeration limit {limit}")]
    ModulusTooLarge { n: u64, limit: u64 },
    #[error("unsupported equation: {0}")]
    Shape(String),
    #[error("residual fraction identities with {slots} free slots summing to zero form an infinite family")]
    InfiniteResidualFamily { slots: usize },
}

/// The equation `1 + Σ_i x^{p_i} y^{q_i} = 0` on the torus, given by the
/// exponent pairs `(p_i, q_i)` of its non-constant monomials `g_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusEquation {
    exponents: Vec<(i64, i64)>,
}

impl TorusEquation {
    /// Validates the shape: at least one monomial, no constant or repeated
    /// monomial, and both variables present.
    pub fn new(exponents: Vec<(i64, i64)>) -> Result<Self, PipelineError> {
        if exponents.is_empty() {
            return Err(PipelineError::Shape("no monomials besides the constant".into()));
        }
        if exponents.contains(&(0, 0)) {
            return Err(PipelineError::Shape("more than one constant term".into()));
        }
        let distinct: BTreeSet<_> = exponents.iter().collect();
        if distinct.len() != exponents.len() {
            return Err(PipelineError::Shape("repeated monomial".into()));
        }
        if exponents.iter().all(|e| e.0 == 0) || exponents.iter().all(|e| e.1 == 0) {
            return Err(PipelineError::Shape("both x and y must appear".into()));
        }
        Ok(TorusEquation { exponents })
    }

    /// `1 + x + y + x²y³ + x³y² + x³y³`
    pub fn sharygin() -> Self {
        TorusEquation { exponents: vec![(1, 0), (0, 1), (2, 3), (3, 2), (3, 3)] }
    }

    /// Reads `1 + Σ monomials` from a polynomial whose coefficients are all
    /// `1` and whose constant term is present. Monomials are ordered by total
    /// degree, then by decreasing power of `x`.
    pub fn from_polynomial(p: &BiLaurent) -> Result<Self, PipelineError> {
        let mut exps = Vec::new();
        let mut has_constant = false;
        for (&(i, j), c) in p.terms() {
            if *c != 1.into() {
                return Err(PipelineError::Shape(format!(
                    "coefficient {c} on x^{i}*y^{j}; only unit coefficients are supported"
                )));
            }
            if (i, j) == (0, 0) {
                has_constant = true;
            } else {
                exps.push((i, j));
            }
        }
        if !has_constant {
            return Err(PipelineError::Shape("the constant term 1 is missing".into()));
        }
        exps.sort_by_key(|&(i, j)| (i + j, -i));
        Self::new(exps)
    }

    /// Number of non-constant monomials.
    pub fn term_count(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[(i64, i64)] {
        &self.exponents
    }

    /// `g_i` for `1 ≤ i ≤ term_count()`.
    pub fn monomial(&self, i: usize) -> BiLaurent {
        let (p, q) = self.exponents[i - 1];
        BiLaurent::monomial(1.into(), p, q)
    }

    pub fn polynomial(&self) -> BiLaurent {
        let mut all = vec![(0, 0)];
        all.extend_from_slice(&self.exponents);
        BiLaurent::from_exponents(&all)
    }

    /// Exponents `k_i = p_i·a + q_i·b` reduced modulo `n`.
    pub fn k_vector(&self, a: u64, b: u64, n: u64) -> Vec<u64> {
        let (a, b, n) = (a as i128, b as i128, n as i128);
        self.exponents
            .iter()
            .map(|&(p, q)| ((p as i128 * a + q as i128 * b).rem_euclid(n)) as u64)
            .collect()
    }

    /// Whether `x ↔ y` maps the equation to itself.
    pub fn is_symmetric(&self) -> bool {
        let a: BTreeSet<_> = self.exponents.iter().copied().collect();
        let b: BTreeSet<_> = self.exponents.iter().map(|&(p, q)| (q, p)).collect();
        a == b
    }
}

/// `1 + x + y + x²y³ + x³y² + x³y³`
pub fn sharygin_polynomial() -> BiLaurent {
    BiLaurent::sharygin()
}
