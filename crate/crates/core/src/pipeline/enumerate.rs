use serde::{Serialize, Serializer};

use super::classify::{classify, vanishing_sum_decompose, Block, ClassTag};
use super::{PipelineError, TorusEquation};
use crate::cyclofield::field;
use crate::numtheory::{fraction_mu_phi, gcd_mod, Fraction};
use crate::par::Execution;

/// A verified solution `(ζ_N^a, ζ_N^b)` with its derived data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionRecord {
    pub a: u64,
    pub b: u64,
    #[serde(skip)]
    pub modulus: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassTag>,
    /// Exponents of the monomials `g_i` at `(a, b)`, modulo `N`.
    pub k_vector: Vec<u64>,
    /// `μ(M_i)/φ(M_i)` with `M_i = N/gcd(k_i, N)`.
    #[serde(serialize_with = "fraction_strings")]
    pub fractions: Vec<Fraction>,
    /// Zero-sum blocks of `1 + Σ ζ^{k_i}`; `None` if no partition into
    /// antipodal pairs and `ζ₃`-orbits exists.
    pub decomposition: Option<Vec<Block>>,
}

fn fraction_strings<S: Serializer>(v: &[Fraction], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|f| f.to_string()))
}

impl SolutionRecord {
    /// Builds the record for a pair already known to be a solution.
    pub fn new(eq: &TorusEquation, a: u64, b: u64, n: u64) -> Result<Self, PipelineError> {
        let k_vector = eq.k_vector(a, b, n);
        let fractions = k_vector
            .iter()
            .map(|&k| fraction_mu_phi(n / gcd_mod(k as i64, n)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut terms = vec![0u64];
        terms.extend_from_slice(&k_vector);
        let class = if *eq == TorusEquation::sharygin() { classify(a, b, n) } else { None };
        Ok(SolutionRecord {
            a,
            b,
            modulus: n,
            class,
            decomposition: vanishing_sum_decompose(&terms, n),
            k_vector,
            fractions,
        })
    }

    /// Exponents of all terms, the constant first.
    pub fn term_exponents(&self) -> Vec<u64> {
        let mut t = vec![0];
        t.extend_from_slice(&self.k_vector);
        t
    }
}

/// Every `(a, b) ∈ [0, N)²` with `1 + Σ ζ_N^{k_i} = 0`, tested exactly in
/// `Q(ζ_N)`, in lexicographic order. Rows of the grid are independent.
pub fn brute_force_enumerate(
    eq: &TorusEquation,
    n: u64,
    exec: Execution,
) -> Result<Vec<SolutionRecord>, PipelineError> {
    let fld = field(n)?;
    let rows = exec.map_range(0..n, |a| {
        let mut scratch = Vec::new();
        let mut terms = Vec::with_capacity(eq.term_count() + 1);
        let mut hits = Vec::new();
        for b in 0..n {
            terms.clear();
            terms.push(0);
            terms.extend(eq.k_vector(a, b, n));
            if fld.power_sum_is_zero(&terms, &mut scratch) {
                hits.push(b);
            }
        }
        hits.into_iter().map(|b| SolutionRecord::new(eq, a, b, n)).collect::<Result<Vec<_>, _>>()
    });
    let mut out = Vec::new();
    for row in rows {
        out.extend(row?);
    }
    Ok(out)
}
