//! The four explicit solution classes at `N = 210`, the fraction-identity
//! audit, the decomposition of each vanishing sum into minimal blocks, and
//! the positivity filter.

use std::collections::BTreeSet;

use serde::Serialize;

use super::enumerate::SolutionRecord;
use crate::numtheory::{euler_phi, ramanujan_sum, Fraction};

/// Modulus at which the classes are written down.
pub const REFERENCE_MODULUS: u64 = 210;
/// `ζ₃ = ζ₂₁₀^70`
pub const ALPHA: u64 = 70;
/// `ζ₅ = ζ₂₁₀^42`
pub const BETA: u64 = 42;
/// `ζ₇ = ζ₂₁₀^30`
pub const GAMMA: u64 = 30;
/// `−1 = ζ₂₁₀^105`
pub const MINUS_ONE: u64 = 105;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ClassTag {
    S0,
    S1,
    S2,
    S3,
}

impl ClassTag {
    pub const ALL: [ClassTag; 4] = [ClassTag::S0, ClassTag::S1, ClassTag::S2, ClassTag::S3];
}

impl std::fmt::Display for ClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

fn e(x: u64) -> u64 {
    x % REFERENCE_MODULUS
}

fn neg(x: u64) -> u64 {
    e(x + MINUS_ONE)
}

/// Members of a class as exponent pairs modulo 210, built from `α`, `β`,
/// `γ` and `−1` exactly as the classes are defined.
pub fn class_members(tag: ClassTag) -> Vec<(u64, u64)> {
    let (a, a2) = (ALPHA, e(2 * ALPHA));
    match tag {
        ClassTag::S0 => vec![(0, MINUS_ONE), (MINUS_ONE, 0)],
        ClassTag::S1 => vec![
            (a, a),
            (a2, a),
            (a, a2),
            (a2, a2),
            (a, neg(a)),
            (neg(a), a),
            (a2, neg(a2)),
            (neg(a2), a2),
        ],
        ClassTag::S2 => {
            let bl = |l: u64| e(l * BETA);
            let mut v: Vec<_> = (1..=4).map(|l| (e(bl(l) + a), e(bl(l) + a2))).collect();
            v.extend((1..=4).map(|l| (e(bl(l) + a2), e(bl(l) + a))));
            v
        }
        ClassTag::S3 => {
            let g = |m: u64| e(m * GAMMA);
            let first = [(1, 4), (2, 1), (3, 5), (4, 2), (5, 6), (6, 3)];
            let second = [(1, 2), (2, 4), (3, 6), (4, 1), (5, 3), (6, 5)];
            let mut v: Vec<_> = first.iter().map(|&(p, q)| (g(p), neg(g(q)))).collect();
            v.extend(second.iter().map(|&(p, q)| (neg(g(p)), g(q))));
            v
        }
    }
}

/// The class of `(ζ_n^a, ζ_n^b)` after rewriting it over `ζ₂₁₀`; `None` if
/// the point is not a 210th root pair or lies in no class.
pub fn classify(a: u64, b: u64, n: u64) -> Option<ClassTag> {
    // ζ_n^a = ζ_210^(210a/n) must be exact
    let (ra, rb) = ((a * REFERENCE_MODULUS) % n, (b * REFERENCE_MODULUS) % n);
    if ra != 0 || rb != 0 {
        return None;
    }
    let p = ((a * REFERENCE_MODULUS) / n, (b * REFERENCE_MODULUS) / n);
    ClassTag::ALL.into_iter().find(|&t| class_members(t).contains(&p))
}

/// One of the eight fraction identities `1 + Σ μ(M_i)/φ(M_i) = 0` realized
/// by the solutions, with fractions in monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamanujanPattern {
    pub index: usize,
    pub fractions: [Fraction; 5],
}

impl RamanujanPattern {
    pub fn all() -> Vec<RamanujanPattern> {
        let f = |p: i64, q: i64| Fraction::new(p, q);
        let rows = [
            [f(1, 1), f(-1, 1), f(-1, 1), f(1, 1), f(-1, 1)],
            [f(-1, 1), f(1, 1), f(1, 1), f(-1, 1), f(-1, 1)],
            [f(1, 2), f(-1, 2), f(-1, 2), f(1, 2), f(-1, 1)],
            [f(-1, 2), f(1, 2), f(1, 2), f(-1, 2), f(-1, 1)],
            [f(1, 6), f(-1, 6), f(-1, 6), f(-1, 1), f(1, 6)],
            [f(-1, 6), f(1, 6), f(-1, 1), f(-1, 6), f(1, 6)],
            [f(-1, 2), f(-1, 2), f(-1, 2), f(-1, 2), f(1, 1)],
            [f(1, 8), f(1, 8), f(-1, 2), f(-1, 2), f(-1, 4)],
        ];
        rows.into_iter()
            .enumerate()
            .map(|(i, fractions)| RamanujanPattern { index: i + 1, fractions })
            .collect()
    }
}

/// Checks `φ(N) + Σ c_N(k_i) = 0` with integer Ramanujan sums and
/// `1 + Σ fractions = 0`, then finds the listed identity the fractions
/// realize. Returns the pattern index or a description of the failure.
pub fn ramanujan_audit(sol: &SolutionRecord) -> Result<usize, String> {
    let n = sol.modulus;
    let phi = euler_phi(n).map_err(|e| e.to_string())? as i64;
    let mut total = phi;
    for &k in &sol.k_vector {
        total += ramanujan_sum(n, k as i64).map_err(|e| e.to_string())?;
    }
    if total != 0 {
        return Err(format!("phi(N) + sum of Ramanujan sums is {total}"));
    }
    let sum: Fraction = sol.fractions.iter().sum();
    if sum != Fraction::from(-1) {
        return Err(format!("1 + sum of fractions is {}", sum + 1));
    }
    RamanujanPattern::all()
        .into_iter()
        .find(|p| p.fractions[..] == sol.fractions[..])
        .map(|p| p.index)
        .ok_or_else(|| "fractions match no listed identity".to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    /// `u + (−u)`
    Pair,
    /// `u + uζ₃ + uζ₃²`
    Orbit,
}

/// A zero-sum block: term indices (0 is the constant, `i` is `g_i`) and
/// their exponents modulo `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    pub terms: Vec<usize>,
    pub exponents: Vec<u64>,
}

fn search(
    exps: &[u64],
    n: u64,
    used: &mut Vec<bool>,
    current: &mut Vec<Block>,
    best: &mut Option<Vec<Block>>,
) {
    let Some(t0) = used.iter().position(|u| !u) else {
        if best.as_ref().is_none_or(|b| current.len() > b.len()) {
            *best = Some(current.clone());
        }
        return;
    };
    used[t0] = true;
    let free: Vec<usize> = (t0 + 1..exps.len()).filter(|&u| !used[u]).collect();
    if n % 2 == 0 {
        for &u in &free {
            if (exps[t0] + n / 2) % n == exps[u] {
                used[u] = true;
                current.push(Block {
                    kind: BlockKind::Pair,
                    terms: vec![t0, u],
                    exponents: vec![exps[t0], exps[u]],
                });
                search(exps, n, used, current, best);
                current.pop();
                used[u] = false;
            }
        }
    }
    if n % 3 == 0 {
        let (s1, s2) = ((exps[t0] + n / 3) % n, (exps[t0] + 2 * n / 3) % n);
        for (i, &u) in free.iter().enumerate() {
            for &v in &free[i + 1..] {
                let (eu, ev) = (exps[u], exps[v]);
                if (eu == s1 && ev == s2) || (eu == s2 && ev == s1) {
                    used[u] = true;
                    used[v] = true;
                    current.push(Block {
                        kind: BlockKind::Orbit,
                        terms: vec![t0, u, v],
                        exponents: vec![exps[t0], eu, ev],
                    });
                    search(exps, n, used, current, best);
                    current.pop();
                    used[u] = false;
                    used[v] = false;
                }
            }
        }
    }
    used[t0] = false;
}

/// Partitions the terms `ζ_n^{e}` into antipodal pairs and rotated
/// `ζ₃`-orbits, exhaustively. Among complete partitions the one with the
/// most blocks wins; ties go to the first found, with pairs tried before
/// orbits.
pub fn vanishing_sum_decompose(exponents: &[u64], n: u64) -> Option<Vec<Block>> {
    let exps: Vec<u64> = exponents.iter().map(|x| x % n).collect();
    let mut best = None;
    search(&exps, n, &mut vec![false; exps.len()], &mut Vec::new(), &mut best);
    best
}

/// `σ = (1 4 2)(3 5 6)`
fn sigma(m: u64) -> u64 {
    match m {
        1 => 4,
        4 => 2,
        2 => 1,
        3 => 5,
        5 => 6,
        6 => 3,
        other => other,
    }
}

/// Whether a decomposition has the shape expected for its class:
///
/// - S0: three pairs;
/// - S1: three pairs, or two `ζ₃`-orbits;
/// - S2: the orbit `1 + α + α²` and its rotation by `β^l`, `1 ≤ l ≤ 4`;
/// - S3: `{1, −1}`, `{γ^m, −γ^m}` and `{γ^{σ(m)}, −γ^{σ(m)}}`.
pub fn matches_template(tag: ClassTag, blocks: &[Block], n: u64) -> bool {
    if n != REFERENCE_MODULUS {
        return false;
    }
    let pairs = blocks.iter().filter(|b| b.kind == BlockKind::Pair).count();
    let orbits = blocks.len() - pairs;
    let exps = |b: &Block| b.exponents.iter().copied().collect::<BTreeSet<u64>>();
    match tag {
        ClassTag::S0 => pairs == 3 && orbits == 0,
        ClassTag::S1 => (pairs == 3 && orbits == 0) || (pairs == 0 && orbits == 2),
        ClassTag::S2 => {
            if pairs != 0 || orbits != 2 {
                return false;
            }
            let base: BTreeSet<u64> = [0, ALPHA, e(2 * ALPHA)].into();
            let Some(other) = blocks.iter().find(|b| !b.terms.contains(&0)) else {
                return false;
            };
            let with_one = blocks.iter().find(|b| b.terms.contains(&0));
            with_one.is_some_and(|b| exps(b) == base)
                && (1..=4).any(|l| {
                    exps(other) == base.iter().map(|&x| e(x + l * BETA)).collect::<BTreeSet<_>>()
                })
        }
        ClassTag::S3 => {
            if pairs != 3 {
                return false;
            }
            let mut ms = Vec::new();
            for b in blocks {
                let s = exps(b);
                if b.terms.contains(&0) {
                    if s != BTreeSet::from([0, MINUS_ONE]) {
                        return false;
                    }
                    continue;
                }
                match (1..=6).find(|&m| s == BTreeSet::from([e(m * GAMMA), neg(m * GAMMA)])) {
                    Some(m) => ms.push(m),
                    None => return false,
                }
            }
            ms.len() == 2 && (sigma(ms[0]) == ms[1] || sigma(ms[1]) == ms[0])
        }
    }
}

/// Keeps the solutions whose `x`, `y` and `xy` all have strictly positive
/// real and imaginary parts, i.e. whose exponents `e` satisfy `0 < 4e < N`.
pub fn sharygin_filter(sols: &[SolutionRecord]) -> Vec<SolutionRecord> {
    let first_quadrant = |x: u64, n: u64| x > 0 && 4 * x < n;
    sols.iter()
        .filter(|s| {
            let n = s.modulus;
            first_quadrant(s.a % n, n) && first_quadrant(s.b % n, n) && first_quadrant((s.a + s.b) % n, n)
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::TorusEquation;

    fn record(a: u64, b: u64) -> SolutionRecord {
        SolutionRecord::new(&TorusEquation::sharygin(), a, b, 210).unwrap()
    }

    #[test]
    fn class_sizes() {
        let sizes: Vec<usize> = ClassTag::ALL.iter().map(|&t| class_members(t).len()).collect();
        assert_eq!(sizes, vec![2, 8, 8, 12]);
        let all: BTreeSet<(u64, u64)> =
            ClassTag::ALL.iter().flat_map(|&t| class_members(t)).collect();
        assert_eq!(all.len(), 30);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(0, 105, 210), Some(ClassTag::S0));
        assert_eq!(classify(112, 182, 210), Some(ClassTag::S2));
        assert_eq!(classify(15, 30, 210), Some(ClassTag::S3));
        assert_eq!(classify(1, 2, 210), None);
        // (1, −1) at N = 2
        assert_eq!(classify(0, 1, 2), Some(ClassTag::S0));
        assert_eq!(classify(30, 60, 420), Some(ClassTag::S3));
        assert_eq!(classify(1, 0, 4), None);
    }

    #[test]
    fn audit_examples() {
        assert_eq!(ramanujan_audit(&record(0, 105)), Ok(1));
        let p = ramanujan_audit(&record(70, 70)).unwrap();
        assert!(p == 1 || p == 2 || p == 7, "{p}");
        assert_eq!(ramanujan_audit(&record(112, 182)), Ok(8));
        assert_eq!(record(112, 182).k_vector, vec![112, 182, 140, 70, 42]);
    }

    #[test]
    fn decomposition_templates() {
        let s0 = record(0, 105);
        let d = s0.decomposition.clone().unwrap();
        assert!(d.iter().all(|b| b.kind == BlockKind::Pair) && d.len() == 3);
        assert!(matches_template(ClassTag::S0, &d, 210));

        let s2 = record(112, 182).decomposition.unwrap();
        assert!(s2.iter().all(|b| b.kind == BlockKind::Orbit) && s2.len() == 2);
        assert!(matches_template(ClassTag::S2, &s2, 210));

        let s3 = record(30, 15).decomposition.unwrap();
        assert!(matches_template(ClassTag::S3, &s3, 210));
        assert!(!matches_template(ClassTag::S2, &s3, 210));

        assert!(vanishing_sum_decompose(&[0, 1], 5).is_none());
    }

    #[test]
    fn filter_examples() {
        assert!(sharygin_filter(&[record(0, 105)]).is_empty());
        assert!(sharygin_filter(&[record(112, 182)]).is_empty());
        assert_eq!(sharygin_filter(&[record(15, 30)]).len(), 1);
    }
}
