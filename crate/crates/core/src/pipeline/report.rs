//! Orchestration of both proof routes and the generic solver, with every
//! checked claim recorded as an assertion in a serializable report.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use super::classify::{
    class_members, matches_template, ramanujan_audit, sharygin_filter, ClassTag, RamanujanPattern,
    REFERENCE_MODULUS,
};
use super::enumerate::{brute_force_enumerate, SolutionRecord};
use super::residual::{pinned_exponents, residual_equalities, solve_triple_systems, TripleSystem};
use super::systems::{
    generate_systems, minimal_pivot_set, scan_systems, validate_pivot, EliminatedSystem,
    PivotConfig, Route, MAX_MODULUS,
};
use super::{PipelineError, TorusEquation};
use crate::cyclofield::{sign_predicate, CycloElem, CycloError, SignQuery};
use crate::numtheory::{gcd_mod, lcm_set, Fraction};
use crate::par::Execution;
use crate::poly::BiLaurent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable under a modulus override.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Assertion {
    fn check(name: &str, ok: bool, detail: impl FnOnce() -> String) -> Self {
        Assertion {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: if ok { None } else { Some(detail()) },
        }
    }

    fn skipped(name: &str) -> Self {
        Assertion { name: name.into(), status: Status::Skipped, detail: Some("modulus override".into()) }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RouteSelection {
    #[default]
    Main,
    Alternative,
    Both,
}

fn fraction_strings<S: Serializer>(v: &[Fraction], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|f| f.to_string()))
}

fn nested_fraction_strings<S: Serializer>(v: &Option<Vec<Vec<Fraction>>>, s: S) -> Result<S::Ok, S::Error> {
    let rows: Option<Vec<Vec<String>>> =
        v.as_ref().map(|rows| rows.iter().map(|r| r.iter().map(|f| f.to_string()).collect()).collect());
    rows.serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteReport {
    pub route: Route,
    #[serde(serialize_with = "fraction_strings")]
    pub pivots: Vec<Fraction>,
    /// Whether the pivot set alone forces one of its values.
    pub pivot_complete: bool,
    pub systems: Vec<EliminatedSystem>,
    pub index_set: BTreeSet<u64>,
    #[serde(rename = "N")]
    pub modulus: u64,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub modulus_override: bool,
    pub solutions: Vec<SolutionRecord>,
    pub class_counts: BTreeMap<ClassTag, usize>,
    pub filtered: Vec<(u64, u64)>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "nested_fraction_strings"
    )]
    pub residual_equalities: Option<Vec<Vec<Fraction>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple_systems: Option<Vec<TripleSystem>>,
    pub assertions: Vec<Assertion>,
    #[serde(skip)]
    pub timings: Vec<(&'static str, Duration)>,
}

impl RouteReport {
    pub fn solution_pairs(&self) -> BTreeSet<(u64, u64)> {
        self.solutions.iter().map(|s| (s.a, s.b)).collect()
    }

    pub fn all_passed(&self) -> bool {
        !self.assertions.iter().any(Assertion::failed)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum ProofReport {
    Single(RouteReport),
    Both { route: &'static str, reports: Vec<RouteReport>, assertions: Vec<Assertion> },
}

impl ProofReport {
    pub fn routes(&self) -> Vec<&RouteReport> {
        match self {
            ProofReport::Single(r) => vec![r],
            ProofReport::Both { reports, .. } => reports.iter().collect(),
        }
    }

    /// Every assertion, route-level ones first.
    pub fn assertions(&self) -> Vec<&Assertion> {
        let mut out: Vec<&Assertion> =
            self.routes().into_iter().flat_map(|r| r.assertions.iter()).collect();
        if let ProofReport::Both { assertions, .. } = self {
            out.extend(assertions.iter());
        }
        out
    }

    pub fn all_passed(&self) -> bool {
        !self.assertions().into_iter().any(Assertion::failed)
    }
}

struct Clock(Vec<(&'static str, Duration)>, Instant);

impl Clock {
    fn new() -> Self {
        Clock(Vec::new(), Instant::now())
    }

    fn lap(&mut self, stage: &'static str) {
        let now = Instant::now();
        self.0.push((stage, now - self.1));
        self.1 = now;
    }
}

/// `f(ζ_N^a, ζ_N^b)` evaluated by field multiplication, independent of the
/// exponent table used during enumeration.
fn evaluate_at(eq: &TorusEquation, a: u64, b: u64, n: u64) -> Result<CycloElem, CycloError> {
    let x = CycloElem::root_of_unity(n, a as i64)?;
    let y = CycloElem::root_of_unity(n, b as i64)?;
    let power = |z: &CycloElem, e: i64| if e >= 0 { z.pow(e as u32) } else { z.conj().pow((-e) as u32) };
    let mut total = CycloElem::one(n)?;
    for &(p, q) in eq.exponents() {
        total = total.add(&power(&x, p).mul(&power(&y, q))?)?;
    }
    Ok(total)
}

fn reference_pairs() -> BTreeSet<(u64, u64)> {
    ClassTag::ALL.iter().flat_map(|&t| class_members(t)).collect()
}

/// The record rewritten over `ζ₂₁₀`, if the point lives there.
fn at_reference(eq: &TorusEquation, s: &SolutionRecord) -> Option<SolutionRecord> {
    let n = s.modulus;
    if (s.a * REFERENCE_MODULUS) % n != 0 || (s.b * REFERENCE_MODULUS) % n != 0 {
        return None;
    }
    let (a, b) = (s.a * REFERENCE_MODULUS / n, s.b * REFERENCE_MODULUS / n);
    SolutionRecord::new(eq, a, b, REFERENCE_MODULUS).ok()
}

fn per_solution_assertions(
    eq: &TorusEquation,
    sols: &[SolutionRecord],
    n: u64,
    exec: Execution,
) -> Result<Vec<Assertion>, PipelineError> {
    let mut out = Vec::new();

    let verified = exec.map(sols, |s| evaluate_at(eq, s.a, s.b, n).map(|v| v.is_zero()));
    let bad: Vec<(u64, u64)> = sols
        .iter()
        .zip(verified)
        .map(|(s, v)| v.map(|ok| (!ok).then_some((s.a, s.b))))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    out.push(Assertion::check("solutions_verified", bad.is_empty(), || format!("not zeros: {bad:?}")));

    let unclassified: Vec<(u64, u64)> =
        sols.iter().filter(|s| s.class.is_none()).map(|s| (s.a, s.b)).collect();
    out.push(Assertion::check("solutions_classified", unclassified.is_empty(), || {
        format!("no class: {unclassified:?}")
    }));

    let mut audit_errors = Vec::new();
    for s in sols {
        if let Err(e) = ramanujan_audit(s) {
            audit_errors.push(format!("({}, {}): {e}", s.a, s.b));
        }
    }
    out.push(Assertion::check("ramanujan_audit", audit_errors.is_empty(), || audit_errors.join("; ")));

    let mut template_errors = Vec::new();
    for s in sols {
        let ok = at_reference(eq, s).is_some_and(|r| match (r.class, &r.decomposition) {
            (Some(tag), Some(blocks)) => matches_template(tag, blocks, REFERENCE_MODULUS),
            _ => false,
        });
        if !ok {
            template_errors.push((s.a, s.b));
        }
    }
    out.push(Assertion::check("decomposition_templates", template_errors.is_empty(), || {
        format!("off-template: {template_errors:?}")
    }));

    let set: BTreeSet<(u64, u64)> = sols.iter().map(|s| (s.a, s.b)).collect();
    let units: Vec<u64> = (1..n.max(2)).filter(|&j| gcd_mod(j as i64, n) == 1).collect();
    let galois_gap = set.iter().find_map(|&(a, b)| {
        units.iter().find_map(|&j| {
            let img = ((j * a) % n, (j * b) % n);
            (!set.contains(&img)).then_some(((a, b), j))
        })
    });
    out.push(Assertion::check("galois_closure", galois_gap.is_none(), || {
        format!("image missing: {galois_gap:?}")
    }));
    let swap_gap = set.iter().find(|&&(a, b)| !set.contains(&(b, a)));
    out.push(Assertion::check("symmetry_closure", swap_gap.is_none(), || {
        format!("swap missing: {swap_gap:?}")
    }));

    // the filter's exponent-range test against the field's sign predicates
    let filtered: BTreeSet<(u64, u64)> =
        sharygin_filter(sols).iter().map(|s| (s.a, s.b)).collect();
    let mut disagreements = Vec::new();
    for s in sols {
        let mut keep = true;
        for e in [s.a, s.b, s.a + s.b] {
            let z = CycloElem::root_of_unity(n, e as i64)?;
            keep &= sign_predicate(SignQuery::RePositive, &z) && sign_predicate(SignQuery::ImPositive, &z);
        }
        if keep != filtered.contains(&(s.a, s.b)) {
            disagreements.push((s.a, s.b));
        }
    }
    out.push(Assertion::check("filter_matches_sign_predicate", disagreements.is_empty(), || {
        format!("disagree: {disagreements:?}")
    }));
    Ok(out)
}

fn theorem_assertions(
    report: &RouteReport,
    required: &[u64],
    skip: bool,
) -> Vec<Assertion> {
    let names = [
        "index_set_contains_reference",
        "modulus_multiple_of_210",
        "solution_count",
        "solution_set_matches_classes",
        "class_sizes",
        "ramanujan_patterns",
        "filter_result",
    ];
    if skip {
        return names.iter().map(|n| Assertion::skipped(n)).collect();
    }
    let missing: Vec<u64> =
        required.iter().copied().filter(|d| !report.index_set.contains(d)).collect();
    let n = report.modulus;
    let pairs = report.solution_pairs();
    let reference = reference_pairs();
    let sizes: Vec<usize> = ClassTag::ALL
        .iter()
        .map(|t| report.class_counts.get(t).copied().unwrap_or(0))
        .collect();
    let patterns: BTreeSet<usize> =
        report.solutions.iter().filter_map(|s| ramanujan_audit(s).ok()).collect();
    let all_patterns: BTreeSet<usize> = RamanujanPattern::all().iter().map(|p| p.index).collect();
    let scaled: BTreeSet<(u64, u64)> = if n % REFERENCE_MODULUS == 0 {
        let c = n / REFERENCE_MODULUS;
        reference.iter().map(|&(a, b)| (a * c, b * c)).collect()
    } else {
        BTreeSet::new()
    };
    let expected_filter: Vec<(u64, u64)> = if n % REFERENCE_MODULUS == 0 {
        let c = n / REFERENCE_MODULUS;
        vec![(15 * c, 30 * c), (30 * c, 15 * c)]
    } else {
        Vec::new()
    };
    vec![
        Assertion::check(names[0], missing.is_empty(), || format!("missing orders {missing:?}")),
        Assertion::check(names[1], n % REFERENCE_MODULUS == 0, || format!("N = {n}")),
        Assertion::check(names[2], pairs.len() == 30, || format!("{} solutions", pairs.len())),
        Assertion::check(names[3], pairs == scaled, || {
            let extra: Vec<_> = pairs.difference(&scaled).collect();
            let lost: Vec<_> = scaled.difference(&pairs).collect();
            format!("unexpected {extra:?}, missing {lost:?}")
        }),
        Assertion::check(names[4], sizes == [2, 8, 8, 12], || format!("sizes {sizes:?}")),
        Assertion::check(names[5], patterns == all_patterns, || format!("patterns hit {patterns:?}")),
        Assertion::check(names[6], report.filtered == expected_filter, || {
            format!("filtered {:?}", report.filtered)
        }),
    ]
}

/// The four identities left open by `{−1, −1/2}` with five fractions.
pub fn expected_residual_equalities() -> Vec<Vec<Fraction>> {
    let q = |d: i64| Fraction::new(-1, d);
    vec![
        vec![q(4), q(4), q(4), q(4), Fraction::from(0)],
        vec![q(4), q(4), q(4), q(6), q(12)],
        vec![q(4), q(4), q(4), q(8), q(8)],
        vec![q(4), q(4), q(6), q(6), q(6)],
    ]
}

fn run_route(
    config: PivotConfig,
    required: &[u64],
    exec: Execution,
    modulus_override: Option<u64>,
) -> Result<RouteReport, PipelineError> {
    let eq = TorusEquation::sharygin();
    let m = eq.term_count();
    let mut clock = Clock::new();
    let pivot_complete = validate_pivot(m, &config.values);
    let systems = generate_systems(m, &config);

    let (scanned, index_set, modulus) = match modulus_override {
        Some(n) => {
            if n == 0 || n > MAX_MODULUS {
                return Err(PipelineError::ModulusTooLarge { n, limit: MAX_MODULUS });
            }
            (Vec::new(), BTreeSet::new(), n)
        }
        None => {
            let scan = scan_systems(&eq, &systems, exec)?;
            (scan.systems, scan.index_set, scan.modulus)
        }
    };
    clock.lap("scan");

    let solutions = brute_force_enumerate(&eq, modulus, exec)?;
    clock.lap("enumerate");

    let mut class_counts: BTreeMap<ClassTag, usize> = ClassTag::ALL.iter().map(|&t| (t, 0)).collect();
    for s in &solutions {
        if let Some(t) = s.class {
            *class_counts.entry(t).or_default() += 1;
        }
    }
    let filtered = sharygin_filter(&solutions).iter().map(|s| (s.a, s.b)).collect();

    let mut report = RouteReport {
        route: config.route,
        pivots: config.values.iter().rev().copied().collect(),
        pivot_complete,
        systems: scanned,
        index_set,
        modulus,
        modulus_override: modulus_override.is_some(),
        solutions,
        class_counts,
        filtered,
        residual_equalities: None,
        triple_systems: None,
        assertions: Vec::new(),
        timings: Vec::new(),
    };

    let expected_systems = match config.route {
        Route::Main => 15,
        Route::Alternative => 10,
    };
    let mut assertions = vec![Assertion::check("system_count", systems.len() == expected_systems, || {
        format!("{} systems", systems.len())
    })];
    match config.route {
        Route::Main => assertions.push(Assertion::check("pivot_set_valid", pivot_complete, || {
            "a negative non-pivot fraction is too large".into()
        })),
        Route::Alternative => {
            let eqs = residual_equalities(m, &config.values)?;
            let (ls, uncovered) = pinned_exponents(&eqs);
            let triples = solve_triple_systems(&eq, &ls, exec)?;
            clock.lap("residual");
            let got: BTreeSet<&Vec<Fraction>> = eqs.iter().collect();
            let expected = expected_residual_equalities();
            let want: BTreeSet<&Vec<Fraction>> = expected.iter().collect();
            assertions.push(Assertion::check(
                "residual_equalities_match",
                got == want && eqs.len() == want.len(),
                || format!("{} identities found", eqs.len()),
            ));
            assertions.push(Assertion::check("residual_equalities_pinned", uncovered.is_empty(), || {
                format!("{} identities pin no exponent", uncovered.len())
            }));
            assertions.push(Assertion::check("triple_system_count", triples.len() == 20, || {
                format!("{} triple systems", triples.len())
            }));
            let nonempty: Vec<([usize; 3], u64)> = triples
                .iter()
                .filter(|t| !t.solutions.is_empty())
                .map(|t| (t.indices, t.l))
                .collect();
            assertions.push(Assertion::check("triple_systems_empty", nonempty.is_empty(), || {
                format!("solutions in {nonempty:?}")
            }));
            report.residual_equalities = Some(eqs);
            report.triple_systems = Some(triples);
        }
    }
    assertions.extend(theorem_assertions(&report, required, modulus_override.is_some()));
    assertions.extend(per_solution_assertions(&eq, &report.solutions, modulus, exec)?);
    clock.lap("audit");
    report.assertions = assertions;
    report.timings = clock.0;
    Ok(report)
}

/// Pivots `{−1, −1/2, −1/4}`, fifteen systems.
pub fn main_route(exec: Execution, modulus_override: Option<u64>) -> Result<RouteReport, PipelineError> {
    run_route(PivotConfig::main(), &[1, 2, 3, 5, 6, 7, 14, 15], exec, modulus_override)
}

/// Pivots `{−1, −1/2}`, ten systems, plus the residual identities and the
/// triple systems they force.
pub fn alternative_route(
    exec: Execution,
    modulus_override: Option<u64>,
) -> Result<RouteReport, PipelineError> {
    run_route(PivotConfig::alternative(), &[1, 2, 3, 6, 7, 14, 15], exec, modulus_override)
}

fn normalized_pairs(r: &RouteReport, target: u64) -> BTreeSet<(u64, u64)> {
    let c = target / r.modulus;
    r.solutions.iter().map(|s| (s.a * c, s.b * c)).collect()
}

pub fn prove(
    selection: RouteSelection,
    exec: Execution,
    modulus_override: Option<u64>,
) -> Result<ProofReport, PipelineError> {
    Ok(match selection {
        RouteSelection::Main => ProofReport::Single(main_route(exec, modulus_override)?),
        RouteSelection::Alternative => ProofReport::Single(alternative_route(exec, modulus_override)?),
        RouteSelection::Both => {
            let main = main_route(exec, modulus_override)?;
            let alt = alternative_route(exec, modulus_override)?;
            let l = lcm_set(&[main.modulus, alt.modulus])?;
            let (p, q) = (normalized_pairs(&main, l), normalized_pairs(&alt, l));
            let agree = Assertion::check("routes_agree", p == q, || {
                format!("{} vs {} solutions", p.len(), q.len())
            });
            ProofReport::Both { route: "both", reports: vec![main, alt], assertions: vec![agree] }
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub term_count: usize,
    #[serde(serialize_with = "fraction_strings")]
    pub pivots: Vec<Fraction>,
    pub systems: Vec<EliminatedSystem>,
    pub index_set: BTreeSet<u64>,
    /// Modulus of the exhaustive scan.
    #[serde(rename = "N")]
    pub modulus: u64,
    /// Smallest modulus over which every solution is written.
    pub solution_modulus: u64,
    pub solutions: Vec<(u64, u64)>,
    #[serde(skip)]
    pub records: Vec<SolutionRecord>,
}

/// Runs the pivot, elimination and enumeration stages on any equation
/// `1 + Σ monomials = 0` in `x` and `y` with unit coefficients. Solutions
/// are rewritten over the least common order of their coordinates.
pub fn solve_generic(
    f: &BiLaurent,
    max_terms: usize,
    exec: Execution,
) -> Result<SolveReport, PipelineError> {
    let eq = TorusEquation::from_polynomial(f)?;
    let m = eq.term_count();
    if m > max_terms {
        return Err(PipelineError::Shape(format!("{m} monomials exceed the limit {max_terms}")));
    }
    let values = minimal_pivot_set(m);
    if !validate_pivot(m, &values) {
        return Err(PipelineError::Shape(format!("no valid pivot set for {m} monomials")));
    }
    let config = PivotConfig { values, route: Route::Main };
    let systems = generate_systems(m, &config);
    let scan = scan_systems(&eq, &systems, exec)?;
    let records = brute_force_enumerate(&eq, scan.modulus, exec)?;
    let n = scan.modulus;
    let orders: Vec<u64> = records
        .iter()
        .flat_map(|s| [n / gcd_mod(s.a as i64, n), n / gcd_mod(s.b as i64, n)])
        .collect();
    let solution_modulus = if orders.is_empty() { 1 } else { lcm_set(&orders)? };
    let c = n / solution_modulus;
    let mut solutions: Vec<(u64, u64)> = records.iter().map(|s| (s.a / c, s.b / c)).collect();
    solutions.sort_unstable();
    Ok(SolveReport {
        term_count: m,
        pivots: config.values.iter().rev().copied().collect(),
        systems: scan.systems,
        index_set: scan.index_set,
        modulus: n,
        solution_modulus,
        solutions,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_at_seven_is_empty_and_passes() {
        let r = main_route(Execution::Sequential, Some(7)).unwrap();
        assert!(r.solutions.is_empty());
        assert!(r.all_passed(), "{:?}", r.assertions);
        assert!(r.assertions.iter().any(|a| a.status == Status::Skipped));
    }

    #[test]
    fn override_rejects_huge_modulus() {
        assert!(matches!(
            main_route(Execution::Sequential, Some(MAX_MODULUS + 1)),
            Err(PipelineError::ModulusTooLarge { .. })
        ));
    }

    #[test]
    fn override_at_reference_modulus_passes_everything() {
        let r = main_route(Execution::Parallel, Some(210)).unwrap();
        assert_eq!(r.solutions.len(), 30);
        for a in &r.assertions {
            assert_ne!(a.status, Status::Fail, "{a:?}");
        }
    }

    #[test]
    fn generic_length_three() {
        let f: BiLaurent = "1 + x + y".parse().unwrap();
        let r = solve_generic(&f, 8, Execution::Sequential).unwrap();
        assert_eq!(r.solution_modulus, 3);
        assert_eq!(r.solutions, vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn generic_rejects_too_many_terms() {
        let f: BiLaurent = "1 + x + y + x*y".parse().unwrap();
        assert!(matches!(solve_generic(&f, 2, Execution::Sequential), Err(PipelineError::Shape(_))));
    }
}
