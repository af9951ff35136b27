use std::f64::consts::PI;

use proptest::prelude::*;
use unity_sieve::cyclofield::{sign_predicate, CycloElem, SignQuery};
use unity_sieve::geometry::{
    angles, check_equality, condition_identity_check, evaluate_condition, sharygin_angle_window,
    squared_distance, squared_sides, triangle_from_tangency, verify_named_triangles, NamedTriangle, Point,
    TangencyTriple, TrianglePoints, WindowVerdict,
};

fn triple() -> impl Strategy<Value = TangencyTriple> {
    (prop::sample::select(vec![12u64, 14, 15, 20, 30, 42]), any::<[u16; 3]>()).prop_filter_map(
        "degenerate configuration",
        |(n, e)| {
            let t = TangencyTriple::new(e.map(|v| v as u64 % n), n).ok()?;
            triangle_from_tangency(&t).ok().map(|_| t)
        },
    )
}

fn ratio_on_line(p: &CycloElem, b: &CycloElem, c: &CycloElem) -> CycloElem {
    p.sub(b).unwrap().div(&c.sub(b).unwrap()).unwrap()
}

fn check_bisector_feet(tp: &TrianglePoints) -> Result<(), TestCaseError> {
    let v = &tp.vertices;
    for i in 0..3 {
        let (a, b, c) = (&v[i], &v[(i + 1) % 3], &v[(i + 2) % 3]);
        let ab = squared_distance(a, b).unwrap();
        let ac = squared_distance(a, c).unwrap();
        let feet = [Some(&tp.internal[i]), tp.external[i].as_ref()];
        for (internal, foot) in [true, false].into_iter().zip(feet) {
            let Some(p) = foot else { continue };
            let t = ratio_on_line(p, b, c);
            prop_assert!(t.is_real(), "foot off line BC");
            let one = CycloElem::one(t.modulus()).unwrap();
            let inside = sign_predicate(SignQuery::RePositive, &t)
                && sign_predicate(SignQuery::RePositive, &one.sub(&t).unwrap());
            prop_assert_eq!(inside, internal);
            let lhs = squared_distance(b, p).unwrap().mul(&ac).unwrap();
            let rhs = squared_distance(p, c).unwrap().mul(&ab).unwrap();
            prop_assert_eq!(lhs, rhs, "bisector ratio at vertex {}", i);
        }
        // one of the two bisectors passes through the centre, the other is
        // perpendicular to it
        let through_centre = if tp.centre_line_internal[i] { Some(&tp.internal[i]) } else { tp.external[i].as_ref() };
        if let Some(p) = through_centre {
            prop_assert!(p.mul(&a.conj()).unwrap().is_real());
        }
        let perpendicular = if tp.centre_line_internal[i] { tp.external[i].as_ref() } else { Some(&tp.internal[i]) };
        if let Some(p) = perpendicular {
            let dot = p.sub(a).unwrap().mul(&a.conj()).unwrap().real_part();
            prop_assert!(dot.is_zero());
        }
    }
    Ok(())
}

fn check_incircle(tp: &TrianglePoints) -> Result<(), TestCaseError> {
    let v = &tp.vertices;
    for i in 0..3 {
        let (b, c) = (&v[i], &v[(i + 1) % 3]);
        let w = b.conj().mul(c).unwrap().imag_part_times_i();
        prop_assert_eq!(w.mul(&w).unwrap().neg(), squared_distance(b, c).unwrap());
    }
    Ok(())
}

#[test]
fn named_claims_hold() {
    let results = verify_named_triangles().unwrap();
    assert!(!results.is_empty());
    for (name, claim) in results {
        assert!(claim.holds, "{name}: {claim}");
    }
}

#[test]
fn named_configurations_are_consistent() {
    for name in NamedTriangle::ALL {
        let tp = triangle_from_tangency(&name.tangency()).unwrap();
        check_bisector_feet(&tp).unwrap();
        check_incircle(&tp).unwrap();
        for tri in name.highlighted() {
            let [p, q, r] = tri.map(|x| tp.get(x).unwrap().clone());
            let sides = [squared_distance(&p, &q).unwrap(), squared_distance(&q, &r).unwrap(), squared_distance(&r, &p).unwrap()];
            assert!(sides[0] == sides[1] || sides[1] == sides[2] || sides[0] == sides[2], "{name} {tri:?}");
        }
        let iv = angles(&tp, 1e-12).unwrap();
        for (got, (num, den)) in iv.iter().zip(name.expected_angles()) {
            assert!(got.contains(PI * num as f64 / den as f64), "{name}: {got:?} vs {num}pi/{den}");
        }
    }
}

#[test]
fn heptagonal_equality_is_exact_only_where_claimed() {
    let tp = triangle_from_tangency(&NamedTriangle::Heptagonal.tangency()).unwrap();
    assert!(check_equality(&tp, (Point::C1, Point::A1), (Point::C1, Point::B1)).unwrap().holds);
    assert!(!check_equality(&tp, (Point::A1, Point::B1), (Point::A1, Point::C1)).unwrap().holds);
    assert_eq!(sharygin_angle_window(&tp).unwrap(), WindowVerdict::Inside);
}

#[test]
fn equilateral_is_not_sharygin() {
    let t: TangencyTriple = "0,70,140@210".parse().unwrap();
    let tp = triangle_from_tangency(&t).unwrap();
    let [a, b, c] = squared_sides(&tp).unwrap();
    assert!(a == b && b == c);
    assert_eq!(sharygin_angle_window(&tp).unwrap(), WindowVerdict::NotSharygin);
}

#[test]
fn degenerate_specs_are_rejected() {
    for spec in ["0,105,1@210", "3,3,5@7", "1,2@7", "1,2,3@0", "x,y,z@5"] {
        assert!(spec.parse::<TangencyTriple>().is_err(), "{spec}");
    }
}

#[test]
fn condition_identity() {
    assert!(condition_identity_check());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bisector_feet_and_incircle(t in triple()) {
        let tp = triangle_from_tangency(&t).unwrap();
        check_bisector_feet(&tp)?;
        check_incircle(&tp)?;
    }

    #[test]
    fn angles_sum_to_pi(t in triple()) {
        let tp = triangle_from_tangency(&t).unwrap();
        let iv = angles(&tp, 1e-10).unwrap();
        let lo: f64 = iv.iter().map(|a| a.lo).sum();
        let hi: f64 = iv.iter().map(|a| a.hi).sum();
        prop_assert!(lo <= PI + 1e-14 && PI - 1e-14 <= hi, "[{}, {}]", lo, hi);
        for a in iv {
            prop_assert!(a.width() <= 1e-10);
        }
    }

    #[test]
    fn rotation_preserves_shape(t in triple(), k in 0u64..1000, double in any::<bool>()) {
        let m = if double { 2 * t.modulus() } else { t.modulus() };
        let r = t.rotated(k % m, m).unwrap();
        let (tp, rp) = (triangle_from_tangency(&t).unwrap(), triangle_from_tangency(&r).unwrap());
        let m = tp.modulus() * rp.modulus() / num_integer::Integer::gcd(&tp.modulus(), &rp.modulus());
        let up = |x: &CycloElem| x.embed_into(m).unwrap();
        for (a, b) in squared_sides(&tp).unwrap().iter().zip(squared_sides(&rp).unwrap().iter()) {
            prop_assert_eq!(up(a), up(b));
        }
        prop_assert_eq!(tp.centre_line_internal, rp.centre_line_internal);
        prop_assert_eq!(sharygin_angle_window(&tp).unwrap(), sharygin_angle_window(&rp).unwrap());
    }

    #[test]
    fn condition_matches_torus_equation(a in 0u64..210, b in 0u64..210) {
        // z₁ = ζ^a, z₂ = ζ^{−b}, z₃ = −1: y³·Q equals 1 + x + y + x²y³ + x³y² + x³y³
        let Ok(t) = TangencyTriple::new([a, (210 - b) % 210, 105], 210) else { return Ok(()) };
        let q = evaluate_condition(&t).unwrap().embed_into(210).unwrap();
        let y = CycloElem::root_of_unity(210, b as i64).unwrap();
        let f = CycloElem::power_sum(210, &[0, a as i64, b as i64, (2 * a + 3 * b) as i64, (3 * a + 2 * b) as i64, (3 * a + 3 * b) as i64]).unwrap();
        prop_assert_eq!(y.pow(3).mul(&q).unwrap(), f);
    }
}
