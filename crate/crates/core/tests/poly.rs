use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use unity_sieve::numtheory::{divisors, euler_phi};
use unity_sieve::poly::resultant::{bareiss_det, resultant, sylvester_matrix};
use unity_sieve::poly::{
    cyclotomic_divisors, cyclotomic_poly, resultant_wrt_x, resultant_wrt_y, BiLaurent, IntPoly,
    PolyError,
};

fn coeffs(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1)
        .prop_filter("nonzero leading coefficient", |c| c.last() != Some(&0))
}

fn bivariate(max_x: i64, max_y: i64) -> impl Strategy<Value = BiLaurent> {
    prop::collection::btree_map((0..=max_x, 0..=max_y), -9i64..=9, 1..8).prop_map(|m| {
        let terms: BTreeMap<(i64, i64), BigInt> = m.into_iter().map(|(k, v)| (k, BigInt::from(v))).collect();
        BiLaurent::from_terms(terms)
    })
    .prop_filter("zero polynomial", |p| !p.is_zero())
}

fn ints(c: &[i64]) -> Vec<BigInt> {
    c.iter().map(|&v| BigInt::from(v)).collect()
}

#[test]
fn cyclotomic_polynomials_are_monic_of_degree_phi() {
    for n in 1..=120u64 {
        let p = cyclotomic_poly(n);
        assert!(p.is_monic(), "Phi_{n} not monic");
        assert_eq!(p.degree(), Some(euler_phi(n).unwrap() as usize));
        let mut prod = IntPoly::from_i64s(&[1]);
        for d in divisors(n) {
            prod = &prod * &*cyclotomic_poly(d);
        }
        assert_eq!(prod, IntPoly::x_pow_minus_one(n as usize), "product over divisors of {n}");
    }
}

#[test]
fn small_cyclotomic_values() {
    assert_eq!(*cyclotomic_poly(1), IntPoly::from_i64s(&[-1, 1]));
    assert_eq!(*cyclotomic_poly(6), IntPoly::from_i64s(&[1, -1, 1]));
    assert_eq!(*cyclotomic_poly(15), IntPoly::from_i64s(&[1, -1, 0, 1, -1, 1, 0, -1, 1]));
    assert_eq!(cyclotomic_poly(105).coeff(7), BigInt::from(-2));
}

#[test]
fn cyclotomic_divisors_of_products() {
    let mut p = IntPoly::from_i64s(&[2, 1, 1, 2]);
    for d in [3u64, 14, 15] {
        p = &p * &*cyclotomic_poly(d);
    }
    // 2x³ + x² + x + 2 = (x + 1)(2x² − x + 2)
    assert_eq!(cyclotomic_divisors(&p), [2, 3, 14, 15].into());
    assert_eq!(cyclotomic_divisors(&IntPoly::from_i64s(&[2, -1, 2])), [].into());
    assert_eq!(cyclotomic_divisors(&IntPoly::x_pow_minus_one(12)), divisors(12).into_iter().collect());
}

#[test]
fn bivariate_resultants() {
    let f: BiLaurent = "1+x+y".parse().unwrap();
    let g: BiLaurent = "y^2-1".parse().unwrap();
    assert_eq!(resultant_wrt_y(&f, &g).unwrap(), IntPoly::from_i64s(&[0, 2, 1]));
    assert_eq!(resultant_wrt_x(&f, &g).unwrap(), IntPoly::from_i64s(&[-1, 0, 1]));
    let h = &f * &"x-y".parse::<BiLaurent>().unwrap();
    assert_eq!(resultant_wrt_y(&f, &h).unwrap_err(), PolyError::DegenerateResultant);
}

proptest! {
    #[test]
    fn resultant_matches_sylvester_determinant(a in coeffs(6), b in coeffs(6)) {
        let (a, b) = (ints(&a), ints(&b));
        prop_assert_eq!(resultant(&a, &b), bareiss_det(sylvester_matrix(&a, &b)));
    }

    #[test]
    fn resultant_is_antisymmetric(a in coeffs(6), b in coeffs(6)) {
        let (a, b) = (ints(&a), ints(&b));
        let sign = if ((a.len() - 1) * (b.len() - 1)) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(resultant(&a, &b), resultant(&b, &a) * BigInt::from(sign));
    }

    #[test]
    fn bivariate_resultant_matches_sylvester(f in bivariate(3, 4), g in bivariate(3, 3)) {
        prop_assume!(f.degree_y().unwrap_or(0) + g.degree_y().unwrap_or(0) >= 1);
        let (fy, gy) = (f.to_y_coeffs(), g.to_y_coeffs());
        let det = bareiss_det(sylvester_matrix(&fy, &gy));
        match resultant_wrt_y(&f, &g) {
            Ok(r) => prop_assert_eq!(r, det),
            Err(e) => {
                prop_assert_eq!(e, PolyError::DegenerateResultant);
                prop_assert!(det.is_zero());
            }
        }
    }

    #[test]
    fn resultant_vanishes_at_common_integer_roots(r in prop::sample::select(vec![-4i64, -3, -2, -1, 1, 2, 3, 4]), s in -4i64..=4, a in coeffs(3), b in coeffs(3)) {
        // f = (y - s)·A(x) + (x - r), g = (y - s)·B(x) + (x - r)^2 share (r, s);
        // r ≠ 0 keeps monomial normalization from dropping the root
        let ys = &BiLaurent::y() - &BiLaurent::monomial(BigInt::from(s), 0, 0);
        let xr = &BiLaurent::x() - &BiLaurent::monomial(BigInt::from(r), 0, 0);
        let lift = |c: &[i64]| {
            let terms = c.iter().enumerate().map(|(i, &v)| ((i as i64, 0), BigInt::from(v))).collect();
            BiLaurent::from_terms(terms)
        };
        let f = &(&ys * &lift(&a)) + &xr;
        let g = &(&ys * &lift(&b)) + &(&xr * &xr);
        if let Ok(res) = resultant_wrt_y(&f, &g) {
            prop_assert_eq!(res.eval(&BigInt::from(r)), BigInt::from(0));
        }
    }

    #[test]
    fn divisors_of_products_are_found(ds in prop::collection::btree_set(1u64..=40, 1..4), extra in coeffs(2)) {
        let extra = IntPoly::from_i64s(&extra);
        let mut p = extra.clone();
        for &d in &ds {
            p = &p * &*cyclotomic_poly(d);
        }
        let found = cyclotomic_divisors(&p);
        for d in &ds {
            prop_assert!(found.contains(d));
        }
        for &d in &found {
            prop_assert!(p.exact_div(&cyclotomic_poly(d)).is_ok(), "Phi_{} does not divide", d);
        }
    }
}
