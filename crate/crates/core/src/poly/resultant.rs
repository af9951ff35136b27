//! Resultants over an integral domain with exact division.
//!
//! [`resultant`] runs the subresultant polynomial remainder sequence;
//! [`bareiss_det`] of the [`sylvester_matrix`] is the independent
//! definition-level route used to check it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{BiLaurent, IntPoly, PolyError};

/// A commutative ring without zero divisors in which exact quotients can be
/// computed.
pub trait ExactDomain: Clone + PartialEq + std::fmt::Debug {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / o` when `o` divides `self`, otherwise `None`.
    fn exact_div(&self, o: &Self) -> Option<Self>;

    fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::ring_one(), |acc, _| acc.mul(self))
    }
}

impl ExactDomain for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
}

impl ExactDomain for IntPoly {
    fn ring_zero() -> Self {
        IntPoly::default()
    }
    fn ring_one() -> Self {
        IntPoly::constant(<BigInt as One>::one())
    }
    fn is_ring_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        IntPoly::exact_div(self, o).ok()
    }
    fn pow(&self, e: usize) -> Self {
        IntPoly::pow(self, e as u32)
    }
}

fn trim<D: ExactDomain>(mut p: Vec<D>) -> Vec<D> {
    while p.last().is_some_and(D::is_ring_zero) {
        p.pop();
    }
    p
}

fn deg<D>(p: &[D]) -> usize {
    p.len() - 1
}

/// `lc(b)^(deg a − deg b + 1) · a mod b` in `D[t]`; `b` nonzero.
fn prem<D: ExactDomain>(a: &[D], b: &[D]) -> Vec<D> {
    let db = deg(b);
    let lc = &b[db];
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return r;
    }
    let mut steps = deg(a) - db + 1;
    while !r.is_empty() && r.len() > db {
        let dr = deg(&r);
        let top = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lc);
        }
        for (j, bj) in b.iter().enumerate() {
            let idx = dr - db + j;
            r[idx] = r[idx].sub(&top.mul(bj));
        }
        r = trim(r);
        steps -= 1;
    }
    let scale = lc.pow(steps);
    trim(r.into_iter().map(|c| c.mul(&scale)).collect())
}

/// `Res_t(a, b)` for `a, b ∈ D[t]` given as coefficient lists, lowest degree
/// first. Either operand may be constant; the resultant with a zero
/// polynomial is zero.
pub fn resultant<D: ExactDomain>(a: &[D], b: &[D]) -> D {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return D::ring_zero();
    }
    let mut sign_neg = false;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        sign_neg = deg(&a) % 2 == 1 && deg(&b) % 2 == 1;
    }
    if deg(&b) == 0 {
        let r = b[0].pow(deg(&a));
        return if sign_neg { r.neg() } else { r };
    }
    let mut g = D::ring_one();
    let mut h = D::ring_one();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return D::ring_zero();
        }
        let divisor = g.mul(&h.pow(delta));
        let next: Vec<D> = r
            .iter()
            .map(|c| c.exact_div(&divisor).expect("subresultant division is exact"))
            .collect();
        a = b;
        b = next;
        g = a[deg(&a)].clone();
        // h ← g^δ / h^(δ−1)
        h = if delta == 0 {
            h.clone()
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
        if deg(&b) == 0 {
            let da = deg(&a);
            // deg a ≥ 1 here: a is the previous b
            let res = b[0]
                .pow(da)
                .exact_div(&h.pow(da - 1))
                .expect("subresultant division is exact");
            return if sign_neg { res.neg() } else { res };
        }
    }
}

/// Sylvester matrix of `a` (degree m) and `b` (degree n): `n` shifted rows
/// of `a` followed by `m` shifted rows of `b`, highest coefficient first.
///
/// # Panics
/// If either operand is the zero polynomial.
pub fn sylvester_matrix<D: ExactDomain>(a: &[D], b: &[D]) -> Vec<Vec<D>> {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    assert!(!a.is_empty() && !b.is_empty(), "Sylvester matrix of a zero polynomial");
    let (m, n) = (deg(&a), deg(&b));
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, shifts) in [(&a, n), (&b, m)] {
        for s in 0..shifts {
            let mut row = vec![D::ring_zero(); size];
            for (k, c) in src.iter().rev().enumerate() {
                row[s + k] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn bareiss_det<D: ExactDomain>(mut m: Vec<Vec<D>>) -> D {
    let n = m.len();
    if n == 0 {
        return D::ring_one();
    }
    let mut negate = false;
    let mut prev = D::ring_one();
    for k in 0..n - 1 {
        if m[k][k].is_ring_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_ring_zero()) else {
                return D::ring_zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = D::ring_zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// `Res_y(f, g) ∈ Z[x]` for bivariate Laurent polynomials. Each operand is
/// first multiplied by the monomial clearing its negative exponents. A
/// resultant that vanishes identically means `f` and `g` share a factor of
/// positive `y`-degree and is reported as [`PolyError::DegenerateResultant`].
pub fn resultant_wrt_y(f: &BiLaurent, g: &BiLaurent) -> Result<IntPoly, PolyError> {
    let fy = f.to_y_coeffs();
    let gy = g.to_y_coeffs();
    if fy.is_empty() || gy.is_empty() {
        return Err(PolyError::DegenerateResultant);
    }
    let r = resultant(&fy, &gy);
    if r.is_zero() {
        Err(PolyError::DegenerateResultant)
    } else {
        Ok(r)
    }
}

/// `Res_x(f, g)` as a polynomial in `y`, printed in the variable `x`.
pub fn resultant_wrt_x(f: &BiLaurent, g: &BiLaurent) -> Result<IntPoly, PolyError> {
    resultant_wrt_y(&f.swap_xy(), &g.swap_xy())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ints(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn integer_resultants_match_sylvester() {
        let a = ints(&[-1, 0, 1]);
        let b = ints(&[-2, 1]);
        assert_eq!(resultant(&a, &b), BigInt::from(3));
        assert_eq!(bareiss_det(sylvester_matrix(&a, &b)), BigInt::from(3));
        // common root → 0
        assert_eq!(resultant(&a, &ints(&[-1, 1])), BigInt::from(0));
    }

    #[test]
    fn constant_operand() {
        let a = ints(&[1, 2, 3]);
        assert_eq!(resultant(&a, &ints(&[5])), BigInt::from(25));
        assert_eq!(resultant(&ints(&[5]), &a), BigInt::from(25));
        assert_eq!(resultant(&ints(&[5]), &ints(&[7])), BigInt::from(1));
    }

    #[test]
    fn bivariate_examples() {
        // Res_y(y − x, y² − 1) = x² − 1
        let f: BiLaurent = "y - x".parse().unwrap();
        let g: BiLaurent = "y^2 - 1".parse().unwrap();
        let r = resultant_wrt_y(&f, &g).unwrap();
        assert_eq!(r, IntPoly::from_i64s(&[-1, 0, 1]));
        let syl = bareiss_det(sylvester_matrix(&f.to_y_coeffs(), &g.to_y_coeffs()));
        assert_eq!(syl, r);

        // Res_y(f, y − 1) = ±f(x, 1) = ±(2 + x + x² + 2x³)
        let f = BiLaurent::sharygin();
        let r = resultant_wrt_y(&f, &"y - 1".parse().unwrap()).unwrap();
        let expect = IntPoly::from_i64s(&[2, 1, 1, 2]);
        assert!(r == expect || r == -&expect, "{r}");
    }

    #[test]
    fn degenerate_resultant_is_reported() {
        let f: BiLaurent = "x*y - 1".parse().unwrap();
        let g: BiLaurent = "x^2*y^2 - 1".parse().unwrap();
        assert_eq!(resultant_wrt_y(&f, &g), Err(PolyError::DegenerateResultant));
    }

    fn random_bivariate(rng: &mut StdRng) -> Vec<IntPoly> {
        let dy = rng.random_range(1..=3usize);
        (0..=dy)
            .map(|j| {
                let dx = rng.random_range(0..=2usize);
                let mut c: Vec<i64> = (0..=dx).map(|_| rng.random_range(-9..=9)).collect();
                if j == dy && c.iter().all(|&v| v == 0) {
                    c[0] = 1;
                }
                IntPoly::from_i64s(&c)
            })
            .collect()
    }

    #[test]
    fn subresultant_matches_sylvester_random() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..60 {
            let a: Vec<BigInt> = (0..rng.random_range(1..=7))
                .map(|_| BigInt::from(rng.random_range(-9..=9)))
                .collect();
            let b: Vec<BigInt> = (0..rng.random_range(1..=7))
                .map(|_| BigInt::from(rng.random_range(-9..=9)))
                .collect();
            let (a, b) = (trim(a), trim(b));
            if a.len() < 2 || b.len() < 2 {
                continue;
            }
            assert_eq!(resultant(&a, &b), bareiss_det(sylvester_matrix(&a, &b)));
        }
        for _ in 0..40 {
            let a = random_bivariate(&mut rng);
            let b = random_bivariate(&mut rng);
            assert_eq!(resultant(&a, &b), bareiss_det(sylvester_matrix(&a, &b)));
        }
    }
}
