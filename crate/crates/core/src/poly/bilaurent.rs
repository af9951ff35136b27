use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::text::{self, ParseError};
use super::{IntPoly, PolyError};

/// Sparse Laurent polynomial in `x, y` with integer coefficients.
/// Keys are exponent pairs `(i, j)`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BiLaurent {
    pub fn from_terms(mut terms: BTreeMap<(i64, i64), BigInt>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        BiLaurent { terms }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    pub fn monomial(c: BigInt, i: i64, j: i64) -> Self {
        Self::from_terms(BTreeMap::from([((i, j), c)]))
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    /// Sum of unit-coefficient monomials with the given exponent pairs.
    pub fn from_exponents(exps: &[(i64, i64)]) -> Self {
        exps.iter()
            .fold(Self::zero(), |acc, &(i, j)| &acc + &Self::monomial(BigInt::one(), i, j))
    }

    /// `1 + x + y + x²y³ + x³y² + x³y³`
    pub fn sharygin() -> Self {
        Self::from_exponents(&[(0, 0), (1, 0), (0, 1), (2, 3), (3, 2), (3, 3)])
    }

    pub fn coeff(&self, i: i64, j: i64) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn uses_x(&self) -> bool {
        self.terms.keys().any(|&(i, _)| i != 0)
    }

    pub fn uses_y(&self) -> bool {
        self.terms.keys().any(|&(_, j)| j != 0)
    }

    pub fn swap_xy(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect())
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((i + a, j + b), c.clone())).collect())
    }

    /// Smallest exponents of `x` and `y` over all terms; `(0, 0)` for zero.
    pub fn min_exponents(&self) -> (i64, i64) {
        let mi = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let mj = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        (mi, mj)
    }

    /// Multiplies by the unique monomial that makes every exponent
    /// nonnegative with both minima equal to zero.
    pub fn normalize(&self) -> Self {
        let (mi, mj) = self.min_exponents();
        self.shift(-mi, -mj)
    }

    pub fn degree_y(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Coefficients in `y` as polynomials in `x`, lowest power of `y`
    /// first. Exponents are normalized first, so the result is a genuine
    /// element of `Z[x][y]`.
    pub fn to_y_coeffs(&self) -> Vec<IntPoly> {
        let p = self.normalize();
        let Some(dy) = p.degree_y() else {
            return Vec::new();
        };
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); dy as usize + 1];
        for (&(i, j), c) in &p.terms {
            let row = &mut rows[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, BigInt::zero());
            }
            row[i as usize] = c.clone();
        }
        rows.into_iter().map(IntPoly::new).collect()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative powers exist only for monomials `c·x^i·y^j`
    /// with `c = ±1`.
    pub fn pow_signed(&self, e: i64) -> Result<Self, PolyError> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        let Some((&(i, j), c)) = self.terms.iter().next().filter(|_| self.is_monomial()) else {
            return Err(PolyError::NonInvertible);
        };
        if !(c.is_one() || (-c).is_one()) {
            return Err(PolyError::NonInvertible);
        }
        let inv = Self::monomial(c.clone(), -i, -j);
        Ok(inv.pow((-e) as u32))
    }

    /// Composition `p(x ↦ sx, y ↦ sy)`.
    pub fn substitute(&self, sx: &BiLaurent, sy: &BiLaurent) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let term = &(&sx.pow_signed(i)? * &sy.pow_signed(j)?)
                * &Self::monomial(c.clone(), 0, 0);
            out = &out + &term;
        }
        Ok(out)
    }

    /// Value at integer point `(x, y) = (a, b)`; both must be `±1` when a
    /// negative exponent is present.
    pub fn eval_int(&self, a: i64, b: i64) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * int_pow(a, i)? * int_pow(b, j)?;
        }
        Some(acc)
    }

    /// Term listing in ascending total degree, then descending power of `x`.
    fn display_order(&self) -> Vec<(&(i64, i64), &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(&(i, j), _)| (i + j, -i));
        v
    }
}

fn int_pow(a: i64, e: i64) -> Option<BigInt> {
    if e >= 0 {
        Some(num_traits::pow(BigInt::from(a), e as usize))
    } else if a == 1 || a == -1 {
        Some(num_traits::pow(BigInt::from(a), e.unsigned_abs() as usize))
    } else {
        None
    }
}

impl Add for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            *terms.entry(*k).or_default() += c;
        }
        BiLaurent::from_terms(terms)
    }
}

impl Sub for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        self + &(-rhs)
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent::from_terms(self.terms.iter().map(|(k, c)| (*k, -c)).collect())
    }
}

impl Mul for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        let mut terms: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                *terms.entry((i1 + i2, j1 + j2)).or_default() += c1 * c2;
            }
        }
        BiLaurent::from_terms(terms)
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&(i, j), c)) in self.display_order().into_iter().enumerate() {
            text::write_term(f, c, &[("x", i), ("y", j)], n == 0)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BiLaurent {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        text::parse_bivariate(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sharygin_is_symmetric() {
        let f = BiLaurent::sharygin();
        assert_eq!(f.swap_xy(), f);
        let swapped = f.substitute(&BiLaurent::y(), &BiLaurent::x()).unwrap();
        assert_eq!(swapped, f);
    }

    #[test]
    fn substitution_examples() {
        let f = BiLaurent::sharygin();
        let one = BiLaurent::one();
        assert_eq!(f.substitute(&one, &one).unwrap(), BiLaurent::monomial(6.into(), 0, 0));
        let g3 = BiLaurent::monomial(1.into(), 2, 3);
        let xinv = BiLaurent::monomial(1.into(), -1, 0);
        let yinv = BiLaurent::monomial(1.into(), 0, -1);
        assert_eq!(g3.substitute(&xinv, &yinv).unwrap(), BiLaurent::monomial(1.into(), -2, -3));
        let two_terms = BiLaurent::from_exponents(&[(0, 0), (1, 0)]);
        assert_eq!(
            BiLaurent::monomial(1.into(), -1, 0).substitute(&two_terms, &one),
            Err(PolyError::NonInvertible)
        );
    }

    #[test]
    fn normalization_clears_negative_exponents() {
        let p: BiLaurent = "x^-2*y + 3*y^-1 + x".parse().unwrap();
        let n = p.normalize();
        assert_eq!(n.min_exponents(), (0, 0));
        assert_eq!(n, p.shift(2, 1));
        let rows = n.to_y_coeffs();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0], IntPoly::from_i64s(&[0, 0, 3]));
        assert_eq!(rows[1], IntPoly::from_i64s(&[0, 0, 0, 1]));
        assert_eq!(rows[2], IntPoly::from_i64s(&[1]));
    }

    #[test]
    fn display_order() {
        assert_eq!(
            BiLaurent::sharygin().to_string(),
            "1 + x + y + x^3*y^2 + x^2*y^3 + x^3*y^3"
        );
        let p: BiLaurent = "-x^-1 + 2*y".parse().unwrap();
        assert_eq!(p.to_string(), "-x^-1 + 2*y");
    }

    fn arb_bilaurent() -> impl Strategy<Value = BiLaurent> {
        prop::collection::vec(((-4i64..5, -4i64..5), -20i64..21), 0..7).prop_map(|ts| {
            BiLaurent::from_terms(ts.into_iter().map(|(k, c)| (k, BigInt::from(c))).fold(
                BTreeMap::new(),
                |mut m, (k, c)| {
                    *m.entry(k).or_insert_with(BigInt::zero) += c;
                    m
                },
            ))
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(p in arb_bilaurent()) {
            let s = p.to_string();
            let q: BiLaurent = s.parse().unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(q.to_string(), s);
        }

        #[test]
        fn multiplication_commutes_with_evaluation(p in arb_bilaurent(), q in arb_bilaurent()) {
            let prod = &p * &q;
            for (a, b) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
                prop_assert_eq!(prod.eval_int(a, b).unwrap(), p.eval_int(a, b).unwrap() * q.eval_int(a, b).unwrap());
            }
        }
    }
}
