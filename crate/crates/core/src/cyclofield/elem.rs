use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ball::ComplexBall;
use super::{field, CycloError, CycloField};

/// An element of `Q(ζ_N)`: integer numerators over a positive common
/// denominator, in lowest terms. Zero is stored as all-zero numerators over
/// `1`, so structural equality is field equality.
#[derive(Clone)]
pub struct CycloElem {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloElem {}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElem({self})")
    }
}

impl CycloElem {
    fn from_parts(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len(), field.degree());
        let mut e = CycloElem { field, num, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            self.num.iter_mut().for_each(|c| *c = -&*c);
        }
        let g = self.num.iter().fold(self.den.clone(), |g, c| g.gcd(c));
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        } else if !g.is_one() {
            self.num.iter_mut().for_each(|c| *c = &*c / &g);
            self.den = &self.den / &g;
        }
    }

    fn from_i64_row(field: Arc<CycloField>, row: &[i64]) -> Self {
        let num = row.iter().map(|&c| BigInt::from(c)).collect();
        CycloElem { field, num, den: BigInt::one() }
    }

    pub fn zero(n: u64) -> Result<Self, CycloError> {
        let field = field(n)?;
        let num = vec![BigInt::zero(); field.degree()];
        Ok(CycloElem { field, num, den: BigInt::one() })
    }

    pub fn one(n: u64) -> Result<Self, CycloError> {
        Self::from_integer(n, 1)
    }

    pub fn from_integer(n: u64, c: i64) -> Result<Self, CycloError> {
        let mut e = Self::zero(n)?;
        e.num[0] = BigInt::from(c);
        e.normalize();
        Ok(e)
    }

    /// `ζ_n^k`, with `k` reduced modulo `n`.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self, CycloError> {
        let field = field(n)?;
        let row = field.power(k).to_vec();
        Ok(Self::from_i64_row(field, &row))
    }

    /// `Σ ζ_n^{e}` over the given exponents.
    pub fn power_sum(n: u64, exponents: &[i64]) -> Result<Self, CycloError> {
        let field = field(n)?;
        let reduced: Vec<u64> = exponents.iter().map(|e| e.rem_euclid(n as i64) as u64).collect();
        let row = field.power_sum(&reduced);
        Ok(Self::from_i64_row(field, &row))
    }

    /// Element with the given power-basis coefficients (missing trailing
    /// entries are zero; extra entries are reduced).
    pub fn from_coeffs(n: u64, coeffs: &[BigRational]) -> Result<Self, CycloError> {
        let field = field(n)?;
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut wide: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let num = reduce(&field, &mut wide);
        Ok(Self::from_parts(field, num, den))
    }

    pub fn modulus(&self) -> u64 {
        self.field.order()
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Power-basis coefficients.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element is the rational number `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// `Some(k)` when the element is `ζ_N^k`.
    pub fn as_root_of_unity(&self) -> Option<u64> {
        if !self.den.is_one() {
            return None;
        }
        let row: Option<Vec<i64>> = self.num.iter().map(|c| i64::try_from(c).ok()).collect();
        self.field.root_exponent(&row?)
    }

    fn check_same(&self, o: &Self) -> Result<(), CycloError> {
        if self.modulus() == o.modulus() {
            Ok(())
        } else {
            Err(CycloError::ModulusMismatch { left: self.modulus(), right: o.modulus() })
        }
    }

    fn linear(&self, o: &Self, sub: bool) -> Result<Self, CycloError> {
        self.check_same(o)?;
        let num = self
            .num
            .iter()
            .zip(&o.num)
            .map(|(a, b)| {
                let (l, r) = (a * &o.den, b * &self.den);
                if sub {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        Ok(Self::from_parts(self.field.clone(), num, &self.den * &o.den))
    }

    pub fn add(&self, o: &Self) -> Result<Self, CycloError> {
        self.linear(o, false)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, CycloError> {
        self.linear(o, true)
    }

    pub fn neg(&self) -> Self {
        CycloElem {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, CycloError> {
        self.check_same(o)?;
        let d = self.field.degree();
        let mut wide = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.num.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                wide[i + j] += a * b;
            }
        }
        let num = reduce(&self.field, &mut wide);
        Ok(Self::from_parts(self.field.clone(), num, &self.den * &o.den))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * q.denom())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.modulus()).expect("modulus already validated");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// `Φ_N` over `Q[x]`.
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::ZeroInverse);
        }
        let phi: Vec<BigRational> = crate::poly::cyclotomic_poly(self.modulus())
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let a: Vec<BigRational> = trim_q(
            self.num.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        );
        // invariant: s_i · a ≡ r_i (mod Φ)
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = divrem_q(&r0, &r1);
            let s2 = sub_q(&s0, &mul_q(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                // only possible if gcd(a, Φ) were nontrivial, which irreducibility excludes
                return Err(CycloError::ZeroInverse);
            }
        }
        let c = r1[0].clone();
        let inv_num = BigRational::from_integer(self.den.clone()) / c;
        let coeffs: Vec<BigRational> = s1.iter().map(|s| s * &inv_num).collect();
        Self::from_coeffs(self.modulus(), &coeffs)
    }

    pub fn div(&self, o: &Self) -> Result<Self, CycloError> {
        self.mul(&o.inv()?)
    }

    /// `ζ ↦ ζ^j` applied termwise.
    fn map_exponents(&self, j: u64) -> Self {
        let n = self.modulus();
        let d = self.field.degree();
        let mut acc = vec![BigInt::zero(); d];
        for (k, c) in self.num.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let row = self.field.power(((k as u64 * j) % n) as i64);
            for (a, p) in acc.iter_mut().zip(row) {
                if *p != 0 {
                    *a += c * p;
                }
            }
        }
        CycloElem { field: self.field.clone(), num: acc, den: self.den.clone() }
    }

    /// Complex conjugate, `ζ ↦ ζ^{N−1}`.
    pub fn conj(&self) -> Self {
        self.map_exponents(self.modulus() - 1)
    }

    /// Image under the automorphism `ζ ↦ ζ^j`.
    pub fn galois(&self, j: i64) -> Result<Self, CycloError> {
        let n = self.modulus();
        let jr = j.rem_euclid(n as i64) as u64;
        if jr.gcd(&n) != 1 {
            return Err(CycloError::NotCoprime { j, n });
        }
        Ok(self.map_exponents(jr))
    }

    /// The same element in `Q(ζ_m)`, via `ζ_N = ζ_m^{m/N}`.
    pub fn embed_into(&self, m: u64) -> Result<Self, CycloError> {
        let n = self.modulus();
        if m == 0 || m % n != 0 {
            return Err(CycloError::NotDivisible { from: n, to: m });
        }
        let target = field(m)?;
        let step = m / n;
        let mut acc = vec![BigInt::zero(); target.degree()];
        for (k, c) in self.num.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (a, p) in acc.iter_mut().zip(target.power((k as u64 * step) as i64)) {
                if *p != 0 {
                    *a += c * p;
                }
            }
        }
        Ok(CycloElem { field: target, num: acc, den: self.den.clone() })
    }

    /// `Re(a) = (a + conj a)/2`, as a field element.
    pub fn real_part(&self) -> Self {
        self.add(&self.conj())
            .expect("same field")
            .scale(&BigRational::new(1.into(), 2.into()))
    }

    /// `i·Im(a) = (a − conj a)/2`, as a field element.
    pub fn imag_part_times_i(&self) -> Self {
        self.sub(&self.conj())
            .expect("same field")
            .scale(&BigRational::new(1.into(), 2.into()))
    }

    pub fn is_real(&self) -> bool {
        self.imag_part_times_i().is_zero()
    }

    /// A ball around the complex value under `ζ_N ↦ exp(2πi/N)` with
    /// radius at most `target_radius`.
    pub fn embed_numeric(&self, target_radius: f64) -> ComplexBall {
        ComplexBall::enclose(self, target_radius)
    }
}

/// Folds a coefficient vector of any length into the power basis.
fn reduce(field: &CycloField, wide: &mut [BigInt]) -> Vec<BigInt> {
    let d = field.degree();
    let mut out: Vec<BigInt> = vec![BigInt::zero(); d];
    for (k, c) in wide.iter_mut().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k < d {
            out[k] += std::mem::take(c);
            continue;
        }
        for (a, p) in out.iter_mut().zip(field.power(k as i64)) {
            if *p != 0 {
                *a += &*c * p;
            }
        }
    }
    out
}

fn trim_q(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim_q((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_q(out)
}

fn divrem_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let t = r.last().expect("nonempty") / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &t * bj;
        }
        q[shift] = t;
        r.pop();
        r = trim_q(r);
    }
    (trim_q(q), r)
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{}): ", self.modulus())?;
        for (k, c) in self.coeffs().iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignQuery {
    RePositive,
    ImPositive,
    ReZero,
    ImZero,
}

/// Exact sign decision. Pure roots of unity are settled by comparing the
/// exponent with the quadrant boundaries; other elements get an exact zero
/// test on the relevant part followed by ball refinement, which then must
/// terminate.
pub fn sign_predicate(kind: SignQuery, a: &CycloElem) -> bool {
    if let Some(k) = a.as_root_of_unity() {
        return root_sign(kind, k, a.modulus());
    }
    sign_predicate_refined(kind, a)
}

/// [`sign_predicate`] without the root-of-unity shortcut.
pub fn sign_predicate_refined(kind: SignQuery, a: &CycloElem) -> bool {
    match kind {
        SignQuery::ReZero => a.real_part().is_zero(),
        SignQuery::ImZero => a.imag_part_times_i().is_zero(),
        SignQuery::RePositive => {
            !a.real_part().is_zero() && ComplexBall::separate(a, |b| b.re_sign()) > 0
        }
        SignQuery::ImPositive => {
            !a.imag_part_times_i().is_zero() && ComplexBall::separate(a, |b| b.im_sign()) > 0
        }
    }
}

/// Signs of `ζ_n^k` from `4k` against `n`, `2n`, `3n` modulo `4n`.
fn root_sign(kind: SignQuery, k: u64, n: u64) -> bool {
    let q = (4 * k) % (4 * n);
    match kind {
        SignQuery::RePositive => q < n || q > 3 * n,
        SignQuery::ReZero => q == n || q == 3 * n,
        SignQuery::ImPositive => q > 0 && q < 2 * n,
        SignQuery::ImZero => q == 0 || q == 2 * n,
    }
}
