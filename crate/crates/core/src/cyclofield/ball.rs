//! Certified complex enclosures of cyclotomic elements.
//!
//! Values are fixed point: an integer `m` stands for `m·2^{-w}`. `π` comes
//! from Machin's formula and `cos`, `sin` from Taylor series on the first
//! quadrant. Every rounding step is counted in units of `2^{-w}`, so the
//! stored error is a rigorous bound, not an estimate.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::elem::CycloElem;

const START_BITS: u32 = 64;

/// A complex box `center ± err·2^{-bits}` in each coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    re: BigInt,
    im: BigInt,
    err: BigInt,
    bits: u32,
}

/// `m·2^e` as the nearest-below `f64` after keeping the top 60 bits.
fn ldexp(m: &BigInt, e: i64) -> f64 {
    let extra = (m.bits() as i64 - 60).max(0);
    let top = (m >> extra as usize).to_f64().expect("60-bit value fits");
    let mut exp = e + extra;
    let mut v = top;
    // apply the exponent in steps that stay inside the f64 range
    while exp > 0 {
        let s = exp.min(1000);
        v *= 2f64.powi(s as i32);
        exp -= s;
    }
    while exp < 0 {
        let s = (-exp).min(1000);
        v *= 2f64.powi(-(s as i32));
        exp += s;
    }
    v
}

/// `atan(1/q)·2^w` and a bound on its error, in ulps.
fn atan_inv(q: u64, w: u32) -> (BigInt, u64) {
    let q2 = BigInt::from(q * q);
    let mut t = (BigInt::from(1) << w) / q;
    let mut sum = BigInt::zero();
    let mut j = 0u64;
    while !t.is_zero() {
        let term = &t / (2 * j + 1);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        t = &t / &q2;
        j += 1;
    }
    // each term is off by < 3 ulps; the dropped tail is < 2
    (sum, 3 * j + 2)
}

fn pi_fixed(w: u32) -> (BigInt, u64) {
    let (a, ea) = atan_inv(5, w);
    let (b, eb) = atan_inv(239, w);
    (a * 16 - b * 4, 16 * ea + 4 * eb)
}

/// `cos φ`, `sin φ` for `0 ≤ φ < π/2` given as a fixed-point value. The
/// truncated power series loses < 4 ulps per term plus < 12 for the tail.
fn taylor(phi: &BigInt, w: u32) -> (BigInt, BigInt, u64) {
    let one = BigInt::from(1) << w;
    let mut c = one.clone();
    let mut s = BigInt::zero();
    let mut u = one;
    let mut j = 1u64;
    loop {
        u = ((&u * phi) >> w) / j;
        if u.is_zero() {
            break;
        }
        match j % 4 {
            1 => s += &u,
            2 => c -= &u,
            3 => s -= &u,
            _ => c += &u,
        }
        j += 1;
    }
    (c, s, 4 * j + 12)
}

/// `cos(2πk/n)`, `sin(2πk/n)` with a shared error bound.
fn cos_sin(k: u64, n: u64, w: u32, pi: &(BigInt, u64)) -> (BigInt, BigInt, u64) {
    let k = k % n;
    let quadrant = (4 * k) / n;
    let kp = 4 * k - quadrant * n;
    let phi = (&pi.0 * kp) / (2 * n);
    let phi_err = pi.1.div_ceil(2) + 1;
    let (c, s, e) = taylor(&phi, w);
    let (c, s) = match quadrant {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    };
    (c, s, e + phi_err)
}

impl ComplexBall {
    /// Enclosure computed at `w` working bits.
    pub fn at_precision(a: &CycloElem, w: u32) -> Self {
        if a.is_zero() {
            return ComplexBall { re: BigInt::zero(), im: BigInt::zero(), err: BigInt::zero(), bits: w };
        }
        let n = a.modulus();
        let pi = pi_fixed(w);
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        let mut err = BigInt::zero();
        for (k, c) in a.numerators().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (cos, sin, e) = cos_sin(k as u64, n, w, &pi);
            re += c * cos;
            im += c * sin;
            err += c.abs() * e;
        }
        let den = a.denominator();
        ComplexBall {
            re: re.div_floor(den),
            im: im.div_floor(den),
            err: err.div_ceil(den) + 1,
            bits: w,
        }
    }

    /// Enclosure with [`radius`](Self::radius) at most `target_radius`,
    /// doubling the working precision from 64 bits until it is reached.
    ///
    /// # Panics
    /// If `target_radius` is not positive.
    pub fn enclose(a: &CycloElem, target_radius: f64) -> Self {
        assert!(target_radius > 0.0, "target radius must be positive");
        let mut w = START_BITS;
        loop {
            let b = Self::at_precision(a, w);
            if b.radius() <= target_radius {
                return b;
            }
            w *= 2;
        }
    }

    /// Refines until `decide` returns a verdict. The caller guarantees the
    /// relevant quantity is nonzero, which makes the loop finite.
    pub(crate) fn separate(a: &CycloElem, decide: impl Fn(&Self) -> Option<i8>) -> i8 {
        let mut w = START_BITS;
        loop {
            if let Some(s) = decide(&Self::at_precision(a, w)) {
                return s;
            }
            w *= 2;
        }
    }

    /// Sign of the real part if the box excludes the imaginary axis.
    pub fn re_sign(&self) -> Option<i8> {
        component_sign(&self.re, &self.err)
    }

    /// Sign of the imaginary part if the box excludes the real axis.
    pub fn im_sign(&self) -> Option<i8> {
        component_sign(&self.im, &self.err)
    }

    pub fn precision_bits(&self) -> u32 {
        self.bits
    }

    /// Center as `f64` values; each is within `2^{-52}` relative of the
    /// exact center.
    pub fn center(&self) -> (f64, f64) {
        let e = -(self.bits as i64);
        (signed_ldexp(&self.re, e), signed_ldexp(&self.im, e))
    }

    /// Upper bound on the distance from the exact center to the enclosed
    /// value.
    pub fn radius(&self) -> f64 {
        if self.err.is_zero() {
            return 0.0;
        }
        ldexp(&(&self.err + 1), -(self.bits as i64)) * 1.5
    }

    /// Radius around [`center`](Self::center) that also absorbs the
    /// rounding of the center to `f64`.
    pub fn f64_radius(&self) -> f64 {
        let (x, y) = self.center();
        self.radius() + (x.abs() + y.abs()) * 2f64.powi(-51) + f64::MIN_POSITIVE
    }
}

fn signed_ldexp(m: &BigInt, e: i64) -> f64 {
    match m.sign() {
        Sign::Minus => -ldexp(&-m, e),
        _ => ldexp(m, e),
    }
}

fn component_sign(c: &BigInt, err: &BigInt) -> Option<i8> {
    if c.abs() > *err {
        Some(if c.is_positive() { 1 } else { -1 })
    } else {
        None
    }
}
