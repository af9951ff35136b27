//! Triangles given by the tangency points of their incircle, the unit
//! circle, with all points and predicates exact in `Q(ζ_N)`.
//!
//! For tangency points `z₁, z₂, z₃` on sides `BC`, `CA`, `AB` the vertices
//! are `A = 2z₂z₃/(z₂+z₃)` and cyclically. The line through a vertex and
//! the origin meets the opposite side at `2z₁z₂z₃/(z_i² + z_j z_k)`; the
//! perpendicular to that line through the vertex meets it too. One of the
//! two points lies strictly between the other vertices and is the internal
//! bisector foot, the other is the external one.

mod figure;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::cyclofield::{sign_predicate, ComplexBall, CycloElem, CycloError, SignQuery};
use crate::numtheory::gcd_mod;
use crate::pipeline::MAX_MODULUS;
use crate::poly::BiLaurent;

pub use figure::{figure_coordinates, figure_for, Figure, LabeledPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error(transparent)]
    Field(#[from] CycloError),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("invalid tangency spec {spec:?}: {reason}")]
    Spec { spec: String, reason: String },
    #[error("point {0} does not exist for this triangle")]
    MissingPoint(Point),
}

/// Three tangency points `ζ_N^{e₁}, ζ_N^{e₂}, ζ_N^{e₃}`, stored over the
/// smallest `N` that carries them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyTriple {
    modulus: u64,
    exponents: [u64; 3],
    points: [CycloElem; 3],
}

impl TangencyTriple {
    /// Rejects coincident or antipodal points and any vanishing foot
    /// denominator `z_i² + z_j z_k`.
    pub fn new(exponents: [u64; 3], n: u64) -> Result<Self, GeometryError> {
        let spec = || format!("{},{},{}@{n}", exponents[0], exponents[1], exponents[2]);
        let fail = |reason: &str| GeometryError::Spec { spec: spec(), reason: reason.into() };
        if n == 0 {
            return Err(fail("modulus must be positive"));
        }
        if n > MAX_MODULUS {
            return Err(fail("modulus exceeds 100000"));
        }
        let mut g = n;
        for &e in &exponents {
            g = gcd_mod(e as i64, g);
        }
        let n = n / g;
        let e = exponents.map(|x| (x / g) % n);
        let half = (n % 2 == 0).then_some(n / 2);
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            if e[i] == e[j] {
                return Err(fail("tangency points coincide"));
            }
            if half == Some((e[i] + n - e[j]) % n) {
                return Err(fail("antipodal tangency points give parallel sides"));
            }
        }
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let d = (2 * e[i] + 2 * n - e[j] - e[k]) % n;
            if half == Some(d) {
                return Err(fail("a bisector through the centre is parallel to its side"));
            }
        }
        let points = [
            CycloElem::root_of_unity(n, e[0] as i64)?,
            CycloElem::root_of_unity(n, e[1] as i64)?,
            CycloElem::root_of_unity(n, e[2] as i64)?,
        ];
        Ok(TangencyTriple { modulus: n, exponents: e, points })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponents(&self) -> [u64; 3] {
        self.exponents
    }

    pub fn points(&self) -> &[CycloElem; 3] {
        &self.points
    }

    /// The same configuration turned by `ζ_m^k`.
    pub fn rotated(&self, k: u64, m: u64) -> Result<Self, GeometryError> {
        let n = num_integer::lcm(self.modulus, m);
        let (c, d) = (n / self.modulus, n / m);
        Self::new(self.exponents.map(|e| (e * c + k * d) % n), n)
    }

    /// Whether the triangle of tangency points is acute, i.e. every arc
    /// between consecutive points is shorter than a half turn.
    pub fn is_acute(&self) -> bool {
        let mut e = self.exponents;
        e.sort_unstable();
        let n = self.modulus;
        let gaps = [e[1] - e[0], e[2] - e[1], n + e[0] - e[2]];
        gaps.iter().all(|&g| 2 * g < n)
    }
}

impl FromStr for TangencyTriple {
    type Err = GeometryError;

    /// `"a,b,c@N"`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| GeometryError::Spec { spec: s.into(), reason: reason.into() };
        let (list, n) = s.split_once('@').ok_or_else(|| fail("expected a,b,c@N"))?;
        let n: u64 = n.trim().parse().map_err(|_| fail("modulus is not a non-negative integer"))?;
        let e: Vec<u64> = list
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| fail("exponents must be non-negative integers"))?;
        let e: [u64; 3] = e.try_into().map_err(|_| fail("expected exactly three exponents"))?;
        Self::new(e, n)
    }
}

impl fmt::Display for TangencyTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.exponents;
        write!(f, "{a},{b},{c}@{}", self.modulus)
    }
}

/// The triangles singled out by the solutions of the bisectral equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedTriangle {
    /// Angles `π/7, 2π/7, 4π/7`.
    Heptagonal,
    /// Angles `11π/15, π/15, π/5`.
    Pentadecagonal1,
    /// Angles `2π/15, 7π/15, 6π/15`.
    Pentadecagonal2,
}

type Segment = (Point, Point);

impl NamedTriangle {
    pub const ALL: [NamedTriangle; 3] =
        [NamedTriangle::Heptagonal, NamedTriangle::Pentadecagonal1, NamedTriangle::Pentadecagonal2];

    pub fn name(self) -> &'static str {
        match self {
            NamedTriangle::Heptagonal => "heptagonal",
            NamedTriangle::Pentadecagonal1 => "pentadecagonal1",
            NamedTriangle::Pentadecagonal2 => "pentadecagonal2",
        }
    }

    /// `(x, y^{-1}, -1)` for the solution `(x, y)` over `ζ₂₁₀`.
    pub fn tangency(self) -> TangencyTriple {
        let e = match self {
            NamedTriangle::Heptagonal => [30, 195, 105],
            NamedTriangle::Pentadecagonal1 => [112, 28, 105],
            NamedTriangle::Pentadecagonal2 => [154, 196, 105],
        };
        TangencyTriple::new(e, 210).expect("named tangency triples are valid")
    }

    /// Angles at `A`, `B`, `C` as multiples `p/q` of `π`.
    pub fn expected_angles(self) -> [(u64, u64); 3] {
        match self {
            NamedTriangle::Heptagonal => [(1, 7), (2, 7), (4, 7)],
            NamedTriangle::Pentadecagonal1 => [(11, 15), (1, 15), (1, 5)],
            NamedTriangle::Pentadecagonal2 => [(2, 15), (7, 15), (6, 15)],
        }
    }

    /// The equal-segment claims the triangle satisfies.
    pub fn claims(self) -> Vec<(Segment, Segment)> {
        use Point::*;
        match self {
            NamedTriangle::Heptagonal => vec![((C1, A1), (C1, B1)), ((A2, B2), (A2, C1))],
            NamedTriangle::Pentadecagonal1 => vec![((C1, A2), (C1, B2)), ((A, A2), (B, B2))],
            NamedTriangle::Pentadecagonal2 => vec![((C2, A1), (C2, B2)), ((A, A1), (B, B2))],
        }
    }

    /// Bisectral triangles drawn in the figure.
    pub fn highlighted(self) -> Vec<[Point; 3]> {
        use Point::*;
        match self {
            NamedTriangle::Heptagonal => vec![[A1, B1, C1], [A2, B2, C1]],
            NamedTriangle::Pentadecagonal1 => vec![[A2, B2, C1]],
            NamedTriangle::Pentadecagonal2 => vec![[A1, B2, C2]],
        }
    }
}

impl FromStr for NamedTriangle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedTriangle::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown triangle {s:?}"))
    }
}

impl fmt::Display for NamedTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    A,
    B,
    C,
    A1,
    B1,
    C1,
    A2,
    B2,
    C2,
}

impl Point {
    pub const ALL: [Point; 9] = [
        Point::A,
        Point::B,
        Point::C,
        Point::A1,
        Point::B1,
        Point::C1,
        Point::A2,
        Point::B2,
        Point::C2,
    ];
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Vertices and bisector feet. `A1` lies on `BC` between `B` and `C`; `A2`
/// lies on line `BC` outside the segment and is missing when the external
/// bisector at `A` is parallel to `BC`.
#[derive(Clone, Debug)]
pub struct TrianglePoints {
    pub source: TangencyTriple,
    pub vertices: [CycloElem; 3],
    pub internal: [CycloElem; 3],
    pub external: [Option<CycloElem>; 3],
    /// Per vertex, whether the line to the centre is the internal bisector
    /// there; false means the unit circle is an excircle seen from it.
    pub centre_line_internal: [bool; 3],
}

impl TrianglePoints {
    pub fn get(&self, p: Point) -> Option<&CycloElem> {
        use Point::*;
        match p {
            A => Some(&self.vertices[0]),
            B => Some(&self.vertices[1]),
            C => Some(&self.vertices[2]),
            A1 => Some(&self.internal[0]),
            B1 => Some(&self.internal[1]),
            C1 => Some(&self.internal[2]),
            A2 => self.external[0].as_ref(),
            B2 => self.external[1].as_ref(),
            C2 => self.external[2].as_ref(),
        }
    }

    fn point(&self, p: Point) -> Result<&CycloElem, GeometryError> {
        self.get(p).ok_or(GeometryError::MissingPoint(p))
    }

    pub fn modulus(&self) -> u64 {
        self.source.modulus()
    }
}

fn two(n: u64) -> Result<CycloElem, CycloError> {
    CycloElem::from_integer(n, 2)
}

/// Intersection of line `BC` with the line through `a` perpendicular to
/// `a` itself, or `None` when they are parallel.
fn perpendicular_foot(
    a: &CycloElem,
    b: &CycloElem,
    c: &CycloElem,
) -> Result<Option<CycloElem>, CycloError> {
    let ac = a.conj();
    let den = ac.mul(&c.sub(b)?)?.real_part();
    if den.is_zero() {
        return Ok(None);
    }
    let s = ac.mul(&a.sub(b)?)?.real_part().div(&den)?;
    Ok(Some(b.add(&s.mul(&c.sub(b)?)?)?))
}

/// Whether `p` on line `BC` lies strictly between `b` and `c`.
fn strictly_between(p: &CycloElem, b: &CycloElem, c: &CycloElem) -> Result<bool, CycloError> {
    let t = p.sub(b)?.div(&c.sub(b)?)?;
    let one = CycloElem::one(t.modulus())?;
    Ok(sign_predicate(SignQuery::RePositive, &t)
        && sign_predicate(SignQuery::RePositive, &one.sub(&t)?))
}

/// Builds all nine points of the configuration.
pub fn triangle_from_tangency(t: &TangencyTriple) -> Result<TrianglePoints, GeometryError> {
    let n = t.modulus();
    let [z1, z2, z3] = t.points();
    let two = two(n)?;
    let vertex = |p: &CycloElem, q: &CycloElem| -> Result<CycloElem, GeometryError> {
        let s = p.add(q)?;
        if s.is_zero() {
            return Err(GeometryError::Degenerate("antipodal tangency points".into()));
        }
        Ok(two.mul(&p.mul(q)?)?.div(&s)?)
    };
    let vertices = [vertex(z2, z3)?, vertex(z1, z3)?, vertex(z1, z2)?];
    let prod = two.mul(&z1.mul(z2)?.mul(z3)?)?;
    let zs = [z1, z2, z3];
    let mut internal = Vec::with_capacity(3);
    let mut external = Vec::with_capacity(3);
    let mut centre_line_internal = [false; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let den = zs[i].mul(zs[i])?.add(&zs[j].mul(zs[k])?)?;
        if den.is_zero() {
            return Err(GeometryError::Degenerate(format!("centre line at {} parallel to its side", Point::ALL[i])));
        }
        let on_centre_line = prod.div(&den)?;
        let perp = perpendicular_foot(&vertices[i], &vertices[j], &vertices[k])?;
        if strictly_between(&on_centre_line, &vertices[j], &vertices[k])? {
            centre_line_internal[i] = true;
            internal.push(on_centre_line);
            external.push(perp);
        } else {
            let Some(p) = perp else {
                return Err(GeometryError::Degenerate(format!(
                    "no internal bisector foot at {}",
                    Point::ALL[i]
                )));
            };
            internal.push(p);
            external.push(Some(on_centre_line));
        }
    }
    let internal: [CycloElem; 3] = internal.try_into().expect("three feet");
    let external: [Option<CycloElem>; 3] = external.try_into().expect("three feet");
    Ok(TrianglePoints { source: t.clone(), vertices, internal, external, centre_line_internal })
}

/// `|P − Q|²` as an element of the real subfield.
pub fn squared_distance(p: &CycloElem, q: &CycloElem) -> Result<CycloElem, CycloError> {
    let d = p.sub(q)?;
    d.mul(&d.conj())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityClaim {
    pub left: (Point, Point),
    pub right: (Point, Point),
    pub holds: bool,
}

impl fmt::Display for EqualityClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.holds { "=" } else { "≠" };
        write!(f, "{}{} {rel} {}{}", self.left.0, self.left.1, self.right.0, self.right.1)
    }
}

/// Compares `|left|²` and `|right|²` exactly.
pub fn check_equality(
    tp: &TrianglePoints,
    left: (Point, Point),
    right: (Point, Point),
) -> Result<EqualityClaim, GeometryError> {
    let l = squared_distance(tp.point(left.0)?, tp.point(left.1)?)?;
    let r = squared_distance(tp.point(right.0)?, tp.point(right.1)?)?;
    Ok(EqualityClaim { left, right, holds: l == r })
}

/// Builds each named triangle and checks its claims.
pub fn verify_named_triangles() -> Result<Vec<(NamedTriangle, EqualityClaim)>, GeometryError> {
    let mut out = Vec::new();
    for t in NamedTriangle::ALL {
        let tp = triangle_from_tangency(&t.tangency())?;
        for (l, r) in t.claims() {
            out.push((t, check_equality(&tp, l, r)?));
        }
    }
    Ok(out)
}

/// Which of the four bisectral triangles are isosceles.
pub fn isosceles_bisectral(tp: &TrianglePoints) -> Result<Vec<([Point; 3], bool)>, GeometryError> {
    use Point::*;
    let mut out = Vec::new();
    for tri in [[A1, B1, C1], [A1, B2, C2], [A2, B1, C2], [A2, B2, C1]] {
        if tri.iter().any(|&p| tp.get(p).is_none()) {
            continue;
        }
        out.push((tri, is_isosceles(tp, tri)?));
    }
    Ok(out)
}

fn is_isosceles(tp: &TrianglePoints, tri: [Point; 3]) -> Result<bool, GeometryError> {
    let [p, q, r] = tri.map(|x| tp.get(x).expect("checked by caller"));
    let (a, b, c) = (squared_distance(q, r)?, squared_distance(p, r)?, squared_distance(p, q)?);
    Ok(a == b || b == c || a == c)
}

/// Squared side lengths `|BC|², |CA|², |AB|²`.
pub fn squared_sides(tp: &TrianglePoints) -> Result<[CycloElem; 3], GeometryError> {
    let [a, b, c] = &tp.vertices;
    Ok([squared_distance(b, c)?, squared_distance(c, a)?, squared_distance(a, b)?])
}

/// A certified enclosure `[lo, hi]` in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngleInterval {
    pub lo: f64,
    pub hi: f64,
}

impl AngleInterval {
    pub fn mid(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Rounding allowance of `atan2` and of the `f64` centre.
const ATAN_SLACK: f64 = 1e-15;

/// `|arg u|` for `u ≠ 0` to width at most `tol`. A ball of radius `R`
/// around `c` moves the argument by at most `asin(R/|c|) ≤ (π/2)·R/|c|`.
fn abs_arg(u: &CycloElem, tol: f64) -> AngleInterval {
    let mut target = 1e-3;
    loop {
        let ball = ComplexBall::enclose(u, target);
        let (x, y) = ball.center();
        let m = x.hypot(y);
        let r = ball.f64_radius();
        if r < m / 2.0 {
            let h = std::f64::consts::FRAC_PI_2 * r / m + ATAN_SLACK;
            if 2.0 * h <= tol {
                let th = y.atan2(x).abs();
                return AngleInterval { lo: (th - h).max(0.0), hi: (th + h).min(std::f64::consts::PI) };
            }
            target = (tol * m / 8.0).min(target / 2.0);
        } else {
            target /= 16.0;
        }
    }
}

/// Interior angles at `A`, `B`, `C`, each enclosed with width at most `tol`.
///
/// # Panics
/// If `tol` is not above the `f64` rounding floor of `2e-15`.
pub fn angles(tp: &TrianglePoints, tol: f64) -> Result<[AngleInterval; 3], GeometryError> {
    assert!(tol > 2.0 * ATAN_SLACK, "tolerance below the f64 rounding floor");
    let v = &tp.vertices;
    let mut out = [AngleInterval { lo: 0.0, hi: 0.0 }; 3];
    for i in 0..3 {
        let (p, q) = (&v[(i + 1) % 3], &v[(i + 2) % 3]);
        let u = p.sub(&v[i])?.mul(&q.sub(&v[i])?.conj())?;
        out[i] = abs_arg(&u, tol);
    }
    Ok(out)
}

/// Envelope for the obtuse angle of a Sharygin triangle, in degrees.
pub const SHARYGIN_WINDOW_DEGREES: (f64, f64) = (102.6, 104.5);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowVerdict {
    Inside,
    Outside,
    /// Isosceles, or the internal bisectral triangle is not isosceles.
    NotSharygin,
}

/// Whether the certified obtuse angle lies in the Sharygin window.
pub fn sharygin_angle_window(tp: &TrianglePoints) -> Result<WindowVerdict, GeometryError> {
    let [a, b, c] = squared_sides(tp)?;
    if a == b || b == c || a == c {
        return Ok(WindowVerdict::NotSharygin);
    }
    if !is_isosceles(tp, [Point::A1, Point::B1, Point::C1])? {
        return Ok(WindowVerdict::NotSharygin);
    }
    let (lo, hi) = SHARYGIN_WINDOW_DEGREES;
    let inside = angles(tp, 1e-12)?.iter().any(|iv| {
        let (l, h) = (iv.lo.to_degrees(), iv.hi.to_degrees());
        l > 90.0 && lo <= l && h <= hi
    });
    Ok(if inside { WindowVerdict::Inside } else { WindowVerdict::Outside })
}

/// Terms `c·z₁^a z₂^b z₃^d` of the condition, for the non-isosceles case,
/// that the internal bisectral triangle is isosceles with `C₁A₁ = C₁B₁`.
pub fn tangency_condition_terms() -> Vec<(i64, [u32; 3])> {
    vec![
        (1, [3, 1, 0]),
        (1, [1, 3, 0]),
        (-1, [3, 0, 1]),
        (-1, [0, 3, 1]),
        (1, [2, 0, 2]),
        (1, [0, 2, 2]),
    ]
}

/// The condition at `z₁ = x`, `z₂ = y⁻¹`, `z₃ = −1`.
pub fn condition_on_torus() -> BiLaurent {
    let mut out = BiLaurent::zero();
    for (c, [a, b, d]) in tangency_condition_terms() {
        let sign = if d % 2 == 0 { c } else { -c };
        out = &out + &BiLaurent::monomial(BigInt::from(sign), a as i64, -(b as i64));
    }
    out
}

/// Checks `y³ · Q(x, y⁻¹, −1) = 1 + x + y + x²y³ + x³y² + x³y³` as Laurent
/// polynomials.
pub fn condition_identity_check() -> bool {
    let lhs = &BiLaurent::monomial(BigInt::from(1), 0, 3) * &condition_on_torus();
    lhs == BiLaurent::sharygin()
}

/// `Q(z₁, z₂, z₃)` evaluated exactly.
pub fn evaluate_condition(t: &TangencyTriple) -> Result<CycloElem, CycloError> {
    let z = t.points();
    let mut total = CycloElem::zero(t.modulus())?;
    for (c, e) in tangency_condition_terms() {
        let mut term = CycloElem::from_integer(t.modulus(), c)?;
        for (zi, &k) in z.iter().zip(&e) {
            term = term.mul(&zi.pow(k))?;
        }
        total = total.add(&term)?;
    }
    Ok(total)
}
