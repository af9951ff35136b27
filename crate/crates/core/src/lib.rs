//! Exact solver for polynomial equations whose unknowns are roots of
//! unity, built around the system `f(x, y) = 0`, `x^N = y^N = 1` with
//! `f = 1 + x + y + x²y³ + x³y² + x³y³`.
//!
//! The layers are [`numtheory`] (Möbius, totient and Ramanujan sums),
//! [`poly`] (integer polynomials, resultants, cyclotomic polynomials),
//! [`cyclofield`] (exact arithmetic in `Q(ζ_N)` with certified numerics),
//! [`pipeline`] (elimination, enumeration and classification of the
//! solutions) and [`geometry`] (the triangle configurations behind them).

pub mod cyclofield;
pub mod geometry;
pub mod pipeline;
pub mod numtheory;
pub mod par;
pub mod poly;

pub use par::Execution;
