//! Exact integer Laurent polynomials, cyclotomic bookkeeping and truncated
//! power series.

mod graded;
mod laurent;
mod series;

pub use graded::{cyclotomic, graded_reduce, CycloFactorisation, GradedProduct};
pub use laurent::{divide_exact, Division, LaurentPoly};
pub use series::{series_divide, series_quotient};

/// Free-function form of multiplication.
pub fn poly_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a * b
}

/// Least exponent with a nonzero coefficient.
pub fn trailing_degree(p: &LaurentPoly) -> Result<i64, crate::error::PolyError> {
    p.trailing_degree()
}
