//! Exact scalars, polynomials and trigonometric moments.

mod moments;
mod poly;
mod scalar;

pub use moments::wallis_moment;
pub use poly::Poly;
pub use scalar::{
    int, integer_sqrt_exact, rat, rational_sqrt_exact, rational_to_f64, RationalScalar, ScaledRational, SqrtRational,
};
