//! Exact arithmetic kernel.
//!
//! Everything downstream works over the fraction field of Laurent polynomials
//! in `q^(1/2)`, `t^(1/2)`, the framing parameters `u_i^(1/2)`, the Kähler
//! variables `z_i`, the shift parameter `p` and a handful of auxiliary
//! symbols. Exponents are stored doubled so that half-integer powers stay in
//! integer arithmetic.

mod vars;
mod poly;
pub mod gcd;
mod scalar;
mod degree;
mod series;
mod kappa;
mod parse;
pub mod linalg;

pub use vars::{Var, Mono};
pub use poly::LaurentPoly;
pub use scalar::{bracket, bracket_mono, scalar_arith, set_reduce_threshold, ExactScalar, ScalarOp};
pub use degree::{WeightedDegree, degree_bounds, leading_part, weighted_degree_of_mono};
pub use series::TruncatedSeries;
pub use kappa::{kappa_expand, KappaSeries};
pub use parse::{parse_scalar, parse_scalar_with};

use num_rational::BigRational;
use num_bigint::BigInt;

/// Shorthand for building rational constants.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for integer constants.
pub fn int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}
