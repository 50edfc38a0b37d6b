//! Exact arithmetic: finite fields, polynomials over them, truncated DVRs,
//! dense matrices, integer Smith form and rational polynomials.

mod dvr;
mod field;
mod gl;
mod matrix;
mod poly;
mod qpoly;
pub mod snf;

pub use dvr::{DvrKind, DvrQuot};
pub use field::{is_prime, prime_power_parts, prime_powers, primes, Gf, MAX_FIELD_ORDER};
pub use gl::{gl_iter, gl_order, gl_order_u128, parabolic_for_each, parabolic_order, GlIter};
pub use matrix::{pairs, Mat};
pub use poly::{irreducible_count_formula, irreducibles, irreducibles_q, UniPoly, IRREDUCIBLE_SIEVE_CAP};
pub use qpoly::{parse_rational, rational_string, QPoly};
