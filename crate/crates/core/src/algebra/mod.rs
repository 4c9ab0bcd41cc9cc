//! Exact arithmetic: rationals, cyclotomic scalars, sparse polynomials and
//! linear algebra over Q(ζ_n).

pub mod cyclo;
pub mod field;
pub mod matrix;
pub mod modular;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use cyclo::{cyclo_arith, CycloField, CycloOp, CycloScalar, MAX_CONDUCTOR};
pub use matrix::{poly_matrix_det, ExactMatrix, Rref};
pub use monomial::{binomial, monomial_count, monomial_rank, monomials_of_degree, Monomial};
pub use parse::{parse_cyclo, parse_poly, var_name};
pub use poly::{primitive_scale, Poly};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Largest supported number of polynomial variables.
pub const MAX_VARS: usize = 8;
