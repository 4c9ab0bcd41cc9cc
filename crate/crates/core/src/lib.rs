//! Exact computation of multi-derivation modules D(A,ν) of hyperplane
//! multi-arrangements over cyclotomic fields, with freeness certificates.

pub mod algebra;
pub mod arrangement;
pub mod derivations;
pub mod error;
pub mod reflgroup;

pub use algebra::{CycloField, CycloScalar, ExactMatrix, Monomial, Poly, Rational};
pub use arrangement::{monomial_group_arrangement, Hyperplane, MultiArrangement};
pub use derivations::{
    free_basis_search, is_member, saito_check, Derivation, FreenessCertificate, SaitoFailure, SearchOptions, SearchOutcome,
    Solver,
};
pub use error::{Error, Result};
pub use reflgroup::{builtin_group, generate_group, ReflGroup, Reflection, UnitaryMatrix};
