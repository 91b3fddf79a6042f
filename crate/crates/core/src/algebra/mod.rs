//! Exact scalar and univariate polynomial arithmetic over Q or a simple
//! extension Q[t]/(m(t)): composition, iteration, conjugation, normal forms,
//! Chebyshev polynomials and decomposition primitives.

mod decompose;
mod field;
mod identity;
mod linear;
pub(crate) mod matrix;
mod ops;
mod poly;
pub(crate) mod qpoly;
mod roots;

pub use decompose::{
    engstrom_left, engstrom_right, left_compositional_quotients, right_compositional_quotient,
};
pub use field::{ExtensionField, Field, FieldElement};
pub use identity::compositions_agree;
pub use linear::LinearPoly;
pub use ops::{
    chebyshev, compose, conjugate, is_exceptional_poly, is_normal_form, iterate,
    iterate_with_budget, lift_to_field, normal_conjugacy_witness, normal_form, ExceptionalClass,
    DEFAULT_COEFFICIENT_BITS,
};
pub use poly::Poly;
pub use roots::{has_nth_root, nth_roots, roots_of_unity};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid extension modulus: {0}")]
    InvalidModulus(String),
    #[error("the rational field has no generator t")]
    NoGenerator,
    #[error("required root does not exist in the ambient field")]
    RootNotInField,
    #[error("inputs are not in normal form (monic, vanishing x^(d-1) coefficient, equal degree)")]
    NotNormalForm,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("coefficient size {bits} bits exceeds the budget of {budget} bits")]
    ResourceLimit { bits: u64, budget: u64 },
    #[error("numerical root search in the extension failed")]
    RootSearchFailed,
    #[error("root search in the extension needs too many embedding combinations")]
    RootSearchTooLarge,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
