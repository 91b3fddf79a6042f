//! Canonical heights over Q.
//!
//! ĥ_f is assembled from local canonical heights λ_v at the archimedean place
//! and at the primes dividing the resultant of the lift. Each λ_v telescopes
//! as log‖x̃‖_v + Σ_k d^{−(k+1)}·g_v(z_k) with |g_v| ≤ C_v, so truncating
//! after n steps leaves a certified tail of C_v·d^{−n}/(d−1).

mod local;
mod map;
mod point;
mod preperiodic;

pub use local::{
    canonical_height, local_canonical_height, local_canonical_height_with_error, local_constant,
    product_formula_check, relevant_places, total_constant, HeightValue, Place,
    PlaceContribution, ProductFormulaReport,
};
pub use map::{homogeneous_resultant, RationalMap};
pub use point::{naive_height, ProjPointQ};
pub use preperiodic::{
    escape_bound, is_preperiodic, orbit, preperiodic_points, preperiodic_points_up_to, OrbitCertificate,
    PreperiodicEnumeration, Preperiodicity,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeightError {
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("heights are implemented over Q only")]
    NotRational,
    #[error("degenerate map: {0}")]
    Degenerate(String),
    #[error("map degree {0} is below 2")]
    DegreeTooSmall(u32),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("resource budget exceeded: {0}")]
    Budget(String),
}
