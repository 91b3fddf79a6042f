//! Computational dynamics of split endomorphisms (x, y) ↦ (f(x), g(y)) of
//! P¹×P¹.
//!
//! * [`algebra`]: exact polynomials over Q or Q[t]/(m), composition calculus,
//!   normal forms and decomposition primitives.
//! * [`heights`]: canonical heights over Q by local contributions, and a
//!   terminating preperiodicity test.
//! * [`curves`]: curves in P¹×P¹, images under split maps by elimination,
//!   invariance and orbit detection.
//! * [`classify`]: the unicritical family, semiconjugacy generation and
//!   classification, pairing criterion, symmetries.
//! * [`numeric`]: periodic points, invariant measures, curve pullback
//!   measures, linearization series and Julia rendering in floating point.
//! * [`cli`]: expression parser, serialization and the experiment runner
//!   behind the `splitdyn` binary.

pub mod algebra;
pub mod arith;
pub mod heights;
pub mod curves;
pub mod classify;
pub mod numeric;
pub mod cli;
pub(crate) mod rootfind;
