//! Floating-point complex dynamics: periodic points and multipliers,
//! invariant-measure sampling by random backward orbits, pullback measures
//! on curves and their discrepancy, Poincaré linearization with germ
//! residuals, and Julia rendering.
//!
//! Everything here is a numerical check, not a certificate.

mod cmap;
mod julia;
mod measure;
mod periodic;
mod poincare;
mod point;

pub use cmap::ComplexMap;
pub use julia::{julia_render, julia_render_view, GrayImage, JuliaView};
pub use measure::{
    curve_measure_discrepancy, curve_pullback_measure, measure_discrepancy, sample_invariant_measure,
    CurveMeasure, EmpiricalMeasure,
};
pub use periodic::{group_cycles, periodic_points, PeriodicPointData, MAX_PERIODIC_DEGREE};
pub use poincare::{germ_equality_residual, poincare_series, Germ, PoincareSeries};
pub use point::ComplexPoint;

use thiserror::Error;

/// Numeric defaults shared by the library and the command line.
pub mod config {
    /// Seed used when none is given.
    pub const SEED: u64 = 0;
    /// Root and residual tolerance.
    pub const TOL: f64 = 1e-9;
    /// Backward steps discarded before recording.
    pub const BURN_IN: usize = 50;
    /// Default sample count for measures.
    pub const SAMPLES: usize = 10_000;
    /// Independent RNG streams per sampling run.
    pub const SAMPLE_STREAMS: usize = 64;
    /// Highest total degree of the moment test functions.
    pub const MOMENT_DEGREE: usize = 4;
    /// Latitude and longitude cells of the discrepancy grid.
    pub const GRID: usize = 32;
    /// Discrepancy below which two samples are taken to agree.
    pub const AGREE_THRESHOLD: f64 = 0.05;
    /// Discrepancy above which two samples are taken to differ.
    pub const DIFFER_THRESHOLD: f64 = 0.15;
    /// Default Poincaré series order.
    pub const POINCARE_ORDER: usize = 12;
    /// Default germ-check radius and grid size.
    pub const GERM_RADIUS: f64 = 0.1;
    pub const GERM_GRID: usize = 16;
    /// Default Julia image side and iteration count.
    pub const JULIA_RESOLUTION: usize = 64;
    pub const JULIA_ITERATIONS: usize = 100;
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not a fixed point: {0}")]
    NotFixed(String),
    #[error("fixed point is not repelling (|λ| = {modulus})")]
    NonRepelling { modulus: f64 },
    #[error("empty measure")]
    EmptyMeasure,
    #[error("evaluation reaches radius {radius}, beyond the series' reliable radius {limit}")]
    RadiusTooLarge { radius: f64, limit: f64 },
    #[error("fixed-point polynomial of degree {0} is too large")]
    DegreeTooLarge(usize),
}
