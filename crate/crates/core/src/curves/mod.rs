//! Curves in P¹×P¹ given by exact defining polynomials: images under split
//! maps, invariance, orbit detection, the f̃ⁿ(x) = L(f̃ᵐ(y)) family and
//! preperiodic points lying on a curve.

mod bipoly;
mod curve;
mod image;
mod orbit;

pub use curve::BiCurve;
pub use image::{image_curve, is_invariant};
pub use orbit::{
    curve_preperiodicity, ms_curve, preperiodic_pairs_on_curve, CurveOrbitReport, OrbitStatus,
    PairReport,
};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraError, Poly};
use crate::heights::{HeightError, RationalMap};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("curves are defined over Q only")]
    NotRational,
    #[error("the defining polynomial is constant")]
    ZeroPolynomial,
    #[error("curve {0} is not transversal (it has a fiber component or misses a coordinate)")]
    NotTransversal(String),
    #[error("elimination collapsed: the resultant vanishes identically")]
    EliminationCollapse,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Map(#[from] HeightError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// (x, y) ↦ (fⁿ(x), gᵐ(y)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEndo {
    pub f: RationalMap,
    pub g: RationalMap,
    pub n: u32,
    pub m: u32,
}

impl SplitEndo {
    pub fn new(f: RationalMap, g: RationalMap, n: u32, m: u32) -> Result<SplitEndo, CurveError> {
        if n == 0 || m == 0 {
            return Err(CurveError::InvalidArgument("exponents must be positive".into()));
        }
        Ok(SplitEndo { f, g, n, m })
    }

    pub fn polynomial(f: &Poly, g: &Poly, n: u32, m: u32) -> Result<SplitEndo, CurveError> {
        SplitEndo::new(RationalMap::from_poly(f)?, RationalMap::from_poly(g)?, n, m)
    }

    /// The coordinate maps fⁿ and gᵐ.
    pub fn components(&self) -> Result<(RationalMap, RationalMap), CurveError> {
        Ok((self.f.iterate(self.n)?, self.g.iterate(self.m)?))
    }

    /// Φᵏ
    pub fn power(&self, k: u32) -> SplitEndo {
        SplitEndo {
            f: self.f.clone(),
            g: self.g.clone(),
            n: self.n * k,
            m: self.m * k,
        }
    }
}

impl Serialize for BiCurve {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let monomials: Vec<(u32, u32, String)> =
            self.terms().map(|(i, j, c)| (i, j, c.to_string())).collect();
        let mut st = s.serialize_struct("BiCurve", 1)?;
        st.serialize_field("monomials", &monomials)?;
        st.end()
    }
}
