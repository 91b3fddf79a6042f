use std::fmt;

use super::field::{Field, FieldElement};
use super::poly::Poly;
use super::AlgebraError;

/// The affine map x ↦ a·x + b with a ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearPoly {
    a: FieldElement,
    b: FieldElement,
}

impl LinearPoly {
    pub fn new(a: FieldElement, b: FieldElement) -> Result<LinearPoly, AlgebraError> {
        if !a.same_field(&b) {
            return Err(AlgebraError::FieldMismatch);
        }
        if a.is_zero() {
            return Err(AlgebraError::InvalidArgument(
                "linear polynomial needs a nonzero slope".into(),
            ));
        }
        Ok(LinearPoly { a, b })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<LinearPoly, AlgebraError> {
        LinearPoly::new(FieldElement::int(a), FieldElement::int(b))
    }

    pub fn identity(field: &Field) -> LinearPoly {
        LinearPoly {
            a: field.one(),
            b: field.zero(),
        }
    }

    /// x ↦ a·x
    pub fn scaling(a: FieldElement) -> Result<LinearPoly, AlgebraError> {
        let b = a.field().zero();
        LinearPoly::new(a, b)
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement, AlgebraError> {
        self.a.try_mul(x)?.try_add(&self.b)
    }

    /// x ↦ (x − b)/a
    pub fn inverse(&self) -> LinearPoly {
        let ainv = self.a.inv().expect("slope is nonzero");
        LinearPoly {
            b: -&(&self.b * &ainv),
            a: ainv,
        }
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &LinearPoly) -> Result<LinearPoly, AlgebraError> {
        Ok(LinearPoly {
            a: self.a.try_mul(&inner.a)?,
            b: self.a.try_mul(&inner.b)?.try_add(&self.b)?,
        })
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_trusted(self.field(), vec![self.b.clone(), self.a.clone()])
    }

    /// Reads a degree-one polynomial back as a linear map.
    pub fn from_poly(p: &Poly) -> Result<LinearPoly, AlgebraError> {
        if p.degree() != Some(1) {
            return Err(AlgebraError::InvalidArgument(format!(
                "expected a degree-one polynomial, got {p}"
            )));
        }
        LinearPoly::new(p.coeff(1), p.coeff(0))
    }
}

impl fmt::Display for LinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}
