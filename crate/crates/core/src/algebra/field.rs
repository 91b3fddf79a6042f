use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::qpoly::{self, QPoly};
use super::AlgebraError;

static NEXT_FIELD_ID: AtomicU64 = AtomicU64::new(1);

/// The data of a simple extension Q[t]/(m(t)).
#[derive(Debug)]
pub struct ExtensionField {
    id: u64,
    modulus: QPoly,
}

impl ExtensionField {
    pub fn id(&self) -> u64 {
        self.id
    }

    /// Monic defining polynomial, lowest degree first.
    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// Handle of an ambient coefficient field: Q or one declared simple extension.
#[derive(Clone, Debug)]
pub enum Field {
    Rational,
    Extension(Arc<ExtensionField>),
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Field::Rational, Field::Rational) => true,
            (Field::Extension(a), Field::Extension(b)) => a.id == b.id,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Field::Rational => 0u64.hash(state),
            Field::Extension(e) => e.id.hash(state),
        }
    }
}

impl Field {
    /// Declares Q[t]/(m(t)). The modulus is made monic; irreducibility is
    /// checked for degree 2 and 3 (absence of rational roots) and trusted above.
    pub fn extension(modulus: Vec<BigRational>) -> Result<Field, AlgebraError> {
        let mut m = modulus;
        qpoly::trim(&mut m);
        if m.len() < 2 {
            return Err(AlgebraError::InvalidModulus("modulus must be nonconstant".into()));
        }
        let m = qpoly::monic(&m);
        if m.len() <= 4 && m.len() >= 3 {
            let roots = qpoly::rational_roots(&m, 1 << 16).ok_or_else(|| {
                AlgebraError::InvalidModulus("modulus coefficients too large to check".into())
            })?;
            if !roots.is_empty() {
                return Err(AlgebraError::InvalidModulus(format!(
                    "modulus has the rational root {}",
                    roots[0]
                )));
            }
        }
        Ok(Field::Extension(Arc::new(ExtensionField {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            modulus: m,
        })))
    }

    /// Convenience constructor from integer coefficients.
    pub fn extension_from_ints(modulus: &[i64]) -> Result<Field, AlgebraError> {
        Field::extension(
            modulus
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        match self {
            Field::Rational => 1,
            Field::Extension(e) => e.degree(),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Field::Rational)
    }

    pub fn zero(&self) -> FieldElement {
        self.from_rational(BigRational::zero())
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(q),
            Field::Extension(e) => {
                let mut coeffs = vec![BigRational::zero(); e.degree()];
                coeffs[0] = q;
                FieldElement::Ext {
                    field: e.clone(),
                    coeffs,
                }
            }
        }
    }

    /// The class of t in Q[t]/(m). Errors over Q.
    pub fn generator(&self) -> Result<FieldElement, AlgebraError> {
        match self {
            Field::Rational => Err(AlgebraError::NoGenerator),
            Field::Extension(e) => Ok(FieldElement::from_ext_poly(e, vec![
                BigRational::zero(),
                BigRational::one(),
            ])),
        }
    }

    /// Element from a coefficient vector in the power basis 1, t, t², ….
    pub fn element(&self, coeffs: Vec<BigRational>) -> Result<FieldElement, AlgebraError> {
        match self {
            Field::Rational => {
                let mut c = coeffs;
                qpoly::trim(&mut c);
                match c.len() {
                    0 => Ok(self.zero()),
                    1 => Ok(FieldElement::Rational(c.pop().unwrap())),
                    _ => Err(AlgebraError::NoGenerator),
                }
            }
            Field::Extension(e) => Ok(FieldElement::from_ext_poly(e, coeffs)),
        }
    }
}

/// Exact scalar in Q or in a declared extension Q[t]/(m(t)).
///
/// Arithmetic through the std operators panics when the operands live in
/// different fields; the `try_*` methods report [`AlgebraError::FieldMismatch`].
#[derive(Clone, Debug)]
pub enum FieldElement {
    Rational(BigRational),
    Ext {
        field: Arc<ExtensionField>,
        coeffs: Vec<BigRational>,
    },
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => a == b,
            (
                FieldElement::Ext { field: f, coeffs: a },
                FieldElement::Ext { field: g, coeffs: b },
            ) => f.id == g.id && a == b,
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            FieldElement::Rational(q) => q.hash(state),
            FieldElement::Ext { field, coeffs } => {
                field.id.hash(state);
                coeffs.hash(state);
            }
        }
    }
}

impl FieldElement {
    fn from_ext_poly(field: &Arc<ExtensionField>, poly: QPoly) -> FieldElement {
        let mut r = qpoly::rem(&poly, &field.modulus);
        r.resize(field.degree(), BigRational::zero());
        FieldElement::Ext {
            field: field.clone(),
            coeffs: r,
        }
    }

    pub fn rational(q: BigRational) -> FieldElement {
        FieldElement::Rational(q)
    }

    pub fn int(n: i64) -> FieldElement {
        FieldElement::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Ext { field, .. } => Field::Extension(field.clone()),
        }
    }

    /// Power-basis coefficients (length 1 over Q).
    pub fn coefficients(&self) -> Vec<BigRational> {
        match self {
            FieldElement::Rational(q) => vec![q.clone()],
            FieldElement::Ext { coeffs, .. } => coeffs.clone(),
        }
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q.clone()),
            FieldElement::Ext { coeffs, .. } => {
                if coeffs[1..].iter().all(Zero::is_zero) {
                    Some(coeffs[0].clone())
                } else {
                    None
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Ext { coeffs, .. } => coeffs.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// Total bit size of numerators and denominators.
    pub fn bit_size(&self) -> u64 {
        match self {
            FieldElement::Rational(q) => q.numer().bits() + q.denom().bits(),
            FieldElement::Ext { coeffs, .. } => coeffs
                .iter()
                .map(|q| q.numer().bits() + q.denom().bits())
                .sum(),
        }
    }

    fn check_same(&self, other: &FieldElement) -> Result<(), AlgebraError> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    pub fn same_field(&self, other: &FieldElement) -> bool {
        match (self, other) {
            (FieldElement::Rational(_), FieldElement::Rational(_)) => true,
            (FieldElement::Ext { field: f, .. }, FieldElement::Ext { field: g, .. }) => {
                f.id == g.id
            }
            _ => false,
        }
    }

    pub fn in_field(&self, field: &Field) -> bool {
        match (self, field) {
            (FieldElement::Rational(_), Field::Rational) => true,
            (FieldElement::Ext { field: f, .. }, Field::Extension(g)) => f.id == g.id,
            _ => false,
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement, AlgebraError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a + b)
            }
            (FieldElement::Ext { field, coeffs: a }, FieldElement::Ext { coeffs: b, .. }) => {
                FieldElement::Ext {
                    field: field.clone(),
                    coeffs: a.iter().zip(b).map(|(x, y)| x + y).collect(),
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement, AlgebraError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement, AlgebraError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a * b)
            }
            (FieldElement::Ext { field, coeffs: a }, FieldElement::Ext { coeffs: b, .. }) => {
                FieldElement::from_ext_poly(field, qpoly::mul(a, b))
            }
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement, AlgebraError> {
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<FieldElement, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Ext { field, coeffs } => {
                let (g, s) = qpoly::ext_gcd_mod(coeffs, &field.modulus);
                if g.len() != 1 {
                    return Err(AlgebraError::InvalidModulus(
                        "element is a zero divisor: the declared modulus is reducible".into(),
                    ));
                }
                FieldElement::from_ext_poly(field, s)
            }
        })
    }

    pub fn pow(&self, k: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field().one();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Signed integer power; negative exponents invert.
    pub fn powi(&self, k: i64) -> Result<FieldElement, AlgebraError> {
        if k >= 0 {
            Ok(self.pow(k as u64))
        } else {
            Ok(self.inv()?.pow(k.unsigned_abs()))
        }
    }

    /// Evaluates the element under the embedding t ↦ theta.
    pub fn embed(&self, theta: num_complex::Complex64) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        let coeffs = self.coefficients();
        coeffs.iter().rev().fold(num_complex::Complex64::new(0.0, 0.0), |acc, c| {
            acc * theta + c.to_f64().unwrap_or(f64::NAN)
        })
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("field element arithmetic across different fields")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q),
            FieldElement::Ext { field, coeffs } => FieldElement::Ext {
                field: field.clone(),
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElement {
    /// Rationals print as `p/q`; extension elements as a parenthesized
    /// polynomial in `t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => fmt_rational(q, f),
            FieldElement::Ext { coeffs, .. } => {
                let terms: Vec<(usize, &BigRational)> = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if terms.is_empty() {
                    return write!(f, "0");
                }
                if terms.len() == 1 && terms[0].0 == 0 {
                    return fmt_rational(terms[0].1, f);
                }
                write!(f, "(")?;
                for (k, (i, c)) in terms.iter().rev().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    if *i == 0 {
                        write!(f, "({})", c)?;
                    } else {
                        write!(f, "({})*t", c)?;
                        if *i > 1 {
                            write!(f, "^{}", i)?;
                        }
                    }
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> Field {
        Field::extension_from_ints(&[1, 0, 1]).unwrap()
    }

    #[test]
    fn rational_lowest_terms() {
        let a = FieldElement::Rational(BigRational::new(4.into(), (-6).into()));
        assert_eq!(a.to_string(), "-2/3");
    }

    #[test]
    fn gaussian_arithmetic() {
        let k = gaussian();
        let i = k.generator().unwrap();
        assert_eq!(&i * &i, k.from_int(-1));
        let z = &k.from_int(1) + &i;
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, k.one());
        assert_eq!(i.pow(4), k.one());
    }

    #[test]
    fn mismatch_is_an_error() {
        let k = gaussian();
        let l = gaussian();
        assert!(matches!(
            k.one().try_add(&l.one()),
            Err(AlgebraError::FieldMismatch)
        ));
        assert!(matches!(
            k.one().try_mul(&FieldElement::int(2)),
            Err(AlgebraError::FieldMismatch)
        ));
    }

    #[test]
    fn reducible_small_modulus_rejected() {
        assert!(Field::extension_from_ints(&[-1, 0, 1]).is_err());
        assert!(Field::extension_from_ints(&[-8, 0, 0, 1]).is_err());
        assert!(Field::extension_from_ints(&[2]).is_err());
    }
}
