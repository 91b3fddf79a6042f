use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::field::{Field, FieldElement};
use super::AlgebraError;

/// Dense univariate polynomial over a [`Field`], lowest degree first.
///
/// The zero polynomial has no coefficients. The leading coefficient of a
/// nonzero polynomial is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Result<Poly, AlgebraError> {
        if coeffs.iter().any(|c| !c.in_field(field)) {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(Poly::from_trusted(field.clone(), coeffs))
    }

    pub(crate) fn from_trusted(field: Field, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_rationals(coeffs: Vec<BigRational>) -> Poly {
        Poly::from_trusted(
            Field::Rational,
            coeffs.into_iter().map(FieldElement::Rational).collect(),
        )
    }

    /// Integer coefficients over Q, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::from_rationals(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::from_trusted(field.clone(), Vec::new())
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::from_trusted(c.field(), vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::from_trusted(field.clone(), vec![field.zero(), field.one()])
    }

    /// c·xⁿ
    pub fn monomial(c: FieldElement, n: usize) -> Poly {
        let field = c.field();
        let mut coeffs = vec![field.zero(); n];
        coeffs.push(c);
        Poly::from_trusted(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Every coefficient lies in Q.
    pub fn rational_coeffs(&self) -> Option<Vec<BigRational>> {
        self.coeffs.iter().map(FieldElement::as_rational).collect()
    }

    pub fn coefficient_bits(&self) -> u64 {
        self.coeffs.iter().map(FieldElement::bit_size).sum()
    }

    fn check_field(&self, other: &Poly) -> Result<(), AlgebraError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Ok(Poly::from_trusted(self.field.clone(), coeffs))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        if self.field == Field::Rational {
            if let (Some(a), Some(b)) = (self.rational_coeffs(), other.rational_coeffs()) {
                return Ok(Poly::from_rationals(super::qpoly::mul(&a, &b)));
            }
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Poly::from_trusted(self.field.clone(), out))
    }

    pub fn scale(&self, s: &FieldElement) -> Result<Poly, AlgebraError> {
        if !s.in_field(&self.field) {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(Poly::from_trusted(
            self.field.clone(),
            self.coeffs.iter().map(|c| c * s).collect(),
        ))
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement, AlgebraError> {
        if !x.in_field(&self.field) {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c))
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(self.field.one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self ∘ inner`: Horner's rule for short outer polynomials, otherwise
    /// splitting the outer coefficients in halves against `inner^(2^j)`.
    pub fn compose(&self, inner: &Poly) -> Result<Poly, AlgebraError> {
        self.check_field(inner)?;
        let mut powers = vec![inner.clone()];
        while (1usize << powers.len()) < self.coeffs.len() {
            let last = powers.last().unwrap();
            powers.push(last * last);
        }
        self.compose_split(&self.coeffs, &powers)
    }

    fn compose_split(&self, coeffs: &[FieldElement], powers: &[Poly]) -> Result<Poly, AlgebraError> {
        if coeffs.len() <= 8 {
            let mut acc = Poly::zero(&self.field);
            for c in coeffs.iter().rev() {
                acc = (&acc * &powers[0]).try_add(&Poly::constant(c.clone()))?;
            }
            return Ok(acc);
        }
        let j = (usize::BITS - (coeffs.len() - 1).leading_zeros() - 1) as usize;
        let (lo, hi) = coeffs.split_at(1 << j);
        let high = self.compose_split(hi, powers)?;
        self.compose_split(lo, powers)?.try_add(&(&high * &powers[j]))
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_int(i as i64))
            .collect();
        Poly::from_trusted(self.field.clone(), coeffs)
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        self.check_field(divisor)?;
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead_inv = divisor.leading().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..r.len() - dd).rev() {
            let c = &r[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * b);
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((
            Poly::from_trusted(self.field.clone(), q),
            Poly::from_trusted(self.field.clone(), r),
        ))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        self.scale(&inv).expect("same field")
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomials over different fields")
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomials over different fields")
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomials over different fields")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_trusted(self.field.clone(), self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    /// Text form accepted by the expression parser, e.g. `x^2 - 1/2*x + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (negative, mag) = match c.as_rational() {
                Some(q) if q.is_negative() => (true, FieldElement::Rational(-q)),
                Some(q) => (false, FieldElement::Rational(q)),
                None => (false, c.clone()),
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = mag.as_rational().is_some_and(|q| q.is_one());
            match (i, unit) {
                (0, _) => write!(f, "{}", mag)?,
                (_, true) => {}
                (_, false) => write!(f, "{}*", mag)?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(Poly::from_ints(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(Poly::from_ints(&[0, -3, 0, 2]).to_string(), "2*x^3 - 3*x");
        let half = Poly::from_rationals(vec![
            BigRational::new(1.into(), 3.into()),
            BigRational::new((-1).into(), 2.into()),
        ]);
        assert_eq!(half.to_string(), "-1/2*x + 1/3");
        assert_eq!(Poly::zero(&Field::Rational).to_string(), "0");
        assert_eq!(Poly::from_ints(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn division_identity() {
        let a = Poly::from_ints(&[5, 0, 3, 1, 2]);
        let b = Poly::from_ints(&[1, 2, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg() < 2);
    }

    #[test]
    fn compose_basic() {
        let sq = Poly::from_ints(&[0, 0, 1]);
        let shift = Poly::from_ints(&[1, 1]);
        assert_eq!(sq.compose(&shift).unwrap(), Poly::from_ints(&[1, 2, 1]));
    }

    #[test]
    fn gcd_is_monic() {
        let a = Poly::from_ints(&[-2, 0, 2]); // 2(x-1)(x+1)
        let b = Poly::from_ints(&[-3, 3]); // 3(x-1)
        assert_eq!(a.gcd(&b).unwrap(), Poly::from_ints(&[-1, 1]));
    }
}
