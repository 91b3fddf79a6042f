use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::HeightError;
use crate::arith;

/// A point [a : b] of P¹(Q) with coprime integer coordinates, b ≥ 0, and
/// a > 0 when b = 0. The affine coordinate is a/b.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPointQ {
    a: BigInt,
    b: BigInt,
}

impl ProjPointQ {
    pub fn new(a: BigInt, b: BigInt) -> Result<ProjPointQ, HeightError> {
        if a.is_zero() && b.is_zero() {
            return Err(HeightError::InvalidPoint("[0 : 0]".into()));
        }
        Ok(Self::normalized(a, b))
    }

    pub(crate) fn normalized(mut a: BigInt, mut b: BigInt) -> ProjPointQ {
        let g = a.gcd(&b);
        a /= &g;
        b /= &g;
        if b.is_negative() || (b.is_zero() && a.is_negative()) {
            a = -a;
            b = -b;
        }
        ProjPointQ { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Result<ProjPointQ, HeightError> {
        ProjPointQ::new(a.into(), b.into())
    }

    pub fn from_rational(q: &BigRational) -> ProjPointQ {
        ProjPointQ::normalized(q.numer().clone(), q.denom().clone())
    }

    pub fn integer(n: i64) -> ProjPointQ {
        ProjPointQ::normalized(n.into(), BigInt::one())
    }

    pub fn infinity() -> ProjPointQ {
        ProjPointQ {
            a: BigInt::one(),
            b: BigInt::zero(),
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }

    /// The affine coordinate, absent at infinity.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_infinity() {
            None
        } else {
            Some(BigRational::new(self.a.clone(), self.b.clone()))
        }
    }

    /// max(|a|, |b|)
    pub fn max_abs(&self) -> BigInt {
        self.a.abs().max(self.b.clone())
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.to_rational()
            .map(|q| num_traits::ToPrimitive::to_f64(&q).unwrap_or(f64::NAN))
    }
}

/// log max(|a|, |b|) of the normalized lift.
pub fn naive_height(x: &ProjPointQ) -> f64 {
    arith::ln_abs(&x.max_abs())
}

impl fmt::Display for ProjPointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "inf")
        } else if self.b.is_one() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}/{}", self.a, self.b)
        }
    }
}

impl Serialize for ProjPointQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for ProjPointQ {
    type Err = HeightError;

    /// Accepts `inf`, `∞`, `n`, `p/q` and `[a:b]`.
    fn from_str(s: &str) -> Result<ProjPointQ, HeightError> {
        let t = s.trim();
        let bad = || HeightError::InvalidPoint(s.to_string());
        if t == "inf" || t == "∞" || t == "infinity" {
            return Ok(ProjPointQ::infinity());
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (a, b) = inner.split_once(':').ok_or_else(bad)?;
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            return ProjPointQ::new(a, b);
        }
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                ProjPointQ::new(n, d)
            }
            None => {
                let n: BigInt = t.parse().map_err(|_| bad())?;
                Ok(ProjPointQ::normalized(n, BigInt::one()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let p = ProjPointQ::from_ints(-4, -6).unwrap();
        assert_eq!((p.a().clone(), p.b().clone()), (BigInt::from(2), BigInt::from(3)));
        let inf = ProjPointQ::from_ints(-5, 0).unwrap();
        assert_eq!(inf, ProjPointQ::infinity());
        assert!(ProjPointQ::from_ints(0, 0).is_err());
    }

    #[test]
    fn naive_heights() {
        let h = |a, b| naive_height(&ProjPointQ::from_ints(a, b).unwrap());
        assert!((h(2, 1) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(h(1, 1), 0.0);
        assert!((h(3, 7) - 7f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn parse_and_print() {
        for s in ["inf", "-3", "5/7", "0"] {
            assert_eq!(s.parse::<ProjPointQ>().unwrap().to_string(), s);
        }
        assert_eq!("[2:-4]".parse::<ProjPointQ>().unwrap().to_string(), "-1/2");
        assert!("1/0".parse::<ProjPointQ>().is_err());
    }
}
