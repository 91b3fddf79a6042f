use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::point::ProjPointQ;
use super::HeightError;
use crate::algebra::{matrix, FieldElement, LinearPoly, Poly};
use crate::arith;

/// A rational map N/D over Q of degree d ≥ 2 together with its primitive
/// integral homogeneous lift F = (F₀, F₁) and the resultant Res(F₀, F₁).
///
/// `f0[i]` is the coefficient of XⁱY^{d−i} in F₀, and likewise for `f1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    num: Poly,
    den: Poly,
    degree: u32,
    f0: Vec<BigInt>,
    f1: Vec<BigInt>,
    resultant: BigInt,
}

impl RationalMap {
    pub fn new(num: Poly, den: Poly) -> Result<RationalMap, HeightError> {
        if !num.field().is_rational() || !den.field().is_rational() {
            return Err(HeightError::NotRational);
        }
        if den.is_zero() {
            return Err(HeightError::Degenerate("zero denominator".into()));
        }
        let g = num.gcd(&den).map_err(|e| HeightError::Degenerate(e.to_string()))?;
        if !g.is_constant() {
            return Err(HeightError::Degenerate(format!(
                "numerator and denominator share the factor {g}"
            )));
        }
        let d = num.degree().unwrap_or(0).max(den.deg());
        if d < 2 {
            return Err(HeightError::DegreeTooSmall(d as u32));
        }
        let rat = |p: &Poly| -> Vec<BigRational> {
            let c = p.rational_coeffs().expect("rational field");
            (0..=d)
                .map(|i| c.get(i).cloned().unwrap_or_else(BigRational::zero))
                .collect()
        };
        let (n, dn) = (rat(&num), rat(&den));
        let lcm = n
            .iter()
            .chain(dn.iter())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut f0: Vec<BigInt> = n.iter().map(|c| (c * &lcm).to_integer()).collect();
        let mut f1: Vec<BigInt> = dn.iter().map(|c| (c * &lcm).to_integer()).collect();
        let content = f0.iter().chain(f1.iter()).fold(BigInt::zero(), |acc, c| acc.gcd(c));
        for c in f0.iter_mut().chain(f1.iter_mut()) {
            *c /= &content;
        }
        let resultant = homogeneous_resultant(&f0, &f1);
        if resultant.is_zero() {
            return Err(HeightError::Degenerate("Res(F0, F1) = 0".into()));
        }
        Ok(RationalMap {
            num,
            den,
            degree: d as u32,
            f0,
            f1,
            resultant,
        })
    }

    pub fn from_poly(p: &Poly) -> Result<RationalMap, HeightError> {
        RationalMap::new(p.clone(), Poly::constant(FieldElement::int(1)))
    }

    pub fn from_int_coeffs(num: &[i64], den: &[i64]) -> Result<RationalMap, HeightError> {
        RationalMap::new(Poly::from_ints(num), Poly::from_ints(den))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn lift(&self) -> (&[BigInt], &[BigInt]) {
        (&self.f0, &self.f1)
    }

    pub fn resultant(&self) -> &BigInt {
        &self.resultant
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The map as a polynomial when the denominator is constant.
    pub fn as_poly(&self) -> Option<Poly> {
        if !self.is_polynomial() {
            return None;
        }
        let inv = self.den.coeff(0).inv().ok()?;
        self.num.scale(&inv).ok()
    }

    /// F(a, b) for integer a, b.
    pub fn eval_lift(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        (eval_form(&self.f0, a, b), eval_form(&self.f1, a, b))
    }

    /// Exact image of a point of P¹(Q).
    pub fn apply(&self, x: &ProjPointQ) -> ProjPointQ {
        let (u, v) = self.eval_lift(x.a(), x.b());
        ProjPointQ::normalized(u, v)
    }

    /// Numerator and denominator coefficients as doubles, lowest degree first.
    pub fn complex_parts(&self) -> (Vec<f64>, Vec<f64>) {
        let conv = |p: &Poly| -> Vec<f64> {
            p.rational_coeffs()
                .unwrap()
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::NAN))
                .collect()
        };
        (conv(&self.num), conv(&self.den))
    }

    /// L⁻¹∘f∘L for a linear map L over Q.
    pub fn conjugate(&self, l: &LinearPoly) -> Result<RationalMap, HeightError> {
        let lp = l.to_poly();
        let wrap = |e: crate::algebra::AlgebraError| HeightError::Degenerate(e.to_string());
        let n = self.num.compose(&lp).map_err(wrap)?;
        let d = self.den.compose(&lp).map_err(wrap)?;
        let num = n.try_sub(&d.scale(l.b()).map_err(wrap)?).map_err(wrap)?;
        let den = d.scale(l.a()).map_err(wrap)?;
        RationalMap::new(num, den)
    }

    /// self ∘ inner, through the lifts: F(G₀, G₁) dehomogenized.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap, HeightError> {
        let wrap = |e: crate::algebra::AlgebraError| HeightError::Degenerate(e.to_string());
        let d = self.degree as usize;
        let q = |c: &BigInt| FieldElement::rational(BigRational::from_integer(c.clone()));
        let (n, m) = (&inner.num, &inner.den);
        let mut npow = vec![Poly::constant(FieldElement::int(1))];
        let mut mpow = vec![Poly::constant(FieldElement::int(1))];
        for i in 1..=d {
            npow.push(npow[i - 1].try_mul(n).map_err(wrap)?);
            mpow.push(mpow[i - 1].try_mul(m).map_err(wrap)?);
        }
        let form = |c: &[BigInt]| -> Result<Poly, HeightError> {
            let mut acc = Poly::zero(n.field());
            for i in 0..=d {
                if c[i].is_zero() {
                    continue;
                }
                let t = npow[i].try_mul(&mpow[d - i]).map_err(wrap)?.scale(&q(&c[i])).map_err(wrap)?;
                acc = acc.try_add(&t).map_err(wrap)?;
            }
            Ok(acc)
        };
        RationalMap::new(form(&self.f0)?, form(&self.f1)?)
    }

    /// The n-th iterate (n ≥ 1).
    pub fn iterate(&self, n: u32) -> Result<RationalMap, HeightError> {
        assert!(n >= 1, "iterate of a rational map needs n ≥ 1");
        if let Some(p) = self.as_poly() {
            let q = crate::algebra::iterate(&p, n).map_err(|e| HeightError::Degenerate(e.to_string()))?;
            return RationalMap::from_poly(&q);
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Uniform bound C_∞ ≥ sup |log‖F(z)‖ − d·log‖z‖| over C² \ {0} in the max
    /// norm, from ‖F_i‖₁ above and the cofactor identity
    /// G_{i0}F₀ + G_{i1}F₁ = Res·X_i^{2d−1} below.
    pub fn archimedean_constant(&self) -> f64 {
        let l1 = |v: &[BigInt]| v.iter().fold(BigInt::zero(), |acc, c| acc + c.abs());
        let upper = arith::ln_abs(&l1(&self.f0).max(l1(&self.f1)));
        let (g_x, g_y) = self.cofactors();
        let norm = |g: &[BigRational]| {
            g.iter()
                .fold(BigRational::zero(), |acc, c| acc + c.abs())
        };
        let nx = norm(&g_x);
        let ny = norm(&g_y);
        let big = if nx > ny { nx } else { ny };
        let lower = arith::ln_ratio(big.numer(), big.denom()) - arith::ln_abs(&self.resultant);
        upper.max(lower).max(0.0)
    }

    /// Cofactor vectors (coefficients of G_{i0} then G_{i1}, each indexed by
    /// the power of X) for the targets X^{2d−1} and Y^{2d−1}.
    pub fn cofactors(&self) -> (Vec<BigRational>, Vec<BigRational>) {
        let d = self.degree as usize;
        let n = 2 * d;
        let q = |x: &BigInt| BigRational::from_integer(x.clone());
        let mut a = vec![vec![BigRational::zero(); n]; n];
        for k in 0..n {
            for j in 0..d {
                if k >= j && k - j <= d {
                    a[k][j] = q(&self.f0[k - j]);
                    a[k][d + j] = q(&self.f1[k - j]);
                }
            }
        }
        let res = q(&self.resultant);
        let mut rhs = vec![vec![BigRational::zero(); 2]; n];
        rhs[n - 1][0] = res.clone();
        rhs[0][1] = res;
        let sol = matrix::solve(a, rhs).expect("nonzero resultant makes the system regular");
        let col = |c: usize| sol.iter().map(|r| r[c].clone()).collect();
        (col(0), col(1))
    }

    /// Primes dividing the resultant with their multiplicities.
    pub fn bad_primes(&self) -> Vec<(num_bigint::BigUint, u32)> {
        arith::factorize(&self.resultant)
    }
}

pub(crate) fn eval_form(c: &[BigInt], a: &BigInt, b: &BigInt) -> BigInt {
    let d = c.len() - 1;
    let mut apow = vec![BigInt::one(); d + 1];
    let mut bpow = vec![BigInt::one(); d + 1];
    for i in 1..=d {
        apow[i] = &apow[i - 1] * a;
        bpow[i] = &bpow[i - 1] * b;
    }
    (0..=d)
        .filter(|&i| !c[i].is_zero())
        .map(|i| &c[i] * &apow[i] * &bpow[d - i])
        .sum()
}

/// Resultant of two binary forms of degree d (coefficients indexed by the
/// power of X) as the Sylvester determinant.
pub fn homogeneous_resultant(f0: &[BigInt], f1: &[BigInt]) -> BigInt {
    let d = f0.len() - 1;
    let n = 2 * d;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for r in 0..d {
        for i in 0..=d {
            m[r][r + (d - i)] = f0[i].clone();
            m[d + r][r + (d - i)] = f1[i].clone();
        }
    }
    matrix::det_bareiss(m)
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_poly() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({}) / ({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_and_resultant() {
        let f = RationalMap::from_int_coeffs(&[-1, 0, 1], &[1]).unwrap();
        let (f0, f1) = f.lift();
        assert_eq!(f0, &[BigInt::from(-1), BigInt::zero(), BigInt::one()]);
        assert_eq!(f1, &[BigInt::one(), BigInt::zero(), BigInt::zero()]);
        assert_eq!(f.resultant().abs(), BigInt::one());
        let g = RationalMap::from_int_coeffs(&[1, 0, 1], &[0, 2]).unwrap();
        assert!(!g.resultant().is_zero());
        assert!(RationalMap::from_int_coeffs(&[-1, 0, 1], &[1, 1]).is_err());
        assert!(RationalMap::from_int_coeffs(&[0, 1], &[1]).is_err());
    }

    #[test]
    fn resultant_of_scaled_power_map() {
        // (p X^2, Y^2) has resultant ±p^2
        let f = RationalMap::from_int_coeffs(&[0, 0, 5], &[1]).unwrap();
        assert_eq!(f.resultant().abs(), BigInt::from(25));
    }

    #[test]
    fn cofactor_identity_holds() {
        let f = RationalMap::from_int_coeffs(&[1, 2, 3], &[0, 5, 1]).unwrap();
        let d = f.degree() as usize;
        let (f0, f1) = f.lift();
        let (gx, gy) = f.cofactors();
        for (g, target) in [(gx, 2 * d - 1), (gy, 0)] {
            for k in 0..2 * d {
                let mut s = BigRational::zero();
                for j in 0..d {
                    if k >= j && k - j <= d {
                        s += &g[j] * BigRational::from_integer(f0[k - j].clone());
                        s += &g[d + j] * BigRational::from_integer(f1[k - j].clone());
                    }
                }
                let want = if k == target {
                    BigRational::from_integer(f.resultant().clone())
                } else {
                    BigRational::zero()
                };
                assert_eq!(s, want);
            }
        }
    }

    #[test]
    fn power_map_has_zero_archimedean_constant() {
        let f = RationalMap::from_int_coeffs(&[0, 0, 1], &[1]).unwrap();
        assert_eq!(f.archimedean_constant(), 0.0);
    }

    #[test]
    fn composition_matches_pointwise() {
        let f = RationalMap::from_int_coeffs(&[1, 0, 1], &[0, 2]).unwrap();
        let g = RationalMap::from_int_coeffs(&[-1, 0, 1], &[1]).unwrap();
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg.degree(), 4);
        for x in [ProjPointQ::from_ints(3, 5).unwrap(), ProjPointQ::infinity(), ProjPointQ::integer(2)] {
            assert_eq!(fg.apply(&x), f.apply(&g.apply(&x)));
        }
        let f3 = f.iterate(3).unwrap();
        let x = ProjPointQ::from_ints(2, 7).unwrap();
        assert_eq!(f3.apply(&x), f.apply(&f.apply(&f.apply(&x))));
    }

    #[test]
    fn exact_application() {
        let f = RationalMap::from_int_coeffs(&[1, 0, 1], &[0, 2]).unwrap();
        let x = ProjPointQ::from_ints(1, 2).unwrap();
        // (1/4 + 1) / 1 = 5/4
        assert_eq!(f.apply(&x), ProjPointQ::from_ints(5, 4).unwrap());
        assert_eq!(f.apply(&ProjPointQ::infinity()), ProjPointQ::infinity());
    }
}
