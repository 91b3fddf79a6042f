use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bipoly::{self, BPoly};
use super::CurveError;
use crate::algebra::{Poly, LinearPoly};

/// A curve in P¹×P¹ given by its affine defining polynomial C(x, y), stored
/// squarefree with primitive integer coefficients and positive leading
/// coefficient in graded-lex order (total degree, then x-degree).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiCurve {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiCurve {
    /// Builds a curve from (x-exponent, y-exponent, coefficient) terms; the
    /// polynomial is replaced by its normalized squarefree part.
    pub fn new(terms: &[(u32, u32, BigRational)]) -> Result<BiCurve, CurveError> {
        let mut p: BPoly = Vec::new();
        for (i, j, c) in terms {
            let (i, j) = (*i as usize, *j as usize);
            if p.len() <= j {
                p.resize(j + 1, Vec::new());
            }
            if p[j].len() <= i {
                p[j].resize(i + 1, BigRational::zero());
            }
            p[j][i] += c;
        }
        bipoly::trim(&mut p);
        BiCurve::from_bpoly(&p)
    }

    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Result<BiCurve, CurveError> {
        let t: Vec<(u32, u32, BigRational)> = terms
            .iter()
            .map(|&(i, j, c)| (i, j, BigRational::from_integer(c.into())))
            .collect();
        BiCurve::new(&t)
    }

    pub(crate) fn from_bpoly(p: &BPoly) -> Result<BiCurve, CurveError> {
        if bipoly::is_zero(p) {
            return Err(CurveError::ZeroPolynomial);
        }
        if bipoly::deg_x(p) == 0 && bipoly::deg_y(p) == 0 {
            return Err(CurveError::ZeroPolynomial);
        }
        Ok(normalize(&bipoly::squarefree(p)))
    }

    pub(crate) fn to_bpoly(&self) -> BPoly {
        let dy = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let mut p: BPoly = vec![Vec::new(); dy + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut p[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, BigRational::zero());
            }
            row[i as usize] = BigRational::from_integer(c.clone());
        }
        bipoly::trim(&mut p);
        p
    }

    /// The diagonal x = y.
    pub fn diagonal() -> BiCurve {
        BiCurve::from_int_terms(&[(1, 0, 1), (0, 1, -1)]).unwrap()
    }

    /// The graph y = f(x) of a polynomial over Q.
    pub fn graph(f: &Poly) -> Result<BiCurve, CurveError> {
        BiCurve::difference(f, &Poly::x(f.field()))
    }

    /// p(x) − q(y) for polynomials over Q.
    pub fn difference(p: &Poly, q: &Poly) -> Result<BiCurve, CurveError> {
        let pc = p.rational_coeffs().ok_or(CurveError::NotRational)?;
        let qc = q.rational_coeffs().ok_or(CurveError::NotRational)?;
        let mut terms: Vec<(u32, u32, BigRational)> = Vec::new();
        for (i, c) in pc.iter().enumerate() {
            terms.push((i as u32, 0, c.clone()));
        }
        for (j, c) in qc.iter().enumerate() {
            terms.push((0, j as u32, -c.clone()));
        }
        BiCurve::new(&terms)
    }

    /// Terms in increasing (x-exponent, y-exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    /// (degree in x, degree in y)
    pub fn bidegree(&self) -> (u32, u32) {
        let dx = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let dy = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        (dx, dy)
    }

    /// Projects dominantly onto both factors: no component is a fiber.
    pub fn is_transversal(&self) -> bool {
        let (dx, dy) = self.bidegree();
        if dx == 0 || dy == 0 {
            return false;
        }
        let p = self.to_bpoly();
        bipoly::content_y(&p).len() <= 1 && bipoly::content_y(&bipoly::transpose(&p)).len() <= 1
    }

    /// A 64-bit hash of the normalized polynomial.
    pub fn fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| {
                BigRational::from_integer(c.clone())
                    * num_traits::pow(x.clone(), i as usize)
                    * num_traits::pow(y.clone(), j as usize)
            })
            .sum()
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c.to_f64().unwrap_or(f64::NAN) * x.powu(i) * y.powu(j))
            .sum()
    }

    /// C(x, ·) as a polynomial in y over Q (lowest degree first, formal length dy + 1).
    pub fn fiber_in_y(&self, x: &BigRational) -> Vec<BigRational> {
        let dy = self.bidegree().1 as usize;
        let mut out = vec![BigRational::zero(); dy + 1];
        for (&(i, j), c) in &self.terms {
            out[j as usize] += BigRational::from_integer(c.clone()) * num_traits::pow(x.clone(), i as usize);
        }
        out
    }

    /// C(·, y) as a polynomial in x over Q.
    pub fn fiber_in_x(&self, y: &BigRational) -> Vec<BigRational> {
        self.swapped().fiber_in_y(y)
    }

    /// Coefficients of C(x, ·) in y for complex x.
    pub fn fiber_in_y_complex(&self, x: Complex64) -> Vec<Complex64> {
        let dy = self.bidegree().1 as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); dy + 1];
        for (&(i, j), c) in &self.terms {
            out[j as usize] += c.to_f64().unwrap_or(f64::NAN) * x.powu(i);
        }
        out
    }

    /// The y with C(x, y) = 0 for complex x, with multiplicity.
    pub fn points_over(&self, x: Complex64) -> Vec<Complex64> {
        let mut f = self.fiber_in_y_complex(x);
        while f.len() > 1 && f.last().is_some_and(|c| c.norm() == 0.0) {
            f.pop();
        }
        if f.len() < 2 {
            return Vec::new();
        }
        crate::rootfind::polynomial_roots(&f, 1e-14).roots
    }

    /// Coefficients of C(·, y) in x for complex y.
    pub fn fiber_in_x_complex(&self, y: Complex64) -> Vec<Complex64> {
        let dx = self.bidegree().0 as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); dx + 1];
        for (&(i, j), c) in &self.terms {
            out[i as usize] += c.to_f64().unwrap_or(f64::NAN) * y.powu(j);
        }
        out
    }

    /// Top coefficient in y, as a polynomial in x: its roots are the x with
    /// (x, ∞) on the curve.
    pub fn leading_in_y(&self) -> Vec<BigRational> {
        let dy = self.bidegree().1;
        let dx = self.bidegree().0 as usize;
        let mut out = vec![BigRational::zero(); dx + 1];
        for (&(i, j), c) in &self.terms {
            if j == dy {
                out[i as usize] = BigRational::from_integer(c.clone());
            }
        }
        out
    }

    /// The curve with the coordinates exchanged.
    pub fn swapped(&self) -> BiCurve {
        let terms: Vec<(u32, u32, BigRational)> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| (j, i, BigRational::from_integer(c.clone())))
            .collect();
        BiCurve::new(&terms).expect("swap of a valid curve")
    }

    /// Applies a linear change L to the y coordinate: C(x, L(y)).
    pub fn substitute_y(&self, l: &LinearPoly) -> Result<BiCurve, CurveError> {
        let a = l.a().as_rational().ok_or(CurveError::NotRational)?;
        let b = l.b().as_rational().ok_or(CurveError::NotRational)?;
        let mut terms = Vec::new();
        for (&(i, j), c) in &self.terms {
            // (a y + b)^j
            for k in 0..=j {
                let binom = binomial(j, k);
                let coef = BigRational::from_integer(c * binom)
                    * num_traits::pow(a.clone(), k as usize)
                    * num_traits::pow(b.clone(), (j - k) as usize);
                terms.push((i, k, coef));
            }
        }
        BiCurve::new(&terms)
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for t in 0..k {
        r = r * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    r
}

fn normalize(p: &BPoly) -> BiCurve {
    let mut terms: BTreeMap<(u32, u32), BigRational> = BTreeMap::new();
    for (j, row) in p.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if !c.is_zero() {
                terms.insert((i as u32, j as u32), c.clone());
            }
        }
    }
    let lcm = terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: BTreeMap<(u32, u32), BigInt> = terms
        .into_iter()
        .map(|(k, c)| (k, (c * &lcm).to_integer()))
        .collect();
    let g = ints.values().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let lead_key = *ints
        .keys()
        .max_by_key(|&&(i, j)| (i + j, i))
        .expect("nonzero polynomial");
    let negate = ints[&lead_key].is_negative();
    for c in ints.values_mut() {
        *c /= &g;
        if negate {
            *c = -c.clone();
        }
    }
    BiCurve { terms: ints }
}

fn fmt_monomial(i: u32, j: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    match (i, j) {
        (0, 0) => String::new(),
        (_, 0) => part("x", i),
        (0, _) => part("y", j),
        _ => format!("{}*{}", part("x", i), part("y", j)),
    }
}

impl fmt::Display for BiCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|&&(i, j)| std::cmp::Reverse((i + j, i)));
        for (n, key) in keys.into_iter().enumerate() {
            let c = &self.terms[key];
            let mono = fmt_monomial(key.0, key.1);
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_display() {
        let c = BiCurve::from_int_terms(&[(0, 1, 2), (1, 0, -2)]).unwrap();
        assert_eq!(c.to_string(), "x - y");
        assert_eq!(c, BiCurve::diagonal());
        let sq = BiCurve::from_int_terms(&[(2, 0, 1), (1, 1, -2), (0, 2, 1)]).unwrap();
        assert_eq!(sq, BiCurve::diagonal());
        let g = BiCurve::graph(&Poly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(g.to_string(), "x^2 - y + 1");
        assert_eq!(g.bidegree(), (2, 1));
        assert!(g.is_transversal());
    }

    #[test]
    fn fibers() {
        let c = BiCurve::from_int_terms(&[(2, 0, 1), (0, 2, -1)]).unwrap();
        let f = c.fiber_in_y(&BigRational::from_integer(3.into()));
        assert_eq!(f[0], BigRational::from_integer(9.into()));
        assert_eq!(f[2], BigRational::from_integer((-1).into()));
        assert!(c.eval(&BigRational::one(), &-BigRational::one()).is_zero());
    }

    #[test]
    fn vertical_components_are_not_transversal() {
        let c = BiCurve::from_int_terms(&[(2, 1, 1), (1, 1, -1)]).unwrap();
        assert!(!c.is_transversal());
        assert!(BiCurve::from_int_terms(&[(0, 0, 5)]).is_err());
    }
}
