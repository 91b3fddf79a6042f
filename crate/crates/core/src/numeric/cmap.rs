use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::point::ComplexPoint;
use crate::heights::RationalMap;
use crate::rootfind;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Floating-point homogeneous lift of a rational map, coefficients scaled so
/// the largest has modulus 1. `f0[i]` multiplies XⁱY^{d−i}.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMap {
    f0: Vec<Complex64>,
    f1: Vec<Complex64>,
    degree: usize,
    polynomial: bool,
}

pub(crate) fn scaled_f64(v: &[&BigInt]) -> Vec<f64> {
    let max = v.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
    if max.is_zero() {
        return vec![0.0; v.len()];
    }
    v.iter()
        .map(|c| BigRational::new((*c).clone(), max.clone()).to_f64().unwrap_or(0.0))
        .collect()
}

impl ComplexMap {
    pub fn new(f: &RationalMap) -> ComplexMap {
        let (f0, f1) = f.lift();
        let all: Vec<&BigInt> = f0.iter().chain(f1.iter()).collect();
        let s = scaled_f64(&all);
        let d = f.degree() as usize;
        let c = |x: &f64| Complex64::new(*x, 0.0);
        ComplexMap {
            f0: s[..=d].iter().map(c).collect(),
            f1: s[d + 1..].iter().map(c).collect(),
            degree: d,
            polynomial: f.is_polynomial(),
        }
    }

    /// A polynomial with complex coefficients, lowest degree first.
    pub fn polynomial(coeffs: &[Complex64]) -> ComplexMap {
        let d = coeffs.len() - 1;
        let mut f1 = vec![ZERO; d + 1];
        f1[0] = ONE;
        ComplexMap { f0: coeffs.to_vec(), f1, degree: d, polynomial: true }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_polynomial(&self) -> bool {
        self.polynomial
    }

    /// Affine numerator and denominator coefficients.
    pub fn parts(&self) -> (&[Complex64], &[Complex64]) {
        (&self.f0, &self.f1)
    }

    fn form(c: &[Complex64], x: Complex64, y: Complex64) -> (Complex64, Complex64, Complex64) {
        let d = c.len() - 1;
        let mut xp = vec![ONE; d + 1];
        let mut yp = vec![ONE; d + 1];
        for i in 1..=d {
            xp[i] = xp[i - 1] * x;
            yp[i] = yp[i - 1] * y;
        }
        let mut v = ZERO;
        let mut dx = ZERO;
        let mut dy = ZERO;
        for (i, ci) in c.iter().enumerate() {
            if *ci == ZERO {
                continue;
            }
            v += ci * xp[i] * yp[d - i];
            if i > 0 {
                dx += ci * (i as f64) * xp[i - 1] * yp[d - i];
            }
            if i < d {
                dy += ci * ((d - i) as f64) * xp[i] * yp[d - i - 1];
            }
        }
        (v, dx, dy)
    }

    /// F(X, Y) together with the Jacobian [[∂F₀/∂X, ∂F₀/∂Y], [∂F₁/∂X, ∂F₁/∂Y]].
    pub fn eval_h(&self, x: Complex64, y: Complex64) -> ((Complex64, Complex64), [[Complex64; 2]; 2]) {
        let (u, ux, uy) = Self::form(&self.f0, x, y);
        let (v, vx, vy) = Self::form(&self.f1, x, y);
        ((u, v), [[ux, uy], [vx, vy]])
    }

    pub fn apply(&self, p: &ComplexPoint) -> ComplexPoint {
        let (x, y) = p.homogeneous();
        let ((u, v), _) = self.eval_h(x, y);
        ComplexPoint::from_homogeneous(u, v)
    }

    /// f(z) for finite z; may be infinite at poles.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let (n, _) = rootfind::horner(&self.f0, z);
        let (d, _) = rootfind::horner(&self.f1, z);
        n / d
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let (n, dn) = rootfind::horner(&self.f0, z);
        let (d, dd) = rootfind::horner(&self.f1, z);
        (dn * d - n * dd) / (d * d)
    }

    /// Derivative of f from the chart at p to the chart at f(p), with the image.
    pub fn chart_derivative(&self, p: &ComplexPoint) -> (ComplexPoint, Complex64) {
        let (x, y) = p.homogeneous();
        let ((u, v), j) = self.eval_h(x, y);
        // source chart: z = X with Y = 1, or w = Y with X = 1
        let (du, dv) = if p.inverted { (j[0][1], j[1][1]) } else { (j[0][0], j[1][0]) };
        let image = ComplexPoint::from_homogeneous(u, v);
        let deriv = if image.inverted {
            (dv * u - v * du) / (u * u)
        } else {
            (du * v - u * dv) / (v * v)
        };
        (image, deriv)
    }

    /// Spherical derivative |f′|·(1 + |z|²)/(1 + |f(z)|²) and the image.
    pub fn spherical_derivative(&self, p: &ComplexPoint) -> (ComplexPoint, f64) {
        let (q, d) = self.chart_derivative(p);
        let s = d.norm() * (1.0 + p.chart().norm_sqr()) / (1.0 + q.chart().norm_sqr());
        (q, s)
    }

    /// All d preimages of p counted with multiplicity, ∞ included.
    pub fn preimages(&self, p: &ComplexPoint, tol: f64) -> Vec<ComplexPoint> {
        let (u, v) = p.homogeneous();
        let mut q: Vec<Complex64> = (0..=self.degree).map(|i| v * self.f0[i] - u * self.f1[i]).collect();
        let scale = q.iter().map(|c| c.norm()).fold(0.0, f64::max);
        while q.len() > 1 && q[q.len() - 1].norm() <= 1e-14 * scale {
            q.pop();
        }
        let finite = q.len() - 1;
        let mut out: Vec<ComplexPoint> = rootfind::polynomial_roots(&q, tol)
            .roots
            .into_iter()
            .map(ComplexPoint::from_z)
            .collect();
        out.extend(std::iter::repeat(ComplexPoint::infinity()).take(self.degree - finite));
        out
    }

    /// A radius outside of which every orbit of a polynomial escapes to ∞.
    pub fn escape_radius(&self) -> Option<f64> {
        if !self.polynomial {
            return None;
        }
        let d = self.degree;
        let lead = self.f0[d].norm() / self.f1[0].norm();
        let s: f64 = self.f0[..d].iter().map(|c| c.norm()).sum::<f64>() / self.f0[d].norm();
        let r = (1.0 + s).max(2.0 * lead.powf(-1.0 / (d as f64 - 1.0)));
        Some(r.max(2.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(c: i64) -> ComplexMap {
        ComplexMap::new(&RationalMap::from_int_coeffs(&[c, 0, 1], &[1]).unwrap())
    }

    #[test]
    fn affine_and_projective_evaluation_agree() {
        let f = quad(-1);
        let z = Complex64::new(0.3, 0.7);
        let p = f.apply(&ComplexPoint::from_z(z));
        assert!((p.value().unwrap() - (z * z - 1.0)).norm() < 1e-14);
        assert!(f.apply(&ComplexPoint::infinity()).is_infinity());
        assert!((f.derivative(z) - 2.0 * z).norm() < 1e-14);
    }

    #[test]
    fn chart_derivative_at_infinity() {
        // 1/f(1/w) = w²/(1 − w²) has derivative 0 at w = 0
        let (q, d) = quad(-1).chart_derivative(&ComplexPoint::infinity());
        assert!(q.is_infinity());
        assert!(d.norm() < 1e-15);
        let (_, d) = quad(0).chart_derivative(&ComplexPoint::new(1.0, 0.0));
        assert!((d - 2.0).norm() < 1e-14);
    }

    #[test]
    fn preimages_of_points() {
        let f = quad(-1);
        let pre = f.preimages(&ComplexPoint::new(3.0, 0.0), 1e-14);
        assert_eq!(pre.len(), 2);
        for p in pre {
            assert!((p.value().unwrap().norm() - 2.0).abs() < 1e-12);
        }
        let pre = f.preimages(&ComplexPoint::infinity(), 1e-14);
        assert!(pre.iter().all(|p| p.is_infinity()));
    }
}
