use num_complex::Complex64;
use serde::Serialize;

/// A point of the Riemann sphere in one of two charts: z itself when
/// |z| ≤ 1, otherwise w = 1/z with `inverted` set. ∞ is w = 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
    pub inverted: bool,
}

impl ComplexPoint {
    pub fn from_z(z: Complex64) -> ComplexPoint {
        if z.norm() <= 1.0 {
            ComplexPoint { re: z.re, im: z.im, inverted: false }
        } else if z.re.is_infinite() || z.im.is_infinite() {
            ComplexPoint::infinity()
        } else {
            let w = z.inv();
            ComplexPoint { re: w.re, im: w.im, inverted: true }
        }
    }

    pub fn new(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::from_z(Complex64::new(re, im))
    }

    pub fn infinity() -> ComplexPoint {
        ComplexPoint { re: 0.0, im: 0.0, inverted: true }
    }

    pub fn is_infinity(&self) -> bool {
        self.inverted && self.re == 0.0 && self.im == 0.0
    }

    /// The chart coordinate (z or 1/z), always of modulus at most 1.
    pub fn chart(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// The affine coordinate, None at ∞.
    pub fn value(&self) -> Option<Complex64> {
        if !self.inverted {
            Some(self.chart())
        } else if self.is_infinity() {
            None
        } else {
            Some(self.chart().inv())
        }
    }

    /// The affine coordinate with ∞ mapped to (inf, inf).
    pub fn value_or_inf(&self) -> Complex64 {
        self.value().unwrap_or(Complex64::new(f64::INFINITY, f64::INFINITY))
    }

    /// Homogeneous coordinates [X : Y] with max(|X|, |Y|) = 1.
    pub fn homogeneous(&self) -> (Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        if self.inverted {
            (one, self.chart())
        } else {
            (self.chart(), one)
        }
    }

    pub fn from_homogeneous(x: Complex64, y: Complex64) -> ComplexPoint {
        if x.norm() <= y.norm() {
            ComplexPoint::from_z(x / y)
        } else {
            let w = y / x;
            ComplexPoint { re: w.re, im: w.im, inverted: true }
        }
    }

    /// Stereographic image on the unit sphere, ∞ at the north pole.
    pub fn sphere(&self) -> [f64; 3] {
        let c = self.chart();
        let r2 = c.norm_sqr();
        let s = 1.0 + r2;
        if self.inverted {
            [2.0 * c.re / s, -2.0 * c.im / s, (1.0 - r2) / s]
        } else {
            [2.0 * c.re / s, 2.0 * c.im / s, (r2 - 1.0) / s]
        }
    }

    /// Chordal distance, half the Euclidean distance on the sphere (at most 1).
    pub fn chordal(&self, other: &ComplexPoint) -> f64 {
        let (a, b) = (self.sphere(), other.sphere());
        0.5 * ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl std::fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.value() {
            None => write!(f, "inf"),
            Some(z) if z.im >= 0.0 => write!(f, "{}+{}i", z.re, z.im),
            Some(z) => write!(f, "{}-{}i", z.re, -z.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charts_agree_on_the_sphere() {
        let z = Complex64::new(3.0, -4.0);
        let p = ComplexPoint::from_z(z);
        assert!(p.inverted);
        let q = ComplexPoint { re: 3.0, im: -4.0, inverted: false };
        let (a, b) = (p.sphere(), q.sphere());
        for i in 0..3 {
            assert!((a[i] - b[i]).abs() < 1e-15);
        }
        assert!((p.value().unwrap() - z).norm() < 1e-14);
    }

    #[test]
    fn infinity_is_the_north_pole() {
        let s = ComplexPoint::infinity().sphere();
        assert_eq!(s, [0.0, 0.0, 1.0]);
        assert!((ComplexPoint::infinity().chordal(&ComplexPoint::new(0.0, 0.0)) - 1.0).abs() < 1e-15);
        assert_eq!(ComplexPoint::from_homogeneous(Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)), ComplexPoint::infinity());
    }
}
