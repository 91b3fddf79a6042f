use num_complex::Complex64;
use serde::Serialize;

use super::cmap::ComplexMap;
use super::point::ComplexPoint;
use super::NumericError;
use crate::heights::RationalMap;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// σ with f(σ(w)) = σ(λw), σ(0) = x₀, σ′(0) = 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoincareSeries {
    pub x0: ComplexPoint,
    pub lambda: Complex64,
    /// σ₁, …, σ_N.
    pub coefficients: Vec<Complex64>,
    /// Radius of convergence estimated from the decay of the tail.
    pub radius: f64,
    /// Largest relative coefficient residual of the functional equation through order N.
    pub residual: f64,
}

/// Truncated product of power series (index = power).
fn mul_trunc(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![ZERO; n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if *x == ZERO {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of p(x₀ + t).
fn taylor_shift(p: &[Complex64], x0: Complex64) -> Vec<Complex64> {
    let mut c = p.to_vec();
    let n = c.len();
    for k in 0..n {
        for i in (k..n - 1).rev() {
            let t = c[i + 1] * x0;
            c[i] += t;
        }
    }
    c
}

/// Taylor coefficients of f(x₀ + t) − x₀ through order n.
fn local_expansion(g: &ComplexMap, x0: Complex64, n: usize) -> Result<Vec<Complex64>, NumericError> {
    let (num, den) = g.parts();
    let a = taylor_shift(num, x0);
    let b = taylor_shift(den, x0);
    if b[0].norm() < 1e-300 {
        return Err(NumericError::NotFixed(format!("{x0} is a pole")));
    }
    // series division a/b
    let mut q = vec![ZERO; n + 1];
    for k in 0..=n {
        let mut s = a.get(k).copied().unwrap_or(ZERO);
        for j in 1..=k.min(b.len() - 1) {
            s -= b[j] * q[k - j];
        }
        q[k] = s / b[0];
    }
    q[0] -= x0;
    Ok(q)
}

/// Composition T(s(w)) through order n, with s(0) = 0.
fn compose_series(t: &[Complex64], s: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![ZERO; n + 1];
    let mut pow = vec![ZERO; n + 1];
    pow[0] = Complex64::new(1.0, 0.0);
    for tj in t.iter().take(n + 1).skip(1) {
        pow = mul_trunc(&pow, s, n);
        for k in 0..=n {
            out[k] += tj * pow[k];
        }
    }
    out
}

fn check_fixed(g: &ComplexMap, x0: Complex64) -> Result<Complex64, NumericError> {
    let fx = g.eval(x0);
    if !(fx - x0).norm().is_finite() || (fx - x0).norm() > 1e-8 * (1.0 + x0.norm()) {
        return Err(NumericError::NotFixed(format!("{x0} maps to {fx}")));
    }
    Ok(g.derivative(x0))
}

/// Solves f(σ(w)) = σ(λw) order by order: the coefficient of wᵏ gives
/// (λᵏ − λ)·σ_k = [wᵏ] Σ_{j≥2} a_j s(w)ʲ with s = σ − x₀.
pub fn poincare_series(f: &RationalMap, x0: Complex64, order: usize) -> Result<PoincareSeries, NumericError> {
    if order == 0 {
        return Err(NumericError::InvalidArgument("order must be positive".into()));
    }
    let g = ComplexMap::new(f);
    let lambda = check_fixed(&g, x0)?;
    if lambda.norm() <= 1.0 {
        return Err(NumericError::NonRepelling { modulus: lambda.norm() });
    }
    let t = local_expansion(&g, x0, order)?;
    let mut s = vec![ZERO; order + 1];
    s[1] = Complex64::new(1.0, 0.0);
    for k in 2..=order {
        let rhs = compose_series(&t, &s[..k], k)[k] - t[1] * s[k];
        s[k] = rhs / (lambda.powu(k as u32) - lambda);
    }
    let lhs = compose_series(&t, &s, order);
    let mut residual: f64 = 0.0;
    for k in 1..=order {
        let r = s[k] * lambda.powu(k as u32);
        residual = residual.max((lhs[k] - r).norm() / r.norm().max(1.0));
    }
    let tail: Vec<f64> = (order.div_ceil(2).max(2)..=order)
        .filter(|&k| s[k].norm() > 0.0)
        .map(|k| s[k].norm().powf(-1.0 / k as f64))
        .collect();
    let radius = tail.into_iter().fold(f64::INFINITY, f64::min);
    Ok(PoincareSeries {
        x0: ComplexPoint::from_z(x0),
        lambda,
        coefficients: s[1..].to_vec(),
        radius,
        residual,
    })
}

impl PoincareSeries {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        let x0 = self.x0.value().expect("finite center");
        let mut acc = ZERO;
        for c in self.coefficients.iter().rev() {
            acc = (acc + c) * w;
        }
        x0 + acc
    }

    /// max |f(σ(w)) − σ(λw)| over `samples` points of the circle |w| = r.
    pub fn evaluation_residual(&self, f: &RationalMap, r: f64, samples: usize) -> f64 {
        let g = ComplexMap::new(f);
        (0..samples)
            .map(|k| {
                let w = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / samples as f64);
                (g.eval(self.eval(w)) - self.eval(self.lambda * w)).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// A germ h(x₀ + t) = Σ h_k tᵏ; `polynomial` marks a finite expansion that is exact.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Germ {
    pub center: Complex64,
    pub coefficients: Vec<Complex64>,
    pub polynomial: bool,
}

impl Germ {
    pub fn identity(center: Complex64) -> Germ {
        Germ {
            center,
            coefficients: vec![center, Complex64::new(1.0, 0.0)],
            polynomial: true,
        }
    }

    /// The polynomial h re-expanded about `center`.
    pub fn from_polynomial(center: Complex64, coefficients: &[Complex64]) -> Germ {
        let mut c = taylor_shift(coefficients, center);
        if c.is_empty() {
            c.push(ZERO);
        }
        Germ { center, coefficients: c, polynomial: true }
    }

    pub fn series(center: Complex64, coefficients: Vec<Complex64>) -> Germ {
        Germ { center, coefficients, polynomial: false }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let t = z - self.center;
        self.coefficients.iter().rev().fold(ZERO, |acc, c| acc * t + c)
    }

    pub fn radius_estimate(&self) -> f64 {
        if self.polynomial {
            return f64::INFINITY;
        }
        let n = self.coefficients.len() - 1;
        (n.div_ceil(2).max(1)..=n)
            .filter(|&k| self.coefficients[k].norm() > 0.0)
            .map(|k| self.coefficients[k].norm().powf(-1.0 / k as f64))
            .fold(f64::INFINITY, f64::min)
    }
}

/// max over a polar grid in B(x₀, r) of |h(fⁿ(z)) − gᵐ(h(z))|. A small value
/// supports, but does not prove, the germ identity fⁿ = h⁻¹∘gᵐ∘h at x₀.
#[allow(clippy::too_many_arguments)]
pub fn germ_equality_residual(
    f: &RationalMap,
    g: &RationalMap,
    n: u32,
    m: u32,
    h: &Germ,
    radius: f64,
    grid: usize,
) -> Result<f64, NumericError> {
    if h.coefficients.len() < 2 || h.coefficients[1].norm() == 0.0 {
        return Err(NumericError::InvalidArgument("h must be invertible at x₀".into()));
    }
    if !(radius > 0.0) || grid == 0 {
        return Err(NumericError::InvalidArgument("radius and grid must be positive".into()));
    }
    let (cf, cg) = (ComplexMap::new(f), ComplexMap::new(g));
    let x0 = h.center;
    let lambda = check_fixed(&cf, x0)?;
    if lambda.norm() <= 1.0 {
        return Err(NumericError::NonRepelling { modulus: lambda.norm() });
    }
    let reach = radius * lambda.norm().powi(n as i32);
    let limit = h.radius_estimate();
    if reach >= 0.5 * limit {
        return Err(NumericError::RadiusTooLarge { radius: reach, limit });
    }
    let iterate = |map: &ComplexMap, z: Complex64, k: u32| (0..k).fold(z, |z, _| map.eval(z));
    let mut worst: f64 = 0.0;
    for i in 0..=grid {
        let rho = radius * i as f64 / grid as f64;
        let spokes = if i == 0 { 1 } else { grid };
        for j in 0..spokes {
            let z = x0 + Complex64::from_polar(rho, 2.0 * std::f64::consts::PI * j as f64 / grid as f64);
            let lhs = h.eval(iterate(&cf, z, n));
            let rhs = iterate(&cg, h.eval(z), m);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(num: &[i64]) -> RationalMap {
        RationalMap::from_int_coeffs(num, &[1]).unwrap()
    }

    #[test]
    fn square_map_gives_the_exponential() {
        let s = poincare_series(&map(&[0, 0, 1]), Complex64::new(1.0, 0.0), 10).unwrap();
        assert_eq!(s.coefficients[0], Complex64::new(1.0, 0.0));
        let mut fact = 1.0;
        for k in 1..=10 {
            fact *= k as f64;
            assert!((s.coefficients[k - 1] - 1.0 / fact).norm() < 1e-10);
        }
        assert!(s.residual < 1e-12);
    }

    #[test]
    fn golden_fixed_point_residuals() {
        let f = map(&[-1, 0, 1]);
        let x0 = Complex64::new((1.0 + 5f64.sqrt()) / 2.0, 0.0);
        let s = poincare_series(&f, x0, 12).unwrap();
        assert!(s.residual < 1e-10);
        let r: Vec<f64> = [4, 8, 12]
            .iter()
            .map(|&n| poincare_series(&f, x0, n).unwrap().evaluation_residual(&f, 0.25, 64))
            .collect();
        assert!(r[0] > r[1] && r[1] > r[2], "{r:?}");
    }

    #[test]
    fn attracting_points_are_rejected() {
        let err = poincare_series(&map(&[0, 0, 1]), Complex64::new(0.0, 0.0), 5).unwrap_err();
        assert!(matches!(err, NumericError::NonRepelling { .. }));
        let err = poincare_series(&map(&[0, 0, 1]), Complex64::new(2.0, 0.0), 5).unwrap_err();
        assert!(matches!(err, NumericError::NotFixed(_)));
    }

    #[test]
    fn germ_residuals() {
        let one = Complex64::new(1.0, 0.0);
        let r = germ_equality_residual(&map(&[0, 0, 1]), &map(&[0, 0, 0, 0, 1]), 2, 1, &Germ::identity(one), 0.1, 16).unwrap();
        assert!(r < 1e-12, "{r}");
        let f = map(&[-1, 0, 1]);
        let x0 = Complex64::new((1.0 + 5f64.sqrt()) / 2.0, 0.0);
        let r = germ_equality_residual(&f, &f, 1, 1, &Germ::identity(x0), 0.1, 16).unwrap();
        assert!(r < 1e-12);
        // x² + 1 has the repelling fixed point (1 + i√3)/2, which x² − 1 does not fix
        let p = map(&[1, 0, 1]);
        let y0 = Complex64::new(0.5, 3f64.sqrt() / 2.0);
        let r = germ_equality_residual(&p, &f, 1, 1, &Germ::identity(y0), 0.1, 16).unwrap();
        assert!(r > 0.1, "{r}");
    }
}
