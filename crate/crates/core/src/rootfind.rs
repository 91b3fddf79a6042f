//! Complex polynomial root finding: companion-matrix eigenvalues for low
//! degree, Aberth–Ehrlich simultaneous iteration otherwise, Newton polish.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Above this degree companion eigenvalues are considered ill-conditioned.
pub const COMPANION_MAX_DEGREE: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub roots: Vec<Complex64>,
    /// Indices of roots whose final Newton correction did not meet tolerance.
    pub unconverged: Vec<usize>,
}

pub fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn trimmed(coeffs: &[Complex64]) -> &[Complex64] {
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1] == Complex64::new(0.0, 0.0) {
        n -= 1;
    }
    &coeffs[..n]
}

/// Roots of a polynomial with complex coefficients (lowest degree first).
pub fn polynomial_roots(coeffs: &[Complex64], tol: f64) -> RootReport {
    let c = trimmed(coeffs);
    if c.len() <= 1 {
        return RootReport {
            roots: Vec::new(),
            unconverged: Vec::new(),
        };
    }
    let n = c.len() - 1;
    if n == 1 {
        return RootReport {
            roots: vec![-c[0] / c[1]],
            unconverged: Vec::new(),
        };
    }
    if n == 2 {
        let (a, b, cc) = (c[2], c[1], c[0]);
        let disc = (b * b - 4.0 * a * cc).sqrt();
        // stable quadratic formula
        let q = if (b.conj() * disc).re >= 0.0 {
            -(b + disc) / 2.0
        } else {
            -(b - disc) / 2.0
        };
        let roots = if q.norm() == 0.0 {
            vec![Complex64::new(0.0, 0.0); 2]
        } else {
            vec![q / a, cc / q]
        };
        return polish_all(c, roots, tol);
    }
    let init = if n <= COMPANION_MAX_DEGREE {
        companion_eigenvalues(c)
    } else {
        None
    };
    match init {
        Some(roots) => polish_all(c, roots, tol),
        None => {
            let radius = cauchy_radius(c);
            aberth(|z| newton_ratio(c, z), n, radius, tol, 500)
        }
    }
}

fn newton_ratio(c: &[Complex64], z: Complex64) -> Complex64 {
    let (p, dp) = horner(c, z);
    p / dp
}

fn cauchy_radius(c: &[Complex64]) -> f64 {
    let lead = c[c.len() - 1].norm();
    1.0 + c[..c.len() - 1]
        .iter()
        .map(|x| x.norm() / lead)
        .fold(0.0, f64::max)
}

fn companion_eigenvalues(c: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = c.len() - 1;
    if c.iter().any(|x| x.im != 0.0) {
        // complex coefficients: fall back to Aberth from a circle
        return None;
    }
    let lead = c[n].re;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i].re / lead;
    }
    let eig = m.complex_eigenvalues();
    let roots: Vec<Complex64> = eig.iter().map(|e| Complex64::new(e.re, e.im)).collect();
    if roots.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Some(roots)
    } else {
        None
    }
}

fn polish_all(c: &[Complex64], roots: Vec<Complex64>, tol: f64) -> RootReport {
    let radius = cauchy_radius(c);
    let n = roots.len();
    let mut report = aberth_from(|z| newton_ratio(c, z), roots, tol, 100);
    if !report.unconverged.is_empty() {
        report = aberth(|z| newton_ratio(c, z), n, radius, tol, 500);
    }
    report
}

/// Aberth–Ehrlich iteration for a degree-`n` function given its Newton ratio
/// p/p′, starting on a circle of the given radius.
pub fn aberth<F>(ratio: F, n: usize, radius: f64, tol: f64, max_iter: usize) -> RootReport
where
    F: Fn(Complex64) -> Complex64,
{
    let init: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    aberth_from(ratio, init, tol, max_iter)
}

pub fn aberth_from<F>(ratio: F, mut z: Vec<Complex64>, tol: f64, max_iter: usize) -> RootReport
where
    F: Fn(Complex64) -> Complex64,
{
    let n = z.len();
    let mut done = vec![false; n];
    for _ in 0..max_iter {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let r = ratio(z[i]);
            let w = if r.re.is_finite() && r.im.is_finite() {
                let s: Complex64 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| {
                        let d = z[i] - z[j];
                        if d.norm() == 0.0 {
                            Complex64::new(0.0, 0.0)
                        } else {
                            1.0 / d
                        }
                    })
                    .sum();
                r / (1.0 - r * s)
            } else {
                // overflow far from the roots: pull inward
                z[i] * (1.0 / n as f64)
            };
            if w.re.is_finite() && w.im.is_finite() {
                z[i] -= w;
            }
            if w.norm() <= tol * (1.0 + z[i].norm()) {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    let unconverged = (0..n).filter(|&i| !done[i]).collect();
    RootReport {
        roots: z,
        unconverged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn cubic_roots() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let rep = polynomial_roots(&[c(6.0), c(-7.0), c(0.0), c(1.0)], 1e-14);
        assert!(rep.unconverged.is_empty());
        let mut re: Vec<f64> = rep.roots.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in re.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn high_degree_roots_of_unity() {
        let n = 100;
        let mut coeffs = vec![c(0.0); n + 1];
        coeffs[0] = c(-1.0);
        coeffs[n] = c(1.0);
        let rep = polynomial_roots(&coeffs, 1e-13);
        assert!(rep.unconverged.is_empty());
        for z in rep.roots {
            assert!((z.norm() - 1.0).abs() < 1e-10);
            assert!((z.powu(n as u32) - 1.0).norm() < 1e-9);
        }
    }
}
