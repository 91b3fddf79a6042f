use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use super::cmap::{scaled_f64, ComplexMap};
use super::point::ComplexPoint;
use super::NumericError;
use crate::heights::{ProjPointQ, RationalMap};
use crate::rootfind::{self, COMPANION_MAX_DEGREE};

/// Largest dⁿ accepted by [`periodic_points`].
pub const MAX_PERIODIC_DEGREE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicPointData {
    pub point: ComplexPoint,
    pub period: u32,
    pub multiplier: Complex64,
    pub repelling: bool,
    /// The root refinement met tolerance and fⁿ(point) returned to the point.
    pub converged: bool,
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact affine coefficients of the n-th lifted iterate (Xₙ(z, 1), Yₙ(z, 1)).
fn iterate_forms(f: &RationalMap, n: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (f0, f1) = f.lift();
    let d = f.degree() as usize;
    let mut x = vec![BigInt::zero(), BigInt::from(1)];
    let mut y = vec![BigInt::from(1), BigInt::zero()];
    for _ in 0..n {
        let mut xp = vec![vec![BigInt::from(1)]];
        let mut yp = vec![vec![BigInt::from(1)]];
        for i in 1..=d {
            xp.push(mul_int(&xp[i - 1], &x));
            yp.push(mul_int(&yp[i - 1], &y));
        }
        let len = (x.len() - 1) * d + 1;
        let combine = |c: &[BigInt]| {
            let mut acc = vec![BigInt::zero(); len];
            for i in 0..=d {
                if c[i].is_zero() {
                    continue;
                }
                for (k, t) in mul_int(&xp[i], &yp[d - i]).into_iter().enumerate() {
                    acc[k] += &c[i] * t;
                }
            }
            acc
        };
        let (nx, ny) = (combine(f0), combine(f1));
        x = nx;
        y = ny;
    }
    (x, y)
}

/// Newton ratio of Xₙ(z, 1) − z·Yₙ(z, 1), evaluated by iterating the lift
/// with forward derivatives and rescaling each step.
fn iterated_ratio(g: &ComplexMap, n: u32, z: Complex64) -> Complex64 {
    let mut x = z;
    let mut y = Complex64::new(1.0, 0.0);
    let mut dx = Complex64::new(1.0, 0.0);
    let mut dy = Complex64::new(0.0, 0.0);
    for _ in 0..n {
        let ((u, v), j) = g.eval_h(x, y);
        let du = j[0][0] * dx + j[0][1] * dy;
        let dv = j[1][0] * dx + j[1][1] * dy;
        let s = u.norm().max(v.norm());
        if s == 0.0 || !s.is_finite() {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        x = u / s;
        y = v / s;
        dx = du / s;
        dy = dv / s;
    }
    (x - z * y) / (dx - y - z * dy)
}

fn orbit(g: &ComplexMap, p: &ComplexPoint, n: u32) -> Vec<ComplexPoint> {
    let mut out = vec![*p];
    for _ in 0..n {
        let next = g.apply(out.last().unwrap());
        out.push(next);
    }
    out
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|k| n % k == 0).collect()
}

fn cluster_tolerance(tol: f64) -> f64 {
    tol.sqrt().clamp(1e-10, 1e-4)
}

fn describe(g: &ComplexMap, p: ComplexPoint, n: u32, tol: f64, converged: bool) -> Option<PeriodicPointData> {
    let ctol = cluster_tolerance(tol);
    let orb = orbit(g, &p, n);
    let exact = divisors(n).into_iter().find(|&k| orb[k as usize].chordal(&p) < ctol);
    if exact.is_some_and(|k| k < n) {
        return None;
    }
    let mut multiplier = Complex64::new(1.0, 0.0);
    for q in &orb[..n as usize] {
        multiplier *= g.chart_derivative(q).1;
    }
    Some(PeriodicPointData {
        point: p,
        period: n,
        multiplier,
        repelling: multiplier.norm() > 1.0 + tol,
        converged: converged && exact == Some(n),
    })
}

/// Points of exact period n, with multipliers by the chain rule along the
/// cycle. Roots of Xₙ − z·Yₙ come from companion eigenvalues when the degree
/// allows, otherwise from Aberth iteration on the iterated evaluation; both
/// are polished against the iterated evaluation.
pub fn periodic_points(f: &RationalMap, n: u32, tol: f64) -> Result<Vec<PeriodicPointData>, NumericError> {
    if n == 0 {
        return Err(NumericError::InvalidArgument("period must be positive".into()));
    }
    if !(tol > 0.0) {
        return Err(NumericError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let d = f.degree() as usize;
    let total = (d as f64).powi(n as i32);
    if total > MAX_PERIODIC_DEGREE as f64 {
        return Err(NumericError::DegreeTooLarge(total as usize));
    }
    let g = ComplexMap::new(f);
    let (xn, yn) = iterate_forms(f, n);
    let mut h = xn.clone();
    h.push(BigInt::zero());
    for (i, c) in yn.iter().enumerate() {
        h[i + 1] -= c;
    }
    while h.len() > 1 && h[h.len() - 1].is_zero() {
        h.pop();
    }
    let deg = h.len() - 1;
    let ratio = |z: Complex64| iterated_ratio(&g, n, z);
    let refs: Vec<&BigInt> = h.iter().collect();
    let coeffs: Vec<Complex64> = scaled_f64(&refs).into_iter().map(|c| Complex64::new(c, 0.0)).collect();
    let report = if deg == 0 {
        rootfind::RootReport { roots: Vec::new(), unconverged: Vec::new() }
    } else if deg <= COMPANION_MAX_DEGREE {
        let initial = rootfind::polynomial_roots(&coeffs, tol * 1e-3);
        rootfind::aberth_from(ratio, initial.roots, tol, 50)
    } else {
        let radius = g.escape_radius().unwrap_or(1.0);
        rootfind::aberth(ratio, deg, radius, tol, 2000)
    };
    let mut out: Vec<PeriodicPointData> = report
        .roots
        .iter()
        .enumerate()
        .filter_map(|(i, z)| {
            describe(&g, ComplexPoint::from_z(*z), n, tol, !report.unconverged.contains(&i))
        })
        .collect();
    if deg < (xn.len() - 1) + 1 {
        // ∞ is fixed by fⁿ: decide its exact period exactly
        let inf = ProjPointQ::infinity();
        let mut p = inf.clone();
        let mut period = 0;
        for k in 1..=n {
            p = f.apply(&p);
            if p == inf {
                period = k;
                break;
            }
        }
        if period == n {
            if let Some(data) = describe(&g, ComplexPoint::infinity(), n, tol, true) {
                out.push(data);
            }
        }
    }
    out.sort_by(|a, b| {
        let (za, zb) = (a.point.value_or_inf(), b.point.value_or_inf());
        za.re.total_cmp(&zb.re).then(za.im.total_cmp(&zb.im))
    });
    Ok(out)
}

/// Groups periodic points into cycles by following their orbits.
pub fn group_cycles(f: &RationalMap, points: &[PeriodicPointData], tol: f64) -> Vec<Vec<PeriodicPointData>> {
    let g = ComplexMap::new(f);
    let ctol = cluster_tolerance(tol);
    let mut assigned = vec![false; points.len()];
    let mut cycles = Vec::new();
    for i in 0..points.len() {
        if assigned[i] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut p = points[i].point;
        for _ in 0..points[i].period {
            if let Some(j) = (0..points.len()).find(|&j| !assigned[j] && points[j].point.chordal(&p) < ctol) {
                assigned[j] = true;
                cycle.push(points[j].clone());
            }
            p = g.apply(&p);
        }
        cycles.push(cycle);
    }
    cycles
}
