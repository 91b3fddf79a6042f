use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::cmap::ComplexMap;
use super::config;
use super::point::ComplexPoint;
use super::NumericError;
use crate::curves::BiCurve;
use crate::heights::RationalMap;
use crate::rootfind;

/// Weighted point cloud on P¹.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmpiricalMeasure {
    pub points: Vec<ComplexPoint>,
    pub weights: Vec<f64>,
    pub seed: u64,
}

/// Weighted point cloud on a curve in P¹×P¹.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveMeasure {
    pub points: Vec<(ComplexPoint, ComplexPoint)>,
    pub weights: Vec<f64>,
    pub seed: u64,
    /// Samples moved off a near-collision of fiber roots.
    pub perturbed: usize,
}

fn csv_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Data rows of a measure CSV: `#` comments and the header line are skipped.
fn csv_rows(text: &str, columns: usize) -> Result<Vec<Vec<f64>>, NumericError> {
    let mut rows = Vec::new();
    let mut header = true;
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if header {
            header = false;
            if line.chars().next().is_some_and(|c| c.is_alphabetic() && !line.starts_with("inf")) {
                continue;
            }
        }
        let row: Result<Vec<f64>, _> = line.split(',').map(|v| v.trim().parse::<f64>()).collect();
        match row {
            Ok(r) if r.len() == columns => rows.push(r),
            _ => {
                return Err(NumericError::InvalidArgument(format!(
                    "line {}: expected {columns} numeric columns",
                    k + 1
                )))
            }
        }
    }
    Ok(rows)
}

fn point_from(re: f64, im: f64) -> ComplexPoint {
    if re.is_infinite() || im.is_infinite() {
        ComplexPoint::infinity()
    } else {
        ComplexPoint::new(re, im)
    }
}

impl EmpiricalMeasure {
    /// Reads the format written by [`EmpiricalMeasure::to_csv`].
    pub fn from_csv(text: &str) -> Result<EmpiricalMeasure, NumericError> {
        let rows = csv_rows(text, 3)?;
        Ok(EmpiricalMeasure {
            points: rows.iter().map(|r| point_from(r[0], r[1])).collect(),
            weights: rows.iter().map(|r| r[2]).collect(),
            seed: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `re,im,weight` rows with 17 significant digits; ∞ is written as inf.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im,weight\n");
        for (p, w) in self.points.iter().zip(&self.weights) {
            let z = p.value_or_inf();
            let _ = writeln!(s, "{},{},{}", csv_number(z.re), csv_number(z.im), csv_number(*w));
        }
        s
    }

    /// The pushforward f₊μ.
    pub fn pushforward(&self, f: &RationalMap) -> EmpiricalMeasure {
        let g = ComplexMap::new(f);
        EmpiricalMeasure {
            points: self.points.iter().map(|p| g.apply(p)).collect(),
            weights: self.weights.clone(),
            seed: self.seed,
        }
    }
}

impl CurveMeasure {
    /// Reads the format written by [`CurveMeasure::to_csv`].
    pub fn from_csv(text: &str) -> Result<CurveMeasure, NumericError> {
        let rows = csv_rows(text, 5)?;
        Ok(CurveMeasure {
            points: rows.iter().map(|r| (point_from(r[0], r[1]), point_from(r[2], r[3]))).collect(),
            weights: rows.iter().map(|r| r[4]).collect(),
            seed: 0,
            perturbed: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("x_re,x_im,y_re,y_im,weight\n");
        for ((x, y), w) in self.points.iter().zip(&self.weights) {
            let (x, y) = (x.value_or_inf(), y.value_or_inf());
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                csv_number(x.re),
                csv_number(x.im),
                csv_number(y.re),
                csv_number(y.im),
                csv_number(*w)
            );
        }
        s
    }

    pub fn marginal(&self, coordinate: usize) -> EmpiricalMeasure {
        EmpiricalMeasure {
            points: self
                .points
                .iter()
                .map(|(x, y)| if coordinate == 1 { *x } else { *y })
                .collect(),
            weights: self.weights.clone(),
            seed: self.seed,
        }
    }
}

fn stream_sizes(n: usize) -> Vec<usize> {
    let s = config::SAMPLE_STREAMS.min(n.max(1));
    (0..s).map(|k| n / s + usize::from(k < n % s)).collect()
}

fn chain(g: &ComplexMap, rng: &mut ChaCha8Rng, burn_in: usize, count: usize) -> Vec<ComplexPoint> {
    let mut z = ComplexPoint::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let mut out = Vec::with_capacity(count);
    let d = g.degree();
    for step in 0..burn_in + count {
        let pre = g.preimages(&z, 1e-14);
        let mut next = None;
        for _ in 0..d.max(1) * 4 {
            let cand = pre[rng.gen_range(0..pre.len())];
            if cand.is_finite() {
                next = Some(cand);
                break;
            }
        }
        // a failed preimage solve restarts from a fresh random point
        z = next.unwrap_or_else(|| ComplexPoint::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        if step >= burn_in {
            out.push(z);
        }
    }
    out
}

/// Random backward orbits: each stream starts at a random point, takes
/// `burn_in` uniformly chosen preimages, then records `n` states in total
/// across streams. Streams are seeded from `seed` and merged in order.
pub fn sample_invariant_measure(
    f: &RationalMap,
    n: usize,
    burn_in: usize,
    seed: u64,
) -> Result<EmpiricalMeasure, NumericError> {
    if n == 0 {
        return Err(NumericError::EmptyMeasure);
    }
    let g = ComplexMap::new(f);
    let sizes = stream_sizes(n);
    let parts: Vec<Vec<ComplexPoint>> = sizes
        .par_iter()
        .enumerate()
        .map(|(k, &count)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            chain(&g, &mut rng, burn_in, count)
        })
        .collect();
    let points: Vec<ComplexPoint> = parts.into_iter().flatten().collect();
    let w = 1.0 / points.len() as f64;
    Ok(EmpiricalMeasure { weights: vec![w; points.len()], points, seed })
}

/// Roots in y of C(p, y) = 0 for p on the first factor, ∞ included.
fn fiber(c: &BiCurve, p: &ComplexPoint, tol: f64) -> Option<Vec<ComplexPoint>> {
    let (dx, dy) = c.bidegree();
    let (x, y) = p.homogeneous();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); dy as usize + 1];
    for (i, j, coef) in c.terms() {
        let c = num_traits::ToPrimitive::to_f64(coef).unwrap_or(f64::NAN);
        coeffs[j as usize] += c * x.powu(i) * y.powu(dx - i);
    }
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    while coeffs.len() > 1 && coeffs[coeffs.len() - 1].norm() <= 1e-14 * scale {
        coeffs.pop();
    }
    let finite = coeffs.len() - 1;
    let rep = rootfind::polynomial_roots(&coeffs, tol);
    if !rep.unconverged.is_empty() {
        return None;
    }
    let mut out: Vec<ComplexPoint> = rep.roots.into_iter().map(ComplexPoint::from_z).collect();
    for a in 0..out.len() {
        for b in a + 1..out.len() {
            if out[a].chordal(&out[b]) < 1e-9 {
                return None;
            }
        }
    }
    out.extend(std::iter::repeat(ComplexPoint::infinity()).take(dy as usize - finite));
    Some(out)
}

/// π_i^*μ_f / deg(π_i): samples of μ_f on coordinate i lifted to every point
/// of the fiber of C, each with weight 1/(N·deg π_i).
pub fn curve_pullback_measure(
    c: &BiCurve,
    f: &RationalMap,
    coordinate: usize,
    n: usize,
    seed: u64,
) -> Result<CurveMeasure, NumericError> {
    if coordinate != 1 && coordinate != 2 {
        return Err(NumericError::InvalidArgument(format!("coordinate must be 1 or 2, got {coordinate}")));
    }
    let curve = if coordinate == 1 { c.clone() } else { c.swapped() };
    let base = sample_invariant_measure(f, n, config::BURN_IN, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let mut points = Vec::new();
    let mut perturbed = 0;
    for p in &base.points {
        let mut q = *p;
        let mut ys = fiber(&curve, &q, 1e-14);
        let mut tries = 0;
        while ys.is_none() && tries < 20 {
            let z = q.value_or_inf();
            let eps = Complex64::new(rng.gen_range(-1e-9..1e-9), rng.gen_range(-1e-9..1e-9));
            q = ComplexPoint::from_z(if z.re.is_finite() { z + eps } else { eps.inv() });
            ys = fiber(&curve, &q, 1e-14);
            tries += 1;
        }
        if tries > 0 {
            perturbed += 1;
        }
        let ys = ys.ok_or_else(|| NumericError::InvalidArgument("the curve contains a fiber of the projection".into()))?;
        for y in ys {
            points.push(if coordinate == 1 { (q, y) } else { (y, q) });
        }
    }
    if points.is_empty() {
        return Err(NumericError::EmptyMeasure);
    }
    let w = 1.0 / points.len() as f64;
    Ok(CurveMeasure { weights: vec![w; points.len()], points, seed, perturbed })
}

/// Test functions on P¹: Re and Im of (s₁ + i s₂)^m s₃^k for 1 ≤ m + k ≤
/// [`config::MOMENT_DEGREE`] in stereographic coordinates, then indicators of
/// a latitude × longitude grid with bands of equal area.
fn features(p: &ComplexPoint) -> (Vec<f64>, usize) {
    let s = p.sphere();
    let h = Complex64::new(s[0], s[1]);
    let mut out = Vec::new();
    for total in 1..=config::MOMENT_DEGREE {
        for m in 0..=total {
            let v = h.powu(m as u32) * s[2].powi((total - m) as i32);
            out.push(v.re);
            if m > 0 {
                out.push(v.im);
            }
        }
    }
    let g = config::GRID;
    let band = (((s[2] + 1.0) / 2.0 * g as f64) as usize).min(g - 1);
    let angle = s[1].atan2(s[0]) + std::f64::consts::PI;
    let sector = ((angle / (2.0 * std::f64::consts::PI) * g as f64) as usize).min(g - 1);
    (out, band * g + sector)
}

struct Averages {
    moments: Vec<f64>,
    cells: Vec<f64>,
}

fn averages(points: &[ComplexPoint], weights: &[f64]) -> Averages {
    let g = config::GRID;
    let mut moments: Vec<f64> = Vec::new();
    let mut cells = vec![0.0; g * g];
    for (p, w) in points.iter().zip(weights) {
        let (m, cell) = features(p);
        if moments.is_empty() {
            moments = vec![0.0; m.len()];
        }
        for (acc, v) in moments.iter_mut().zip(m) {
            *acc += w * v;
        }
        cells[cell] += w;
    }
    Averages { moments, cells }
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Largest difference of averages over the fixed dictionary of moments and
/// grid cells.
pub fn measure_discrepancy(a: &EmpiricalMeasure, b: &EmpiricalMeasure) -> Result<f64, NumericError> {
    if a.is_empty() || b.is_empty() {
        return Err(NumericError::EmptyMeasure);
    }
    let (x, y) = (averages(&a.points, &a.weights), averages(&b.points, &b.weights));
    Ok(max_diff(&x.moments, &y.moments).max(max_diff(&x.cells, &y.cells)))
}

fn cross_moments(m: &CurveMeasure) -> Vec<f64> {
    let mut out = vec![0.0; 9];
    for ((x, y), w) in m.points.iter().zip(&m.weights) {
        let (s, t) = (x.sphere(), y.sphere());
        for i in 0..3 {
            for j in 0..3 {
                out[3 * i + j] += w * s[i] * t[j];
            }
        }
    }
    out
}

/// The dictionary applied to both marginals, plus products of the
/// stereographic coordinates across the two factors.
pub fn curve_measure_discrepancy(a: &CurveMeasure, b: &CurveMeasure) -> Result<f64, NumericError> {
    if a.is_empty() || b.is_empty() {
        return Err(NumericError::EmptyMeasure);
    }
    let m1 = measure_discrepancy(&a.marginal(1), &b.marginal(1))?;
    let m2 = measure_discrepancy(&a.marginal(2), &b.marginal(2))?;
    Ok(m1.max(m2).max(max_diff(&cross_moments(a), &cross_moments(b))))
}
