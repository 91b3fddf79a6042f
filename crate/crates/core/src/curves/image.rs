//! Forward images of curves under split maps by elimination.
//!
//! For Φ = (N₁/D₁, N₂/D₂) the image of C(u, v) = 0 is cut out by
//! Res_v(Res_u(C, N₁ − X·D₁), N₂ − Y·D₂). Both resultants are Sylvester
//! determinants taken with formal degrees, so they commute with
//! specialization; the polynomial is recovered by evaluating at integer
//! points and interpolating. Factors depending on only one coordinate come
//! from points of C over ∞ and are dropped, then the squarefree part is taken.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::bipoly::{self, BPoly};
use super::curve::BiCurve;
use super::{CurveError, SplitEndo};
use crate::algebra::{matrix, qpoly};
use crate::heights::RationalMap;

/// Sylvester determinant of p (formal degree dp) and q (formal degree dq),
/// coefficients lowest degree first.
pub(crate) fn sylvester_det(p: &[BigInt], q: &[BigInt], dp: usize, dq: usize) -> BigInt {
    let n = dp + dq;
    if n == 0 {
        return BigInt::one();
    }
    let coeff = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_else(BigInt::zero);
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for r in 0..dq {
        for i in 0..=dp {
            m[r][r + (dp - i)] = coeff(p, i);
        }
    }
    for r in 0..dp {
        for i in 0..=dq {
            m[dq + r][r + (dq - i)] = coeff(q, i);
        }
    }
    matrix::det_bareiss(m)
}

/// 0, 1, −1, 2, −2, …
fn sample_points(n: usize) -> Vec<BigInt> {
    (0..n)
        .map(|k| {
            let h = ((k + 1) / 2) as i64;
            BigInt::from(if k % 2 == 1 { h } else { -h })
        })
        .collect()
}

/// Newton interpolation through (xs[k], ys[k]), returned in the monomial basis.
pub(crate) fn interpolate(xs: &[BigInt], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let xr: Vec<BigRational> = xs.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (&dd[k] - &dd[k - 1]) / (&xr[k] - &xr[k - level]);
        }
    }
    let mut poly: Vec<BigRational> = vec![dd[n - 1].clone()];
    for k in (0..n - 1).rev() {
        // poly = poly·(x − x_k) + dd[k]
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &xr[k];
        }
        next[0] += &dd[k];
        poly = next;
    }
    qpoly::trim(&mut poly);
    poly
}

fn to_integers(p: &[BigRational], len: usize) -> Result<Vec<BigInt>, CurveError> {
    let mut out = vec![BigInt::zero(); len];
    for (i, c) in p.iter().enumerate() {
        if !c.is_integer() || i >= len {
            return Err(CurveError::Internal("interpolated resultant is not integral".into()));
        }
        out[i] = c.to_integer();
    }
    Ok(out)
}

/// Affine numerator and denominator of a map as integer vectors of length d + 1.
fn integer_parts(f: &RationalMap) -> (Vec<BigInt>, Vec<BigInt>) {
    let (f0, f1) = f.lift();
    (f0.to_vec(), f1.to_vec())
}

/// The unreduced eliminant R(X, Y) as a dense bivariate polynomial.
pub(crate) fn eliminant(c: &BiCurve, f: &RationalMap, g: &RationalMap) -> Result<BPoly, CurveError> {
    let (a, b) = c.bidegree();
    let (a, b) = (a as usize, b as usize);
    let e1 = f.degree() as usize;
    let e2 = g.degree() as usize;
    let (n1, d1) = integer_parts(f);
    let (n2, d2) = integer_parts(g);
    let cm: Vec<Vec<BigInt>> = {
        let mut m = vec![vec![BigInt::zero(); b + 1]; a + 1];
        for (i, j, coef) in c.terms() {
            m[i as usize][j as usize] = coef.clone();
        }
        m
    };
    let r1_deg = e1 * b;
    let xs = sample_points(a * e2 + 1);
    let vs = sample_points(r1_deg + 1);
    let ys = sample_points(r1_deg + 1);
    // rows: for each X0, the values R(X0, Y0) over ys
    let grid: Vec<Vec<BigRational>> = xs
        .par_iter()
        .map(|x0| -> Result<Vec<BigRational>, CurveError> {
            let h1: Vec<BigInt> = (0..=e1).map(|i| &n1[i] - x0 * &d1[i]).collect();
            let vals: Vec<BigRational> = vs
                .iter()
                .map(|v0| {
                    let mut vpow = vec![BigInt::one(); b + 1];
                    for j in 1..=b {
                        vpow[j] = &vpow[j - 1] * v0;
                    }
                    let cu: Vec<BigInt> = (0..=a)
                        .map(|i| (0..=b).map(|j| &cm[i][j] * &vpow[j]).sum())
                        .collect();
                    BigRational::from_integer(sylvester_det(&cu, &h1, a, e1))
                })
                .collect();
            let r1 = to_integers(&interpolate(&vs, &vals), r1_deg + 1)?;
            Ok(ys
                .iter()
                .map(|y0| {
                    let h2: Vec<BigInt> = (0..=e2).map(|i| &n2[i] - y0 * &d2[i]).collect();
                    BigRational::from_integer(sylvester_det(&r1, &h2, r1_deg, e2))
                })
                .collect())
        })
        .collect::<Result<_, _>>()?;
    // interpolate in Y for each X0, then in X for each Y-power
    let by_x: Vec<Vec<BigRational>> = grid
        .iter()
        .map(|row| {
            let mut p = interpolate(&ys, row);
            p.resize(r1_deg + 1, BigRational::zero());
            p
        })
        .collect();
    let mut out: BPoly = (0..=r1_deg)
        .map(|j| {
            let col: Vec<BigRational> = by_x.iter().map(|p| p[j].clone()).collect();
            interpolate(&xs, &col)
        })
        .collect();
    bipoly::trim(&mut out);
    Ok(out)
}

/// Φ(C) for a transversal curve C.
pub fn image_curve(c: &BiCurve, phi: &SplitEndo) -> Result<BiCurve, CurveError> {
    if !c.is_transversal() {
        return Err(CurveError::NotTransversal(c.to_string()));
    }
    let (f, g) = phi.components()?;
    let r = eliminant(c, &f, &g)?;
    if bipoly::is_zero(&r) {
        return Err(CurveError::EliminationCollapse);
    }
    let r = bipoly::primitive_y(&r);
    let r = bipoly::transpose(&bipoly::primitive_y(&bipoly::transpose(&r)));
    if bipoly::deg_x(&r) == 0 || bipoly::deg_y(&r) == 0 {
        return Err(CurveError::EliminationCollapse);
    }
    BiCurve::from_bpoly(&r)
}

/// Φ(C) = C after normalization.
pub fn is_invariant(c: &BiCurve, phi: &SplitEndo) -> Result<bool, CurveError> {
    Ok(image_curve(c, phi)? == *c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    fn endo(f: &[i64], g: &[i64]) -> SplitEndo {
        SplitEndo::polynomial(&Poly::from_ints(f), &Poly::from_ints(g), 1, 1).unwrap()
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let xs = sample_points(4);
        let q = |x: i64| BigRational::from_integer(x.into());
        // 2x^3 - x + 5
        let ys: Vec<BigRational> = xs
            .iter()
            .map(|x| {
                let x = BigRational::from_integer(x.clone());
                q(2) * &x * &x * &x - &x + q(5)
            })
            .collect();
        assert_eq!(interpolate(&xs, &ys), vec![q(5), q(-1), q(0), q(2)]);
    }

    #[test]
    fn sylvester_of_linear_pair() {
        // Res(x - 2, x - 5) = ±3
        let p = [BigInt::from(-2), BigInt::one()];
        let q = [BigInt::from(-5), BigInt::one()];
        assert_eq!(sylvester_det(&p, &q, 1, 1).magnitude(), &num_bigint::BigUint::from(3u32));
    }

    #[test]
    fn diagonal_is_invariant_under_equal_maps() {
        let phi = endo(&[0, 0, 1], &[0, 0, 1]);
        assert_eq!(image_curve(&BiCurve::diagonal(), &phi).unwrap(), BiCurve::diagonal());
    }

    #[test]
    fn graph_is_invariant() {
        let f = Poly::from_ints(&[-1, 0, 1]);
        let c = BiCurve::graph(&f).unwrap();
        let phi = SplitEndo::polynomial(&f, &f, 1, 1).unwrap();
        assert!(is_invariant(&c, &phi).unwrap());
    }

    #[test]
    fn parabola_under_square_and_cube() {
        // (t, t^2) -> (t^2, t^6): Y = X^3
        let c = BiCurve::from_int_terms(&[(0, 1, 1), (2, 0, -1)]).unwrap();
        let phi = endo(&[0, 0, 1], &[0, 0, 0, 1]);
        let img = image_curve(&c, &phi).unwrap();
        assert_eq!(img, BiCurve::from_int_terms(&[(0, 1, 1), (3, 0, -1)]).unwrap());
    }

    #[test]
    fn diagonal_not_invariant_under_different_maps() {
        let phi = endo(&[0, 0, 1], &[-1, 0, 1]);
        let img = image_curve(&BiCurve::diagonal(), &phi).unwrap();
        assert_ne!(img, BiCurve::diagonal());
        // (2, 2) maps to (4, 3)
        let q = |x: i64| BigRational::from_integer(x.into());
        assert!(img.eval(&q(4), &q(3)).is_zero());
    }
}
