//! Dense bivariate polynomials over Q as polynomials in y whose coefficients
//! are polynomials in x: `p[j]` is the coefficient of yʲ.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::qpoly::{self, QPoly};

pub type BPoly = Vec<QPoly>;

pub fn trim(p: &mut BPoly) {
    for row in p.iter_mut() {
        qpoly::trim(row);
    }
    while p.last().is_some_and(|r| r.is_empty()) {
        p.pop();
    }
}

pub fn is_zero(p: &BPoly) -> bool {
    p.iter().all(|r| r.is_empty())
}

pub fn deg_y(p: &BPoly) -> usize {
    p.len().saturating_sub(1)
}

pub fn deg_x(p: &BPoly) -> usize {
    p.iter().map(|r| r.len()).max().unwrap_or(0).saturating_sub(1)
}

/// Swaps the roles of x and y.
pub fn transpose(p: &BPoly) -> BPoly {
    let dx = p.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut out: BPoly = vec![vec![BigRational::zero(); p.len()]; dx];
    for (j, row) in p.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            out[i][j] = c.clone();
        }
    }
    trim(&mut out);
    out
}

/// Monic gcd in Q[x] of the y-coefficients.
pub fn content_y(p: &BPoly) -> QPoly {
    let mut g: QPoly = Vec::new();
    for row in p {
        if row.is_empty() {
            continue;
        }
        g = if g.is_empty() { qpoly::monic(row) } else { qpoly::gcd(&g, row) };
        if g.len() == 1 {
            break;
        }
    }
    g
}

/// Divides every y-coefficient by the x-polynomial `c`, which must divide exactly.
pub fn div_x(p: &BPoly, c: &[BigRational]) -> BPoly {
    let mut out: BPoly = p
        .iter()
        .map(|row| {
            if row.is_empty() {
                return Vec::new();
            }
            let (q, r) = qpoly::div_rem(row, c);
            debug_assert!(r.is_empty(), "inexact division by content");
            q
        })
        .collect();
    trim(&mut out);
    out
}

pub fn primitive_y(p: &BPoly) -> BPoly {
    let c = content_y(p);
    if c.len() <= 1 {
        return p.clone();
    }
    div_x(p, &c)
}

pub fn derivative_y(p: &BPoly) -> BPoly {
    let mut out: BPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, row)| qpoly::scale(row, &BigRational::from_integer(j.into())))
        .collect();
    trim(&mut out);
    out
}

fn shift_mul(row: &[BigRational], b: &BPoly, k: usize) -> BPoly {
    let mut out: BPoly = vec![Vec::new(); k];
    out.extend(b.iter().map(|r| qpoly::mul(row, r)));
    out
}

fn sub(a: &BPoly, b: &BPoly) -> BPoly {
    let n = a.len().max(b.len());
    let empty: QPoly = Vec::new();
    let mut out: BPoly = (0..n)
        .map(|j| qpoly::sub(a.get(j).unwrap_or(&empty), b.get(j).unwrap_or(&empty)))
        .collect();
    trim(&mut out);
    out
}

fn scale_x(p: &BPoly, c: &[BigRational]) -> BPoly {
    let mut out: BPoly = p.iter().map(|r| qpoly::mul(r, c)).collect();
    trim(&mut out);
    out
}

/// Pseudo-remainder in y, made primitive.
fn prem_primitive(a: &BPoly, b: &BPoly) -> BPoly {
    let lb = b.last().expect("nonzero divisor").clone();
    let db = deg_y(b);
    let mut r = a.clone();
    while !is_zero(&r) && deg_y(&r) >= db {
        let lr = r.last().unwrap().clone();
        let k = deg_y(&r) - db;
        r = sub(&scale_x(&r, &lb), &shift_mul(&lr, b, k));
    }
    primitive_y(&r)
}

/// gcd in Q[x][y] of two polynomials primitive in y (primitive PRS).
pub fn gcd_primitive(a: &BPoly, b: &BPoly) -> BPoly {
    let (mut a, mut b) = if deg_y(a) >= deg_y(b) {
        (primitive_y(a), primitive_y(b))
    } else {
        (primitive_y(b), primitive_y(a))
    };
    while !is_zero(&b) {
        if deg_y(&b) == 0 {
            return vec![vec![BigRational::one()]];
        }
        let r = prem_primitive(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Exact quotient a / b in Q[x][y]; `None` if b does not divide a.
pub fn exact_div(a: &BPoly, b: &BPoly) -> Option<BPoly> {
    let db = deg_y(b);
    let lb = b.last()?.clone();
    let mut r = a.clone();
    trim(&mut r);
    if is_zero(&r) {
        return Some(Vec::new());
    }
    if deg_y(&r) < db {
        return None;
    }
    let mut q: BPoly = vec![Vec::new(); deg_y(&r) - db + 1];
    while !is_zero(&r) && deg_y(&r) >= db {
        let k = deg_y(&r) - db;
        let (t, rem) = qpoly::div_rem(r.last().unwrap(), &lb);
        if !rem.is_empty() {
            return None;
        }
        r = sub(&r, &shift_mul(&t, b, k));
        q[k] = t;
    }
    if !is_zero(&r) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// Some x = x0 keeping the y-degree gives a squarefree p(x0, y), so p has
/// no repeated factor of positive y-degree.
fn squarefree_specialization(p: &BPoly) -> bool {
    (0..8i64).map(|k| if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }).any(|x0| {
        let x0 = BigRational::from_integer(x0.into());
        let f: QPoly = p.iter().map(|row| qpoly::eval(row, &x0)).collect();
        if f.last().is_none_or(|c| c.is_zero()) {
            return false;
        }
        qpoly::gcd(&f, &qpoly::derivative(&f)).len() == 1
    })
}

/// Squarefree part: the content in x and the primitive part are handled
/// separately, each divided by its gcd with its derivative.
pub fn squarefree(p: &BPoly) -> BPoly {
    let c = content_y(p);
    let pp = primitive_y(p);
    let c_sf = if c.len() <= 1 {
        vec![BigRational::one()]
    } else {
        let g = qpoly::gcd(&c, &qpoly::derivative(&c));
        qpoly::div_rem(&c, &g).0
    };
    let pp_sf = if deg_y(&pp) == 0 || squarefree_specialization(&pp) {
        pp
    } else {
        let g = gcd_primitive(&pp, &derivative_y(&pp));
        if deg_y(&g) == 0 {
            pp
        } else {
            exact_div(&pp, &g).expect("gcd divides")
        }
    };
    scale_x(&pp_sf, &c_sf)
}
