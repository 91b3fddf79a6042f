//! Small dense exact linear algebra: fraction-free determinants and rational
//! Gaussian elimination.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Solves `a · X = b` for square nonsingular `a` with several right-hand
/// sides (columns of `b`). Returns `None` when `a` is singular.
pub fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let r = b.first().map_or(0, Vec::len);
    for k in 0..n {
        let piv = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(piv, k);
        b.swap(piv, k);
        let inv = a[k][k].recip();
        for j in k..n {
            a[k][j] = &a[k][j] * &inv;
        }
        for j in 0..r {
            b[k][j] = &b[k][j] * &inv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone();
            for j in k..n {
                let v = &a[k][j] * &factor;
                a[i][j] -= v;
            }
            for j in 0..r {
                let v = &b[k][j] * &factor;
                b[i][j] -= v;
            }
        }
    }
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        assert_eq!(det_bareiss(im(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(det_bareiss(im(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]])), BigInt::from(-3));
        assert_eq!(det_bareiss(im(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn solve_two_by_two() {
        let q = |x: i64| BigRational::from_integer(x.into());
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let b = vec![vec![q(3)], vec![q(5)]];
        let x = solve(a, b).unwrap();
        assert_eq!(x[0][0], BigRational::new(4.into(), 5.into()));
        assert_eq!(x[1][0], BigRational::new(7.into(), 5.into()));
    }
}
