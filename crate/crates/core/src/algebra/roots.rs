//! Solving `r^k = a` inside the ambient field.
//!
//! Over Q this is exact integer root extraction. In an extension Q[t]/(m) the
//! candidates are located numerically through the complex embeddings
//! t ↦ θⱼ, reconstructed as rationals and then confirmed by exact arithmetic,
//! so every returned root is certified; a root whose power-basis coefficients
//! have very large denominators may be missed, which callers report as
//! field-relative absence.

use nalgebra::{Complex, DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use super::field::{Field, FieldElement};
use super::AlgebraError;
use crate::arith;
use crate::rootfind;

/// Upper bound on embedding-choice combinations examined in an extension.
const MAX_COMBINATIONS: usize = 200_000;

/// All k-th roots of `a` in its field (k ≥ 1), without repetition.
pub fn nth_roots(a: &FieldElement, k: u32) -> Result<Vec<FieldElement>, AlgebraError> {
    assert!(k >= 1, "root index must be positive");
    if a.is_zero() {
        return Ok(vec![a.clone()]);
    }
    if k == 1 {
        return Ok(vec![a.clone()]);
    }
    match a.field() {
        Field::Rational => Ok(rational_roots(&a.as_rational().unwrap(), k)
            .into_iter()
            .map(FieldElement::Rational)
            .collect()),
        field @ Field::Extension(_) => extension_roots(&field, a, k),
    }
}

/// Roots of unity of order dividing k in the given field.
pub fn roots_of_unity(field: &Field, k: u32) -> Result<Vec<FieldElement>, AlgebraError> {
    nth_roots(&field.one(), k)
}

fn rational_roots(q: &BigRational, k: u32) -> Vec<BigRational> {
    let num = arith::exact_root(q.numer(), k);
    let den = arith::exact_root(q.denom(), k);
    match (num, den) {
        (Some(n), Some(d)) => {
            let r = BigRational::new(n, d);
            if k % 2 == 0 {
                let r = r.abs();
                vec![r.clone(), -r]
            } else {
                vec![r]
            }
        }
        _ => Vec::new(),
    }
}

/// Best rational approximation with bounded denominator, if close enough.
pub(crate) fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= tol * x.abs().max(1.0) {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = v - a;
        if frac.abs() < 1e-300 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 != 0 {
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= tol * x.abs().max(1.0) {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
    }
    None
}

fn extension_roots(
    field: &Field,
    a: &FieldElement,
    k: u32,
) -> Result<Vec<FieldElement>, AlgebraError> {
    let ext = match field {
        Field::Extension(e) => e.clone(),
        Field::Rational => unreachable!(),
    };
    let n = ext.degree();
    let modulus: Vec<Complex64> = ext
        .modulus()
        .iter()
        .map(|c| Complex64::new(num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN), 0.0))
        .collect();
    let thetas = rootfind::polynomial_roots(&modulus, 1e-15).roots;
    if thetas.len() != n {
        return Err(AlgebraError::RootSearchFailed);
    }
    // Embedding choices: real embeddings need real roots, conjugate pairs are tied.
    let mut slots: Vec<(usize, Option<usize>)> = Vec::new(); // (index, conjugate partner)
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        if thetas[i].im.abs() < 1e-9 * (1.0 + thetas[i].norm()) {
            slots.push((i, None));
        } else {
            let partner = (0..n)
                .filter(|&j| !used[j])
                .min_by(|&p, &q| {
                    let dp = (thetas[p] - thetas[i].conj()).norm();
                    let dq = (thetas[q] - thetas[i].conj()).norm();
                    dp.partial_cmp(&dq).unwrap()
                })
                .ok_or(AlgebraError::RootSearchFailed)?;
            used[partner] = true;
            slots.push((i, Some(partner)));
        }
    }
    let choices: Vec<Vec<Complex64>> = slots
        .iter()
        .map(|&(i, partner)| {
            let alpha = a.embed(thetas[i]);
            let mag = alpha.norm().powf(1.0 / k as f64);
            let arg = alpha.arg();
            (0..k)
                .map(|s| {
                    Complex64::from_polar(
                        mag,
                        (arg + 2.0 * std::f64::consts::PI * s as f64) / k as f64,
                    )
                })
                .filter(|b| partner.is_some() || b.im.abs() < 1e-7 * (1.0 + b.norm()))
                .map(|b| if partner.is_none() { Complex64::new(b.re, 0.0) } else { b })
                .collect()
        })
        .collect();
    let total = choices
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len().max(1)))
        .unwrap_or(usize::MAX);
    if choices.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    if total > MAX_COMBINATIONS {
        return Err(AlgebraError::RootSearchTooLarge);
    }
    // Vandermonde inverse: column i of V holds θⱼ^i.
    let v = DMatrix::<Complex<f64>>::from_fn(n, n, |j, i| {
        let t = thetas[j];
        Complex::new(t.re, t.im).powu(i as u32)
    });
    let vinv = v.try_inverse().ok_or(AlgebraError::RootSearchFailed)?;
    let mut found: Vec<FieldElement> = Vec::new();
    let mut idx = vec![0usize; slots.len()];
    loop {
        let mut beta = DVector::<Complex<f64>>::zeros(n);
        for (s, &(i, partner)) in slots.iter().enumerate() {
            let b = choices[s][idx[s]];
            beta[i] = Complex::new(b.re, b.im);
            if let Some(p) = partner {
                beta[p] = Complex::new(b.re, -b.im);
            }
        }
        let coeffs = &vinv * beta;
        let scale = coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
        let plausible = coeffs.iter().all(|c| c.im.abs() < 1e-6 * scale);
        if plausible {
            let rat: Option<Vec<BigRational>> = coeffs
                .iter()
                .map(|c| rationalize(c.re, 1_000_000_000, 1e-9))
                .collect();
            if let Some(rat) = rat {
                let cand = field.element(rat)?;
                if cand.pow(k as u64) == *a && !found.contains(&cand) {
                    found.push(cand);
                }
            }
        }
        // next combination
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(found);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// True when r^k = a for some r in the field, using [`nth_roots`].
pub fn has_nth_root(a: &FieldElement, k: u32) -> Result<bool, AlgebraError> {
    Ok(!nth_roots(a, k)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn rational_square_roots() {
        let a = FieldElement::Rational(BigRational::new(9.into(), 4.into()));
        let r = nth_roots(&a, 2).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.pow(2) == a));
        assert!(nth_roots(&FieldElement::int(2), 2).unwrap().is_empty());
        assert_eq!(nth_roots(&FieldElement::int(-8), 3).unwrap(), vec![FieldElement::int(-2)]);
    }

    #[test]
    fn rational_roots_of_unity() {
        let r2 = roots_of_unity(&Field::Rational, 2).unwrap();
        assert_eq!(r2.len(), 2);
        let r3 = roots_of_unity(&Field::Rational, 3).unwrap();
        assert_eq!(r3, vec![FieldElement::int(1)]);
    }

    #[test]
    fn gaussian_fourth_roots_of_unity() {
        let k = Field::extension_from_ints(&[1, 0, 1]).unwrap();
        let r = roots_of_unity(&k, 4).unwrap();
        assert_eq!(r.len(), 4);
        let i = k.generator().unwrap();
        assert!(r.contains(&i));
        assert!(r.contains(&-&i));
    }

    #[test]
    fn eisenstein_cube_roots_of_unity() {
        // t^2 + t + 1: t is a primitive cube root of unity
        let k = Field::extension_from_ints(&[1, 1, 1]).unwrap();
        let r = roots_of_unity(&k, 3).unwrap();
        assert_eq!(r.len(), 3);
        let r6 = roots_of_unity(&k, 6).unwrap();
        assert_eq!(r6.len(), 6);
    }

    #[test]
    fn square_root_in_quadratic_field() {
        // Q(sqrt 2): (1 + t)^2 = 3 + 2t
        let k = Field::extension_from_ints(&[-2, 0, 1]).unwrap();
        let t = k.generator().unwrap();
        let a = &k.from_int(3) + &(&k.from_int(2) * &t);
        let r = nth_roots(&a, 2).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&(&k.one() + &t)));
    }

    #[test]
    fn rationalize_simple() {
        assert_eq!(
            rationalize(0.333333333333333, 1000, 1e-9),
            Some(BigRational::new(1.into(), 3.into()))
        );
        assert_eq!(
            rationalize(-2.5, 1000, 1e-12),
            Some(BigRational::new((-5).into(), 2.into()))
        );
        assert!(rationalize(0.0, 10, 1e-12).is_some_and(|q| q.is_zero()));
    }
}
