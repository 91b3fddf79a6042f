use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::map::{eval_form, RationalMap};
use super::point::ProjPointQ;
use super::HeightError;
use crate::arith;

/// A place of Q: the archimedean absolute value or a p-adic one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinite,
    Prime(BigUint),
}

impl Place {
    /// Builds a p-adic place after checking that p is prime.
    pub fn prime(p: u64) -> Result<Place, HeightError> {
        let p = BigUint::from(p);
        if !arith::is_prime(&p) {
            return Err(HeightError::NotPrime(p.to_string()));
        }
        Ok(Place::Prime(p))
    }

    /// Local degree N_v, always 1 over Q.
    pub fn multiplier(&self) -> u32 {
        1
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, Place::Infinite)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A height with a certified error radius and its per-place decomposition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightValue {
    pub value: f64,
    pub error_radius: f64,
    pub per_place: Vec<(Place, f64)>,
}

/// One local term of the product formula.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaceContribution {
    pub place: Place,
    /// ord_p(α) at a prime; the sign of α at infinity.
    pub order: i64,
    /// N_v·log|α|_v
    pub log_abs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductFormulaReport {
    pub contributions: Vec<PlaceContribution>,
    /// |α| = Π p^{ord_p(α)} holds in exact arithmetic.
    pub exact: bool,
    /// Floating sum of the local terms, for display.
    pub float_sum: f64,
}

/// Local terms of Σ_v N_v log|α|_v = 0 with the exact factorization check.
pub fn product_formula_check(alpha: &BigRational) -> Result<ProductFormulaReport, HeightError> {
    if alpha.is_zero() {
        return Err(HeightError::ZeroArgument);
    }
    let num = alpha.numer().abs();
    let den = alpha.denom().clone();
    let mut contributions = vec![PlaceContribution {
        place: Place::Infinite,
        order: if alpha.is_negative() { -1 } else { 1 },
        log_abs: arith::ln_ratio(&num, &den),
    }];
    let mut primes: Vec<(BigUint, i64)> = arith::factorize(&num)
        .into_iter()
        .map(|(p, e)| (p, e as i64))
        .chain(arith::factorize(&den).into_iter().map(|(p, e)| (p, -(e as i64))))
        .collect();
    primes.sort();
    let mut rebuilt = BigRational::one();
    for (p, ord) in primes {
        let pi = BigInt::from_biguint(Sign::Plus, p.clone());
        let power = BigRational::from_integer(num_traits::pow(pi.clone(), ord.unsigned_abs() as usize));
        rebuilt = if ord > 0 { rebuilt * power } else { rebuilt / power };
        contributions.push(PlaceContribution {
            log_abs: -(ord as f64) * arith::ln_abs(&pi),
            place: Place::Prime(p),
            order: ord,
        });
    }
    let exact = rebuilt == alpha.abs();
    let float_sum = contributions.iter().map(|c| c.log_abs).sum();
    Ok(ProductFormulaReport {
        contributions,
        exact,
        float_sum,
    })
}

/// Uniform bound C_v on |log‖F(z)‖_v − d·log‖z‖_v|.
///
/// At a prime p this is ord_p(Res)·log p, which vanishes at primes of good
/// reduction.
pub fn local_constant(f: &RationalMap, v: &Place) -> f64 {
    match v {
        Place::Infinite => f.archimedean_constant(),
        Place::Prime(p) => {
            let e = arith::ord_p(f.resultant(), p);
            e as f64 * arith::ln_abs(&BigInt::from_biguint(Sign::Plus, p.clone()))
        }
    }
}

/// The places where local canonical heights can be nonzero for a primitive
/// lift: infinity and the primes dividing the resultant.
pub fn relevant_places(f: &RationalMap) -> Vec<Place> {
    std::iter::once(Place::Infinite)
        .chain(f.bad_primes().into_iter().map(|(p, _)| Place::Prime(p)))
        .collect()
}

/// Number of steps n with C·d^{−n}/(d−1) < tol.
fn steps_for(c: f64, d: u32, tol: f64) -> usize {
    if c <= 0.0 {
        return 0;
    }
    let d = d as f64;
    let mut n = 0usize;
    let mut tail = c / (d - 1.0);
    while tail >= tol {
        tail /= d;
        n += 1;
    }
    n
}

/// λ_v(x) = lim d^{−n} log‖Fⁿ(x̃)‖_v for the primitive integer lift x̃, with
/// a certified error radius.
pub fn local_canonical_height_with_error(
    f: &RationalMap,
    x: &ProjPointQ,
    v: &Place,
    tol: f64,
) -> Result<(f64, f64), HeightError> {
    if !(tol > 0.0) {
        return Err(HeightError::InvalidTolerance(tol));
    }
    let c = local_constant(f, v);
    let n = steps_for(c, f.degree(), tol);
    let d = f.degree() as f64;
    let tail = if n == 0 && c == 0.0 {
        0.0
    } else {
        c * d.powi(-(n as i32)) / (d - 1.0)
    };
    match v {
        Place::Infinite => {
            let (value, rounding) = archimedean_sum(f, x, n);
            Ok((value, tail + rounding))
        }
        Place::Prime(p) => Ok((padic_sum(f, x, p, n), tail)),
    }
}

/// The local canonical height at v within `tol`.
pub fn local_canonical_height(
    f: &RationalMap,
    x: &ProjPointQ,
    v: &Place,
    tol: f64,
) -> Result<f64, HeightError> {
    local_canonical_height_with_error(f, x, v, tol).map(|(h, _)| h)
}

fn archimedean_sum(f: &RationalMap, x: &ProjPointQ, n: usize) -> (f64, f64) {
    let big = x.max_abs();
    let mut value = arith::ln_abs(&big);
    let ratio = |t: &BigInt| {
        BigRational::new(t.clone(), big.clone())
            .to_f64()
            .unwrap_or(0.0)
    };
    let (mut z0, mut z1) = (ratio(x.a()), ratio(x.b()));
    let (f0, f1) = f.lift();
    let c0: Vec<f64> = f0.iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
    let c1: Vec<f64> = f1.iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
    let d = f.degree() as f64;
    let mut weight = 1.0;
    for _ in 0..n {
        weight /= d;
        let w0 = eval_form_f64(&c0, z0, z1);
        let w1 = eval_form_f64(&c1, z0, z1);
        let m = w0.abs().max(w1.abs());
        value += weight * m.ln();
        z0 = w0 / m;
        z1 = w1 / m;
    }
    let scale = 1.0 + f.archimedean_constant();
    (value, 1e-14 * scale * (n as f64 + 1.0))
}

fn eval_form_f64(c: &[f64], a: f64, b: f64) -> f64 {
    // homogeneous Horner in the larger coordinate
    let d = c.len() - 1;
    if a.abs() >= b.abs() {
        let t = b / a;
        let mut acc = 0.0;
        for i in 0..=d {
            acc = acc * t + c[i];
        }
        acc * a.powi(d as i32)
    } else {
        let t = a / b;
        let mut acc = 0.0;
        for i in (0..=d).rev() {
            acc = acc * t + c[i];
        }
        acc * b.powi(d as i32)
    }
}

/// Σ_k d^{−(k+1)}·(−m_k log p) where p^{m_k} exactly divides F(z_k) for the
/// unit-normalized orbit lift z_k, computed modulo a precision large enough
/// that every m_k (≤ ord_p Res) is determined.
fn padic_sum(f: &RationalMap, x: &ProjPointQ, p: &BigUint, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let pi = BigInt::from_biguint(Sign::Plus, p.clone());
    let e = arith::ord_p(f.resultant(), p) as usize;
    let mut prec = e * n + e + 1;
    let (f0, f1) = f.lift();
    let mut modulus = num_traits::pow(pi.clone(), prec);
    let mut z0 = x.a().mod_floor(&modulus);
    let mut z1 = x.b().mod_floor(&modulus);
    let log_p = arith::ln_abs(&pi);
    let d = f.degree() as f64;
    let mut weight = 1.0;
    let mut value = 0.0;
    for _ in 0..n {
        weight /= d;
        let w0 = eval_form(f0, &z0, &z1).mod_floor(&modulus);
        let w1 = eval_form(f1, &z0, &z1).mod_floor(&modulus);
        let m = valuation_mod(&w0, &pi, prec).min(valuation_mod(&w1, &pi, prec));
        debug_assert!(m <= e);
        value -= weight * m as f64 * log_p;
        let shift = num_traits::pow(pi.clone(), m);
        prec -= m;
        modulus = num_traits::pow(pi.clone(), prec);
        z0 = (w0 / &shift).mod_floor(&modulus);
        z1 = (w1 / &shift).mod_floor(&modulus);
    }
    value
}

fn valuation_mod(w: &BigInt, p: &BigInt, prec: usize) -> usize {
    if w.is_zero() {
        return prec;
    }
    let mut k = 0;
    let mut t = w.clone();
    while (&t % p).is_zero() {
        t /= p;
        k += 1;
    }
    k
}

/// ĥ_f(x) = Σ_v N_v λ_v(x), each place computed to tol/#places.
pub fn canonical_height(f: &RationalMap, x: &ProjPointQ, tol: f64) -> Result<HeightValue, HeightError> {
    if !(tol > 0.0) {
        return Err(HeightError::InvalidTolerance(tol));
    }
    let places = relevant_places(f);
    let per = tol / (places.len() as f64 + 1.0);
    let terms: Vec<(f64, f64)> = places
        .par_iter()
        .map(|v| local_canonical_height_with_error(f, x, v, per))
        .collect::<Result<_, _>>()?;
    let value = places
        .iter()
        .zip(&terms)
        .map(|(v, (h, _))| v.multiplier() as f64 * h)
        .sum();
    let error_radius = terms.iter().map(|(_, e)| e).sum();
    Ok(HeightValue {
        value,
        error_radius,
        per_place: places.into_iter().zip(terms.into_iter().map(|(h, _)| h)).collect(),
    })
}

/// Σ_v C_v over the relevant places: |ĥ − h| ≤ this/(d−1).
pub fn total_constant(f: &RationalMap) -> f64 {
    relevant_places(f).iter().map(|v| local_constant(f, v)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: i64, b: i64) -> ProjPointQ {
        ProjPointQ::from_ints(a, b).unwrap()
    }

    #[test]
    fn product_formula_examples() {
        let r = product_formula_check(&BigRational::from_integer(6.into())).unwrap();
        assert!(r.exact);
        assert_eq!(r.contributions.len(), 3);
        assert!(r.float_sum.abs() < 1e-12);
        let r = product_formula_check(&BigRational::one()).unwrap();
        assert!(r.exact && r.contributions.iter().all(|c| c.log_abs == 0.0));
        let r = product_formula_check(&BigRational::new((-4).into(), 9.into())).unwrap();
        assert!(r.exact);
        let orders: Vec<i64> = r.contributions.iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![-1, 2, -2]);
        assert!(product_formula_check(&BigRational::zero()).is_err());
    }

    #[test]
    fn power_map_heights() {
        let f = RationalMap::from_int_coeffs(&[0, 0, 1], &[1]).unwrap();
        let h = local_canonical_height(&f, &pt(2, 1), &Place::Infinite, 1e-9).unwrap();
        assert!((h - 2f64.ln()).abs() < 1e-12);
        let hv = canonical_height(&f, &pt(2, 1), 1e-9).unwrap();
        assert!((hv.value - 2f64.ln()).abs() <= hv.error_radius + 1e-12);
    }

    #[test]
    fn good_reduction_place_is_zero() {
        let f = RationalMap::from_int_coeffs(&[-1, 0, 1], &[1]).unwrap();
        let v = Place::prime(7).unwrap();
        assert_eq!(local_canonical_height(&f, &pt(3, 1), &v, 1e-9).unwrap(), 0.0);
    }

    #[test]
    fn preperiodic_point_has_zero_height() {
        let f = RationalMap::from_int_coeffs(&[-1, 0, 1], &[1]).unwrap();
        let hv = canonical_height(&f, &pt(0, 1), 1e-9).unwrap();
        assert!(hv.value.abs() <= 1e-9);
        assert!(hv.error_radius <= 1e-9);
    }

    #[test]
    fn functional_equation_with_bad_prime() {
        // 5x^2 has bad reduction at 5
        let f = RationalMap::from_int_coeffs(&[1, 0, 5], &[1]).unwrap();
        let x = pt(1, 5);
        let a = canonical_height(&f, &x, 1e-10).unwrap();
        let b = canonical_height(&f, &f.apply(&x), 1e-10).unwrap();
        assert!((b.value - 2.0 * a.value).abs() <= 2.0 * a.error_radius + b.error_radius + 1e-12);
        assert!(a.per_place.iter().any(|(v, h)| !v.is_archimedean() && *h != 0.0));
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        let f = RationalMap::from_int_coeffs(&[0, 0, 1], &[1]).unwrap();
        assert!(canonical_height(&f, &pt(1, 1), 0.0).is_err());
    }
}
