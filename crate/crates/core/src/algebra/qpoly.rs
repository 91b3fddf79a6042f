//! Dense univariate polynomials over Q as plain coefficient vectors.
//!
//! Used internally for extension-field arithmetic (reduction modulo the
//! defining polynomial, inverses via the extended Euclidean algorithm) and for
//! rational root search. Coefficients are stored lowest degree first and the
//! zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;

pub type QPoly = Vec<BigRational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x + y
        })
        .collect();
    trim(&mut out);
    out
}

pub fn neg(a: &[BigRational]) -> QPoly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    add(a, &neg(b))
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (na, da) = integer_form(a);
    let (nb, db) = integer_form(b);
    let den = da * db;
    let mut out: QPoly = arith::mul_int_poly(&na, &nb)
        .into_iter()
        .map(|n| BigRational::new(n, den.clone()))
        .collect();
    trim(&mut out);
    out
}

/// (numerators, d) with a = numerators / d for the lcm d of the denominators.
fn integer_form(a: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = a.iter().fold(BigInt::one(), |l, c| if c.denom().is_one() { l } else { l.lcm(c.denom()) });
    let nums = a
        .iter()
        .map(|c| if c.denom() == &den { c.numer().clone() } else { c.numer() * (&den / c.denom()) })
        .collect();
    (nums, den)
}

pub fn scale(a: &[BigRational], s: &BigRational) -> QPoly {
    let mut out: QPoly = a.iter().map(|c| c * s).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub fn div_rem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    div_rem(a, b).1
}

pub fn monic(a: &[BigRational]) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(a, &l.recip()),
    }
}

/// Monic gcd.
pub fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    match (x.is_empty(), y.is_empty()) {
        (true, _) => return monic(&y),
        (_, true) => return monic(&x),
        _ => {}
    }
    if x.len() == 1 || y.len() == 1 {
        return vec![BigRational::one()];
    }
    monic(&modular_gcd(&primitive(&x), &primitive(&y)))
}

/// Gcd of primitive integer polynomials by reduction modulo many primes,
/// Chinese remaindering and a final exact divisibility check.
fn modular_gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let (la, lb) = (a.last().unwrap().numer(), b.last().unwrap().numer());
    let lc = la.gcd(lb);
    let mut best = usize::MAX;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut last: QPoly = Vec::new();
    for p in arith::large_primes(256) {
        let m = BigInt::from(p);
        if (la % &m).is_zero() || (lb % &m).is_zero() {
            continue;
        }
        let g = gcd_mod(&reduce(a, p), &reduce(b, p), p);
        if g.len() == 1 {
            return vec![BigRational::one()];
        }
        if g.len() > best {
            continue;
        }
        let scale: u64 = lc.mod_floor(&m).try_into().unwrap_or(0);
        let g: Vec<u64> = g.iter().map(|&c| mul_mod(c, scale, p)).collect();
        if g.len() < best {
            best = g.len();
            modulus = BigInt::one();
            acc = vec![BigInt::zero(); best];
            last.clear();
        }
        // acc ≡ previous residues mod `modulus`, extend to mod modulus·p
        let inv = BigInt::from(pow_mod(modulus.mod_floor(&m).try_into().unwrap_or(0), p - 2, p));
        for (c, &r) in acc.iter_mut().zip(&g) {
            let t = ((BigInt::from(r) - &*c) * &inv).mod_floor(&m);
            *c += &modulus * t;
        }
        modulus *= &m;
        let half = &modulus >> 1;
        let cand: Vec<BigRational> = acc
            .iter()
            .map(|c| BigRational::from_integer(if *c > half { c - &modulus } else { c.clone() }))
            .collect();
        let cand = primitive(&cand);
        if cand == last && rem(a, &cand).is_empty() && rem(b, &cand).is_empty() {
            return cand;
        }
        last = cand;
    }
    euclid(a, b)
}

fn euclid(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = primitive(&rem(&x, &y));
        x = y;
        y = r;
    }
    x
}

fn reduce(v: &[BigRational], p: u64) -> Vec<u64> {
    let m = BigInt::from(p);
    v.iter().map(|c| c.numer().mod_floor(&m).try_into().unwrap_or(0)).collect()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

/// Monic gcd over F_p; inputs have nonzero leading coefficients.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        x = rem_mod(&x, &y, p);
        std::mem::swap(&mut x, &mut y);
    }
    let inv = pow_mod(*x.last().unwrap(), p - 2, p);
    x.iter().map(|&c| mul_mod(c, inv, p)).collect()
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let inv = pow_mod(*b.last().unwrap(), p - 2, p);
    while r.len() >= b.len() {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let q = mul_mod(lead, inv, p);
            let off = r.len() - b.len();
            for (i, &c) in b.iter().enumerate() {
                r[off + i] = (r[off + i] + p - mul_mod(q, c, p)) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Integer coefficients with content 1, same roots.
fn primitive(a: &[BigRational]) -> QPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let den = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let nums: Vec<BigInt> = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = nums.iter().fold(BigInt::zero(), |g, n| g.gcd(n));
    nums.into_iter().map(|n| BigRational::from_integer(n / &g)).collect()
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)` where `g = gcd(a, m)` is monic.
pub fn ext_gcd_mod(a: &[BigRational], m: &[BigRational]) -> (QPoly, QPoly) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let lead = r0.last().cloned().unwrap_or_else(BigRational::one).recip();
    (scale(&r0, &lead), scale(&s0, &lead))
}

pub fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &[BigRational]) -> QPoly {
    let mut out: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut out);
    out
}

/// Clears denominators and content, returning a primitive integer polynomial
/// with the same roots.
pub fn primitive_integer(p: &[BigRational]) -> Vec<BigInt> {
    let den = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * &den).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

/// All rational roots (without multiplicity) by the rational root theorem.
///
/// Returns `None` when the divisor enumeration would exceed `max_candidates`.
pub fn rational_roots(p: &[BigRational], max_candidates: usize) -> Option<Vec<BigRational>> {
    let mut q = p.to_vec();
    trim(&mut q);
    if q.is_empty() {
        return Some(Vec::new());
    }
    let mut roots = Vec::new();
    // strip the factor x^k
    let shift = q.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if shift > 0 {
        roots.push(BigRational::zero());
        q.drain(..shift);
    }
    if q.len() <= 1 {
        return Some(roots);
    }
    let ints = primitive_integer(&q);
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let num_divs = arith::divisors(&a0, max_candidates)?;
    let den_divs = arith::divisors(&an, max_candidates)?;
    if num_divs.len().saturating_mul(den_divs.len()) > max_candidates {
        return None;
    }
    let mut seen = std::collections::BTreeSet::new();
    for n in &num_divs {
        for d in &den_divs {
            if !n.gcd(d).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let cand = BigRational::new(n * BigInt::from(sign), d.clone());
                if seen.contains(&cand) {
                    continue;
                }
                if eval(&q, &cand).is_zero() {
                    seen.insert(cand.clone());
                    roots.push(cand);
                }
            }
        }
    }
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> QPoly {
        v.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }

    #[test]
    fn ext_gcd_gives_inverse() {
        let m = q(&[1, 0, 1]); // t^2 + 1
        let a = q(&[1, 1]); // 1 + t
        let (g, s) = ext_gcd_mod(&a, &m);
        assert_eq!(g, q(&[1]));
        assert_eq!(rem(&mul(&s, &a), &m), q(&[1]));
    }

    #[test]
    fn rational_roots_of_cubic() {
        // (2x - 1)(x + 3)(x) = 2x^3 + 5x^2 - 3x
        let p = q(&[0, -3, 5, 2]);
        let mut r = rational_roots(&p, 10_000).unwrap();
        r.sort();
        assert_eq!(
            r,
            vec![
                BigRational::from_integer((-3).into()),
                BigRational::zero(),
                BigRational::new(1.into(), 2.into())
            ]
        );
    }
}
