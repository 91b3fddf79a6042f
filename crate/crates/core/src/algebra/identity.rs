//! Exact equality of composition chains without expanding them.
//!
//! Over Q, both sides are reduced modulo enough 62-bit primes that their
//! product exceeds twice a bound on the cleared difference, and compared at
//! more points than the degree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraError, Field, Poly};
use crate::arith::{self, Montgomery};

/// Chains at most this degree are expanded and compared directly.
const EXPAND_DEGREE: usize = 256;

fn chain_degree(chain: &[&Poly]) -> usize {
    chain.iter().map(|p| p.deg()).product()
}

fn expand(chain: &[&Poly]) -> Result<Poly, AlgebraError> {
    let (last, rest) = chain.split_last().expect("nonempty chain");
    rest.iter().rev().try_fold((*last).clone(), |acc, p| p.compose(&acc))
}

fn log2_abs(n: &BigInt) -> f64 {
    arith::ln_abs(n) / std::f64::consts::LN_2
}

/// log2 Σ 2^{e_i}
fn log2_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let terms: Vec<f64> = terms.collect();
    let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + terms.iter().map(|e| (e - top).exp2()).sum::<f64>().log2()
}

struct ChainBound {
    /// log2 of a bound on the sum of absolute coefficient values.
    norm: f64,
    /// A common denominator of every coefficient.
    den: BigInt,
}

fn chain_bound(chain: &[&Poly]) -> ChainBound {
    let mut norm = 0.0f64;
    let mut den = BigInt::one();
    for p in chain.iter().rev() {
        let coeffs = p.rational_coeffs().expect("rational chain");
        let lcm = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        norm = log2_sum(coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
            log2_abs(c.numer()) - log2_abs(c.denom()) + i as f64 * norm
        }));
        den = lcm * num_traits::pow(den, p.deg());
    }
    ChainBound { norm, den }
}

/// Coefficients mod p in Montgomery form; `None` if p divides a denominator.
fn reduce_poly(m: &Montgomery, coeffs: &[BigRational]) -> Option<Vec<u64>> {
    coeffs
        .iter()
        .map(|c| {
            let den = m.reduce(c.denom());
            if m.from_mont(den) == 0 {
                return None;
            }
            Some(m.mul(m.reduce(c.numer()), m.pow(den, m.p - 2)))
        })
        .collect()
}

fn horner(m: &Montgomery, coeffs: &[u64], x: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| m.add(m.mul(acc, x), c))
}

/// Values of a polynomial at 0, 1, 2, … by forward differences.
struct Consecutive {
    diffs: Vec<u64>,
    p: u64,
}

impl Consecutive {
    fn new(m: &Montgomery, coeffs: &[u64]) -> Consecutive {
        let k = coeffs.len().saturating_sub(1);
        let one = m.to_mont(1);
        let mut x = 0u64;
        let mut diffs: Vec<u64> = (0..=k)
            .map(|_| {
                let v = horner(m, coeffs, x);
                x = m.add(x, one);
                v
            })
            .collect();
        for level in 1..=k {
            for i in (level..=k).rev() {
                diffs[i] = m.add(diffs[i], m.p - diffs[i - 1]);
            }
        }
        Consecutive { diffs, p: m.p }
    }

    fn next(&mut self) -> u64 {
        let v = self.diffs[0];
        for i in 0..self.diffs.len() - 1 {
            let s = self.diffs[i] + self.diffs[i + 1];
            self.diffs[i] = if s >= self.p { s - self.p } else { s };
        }
        v
    }
}

/// Values of the chain at 0..=degree, innermost polynomial by differences.
fn chain_values<'a>(m: &'a Montgomery, chain: &'a [Vec<u64>], degree: usize) -> impl Iterator<Item = u64> + 'a {
    let (inner, outer) = chain.split_last().expect("nonempty chain");
    let mut first = Consecutive::new(m, inner);
    (0..=degree).map(move |_| outer.iter().rev().fold(first.next(), |v, c| horner(m, c, v)))
}

/// Whether p₁∘p₂∘…∘p_k = q₁∘…∘q_l, chains listed outermost first, decided
/// exactly.
pub fn compositions_agree(lhs: &[&Poly], rhs: &[&Poly]) -> Result<bool, AlgebraError> {
    if lhs.is_empty() || rhs.is_empty() {
        return Err(AlgebraError::InvalidArgument("empty composition chain".into()));
    }
    let field = lhs[0].field();
    if lhs.iter().chain(rhs).any(|p| p.field() != field) {
        return Err(AlgebraError::FieldMismatch);
    }
    if lhs.iter().chain(rhs).any(|p| p.is_zero()) {
        return Ok(expand(lhs)? == expand(rhs)?);
    }
    let degree = chain_degree(lhs);
    if degree != chain_degree(rhs) {
        return Ok(false);
    }
    if *field != Field::Rational || degree <= EXPAND_DEGREE {
        return Ok(expand(lhs)? == expand(rhs)?);
    }
    let (bl, br) = (chain_bound(lhs), chain_bound(rhs));
    // |D_l·D_r·(P − Q)| coefficients, with slack for rounding in the estimate
    let den = log2_abs(&bl.den.lcm(&br.den));
    let needed = (den + log2_sum([bl.norm, br.norm].into_iter()) + 1.0) * 1.001 + 16.0;
    let rational = |chain: &[&Poly]| -> Vec<Vec<BigRational>> {
        chain.iter().map(|p| p.rational_coeffs().expect("rational chain")).collect()
    };
    let (ql, qr) = (rational(lhs), rational(rhs));
    let mut covered = 0.0f64;
    let mut count = 64;
    let mut used = 0;
    while covered < needed {
        let primes = arith::large_primes(count);
        for &p in &primes[used..] {
            let m = Montgomery::new(p);
            let reduce = |chain: &[Vec<BigRational>]| chain.iter().map(|c| reduce_poly(&m, c)).collect::<Option<Vec<_>>>();
            let (Some(l), Some(r)) = (reduce(&ql), reduce(&qr)) else {
                continue;
            };
            if chain_values(&m, &l, degree).ne(chain_values(&m, &r, degree)) {
                return Ok(false);
            }
            covered += (p as f64).log2();
            if covered >= needed {
                break;
            }
        }
        used = count;
        count *= 2;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::iterate;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn agrees_with_expansion() {
        let f = Poly::from_rationals(vec![q(-3, 4), q(0, 1), q(1, 1)]);
        let a = Poly::from_rationals(vec![q(1, 3), q(2, 5), q(0, 1), q(-7, 2), q(1, 9)]);
        let f4 = iterate(&f, 4).unwrap();
        assert!(compositions_agree(&[&f, &f, &f, &f, &a], &[&f4, &a]).unwrap());
        let perturbed = Poly::from_rationals(vec![q(1, 3), q(2, 5), q(0, 1), q(-7, 2), q(1, 8)]);
        assert!(!compositions_agree(&[&f, &f, &f, &f, &a], &[&f4, &perturbed]).unwrap());
        let g = Poly::from_rationals(vec![q(-3, 4), q(1, 1_000_000_007), q(1, 1)]);
        assert!(!compositions_agree(&[&f, &f, &f, &f, &a], &[&g, &g, &g, &g, &a]).unwrap());
    }

    #[test]
    fn degree_mismatch_is_false() {
        let f = Poly::from_ints(&[0, 0, 1]);
        let g = Poly::from_ints(&[0, 0, 0, 1]);
        assert!(!compositions_agree(&[&f], &[&g]).unwrap());
        assert!(compositions_agree(&[&f, &g], &[&g, &f]).unwrap());
    }
}
