//! Integer arithmetic helpers: primality, factorization, divisors, exact roots
//! and integer polynomial products.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin with the first twelve prime bases. Deterministic below 3.3e24.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for p in SMALL_PRIMES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let step = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let m = 128u64;
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = step(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = step(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn factor_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if &r * &r == n {
        factor_into(r.clone(), out);
        factor_into(r, out);
        return;
    }
    for c in 1u64.. {
        if let Some(d) = pollard_brent(&n, c) {
            let e = &n / &d;
            factor_into(d, out);
            factor_into(e, out);
            return;
        }
        assert!(c < 64, "factorization failed for {n}");
    }
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs; empty for 0 and ±1.
pub fn factorize(n: &BigInt) -> Vec<(BigUint, u32)> {
    let mut m = n.magnitude().clone();
    if m.is_zero() {
        return Vec::new();
    }
    let mut primes: Vec<BigUint> = Vec::new();
    let mut p = 2u64;
    while p < 10_000 {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            primes.push(bp.clone());
            m /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    factor_into(m, &mut primes);
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Positive divisors of `|n|` (n ≠ 0), or `None` if there would be more than `cap`.
pub fn divisors(n: &BigInt, cap: usize) -> Option<Vec<BigInt>> {
    if n.is_zero() {
        return Some(vec![BigInt::one()]);
    }
    let fac = factorize(n);
    let count = fac
        .iter()
        .try_fold(1usize, |acc, (_, e)| acc.checked_mul(*e as usize + 1))?;
    if count > cap {
        return None;
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in fac {
        let p = BigInt::from_biguint(Sign::Plus, p);
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

/// p-adic valuation of a nonzero integer.
pub fn ord_p(n: &BigInt, p: &BigUint) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from_biguint(Sign::Plus, p.clone());
    let mut m = n.clone();
    let mut k = 0;
    while (&m % &p).is_zero() {
        m /= &p;
        k += 1;
    }
    k
}

/// Exact integer k-th root of `n` if one exists (negative `n` only for odd k).
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if k == 0 {
        return None;
    }
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return exact_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Natural log of a possibly huge integer (|n| ≥ 1).
pub fn ln_abs(n: &BigInt) -> f64 {
    let m = n.magnitude();
    let bits = m.bits();
    if bits <= 1000 {
        return m.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (m >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of |a/b|.
pub fn ln_ratio(a: &BigInt, b: &BigInt) -> f64 {
    ln_abs(a) - ln_abs(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_agrees_with_u128() {
        let p = large_primes(3)[2];
        let m = Montgomery::new(p);
        let (a, b) = (p - 12_345, 987_654_321_987u64);
        let expected = (a as u128 * b as u128 % p as u128) as u64;
        assert_eq!(m.from_mont(m.mul(m.to_mont(a), m.to_mont(b))), expected);
        assert_eq!(m.from_mont(m.reduce(&BigInt::from(-5))), p - 5);
        let x = m.to_mont(7);
        assert_eq!(m.from_mont(m.mul(x, m.pow(x, p - 2))), 1);
        assert!(large_primes(20).iter().all(|&q| is_prime(&BigUint::from(q))));
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let a: Vec<BigInt> = (0..40i64).map(|i| BigInt::from((i * 7919 % 201) - 100).pow(3 + (i % 4) as u32)).collect();
        let b: Vec<BigInt> = (0..25i64).map(|i| BigInt::from(i * i - 300) << (i as usize)).collect();
        let mut naive = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                naive[i + j] += x * y;
            }
        }
        assert_eq!(mul_int_poly(&a, &b), naive);
    }

    #[test]
    fn factorizes_composites() {
        let n = BigInt::from(2u64 * 2 * 3 * 1_000_003 * 998_244_353);
        let f = factorize(&n);
        let got: Vec<(u64, u32)> = f.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect();
        assert_eq!(got, vec![(2, 2), (3, 1), (1_000_003, 1), (998_244_353, 1)]);
    }

    #[test]
    fn large_semiprime() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let f = factorize(&(&p * &q));
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn divisors_of_twelve() {
        let d = divisors(&BigInt::from(-12), 100).unwrap();
        let d: Vec<i64> = d.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn roots() {
        assert_eq!(exact_root(&BigInt::from(-27), 3), Some(BigInt::from(-3)));
        assert_eq!(exact_root(&BigInt::from(-4), 2), None);
        assert_eq!(exact_root(&BigInt::from(10), 2), None);
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| (a as u128 * b as u128 % n as u128) as u64;
    'bases: for &a in &SMALL_PRIMES {
        let mut x = 1u64;
        let (mut b, mut e) = (a, d);
        while e > 0 {
            if e & 1 == 1 {
                x = mul(x, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// The first `count` primes below 2^62, in decreasing order.
pub fn large_primes(count: usize) -> Vec<u64> {
    static CACHE: std::sync::Mutex<Vec<u64>> = std::sync::Mutex::new(Vec::new());
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    let mut n = cache.last().map_or((1u64 << 62) + 1, |&p| p);
    while cache.len() < count {
        n -= 2;
        if is_prime_u64(n) {
            cache.push(n);
        }
    }
    cache[..count].to_vec()
}

/// Arithmetic modulo an odd prime below 2^62 in Montgomery form.
#[derive(Clone, Copy, Debug)]
pub struct Montgomery {
    pub p: u64,
    neg_inv: u64,
    r2: u64,
}

impl Montgomery {
    pub fn new(p: u64) -> Montgomery {
        let mut inv = 1u64;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = (r as u128 * r as u128 % p as u128) as u64;
        Montgomery { p, neg_inv: inv.wrapping_neg(), r2 }
    }

    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut r = self.to_mont(1);
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// n mod p in Montgomery form.
    pub fn reduce(&self, n: &BigInt) -> u64 {
        let r = (n.magnitude() % self.p).to_u64().unwrap_or(0);
        let r = if n.is_negative() && r != 0 { self.p - r } else { r };
        self.to_mont(r)
    }
}

/// Product of integer polynomials (lowest degree first), by Kronecker
/// substitution once both factors are long.
pub fn mul_int_poly(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < 16 {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        return out;
    }
    let split = |v: &[BigInt]| -> (Vec<BigUint>, Vec<BigUint>) {
        v.iter()
            .map(|c| match c.sign() {
                Sign::Minus => (BigUint::zero(), c.magnitude().clone()),
                _ => (c.magnitude().clone(), BigUint::zero()),
            })
            .unzip()
    };
    let (ap, an) = split(a);
    let (bp, bn) = split(b);
    let bits = |v: &[BigUint]| v.iter().map(|c| c.bits()).max().unwrap_or(0);
    let len_bits = 64 - (a.len().min(b.len()) as u64).leading_zeros() as u64;
    let width = (bits(&ap).max(bits(&an)) + bits(&bp).max(bits(&bn)) + len_bits + 1).div_ceil(32) as usize;
    let n = a.len() + b.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    for (x, y, sign) in [(&ap, &bp, 1), (&an, &bn, 1), (&ap, &bn, -1), (&an, &bp, -1)] {
        if x.iter().all(Zero::is_zero) || y.iter().all(Zero::is_zero) {
            continue;
        }
        let product = kronecker_pack(x, width) * kronecker_pack(y, width);
        let digits = product.to_u32_digits();
        for (k, slot) in digits.chunks(width).enumerate().take(n) {
            let c = BigInt::from_biguint(Sign::Plus, BigUint::new(slot.to_vec()));
            if sign > 0 {
                out[k] += c;
            } else {
                out[k] -= c;
            }
        }
    }
    out
}

fn kronecker_pack(v: &[BigUint], width: usize) -> BigUint {
    let mut digits = vec![0u32; v.len() * width];
    for (k, c) in v.iter().enumerate() {
        for (i, d) in c.to_u32_digits().into_iter().enumerate() {
            digits[k * width + i] = d;
        }
    }
    BigUint::new(digits)
}
