//! The unicritical family x^d + c: the intertwined family f_δ, generation and
//! classification of solutions of fⁿ∘A = A∘B, the pairing criterion for two
//! unicritical maps, linear symmetries and iterate recognition.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{
    self, iterate, left_compositional_quotients, nth_roots, roots_of_unity, AlgebraError, Field,
    FieldElement, LinearPoly, Poly,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("x^{d} + {c} is exceptional (conjugate to a power map or a Chebyshev polynomial)")]
    ExceptionalInput { d: u32, c: String },
    #[error("{delta} does not divide {d}")]
    DeltaNotDivisor { d: u32, delta: u32 },
    #[error("the pair (A, B) does not satisfy f^n∘A = A∘B")]
    NotASolution,
    #[error("no (m, δ, L) reproduces A and B: {0}")]
    UnexpectedShape(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// x^d + c
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnicriticalMap {
    d: u32,
    c: FieldElement,
}

impl UnicriticalMap {
    pub fn new(d: u32, c: FieldElement) -> Result<UnicriticalMap, ClassifyError> {
        if d < 2 {
            return Err(ClassifyError::InvalidArgument(format!("degree {d} is below 2")));
        }
        Ok(UnicriticalMap { d, c })
    }

    pub fn from_int(d: u32, c: i64) -> Result<UnicriticalMap, ClassifyError> {
        UnicriticalMap::new(d, FieldElement::int(c))
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn c(&self) -> &FieldElement {
        &self.c
    }

    pub fn field(&self) -> Field {
        self.c.field()
    }

    /// c = 0, or d = 2 and c = −2.
    pub fn is_exceptional(&self) -> bool {
        self.c.is_zero() || (self.d == 2 && self.c == self.field().from_int(-2))
    }

    pub fn poly(&self) -> Poly {
        x_pow_plus_c(&self.field(), self.d as usize, &self.c)
    }

    fn exceptional_error(&self) -> ClassifyError {
        ClassifyError::ExceptionalInput {
            d: self.d,
            c: self.c.to_string(),
        }
    }
}

fn x_pow_plus_c(field: &Field, k: usize, c: &FieldElement) -> Poly {
    let mut coeffs = vec![field.zero(); k + 1];
    coeffs[k] = field.one();
    coeffs[0] = &coeffs[0] + c;
    Poly::new(field, coeffs).expect("coefficients share the field")
}

/// Parameters (m, δ, L) of A = fᵐ∘(x^δ + c)∘L, B = L⁻¹∘f_δⁿ∘L.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemiconjugacySolution {
    pub m: u32,
    pub delta: u32,
    pub l: LinearPoly,
}

impl SemiconjugacySolution {
    /// The representative with minimal m: (m, 1, L) with m ≥ 1 describes the
    /// same A as (m − 1, d, L + c).
    pub fn canonical(&self, u: &UnicriticalMap) -> SemiconjugacySolution {
        if self.delta == 1 && self.m >= 1 {
            let shifted = LinearPoly::new(self.l.a().clone(), self.l.b() + u.c())
                .expect("slope unchanged");
            SemiconjugacySolution {
                m: self.m - 1,
                delta: u.d,
                l: shifted,
            }
        } else {
            self.clone()
        }
    }
}

impl Serialize for SemiconjugacySolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SemiconjugacySolution", 3)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("delta", &self.delta)?;
        st.serialize_field("L", &self.l.to_string())?;
        st.end()
    }
}

/// f_δ = (x^δ + c)^{d/δ}
pub fn f_delta(u: &UnicriticalMap, delta: u32) -> Result<Poly, ClassifyError> {
    if delta == 0 || u.d % delta != 0 {
        return Err(ClassifyError::DeltaNotDivisor { d: u.d, delta });
    }
    Ok(x_pow_plus_c(&u.field(), delta as usize, &u.c).pow(u.d / delta))
}

/// (A, B) = (fᵐ∘(x^δ + c)∘L, L⁻¹∘f_δⁿ∘L).
pub fn generate_semiconjugacy(
    u: &UnicriticalMap,
    n: u32,
    m: u32,
    delta: u32,
    l: &LinearPoly,
) -> Result<(Poly, Poly), ClassifyError> {
    let fd = f_delta(u, delta)?;
    let field = u.field();
    let lp = l.to_poly();
    let inner = x_pow_plus_c(&field, delta as usize, &u.c).compose(&lp)?;
    let a = iterate(&u.poly(), m)?.compose(&inner)?;
    let b = algebra::conjugate(&iterate(&fd, n)?, l)?;
    Ok((a, b))
}

/// Rebuilds A and B from `sol` and checks fⁿ∘A = A∘B exactly.
pub fn intertwine_check(u: &UnicriticalMap, n: u32, sol: &SemiconjugacySolution) -> Result<bool, ClassifyError> {
    let (a, b) = generate_semiconjugacy(u, n, sol.m, sol.delta, &sol.l)?;
    solves(u, n, &a, &b)
}

/// fⁿ∘A = A∘B, decided exactly without expanding either side.
pub fn solves(u: &UnicriticalMap, n: u32, a: &Poly, b: &Poly) -> Result<bool, ClassifyError> {
    let f = u.poly();
    let mut lhs: Vec<&Poly> = vec![&f; n as usize];
    lhs.push(a);
    Ok(algebra::compositions_agree(&lhs, &[a, b])?)
}

/// Recovers the canonical (m, δ, L) of a solution of fⁿ∘A = A∘B.
///
/// f is peeled off A on the left as often as possible (over every branch of
/// the left quotient), the remainder is matched against (x^δ + c)∘L, and B
/// selects among the δ-th-root choices for L.
pub fn classify_semiconjugacy(
    u: &UnicriticalMap,
    n: u32,
    a: &Poly,
    b: &Poly,
) -> Result<SemiconjugacySolution, ClassifyError> {
    check_semiconjugacy_input(u, n, a, b)?;
    if !solves(u, n, a, b)? {
        return Err(ClassifyError::NotASolution);
    }
    classify_solution(u, n, a, b)
}

/// As [`classify_semiconjugacy`] for a pair already known to solve
/// fⁿ∘A = A∘B. The returned triple regenerates (A, B) exactly.
pub fn classify_solution(
    u: &UnicriticalMap,
    n: u32,
    a: &Poly,
    b: &Poly,
) -> Result<SemiconjugacySolution, ClassifyError> {
    check_semiconjugacy_input(u, n, a, b)?;
    let f = u.poly();
    let mut found: Vec<SemiconjugacySolution> = Vec::new();
    peel(u, n, a, b, &f, a, 0, &mut found)?;
    found
        .into_iter()
        .map(|s| s.canonical(u))
        .min_by_key(|s| s.m)
        .ok_or_else(|| {
            ClassifyError::UnexpectedShape(format!(
                "A = {a} does not factor as f^m∘(x^δ + c)∘L over the field"
            ))
        })
}

fn check_semiconjugacy_input(u: &UnicriticalMap, n: u32, a: &Poly, b: &Poly) -> Result<(), ClassifyError> {
    if u.is_exceptional() {
        return Err(u.exceptional_error());
    }
    if n == 0 {
        return Err(ClassifyError::InvalidArgument("n must be positive".into()));
    }
    if a.is_constant() || b.is_constant() {
        return Err(ClassifyError::InvalidArgument("A and B must be nonconstant".into()));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn peel(
    u: &UnicriticalMap,
    n: u32,
    a: &Poly,
    b: &Poly,
    f: &Poly,
    rest: &Poly,
    m: u32,
    found: &mut Vec<SemiconjugacySolution>,
) -> Result<(), ClassifyError> {
    let delta = rest.deg() as u32;
    if u.d % delta == 0 {
        for l in linear_roots(u, rest, delta)? {
            let sol = SemiconjugacySolution { m, delta, l };
            let (ga, gb) = generate_semiconjugacy(u, n, m, delta, &sol.l)?;
            if ga == *a && gb == *b {
                found.push(sol);
            }
        }
    }
    if rest.deg() > u.d as usize && rest.deg() % u.d as usize == 0 {
        for p in left_compositional_quotients(f, rest)? {
            peel(u, n, a, b, f, &p, m + 1, found)?;
        }
    }
    Ok(())
}

/// All linear L with (x^δ + c)∘L = rest.
fn linear_roots(u: &UnicriticalMap, rest: &Poly, delta: u32) -> Result<Vec<LinearPoly>, ClassifyError> {
    let field = u.field();
    let k = delta as usize;
    let mut out = Vec::new();
    for a in nth_roots(&rest.leading(), delta)? {
        // coefficient of x^{δ−1} in (a x + b)^δ is δ a^{δ−1} b
        let b = if k == 1 {
            &rest.coeff(0) - u.c()
        } else {
            let denom = &field.from_int(delta as i64) * &a.pow(delta as u64 - 1);
            &rest.coeff(k - 1) * &denom.inv()?
        };
        let l = LinearPoly::new(a, b)?;
        if x_pow_plus_c(&field, k, u.c()).compose(&l.to_poly())? == *rest {
            out.push(l);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairingVerdict {
    Paired(FieldElement),
    NotPaired,
    ExceptionalInput,
}

impl PairingVerdict {
    pub fn is_paired(&self) -> bool {
        matches!(self, PairingVerdict::Paired(_))
    }
}

impl Serialize for PairingVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PairingVerdict", 2)?;
        match self {
            PairingVerdict::Paired(z) => {
                st.serialize_field("verdict", "paired")?;
                st.serialize_field("zeta", &Some(z.to_string()))?;
            }
            PairingVerdict::NotPaired => {
                st.serialize_field("verdict", "not_paired")?;
                st.serialize_field("zeta", &None::<String>)?;
            }
            PairingVerdict::ExceptionalInput => {
                st.serialize_field("verdict", "exceptional_input")?;
                st.serialize_field("zeta", &None::<String>)?;
            }
        }
        st.end()
    }
}

/// Paired(ζ) exactly when d₁ = d₂ and ζ = c₂/c₁ satisfies ζ^{d₁−1} = 1.
pub fn classify_unicritical_pair(
    u1: &UnicriticalMap,
    u2: &UnicriticalMap,
) -> Result<PairingVerdict, ClassifyError> {
    if u1.field() != u2.field() {
        return Err(AlgebraError::FieldMismatch.into());
    }
    if u1.is_exceptional() || u2.is_exceptional() {
        return Ok(PairingVerdict::ExceptionalInput);
    }
    if u1.d != u2.d {
        return Ok(PairingVerdict::NotPaired);
    }
    let zeta = u2.c.try_div(&u1.c)?;
    if zeta.pow(u1.d as u64 - 1).is_one() {
        Ok(PairingVerdict::Paired(zeta))
    } else {
        Ok(PairingVerdict::NotPaired)
    }
}

/// All linear L over the field with g∘L = g.
pub fn symmetries_of(g: &Poly) -> Result<Vec<LinearPoly>, ClassifyError> {
    let n = g.deg();
    if n < 2 {
        return Err(ClassifyError::InvalidArgument("degree must be at least 2".into()));
    }
    let field = g.field().clone();
    let mut out = Vec::new();
    for a in roots_of_unity(&field, n as u32)? {
        // x^{n−1}: lc·n·a^{n−1}·b + g_{n−1}·a^{n−1} = g_{n−1}
        let an1 = a.pow(n as u64 - 1);
        let num = &g.coeff(n - 1) - &(&g.coeff(n - 1) * &an1);
        let den = &(&g.leading() * &field.from_int(n as i64)) * &an1;
        let b = &num * &den.inv()?;
        let l = LinearPoly::new(a, b)?;
        if g.compose(&l.to_poly())? == *g {
            out.push(l);
        }
    }
    Ok(out)
}

/// The m ≤ bound with G = gᵐ, if any.
pub fn is_iterate_of(big_g: &Poly, g: &Poly, bound: u32) -> Result<Option<u32>, ClassifyError> {
    if g.deg() < 2 {
        return Err(ClassifyError::InvalidArgument("g must have degree at least 2".into()));
    }
    if big_g.is_zero() {
        return Ok(None);
    }
    let (dg, e) = (big_g.deg(), g.deg());
    let mut m = 0u32;
    let mut power = 1usize;
    while power < dg && m < bound {
        power = power.saturating_mul(e);
        m += 1;
    }
    if power != dg {
        return Ok(None);
    }
    Ok(if iterate(g, m)? == *big_g { Some(m) } else { None })
}

/// Degree, gap below the leading term, and gcd exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapData {
    pub degree: u32,
    /// D minus the next exponent with a nonzero coefficient; absent for monomials.
    pub gap: Option<u32>,
    /// gcd of D − i over the nonzero coefficients below the top, D for monomials.
    pub eta: u32,
}

pub fn gap_data(p: &Poly) -> Result<GapData, ClassifyError> {
    if p.is_constant() {
        return Err(ClassifyError::InvalidArgument("constant polynomial".into()));
    }
    let d = p.deg();
    let lower: Vec<usize> = (0..d).filter(|&i| !p.coeff(i).is_zero()).collect();
    let gap = lower.last().map(|&i| (d - i) as u32);
    let eta = lower
        .iter()
        .fold(0usize, |acc, &i| num_integer::gcd(acc, d - i));
    Ok(GapData {
        degree: d as u32,
        gap,
        eta: if eta == 0 { d as u32 } else { eta as u32 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(d: u32, c: i64) -> UnicriticalMap {
        UnicriticalMap::from_int(d, c).unwrap()
    }

    fn lin(a: i64, b: i64) -> LinearPoly {
        LinearPoly::from_ints(a, b).unwrap()
    }

    #[test]
    fn f_delta_examples() {
        assert_eq!(f_delta(&u(4, 3), 2).unwrap(), Poly::from_ints(&[3, 0, 1]).pow(2));
        assert_eq!(f_delta(&u(3, 5), 3).unwrap(), u(3, 5).poly());
        assert_eq!(f_delta(&u(2, 1), 1).unwrap(), Poly::from_ints(&[1, 2, 1]));
        assert!(f_delta(&u(4, 1), 3).is_err());
    }

    #[test]
    fn intertwining_examples() {
        let f = u(2, -1);
        for (m, delta) in [(0, 2), (0, 1)] {
            let sol = SemiconjugacySolution { m, delta, l: lin(1, 0) };
            assert!(intertwine_check(&f, 1, &sol).unwrap());
        }
        let sol = SemiconjugacySolution { m: 1, delta: 2, l: lin(2, 3) };
        assert!(intertwine_check(&u(4, 1), 1, &sol).unwrap());
        let (a, b) = generate_semiconjugacy(&u(4, 2), 2, 1, 2, &lin(1, -1)).unwrap();
        let f2 = iterate(&u(4, 2).poly(), 2).unwrap();
        assert_eq!(f2.compose(&a).unwrap(), a.compose(&b).unwrap());
    }

    #[test]
    fn classification_examples() {
        let f = u(2, -1);
        let p = f.poly();
        let sol = classify_semiconjugacy(&f, 1, &p, &p).unwrap();
        assert_eq!(sol, SemiconjugacySolution { m: 0, delta: 2, l: lin(1, 0) });
        let g = u(4, 1);
        let (a, b) = generate_semiconjugacy(&g, 1, 1, 2, &lin(3, 1)).unwrap();
        assert_eq!(
            classify_semiconjugacy(&g, 1, &a, &b).unwrap(),
            SemiconjugacySolution { m: 1, delta: 2, l: lin(3, 1) }
        );
        // linear A = x + 5 with (x + c)∘L = A
        let h = u(3, 2);
        let (a, b) = generate_semiconjugacy(&h, 1, 0, 1, &lin(1, 3)).unwrap();
        assert_eq!(a, Poly::from_ints(&[5, 1]));
        assert_eq!(
            classify_semiconjugacy(&h, 1, &a, &b).unwrap(),
            SemiconjugacySolution { m: 0, delta: 1, l: lin(1, 3) }
        );
        assert_eq!(
            classify_semiconjugacy(&h, 1, &a, &a),
            Err(ClassifyError::NotASolution)
        );
        assert!(matches!(
            classify_semiconjugacy(&u(2, -2), 1, &p, &p),
            Err(ClassifyError::ExceptionalInput { .. })
        ));
    }

    #[test]
    fn pairing_examples() {
        let v = classify_unicritical_pair(&u(3, 1), &u(3, -1)).unwrap();
        assert_eq!(v, PairingVerdict::Paired(FieldElement::int(-1)));
        assert_eq!(classify_unicritical_pair(&u(2, 1), &u(2, -1)).unwrap(), PairingVerdict::NotPaired);
        assert_eq!(
            classify_unicritical_pair(&u(2, 0), &u(2, 1)).unwrap(),
            PairingVerdict::ExceptionalInput
        );
        assert_eq!(classify_unicritical_pair(&u(2, 1), &u(3, 1)).unwrap(), PairingVerdict::NotPaired);
    }

    #[test]
    fn symmetry_examples() {
        let s = symmetries_of(&Poly::from_ints(&[1, 0, 1]).pow(2)).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.contains(&lin(-1, 0)));
        assert_eq!(symmetries_of(&Poly::from_ints(&[2, 0, 0, 1])).unwrap(), vec![lin(1, 0)]);
        // x^2 + 3x = (x + 3/2)^2 − 9/4 is symmetric under x ↦ −x − 3
        let s = symmetries_of(&Poly::from_ints(&[0, 3, 1])).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.contains(&lin(-1, -3)));
    }

    #[test]
    fn iterate_examples() {
        let f = Poly::from_ints(&[1, 0, 1]);
        let f2 = iterate(&f, 2).unwrap();
        assert_eq!(is_iterate_of(&f2, &f, 5).unwrap(), Some(2));
        let perturbed = f2.try_add(&Poly::from_ints(&[0, 1])).unwrap();
        assert_eq!(is_iterate_of(&perturbed, &f, 5).unwrap(), None);
        assert_eq!(is_iterate_of(&Poly::from_ints(&[0, 1]), &f, 5).unwrap(), Some(0));
    }

    #[test]
    fn gap_examples() {
        let g = |p: &Poly| gap_data(p).unwrap();
        assert_eq!(g(&Poly::from_ints(&[0, 1, 0, 1])), GapData { degree: 3, gap: Some(2), eta: 2 });
        assert_eq!(g(&Poly::from_ints(&[5, 0, 1]).pow(2)), GapData { degree: 4, gap: Some(2), eta: 2 });
        assert_eq!(g(&Poly::from_ints(&[0, 0, 0, 0, 0, 1])), GapData { degree: 5, gap: None, eta: 5 });
        assert!(gap_data(&Poly::from_ints(&[3])).is_err());
    }
}
