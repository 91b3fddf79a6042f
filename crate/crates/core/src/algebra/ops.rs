use serde::{Deserialize, Serialize};

use super::field::{Field, FieldElement};
use super::linear::LinearPoly;
use super::poly::Poly;
use super::roots::{nth_roots, roots_of_unity};
use super::AlgebraError;

/// Default cap on the total numerator+denominator bits of an iterate.
pub const DEFAULT_COEFFICIENT_BITS: u64 = 1 << 20;

/// `p ∘ q`.
pub fn compose(p: &Poly, q: &Poly) -> Result<Poly, AlgebraError> {
    p.compose(q)
}

/// n-fold compositional iterate; `iterate(p, 0) = x`.
pub fn iterate(p: &Poly, n: u32) -> Result<Poly, AlgebraError> {
    iterate_with_budget(p, n, DEFAULT_COEFFICIENT_BITS)
}

pub fn iterate_with_budget(p: &Poly, n: u32, budget_bits: u64) -> Result<Poly, AlgebraError> {
    let mut acc = Poly::x(p.field());
    for _ in 0..n {
        acc = p.compose(&acc)?;
        let bits = acc.coefficient_bits();
        if bits > budget_bits {
            return Err(AlgebraError::ResourceLimit {
                bits,
                budget: budget_bits,
            });
        }
    }
    Ok(acc)
}

/// T_d over Q, from T₁ = x, T₂ = x² − 2 and T_{k+1} = x·T_k − T_{k−1}.
pub fn chebyshev(d: u32) -> Poly {
    assert!(d >= 1, "Chebyshev index must be at least 1");
    let x = Poly::from_ints(&[0, 1]);
    let mut prev = Poly::from_ints(&[2]);
    let mut cur = x.clone();
    for _ in 1..d {
        let next = &(&x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Copies a rational polynomial into another field.
pub fn lift_to_field(p: &Poly, field: &Field) -> Result<Poly, AlgebraError> {
    if p.field() == field {
        return Ok(p.clone());
    }
    let rat = p.rational_coeffs().ok_or(AlgebraError::FieldMismatch)?;
    Ok(Poly::from_trusted(
        field.clone(),
        rat.into_iter().map(|q| field.from_rational(q)).collect(),
    ))
}

/// `L⁻¹ ∘ p ∘ L`.
pub fn conjugate(p: &Poly, l: &LinearPoly) -> Result<Poly, AlgebraError> {
    if &l.field() != p.field() {
        return Err(AlgebraError::FieldMismatch);
    }
    let inner = p.compose(&l.to_poly())?;
    l.inverse().to_poly().compose(&inner)
}

fn check_degree_at_least_two(p: &Poly) -> Result<usize, AlgebraError> {
    match p.degree() {
        Some(d) if d >= 2 => Ok(d),
        _ => Err(AlgebraError::PreconditionViolated(format!(
            "degree at least 2 required, got {p}"
        ))),
    }
}

/// Monic with vanishing x^{d−1} coefficient.
pub fn is_normal_form(p: &Poly) -> bool {
    match p.degree() {
        Some(d) if d >= 2 => p.is_monic() && p.coeff(d - 1).is_zero(),
        _ => false,
    }
}

/// Returns `(q, L)` with `q = L⁻¹∘p∘L` monic and centered.
pub fn normal_form(p: &Poly) -> Result<(Poly, LinearPoly), AlgebraError> {
    let d = check_degree_at_least_two(p)?;
    let field = p.field().clone();
    let lead = p.leading();
    let target = lead.inv()?;
    let slopes = nth_roots(&target, (d - 1) as u32)?;
    let a = slopes
        .into_iter()
        .next()
        .ok_or(AlgebraError::RootNotInField)?;
    // b = −p_{d−1} / (d·p_d)
    let b = -&(&p.coeff(d - 1) / &(&field.from_int(d as i64) * &lead));
    let l = LinearPoly::new(a, b)?;
    let q = conjugate(p, &l)?;
    debug_assert!(is_normal_form(&q));
    Ok((q, l))
}

/// A (d−1)-st root of unity ζ with q(x) = ζ⁻¹·p(ζx), if one exists in the field.
pub fn normal_conjugacy_witness(p: &Poly, q: &Poly) -> Result<Option<FieldElement>, AlgebraError> {
    if p.field() != q.field() {
        return Err(AlgebraError::FieldMismatch);
    }
    if !is_normal_form(p) || !is_normal_form(q) || p.degree() != q.degree() {
        return Err(AlgebraError::NotNormalForm);
    }
    let field = p.field().clone();
    if p == q {
        return Ok(Some(field.one()));
    }
    let d = p.deg();
    for zeta in roots_of_unity(&field, (d - 1) as u32)? {
        // coefficient i of ζ⁻¹p(ζx) is ζ^{i−1}·a_i
        let zinv = zeta.inv()?;
        let mut power = zinv.clone();
        let mut ok = true;
        for i in 0..=d {
            if &power * &p.coeff(i) != q.coeff(i) {
                ok = false;
                break;
            }
            power = &power * &zeta;
        }
        if ok {
            return Ok(Some(zeta));
        }
    }
    Ok(None)
}

/// Whether a polynomial is conjugate over its field to a monomial or ±Chebyshev.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExceptionalClass {
    Monomial,
    PlusChebyshev,
    MinusChebyshev,
    No,
}

pub fn is_exceptional_poly(p: &Poly) -> Result<ExceptionalClass, AlgebraError> {
    let d = check_degree_at_least_two(p)?;
    let field = p.field().clone();
    let (np, _) = normal_form(p)?;
    let monomial = Poly::monomial(field.one(), d);
    let cheb = lift_to_field(&chebyshev(d as u32), &field)?;
    let minus_cheb = -&cheb;
    for (class, target) in [
        (ExceptionalClass::Monomial, monomial),
        (ExceptionalClass::PlusChebyshev, cheb),
        (ExceptionalClass::MinusChebyshev, minus_cheb),
    ] {
        // A target without a normal form over this field cannot be conjugate to p here.
        let nt = match normal_form(&target) {
            Ok((nt, _)) => nt,
            Err(AlgebraError::RootNotInField) => continue,
            Err(e) => return Err(e),
        };
        if normal_conjugacy_witness(&np, &nt)?.is_some() {
            return Ok(class);
        }
    }
    Ok(ExceptionalClass::No)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> FieldElement {
        FieldElement::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn iterate_examples() {
        let p = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(iterate(&p, 2).unwrap(), Poly::from_ints(&[0, 0, -2, 0, 1]));
        assert_eq!(iterate(&p, 0).unwrap(), Poly::from_ints(&[0, 1]));
        assert_eq!(
            iterate(&Poly::from_ints(&[0, 0, 1]), 3).unwrap(),
            Poly::monomial(FieldElement::int(1), 8)
        );
    }

    #[test]
    fn iterate_budget_is_enforced() {
        let p = Poly::from_rationals(vec![
            BigRational::new(1.into(), 3.into()),
            BigRational::new(7.into(), 5.into()),
            BigRational::new(11.into(), 13.into()),
        ]);
        let err = iterate_with_budget(&p, 6, 2_000).unwrap_err();
        assert!(matches!(err, AlgebraError::ResourceLimit { .. }));
    }

    #[test]
    fn chebyshev_small() {
        assert_eq!(chebyshev(1), Poly::from_ints(&[0, 1]));
        assert_eq!(chebyshev(2), Poly::from_ints(&[-2, 0, 1]));
        assert_eq!(chebyshev(3), Poly::from_ints(&[0, -3, 0, 1]));
    }

    #[test]
    fn conjugate_examples() {
        let sq = Poly::from_ints(&[0, 0, 1]);
        let l = LinearPoly::from_ints(1, 1).unwrap();
        assert_eq!(conjugate(&sq, &l).unwrap(), Poly::from_ints(&[0, 2, 1]));
        let id = LinearPoly::identity(&Field::Rational);
        assert_eq!(conjugate(&sq, &id).unwrap(), sq);
        let p = Poly::from_ints(&[5, 0, 1]);
        let l = LinearPoly::new(q(3, 1), q(0, 1)).unwrap();
        let back = conjugate(&conjugate(&p, &l).unwrap(), &l.inverse()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn normal_form_completes_the_square() {
        // x^2 + 2x + 3 = (x+1)^2 + 2; centered conjugate is x^2 + 3
        let p = Poly::from_ints(&[3, 2, 1]);
        let (nf, l) = normal_form(&p).unwrap();
        assert_eq!(nf, Poly::from_ints(&[3, 0, 1]));
        assert_eq!(l, LinearPoly::from_ints(1, -1).unwrap());
        assert_eq!(conjugate(&nf, &l.inverse()).unwrap(), p);
    }

    #[test]
    fn normal_form_identity_and_scaling() {
        let p = Poly::from_ints(&[7, 0, 0, 1]);
        let (nf, l) = normal_form(&p).unwrap();
        assert_eq!(nf, p);
        assert!(l.is_identity());
        let p = Poly::from_ints(&[1, 0, 4]);
        let (nf, l) = normal_form(&p).unwrap();
        assert!(is_normal_form(&nf));
        assert_eq!(nf, Poly::from_ints(&[4, 0, 1]));
        assert_eq!(conjugate(&nf, &l.inverse()).unwrap(), p);
    }

    #[test]
    fn normal_form_needs_root() {
        // 2x^3: needs a square root of 1/2
        let p = Poly::from_ints(&[0, 0, 0, 2]);
        assert!(matches!(normal_form(&p), Err(AlgebraError::RootNotInField)));
    }

    #[test]
    fn witness_examples() {
        let p = Poly::from_ints(&[1, 0, 0, 1]);
        let q = Poly::from_ints(&[-1, 0, 0, 1]);
        assert_eq!(normal_conjugacy_witness(&p, &q).unwrap(), Some(FieldElement::int(-1)));
        assert_eq!(normal_conjugacy_witness(&p, &p).unwrap(), Some(FieldElement::int(1)));
        let a = Poly::from_ints(&[1, 0, 1]);
        let b = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(normal_conjugacy_witness(&a, &b).unwrap(), None);
        assert!(matches!(
            normal_conjugacy_witness(&Poly::from_ints(&[0, 1, 1]), &b),
            Err(AlgebraError::NotNormalForm)
        ));
    }

    #[test]
    fn exceptional_examples() {
        use ExceptionalClass::*;
        assert_eq!(is_exceptional_poly(&Poly::from_ints(&[-2, 0, 1])).unwrap(), PlusChebyshev);
        assert_eq!(is_exceptional_poly(&Poly::from_ints(&[0, 0, 0, 1])).unwrap(), Monomial);
        assert_eq!(is_exceptional_poly(&Poly::from_ints(&[1, 0, 1])).unwrap(), No);
        // conjugated Chebyshev is still detected
        let l = LinearPoly::from_ints(1, 3).unwrap();
        let c3 = conjugate(&chebyshev(3), &l).unwrap();
        assert_eq!(is_exceptional_poly(&c3).unwrap(), PlusChebyshev);
        // -T_4 is conjugate to T_4 over Q via x -> -x
        let m4 = -&chebyshev(4);
        assert_eq!(is_exceptional_poly(&m4).unwrap(), PlusChebyshev);
        // -T_3 is odd with leading -1: not conjugate to T_3 over Q
        let m3 = -&chebyshev(3);
        assert!(matches!(is_exceptional_poly(&m3), Err(AlgebraError::RootNotInField)));
    }

    #[test]
    fn minus_chebyshev_over_gaussian_field() {
        let k = Field::extension_from_ints(&[1, 0, 1]).unwrap();
        let m3 = lift_to_field(&-&chebyshev(3), &k).unwrap();
        assert_eq!(is_exceptional_poly(&m3).unwrap(), ExceptionalClass::MinusChebyshev);
    }
}
