//! Engstrom-style decomposition primitives: given A∘B = C∘D, recover the
//! middle factor when one outer degree divides the other.

use super::field::FieldElement;
use super::poly::Poly;
use super::AlgebraError;

fn check_inputs(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Result<(), AlgebraError> {
    let field = a.field();
    if [b, c, d].iter().any(|p| p.field() != field) {
        return Err(AlgebraError::FieldMismatch);
    }
    if [a, b, c, d].iter().any(|p| p.is_constant()) {
        return Err(AlgebraError::PreconditionViolated(
            "all four polynomials must be nonconstant".into(),
        ));
    }
    if a.compose(b)? != c.compose(d)? {
        return Err(AlgebraError::PreconditionViolated("A∘B ≠ C∘D".into()));
    }
    Ok(())
}

/// Returns P with C = A∘P and B = P∘D, assuming A∘B = C∘D and deg A | deg C.
pub fn engstrom_left(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Result<Poly, AlgebraError> {
    check_inputs(a, b, c, d)?;
    let (n, dc) = (a.deg(), c.deg());
    if dc % n != 0 {
        return Err(AlgebraError::PreconditionViolated(format!(
            "deg A = {n} does not divide deg C = {dc}"
        )));
    }
    let candidates = left_compositional_quotients(a, c)?;
    for p in &candidates {
        if p.compose(d)? == *b {
            return Ok(p.clone());
        }
    }
    Err(AlgebraError::NoSolution(if candidates.is_empty() {
        "no P over the field satisfies C = A∘P".into()
    } else {
        "C = A∘P solved but B ≠ P∘D".into()
    }))
}

/// Every P with `target = outer ∘ P`, for nonconstant `outer`.
///
/// P is solved top-down: its leading coefficient is a (deg outer)-th root of
/// lc(target)/lc(outer), and each lower coefficient enters the matching
/// coefficient of outer∘P linearly with factor n·lc(outer)·lc(P)^{n−1}.
pub fn left_compositional_quotients(outer: &Poly, target: &Poly) -> Result<Vec<Poly>, AlgebraError> {
    if outer.field() != target.field() {
        return Err(AlgebraError::FieldMismatch);
    }
    let n = outer.deg();
    if n == 0 || target.is_zero() || target.deg() % n != 0 {
        return Ok(Vec::new());
    }
    let k = target.deg() / n;
    let field = outer.field().clone();
    let ratio = &target.leading() / &outer.leading();
    let mut out = Vec::new();
    for lead in super::roots::nth_roots(&ratio, n as u32)? {
        let pivot = &(&field.from_int(n as i64) * &outer.leading()) * &lead.pow(n as u64 - 1);
        let pivot_inv = pivot.inv()?;
        let mut coeffs: Vec<FieldElement> = vec![field.zero(); k + 1];
        coeffs[k] = lead.clone();
        for j in 1..=k {
            let partial = Poly::from_trusted(field.clone(), coeffs.clone());
            let current = outer.compose(&partial)?.coeff(n * k - j);
            coeffs[k - j] = &(&target.coeff(n * k - j) - &current) * &pivot_inv;
        }
        let p = Poly::from_trusted(field.clone(), coeffs);
        if outer.compose(&p)? == *target {
            out.push(p);
        }
    }
    Ok(out)
}

/// Returns Q with D = Q∘B and A = C∘Q, assuming A∘B = C∘D and deg B | deg D.
///
/// Q is read off the B-adic expansion of D: repeated division by B must leave
/// constant remainders, which are the coefficients of Q from the bottom up.
pub fn engstrom_right(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Result<Poly, AlgebraError> {
    check_inputs(a, b, c, d)?;
    let (db, dd) = (b.deg(), d.deg());
    if dd % db != 0 {
        return Err(AlgebraError::PreconditionViolated(format!(
            "deg B = {db} does not divide deg D = {dd}"
        )));
    }
    let q = right_compositional_quotient(d, b)
        .ok_or_else(|| AlgebraError::NoSolution("D is not a polynomial in B".into()))?;
    if c.compose(&q)? != *a {
        return Err(AlgebraError::NoSolution("D = Q∘B solved but A ≠ C∘Q".into()));
    }
    Ok(q)
}

/// The polynomial Q with `target = Q ∘ inner`, if it exists.
pub fn right_compositional_quotient(target: &Poly, inner: &Poly) -> Option<Poly> {
    if inner.is_constant() {
        return None;
    }
    let field = target.field().clone();
    let mut rest = target.clone();
    let mut coeffs = Vec::new();
    while !rest.is_zero() {
        let (quot, rem) = rest.div_rem(inner).ok()?;
        if !rem.is_constant() {
            return None;
        }
        coeffs.push(rem.coeff(0));
        rest = quot;
    }
    Some(Poly::from_trusted(field, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn left_worked_example() {
        // A = x², B = x²+2x+2, C = (x²+1)², D = x+1 → P = x²+1
        let a = p(&[0, 0, 1]);
        let b = p(&[2, 2, 1]);
        let c = p(&[1, 0, 2, 0, 1]);
        let d = p(&[1, 1]);
        assert_eq!(engstrom_left(&a, &b, &c, &d).unwrap(), p(&[1, 0, 1]));
    }

    #[test]
    fn left_identity_and_monomials() {
        let f = p(&[3, 1, 2]);
        let g = p(&[-1, 0, 1]);
        assert_eq!(engstrom_left(&f, &g, &f, &g).unwrap(), p(&[0, 1]));
        let mono = |k: usize| Poly::monomial(FieldElement::int(1), k);
        assert_eq!(engstrom_left(&mono(2), &mono(3), &mono(6), &mono(1)).unwrap(), mono(3));
    }

    #[test]
    fn right_examples() {
        let mono = |k: usize| Poly::monomial(FieldElement::int(1), k);
        assert_eq!(engstrom_right(&mono(6), &mono(1), &mono(2), &mono(3)).unwrap(), mono(3));
        let f = p(&[3, 1, 2]);
        let g = p(&[-1, 0, 1]);
        assert_eq!(engstrom_right(&f, &g, &f, &g).unwrap(), p(&[0, 1]));
        let a = p(&[1, 0, 2, 0, 1]);
        let b = p(&[1, 1]);
        let c = p(&[0, 0, 1]);
        let d = p(&[2, 2, 1]);
        assert_eq!(engstrom_right(&a, &b, &c, &d).unwrap(), p(&[1, 0, 1]));
    }

    #[test]
    fn precondition_failures() {
        let a = p(&[0, 0, 1]);
        let b = p(&[0, 1]);
        let c = p(&[1, 0, 1]);
        let d = p(&[0, 1]);
        assert!(matches!(
            engstrom_left(&a, &b, &c, &d),
            Err(AlgebraError::PreconditionViolated(_))
        ));
        // degrees incompatible: deg A = 3 does not divide deg C = 2
        let a = p(&[0, 0, 0, 1]);
        let b = p(&[0, 0, 1]);
        let c = p(&[0, 0, 1]);
        let d = p(&[0, 0, 0, 1]);
        assert!(matches!(
            engstrom_left(&a, &b, &c, &d),
            Err(AlgebraError::PreconditionViolated(_))
        ));
    }
}
