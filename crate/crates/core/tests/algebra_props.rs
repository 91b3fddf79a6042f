use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use splitdyn::algebra::{
    chebyshev, compose, conjugate, engstrom_left, engstrom_right, iterate, normal_form, LinearPoly, Poly,
};
use splitdyn::classify::gap_data;

fn poly(min_deg: usize, max_deg: usize) -> impl Strategy<Value = Poly> {
    (min_deg..=max_deg)
        .prop_flat_map(|d| (prop::collection::vec(-4i64..=4, d), prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3])))
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            Poly::from_ints(&c)
        })
}

fn linear() -> impl Strategy<Value = LinearPoly> {
    (prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]), -3i64..=3, 1i64..=3)
        .prop_map(|(a, b, q)| {
            let a = splitdyn::algebra::FieldElement::int(a);
            let b = splitdyn::algebra::FieldElement::rational(BigRational::new(BigInt::from(b), BigInt::from(q)));
            LinearPoly::new(a, b).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(p in poly(1, 3), q in poly(1, 3), r in poly(1, 3)) {
        prop_assert_eq!(compose(&compose(&p, &q)?, &r)?, compose(&p, &compose(&q, &r)?)?);
    }

    #[test]
    fn conjugation_is_a_group_action(p in poly(2, 4), l1 in linear(), l2 in linear()) {
        let lhs = conjugate(&p, &l1.compose(&l2)?)?;
        prop_assert_eq!(lhs, conjugate(&conjugate(&p, &l1)?, &l2)?);
    }

    #[test]
    fn iterates_add(p in poly(2, 3), m in 0u32..=2, n in 0u32..=2) {
        prop_assert_eq!(iterate(&p, m + n)?, compose(&iterate(&p, m)?, &iterate(&p, n)?)?);
    }

    #[test]
    fn engstrom_recovers_the_middle(a in poly(1, 3), p in poly(1, 2), d in poly(1, 2)) {
        let b = compose(&p, &d)?;
        let c = compose(&a, &p)?;
        prop_assert_eq!(engstrom_left(&a, &b, &c, &d)?, p.clone());
        prop_assert_eq!(engstrom_right(&c, &d, &a, &b)?, p);
    }

    #[test]
    fn normal_form_round_trip(p in poly(2, 5)) {
        let nf = normal_form(&p);
        prop_assume!(nf.is_ok(), "leading coefficient has no (d-1)-th root in Q");
        let (q, l) = nf?;
        prop_assert!(q.is_monic());
        prop_assert_eq!(conjugate(&q, &l.inverse())?, p);
    }

    #[test]
    fn gap_survives_iteration(big_d in 2usize..=4, gap in 1usize..=4, n in 1u32..=3, a in 1i64..=3, b in 1i64..=3, low in -2i64..=2) {
        prop_assume!(gap <= big_d && (gap >= 2 || big_d >= 2));
        let mut c = vec![0i64; big_d + 1];
        c[big_d] = a;
        c[big_d - gap] += b;
        if big_d - gap > 0 {
            c[0] += low;
        }
        let p = Poly::from_ints(&c);
        let g = gap_data(&p)?.gap.unwrap();
        let pn = iterate(&p, n)?;
        let top = pn.deg();
        prop_assert_eq!(top, big_d.pow(n));
        prop_assert!(!pn.coeff(top - g as usize).is_zero());
        prop_assert!((top - g as usize + 1..top).all(|i| pn.coeff(i).is_zero()));
    }
}

#[test]
fn chebyshev_identities() {
    for d in 1..=12u32 {
        // T_d(z + 1/z)·z^d = z^{2d} + 1
        let t = chebyshev(d);
        let mut lhs = Poly::zero(t.field());
        let z_plus = Poly::from_ints(&[1, 0, 1]);
        for (k, c) in t.coeffs().iter().enumerate() {
            let term = z_plus.pow(k as u32).try_mul(&Poly::monomial(c.clone(), d as usize - k)).unwrap();
            lhs = &lhs + &term;
        }
        let mut rhs = vec![0i64; 2 * d as usize + 1];
        rhs[0] = 1;
        rhs[2 * d as usize] = 1;
        assert_eq!(lhs, Poly::from_ints(&rhs), "d = {d}");
    }
    for m in 1..=4 {
        for n in 1..=4 {
            assert_eq!(compose(&chebyshev(m), &chebyshev(n)).unwrap(), chebyshev(m * n));
        }
    }
}
