use num_bigint::BigInt;
use proptest::prelude::*;
use uqrs::exact_arith::gcd::gcd;
use uqrs::exact_arith::{rat, FieldElem, IPoly};

fn poly_strategy(max_terms: usize, lo: i64, hi: i64) -> impl Strategy<Value = IPoly> {
    prop::collection::vec(((lo..=hi), (lo..=hi), -4i64..=4), 1..=max_terms)
        .prop_map(|ts| IPoly::from_terms(ts.into_iter().map(|(a, b, c)| ([a, b], BigInt::from(c)))))
}

fn elem_strategy() -> impl Strategy<Value = FieldElem> {
    (poly_strategy(4, -2, 3), poly_strategy(3, 0, 2), 1i64..=2).prop_filter_map("zero den", |(n, d, sc)| {
        if d.is_zero() {
            None
        } else {
            FieldElem::from_parts(sc, n, d).ok()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_and_multiplication_associate(a in elem_strategy(), b in elem_strategy(), c in elem_strategy()) {
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in elem_strategy(), b in elem_strategy(), c in elem_strategy()) {
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn inverse_is_exact(a in elem_strategy()) {
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(a.inv().unwrap().inv().unwrap(), a.clone());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn normalization_is_idempotent(a in elem_strategy()) {
        let again = FieldElem::from_parts(a.scale(), a.num_poly().clone(), a.den_poly().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        let json = FieldElem::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(json, a);
    }

    #[test]
    fn long_division_oracle(a in poly_strategy(4, 0, 3), b in poly_strategy(3, 0, 3)) {
        if !b.is_zero() {
            let prod = a.mul(&b);
            prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
        }
    }

    #[test]
    fn gcd_contains_common_factor(a in poly_strategy(3, 0, 2), b in poly_strategy(3, 0, 2), c in poly_strategy(3, 0, 2)) {
        if !a.is_zero() && !b.is_zero() && !c.is_zero() {
            let g = gcd(&a.mul(&c), &b.mul(&c));
            prop_assert!(g.div_exact(&c).is_some() || g.div_exact(&c.neg()).is_some());
            let x = a.mul(&c).div_exact(&g).unwrap();
            let y = b.mul(&c).div_exact(&g).unwrap();
            prop_assert!(gcd(&x, &y).is_one());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in elem_strategy(), b in elem_strategy(), p in 2i64..6, q in 7i64..11) {
        // squares, so roots of order 2 exist
        let (r0, s0) = (rat(p * p, 1), rat(q * q, 4));
        if let (Ok(x), Ok(y)) = (a.evaluate_at_point(&r0, &s0), b.evaluate_at_point(&r0, &s0)) {
            prop_assert_eq!((&a * &b).evaluate_at_point(&r0, &s0).unwrap(), &x * &y);
            if let Ok(z) = (&a + &b).evaluate_at_point(&r0, &s0) {
                prop_assert_eq!(z, &x + &y);
            }
        }
    }
}
