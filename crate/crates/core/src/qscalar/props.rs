use proptest::prelude::*;

use super::*;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rational::new(n, d))
}

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i32..=3, -4i64..=4), 0..4)
        .prop_map(|t| LaurentPoly::from_terms(t.into_iter().map(|(e, c)| (e, Rational::integer(c)))))
}

fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
    (arb_laurent(), arb_laurent()).prop_map(|(n, d)| {
        if d.is_zero() {
            RatFunc::from_poly(n)
        } else {
            RatFunc::new(n, d)
        }
    })
}

/// Points away from the roots of unity that appear as poles of quantum
/// integers; poles of random elements are skipped case by case.
fn arb_point() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![
        Rational::new(7, 5),
        Rational::new(-3, 2),
        Rational::new(2, 7),
        Rational::integer(3),
    ])
}

fn field_axioms<F: Field>(a: &F, b: &F, c: &F) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(b), b.add(a));
    prop_assert_eq!(a.mul(b), b.mul(a));
    prop_assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    prop_assert_eq!(a.add(&F::zero()), a.clone());
    prop_assert_eq!(a.mul(&F::one()), a.clone());
    prop_assert!(a.add(&a.neg()).is_zero());
    prop_assert_eq!(a.sub(b), a.add(&b.neg()));
    match a.inv() {
        Some(i) => prop_assert!(a.mul(&i).is_one()),
        None => prop_assert!(a.is_zero()),
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rational_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn ratfunc_field_axioms(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn specialization_is_a_homomorphism(a in arb_ratfunc(), b in arb_ratfunc(), q0 in arb_point()) {
        if let (Ok(x), Ok(y)) = (a.specialize(&q0), b.specialize(&q0)) {
            prop_assert_eq!(a.add(&b).specialize(&q0).unwrap(), x.add(&y));
            prop_assert_eq!(a.mul(&b).specialize(&q0).unwrap(), x.mul(&y));
        }
    }

    #[test]
    fn bar_is_an_involutive_automorphism(a in arb_ratfunc(), b in arb_ratfunc()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
    }

    #[test]
    fn equal_values_have_equal_representations(a in arb_ratfunc(), b in arb_ratfunc()) {
        // (a b) / b is stored exactly as a.
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).div(&b), a);
        }
    }
}
