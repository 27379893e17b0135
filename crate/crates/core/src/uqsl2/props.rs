use proptest::prelude::*;

use super::*;

fn arb_point() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![Rational::new(7, 5), Rational::new(-3, 2), Rational::new(5, 3)])
}

/// `V_a ⊗ V_b ≅ ⊕_{k=0}^{min(a,b)} V_{a+b-2k}` written out directly.
fn clebsch_gordan(a: i64, b: i64) -> Decomposition {
    Decomposition::from_weights((0..=a.min(b)).map(|k| a + b - 2 * k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tensor_products_decompose_by_clebsch_gordan(a in 0usize..=6, b in 0usize..=6, q0 in arb_point()) {
        let va = ModuleRep::simple_generic(a).specialize(&q0).unwrap();
        let vb = ModuleRep::simple_generic(b).specialize(&q0).unwrap();
        let t = va.tensor(&vb).unwrap();
        t.verify_relations().unwrap();
        let expected = clebsch_gordan(a as i64, b as i64);
        prop_assert_eq!(t.decompose().unwrap(), expected.clone());
        let da = Decomposition::from_weights([a as i64]);
        prop_assert_eq!(da.tensor(&Decomposition::from_weights([b as i64])), expected);
    }

    #[test]
    fn classical_tensor_products(a in 0usize..=6, b in 0usize..=6) {
        let t = ModuleRep::simple_classical(a).tensor(&ModuleRep::simple_classical(b)).unwrap();
        prop_assert_eq!(t.decompose().unwrap(), clebsch_gordan(a as i64, b as i64));
    }

    #[test]
    fn generated_submodule_is_simple(a in 1usize..=4, b in 1usize..=4, q0 in arb_point()) {
        // The top weight vector generates V_{a+b}.
        let va = ModuleRep::simple_generic(a).specialize(&q0).unwrap();
        let vb = ModuleRep::simple_generic(b).specialize(&q0).unwrap();
        let t = va.tensor(&vb).unwrap();
        let sub = t.submodule_generated(&[unit(t.dim(), 0)]);
        prop_assert_eq!(sub.dim(), a + b + 1);
        let r = t.restrict(&sub).unwrap();
        prop_assert_eq!(r.decompose().unwrap(), Decomposition::from_weights([(a + b) as i64]));
    }
}

#[test]
fn exact_tensor_products_small() {
    for a in 0..=3 {
        for b in 0..=3 {
            let t = ModuleRep::simple_generic(a).tensor(&ModuleRep::simple_generic(b)).unwrap();
            assert_eq!(t.decompose().unwrap(), clebsch_gordan(a as i64, b as i64));
        }
    }
}
