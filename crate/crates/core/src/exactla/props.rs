use proptest::prelude::*;

use super::*;

fn arb_matrix(max: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-2i64..=2, r * c)
            .prop_map(move |d| Matrix::new(r, c, d.into_iter().map(Rational::integer).collect()))
    })
}

fn arb_subspace(ambient: usize) -> impl Strategy<Value = Subspace<Rational>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, ambient), 0..=ambient).prop_map(move |rows| {
        Subspace::span(
            ambient,
            rows.into_iter()
                .map(|r| r.into_iter().map(Rational::integer).collect())
                .collect(),
        )
    })
}

fn three_subspaces() -> impl Strategy<Value = (Subspace<Rational>, Subspace<Rational>, Subspace<Rational>)> {
    (1usize..=5).prop_flat_map(|n| (arb_subspace(n), arb_subspace(n), arb_subspace(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn row_rank_equals_column_rank(m in arb_matrix(6)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_nullity(m in arb_matrix(6)) {
        let k = kernel(&m);
        prop_assert_eq!(rank(&m) + k.dim(), m.cols());
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(v).iter().all(Field::is_zero));
        }
    }

    #[test]
    fn rref_is_idempotent_and_rank_preserving(m in arb_matrix(6)) {
        let (r, p) = rref(&m);
        prop_assert_eq!(p.len(), rank(&m));
        prop_assert_eq!(rref(&r).0, r);
    }

    #[test]
    fn dimension_formula((a, b, _c) in three_subspaces()) {
        let s = a.sum(&b).unwrap();
        let i = a.intersection(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(a.contains_subspace(&i) && b.contains_subspace(&i));
        prop_assert!(s.contains_subspace(&a) && s.contains_subspace(&b));
    }

    #[test]
    fn modular_law((a, b, c) in three_subspaces()) {
        // With A ⊂ C: (A + B) ∩ C = A + (B ∩ C).
        let a = a.intersection(&c).unwrap();
        let lhs = a.sum(&b).unwrap().intersection(&c).unwrap();
        let rhs = a.sum(&b.intersection(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs.basis(), rhs.basis());
    }

    #[test]
    fn inverse_round_trip(m in arb_matrix(4)) {
        if m.rows() == m.cols() {
            match inverse(&m) {
                Some(inv) => prop_assert_eq!(m.mul(&inv), Matrix::identity(m.rows())),
                None => prop_assert!(rank(&m) < m.rows()),
            }
        }
    }
}
