use proptest::prelude::*;

use super::*;

fn r(n: i64) -> Rational {
    Rational::integer(n)
}

fn mono(l: usize, idx: &[usize]) -> ClassicalPoly {
    ClassicalPoly::from_indices(l, idx)
}

#[test]
fn generator_brackets_by_hand() {
    assert!(generator_bracket(3, 2, 2).is_zero());
    // l = 1: E v0 = 0, F v0 = v1, E v1 = v0.
    assert_eq!(generator_bracket(1, 0, 1), mono(1, &[0, 1]).scale(&r(-1)));
    // l = 2: F v0 = 2 v1 and E v2 = 2 v1, so the product carries 2 · 2.
    assert_eq!(generator_bracket(2, 0, 2), mono(2, &[1, 1]).scale(&r(-4)));
}

#[test]
fn mixed_modules_are_rejected() {
    let a = ClassicalPoly::generator(1, 0);
    let b = ClassicalPoly::generator(2, 0);
    assert_eq!(bracket(&a, &b).unwrap_err(), Error::MixedModule { left: 1, right: 2 });
}

#[test]
fn low_rank_brackets_are_poisson() {
    for l in [1, 2] {
        assert!(jacobiator_generators(l).iter().all(ClassicalPoly::is_zero), "l = {l}");
    }
    let v0 = ClassicalPoly::generator(1, 0);
    let v1 = ClassicalPoly::generator(1, 1);
    assert!(jacobiator(&v0, &v1, &v0.mul(&v1).unwrap()).unwrap().is_zero());
    assert!(jacobiator(&v0, &v0, &v1).unwrap().is_zero());
}

/// Six-term expansion of the antisymmetrized action written out by hand.
fn six_terms(l: usize, a: usize, b: usize, c: usize) -> ClassicalPoly {
    let (li, ai, bi, ci) = (l as i64, a as i64, b as i64, c as i64);
    let terms: [(i64, [i64; 3]); 6] = [
        (ai * (li - bi) * (li - 2 * ci), [ai - 1, bi + 1, ci]),
        (-ai * (li - 2 * bi) * (li - ci), [ai - 1, bi, ci + 1]),
        (-(li - ai) * bi * (li - 2 * ci), [ai + 1, bi - 1, ci]),
        ((li - ai) * (li - 2 * bi) * ci, [ai + 1, bi, ci - 1]),
        ((li - 2 * ai) * bi * (li - ci), [ai, bi - 1, ci + 1]),
        (-(li - 2 * ai) * (li - bi) * ci, [ai, bi + 1, ci - 1]),
    ];
    let mut out = ClassicalPoly::zero(l);
    for (coef, idx) in terms {
        if coef == 0 {
            continue;
        }
        let idx: Vec<usize> = idx.iter().map(|&i| i as usize).collect();
        out = out.add(&mono(l, &idx).scale(&r(coef))).unwrap();
    }
    out
}

#[test]
fn jacobian_map_matches_hand_expansion() {
    for l in 2..=6 {
        for (a, b, c) in index_triples(l) {
            assert_eq!(jacobian_map(l, a, b, c).unwrap(), six_terms(l, a, b, c));
        }
    }
    assert_eq!(jacobian_map(3, 0, 1, 2).unwrap().coeff(&[0, 3, 0, 0]), r(6));
    assert!(matches!(jacobian_map(3, 1, 1, 2), Err(Error::IndexOrder { .. })));
    assert!(index_triples(1).is_empty());
}

#[test]
fn terminal_monomial_for_odd_l() {
    for l in [3, 5, 7] {
        for (a, b, c) in index_triples(l) {
            let p = jacobian_map(l, a, b, c).unwrap();
            let mut k = vec![0; l + 1];
            k[a + 1] += 1;
            k[b] += 1;
            k[c - 1] += 1;
            assert_eq!(p.terminal_monomial(), Some(&k), "l = {l} ({a},{b},{c})");
        }
    }
}

#[test]
fn spans_agree() {
    for l in 0..=5 {
        assert!(jacobian_spans_agree(l), "l = {l}");
    }
}

#[test]
fn closure_dimensions() {
    assert_eq!(jacobian_ideal_dim(3, 3), 4);
    let h3: Vec<usize> = poisson_closure_hilbert(3, 4).iter().map(|r| r.dim).collect();
    assert_eq!(h3, vec![4, 10, 16, 22]);
    for n in 1..=6 {
        assert_eq!(jacobian_ideal_dim(1, n), 0);
        assert_eq!(jacobian_ideal_dim(2, n), 0);
        assert_eq!(sym_dim(2, n), binomial(n + 2, 2));
    }
    let h1: Vec<usize> = poisson_closure_hilbert(1, 5).iter().map(|r| r.dim).collect();
    assert_eq!(h1, vec![2, 3, 4, 5, 6]);
}

#[test]
fn t_sets() {
    for l in 1..=8 {
        for n in 2..=8 {
            assert_eq!(t_count(l, n), TMonomialSet::closed_form(l, n), "l = {l}, n = {n}");
        }
    }
    assert_eq!(t_count(3, 4), 22);
    let csv = TMonomialSet::enumerate(1, 2).to_csv();
    assert_eq!(csv, "k0,k1\n0,2\n1,1\n2,0\n");
}

#[test]
fn closure_bounded_by_t_count_for_odd_l() {
    for l in [1, 3, 5] {
        for row in poisson_closure_hilbert(l, 6).into_iter().skip(1) {
            assert_eq!(row.dim, t_count(l, row.n), "l = {l}, n = {}", row.n);
        }
    }
}

fn arb_poly(l: usize, deg: u32) -> impl Strategy<Value = ClassicalPoly> {
    let monos = monomials(l, deg);
    let m = monos.len();
    prop::collection::vec((0..m, -3i64..=3), 1..4).prop_map(move |terms| {
        let mut p = ClassicalPoly::zero(l);
        for (i, c) in terms {
            p = p
                .add(&ClassicalPoly::monomial(l, monos[i].clone(), r(c)))
                .unwrap();
        }
        p
    })
}

fn arb_triple() -> impl Strategy<Value = (ClassicalPoly, ClassicalPoly, ClassicalPoly)> {
    (1usize..=4, 1u32..=2, 1u32..=2, 1u32..=2)
        .prop_flat_map(|(l, d1, d2, d3)| (arb_poly(l, d1), arb_poly(l, d2), arb_poly(l, d3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn antisymmetric((u, v, _w) in arb_triple()) {
        let a = bracket(&u, &v).unwrap();
        let b = bracket(&v, &u).unwrap();
        prop_assert!(a.add(&b).unwrap().is_zero());
    }

    #[test]
    fn leibniz((u, v, w) in arb_triple()) {
        let lhs = bracket(&u, &v.mul(&w).unwrap()).unwrap();
        let rhs = bracket(&u, &v).unwrap().mul(&w).unwrap()
            .add(&v.mul(&bracket(&u, &w).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_is_additive((u, v, _w) in arb_triple()) {
        let b = bracket(&u, &v).unwrap();
        if !b.is_zero() {
            prop_assert_eq!(b.degree(), Some(u.degree().unwrap() + v.degree().unwrap()));
        }
    }
}
