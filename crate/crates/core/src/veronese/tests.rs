use proptest::prelude::*;

use super::algebra::*;
use super::*;
use crate::braided::Backend;
use crate::poisson::binomial;
use crate::uqsl2::Decomposition;

const BIG: usize = 100_000;

/// Sort by adjacent swaps, picking up `q⁻¹` for every swap of `x_j x_i`
/// with `i < j`.
fn bubble(word: &[usize]) -> (i64, Vec<usize>) {
    let mut w = word.to_vec();
    let mut exp = 0;
    loop {
        let mut swapped = false;
        for p in 0..w.len().saturating_sub(1) {
            if w[p] > w[p + 1] {
                w.swap(p, p + 1);
                exp -= 1;
                swapped = true;
            }
        }
        if !swapped {
            return (exp, w);
        }
    }
}

fn exps_of(sorted: &[usize], vars: usize) -> Exponents {
    let mut e = vec![0; vars];
    for &i in sorted {
        e[i] += 1;
    }
    e
}

#[test]
fn normal_order_examples() {
    assert_eq!(normal_order(&[0, 1, 2], 3).unwrap(), (0, vec![1, 1, 1]));
    assert_eq!(normal_order(&[1, 0], 2).unwrap(), (-1, vec![1, 1]));
    assert_eq!(normal_order(&[0, 1, 0, 2], 3).unwrap(), (-1, vec![2, 1, 1]));
    assert_eq!(normal_order(&[0, 3], 3).unwrap_err(), Error::IndexRange { index: 3, max: 2 });
}

#[test]
fn normal_order_matches_adjacent_swaps_exhaustively() {
    for vars in 1..=4usize {
        for len in 0..=6u32 {
            for code in 0..vars.pow(len) {
                let mut c = code;
                let word: Vec<usize> = (0..len)
                    .map(|_| {
                        let x = c % vars;
                        c /= vars;
                        x
                    })
                    .collect();
                let (exp, sorted) = bubble(&word);
                assert_eq!(normal_order(&word, vars).unwrap(), (exp, exps_of(&sorted, vars)));
            }
        }
    }
}

#[test]
fn lambda_examples() {
    assert_eq!(lambda_count(&[0, 1], &[0, 2]), 2);
    assert_eq!(lambda_count(&[0, 0], &[1, 1]), 4);
    assert_eq!(lambda_count(&[0, 1, 1], &[0, 1, 1]), 2);
}

#[test]
fn skew_ring_commutation() {
    let x0 = SkewPoly::var(2, 0).unwrap();
    let x1 = SkewPoly::var(2, 1).unwrap();
    let lhs = x1.mul(&x0).unwrap();
    let rhs = x0.mul(&x1).unwrap().scale(&RatFunc::q_pow(-1));
    assert_eq!(lhs, rhs);
    assert!(x0.mul(&SkewPoly::var(3, 0).unwrap()).is_err());
    assert_eq!(x0.sub(&x0).unwrap(), SkewPoly::zero(2));
}

#[test]
fn relations_for_small_cases() {
    let v = veronese_relations(1, 1).unwrap();
    assert_eq!(v.relations.len(), 1);
    let r = &v.relations[0];
    assert_eq!((r.i.as_slice(), r.j.as_slice(), r.k.as_slice(), r.l.as_slice()), (&[1][..], &[0][..], &[0][..], &[1][..]));
    assert_eq!(r.exponent, -1);

    let v = veronese_relations(1, 2).unwrap();
    assert_eq!(v.generators.len(), 3);
    // Products of the 3 generators land on 5 monomials with fibres 1, 2, 3, 2, 1.
    assert_eq!(v.relations.len(), 1 + 3 + 1);
    assert!(v.verify());

    let v = veronese_relations(2, 2).unwrap();
    assert_eq!(v.generators.len(), 6);
    assert!(v.verify());
    assert!(veronese_relations(0, 2).is_err());
}

fn equal_pairs(i: &[usize], j: &[usize]) -> i64 {
    i.iter().map(|a| j.iter().filter(|b| *b == a).count() as i64).sum()
}

#[test]
fn lambda_differs_by_equality_counts() {
    for (n, d) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let v = veronese_relations(n, d).unwrap();
        assert!(v.verify(), "n = {n}, d = {d}");
        for r in &v.relations {
            let shift = equal_pairs(&r.k, &r.l) - equal_pairs(&r.i, &r.j);
            assert_eq!(r.lambda_exponent - r.exponent, shift);
            assert_eq!(r.agree, shift == 0);
        }
    }
    // x_{01} x_{02}: two equal pairs on neither side of x_{00} x_{12}.
    let v = veronese_relations(2, 2).unwrap();
    assert!(v.lambda_disagreements() > 0);
}

#[test]
fn csv_export() {
    let csv = veronese_relations(1, 1).unwrap().to_csv();
    assert_eq!(csv, "I,J,K,L,exponent,lambda_exponent,agree\n1,0,0,1,-1,-1,true\n");
}

#[test]
fn skew_components_are_flat() {
    for n in 1..=2 {
        for d in 1..=3 {
            for k in 1..=5 {
                assert_eq!(skew_component_dim(n, d, k), binomial(k * d + n, n));
            }
        }
    }
}

#[test]
fn hilbert_examples() {
    let h = veronese_hilbert(2, 2, 2, &Backend::Exact, BIG).unwrap();
    assert_eq!(h.dim, 15);
    assert_eq!(h.decomposition, Decomposition::from_weights([8, 4, 0]));
    assert!(h.pass);
    let h = veronese_hilbert(1, 3, 2, &Backend::default(), BIG).unwrap();
    assert_eq!(h.dim, 7);
    assert_eq!(h.braided, Decomposition::from_weights([6]));
    assert!(h.pass);
    assert_eq!(veronese_hilbert(2, 3, 1, &Backend::default(), BIG).unwrap().dim, 10);
    assert_eq!(veronese_hilbert(3, 1, 1, &Backend::default(), BIG).unwrap_err(), Error::UnsupportedRank(3));
}

#[test]
fn subalgebra_generated_by_top_component() {
    let r = subalgebra_a(1, 3, &Backend::Exact, BIG).unwrap();
    assert!(r.pass);
    assert!(r.rows.iter().all(|x| x.equal));
    let r = subalgebra_a(2, 2, &Backend::Exact, BIG).unwrap();
    assert!(r.pass);
    assert_eq!(r.rows[0].dim, 5);
    assert!(!r.rows[0].equal);
    assert_eq!(r.rows[1].dim, 15);
}

#[test]
fn hwv_formula_small() {
    for d in 0..=4 {
        for m in 0..=d / 2 {
            let c = hwv_formula_check(d, m).unwrap();
            assert!(c.pass, "d = {d}, m = {m}: {c:?}");
            assert_eq!(c.weight, 2 * d as i64 - 4 * m as i64);
        }
    }
    assert!(hwv_formula_check(3, 2).is_err());
}

#[test]
fn nilradical_examples() {
    let r = nilradical_check(3, 3, &Backend::Exact, BIG).unwrap();
    assert!(r.pass);
    assert_eq!(r.rows[1].kernel, Decomposition::from_weights([5]));
    assert_eq!(r.rows[1].kernel.dim(), 6);
    let r = nilradical_check(1, 4, &Backend::default(), BIG).unwrap();
    assert!(r.rows.iter().all(|x| x.kernel.is_zero()));
    let r = nilradical_check(5, 2, &Backend::default(), BIG).unwrap();
    assert_eq!(r.rows[0].kernel, Decomposition::from_weights([6, 2]));
    assert!(nilradical_check(2, 3, &Backend::default(), BIG).is_err());
}

fn arb_word(vars: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..vars, 0..6)
}

fn arb_skew(vars: usize) -> impl Strategy<Value = SkewPoly> {
    prop::collection::vec((arb_word(vars), -3i64..=3, -2i32..=2), 1..4).prop_map(move |terms| {
        let mut p = SkewPoly::zero(vars);
        for (w, c, e) in terms {
            let m = SkewPoly::from_word(vars, &w).unwrap();
            p = p.add(&m.scale(&RatFunc::from_i64(c).mul(&RatFunc::q_pow(e)))).unwrap();
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_order_is_multiplicative(u in arb_word(4), w in arb_word(4)) {
        let (eu, _) = normal_order(&u, 4).unwrap();
        let (ew, _) = normal_order(&w, 4).unwrap();
        let cross = u.iter().map(|a| w.iter().filter(|b| a > *b).count() as i64).sum::<i64>();
        let joined: Vec<usize> = u.iter().chain(&w).copied().collect();
        prop_assert_eq!(normal_order(&joined, 4).unwrap().0, eu + ew - cross);
    }

    #[test]
    fn word_product_is_concatenation(u in arb_word(3), w in arb_word(3)) {
        let joined: Vec<usize> = u.iter().chain(&w).copied().collect();
        let a = SkewPoly::from_word(3, &u).unwrap().mul(&SkewPoly::from_word(3, &w).unwrap()).unwrap();
        prop_assert_eq!(a, SkewPoly::from_word(3, &joined).unwrap());
    }

    #[test]
    fn skew_product_is_associative(a in arb_skew(3), b in arb_skew(3), c in arb_skew(3)) {
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn no_zero_divisors(a in arb_skew(3), b in arb_skew(3)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert!(!a.mul(&b).unwrap().is_zero());
    }
}
