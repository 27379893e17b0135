use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use proptest::prelude::*;

use super::*;

const BIG: usize = 100_000;

/// Rational points other than `0` and `±1`.
fn arb_point() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9)
        .prop_map(|(n, d)| Rational::new(n, d))
        .prop_filter("q0 must avoid 0 and ±1", |q| !q.is_zero() && q.abs() != Rational::one())
}

fn exact_powers(l: usize, kind: Kind) -> Vec<BraidedPower> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, Kind), Vec<BraidedPower>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&(l, kind)) {
        return p.clone();
    }
    let p = braided_powers(l, 3, kind, &Backend::Exact, BIG).unwrap();
    cache.lock().unwrap().insert((l, kind), p.clone());
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sigma_is_an_equivariant_involution(l in 0usize..=4, q0 in arb_point()) {
        let s = Braiding::specialized(l, &q0).unwrap();
        prop_assert!(s.sigma().squares_to_identity());
        prop_assert!(s.sigma().is_equivariant());
        let plus = s.square(Kind::Sym).dim();
        let minus = s.square(Kind::Ext).dim();
        prop_assert_eq!(plus + minus, (l + 1) * (l + 1));
        prop_assert_eq!(minus, l * (l + 1) / 2);
    }

    #[test]
    fn complement_identity(l in 1usize..=3, n in 2usize..=3, q0 in arb_point()) {
        let b = Braiding::specialized(l, &q0).unwrap();
        let ideal = ideal_component(b.module(), n, b.square(Kind::Ext), BIG).unwrap();
        let sym = b.power_tower(Kind::Sym, BIG).level(n).unwrap().dim();
        let quot = b.quotient_tower(Kind::Sym, BIG).unwrap().level(n).unwrap().dim();
        prop_assert_eq!(sym + ideal.dim(), (l + 1).pow(n as u32));
        prop_assert_eq!(quot, sym);
    }

    #[test]
    fn top_component_has_multiplicity_one(l in 1usize..=4, n in 2usize..=4, q0 in arb_point()) {
        let backend = Backend::Specialize(q0);
        let s = braided_power(l, n, Kind::Sym, &backend, BIG).unwrap();
        prop_assert_eq!(s.decomposition.multiplicity((n * l) as i64), 1);
        prop_assert_eq!(s.decomposition.components()[0].hw, (n * l) as i64);
        let e = braided_power(l, n, Kind::Ext, &backend, BIG).unwrap();
        prop_assert_eq!(e.decomposition.multiplicity((n * l) as i64), 0);
    }

    #[test]
    fn backends_agree(l in 1usize..=3, q0 in arb_point()) {
        for kind in [Kind::Sym, Kind::Ext] {
            let s = braided_powers(l, 3, kind, &Backend::Specialize(q0.clone()), BIG).unwrap();
            prop_assert_eq!(s, exact_powers(l, kind));
        }
    }
}
