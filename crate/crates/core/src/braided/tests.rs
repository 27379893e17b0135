use super::*;
use crate::uqsl2::Decomposition;

const BIG: usize = 100_000;

fn spec() -> Backend {
    Backend::default()
}

#[test]
fn first_degree_is_the_module() {
    let p = braided_power(4, 1, Kind::Sym, &spec(), BIG).unwrap();
    assert_eq!(p.decomposition, Decomposition::from_weights([4]));
}

#[test]
fn cubes_of_v3() {
    let s = braided_power(3, 3, Kind::Sym, &Backend::Exact, BIG).unwrap();
    assert_eq!(s.decomposition, Decomposition::from_weights([9, 5]));
    assert_eq!(s.dim, 16);
    let e = braided_power(3, 3, Kind::Ext, &Backend::Exact, BIG).unwrap();
    assert!(e.decomposition.is_zero());
}

#[test]
fn tower_matches_direct_intersection() {
    for l in 1..=3 {
        let b = Braiding::exact(l);
        for kind in [Kind::Sym, Kind::Ext] {
            let mut t = b.power_tower(kind, BIG);
            for n in 1..=3 {
                let direct = braided_power_direct(b.sigma(), b.module(), n, kind.eigenvalue(), BIG).unwrap();
                let tower = t.level(n).unwrap().module().clone();
                let mut dims = BTreeMap::new();
                for &w in tower.weights() {
                    *dims.entry(w).or_insert(0) += 1;
                }
                assert_eq!(direct.weight_dims(), dims, "l = {l}, n = {n}, {kind}");
            }
        }
    }
}

#[test]
fn tower_basis_expands_into_direct_subspace() {
    let b = Braiding::exact(2);
    let mut t = b.power_tower(Kind::Sym, BIG);
    let dim = t.level(3).unwrap().dim();
    let direct = braided_power_direct(b.sigma(), b.module(), 3, 1, BIG).unwrap();
    for s in 0..dim {
        let x = t.expand(3, s).unwrap();
        assert!(direct.contains(&x), "basis vector {s}");
    }
}

#[test]
fn quotient_matches_direct_ideal() {
    for l in 1..=3 {
        let b = Braiding::exact(l);
        let mut q = b.quotient_tower(Kind::Sym, BIG).unwrap();
        for n in 2..=3 {
            let ideal = ideal_component(b.module(), n, b.square(Kind::Ext), BIG).unwrap();
            let a = q.level(n).unwrap().dim();
            assert_eq!(ideal.dim() + a, (l + 1).pow(n as u32), "l = {l}, n = {n}");
        }
    }
    // The ideal in degree two is the generator itself.
    let b = Braiding::exact(2);
    let ideal = ideal_component(b.module(), 2, b.square(Kind::Ext), BIG).unwrap();
    assert_eq!(ideal.dim(), b.square(Kind::Ext).dim());
}

#[test]
fn projection_detects_ideal_membership() {
    let b = Braiding::exact(1);
    let mut q = b.quotient_tower(Kind::Sym, BIG).unwrap();
    let ideal = ideal_component(b.module(), 3, b.square(Kind::Ext), BIG).unwrap();
    for blk in ideal.blocks.values() {
        for row in blk.space.basis_vectors() {
            let x: Tensor<RatFunc> = blk
                .words
                .iter()
                .zip(row)
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect();
            assert!(q.project(3, &x).unwrap().is_empty());
        }
    }
    let mut x = Tensor::new();
    x.insert(vec![0, 0, 0], RatFunc::one());
    assert!(!q.project(3, &x).unwrap().is_empty());
}

#[test]
fn resource_limit_is_reported() {
    let err = braided_power(3, 4, Kind::Sym, &spec(), 3).unwrap_err();
    assert!(matches!(err, Error::ResourceLimit { .. }));
    let b = Braiding::exact(1);
    let err = braided_power_direct(b.sigma(), b.module(), 4, 1, 2).unwrap_err();
    assert!(matches!(err, Error::ResourceLimit { .. }));
}

#[test]
fn graded_report_flat_case() {
    let r = graded_algebra_report(2, Kind::Sym, 5, &spec(), BIG).unwrap();
    let dims: Vec<usize> = r.rows.iter().map(|x| x.dim).collect();
    assert_eq!(dims, vec![6, 10, 15, 21]);
    assert!(r.all_agree());
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.starts_with(r#"{"l":2,"kind":"sym","rows":[{"n":2,"dim":6,"components":[{"hw":4,"mult":1},{"hw":0,"mult":1}],"agree":true}"#));
    assert!(r.to_table().contains("V8 + V4 + V0"));
}

#[test]
fn hw_embedding_small() {
    let r = hw_embedding_check(3, 3, &Backend::Exact, BIG).unwrap();
    assert!(r.pass);
    assert_eq!(r.vectors.len(), 2);
    let r = hw_embedding_check(1, 4, &spec(), BIG).unwrap();
    assert!(r.pass);
    assert_eq!(r.vectors.len(), 1);
    assert!(hw_embedding_check(2, 3, &spec(), BIG).is_err());
}

#[test]
fn exact_and_specialized_agree() {
    for l in 1..=3 {
        for kind in [Kind::Sym, Kind::Ext] {
            let e = braided_powers(l, 4, kind, &Backend::Exact, BIG).unwrap();
            let s = braided_powers(l, 4, kind, &Backend::Specialize(Rational::new(-3, 2)), BIG).unwrap();
            assert_eq!(e, s, "l = {l} {kind}");
        }
    }
}
