//! Closed-form decompositions of braided powers and their verification.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{apply_e, tensor_product, Backend, Kind, Tensor};
use crate::error::{Error, Result};
use crate::on_backend;
use crate::qscalar::Field;
use crate::uqsl2::Decomposition;

/// Expected `S^n_σ V_ℓ`.
///
/// Odd `ℓ`, `n ≥ 2`: `⊕_{i=0}^{(ℓ-1)/2} V_{nℓ-4i}`. Even `ℓ`:
/// `⊕_{i=0}^{⌊nℓ/4⌋} V_{nℓ-4i}`; the upper limit is taken with a floor so
/// that all highest weights stay nonnegative.
pub fn expected_sym(l: usize, n: usize) -> Decomposition {
    let (l, n) = (l as i64, n as i64);
    match n {
        0 => Decomposition::from_weights([0]),
        1 => Decomposition::from_weights([l]),
        _ if l % 2 == 1 => Decomposition::from_weights((0..=(l - 1) / 2).map(|i| n * l - 4 * i)),
        _ => Decomposition::from_weights((0..=n * l / 4).map(|i| n * l - 4 * i)),
    }
}

/// Expected `Λ^n_σ V_ℓ`.
///
/// Degree two is the `-1` eigenspace `⊕_{k odd} V_{2ℓ-2k}`. For odd `ℓ`
/// every degree `n ≥ 3` vanishes. For even `ℓ`,
/// `Λ³ = ⊕_{i=ℓ/2}^{⌊(3ℓ-2)/4⌋} V_{3ℓ-4i-2}` and `Λ^n = 0` for `n ≥ 4`.
pub fn expected_ext(l: usize, n: usize) -> Decomposition {
    let (l, n) = (l as i64, n as i64);
    match n {
        0 => Decomposition::from_weights([0]),
        1 => Decomposition::from_weights([l]),
        2 => Decomposition::from_weights((1..=l).step_by(2).map(|k| 2 * l - 2 * k)),
        3 if l % 2 == 0 => {
            let hi = (3 * l - 2).div_euclid(4);
            Decomposition::from_weights((l / 2..=hi).map(|i| 3 * l - 4 * i - 2))
        }
        _ => Decomposition::zero(),
    }
}

/// Comparison of one computed braided power with its closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub kind: Kind,
    pub l: usize,
    pub n: usize,
    pub expected: Decomposition,
    pub computed: Decomposition,
    pub pass: bool,
}

/// Check `S^n_σ V_ℓ` for `1 ≤ n ≤ n_max` and `Λ^n_σ V_ℓ` for
/// `2 ≤ n ≤ n_max` against the closed forms.
pub fn verify_main_theorem(
    l: usize,
    n_max: usize,
    backend: &Backend,
    max_block: usize,
) -> Result<Vec<TheoremCheck>> {
    if l == 0 {
        return Err(Error::InvalidArgument("the closed forms need l >= 1".into()));
    }
    on_backend!(l, backend, |b| {
        let mut out = Vec::new();
        for kind in [Kind::Sym, Kind::Ext] {
            let mut t = b.power_tower(kind, max_block);
            let start = if kind == Kind::Sym { 1 } else { 2 };
            for n in start..=n_max {
                let computed = t.level(n)?.module().decompose()?;
                let expected = match kind {
                    Kind::Sym => expected_sym(l, n),
                    Kind::Ext => expected_ext(l, n),
                };
                out.push(TheoremCheck {
                    kind,
                    l,
                    n,
                    pass: computed == expected,
                    expected,
                    computed,
                });
            }
        }
        Ok(out)
    })
}

/// Outcome for one vector `u_i ⊗ v_0^{⊗(n-2)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HwVectorCheck {
    pub weight: i64,
    pub killed_by_e: bool,
    pub outside_ideal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HwEmbeddingReport {
    pub l: usize,
    pub n: usize,
    pub vectors: Vec<HwVectorCheck>,
    pub pass: bool,
}

/// For odd `ℓ` and `n ≥ 3`, take each highest weight vector `u_i` of
/// `S²_σ V_ℓ` (weight `2ℓ - 4i`) and check that `u_i ⊗ v_0^{⊗(n-2)}` is a
/// highest weight vector of `V^{⊗n}` lying outside `⟨Λ²_σ V_ℓ⟩_n`.
pub fn hw_embedding_check(
    l: usize,
    n: usize,
    backend: &Backend,
    max_block: usize,
) -> Result<HwEmbeddingReport> {
    if l % 2 == 0 || n < 3 {
        return Err(Error::InvalidArgument(format!(
            "highest weight embedding needs odd l and n >= 3, got l = {l}, n = {n}"
        )));
    }
    let vectors = on_backend!(l, backend, |b| {
        let sq = b.sigma().square();
        let plus = b.sigma().plus_subspace();
        let d = l + 1;
        let mut quot = b.quotient_tower(Kind::Sym, max_block)?;
        let mut tail: Tensor<_> = BTreeMap::new();
        tail.insert(vec![0; n - 2], Field::one());
        let mut out = Vec::new();
        for i in 0..=(l - 1) / 2 {
            let weight = 2 * l as i64 - 4 * i as i64;
            let hw = sq.highest_weight_vectors(weight).intersection(plus)?;
            if hw.dim() != 1 {
                return Err(Error::InconsistentModule(format!(
                    "symmetric square has {} highest weight vectors of weight {weight}",
                    hw.dim()
                )));
            }
            let u: Tensor<_> = hw
                .basis()
                .row(0)
                .iter()
                .enumerate()
                .filter(|(_, x)| !Field::is_zero(*x))
                .map(|(ij, x)| (vec![ij / d, ij % d], x.clone()))
                .collect();
            let x = tensor_product(&u, &tail);
            let killed_by_e = apply_e(b.module(), &x).is_empty();
            let outside_ideal = !quot.project(n, &x)?.is_empty();
            out.push(HwVectorCheck {
                weight: weight + (n as i64 - 2) * l as i64,
                killed_by_e,
                outside_ideal,
            });
        }
        Ok(out)
    })?;
    let pass = vectors.len() == (l + 1) / 2
        && vectors.iter().all(|v| v.killed_by_e && v.outside_ideal);
    Ok(HwEmbeddingReport { l, n, vectors, pass })
}
