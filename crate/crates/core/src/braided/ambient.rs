//! Direct computations inside `V^{⊗n}`, one weight block at a time.
//!
//! These materialize the full weight blocks of the tensor power and are
//! only practical for small cases; the towers handle the rest. They serve
//! as independent references for the tower results.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use super::sigma::SigmaOperator;
use crate::error::{Error, Result};
use crate::exactla::{kernel, Matrix, Subspace};
use crate::qscalar::Field;
use crate::uqsl2::{ModuleRep, SparseCol};

/// Sparse element of `V^{⊗n}`: index words to coefficients.
pub type Tensor<F> = BTreeMap<Vec<usize>, F>;

/// A subspace of `V^{⊗n}` stored as one subspace per weight block.
#[derive(Clone, Debug)]
pub struct BlockedSubspace<F> {
    pub n: usize,
    pub blocks: BTreeMap<i64, AmbientBlock<F>>,
}

/// Words of one weight (ascending lexicographic) and a subspace of their span.
#[derive(Clone, Debug)]
pub struct AmbientBlock<F> {
    pub words: Vec<Vec<usize>>,
    pub space: Subspace<F>,
}

impl<F: Field> BlockedSubspace<F> {
    pub fn dim(&self) -> usize {
        self.blocks.values().map(|b| b.space.dim()).sum()
    }

    pub fn weight_dims(&self) -> BTreeMap<i64, usize> {
        self.blocks
            .iter()
            .filter(|(_, b)| b.space.dim() > 0)
            .map(|(&w, b)| (w, b.space.dim()))
            .collect()
    }

    /// Membership of a homogeneous or inhomogeneous tensor.
    pub fn contains(&self, x: &Tensor<F>) -> bool {
        let mut by_weight: BTreeMap<i64, Vec<(&Vec<usize>, &F)>> = BTreeMap::new();
        for (w, c) in x {
            if c.is_zero() {
                continue;
            }
            let wt = self.word_weight(w);
            match wt {
                Some(wt) => by_weight.entry(wt).or_default().push((w, c)),
                None => return false,
            }
        }
        by_weight.into_iter().all(|(wt, terms)| {
            let blk = &self.blocks[&wt];
            let mut v = vec![F::zero(); blk.words.len()];
            for (w, c) in terms {
                match blk.words.binary_search(w) {
                    Ok(i) => v[i] = c.clone(),
                    Err(_) => return false,
                }
            }
            blk.space.contains(&v)
        })
    }

    fn word_weight(&self, word: &[usize]) -> Option<i64> {
        self.blocks
            .iter()
            .find(|(_, b)| b.words.binary_search(&word.to_vec()).is_ok())
            .map(|(&w, _)| w)
    }
}

/// All words of length `n` over the basis of `v` with total weight `w`,
/// ascending.
pub fn words_of_weight<F: Field>(v: &ModuleRep<F>, n: usize, w: i64) -> Vec<Vec<usize>> {
    let ws = v.weights();
    let (hi, lo) = (
        *ws.iter().max().unwrap_or(&0),
        *ws.iter().min().unwrap_or(&0),
    );
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(
        ws: &[i64],
        n: usize,
        rest: i64,
        hi: i64,
        lo: i64,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let left = (n - cur.len()) as i64;
        if left == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rest > left * hi || rest < left * lo {
            return;
        }
        for (i, &wi) in ws.iter().enumerate() {
            cur.push(i);
            rec(ws, n, rest - wi, hi, lo, cur, out);
            cur.pop();
        }
    }
    rec(ws, n, w, hi, lo, &mut cur, &mut out);
    out
}

/// Weights of `V^{⊗n}`, descending.
fn weights_of_power<F: Field>(v: &ModuleRep<F>, n: usize) -> Vec<i64> {
    let top = *v.weights().iter().max().unwrap_or(&0) * n as i64;
    (0..=top).map(|k| top - 2 * k).collect()
}

fn limit(size: usize, max_block: usize, w: i64) -> Result<()> {
    if size > max_block {
        return Err(Error::ResourceLimit {
            what: format!("ambient weight block {w}"),
            size,
            limit: max_block,
        });
    }
    Ok(())
}

/// `∩_i Ker(σ_{i,i+1} - sign)` computed directly in each weight block, with
/// `sign = 1` for symmetric and `-1` for exterior powers.
pub fn braided_power_direct<F: Field>(
    sigma: &SigmaOperator<F>,
    v: &ModuleRep<F>,
    n: usize,
    sign: i64,
    max_block: usize,
) -> Result<BlockedSubspace<F>> {
    let d = v.dim();
    let op = sigma.shifted_cols(-sign);
    let blocks: Vec<Result<(i64, AmbientBlock<F>)>> = weights_of_power(v, n)
        .into_par_iter()
        .map(|w| {
            let words = words_of_weight(v, n, w);
            limit(words.len(), max_block, w)?;
            let index: HashMap<&Vec<usize>, usize> =
                words.iter().enumerate().map(|(i, x)| (x, i)).collect();
            let nw = words.len();
            let slots = n.saturating_sub(1);
            let mut m = Matrix::<F>::zeros(slots * nw, nw);
            for k in 0..slots {
                for (c, word) in words.iter().enumerate() {
                    for (r, x) in &op[word[k] * d + word[k + 1]] {
                        let mut u = word.clone();
                        u[k] = r / d;
                        u[k + 1] = r % d;
                        let row = k * nw + index[&u];
                        let y = m.get(row, c).add(x);
                        m.set(row, c, y);
                    }
                }
            }
            let space = if slots == 0 {
                Subspace::full(nw)
            } else {
                kernel(&m)
            };
            Ok((w, AmbientBlock { words, space }))
        })
        .collect();
    Ok(BlockedSubspace {
        n,
        blocks: blocks.into_iter().collect::<Result<_>>()?,
    })
}

/// Degree-`n` component `Σ_i V^{⊗i} ⊗ G ⊗ V^{⊗(n-2-i)}` of the two-sided
/// ideal generated by `G ⊂ V ⊗ V`.
pub fn ideal_component<F: Field>(
    v: &ModuleRep<F>,
    n: usize,
    gen: &Subspace<F>,
    max_block: usize,
) -> Result<BlockedSubspace<F>> {
    assert!(n >= 2, "ideal components start in degree two");
    let d = v.dim();
    if gen.ambient() != d * d {
        return Err(Error::AmbientMismatch {
            left: gen.ambient(),
            right: d * d,
        });
    }
    let gens: Vec<SparseCol<F>> = gen
        .basis_vectors()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect()
        })
        .collect();
    let wt = |ij: usize| v.weights()[ij / d] + v.weights()[ij % d];
    let blocks: Vec<Result<(i64, AmbientBlock<F>)>> = weights_of_power(v, n)
        .into_par_iter()
        .map(|w| {
            let words = words_of_weight(v, n, w);
            limit(words.len(), max_block, w)?;
            let index: HashMap<&Vec<usize>, usize> =
                words.iter().enumerate().map(|(i, x)| (x, i)).collect();
            let mut seen = BTreeSet::new();
            let mut vectors = Vec::new();
            for word in &words {
                for k in 0..n - 1 {
                    let pair_w = wt(word[k] * d + word[k + 1]);
                    for (g_idx, g) in gens.iter().enumerate() {
                        if wt(g[0].0) != pair_w {
                            continue;
                        }
                        let mut ctx = word.clone();
                        ctx[k] = 0;
                        ctx[k + 1] = 0;
                        if !seen.insert((k, ctx.clone(), g_idx)) {
                            continue;
                        }
                        let mut vec = vec![F::zero(); words.len()];
                        for (ij, c) in g {
                            let mut u = ctx.clone();
                            u[k] = ij / d;
                            u[k + 1] = ij % d;
                            vec[index[&u]] = c.clone();
                        }
                        vectors.push(vec);
                    }
                }
            }
            let space = Subspace::span(words.len(), vectors);
            Ok((w, AmbientBlock { words, space }))
        })
        .collect();
    Ok(BlockedSubspace {
        n,
        blocks: blocks.into_iter().collect::<Result<_>>()?,
    })
}

/// `E` acting on a sparse element of `V^{⊗n}` through the iterated
/// coproduct `Σ_k K^{⊗k} ⊗ E ⊗ 1^{⊗(n-k-1)}`.
pub fn apply_e<F: Field>(v: &ModuleRep<F>, x: &Tensor<F>) -> Tensor<F> {
    let mut out: Tensor<F> = BTreeMap::new();
    for (word, c) in x {
        let mut wsum = 0;
        for k in 0..word.len() {
            let kq = v.q().pow(wsum);
            for (r, y) in &v.e_cols()[word[k]] {
                let mut u = word.clone();
                u[k] = *r;
                let e = out.entry(u).or_insert_with(F::zero);
                *e = e.add(&c.mul(&kq).mul(y));
            }
            wsum += v.weights()[word[k]];
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// Tensor product of sparse tensors.
pub fn tensor_product<F: Field>(a: &Tensor<F>, b: &Tensor<F>) -> Tensor<F> {
    let mut out = BTreeMap::new();
    for (u, x) in a {
        for (w, y) in b {
            let mut word = u.clone();
            word.extend_from_slice(w);
            out.insert(word, x.mul(y));
        }
    }
    out
}
