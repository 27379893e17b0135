//! Degree-by-degree constructions of braided powers without forming the
//! full tensor power.
//!
//! The intersection tower realizes `X_n = ∩ Ker(σ_{i,i+1} ∓ 1)` inside
//! `X_{n-1} ⊗ V`, using `X_n = (X_{n-1} ⊗ V) ∩ (V^{⊗(n-2)} ⊗ X_2)`. The
//! quotient tower realizes `A_n = V^{⊗n} / ⟨G⟩_n` as a quotient of
//! `A_{n-1} ⊗ V` by the image of `A_{n-2} ⊗ G`. In both, the basis of
//! `X_{n-1} ⊗ V` is indexed by pairs `a * (ℓ + 1) + j`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{kernel, rref_in_place, Matrix, Subspace};
use crate::qscalar::Field;
use crate::uqsl2::{ModuleRep, SparseCol};

/// Weight of each pair index of `X ⊗ V`, grouped by weight (descending),
/// with pair indices ascending inside each group.
fn pairs_by_weight(xw: &[i64], vw: &[i64]) -> Vec<(i64, Vec<usize>)> {
    let d = vw.len();
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (a, &wa) in xw.iter().enumerate() {
        for (j, &wj) in vw.iter().enumerate() {
            groups.entry(wa + wj).or_default().push(a * d + j);
        }
    }
    groups.into_iter().rev().collect()
}

fn add_into<F: Field>(acc: &mut BTreeMap<usize, F>, i: usize, x: F) {
    if x.is_zero() {
        return;
    }
    match acc.get_mut(&i) {
        Some(v) => {
            *v = v.add(&x);
            if v.is_zero() {
                acc.remove(&i);
            }
        }
        None => {
            acc.insert(i, x);
        }
    }
}

/// Apply `E` or `F` of `X ⊗ V` (coproduct form) to one pair basis vector.
fn pair_action<F: Field>(
    x: &ModuleRep<F>,
    v: &ModuleRep<F>,
    pair: usize,
    raise: bool,
) -> BTreeMap<usize, F> {
    let d = v.dim();
    let (a, j) = (pair / d, pair % d);
    let q = v.q();
    let mut out = BTreeMap::new();
    if raise {
        // E ⊗ 1 + K ⊗ E
        for (a2, c) in &x.e_cols()[a] {
            add_into(&mut out, a2 * d + j, c.clone());
        }
        let k = q.pow(x.weights()[a]);
        for (j2, c) in &v.e_cols()[j] {
            add_into(&mut out, a * d + j2, k.mul(c));
        }
    } else {
        // F ⊗ K⁻¹ + 1 ⊗ F
        let k = q.pow(-v.weights()[j]);
        for (a2, c) in &x.f_cols()[a] {
            add_into(&mut out, a2 * d + j, k.mul(c));
        }
        for (j2, c) in &v.f_cols()[j] {
            add_into(&mut out, a * d + j2, c.clone());
        }
    }
    out
}

fn trivial_module<F: Field>(v: &ModuleRep<F>) -> ModuleRep<F> {
    ModuleRep::simple(0, v.flavor(), v.q().clone())
}

fn check_block(what: &str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::ResourceLimit {
            what: what.to_string(),
            size,
            limit,
        });
    }
    Ok(())
}

/// One weight block of a tower level inside `X_{n-1} ⊗ V`.
#[derive(Clone, Debug)]
struct Block<F> {
    weight: i64,
    /// Pair indices spanning the block, ascending.
    pairs: Vec<usize>,
    /// Global index of the first basis vector of this block.
    offset: usize,
    space: Subspace<F>,
}

/// Degree `n` of an intersection tower.
#[derive(Clone, Debug)]
pub struct SubLevel<F> {
    /// Expansion of each basis vector in pair coordinates of `X_{n-1} ⊗ V`.
    incl: Vec<SparseCol<F>>,
    module: ModuleRep<F>,
}

impl<F: Field> SubLevel<F> {
    pub fn module(&self) -> &ModuleRep<F> {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn inclusion(&self) -> &[SparseCol<F>] {
        &self.incl
    }
}

/// Braided symmetric (`σ - 1`) or exterior (`σ + 1`) powers by recursion on
/// the degree.
#[derive(Clone, Debug)]
pub struct IntersectionTower<F> {
    v: ModuleRep<F>,
    /// Sparse columns of `σ ∓ 1` on `V ⊗ V`.
    op: Vec<SparseCol<F>>,
    levels: Vec<SubLevel<F>>,
    max_block: usize,
    systems: Option<Vec<Matrix<F>>>,
}

impl<F: Field> IntersectionTower<F> {
    /// `op` holds the columns of the operator whose kernel defines degree 2.
    pub fn new(v: ModuleRep<F>, op: Vec<SparseCol<F>>, max_block: usize) -> Self {
        let d = v.dim();
        let triv = trivial_module(&v);
        let level0 = SubLevel {
            incl: vec![Vec::new()],
            module: triv,
        };
        // V_ℓ has one basis vector per weight, in descending weight order.
        let level1 = SubLevel {
            incl: (0..d).map(|j| vec![(j, F::one())]).collect(),
            module: v.clone(),
        };
        IntersectionTower {
            v,
            op,
            levels: vec![level0, level1],
            max_block,
            systems: None,
        }
    }

    /// Keep every kernel system built from now on, for rank audits.
    pub fn record_systems(&mut self) {
        self.systems.get_or_insert_with(Vec::new);
    }

    pub fn systems(&self) -> &[Matrix<F>] {
        self.systems.as_deref().unwrap_or(&[])
    }

    pub fn level(&mut self, n: usize) -> Result<&SubLevel<F>> {
        while self.levels.len() <= n {
            self.extend()?;
        }
        Ok(&self.levels[n])
    }

    fn extend(&mut self) -> Result<()> {
        let n = self.levels.len();
        let prev = &self.levels[n - 1];
        let d = self.v.dim();
        let groups = pairs_by_weight(prev.module.weights(), self.v.weights());
        let max_block = self.max_block;
        let op = &self.op;
        let present: Vec<i64> = groups.iter().map(|(w, _)| *w).collect();
        // Weight `w > 0` is recovered as `E^w` of weight `-w` (an isomorphism
        // on finite-dimensional modules), so only `w ≤ 0` needs a kernel.
        let mirrored = |w: i64| w > 0 && present.contains(&-w);
        let solved: Vec<Result<(i64, Vec<usize>, Option<Matrix<F>>, Subspace<F>)>> = groups
            .par_iter()
            .filter(|(weight, _)| !mirrored(*weight))
            .map(|(weight, pairs)| {
                let (weight, pairs) = (*weight, pairs.clone());
                check_block(&format!("degree {n} weight {weight} columns"), pairs.len(), max_block)?;
                // Rows are triples (b, i', j') of X_{n-2} ⊗ V ⊗ V.
                let mut row_of: HashMap<usize, usize> = HashMap::new();
                let mut entries: Vec<(usize, usize, F)> = Vec::new();
                for (c, &p) in pairs.iter().enumerate() {
                    let (a, j) = (p / d, p % d);
                    for (bi, coef) in &prev.incl[a] {
                        let (b, i) = (bi / d, bi % d);
                        for (r, x) in &op[i * d + j] {
                            let key = b * d * d + r;
                            let next = row_of.len();
                            let row = *row_of.entry(key).or_insert(next);
                            entries.push((row, c, coef.mul(x)));
                        }
                    }
                }
                check_block(&format!("degree {n} weight {weight} rows"), row_of.len(), max_block)?;
                let mut m = Matrix::<F>::zeros(row_of.len(), pairs.len());
                for (r, c, x) in entries {
                    let y = m.get(r, c).add(&x);
                    m.set(r, c, y);
                }
                let space = kernel(&m);
                Ok((weight, pairs, Some(m), space))
            })
            .collect();
        let mut by_weight: BTreeMap<i64, (Vec<usize>, Option<Matrix<F>>, Subspace<F>)> = BTreeMap::new();
        for res in solved {
            let (w, pairs, m, space) = res?;
            by_weight.insert(w, (pairs, m, space));
        }
        for (w, pairs) in groups.iter().filter(|(w, _)| mirrored(*w)) {
            check_block(&format!("degree {n} weight {w} columns"), pairs.len(), max_block)?;
            let (low_pairs, _, low) = &by_weight[&-w];
            let raised: Vec<Vec<F>> = low
                .basis_vectors()
                .map(|row| {
                    let mut cur: BTreeMap<usize, F> = row
                        .iter()
                        .zip(low_pairs)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, p)| (*p, x.clone()))
                        .collect();
                    for _ in 0..*w {
                        let mut next = BTreeMap::new();
                        for (p, c) in cur {
                            for (p2, x) in pair_action(&prev.module, &self.v, p, true) {
                                add_into(&mut next, p2, c.mul(&x));
                            }
                        }
                        cur = next;
                    }
                    let mut dense = vec![F::zero(); pairs.len()];
                    for (p, x) in cur {
                        let t = pairs.binary_search(&p).expect("raised vector stays in its weight block");
                        dense[t] = x;
                    }
                    dense
                })
                .collect();
            let space = Subspace::span(pairs.len(), raised);
            if space.dim() != low.dim() {
                return Err(Error::InconsistentModule(format!(
                    "degree {n}: E^{w} is not injective on weight {}",
                    -w
                )));
            }
            by_weight.insert(*w, (pairs.clone(), None, space));
        }
        let mut blocks = Vec::new();
        let mut incl = Vec::new();
        let mut weights = Vec::new();
        let mut systems = Vec::new();
        for (w, (pairs, m, space)) in by_weight.into_iter().rev() {
            let offset = incl.len();
            for row in space.basis_vectors() {
                incl.push(
                    row.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(t, x)| (pairs[t], x.clone()))
                        .collect(),
                );
                weights.push(w);
            }
            if let (Some(m), true) = (m, self.systems.is_some()) {
                systems.push(m);
            }
            blocks.push(Block {
                weight: w,
                pairs,
                offset,
                space,
            });
        }
        let module = self.restricted_module(&blocks, &incl, weights, n)?;
        if let Some(s) = self.systems.as_mut() {
            s.extend(systems);
        }
        self.levels.push(SubLevel {
            incl,
            module,
        });
        Ok(())
    }

    fn restricted_module(
        &self,
        blocks: &[Block<F>],
        incl: &[SparseCol<F>],
        weights: Vec<i64>,
        n: usize,
    ) -> Result<ModuleRep<F>> {
        let prev = &self.levels[n - 1].module;
        let by_weight: HashMap<i64, &Block<F>> = blocks.iter().map(|b| (b.weight, b)).collect();
        let act = |raise: bool| -> Result<Vec<SparseCol<F>>> {
            (0..incl.len())
                .into_par_iter()
                .map(|s| {
                    let mut acc = BTreeMap::new();
                    for (p, c) in &incl[s] {
                        for (p2, x) in pair_action(prev, &self.v, *p, raise) {
                            add_into(&mut acc, p2, c.mul(&x));
                        }
                    }
                    if acc.is_empty() {
                        return Ok(Vec::new());
                    }
                    let target = weights[s] + if raise { 2 } else { -2 };
                    let blk = by_weight.get(&target).ok_or_else(|| {
                        Error::InconsistentModule(format!("degree {n}: image leaves the subspace"))
                    })?;
                    let mut dense = vec![F::zero(); blk.pairs.len()];
                    for (p, x) in acc {
                        let t = blk.pairs.binary_search(&p).map_err(|_| {
                            Error::InconsistentModule(format!("degree {n}: image outside block"))
                        })?;
                        dense[t] = x;
                    }
                    let coords = blk.space.coordinates(&dense).ok_or_else(|| {
                        Error::InconsistentModule(format!("degree {n}: subspace not invariant"))
                    })?;
                    Ok(coords
                        .into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| (blk.offset + k, x))
                        .collect())
                })
                .collect()
        };
        let e = act(true)?;
        let f = act(false)?;
        let labels = (0..weights.len()).map(|i| format!("s{n}_{i}")).collect();
        ModuleRep::from_parts(self.v.flavor(), self.v.q().clone(), weights, e, f, labels)
    }

    /// Expand a basis vector of degree `n` into `V^{⊗n}`, as a sparse map
    /// from index words to coefficients.
    pub fn expand(&mut self, n: usize, index: usize) -> Result<BTreeMap<Vec<usize>, F>> {
        self.level(n)?;
        Ok(self.expand_vec(n, &[(index, F::one())]))
    }

    fn expand_vec(&self, n: usize, v: &[(usize, F)]) -> BTreeMap<Vec<usize>, F> {
        let d = self.v.dim();
        let mut out: BTreeMap<Vec<usize>, F> = BTreeMap::new();
        if n == 0 {
            for (_, c) in v {
                out.insert(Vec::new(), c.clone());
            }
            return out;
        }
        let mut lower: BTreeMap<usize, BTreeMap<usize, F>> = BTreeMap::new();
        for (s, c) in v {
            for (p, x) in &self.levels[n].incl[*s] {
                let e = lower.entry(p % d).or_default();
                add_into(e, p / d, c.mul(x));
            }
        }
        for (j, coeffs) in lower {
            let sub: Vec<(usize, F)> = coeffs.into_iter().collect();
            for (mut word, x) in self.expand_vec(n - 1, &sub) {
                word.push(j);
                let e = out.entry(word).or_insert_with(F::zero);
                *e = e.add(&x);
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }
}

/// Degree `n` of a quotient tower.
#[derive(Clone, Debug)]
pub struct QuotLevel<F> {
    /// Pair index in `A_{n-1} ⊗ V` of each basis vector.
    basis_pairs: Vec<usize>,
    /// Image in `A_n` of every pair basis vector of `A_{n-1} ⊗ V`.
    mu: Vec<SparseCol<F>>,
    module: ModuleRep<F>,
}

impl<F: Field> QuotLevel<F> {
    pub fn module(&self) -> &ModuleRep<F> {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn basis_pairs(&self) -> &[usize] {
        &self.basis_pairs
    }
}

/// Graded components of `T(V) / ⟨G⟩` for a subspace `G ⊂ V ⊗ V` spanned by
/// weight vectors.
#[derive(Clone, Debug)]
pub struct QuotientTower<F> {
    v: ModuleRep<F>,
    /// Generators as sparse vectors over `i * (ℓ + 1) + j`, each of one weight.
    gens: Vec<(i64, SparseCol<F>)>,
    levels: Vec<QuotLevel<F>>,
    max_block: usize,
    systems: Option<Vec<Matrix<F>>>,
}

impl<F: Field> QuotientTower<F> {
    pub fn new(v: ModuleRep<F>, gens: &Subspace<F>, max_block: usize) -> Result<Self> {
        let d = v.dim();
        assert_eq!(gens.ambient(), d * d, "generators must live in V ⊗ V");
        let mut g = Vec::new();
        for row in gens.basis_vectors() {
            let sparse: SparseCol<F> = row
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect();
            let ws: Vec<i64> = sparse
                .iter()
                .map(|(i, _)| v.weights()[i / d] + v.weights()[i % d])
                .collect();
            if ws.windows(2).any(|p| p[0] != p[1]) {
                return Err(Error::InconsistentModule(
                    "quadratic generators are not weight vectors".into(),
                ));
            }
            if let Some(&w) = ws.first() {
                g.push((w, sparse));
            }
        }
        let triv = trivial_module(&v);
        let level0 = QuotLevel {
            basis_pairs: vec![0],
            mu: vec![vec![(0, F::one())]],
            module: triv,
        };
        let level1 = QuotLevel {
            basis_pairs: (0..d).collect(),
            mu: (0..d).map(|j| vec![(j, F::one())]).collect(),
            module: v.clone(),
        };
        Ok(QuotientTower {
            v,
            gens: g,
            levels: vec![level0, level1],
            max_block,
            systems: None,
        })
    }

    /// Keep every relation matrix built from now on, for rank audits.
    pub fn record_systems(&mut self) {
        self.systems.get_or_insert_with(Vec::new);
    }

    pub fn systems(&self) -> &[Matrix<F>] {
        self.systems.as_deref().unwrap_or(&[])
    }

    pub fn level(&mut self, n: usize) -> Result<&QuotLevel<F>> {
        while self.levels.len() <= n {
            self.extend()?;
        }
        Ok(&self.levels[n])
    }

    fn extend(&mut self) -> Result<()> {
        let n = self.levels.len();
        let d = self.v.dim();
        let prev = &self.levels[n - 1];
        let prev2 = &self.levels[n - 2];
        let groups = pairs_by_weight(prev.module.weights(), self.v.weights());
        // Relations Σ g_ij μ_{n-1}(b ⊗ v_i) ⊗ v_j, grouped by weight.
        let mut rels: BTreeMap<i64, Vec<BTreeMap<usize, F>>> = BTreeMap::new();
        for b in 0..prev2.dim() {
            let wb = prev2.module.weights()[b];
            for (wg, g) in &self.gens {
                let mut acc = BTreeMap::new();
                for (ij, c) in g {
                    let (i, j) = (ij / d, ij % d);
                    for (a, x) in &prev.mu[b * d + i] {
                        add_into(&mut acc, a * d + j, c.mul(x));
                    }
                }
                if !acc.is_empty() {
                    rels.entry(wb + wg).or_default().push(acc);
                }
            }
        }
        let max_block = self.max_block;
        let record = self.systems.is_some();
        let solved: Vec<Result<(i64, Vec<usize>, Matrix<F>, Vec<usize>, Option<Matrix<F>>)>> = groups
            .into_par_iter()
            .map(|(weight, pairs)| {
                check_block(&format!("degree {n} weight {weight} columns"), pairs.len(), max_block)?;
                let rows = rels.get(&weight).map_or(&[][..], |r| &r[..]);
                check_block(&format!("degree {n} weight {weight} relations"), rows.len(), max_block)?;
                let mut m = Matrix::zeros(rows.len(), pairs.len());
                for (r, rel) in rows.iter().enumerate() {
                    for (p, x) in rel {
                        let c = pairs.binary_search(p).expect("relation in its weight block");
                        m.set(r, c, x.clone());
                    }
                }
                let original = record.then(|| m.clone());
                let pivots = rref_in_place(&mut m);
                Ok((weight, pairs, m, pivots, original))
            })
            .collect();
        let mut recorded = Vec::new();
        let mut total_pairs = prev.dim() * d;
        let mut mu: Vec<SparseCol<F>> = vec![Vec::new(); total_pairs];
        let mut basis_pairs = Vec::new();
        let mut weights = Vec::new();
        for res in solved {
            let (weight, pairs, m, pivots, original) = res?;
            recorded.extend(original);
            let offset = basis_pairs.len();
            let mut local = vec![usize::MAX; pairs.len()];
            let mut is_pivot = vec![false; pairs.len()];
            for &p in &pivots {
                is_pivot[p] = true;
            }
            for (t, &p) in pairs.iter().enumerate() {
                if !is_pivot[t] {
                    local[t] = basis_pairs.len() - offset;
                    basis_pairs.push(p);
                    weights.push(weight);
                    mu[p] = vec![(offset + local[t], F::one())];
                }
            }
            for (r, &pc) in pivots.iter().enumerate() {
                mu[pairs[pc]] = (0..pairs.len())
                    .filter(|&t| !is_pivot[t] && !m.get(r, t).is_zero())
                    .map(|t| (offset + local[t], m.get(r, t).neg()))
                    .collect();
            }
            total_pairs -= pairs.len();
        }
        debug_assert_eq!(total_pairs, 0);
        let act = |raise: bool| -> Vec<SparseCol<F>> {
            basis_pairs
                .par_iter()
                .map(|&p| {
                    let mut acc = BTreeMap::new();
                    for (p2, x) in pair_action(&prev.module, &self.v, p, raise) {
                        for (k, y) in &mu[p2] {
                            add_into(&mut acc, *k, x.mul(y));
                        }
                    }
                    acc.into_iter().collect()
                })
                .collect()
        };
        let e = act(true);
        let f = act(false);
        let labels = (0..weights.len()).map(|i| format!("a{n}_{i}")).collect();
        let module = ModuleRep::from_parts(self.v.flavor(), self.v.q().clone(), weights, e, f, labels)?;
        if let Some(s) = self.systems.as_mut() {
            s.extend(recorded);
        }
        self.levels.push(QuotLevel {
            basis_pairs,
            mu,
            module,
        });
        Ok(())
    }

    /// Word `i_1 … i_n` whose image `v_{i_1} ⋯ v_{i_n}` is basis vector
    /// `index` of `A_n`.
    pub fn basis_word(&mut self, n: usize, index: usize) -> Result<Vec<usize>> {
        self.level(n)?;
        let d = self.v.dim();
        let mut word = vec![0; n];
        let mut idx = index;
        for k in (1..=n).rev() {
            let p = self.levels[k].basis_pairs[idx];
            word[k - 1] = p % d;
            idx = p / d;
        }
        Ok(word)
    }

    /// Product in the quotient algebra of `x ∈ A_m` and `y ∈ A_n`.
    pub fn multiply(&mut self, m: usize, x: &[(usize, F)], n: usize, y: &[(usize, F)]) -> Result<SparseCol<F>> {
        self.level(m + n)?;
        let d = self.v.dim();
        let mut total = BTreeMap::new();
        for (t, yt) in y {
            let word = self.basis_word(n, *t)?;
            let mut cur: BTreeMap<usize, F> = x.iter().map(|(s, xs)| (*s, xs.mul(yt))).collect();
            for (k, &j) in word.iter().enumerate() {
                let mut next = BTreeMap::new();
                for (a, c) in cur {
                    for (b, z) in &self.levels[m + k + 1].mu[a * d + j] {
                        add_into(&mut next, *b, c.mul(z));
                    }
                }
                cur = next;
            }
            for (a, c) in cur {
                add_into(&mut total, a, c);
            }
        }
        Ok(total.into_iter().collect())
    }

    /// Image in `A_n` of an element of `V^{⊗n}` given as a sparse map from
    /// index words of length `n` to coefficients.
    pub fn project(&mut self, n: usize, x: &BTreeMap<Vec<usize>, F>) -> Result<SparseCol<F>> {
        self.level(n)?;
        let d = self.v.dim();
        let mut total = BTreeMap::new();
        for (word, c) in x {
            assert_eq!(word.len(), n, "word length");
            if n == 0 {
                add_into(&mut total, 0, c.clone());
                continue;
            }
            let mut cur: BTreeMap<usize, F> = BTreeMap::new();
            cur.insert(word[0], c.clone());
            for (k, &j) in word.iter().enumerate().skip(1) {
                let mut next = BTreeMap::new();
                for (a, x) in cur {
                    for (b, y) in &self.levels[k + 1].mu[a * d + j] {
                        add_into(&mut next, *b, x.mul(y));
                    }
                }
                cur = next;
            }
            for (a, x) in cur {
                add_into(&mut total, a, x);
            }
        }
        Ok(total.into_iter().collect())
    }
}
