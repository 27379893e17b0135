//! Finite-dimensional weight modules for `U_q(sl₂)` and its classical limit.
//!
//! A [`ModuleRep`] is generic over the scalar field: the same code handles
//! generic `q` (coefficients in ℚ(q)), a rational specialization `q = q0`,
//! and the classical algebra (`q = 1` with the classical relations). `K` is
//! never stored; it acts on a weight vector of weight `w` by `q^w`.

mod decomposition;

pub use decomposition::{Component, Decomposition};

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{kernel, Matrix, Subspace};
use crate::qscalar::{Field, RatFunc, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Quantum,
    Classical,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Quantum => "quantum",
            Flavor::Classical => "classical",
        })
    }
}

/// Sparse column: `(row, value)` pairs with nonzero values, rows ascending.
pub type SparseCol<F> = Vec<(usize, F)>;

/// `[n]_q = q^{n-1} + q^{n-3} + … + q^{1-n}` evaluated at `q`, with
/// `[-n] = -[n]`. At `q = 1` this is `n`.
pub fn quantum_int<F: Field>(q: &F, n: i64) -> F {
    if n < 0 {
        return quantum_int(q, -n).neg();
    }
    (0..n).fold(F::zero(), |acc, k| acc.add(&q.pow(n - 1 - 2 * k)))
}

/// Weight module with a basis of weight vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleRep<F> {
    flavor: Flavor,
    q: F,
    weights: Vec<i64>,
    e: Vec<SparseCol<F>>,
    f: Vec<SparseCol<F>>,
    labels: Vec<String>,
}

impl<F: fmt::Debug> fmt::Debug for ModuleRep<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleRep")
            .field("flavor", &self.flavor)
            .field("q", &self.q)
            .field("weights", &self.weights)
            .finish_non_exhaustive()
    }
}

impl ModuleRep<RatFunc> {
    /// Irreducible `V_ℓ` over ℚ(q).
    pub fn simple_generic(l: usize) -> Self {
        Self::simple(l, Flavor::Quantum, RatFunc::q())
    }

    /// Evaluate all structure constants at `q = q0`.
    pub fn specialize(&self, q0: &Rational) -> Result<ModuleRep<Rational>> {
        let map = |cols: &[SparseCol<RatFunc>]| -> Result<Vec<SparseCol<Rational>>> {
            cols.iter()
                .map(|c| {
                    c.iter()
                        .map(|(i, x)| Ok((*i, x.specialize(q0)?)))
                        .filter(|r: &Result<(usize, Rational)>| {
                            r.as_ref().map_or(true, |(_, v)| !v.is_zero())
                        })
                        .collect()
                })
                .collect()
        };
        let q = match self.flavor {
            Flavor::Quantum => q0.clone(),
            Flavor::Classical => Rational::one(),
        };
        ModuleRep::from_parts(
            self.flavor,
            q,
            self.weights.clone(),
            map(&self.e)?,
            map(&self.f)?,
            self.labels.clone(),
        )
    }
}

impl ModuleRep<Rational> {
    /// Classical irreducible `V̄_ℓ` over ℚ.
    pub fn simple_classical(l: usize) -> Self {
        Self::simple(l, Flavor::Classical, Rational::one())
    }
}

impl<F: Field> ModuleRep<F> {
    /// Irreducible module of highest weight `ℓ` with basis `v_0..v_ℓ`,
    /// `E v_i = [i] v_{i-1}`, `F v_i = [ℓ-i] v_{i+1}`, weight of `v_i` is
    /// `ℓ - 2i`. For the classical flavor `q` is ignored and taken as one.
    pub fn simple(l: usize, flavor: Flavor, q: F) -> Self {
        let q = match flavor {
            Flavor::Quantum => q,
            Flavor::Classical => F::one(),
        };
        let l = l as i64;
        let mut e = Vec::new();
        let mut f = Vec::new();
        for i in 0..=l {
            e.push(if i > 0 {
                vec![((i - 1) as usize, quantum_int(&q, i))]
            } else {
                Vec::new()
            });
            f.push(if i < l {
                vec![((i + 1) as usize, quantum_int(&q, l - i))]
            } else {
                Vec::new()
            });
        }
        let weights = (0..=l).map(|i| l - 2 * i).collect();
        let labels = (0..=l).map(|i| format!("v{i}")).collect();
        Self::from_parts(flavor, q, weights, e, f, labels)
            .expect("simple modules satisfy the defining relations")
    }

    /// Assemble a module from sparse column actions and verify the weight
    /// grading and the commutator relation.
    pub fn from_parts(
        flavor: Flavor,
        q: F,
        weights: Vec<i64>,
        e: Vec<SparseCol<F>>,
        f: Vec<SparseCol<F>>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let n = weights.len();
        if e.len() != n || f.len() != n || labels.len() != n {
            return Err(Error::InconsistentModule(format!(
                "action sizes {}/{}/{} for dimension {n}",
                e.len(),
                f.len(),
                labels.len()
            )));
        }
        let m = ModuleRep {
            flavor,
            q,
            weights,
            e,
            f,
            labels,
        };
        m.verify_relations()?;
        Ok(m)
    }

    /// Assemble from dense E and F matrices.
    pub fn from_matrices(
        flavor: Flavor,
        q: F,
        weights: Vec<i64>,
        e: &Matrix<F>,
        f: &Matrix<F>,
        labels: Vec<String>,
    ) -> Result<Self> {
        Self::from_parts(flavor, q, weights, dense_to_cols(e), dense_to_cols(f), labels)
    }

    /// Check `E` raises weight by 2, `F` lowers it by 2, and
    /// `EF - FE` acts on weight `w` by `[w]_q` (by `w` classically), which
    /// together with the grading is equivalent to the defining relations.
    pub fn verify_relations(&self) -> Result<()> {
        for j in 0..self.dim() {
            for &(i, _) in &self.e[j] {
                if self.weights[i] != self.weights[j] + 2 {
                    return Err(Error::InconsistentModule(format!(
                        "E maps basis {j} (weight {}) to basis {i} (weight {})",
                        self.weights[j], self.weights[i]
                    )));
                }
            }
            for &(i, _) in &self.f[j] {
                if self.weights[i] != self.weights[j] - 2 {
                    return Err(Error::InconsistentModule(format!(
                        "F maps basis {j} (weight {}) to basis {i} (weight {})",
                        self.weights[j], self.weights[i]
                    )));
                }
            }
        }
        let bad = (0..self.dim()).into_par_iter().find_first(|&j| {
            let ef = apply_cols(&self.e, &self.f[j]);
            let fe = apply_cols(&self.f, &self.e[j]);
            let expected = quantum_int(&self.q, self.weights[j]);
            let mut diff = sub_sparse(&ef, &fe);
            match diff.iter().position(|(i, _)| *i == j) {
                Some(p) => {
                    let (_, v) = diff.remove(p);
                    if v != expected {
                        return true;
                    }
                }
                None if !expected.is_zero() => return true,
                None => {}
            }
            !diff.is_empty()
        });
        match bad {
            Some(j) => Err(Error::InconsistentModule(format!(
                "commutator relation fails on basis vector {j}"
            ))),
            None => Ok(()),
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn e_cols(&self) -> &[SparseCol<F>] {
        &self.e
    }

    pub fn f_cols(&self) -> &[SparseCol<F>] {
        &self.f
    }

    pub fn e_mat(&self) -> Matrix<F> {
        cols_to_dense(&self.e, self.dim())
    }

    pub fn f_mat(&self) -> Matrix<F> {
        cols_to_dense(&self.f, self.dim())
    }

    /// Diagonal matrix of `K`, entries `q^{weight}`.
    pub fn k_mat(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (i, &w) in self.weights.iter().enumerate() {
            m.set(i, i, self.q.pow(w));
        }
        m
    }

    /// Diagonal matrix of `H`, entries the weights.
    pub fn h_mat(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (i, &w) in self.weights.iter().enumerate() {
            m.set(i, i, F::from_i64(w));
        }
        m
    }

    pub fn apply_e(&self, v: &[F]) -> Vec<F> {
        apply_dense(&self.e, v)
    }

    pub fn apply_f(&self, v: &[F]) -> Vec<F> {
        apply_dense(&self.f, v)
    }

    /// Tensor product via the coproduct `E ⊗ 1 + K ⊗ E`, `F ⊗ K⁻¹ + 1 ⊗ F`.
    /// At `q = 1` these are the Leibniz rules. Basis `a_i ⊗ b_j` is indexed
    /// by `i * dim(b) + j`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.flavor != other.flavor || self.q != other.q {
            return Err(Error::FlavorMismatch);
        }
        let (da, db) = (self.dim(), other.dim());
        let mut weights = Vec::with_capacity(da * db);
        let mut labels = Vec::with_capacity(da * db);
        let mut e = Vec::with_capacity(da * db);
        let mut f = Vec::with_capacity(da * db);
        for i in 0..da {
            let kw = self.q.pow(self.weights[i]);
            for j in 0..db {
                weights.push(self.weights[i] + other.weights[j]);
                labels.push(format!("{}⊗{}", self.labels[i], other.labels[j]));
                let mut ec: SparseCol<F> = self.e[i].iter().map(|(r, x)| (r * db + j, x.clone())).collect();
                ec.extend(other.e[j].iter().map(|(r, x)| (i * db + r, kw.mul(x))));
                ec.sort_by_key(|(r, _)| *r);
                e.push(ec);
                let kinv = self.q.pow(-other.weights[j]);
                let mut fc: SparseCol<F> = self.f[i].iter().map(|(r, x)| (r * db + j, kinv.mul(x))).collect();
                fc.extend(other.f[j].iter().map(|(r, x)| (i * db + r, x.clone())));
                fc.sort_by_key(|(r, _)| *r);
                f.push(fc);
            }
        }
        Self::from_parts(self.flavor, self.q.clone(), weights, e, f, labels)
    }

    /// `n`-fold tensor power (`n ≥ 1`).
    pub fn tensor_power(&self, n: usize) -> Result<Self> {
        assert!(n >= 1, "tensor power of degree zero");
        let mut m = self.clone();
        for _ in 1..n {
            m = m.tensor(self)?;
        }
        Ok(m)
    }

    /// Basis indices of weight `w`, ascending.
    pub fn weight_indices(&self, w: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.weights[i] == w).collect()
    }

    /// Distinct weights, descending.
    pub fn weight_set(&self) -> Vec<i64> {
        let mut ws: Vec<i64> = self.weights.clone();
        ws.sort_unstable_by(|a, b| b.cmp(a));
        ws.dedup();
        ws
    }

    pub fn weight_space(&self, w: i64) -> Subspace<F> {
        let n = self.dim();
        Subspace::span(
            n,
            self.weight_indices(w)
                .into_iter()
                .map(|i| unit(n, i))
                .collect(),
        )
    }

    /// Matrix of `E` from weight `w` to weight `w + 2`, in the ordering of
    /// [`weight_indices`](Self::weight_indices).
    pub fn e_block(&self, w: i64) -> Matrix<F> {
        self.block(&self.e, w, w + 2)
    }

    pub fn f_block(&self, w: i64) -> Matrix<F> {
        self.block(&self.f, w, w - 2)
    }

    fn block(&self, cols: &[SparseCol<F>], from: i64, to: i64) -> Matrix<F> {
        let src = self.weight_indices(from);
        let dst = self.weight_indices(to);
        let pos: BTreeMap<usize, usize> = dst.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut m = Matrix::zeros(dst.len(), src.len());
        for (c, &j) in src.iter().enumerate() {
            for (i, x) in &cols[j] {
                m.set(pos[i], c, x.clone());
            }
        }
        m
    }

    /// `Ker E ∩ weight_space(w)`.
    pub fn highest_weight_vectors(&self, w: i64) -> Subspace<F> {
        let idx = self.weight_indices(w);
        let ker = kernel(&self.e_block(w));
        let n = self.dim();
        Subspace::span(
            n,
            ker.basis_vectors()
                .map(|k| {
                    let mut v = vec![F::zero(); n];
                    for (x, &i) in k.iter().zip(&idx) {
                        v[i] = x.clone();
                    }
                    v
                })
                .collect(),
        )
    }

    /// Multiplicities from weight-space dimensions, cross-checked against
    /// the dimension of `Ker E` on each weight space.
    pub fn decompose(&self) -> Result<Decomposition> {
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        for &w in &self.weights {
            *dims.entry(w).or_default() += 1;
        }
        for (&w, &d) in &dims {
            if dims.get(&-w).copied() != Some(d) {
                return Err(Error::InconsistentModule(format!(
                    "weight {w} has dimension {d} but weight {} does not match",
                    -w
                )));
            }
        }
        let ws: Vec<i64> = dims.keys().copied().filter(|&w| w >= 0).collect();
        let parts: Vec<Result<Option<Component>>> = ws
            .par_iter()
            .map(|&w| {
                let d = dims[&w];
                let above = dims.get(&(w + 2)).copied().unwrap_or(0);
                if above > d {
                    return Err(Error::InconsistentModule(format!(
                        "weight {} has dimension {above} exceeding weight {w} ({d})",
                        w + 2
                    )));
                }
                let mult = d - above;
                let e = self.e_block(w);
                let ker = e.cols() - crate::exactla::rank(&e);
                if ker != mult {
                    return Err(Error::InconsistentModule(format!(
                        "weight {w}: dimension difference gives {mult}, Ker E gives {ker}"
                    )));
                }
                Ok((mult > 0).then_some(Component { hw: w, mult }))
            })
            .collect();
        let mut comps = Vec::new();
        for p in parts {
            if let Some(c) = p? {
                comps.push(c);
            }
        }
        Ok(Decomposition::new(comps))
    }

    /// Smallest `E`, `F`, `K`-stable subspace containing `vectors`. Inputs
    /// are first split into weight components, which is what `K`-stability
    /// forces for generic `q`.
    pub fn submodule_generated(&self, vectors: &[Vec<F>]) -> Subspace<F> {
        let n = self.dim();
        let mut found = Subspace::zero(n);
        let mut queue: Vec<Vec<F>> = Vec::new();
        for v in vectors {
            let mut by_weight: BTreeMap<i64, Vec<F>> = BTreeMap::new();
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    by_weight
                        .entry(self.weights[i])
                        .or_insert_with(|| vec![F::zero(); n])[i] = x.clone();
                }
            }
            queue.extend(by_weight.into_values());
        }
        while let Some(v) = queue.pop() {
            if found.contains(&v) {
                continue;
            }
            found = found
                .sum(&Subspace::span(n, vec![v.clone()]))
                .expect("same ambient");
            for w in [self.apply_e(&v), self.apply_f(&v)] {
                if w.iter().any(|x| !x.is_zero()) {
                    queue.push(w);
                }
            }
        }
        found
    }

    /// Restriction to an invariant subspace, in the RREF basis of `sub`.
    /// Fails if `sub` is not stable or not spanned by weight vectors.
    pub fn restrict(&self, sub: &Subspace<F>) -> Result<Self> {
        let mut weights = Vec::with_capacity(sub.dim());
        for v in sub.basis_vectors() {
            let ws: Vec<i64> = v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, _)| self.weights[i])
                .collect();
            if ws.windows(2).any(|p| p[0] != p[1]) {
                return Err(Error::InconsistentModule(
                    "subspace basis is not made of weight vectors".into(),
                ));
            }
            weights.push(ws[0]);
        }
        let coords = |cols: &[SparseCol<F>]| -> Result<Vec<SparseCol<F>>> {
            sub.basis_vectors()
                .map(|v| {
                    let image = apply_dense(cols, v);
                    let c = sub.coordinates(&image).ok_or_else(|| {
                        Error::InconsistentModule("subspace is not invariant".into())
                    })?;
                    Ok(c.into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .collect())
                })
                .collect()
        };
        let e = coords(&self.e)?;
        let f = coords(&self.f)?;
        let labels = (0..sub.dim()).map(|i| format!("b{i}")).collect();
        Self::from_parts(self.flavor, self.q.clone(), weights, e, f, labels)
    }
}

pub(crate) fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

fn dense_to_cols<F: Field>(m: &Matrix<F>) -> Vec<SparseCol<F>> {
    (0..m.cols())
        .map(|j| {
            (0..m.rows())
                .filter(|&i| !m.get(i, j).is_zero())
                .map(|i| (i, m.get(i, j).clone()))
                .collect()
        })
        .collect()
}

fn cols_to_dense<F: Field>(cols: &[SparseCol<F>], rows: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c {
            m.set(*i, j, x.clone());
        }
    }
    m
}

fn apply_dense<F: Field>(cols: &[SparseCol<F>], v: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); v.len()];
    for (j, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (i, a) in &cols[j] {
            out[*i] = out[*i].add(&a.mul(x));
        }
    }
    out
}

/// Apply a sparse operator to a sparse vector.
fn apply_cols<F: Field>(cols: &[SparseCol<F>], v: &SparseCol<F>) -> SparseCol<F> {
    let mut acc: BTreeMap<usize, F> = BTreeMap::new();
    for (j, x) in v {
        for (i, a) in &cols[*j] {
            let e = acc.entry(*i).or_insert_with(F::zero);
            *e = e.add(&a.mul(x));
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

fn sub_sparse<F: Field>(a: &SparseCol<F>, b: &SparseCol<F>) -> SparseCol<F> {
    let mut acc: BTreeMap<usize, F> = a.iter().cloned().collect();
    for (i, x) in b {
        let e = acc.entry(*i).or_insert_with(F::zero);
        *e = e.sub(x);
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::q_int;

    fn v(l: usize) -> ModuleRep<RatFunc> {
        ModuleRep::simple_generic(l)
    }

    #[test]
    fn simple_module_actions() {
        let v1 = v(1);
        assert_eq!(v1.e_cols()[1], vec![(0, RatFunc::one())]);
        assert_eq!(v1.f_cols()[0], vec![(1, RatFunc::one())]);
        assert_eq!(v1.k_mat().get(0, 0), &RatFunc::q());
        assert_eq!(v1.k_mat().get(1, 1), &RatFunc::q_pow(-1));
        let v2 = v(2);
        assert_eq!(v2.e_cols()[2], vec![(1, RatFunc::from_poly(q_int(2)))]);
        let v0 = v(0);
        assert_eq!(v0.dim(), 1);
        assert!(v0.e_mat().is_zero());
    }

    #[test]
    fn wrong_k_convention_is_rejected() {
        // Weights ℓ - i instead of ℓ - 2i break the grading of E.
        let good = v(2);
        let bad = ModuleRep::from_parts(
            Flavor::Quantum,
            RatFunc::q(),
            vec![2, 1, 0],
            good.e_cols().to_vec(),
            good.f_cols().to_vec(),
            good.labels().to_vec(),
        );
        assert!(matches!(bad, Err(Error::InconsistentModule(_))));
    }

    #[test]
    fn singlet_and_small_decompositions() {
        let v1 = v(1);
        let t = v1.tensor(&v1).unwrap();
        assert_eq!(t.weight_space(0).dim(), 2);
        let hw = t.highest_weight_vectors(0);
        assert_eq!(hw.dim(), 1);
        let gen = t.submodule_generated(&hw.basis_vectors().map(|x| x.to_vec()).collect::<Vec<_>>());
        assert_eq!(gen.dim(), 1);
        assert_eq!(t.decompose().unwrap(), Decomposition::from_pairs(&[(2, 1), (0, 1)]));
        let t3 = t.tensor(&v1).unwrap();
        assert_eq!(t3.decompose().unwrap(), Decomposition::from_pairs(&[(3, 1), (1, 2)]));
        let v3 = v(3);
        let s = v3.tensor(&v3).unwrap();
        assert_eq!(s.highest_weight_vectors(2).dim(), 1);
        assert_eq!(
            s.decompose().unwrap(),
            Decomposition::from_pairs(&[(6, 1), (4, 1), (2, 1), (0, 1)])
        );
    }

    #[test]
    fn component_generated_by_second_hw_vector() {
        for l in 1..=4 {
            let s = v(l).tensor(&v(l)).unwrap();
            let hw = s.highest_weight_vectors(2 * l as i64 - 2);
            let gen = s.submodule_generated(&[hw.basis_vectors().next().unwrap().to_vec()]);
            assert_eq!(gen.dim(), 2 * l - 1);
            let sub = s.restrict(&gen).unwrap();
            assert_eq!(sub.decompose().unwrap(), Decomposition::from_pairs(&[(2 * l as i64 - 2, 1)]));
        }
    }

    #[test]
    fn flavor_mismatch() {
        let a = ModuleRep::simple(1, Flavor::Quantum, Rational::new(7, 5));
        let b = ModuleRep::simple_classical(1);
        assert_eq!(a.tensor(&b).unwrap_err(), Error::FlavorMismatch);
    }

    #[test]
    fn inconsistent_module_detected() {
        // Drop E on one vector of V1 ⊗ V1: grading still holds but the
        // commutator relation fails.
        let t = v(1).tensor(&v(1)).unwrap();
        let mut e = t.e_cols().to_vec();
        e[3].clear();
        let r = ModuleRep::from_parts(
            Flavor::Quantum,
            RatFunc::q(),
            t.weights().to_vec(),
            e,
            t.f_cols().to_vec(),
            t.labels().to_vec(),
        );
        assert!(matches!(r, Err(Error::InconsistentModule(_))));
    }

    #[test]
    fn classical_limit_of_quantum_simple() {
        for l in 0..=6 {
            let quantum = v(l).specialize(&Rational::one());
            // At q = 1 the quantum commutator [w]_q degenerates to w, which is
            // exactly the classical relation; relabel the flavor to compare.
            let classical = ModuleRep::simple_classical(l);
            let q1 = quantum.unwrap();
            assert_eq!(q1.e_mat(), classical.e_mat());
            assert_eq!(q1.f_mat(), classical.f_mat());
            assert_eq!(q1.decompose().unwrap(), classical.decompose().unwrap());
        }
    }
}

#[cfg(test)]
mod props;
