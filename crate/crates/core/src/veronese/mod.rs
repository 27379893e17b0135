//! Quantum affine space `ℚ(q)[x_0, …, x_n]` with `x_j x_i = q⁻¹ x_i x_j`
//! for `i < j`, its Veronese subalgebras and their quadratic relations, and
//! module-theoretic checks carried out inside the braided symmetric
//! algebras `S_σ(V_1)` and `S_σ(V_2)`.

mod algebra;
#[cfg(test)]
mod tests;

pub use algebra::{
    hwv_formula_check, nilradical_check, subalgebra_a, veronese_hilbert, HwvCheck, NilradicalReport,
    NilradicalRow, SubalgebraReport, SubalgebraRow, VeroneseHilbert,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qscalar::{Field, RatFunc};

/// Exponent vector `(e_0, …, e_n)` of a normal-ordered monomial.
pub type Exponents = Vec<u32>;

/// Element of the skew polynomial ring in `num_vars` variables, stored on
/// the normal-ordered monomials `x_0^{e_0} ⋯ x_n^{e_n}`.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    num_vars: usize,
    terms: BTreeMap<Exponents, RatFunc>,
}

impl SkewPoly {
    pub fn zero(num_vars: usize) -> Self {
        SkewPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::monomial(vec![0; num_vars], RatFunc::one())
    }

    /// `c · x^e`; the number of variables is the length of `e`.
    pub fn monomial(e: Exponents, c: RatFunc) -> Self {
        let mut p = Self::zero(e.len());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn var(num_vars: usize, i: usize) -> Result<Self> {
        Self::from_word(num_vars, &[i])
    }

    /// The product `x_{w_1} x_{w_2} ⋯` written in normal order.
    pub fn from_word(num_vars: usize, word: &[usize]) -> Result<Self> {
        let (exp, e) = normal_order(word, num_vars)?;
        Ok(Self::monomial(e, RatFunc::q_pow(exp as i32)))
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> RatFunc {
        self.terms.get(e).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::AmbientMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }

    fn accumulate(&mut self, e: Exponents, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&RatFunc::from_i64(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (e, x) in &self.terms {
            out.accumulate(e.clone(), x.mul(c));
        }
        out
    }

    /// Product; `x^e · x^f = q^{-Σ_{i>j} e_i f_j} x^{e+f}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.num_vars);
        for (e, a) in &self.terms {
            for (f, b) in &other.terms {
                let mut cross = 0i64;
                let mut below = 0i64;
                for i in 0..self.num_vars {
                    cross += e[i] as i64 * below;
                    below += f[i] as i64;
                }
                let sum = e.iter().zip(f).map(|(x, y)| x + y).collect();
                out.accumulate(sum, a.mul(b).mul(&RatFunc::q_pow(-cross as i32)));
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "x{i}")?,
                    _ => write!(f, "x{i}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

/// Number of pairs `p < r` with `word[p] > word[r]`.
fn inversions(word: &[usize]) -> i64 {
    let mut inv = 0;
    for (p, a) in word.iter().enumerate() {
        inv += word[p + 1..].iter().filter(|b| a > *b).count() as i64;
    }
    inv
}

/// Rewrite `x_{w_1} ⋯ x_{w_k}` as `q^{exponent} x^e` with `e` normal-ordered.
/// The exponent is minus the number of inversions of the word.
pub fn normal_order(word: &[usize], num_vars: usize) -> Result<(i64, Exponents)> {
    let mut e = vec![0u32; num_vars];
    for &i in word {
        if i >= num_vars {
            return Err(Error::IndexRange {
                index: i,
                max: num_vars.saturating_sub(1),
            });
        }
        e[i] += 1;
    }
    Ok((-inversions(word), e))
}

/// `Λ(I, J) = Σ_m #{k : i_k < j_m}` for sorted multi-indices.
pub fn lambda_count(i: &[usize], j: &[usize]) -> i64 {
    j.iter()
        .map(|jm| i.iter().filter(|ik| *ik < jm).count() as i64)
        .sum()
}

/// All sorted multi-indices of length `d` with entries in `0..=n`.
pub fn multi_indices(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// `x_I x_J = q^{exponent} x_K x_L` in the ambient skew ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VeroneseRelation {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
    pub l: Vec<usize>,
    /// `inv(K, L) - inv(I, J)` from normal ordering.
    pub exponent: i64,
    /// `Λ(I, J) - Λ(K, L)`.
    pub lambda_exponent: i64,
    pub agree: bool,
}

/// Degree-`d` Veronese subalgebra of the skew ring in `n + 1` variables,
/// presented by its generators `x_I` and quadratic relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VeroneseAlgebra {
    pub n: usize,
    pub d: usize,
    pub generators: Vec<Vec<usize>>,
    pub relations: Vec<VeroneseRelation>,
}

fn concat(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().chain(b).copied().collect()
}

/// Every pair of generator products with the same normal-ordered monomial,
/// written with the lexicographically larger product `(I, J)` on the left.
pub fn veronese_relations(n: usize, d: usize) -> Result<VeroneseAlgebra> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument(format!(
            "Veronese relations need n >= 1 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    let generators = multi_indices(n, d);
    let mut groups: BTreeMap<Exponents, Vec<(usize, usize, i64)>> = BTreeMap::new();
    for (a, i) in generators.iter().enumerate() {
        for (b, j) in generators.iter().enumerate() {
            let (exp, e) = normal_order(&concat(i, j), n + 1)?;
            groups.entry(e).or_default().push((a, b, exp));
        }
    }
    let relations = groups
        .into_values()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|pairs| {
            let gens = &generators;
            (0..pairs.len()).flat_map(move |hi| {
                (0..hi).map(move |lo| {
                    let (a, b, e_ij) = pairs[hi];
                    let (c, dd, e_kl) = pairs[lo];
                    let (i, j, k, l) = (&gens[a], &gens[b], &gens[c], &gens[dd]);
                    let exponent = e_ij - e_kl;
                    let lambda_exponent = lambda_count(i, j) - lambda_count(k, l);
                    VeroneseRelation {
                        i: i.clone(),
                        j: j.clone(),
                        k: k.clone(),
                        l: l.clone(),
                        exponent,
                        lambda_exponent,
                        agree: exponent == lambda_exponent,
                    }
                })
            })
        })
        .collect();
    Ok(VeroneseAlgebra {
        n,
        d,
        generators,
        relations,
    })
}

fn index_field(i: &[usize]) -> String {
    i.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

impl VeroneseAlgebra {
    /// Substitute normal forms into both sides of every relation.
    pub fn verify(&self) -> bool {
        let vars = self.n + 1;
        self.relations.par_iter().all(|r| {
            let lhs = SkewPoly::from_word(vars, &concat(&r.i, &r.j));
            let rhs = SkewPoly::from_word(vars, &concat(&r.k, &r.l));
            match (lhs, rhs) {
                (Ok(lhs), Ok(rhs)) => lhs == rhs.scale(&RatFunc::q_pow(r.exponent as i32)),
                _ => false,
            }
        })
    }

    /// Relations whose `Λ` exponent differs from the normal-order exponent.
    pub fn lambda_disagreements(&self) -> usize {
        self.relations.iter().filter(|r| !r.agree).count()
    }

    /// One row per relation; multi-indices are space separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("I,J,K,L,exponent,lambda_exponent,agree\n");
        for r in &self.relations {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                index_field(&r.i),
                index_field(&r.j),
                index_field(&r.k),
                index_field(&r.l),
                r.exponent,
                r.lambda_exponent,
                r.agree
            ));
        }
        out
    }
}

/// Dimension of `V_q(n, d)_k`, counted as the number of distinct
/// normal-ordered monomials among products of `k` generators. Each such
/// product is a nonzero multiple of one monomial.
pub fn skew_component_dim(n: usize, d: usize, k: usize) -> usize {
    let gens: Vec<Exponents> = multi_indices(n, d)
        .iter()
        .map(|i| {
            let mut e = vec![0u32; n + 1];
            for &x in i {
                e[x] += 1;
            }
            e
        })
        .collect();
    let mut cur: BTreeSet<Exponents> = BTreeSet::new();
    cur.insert(vec![0; n + 1]);
    for _ in 0..k {
        cur = cur
            .iter()
            .flat_map(|e| gens.iter().map(move |g| e.iter().zip(g).map(|(a, b)| a + b).collect()))
            .collect();
    }
    cur.len()
}
