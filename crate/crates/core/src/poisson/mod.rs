//! The classical limit: the quadratic bracket on `S(V̄_ℓ)` coming from
//! `r⁻ = E ∧ F`, its Jacobiator, the ideal the Jacobiator generates, and
//! the monomial sets that bound the resulting Hilbert function.
//!
//! The bracket is `E ⊗ F - F ⊗ E` with no factor of one half; every
//! quantity computed here (spans, ranks, dimensions) is insensitive to
//! rescaling it.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{rank, Matrix, Subspace};
use crate::qscalar::{Field, Rational};

/// Exponent vector `(k_0, …, k_ℓ)`.
pub type Exponents = Vec<u32>;

/// Element of the polynomial ring `S(V̄_ℓ) = ℚ[v̄_0, …, v̄_ℓ]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClassicalPoly {
    l: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl ClassicalPoly {
    pub fn zero(l: usize) -> Self {
        ClassicalPoly {
            l,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(l: usize) -> Self {
        Self::monomial(l, vec![0; l + 1], Rational::one())
    }

    /// `c · v̄^k`.
    pub fn monomial(l: usize, k: Exponents, c: Rational) -> Self {
        assert_eq!(k.len(), l + 1, "exponent vector length");
        let mut p = Self::zero(l);
        if !c.is_zero() {
            p.terms.insert(k, c);
        }
        p
    }

    /// The generator `v̄_a`.
    pub fn generator(l: usize, a: usize) -> Self {
        assert!(a <= l, "generator index {a} exceeds {l}");
        let mut k = vec![0; l + 1];
        k[a] = 1;
        Self::monomial(l, k, Rational::one())
    }

    /// Product of generators with the given indices.
    pub fn from_indices(l: usize, idx: &[usize]) -> Self {
        let mut k = vec![0; l + 1];
        for &i in idx {
            k[i] += 1;
        }
        Self::monomial(l, k, Rational::one())
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn coeff(&self, k: &[u32]) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a homogeneous polynomial; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|k| k.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    fn add_term(&mut self, k: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.l != other.l {
            return Err(Error::MixedModule {
                left: self.l,
                right: other.l,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Rational::integer(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.l);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.l);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let k = k1.iter().zip(k2).map(|(a, b)| a + b).collect();
                out.add_term(k, c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// `∂/∂v̄_a`.
    pub fn derivative(&self, a: usize) -> Self {
        let mut out = Self::zero(self.l);
        for (k, c) in &self.terms {
            if k[a] > 0 {
                let mut k2 = k.clone();
                k2[a] -= 1;
                out.add_term(k2, c.mul(&Rational::integer(k[a] as i64)));
            }
        }
        out
    }

    /// `Σ_i k_i (ℓ - 2i)` of a monomial.
    pub fn monomial_weight(l: usize, k: &[u32]) -> i64 {
        k.iter()
            .enumerate()
            .map(|(i, &e)| e as i64 * (l as i64 - 2 * i as i64))
            .sum()
    }

    /// Least monomial with nonzero coefficient in lexicographic order on
    /// exponent vectors, i.e. with `v̄_0 > v̄_1 > … > v̄_ℓ`.
    pub fn terminal_monomial(&self) -> Option<&Exponents> {
        self.terms.keys().next()
    }
}

impl fmt::Display for ClassicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            let mono: Vec<String> = k
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("v{i}") } else { format!("v{i}^{e}") })
                .collect();
            let (neg, abs) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ClassicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Classical `E v̄_a = a v̄_{a-1}`.
fn e_gen(l: usize, a: usize) -> ClassicalPoly {
    if a == 0 {
        return ClassicalPoly::zero(l);
    }
    ClassicalPoly::generator(l, a - 1).scale(&Rational::integer(a as i64))
}

/// Classical `F v̄_a = (ℓ - a) v̄_{a+1}`.
fn f_gen(l: usize, a: usize) -> ClassicalPoly {
    if a == l {
        return ClassicalPoly::zero(l);
    }
    ClassicalPoly::generator(l, a + 1).scale(&Rational::integer((l - a) as i64))
}

/// Classical `H v̄_a = (ℓ - 2a) v̄_a`.
fn h_gen(l: usize, a: usize) -> ClassicalPoly {
    ClassicalPoly::generator(l, a).scale(&Rational::integer(l as i64 - 2 * a as i64))
}

/// `{v̄_a, v̄_b} = E(v̄_a) F(v̄_b) - F(v̄_a) E(v̄_b)`.
pub fn generator_bracket(l: usize, a: usize, b: usize) -> ClassicalPoly {
    let x = e_gen(l, a).mul(&f_gen(l, b)).expect("same l");
    let y = f_gen(l, a).mul(&e_gen(l, b)).expect("same l");
    x.sub(&y).expect("same l")
}

/// The bracket extended to all of `S(V̄_ℓ)` as a biderivation:
/// `{u, v} = Σ_{a,b} ∂u/∂v̄_a · ∂v/∂v̄_b · {v̄_a, v̄_b}`.
pub fn bracket(u: &ClassicalPoly, v: &ClassicalPoly) -> Result<ClassicalPoly> {
    u.check(v)?;
    let l = u.l;
    let du: Vec<ClassicalPoly> = (0..=l).map(|a| u.derivative(a)).collect();
    let dv: Vec<ClassicalPoly> = (0..=l).map(|b| v.derivative(b)).collect();
    let mut out = ClassicalPoly::zero(l);
    for a in 0..=l {
        if du[a].is_zero() {
            continue;
        }
        for b in 0..=l {
            if a == b || dv[b].is_zero() {
                continue;
            }
            let g = generator_bracket(l, a, b);
            if g.is_zero() {
                continue;
            }
            out = out.add(&du[a].mul(&dv[b])?.mul(&g)?)?;
        }
    }
    Ok(out)
}

/// `{u,{v,w}} + {w,{u,v}} + {v,{w,u}}`.
pub fn jacobiator(u: &ClassicalPoly, v: &ClassicalPoly, w: &ClassicalPoly) -> Result<ClassicalPoly> {
    let a = bracket(u, &bracket(v, w)?)?;
    let b = bracket(w, &bracket(u, v)?)?;
    let c = bracket(v, &bracket(w, u)?)?;
    a.add(&b)?.add(&c)
}

/// `Σ_{π ∈ S₃} sgn(π) X_{π1} v̄_a · X_{π2} v̄_b · X_{π3} v̄_c` with
/// `(X_1, X_2, X_3) = (E, F, H)`.
pub fn jacobian_map(l: usize, a: usize, b: usize, c: usize) -> Result<ClassicalPoly> {
    if !(a < b && b < c && c <= l) {
        return Err(Error::IndexOrder { a, b, c, l });
    }
    let ops: [fn(usize, usize) -> ClassicalPoly; 3] = [e_gen, f_gen, h_gen];
    let perms: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([0, 2, 1], -1),
        ([1, 0, 2], -1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([2, 1, 0], -1),
    ];
    let mut out = ClassicalPoly::zero(l);
    for (p, s) in perms {
        let term = ops[p[0]](l, a).mul(&ops[p[1]](l, b))?.mul(&ops[p[2]](l, c))?;
        out = out.add(&term.scale(&Rational::integer(s)))?;
    }
    Ok(out)
}

/// Increasing triples `a < b < c` in `0..=ℓ`.
pub fn index_triples(l: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=l {
        for b in a + 1..=l {
            for c in b + 1..=l {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// Jacobiator on every increasing triple of generators.
pub fn jacobiator_generators(l: usize) -> Vec<ClassicalPoly> {
    index_triples(l)
        .into_par_iter()
        .map(|(a, b, c)| {
            let g = |i| ClassicalPoly::generator(l, i);
            jacobiator(&g(a), &g(b), &g(c)).expect("same l")
        })
        .collect()
}

/// All exponent vectors with `ℓ + 1` entries summing to `n`, ascending.
pub fn monomials(l: usize, n: u32) -> Vec<Exponents> {
    fn rec(left: usize, n: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if left == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=n {
            cur.push(k);
            rec(left - 1, n - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(l + 1, n, &mut Vec::new(), &mut out);
    out
}

/// Dimension of `S(V̄_ℓ)_n`.
pub fn sym_dim(l: usize, n: usize) -> usize {
    binomial(n + l, l)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Span of homogeneous polynomials of degree `n`, computed weight block by
/// weight block, as a map from weight to subspace over that block's
/// monomials.
fn blocked_span(l: usize, n: u32, polys: &[ClassicalPoly]) -> BTreeMap<i64, (Vec<Exponents>, Subspace<Rational>)> {
    let mut blocks: BTreeMap<i64, Vec<Exponents>> = BTreeMap::new();
    for k in monomials(l, n) {
        blocks.entry(ClassicalPoly::monomial_weight(l, &k)).or_default().push(k);
    }
    let mut rows: BTreeMap<i64, Vec<&ClassicalPoly>> = BTreeMap::new();
    for p in polys {
        let mut ws = p.terms.keys().map(|k| ClassicalPoly::monomial_weight(l, k));
        if let Some(w) = ws.next() {
            debug_assert!(ws.all(|x| x == w), "inhomogeneous weight");
            rows.entry(w).or_default().push(p);
        }
    }
    blocks
        .into_par_iter()
        .map(|(w, monos)| {
            let vecs: Vec<Vec<Rational>> = rows
                .get(&w)
                .map(|ps| {
                    ps.iter()
                        .map(|p| monos.iter().map(|k| p.coeff(k)).collect())
                        .collect()
                })
                .unwrap_or_default();
            let span = Subspace::span(monos.len(), vecs);
            (w, (monos, span))
        })
        .collect()
}

/// Dimension of the degree-`n` piece of the ideal generated by the
/// Jacobiator images of generator triples.
pub fn jacobian_ideal_dim(l: usize, n: usize) -> usize {
    if n < 3 {
        return 0;
    }
    let gens: Vec<ClassicalPoly> = jacobiator_generators(l)
        .into_iter()
        .filter(|p| !p.is_zero())
        .collect();
    if gens.is_empty() {
        return 0;
    }
    let products: Vec<ClassicalPoly> = monomials(l, (n - 3) as u32)
        .into_par_iter()
        .flat_map_iter(|k| {
            let m = ClassicalPoly::monomial(l, k, Rational::one());
            gens.iter().map(move |g| m.mul(g).expect("same l")).collect::<Vec<_>>()
        })
        .collect();
    blocked_rank(l, n as u32, &products)
}

fn blocked_rank(l: usize, n: u32, polys: &[ClassicalPoly]) -> usize {
    let mut by_weight: BTreeMap<i64, Vec<&ClassicalPoly>> = BTreeMap::new();
    for p in polys {
        if let Some(k) = p.terms.keys().next() {
            by_weight.entry(ClassicalPoly::monomial_weight(l, k)).or_default().push(p);
        }
    }
    let mut monos: BTreeMap<i64, Vec<Exponents>> = BTreeMap::new();
    for k in monomials(l, n) {
        monos.entry(ClassicalPoly::monomial_weight(l, &k)).or_default().push(k);
    }
    by_weight
        .into_par_iter()
        .map(|(w, ps)| {
            let cols = &monos[&w];
            let m = Matrix::from_rows(
                cols.len(),
                ps.iter().map(|p| cols.iter().map(|k| p.coeff(k)).collect()).collect(),
            );
            rank(&m)
        })
        .sum()
}

/// One value of a Hilbert function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertRow {
    pub n: usize,
    pub dim: usize,
}

/// `dim (S(V̄_ℓ)/J)_n` for `n = 1..=n_max`.
pub fn poisson_closure_hilbert(l: usize, n_max: usize) -> Vec<HilbertRow> {
    (1..=n_max)
        .map(|n| HilbertRow {
            n,
            dim: sym_dim(l, n) - jacobian_ideal_dim(l, n),
        })
        .collect()
}

/// Monomials of degree `n` with `k_0 + k_ℓ ≥ n - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TMonomialSet {
    pub l: usize,
    pub n: usize,
    pub members: Vec<Exponents>,
}

impl TMonomialSet {
    pub fn enumerate(l: usize, n: usize) -> Self {
        let members = monomials(l, n as u32)
            .into_iter()
            .filter(|k| (k[0] + if l > 0 { k[l] } else { 0 }) as usize + 2 >= n)
            .collect();
        TMonomialSet { l, n, members }
    }

    /// `binom(ℓ+2, 2) + (n-2) binom(ℓ+1, 2)`.
    pub fn closed_form(l: usize, n: usize) -> usize {
        binomial(l + 2, 2) + n.saturating_sub(2) * binomial(l + 1, 2)
    }

    /// One line per member, `k_0,…,k_ℓ`, after a header.
    pub fn to_csv(&self) -> String {
        let mut out: Vec<String> = vec![(0..=self.l).map(|i| format!("k{i}")).collect::<Vec<_>>().join(",")];
        for k in &self.members {
            out.push(k.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
        }
        out.join("\n") + "\n"
    }
}

/// `|T_{n,ℓ}|` by enumeration.
pub fn t_count(l: usize, n: usize) -> usize {
    TMonomialSet::enumerate(l, n).members.len()
}

/// Whether the Jacobiator images and the Jacobian map images span the same
/// subspace of `S(V̄_ℓ)_3`.
pub fn jacobian_spans_agree(l: usize) -> bool {
    let jac = jacobiator_generators(l);
    let maps: Vec<ClassicalPoly> = index_triples(l)
        .into_iter()
        .map(|(a, b, c)| jacobian_map(l, a, b, c).expect("increasing triple"))
        .collect();
    let s1 = blocked_span(l, 3, &jac);
    let s2 = blocked_span(l, 3, &maps);
    s1.iter()
        .all(|(w, (_, a))| a == &s2[w].1)
}

#[cfg(test)]
mod tests;
