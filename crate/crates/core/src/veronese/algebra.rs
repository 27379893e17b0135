//! Veronese components as modules, computed inside braided symmetric
//! algebras: `S_σ(V_1)` is the quantum plane and `S_σ(V_2)` is a flat
//! deformation of `S(V̄_2)`, so their degree-`kd` components carry the
//! module structure of `V_q(1, d)_k` and `V_q(2, d)_k`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::skew_component_dim;
use crate::braided::{Braiding, Backend, Kind, QuotientTower, DEFAULT_MAX_BLOCK};
use crate::error::{Error, Result};
use crate::exactla::Subspace;
use crate::on_backend;
use crate::poisson::binomial;
use crate::qscalar::{Field, RatFunc, Rational};
use crate::uqsl2::{Decomposition, ModuleRep, SparseCol};

fn dense<F: Field>(dim: usize, x: &[(usize, F)]) -> Vec<F> {
    let mut v = vec![F::zero(); dim];
    for (i, c) in x {
        v[*i] = c.clone();
    }
    v
}

fn sparse<F: Field>(v: &[F]) -> SparseCol<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn word_of(exps: &[usize]) -> Vec<usize> {
    exps.iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat(i).take(e))
        .collect()
}

/// Expected `V_q(n, d)_k`: `V_{kd}` for `n = 1`, `⊕_{i=0}^{⌊kd/2⌋} V_{2kd-4i}`
/// for `n = 2`.
fn expected_veronese(n: usize, d: usize, k: usize) -> Result<Decomposition> {
    let kd = (k * d) as i64;
    match n {
        1 => Ok(Decomposition::from_weights([kd])),
        2 => Ok(Decomposition::from_weights((0..=kd / 2).map(|i| 2 * kd - 4 * i))),
        _ => Err(Error::UnsupportedRank(n)),
    }
}

/// One graded component of a quantum Veronese algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VeroneseHilbert {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    /// `binom(kd + n, n)`.
    pub dim: usize,
    pub decomposition: Decomposition,
    /// Monomial count in the skew ring.
    pub skew_dim: usize,
    /// Degree `kd` of `S_σ(V_n)`, decomposed.
    pub braided: Decomposition,
    pub pass: bool,
}

pub fn veronese_hilbert(n: usize, d: usize, k: usize, backend: &Backend, max_block: usize) -> Result<VeroneseHilbert> {
    if k == 0 || d == 0 {
        return Err(Error::InvalidArgument(format!(
            "Veronese components need d >= 1 and k >= 1, got d = {d}, k = {k}"
        )));
    }
    let decomposition = expected_veronese(n, d, k)?;
    let dim = binomial(k * d + n, n);
    let skew_dim = skew_component_dim(n, d, k);
    let braided = on_backend!(n, backend, |b| {
        let mut t = b.quotient_tower(Kind::Sym, max_block)?;
        t.level(k * d)?.module().decompose()
    })?;
    let pass = skew_dim == dim && decomposition.dim() == dim && braided == decomposition;
    Ok(VeroneseHilbert {
        n,
        d,
        k,
        dim,
        decomposition,
        skew_dim,
        braided,
        pass,
    })
}

/// Degree `k` of the subalgebra generated by `V_{2d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraRow {
    pub k: usize,
    pub dim: usize,
    pub decomposition: Decomposition,
    /// `dim V_q(2, d)_k`.
    pub veronese_dim: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraReport {
    pub d: usize,
    pub rows: Vec<SubalgebraRow>,
    pub pass: bool,
}

/// Inside `S_σ(V_2)`, let `U ⊂ S_σ(V_2)_d` be the submodule generated by
/// `x_0^d` and compute `A_k = U^k ⊂ S_σ(V_2)_{kd}` for `1 ≤ k ≤ k_max`.
/// Passes when `U ≅ V_{2d}` and `A_k` fills the Veronese component for
/// every `k ≥ 2`.
pub fn subalgebra_a(d: usize, k_max: usize, backend: &Backend, max_block: usize) -> Result<SubalgebraReport> {
    if d == 0 || k_max == 0 {
        return Err(Error::InvalidArgument(format!(
            "subalgebra needs d >= 1 and k_max >= 1, got d = {d}, k_max = {k_max}"
        )));
    }
    let found = on_backend!(2, backend, |b| {
        let mut qt = b.quotient_tower(Kind::Sym, max_block)?;
        let mut top = BTreeMap::new();
        top.insert(vec![0; d], Field::one());
        let x0d = qt.project(d, &top)?;
        let first = qt.level(d)?.module().clone();
        let u = first.submodule_generated(&[dense(first.dim(), &x0d)]);
        let u_basis: Vec<SparseCol<_>> = u.basis_vectors().map(sparse).collect();
        let mut rows = vec![(1, u.dim(), first.restrict(&u)?.decompose()?)];
        let mut prev: Vec<SparseCol<_>> = u_basis.clone();
        for k in 2..=k_max {
            let mut products = Vec::with_capacity(prev.len() * u_basis.len());
            for p in &prev {
                for y in &u_basis {
                    products.push(qt.multiply((k - 1) * d, p, d, y)?);
                }
            }
            let module = qt.level(k * d)?.module().clone();
            let span = Subspace::span(module.dim(), products.iter().map(|x| dense(module.dim(), x)).collect());
            rows.push((k, span.dim(), module.restrict(&span)?.decompose()?));
            prev = span.basis_vectors().map(sparse).collect();
        }
        Ok(rows)
    })?;
    let mut rows = Vec::new();
    let mut pass = true;
    for (k, dim, decomposition) in found {
        let veronese_dim = binomial(k * d + 2, 2);
        let equal = dim == veronese_dim && decomposition == expected_veronese(2, d, k)?;
        pass &= if k == 1 {
            decomposition == Decomposition::from_weights([2 * d as i64])
        } else {
            equal
        };
        rows.push(SubalgebraRow {
            k,
            dim,
            decomposition,
            veronese_dim,
            equal,
        });
    }
    Ok(SubalgebraReport { d, rows, pass })
}

/// Gaussian binomial `Σ_{S ⊂ {1..m}, |S| = i} t^{Σ S - i(i+1)/2}`.
fn gaussian_binomial<F: Field>(m: usize, i: usize, t: &F) -> F {
    let mut row = vec![F::one()];
    for r in 1..=m {
        let mut next = vec![F::one(); r + 1];
        for j in 1..r {
            next[j] = row[j - 1].add(&t.pow(j as i64).mul(&row[j]));
        }
        row = next;
    }
    row.get(i).cloned().unwrap_or_else(F::zero)
}

/// `Σ_i (-1)^i binom(m, i)_{q⁻⁴} x_0^{d-m-i} x_1^{2i} x_2^{m-i}` in
/// `S_σ(V_2)_d`, with `x_0 = v_0`, `x_1 = v_1`, `x_2 = q⁻³ v_2` and each
/// monomial read as the sorted word. At `q = 1` this is the classical
/// `x_0^{d-2m} (x_0 x_2 - x_1²)^m`.
fn hwv_formula<F: Field>(qt: &mut QuotientTower<F>, q: &F, d: usize, m: usize) -> Result<Vec<F>> {
    let t = q.pow(-4);
    let mut x = BTreeMap::new();
    for i in 0..=m {
        let c = m - i;
        let mut coef = gaussian_binomial(m, i, &t).mul(&q.pow(-3 * c as i64));
        if i % 2 == 1 {
            coef = coef.neg();
        }
        x.insert(word_of(&[d - m - i, 2 * i, c]), coef);
    }
    let p = qt.project(d, &x)?;
    Ok(dense(qt.level(d)?.dim(), &p))
}

/// Outcome of checking the closed-form highest weight vector of weight
/// `2d - 4m` in `S_σ(V_2)_d` and in its classical limit `S(V̄_2)_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HwvCheck {
    pub d: usize,
    pub m: usize,
    pub weight: i64,
    pub nonzero: bool,
    pub killed_by_e: bool,
    pub weight_ok: bool,
    pub classical_killed_by_e: bool,
    pub pass: bool,
}

fn hwv_properties<F: Field>(qt: &mut QuotientTower<F>, q: &F, d: usize, m: usize) -> Result<(bool, bool, bool)> {
    let v = hwv_formula(qt, q, d, m)?;
    let module = qt.level(d)?.module();
    let weight = 2 * d as i64 - 4 * m as i64;
    let nonzero = v.iter().any(|x| !x.is_zero());
    let killed = module.apply_e(&v).iter().all(Field::is_zero);
    let weight_ok = v
        .iter()
        .zip(module.weights())
        .all(|(x, &w)| x.is_zero() || w == weight);
    Ok((nonzero, killed, weight_ok))
}

/// Exact check of the highest weight vector formula; requires `2m ≤ d`.
pub fn hwv_formula_check(d: usize, m: usize) -> Result<HwvCheck> {
    if 2 * m > d {
        return Err(Error::InvalidArgument(format!(
            "highest weight vector formula needs 2m <= d, got d = {d}, m = {m}"
        )));
    }
    let b = Braiding::exact(2);
    let mut qt = b.quotient_tower(Kind::Sym, DEFAULT_MAX_BLOCK)?;
    let (nonzero, killed_by_e, weight_ok) = hwv_properties(&mut qt, &RatFunc::q(), d, m)?;

    let classical = ModuleRep::simple_classical(2);
    let antisym: Vec<Vec<Rational>> = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut v = vec![Rational::zero(); 9];
            v[i * 3 + j] = Rational::one();
            v[j * 3 + i] = Rational::from_i64(-1);
            v
        })
        .collect();
    let mut cqt = QuotientTower::new(classical, &Subspace::span(9, antisym), DEFAULT_MAX_BLOCK)?;
    let (c_nonzero, c_killed, c_weight) = hwv_properties(&mut cqt, &Rational::one(), d, m)?;
    let classical_killed_by_e = c_nonzero && c_killed && c_weight;

    Ok(HwvCheck {
        d,
        m,
        weight: 2 * d as i64 - 4 * m as i64,
        nonzero,
        killed_by_e,
        weight_ok,
        classical_killed_by_e,
        pass: nonzero && killed_by_e && weight_ok && classical_killed_by_e,
    })
}

/// Degree `n` of the nilradical comparison for odd `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilradicalRow {
    pub n: usize,
    /// `S_σ(V_ℓ)_n`.
    pub algebra: Decomposition,
    /// `V_q(1, ℓ)_n`, degree `nℓ` of the quantum plane.
    pub veronese: Decomposition,
    /// Kernel of `S_σ(V_ℓ)_n → V_q(1, ℓ)_n`.
    pub kernel: Decomposition,
    /// `⊕_{i=1}^{(ℓ-1)/2} V_{nℓ-4i}`.
    pub expected: Decomposition,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilradicalReport {
    pub l: usize,
    pub rows: Vec<NilradicalRow>,
    pub pass: bool,
}

/// For odd `ℓ` and `2 ≤ n ≤ n_max`, compare `S_σ(V_ℓ)_n` with
/// `V_q(1, ℓ)_n` and check that the difference of characters is
/// `⊕_{i=1}^{(ℓ-1)/2} V_{nℓ-4i}`.
pub fn nilradical_check(l: usize, n_max: usize, backend: &Backend, max_block: usize) -> Result<NilradicalReport> {
    if l % 2 == 0 {
        return Err(Error::InvalidArgument(format!("nilradical check needs odd l, got {l}")));
    }
    let algebra: Vec<Decomposition> = on_backend!(l, backend, |b| {
        let mut t = b.quotient_tower(Kind::Sym, max_block)?;
        (2..=n_max).map(|n| t.level(n)?.module().decompose()).collect()
    })?;
    let veronese: Vec<Decomposition> = on_backend!(1, backend, |b| {
        let mut t = b.quotient_tower(Kind::Sym, max_block)?;
        (2..=n_max).map(|n| t.level(n * l)?.module().decompose()).collect()
    })?;
    let mut rows = Vec::new();
    for (n, (algebra, veronese)) in (2..=n_max).zip(algebra.into_iter().zip(veronese)) {
        let mut ch = algebra.character();
        for (w, m) in veronese.character() {
            let slot = ch.entry(w).or_insert(0);
            if *slot < m {
                return Err(Error::InconsistentModule(format!(
                    "V_q(1, {l})_{n} is not a quotient of degree {n}: weight {w} too large"
                )));
            }
            *slot -= m;
        }
        ch.retain(|_, m| *m > 0);
        let kernel = Decomposition::from_character(&ch)
            .ok_or_else(|| Error::InconsistentModule(format!("degree {n} kernel is not a module character")))?;
        let nl = (n * l) as i64;
        let expected = Decomposition::from_weights((1..=(l as i64 - 1) / 2).map(|i| nl - 4 * i));
        rows.push(NilradicalRow {
            n,
            pass: kernel == expected,
            algebra,
            veronese,
            kernel,
            expected,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(NilradicalReport { l, rows, pass })
}
