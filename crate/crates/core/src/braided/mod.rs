//! Braided symmetric and exterior powers of `V_ℓ` and the quadratic
//! algebras they generate.
//!
//! Two independent routes compute the degree-`n` pieces: the subspace
//! `∩ Ker(σ_{i,i+1} ∓ 1)` of `V^{⊗n}` (intersection) and the quotient of
//! `V^{⊗n}` by the two-sided ideal generated by the opposite eigenspace of
//! σ (quotient). Both run in a generic field, so the same code serves the
//! exact backend over ℚ(q) and the specialized backend at a rational `q0`.
//!
//! At a specialization the intersection can only grow and the ideal can
//! only shrink, so when the two routes agree at `q0` their common
//! dimensions are the generic ones.

mod ambient;
mod sigma;
mod theorem;
mod tower;

pub use ambient::{
    apply_e, braided_power_direct, ideal_component, tensor_product, words_of_weight,
    AmbientBlock, BlockedSubspace, Tensor,
};
pub use sigma::{build_sigma, SigmaOperator};
pub use theorem::{
    expected_ext, expected_sym, hw_embedding_check, verify_main_theorem, HwEmbeddingReport,
    HwVectorCheck, TheoremCheck,
};
pub use tower::{IntersectionTower, QuotLevel, QuotientTower, SubLevel};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::Subspace;
use crate::qscalar::{Field, RatFunc, Rational};
use crate::uqsl2::{Decomposition, ModuleRep};

/// Default bound on the size of a single weight block or kernel system.
pub const DEFAULT_MAX_BLOCK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Sym,
    Ext,
}

impl Kind {
    /// Eigenvalue of σ defining the degree-two piece.
    pub fn eigenvalue(self) -> i64 {
        match self {
            Kind::Sym => 1,
            Kind::Ext => -1,
        }
    }

    pub fn opposite(self) -> Kind {
        match self {
            Kind::Sym => Kind::Ext,
            Kind::Ext => Kind::Sym,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Sym => "sym",
            Kind::Ext => "ext",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" => Ok(Kind::Sym),
            "ext" => Ok(Kind::Ext),
            _ => Err(Error::InvalidArgument(format!("unknown kind {s:?}"))),
        }
    }
}

/// Where the scalars live.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Exact arithmetic in ℚ(q).
    Exact,
    /// Arithmetic in ℚ after substituting `q = q0`.
    Specialize(Rational),
}

impl Backend {
    pub fn default_q0() -> Rational {
        Rational::new(7, 5)
    }
}

impl Default for Backend {
    fn default() -> Self {
        Backend::Specialize(Backend::default_q0())
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Specialize(q0) => write!(f, "specialize(q0={q0})"),
        }
    }
}

/// `V_ℓ` together with its braiding, over one field.
#[derive(Clone, Debug)]
pub struct Braiding<F> {
    v: ModuleRep<F>,
    sigma: SigmaOperator<F>,
}

impl Braiding<RatFunc> {
    pub fn exact(l: usize) -> Self {
        Braiding {
            v: ModuleRep::simple_generic(l),
            sigma: build_sigma(l),
        }
    }
}

impl Braiding<Rational> {
    /// σ is built over ℚ(q) and then evaluated at `q0`.
    pub fn specialized(l: usize, q0: &Rational) -> Result<Self> {
        let sigma = build_sigma(l).specialize(q0)?;
        Ok(Braiding {
            v: ModuleRep::simple(l, crate::uqsl2::Flavor::Quantum, q0.clone()),
            sigma,
        })
    }
}

impl<F: Field> Braiding<F> {
    pub fn l(&self) -> usize {
        self.sigma.l()
    }

    pub fn module(&self) -> &ModuleRep<F> {
        &self.v
    }

    pub fn sigma(&self) -> &SigmaOperator<F> {
        &self.sigma
    }

    /// Degree-two piece: `S²_σ` for `Sym`, `Λ²_σ` for `Ext`.
    pub fn square(&self, kind: Kind) -> &Subspace<F> {
        match kind {
            Kind::Sym => self.sigma.plus_subspace(),
            Kind::Ext => self.sigma.minus_subspace(),
        }
    }

    /// Intersection tower for `S^n_σ` or `Λ^n_σ`.
    pub fn power_tower(&self, kind: Kind, max_block: usize) -> IntersectionTower<F> {
        let op = self.sigma.shifted_cols(-kind.eigenvalue());
        IntersectionTower::new(self.v.clone(), op, max_block)
    }

    /// Quotient tower for `T(V) / ⟨Λ²_σ⟩` (`Sym`) or `T(V) / ⟨S²_σ⟩` (`Ext`).
    pub fn quotient_tower(&self, kind: Kind, max_block: usize) -> Result<QuotientTower<F>> {
        QuotientTower::new(self.v.clone(), self.square(kind.opposite()), max_block)
    }
}

/// Run a field-generic computation on the requested backend.
pub fn with_backend<R>(
    l: usize,
    backend: &Backend,
    exact: impl FnOnce(&Braiding<RatFunc>) -> Result<R>,
    special: impl FnOnce(&Braiding<Rational>) -> Result<R>,
) -> Result<R> {
    match backend {
        Backend::Exact => exact(&Braiding::exact(l)),
        Backend::Specialize(q0) => special(&Braiding::specialized(l, q0)?),
    }
}

/// Shorthand for [`with_backend`] with one generic function.
#[macro_export]
macro_rules! on_backend {
    ($l:expr, $backend:expr, |$b:ident| $body:expr) => {
        $crate::braided::with_backend($l, $backend, |$b| $body, |$b| $body)
    };
}

fn weight_dims<F: Field>(m: &ModuleRep<F>) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for &w in m.weights() {
        *out.entry(w).or_default() += 1;
    }
    out
}

/// A braided power in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidedPower {
    pub l: usize,
    pub n: usize,
    pub kind: Kind,
    pub dim: usize,
    pub weight_dims: BTreeMap<i64, usize>,
    pub decomposition: Decomposition,
}

fn power_from_module<F: Field>(l: usize, n: usize, kind: Kind, m: &ModuleRep<F>) -> Result<BraidedPower> {
    Ok(BraidedPower {
        l,
        n,
        kind,
        dim: m.dim(),
        weight_dims: weight_dims(m),
        decomposition: m.decompose()?,
    })
}

/// `S^n_σ V_ℓ` or `Λ^n_σ V_ℓ` via the intersection tower.
pub fn braided_power(l: usize, n: usize, kind: Kind, backend: &Backend, max_block: usize) -> Result<BraidedPower> {
    on_backend!(l, backend, |b| {
        let mut t = b.power_tower(kind, max_block);
        let m = t.level(n)?.module().clone();
        power_from_module(l, n, kind, &m)
    })
}

/// All degrees `1..=n_max` of a braided power, sharing one tower.
pub fn braided_powers(l: usize, n_max: usize, kind: Kind, backend: &Backend, max_block: usize) -> Result<Vec<BraidedPower>> {
    on_backend!(l, backend, |b| {
        let mut t = b.power_tower(kind, max_block);
        (1..=n_max)
            .map(|n| {
                let m = t.level(n)?.module().clone();
                power_from_module(l, n, kind, &m)
            })
            .collect()
    })
}

/// One degree of a [`GradedReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedRow {
    pub n: usize,
    pub dim: usize,
    pub components: Decomposition,
    pub agree: bool,
    #[serde(skip)]
    pub quotient: Decomposition,
}

/// Degree-by-degree comparison of the intersection power and the quotient
/// algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedReport {
    pub l: usize,
    pub kind: Kind,
    pub rows: Vec<GradedRow>,
}

impl GradedReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }

    /// Aligned plain-text table.
    pub fn to_table(&self) -> String {
        let header = ["n", "dim", "components", "agree"];
        let body: Vec<[String; 4]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.n.to_string(),
                    r.dim.to_string(),
                    r.components.to_string(),
                    r.agree.to_string(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &body {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: [&str; 4]| -> String {
            let parts: Vec<String> = cells
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut out = format!("l = {}, kind = {}\n", self.l, self.kind);
        out.push_str(&line(header));
        out.push('\n');
        for row in &body {
            out.push_str(&line([&row[0], &row[1], &row[2], &row[3]]));
            out.push('\n');
        }
        out
    }
}

/// Intersection and quotient pieces for `n = 2..=n_max`.
pub fn graded_algebra_report(
    l: usize,
    kind: Kind,
    n_max: usize,
    backend: &Backend,
    max_block: usize,
) -> Result<GradedReport> {
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!("n_max must be at least 2, got {n_max}")));
    }
    let rows = on_backend!(l, backend, |b| {
        let mut inter = b.power_tower(kind, max_block);
        let mut quot = b.quotient_tower(kind, max_block)?;
        (2..=n_max)
            .map(|n| {
                let s = inter.level(n)?.module().decompose()?;
                let a = quot.level(n)?.module().decompose()?;
                Ok(GradedRow {
                    n,
                    dim: s.dim(),
                    agree: s == a,
                    components: s,
                    quotient: a,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(GradedReport { l, kind, rows })
}

/// Dimension of the degree-`n` ideal `⟨G⟩_n` generated by the opposite
/// square, from the quotient tower: `(ℓ+1)^n - dim A_n`.
pub fn ideal_dim(l: usize, n: usize, kind: Kind, backend: &Backend, max_block: usize) -> Result<usize> {
    let a = on_backend!(l, backend, |b| {
        let mut t = b.quotient_tower(kind, max_block)?;
        Ok(t.level(n)?.dim())
    })?;
    Ok((l + 1).pow(n as u32) - a)
}

#[cfg(test)]
mod tests;
#[cfg(test)]
mod props;
