//! Exact linear algebra over a [`Field`]: reduced row echelon form, rank,
//! kernels and subspaces with sum and intersection.

mod matrix;

pub use matrix::Matrix;

use crate::error::{Error, Result};
use crate::qscalar::{Field, RatFunc, Rational};

/// Pick the row in `from..` with the simplest nonzero entry in column `c`.
fn pivot_row<F: Field>(m: &Matrix<F>, from: usize, c: usize) -> Option<usize> {
    (from..m.rows())
        .filter(|&i| !m.get(i, c).is_zero())
        .min_by_key(|&i| {
            let fill = m.row(i)[c..].iter().filter(|x| !x.is_zero()).count();
            (m.get(i, c).complexity(), fill)
        })
}

/// Reduce `m` in place to reduced row echelon form and return the pivot
/// columns, scanning columns left to right. Zero rows are dropped.
pub fn rref_in_place<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.rows();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pivot_row(m, r, c) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m.get(r, c).inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in m.row_mut(r)[c..].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        for i in 0..rows {
            if i != r {
                let f = m.get(i, c).clone();
                if !f.is_zero() {
                    m.row_axpy(i, r, &f);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate_rows(r);
    pivots
}

/// Reduced row echelon form with zero rows removed, and its pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut out = m.clone();
    let pivots = rref_in_place(&mut out);
    (out, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    // Forward elimination only; cheaper than full reduction.
    let mut a = m.clone();
    let rows = a.rows();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == rows {
            break;
        }
        let Some(p) = pivot_row(&a, r, c) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a.get(r, c).inv().expect("nonzero pivot");
        for i in r + 1..rows {
            let f = a.get(i, c).mul(&inv);
            if !f.is_zero() {
                a.row_axpy(i, r, &f);
            }
        }
        r += 1;
    }
    r
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "inverse of a non-square matrix");
    let (r, pivots) = rref(&m.hstack(&Matrix::identity(n)));
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.get(i, n + j).clone());
        }
    }
    Some(inv)
}

/// Right kernel `{x : m x = 0}` as a subspace of `F^cols`.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let cols = m.cols();
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); cols];
        v[f] = F::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = r.get(i, f).neg();
        }
        basis.push(v);
    }
    Subspace::span(cols, basis)
}

/// Subspace of `F^ambient`, stored as an RREF basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        Self::from_matrix(Matrix::from_rows(ambient, vectors))
    }

    /// Row space of `m`.
    pub fn from_matrix(mut m: Matrix<F>) -> Self {
        let pivots = rref_in_place(&mut m);
        Subspace {
            ambient: m.cols(),
            basis: m,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[F]> {
        (0..self.dim()).map(|i| self.basis.row(i))
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let f = out[p].clone();
            if f.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *o = o.sub(&f.mul(b));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis_vectors().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::from_matrix(self.basis.vstack(&other.basis)))
    }

    /// Intersection, computed from the kernel of `[Aᵀ | −Bᵀ]`.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Self::zero(self.ambient));
        }
        let system = self
            .basis
            .transpose()
            .hstack(&other.basis.transpose().scale(&F::one().neg()));
        let ker = kernel(&system);
        let vectors = ker
            .basis_vectors()
            .map(|k| {
                let mut v = vec![F::zero(); self.ambient];
                for (i, c) in k[..a].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (o, x) in v.iter_mut().zip(self.basis.row(i)) {
                        if !x.is_zero() {
                            *o = o.add(&c.mul(x));
                        }
                    }
                }
                v
            })
            .collect();
        Ok(Self::span(self.ambient, vectors))
    }

    /// Image under a linear map given by a matrix acting on column vectors.
    pub fn image(&self, m: &Matrix<F>) -> Self {
        assert_eq!(m.cols(), self.ambient);
        let vectors = self.basis_vectors().map(|v| m.mul_vec(v)).collect();
        Self::span(m.rows(), vectors)
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> Subspace<G> {
        Subspace::from_matrix(self.basis.map(f))
    }
}

/// Outcome of comparing ranks of a generic matrix and its specializations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankAudit {
    pub generic_rank: usize,
    /// `(q0, rank at q0)`; points that hit a pole are omitted.
    pub specialized: Vec<(Rational, usize)>,
}

impl RankAudit {
    /// Specialized rank never exceeds the generic rank.
    pub fn bounded(&self) -> bool {
        self.specialized.iter().all(|(_, r)| *r <= self.generic_rank)
    }

    /// All specializations attained the generic rank.
    pub fn generic_everywhere(&self) -> bool {
        self.specialized.iter().all(|(_, r)| *r == self.generic_rank)
    }
}

/// Compare the rank over ℚ(q) with ranks at the given rational points.
pub fn rank_audit(m: &Matrix<RatFunc>, points: &[Rational]) -> RankAudit {
    let generic_rank = rank(m);
    let specialized = points
        .iter()
        .filter_map(|q0| m.specialize(q0).ok().map(|s| (q0.clone(), rank(&s))))
        .collect();
    RankAudit {
        generic_rank,
        specialized,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<Rational>;

    #[test]
    fn kernel_example() {
        let m = M::from_ints(&[&[1, 1, 0], &[0, 1, 1]]);
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        let v: Vec<Rational> = [1, -1, 1].iter().map(|&x| Rational::integer(x)).collect();
        assert!(k.contains(&v));
    }

    #[test]
    fn inverse_small() {
        let m = M::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), M::identity(2));
        assert!(inverse(&M::from_ints(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn rref_pivots_scan_left_to_right() {
        let m = M::from_ints(&[&[0, 2, 4], &[0, 1, 2], &[1, 0, 1]]);
        let (r, p) = rref(&m);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r, M::from_ints(&[&[1, 0, 1], &[0, 1, 2]]));
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::from_matrix(M::from_ints(&[&[1, 0, 0], &[0, 1, 0]]));
        let b = Subspace::from_matrix(M::from_ints(&[&[0, 1, 0], &[0, 0, 1]]));
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.basis(), &M::from_ints(&[&[0, 1, 0]]));
        assert_eq!(a.sum(&b).unwrap().dim(), 3);
        let c = Subspace::<Rational>::zero(2);
        assert_eq!(
            a.sum(&c),
            Err(Error::AmbientMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn coordinates_round_trip() {
        let s = Subspace::from_matrix(M::from_ints(&[&[1, 2, 3], &[0, 1, 1]]));
        let v: Vec<Rational> = [2, 5, 7].iter().map(|&x| Rational::integer(x)).collect();
        let c = s.coordinates(&v).unwrap();
        let mut back = vec![Rational::zero(); 3];
        for (ci, row) in c.iter().zip(s.basis_vectors()) {
            for (b, x) in back.iter_mut().zip(row) {
                *b = b.add(&ci.mul(x));
            }
        }
        assert_eq!(back, v);
        let w: Vec<Rational> = [0, 0, 1].iter().map(|&x| Rational::integer(x)).collect();
        assert!(s.coordinates(&w).is_none());
    }

    #[test]
    fn audit_detects_rank_drop() {
        // [[1, q-1]] drops nothing; [[q-1]] drops at q = 1.
        let qm1 = RatFunc::q().sub(&RatFunc::one());
        let m = Matrix::new(1, 1, vec![qm1]);
        let audit = rank_audit(&m, &[Rational::integer(1), Rational::integer(2)]);
        assert_eq!(audit.generic_rank, 1);
        assert!(audit.bounded());
        assert!(!audit.generic_everywhere());
    }
}

#[cfg(test)]
mod props;
