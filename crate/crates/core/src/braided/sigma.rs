use crate::error::{Error, Result};
use crate::exactla::{inverse, kernel, Matrix, Subspace};
use crate::qscalar::{Field, RatFunc, Rational};
use crate::uqsl2::{Flavor, ModuleRep, SparseCol};

/// The normalized braiding on `V_ℓ ⊗ V_ℓ`.
///
/// Built from isotypic projectors: on the component isomorphic to
/// `V_{2ℓ-2k}` it acts by `(-1)^k`. Basis index of `v_i ⊗ v_j` is
/// `i * (ℓ + 1) + j`.
#[derive(Clone, Debug)]
pub struct SigmaOperator<F> {
    l: usize,
    square: ModuleRep<F>,
    matrix: Matrix<F>,
    plus: Subspace<F>,
    minus: Subspace<F>,
}

/// σ over ℚ(q).
pub fn build_sigma(l: usize) -> SigmaOperator<RatFunc> {
    SigmaOperator::build(&ModuleRep::simple_generic(l))
        .expect("isotypic decomposition of a tensor square")
}

impl<F: Field> SigmaOperator<F> {
    /// Build σ on `v ⊗ v` for a simple module `v`.
    pub fn build(v: &ModuleRep<F>) -> Result<Self> {
        let l = v.dim() - 1;
        let square = v.tensor(v)?;
        let n = square.dim();
        // Highest weight vector of each component V_{2l-2k}.
        let mut hw = Vec::with_capacity(l + 1);
        for k in 0..=l {
            let w = 2 * (l - k) as i64;
            let s = square.highest_weight_vectors(w);
            if s.dim() != 1 {
                return Err(Error::InconsistentModule(format!(
                    "tensor square has {} highest weight vectors of weight {w}",
                    s.dim()
                )));
            }
            hw.push(s.basis().row(0).to_vec());
        }
        let mut matrix = Matrix::zeros(n, n);
        let top = 2 * l as i64;
        let mut w = top;
        while w >= -top {
            let idx = square.weight_indices(w);
            let mut cols = Vec::new();
            let mut signs = Vec::new();
            for (k, u) in hw.iter().enumerate() {
                let h = 2 * (l - k) as i64;
                if h < w.abs() {
                    continue;
                }
                let mut x = u.clone();
                for _ in 0..(h - w) / 2 {
                    x = square.apply_f(&x);
                }
                cols.push(idx.iter().map(|&i| x[i].clone()).collect::<Vec<F>>());
                signs.push(if k % 2 == 0 { F::one() } else { F::one().neg() });
            }
            let b = Matrix::from_rows(idx.len(), cols).transpose();
            let binv = inverse(&b).ok_or_else(|| {
                Error::InconsistentModule(format!("components do not span weight {w}"))
            })?;
            let mut bd = b.clone();
            for (c, s) in signs.iter().enumerate() {
                for r in 0..bd.rows() {
                    let x = bd.get(r, c).mul(s);
                    bd.set(r, c, x);
                }
            }
            let block = bd.mul(&binv);
            for (r, &i) in idx.iter().enumerate() {
                for (c, &j) in idx.iter().enumerate() {
                    matrix.set(i, j, block.get(r, c).clone());
                }
            }
            w -= 2;
        }
        Ok(Self::from_matrix(l, square, matrix))
    }

    fn from_matrix(l: usize, square: ModuleRep<F>, matrix: Matrix<F>) -> Self {
        let id = Matrix::identity(matrix.rows());
        let plus = kernel(&matrix.sub(&id));
        let minus = kernel(&matrix.add(&id));
        SigmaOperator {
            l,
            square,
            matrix,
            plus,
            minus,
        }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    /// The module `V_ℓ ⊗ V_ℓ` σ acts on.
    pub fn square(&self) -> &ModuleRep<F> {
        &self.square
    }

    /// `+1` eigenspace, the braided symmetric square.
    pub fn plus_subspace(&self) -> &Subspace<F> {
        &self.plus
    }

    /// `-1` eigenspace, the braided exterior square.
    pub fn minus_subspace(&self) -> &Subspace<F> {
        &self.minus
    }

    /// Sparse columns of `σ + sign`.
    pub(crate) fn shifted_cols(&self, sign: i64) -> Vec<SparseCol<F>> {
        let n = self.matrix.rows();
        let s = F::from_i64(sign);
        (0..n)
            .map(|j| {
                (0..n)
                    .filter_map(|i| {
                        let mut x = self.matrix.get(i, j).clone();
                        if i == j {
                            x = x.add(&s);
                        }
                        (!x.is_zero()).then_some((i, x))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn squares_to_identity(&self) -> bool {
        self.matrix.mul(&self.matrix) == Matrix::identity(self.matrix.rows())
    }

    /// σ commutes with `E`, `F` and `K` on the tensor square.
    pub fn is_equivariant(&self) -> bool {
        let s = &self.matrix;
        [self.square.e_mat(), self.square.f_mat(), self.square.k_mat()]
            .iter()
            .all(|x| s.mul(x) == x.mul(s))
    }

    pub fn plus_module(&self) -> Result<ModuleRep<F>> {
        self.square.restrict(&self.plus)
    }

    pub fn minus_module(&self) -> Result<ModuleRep<F>> {
        self.square.restrict(&self.minus)
    }
}

impl SigmaOperator<RatFunc> {
    /// Evaluate at `q = q0`. Fails if `q0` is a pole of some entry or if
    /// the eigenspace dimensions drop.
    pub fn specialize(&self, q0: &Rational) -> Result<SigmaOperator<Rational>> {
        if q0.is_zero() || q0.abs().is_one() {
            return Err(Error::InvalidArgument(format!(
                "specialization point {q0} is not generic"
            )));
        }
        let v = ModuleRep::simple(self.l, Flavor::Quantum, q0.clone());
        let square = v.tensor(&v)?;
        let matrix = self.matrix.specialize(q0)?;
        let s = SigmaOperator::from_matrix(self.l, square, matrix);
        if s.plus.dim() != self.plus.dim() || s.minus.dim() != self.minus.dim() {
            return Err(Error::InvalidArgument(format!(
                "specialization point {q0} changes the eigenspaces of sigma"
            )));
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqsl2::Decomposition;

    #[test]
    fn small_eigenspaces() {
        let s0 = build_sigma(0);
        assert_eq!(s0.matrix(), &Matrix::identity(1));
        let s1 = build_sigma(1);
        assert_eq!((s1.plus_subspace().dim(), s1.minus_subspace().dim()), (3, 1));
        let s3 = build_sigma(3);
        assert_eq!(
            s3.plus_module().unwrap().decompose().unwrap(),
            Decomposition::from_weights([6, 2])
        );
        assert_eq!(
            s3.minus_module().unwrap().decompose().unwrap(),
            Decomposition::from_weights([4, 0])
        );
    }

    #[test]
    fn involutive_and_equivariant() {
        for l in 0..=4 {
            let s = build_sigma(l);
            assert!(s.squares_to_identity(), "l = {l}");
            assert!(s.is_equivariant(), "l = {l}");
        }
    }

    #[test]
    fn classical_limit_is_the_flip() {
        // At q = 1 the braiding degenerates to the tensor flip.
        let s = build_sigma(2);
        let m = s.matrix().specialize(&Rational::one()).unwrap();
        let d = 3;
        for i in 0..d {
            for j in 0..d {
                for a in 0..d {
                    for b in 0..d {
                        let expected = if a == j && b == i { 1 } else { 0 };
                        assert_eq!(m.get(a * d + b, i * d + j), &Rational::integer(expected));
                    }
                }
            }
        }
    }
}
