//! Bimodules over a finite-dimensional algebra, their maps, tensor products
//! over the base, left duals and dual bases.

mod dual;
pub(crate) mod frame;
mod tensor;

pub use dual::{dual_basis, functional_values, gamma, left_dual, right_dual, Dual, DualBasis, Gamma, LeftDual};
pub use tensor::{tensor_over_b, TensorChain, TensorOverB};

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraExtension};
use crate::error::{violation, Error, Result};
use crate::exactlin::sparse::{self, SparseMatrix, SparseVec};
use crate::exactlin::{Field, Matrix, Scalar, Subspace};

/// Which actions a map has to respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Both,
}

/// A bimodule over `base`; `left[i]` and `right[i]` are the actions of the
/// basis element `e_i` (columns are images of basis vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    base: Arc<Algebra>,
    dim: usize,
    left: Vec<SparseMatrix>,
    right: Vec<SparseMatrix>,
}

impl Bimodule {
    pub fn new(base: Arc<Algebra>, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule> {
        let left = left.iter().map(SparseMatrix::from_dense).collect();
        let right = right.iter().map(SparseMatrix::from_dense).collect();
        Bimodule::from_sparse(base, left, right)
    }

    pub fn from_sparse(base: Arc<Algebra>, left: Vec<SparseMatrix>, right: Vec<SparseMatrix>) -> Result<Bimodule> {
        let dim = left.first().or(right.first()).map_or(0, |m| m.nrows());
        if left.len() != base.dim() || right.len() != base.dim() {
            return Err(Error::Incompatible("one action matrix per base element required".into()));
        }
        for m in left.iter().chain(&right) {
            if m.nrows() != dim || m.ncols() != dim || m.field() != base.field() {
                return Err(Error::Incompatible("action matrix shape".into()));
            }
        }
        let m = Bimodule { base, dim, left, right };
        validate_bimodule(&m)?;
        Ok(m)
    }

    pub(crate) fn from_sparse_unchecked(
        base: Arc<Algebra>,
        dim: usize,
        left: Vec<SparseMatrix>,
        right: Vec<SparseMatrix>,
    ) -> Bimodule {
        Bimodule { base, dim, left, right }
    }

    /// The zero bimodule.
    pub fn zero(base: Arc<Algebra>) -> Bimodule {
        let f = base.field();
        let n = base.dim();
        Bimodule::from_sparse_unchecked(
            base,
            0,
            vec![SparseMatrix::zeros(f, 0, 0); n],
            vec![SparseMatrix::zeros(f, 0, 0); n],
        )
    }

    pub fn base(&self) -> &Arc<Algebra> {
        &self.base
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn left(&self, i: usize) -> &SparseMatrix {
        &self.left[i]
    }
    pub fn right(&self, i: usize) -> &SparseMatrix {
        &self.right[i]
    }

    pub fn left_matrix(&self, i: usize) -> Matrix {
        self.left[i].to_dense()
    }
    pub fn right_matrix(&self, i: usize) -> Matrix {
        self.right[i].to_dense()
    }

    /// `b · x` for `b` in the base algebra.
    pub fn act_left(&self, b: &[(u32, Scalar)], x: &[(u32, Scalar)]) -> SparseVec {
        let mut acc = sparse::Accumulator::new();
        for (i, s) in b {
            acc.add_scaled(s, &self.left[*i as usize].apply(x));
        }
        acc.finish()
    }

    /// `x · b`.
    pub fn act_right(&self, x: &[(u32, Scalar)], b: &[(u32, Scalar)]) -> SparseVec {
        let mut acc = sparse::Accumulator::new();
        for (i, s) in b {
            acc.add_scaled(s, &self.right[*i as usize].apply(x));
        }
        acc.finish()
    }

    /// Restriction of scalars along an extension, for a bimodule over the big algebra.
    pub fn restrict(&self, ext: &AlgebraExtension) -> Result<Bimodule> {
        if !Arc::ptr_eq(&self.base, ext.big()) && *self.base != **ext.big() {
            return Err(Error::Incompatible("restriction along a foreign extension".into()));
        }
        let f = self.field();
        let combine = |acts: &[SparseMatrix], i: usize| {
            let mut m = SparseMatrix::zeros(f, self.dim, self.dim);
            for (k, s) in ext.embed_sparse().col(i) {
                m = m.add(&acts[*k as usize].scale(s));
            }
            m
        };
        let n = ext.sub().dim();
        let left = (0..n).map(|i| combine(&self.left, i)).collect();
        let right = (0..n).map(|i| combine(&self.right, i)).collect();
        Ok(Bimodule::from_sparse_unchecked(ext.sub().clone(), self.dim, left, right))
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule> {
        if self.base != other.base {
            return Err(Error::Incompatible("direct sum over different bases".into()));
        }
        let shift = |m: &SparseMatrix, o: &SparseMatrix| {
            let mut cols: Vec<SparseVec> = m.columns().to_vec();
            for c in o.columns() {
                cols.push(c.iter().map(|(i, s)| (*i + self.dim as u32, s.clone())).collect());
            }
            SparseMatrix::new(self.field(), self.dim + other.dim, cols)
        };
        let left = self.left.iter().zip(&other.left).map(|(a, b)| shift(a, b)).collect();
        let right = self.right.iter().zip(&other.right).map(|(a, b)| shift(a, b)).collect();
        Ok(Bimodule::from_sparse_unchecked(
            self.base.clone(),
            self.dim + other.dim,
            left,
            right,
        ))
    }
}

/// Checks unitality, both associativity laws and commutation of the actions.
pub fn validate_bimodule(m: &Bimodule) -> Result<()> {
    let b = &m.base;
    let n = b.dim();
    let f = m.field();
    let combo = |acts: &[SparseMatrix], v: &[(u32, Scalar)]| {
        let mut out = SparseMatrix::zeros(f, m.dim, m.dim);
        for (k, s) in v {
            out = out.add(&acts[*k as usize].scale(s));
        }
        out
    };
    let id = SparseMatrix::identity(f, m.dim);
    if combo(&m.left, b.unit()) != id {
        return Err(violation("bimodule", "left unit", vec![]));
    }
    if combo(&m.right, b.unit()) != id {
        return Err(violation("bimodule", "right unit", vec![]));
    }
    for i in 0..n {
        for j in 0..n {
            let p = b.product(i, j);
            if combo(&m.left, p) != m.left[i].compose(&m.left[j]) {
                return Err(violation("bimodule", "left associativity", vec![i, j]));
            }
            if combo(&m.right, p) != m.right[j].compose(&m.right[i]) {
                return Err(violation("bimodule", "right associativity", vec![i, j]));
            }
            if m.left[i].compose(&m.right[j]) != m.right[j].compose(&m.left[i]) {
                return Err(violation("bimodule", "actions commute", vec![i, j]));
            }
        }
    }
    Ok(())
}

/// `B` acting on itself by multiplication.
pub fn regular_bimodule(b: Arc<Algebra>) -> Bimodule {
    let n = b.dim();
    let left = (0..n).map(|i| b.left_mult(i)).collect();
    let right = (0..n).map(|i| b.right_mult(i)).collect();
    Bimodule::from_sparse_unchecked(b, n, left, right)
}

/// A linear map commuting with both actions.
#[derive(Clone, Debug)]
pub struct BimoduleMap {
    source: Arc<Bimodule>,
    target: Arc<Bimodule>,
    matrix: SparseMatrix,
}

impl BimoduleMap {
    pub fn new(source: Arc<Bimodule>, target: Arc<Bimodule>, matrix: Matrix) -> Result<BimoduleMap> {
        BimoduleMap::from_sparse(source, target, SparseMatrix::from_dense(&matrix))
    }

    pub fn from_sparse(source: Arc<Bimodule>, target: Arc<Bimodule>, matrix: SparseMatrix) -> Result<BimoduleMap> {
        let m = BimoduleMap::from_sparse_unchecked(source, target, matrix)?;
        m.check_linearity(Side::Both)?;
        Ok(m)
    }

    pub(crate) fn from_sparse_unchecked(
        source: Arc<Bimodule>,
        target: Arc<Bimodule>,
        matrix: SparseMatrix,
    ) -> Result<BimoduleMap> {
        if matrix.nrows() != target.dim || matrix.ncols() != source.dim {
            return Err(Error::Incompatible("bimodule map shape".into()));
        }
        if source.base != target.base {
            return Err(Error::Incompatible("bimodule map between different bases".into()));
        }
        Ok(BimoduleMap { source, target, matrix })
    }

    pub fn check_linearity(&self, side: Side) -> Result<()> {
        for i in 0..self.source.base.dim() {
            if side != Side::Right
                && self.matrix.compose(&self.source.left[i]) != self.target.left[i].compose(&self.matrix)
            {
                return Err(violation("bimodule map", "left linearity", vec![i]));
            }
            if side != Side::Left
                && self.matrix.compose(&self.source.right[i]) != self.target.right[i].compose(&self.matrix)
            {
                return Err(violation("bimodule map", "right linearity", vec![i]));
            }
        }
        Ok(())
    }

    pub fn identity(m: Arc<Bimodule>) -> BimoduleMap {
        let id = SparseMatrix::identity(m.field(), m.dim);
        BimoduleMap {
            source: m.clone(),
            target: m,
            matrix: id,
        }
    }

    pub fn source(&self) -> &Arc<Bimodule> {
        &self.source
    }
    pub fn target(&self) -> &Arc<Bimodule> {
        &self.target
    }
    pub fn sparse(&self) -> &SparseMatrix {
        &self.matrix
    }
    pub fn matrix(&self) -> Matrix {
        self.matrix.to_dense()
    }

    pub fn apply(&self, v: &[(u32, Scalar)]) -> SparseVec {
        self.matrix.apply(v)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &BimoduleMap) -> Result<BimoduleMap> {
        if inner.target.dim != self.source.dim {
            return Err(Error::Incompatible("composition of bimodule maps".into()));
        }
        Ok(BimoduleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.compose(&inner.matrix),
        })
    }
}

/// Equations `f(b·x) = b·f(x)` (and/or the right version) on the flat
/// coordinates `x*dim(n) + y` of linear maps `m → n`.
pub(crate) fn hom_equations(m: &Bimodule, n: &Bimodule, side: Side) -> Vec<SparseVec> {
    let gens = m.base.algebra_generators();
    let dn = n.dim as u32;
    let mut rows = Vec::new();
    let mut emit = |src: &SparseMatrix, tgt: &SparseMatrix| {
        let tgt_rows = tgt.rows();
        for x in 0..m.dim {
            for y in 0..n.dim {
                let mut acc = sparse::Accumulator::new();
                for (s, c) in src.col(x) {
                    acc.add(*s * dn + y as u32, c.clone());
                }
                for (t, c) in &tgt_rows[y] {
                    acc.add(x as u32 * dn + *t, -c);
                }
                let r = acc.finish();
                if !r.is_empty() {
                    rows.push(r);
                }
            }
        }
    };
    for &g in &gens {
        if side != Side::Right {
            emit(&m.left[g], &n.left[g]);
        }
        if side != Side::Left {
            emit(&m.right[g], &n.right[g]);
        }
    }
    rows
}

/// All linear maps `m → n` respecting the chosen actions, in flat coordinates
/// `x*dim(n) + y` (the coefficient of `e_y` in `f(e_x)`).
pub fn hom_space(m: &Bimodule, n: &Bimodule, side: Side) -> Result<Subspace> {
    if m.base != n.base {
        return Err(Error::Incompatible("hom space over different bases".into()));
    }
    let rows = hom_equations(m, n, side);
    Ok(sparse::kernel_of_rows(m.field(), m.dim * n.dim, rows).to_subspace())
}

/// Flat hom-space coordinates as a sparse matrix (column `x` is `f(e_x)`).
pub(crate) fn flat_to_matrix(flat: &[(u32, Scalar)], src_dim: usize, tgt_dim: usize, field: Field) -> SparseMatrix {
    let mut cols: Vec<SparseVec> = vec![Vec::new(); src_dim];
    for (idx, s) in flat {
        let (x, y) = (*idx as usize / tgt_dim, *idx as usize % tgt_dim);
        cols[x].push((y as u32, s.clone()));
    }
    SparseMatrix::new(field, tgt_dim, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_table, diagonal, group_algebra, matrix_algebra, truncated_polynomial};

    #[test]
    fn regular_bimodules_validate() {
        let q = Field::Rational;
        let k = Arc::new(crate::algebra::field_algebra(q));
        let r = regular_bimodule(k);
        assert_eq!(r.dim(), 1);
        validate_bimodule(&r).unwrap();
        let c2 = Arc::new(group_algebra(q, &cyclic_table(2)).unwrap());
        validate_bimodule(&regular_bimodule(c2)).unwrap();
        validate_bimodule(&regular_bimodule(Arc::new(matrix_algebra(q, 2)))).unwrap();
    }

    #[test]
    fn hom_space_examples() {
        let q = Field::Rational;
        let c2 = Arc::new(group_algebra(q, &cyclic_table(2)).unwrap());
        let r = regular_bimodule(c2);
        assert_eq!(hom_space(&r, &r, Side::Left).unwrap().dim(), 2);
        let m2 = regular_bimodule(Arc::new(matrix_algebra(q, 2)));
        assert_eq!(hom_space(&m2, &m2, Side::Both).unwrap().dim(), 1);
        let k = Arc::new(crate::algebra::field_algebra(q));
        let k3 = regular_bimodule(k.clone())
            .direct_sum(&regular_bimodule(k.clone()))
            .unwrap()
            .direct_sum(&regular_bimodule(k))
            .unwrap();
        assert_eq!(hom_space(&k3, &k3, Side::Both).unwrap().dim(), 9);
    }

    #[test]
    fn broken_action_is_rejected() {
        let f = Field::prime(2).unwrap();
        let d = Arc::new(truncated_polynomial(f, 2).unwrap());
        // x acting as the identity on a one-dimensional module: x² = 0 fails
        let one = Matrix::identity(f, 1);
        let err = Bimodule::new(d, vec![one.clone(), one.clone()], vec![one.clone(), one]).unwrap_err();
        assert!(matches!(err, Error::Violation { .. }));
        let d2 = Arc::new(diagonal(f, 2));
        validate_bimodule(&regular_bimodule(d2)).unwrap();
    }
}
