//! Tensor products over the base algebra as explicit quotients.

use std::sync::Arc;

use super::Bimodule;
use crate::error::{Error, Result};
use crate::exactlin::sparse::{self, Accumulator, Echelon, SparseMatrix, SparseVec};
use crate::exactlin::{Matrix, Scalar};

/// `M ⊗_B N` as the quotient of `M ⊗_k N` (flat index `x*dim(N) + y`) by the
/// balancing relations. Basis elements are classes of pure tensors `e_x ⊗ e_y`.
#[derive(Clone, Debug)]
pub struct TensorOverB {
    left: Arc<Bimodule>,
    right: Arc<Bimodule>,
    result: Arc<Bimodule>,
    proj: SparseMatrix,
    reps: Vec<(u32, u32)>,
}

pub fn tensor_over_b(m: Arc<Bimodule>, n: Arc<Bimodule>) -> Result<TensorOverB> {
    if m.base() != n.base() {
        return Err(Error::Incompatible("tensor over different bases".into()));
    }
    let base = m.base().clone();
    let field = base.field();
    let (dm, dn) = (m.dim(), n.dim());
    let ambient = dm * dn;
    let mut ech = Echelon::new(field, ambient);
    for g in base.algebra_generators() {
        for x in 0..dm {
            let xb = m.right(g).col(x);
            for y in 0..dn {
                let mut acc = Accumulator::new();
                for (s, c) in xb {
                    acc.add(*s * dn as u32 + y as u32, c.clone());
                }
                for (t, c) in n.left(g).col(y) {
                    acc.add(x as u32 * dn as u32 + *t, -c);
                }
                let r = acc.finish();
                if !r.is_empty() {
                    ech.insert(r);
                }
            }
        }
    }
    let rref = ech.into_rref();
    let free = rref.free_columns();
    let mut pos = vec![u32::MAX; ambient];
    for (k, c) in free.iter().enumerate() {
        pos[*c as usize] = k as u32;
    }
    let mut cols: Vec<SparseVec> = vec![Vec::new(); ambient];
    let one = field.one();
    for c in &free {
        cols[*c as usize] = vec![(pos[*c as usize], one.clone())];
    }
    for (p, row) in rref.pivots.iter().zip(&rref.rows) {
        let mut v: SparseVec = row
            .iter()
            .filter(|(c, _)| c != p)
            .map(|(c, s)| (pos[*c as usize], -s))
            .collect();
        v.sort_unstable_by_key(|e| e.0);
        cols[*p as usize] = v;
    }
    let dt = free.len();
    let proj = SparseMatrix::new(field, dt, cols);
    let reps: Vec<(u32, u32)> = free.iter().map(|c| (*c / dn as u32, *c % dn as u32)).collect();
    let nb = base.dim();
    let mut left = Vec::with_capacity(nb);
    let mut right = Vec::with_capacity(nb);
    for i in 0..nb {
        let lc = reps
            .iter()
            .map(|(x, y)| project_with(&proj, dn, m.left(i).col(*x as usize), &sparse::unit(*y as usize, field)))
            .collect();
        let rc = reps
            .iter()
            .map(|(x, y)| project_with(&proj, dn, &sparse::unit(*x as usize, field), n.right(i).col(*y as usize)))
            .collect();
        left.push(SparseMatrix::new(field, dt, lc));
        right.push(SparseMatrix::new(field, dt, rc));
    }
    let result = Arc::new(Bimodule::from_sparse_unchecked(base, dt, left, right));
    Ok(TensorOverB {
        left: m,
        right: n,
        result,
        proj,
        reps,
    })
}

fn project_with(proj: &SparseMatrix, dn: usize, u: &[(u32, Scalar)], v: &[(u32, Scalar)]) -> SparseVec {
    if u.len() == 1 && v.len() == 1 {
        let c = &u[0].1 * &v[0].1;
        return sparse::scale(proj.col(u[0].0 as usize * dn + v[0].0 as usize), &c);
    }
    let mut acc = Accumulator::new();
    for (x, a) in u {
        for (y, b) in v {
            acc.add_scaled(&(a * b), proj.col(*x as usize * dn + *y as usize));
        }
    }
    acc.finish()
}

impl TensorOverB {
    pub fn left(&self) -> &Arc<Bimodule> {
        &self.left
    }
    pub fn right(&self) -> &Arc<Bimodule> {
        &self.right
    }
    pub fn result(&self) -> &Arc<Bimodule> {
        &self.result
    }
    pub fn dim(&self) -> usize {
        self.result.dim()
    }

    /// Pure tensor `(x, y)` representing the basis element `t`.
    pub fn rep(&self, t: usize) -> (usize, usize) {
        let (x, y) = self.reps[t];
        (x as usize, y as usize)
    }

    /// Class of `e_x ⊗ e_y`.
    pub fn project_pair(&self, x: usize, y: usize) -> &SparseVec {
        self.proj.col(x * self.right.dim() + y)
    }

    /// Class of `u ⊗ v`.
    pub fn project(&self, u: &[(u32, Scalar)], v: &[(u32, Scalar)]) -> SparseVec {
        project_with(&self.proj, self.right.dim(), u, v)
    }

    pub fn projection_sparse(&self) -> &SparseMatrix {
        &self.proj
    }

    /// `M ⊗_k N → M ⊗_B N` as a dense matrix.
    pub fn balanced_projection(&self) -> Matrix {
        self.proj.to_dense()
    }

    /// Linear section sending each basis element to its representing pure tensor.
    pub fn section(&self) -> Matrix {
        let f = self.result.field();
        let dn = self.right.dim();
        let cols: Vec<SparseVec> = self
            .reps
            .iter()
            .map(|(x, y)| sparse::unit(*x as usize * dn + *y as usize, f))
            .collect();
        SparseMatrix::new(f, self.left.dim() * dn, cols).to_dense()
    }

    /// `f ⊗ g` transported to the quotients: `self → target`.
    pub fn map_tensor(&self, target: &TensorOverB, f: &SparseMatrix, g: &SparseMatrix) -> SparseMatrix {
        let cols = self
            .reps
            .iter()
            .map(|(x, y)| target.project(f.col(*x as usize), g.col(*y as usize)))
            .collect();
        SparseMatrix::new(self.result.field(), target.dim(), cols)
    }
}

/// Left-associated iterated tensor product `((F_1 ⊗ F_2) ⊗ F_3) ⊗ …`.
#[derive(Clone, Debug)]
pub struct TensorChain {
    factors: Vec<Arc<Bimodule>>,
    /// `levels[k-2]` builds the product of the first `k` factors.
    levels: Vec<TensorOverB>,
    tuples: Vec<Vec<Vec<u32>>>,
}

impl TensorChain {
    pub fn new(first: Arc<Bimodule>) -> TensorChain {
        let tuples = vec![(0..first.dim() as u32).map(|x| vec![x]).collect()];
        TensorChain {
            factors: vec![first],
            levels: Vec::new(),
            tuples,
        }
    }

    pub fn push(&mut self, factor: Arc<Bimodule>) -> Result<()> {
        let prev = self.object(self.len()).clone();
        let t = tensor_over_b(prev, factor.clone())?;
        let prev_tuples = self.tuples.last().unwrap();
        let tuples = (0..t.dim())
            .map(|i| {
                let (u, x) = t.rep(i);
                let mut v = prev_tuples[u].clone();
                v.push(x as u32);
                v
            })
            .collect();
        self.tuples.push(tuples);
        self.factors.push(factor);
        self.levels.push(t);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor(&self, k: usize) -> &Arc<Bimodule> {
        &self.factors[k]
    }

    /// Product of the first `k ≥ 1` factors.
    pub fn object(&self, k: usize) -> &Arc<Bimodule> {
        assert!(k >= 1 && k <= self.len());
        if k == 1 {
            &self.factors[0]
        } else {
            self.levels[k - 2].result()
        }
    }

    pub fn level(&self, k: usize) -> &TensorOverB {
        &self.levels[k - 2]
    }

    /// Pure tensor representing basis element `t` of the `k`-fold product.
    pub fn rep_tuple(&self, k: usize, t: usize) -> &[u32] {
        &self.tuples[k - 1][t]
    }

    /// Class of `e_{t_1} ⊗ … ⊗ e_{t_k}` in the product of the first `k` factors.
    pub fn project_tuple(&self, tuple: &[u32]) -> SparseVec {
        let f = self.factors[0].field();
        let mut acc = sparse::unit(tuple[0] as usize, f);
        for (k, t) in tuple.iter().enumerate().skip(1) {
            let lvl = &self.levels[k - 1];
            acc = lvl.project(&acc, &sparse::unit(*t as usize, f));
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// Class of `v_1 ⊗ … ⊗ v_k`.
    pub fn project_vecs(&self, vecs: &[SparseVec]) -> SparseVec {
        let mut acc = vecs[0].clone();
        for (k, v) in vecs.iter().enumerate().skip(1) {
            acc = self.levels[k - 1].project(&acc, v);
            if acc.is_empty() {
                break;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{diagonal, field_algebra, truncated_polynomial};
    use crate::bimodule::regular_bimodule;
    use crate::exactlin::Field;

    #[test]
    fn tensor_examples() {
        let f = Field::prime(2).unwrap();
        let d = Arc::new(truncated_polynomial(f, 2).unwrap());
        let r = Arc::new(regular_bimodule(d));
        let t = tensor_over_b(r.clone(), r.clone()).unwrap();
        assert_eq!(t.dim(), 2);
        let p = t.balanced_projection();
        assert_eq!(p.mul(&t.section()), Matrix::identity(f, 2));

        let k = Arc::new(field_algebra(f));
        let k2 = Arc::new(regular_bimodule(k.clone()).direct_sum(&regular_bimodule(k)).unwrap());
        assert_eq!(tensor_over_b(k2.clone(), k2).unwrap().dim(), 4);
    }

    #[test]
    fn orthogonal_idempotents_kill_the_tensor() {
        let q = Field::Rational;
        let b = Arc::new(diagonal(q, 2));
        let one = Matrix::identity(q, 1);
        let zero = Matrix::zeros(q, 1, 1);
        let first = Arc::new(Bimodule::new(b.clone(), vec![one.clone(), zero.clone()], vec![one.clone(), zero.clone()]).unwrap());
        let second = Arc::new(Bimodule::new(b, vec![zero.clone(), one.clone()], vec![zero, one]).unwrap());
        assert_eq!(tensor_over_b(first, second).unwrap().dim(), 0);
    }

    #[test]
    fn chain_reps_project_to_basis() {
        let q = Field::Rational;
        let d = Arc::new(truncated_polynomial(q, 3).unwrap());
        let r = Arc::new(regular_bimodule(d));
        let mut c = TensorChain::new(r.clone());
        c.push(r.clone()).unwrap();
        c.push(r).unwrap();
        assert_eq!(c.object(3).dim(), 3);
        for t in 0..3 {
            let tup = c.rep_tuple(3, t).to_vec();
            assert_eq!(c.project_tuple(&tup), sparse::unit(t, q));
        }
    }
}
