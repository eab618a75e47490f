//! Duals into the base, finite dual bases and the comparison map γ.

use std::sync::Arc;

use super::{flat_to_matrix, hom_equations, tensor_over_b, Bimodule, BimoduleMap, Side, TensorOverB};
use crate::error::{Error, Result};
use crate::exactlin::sparse::{self, Accumulator, SparseBasis, SparseMatrix, SparseVec};
use crate::exactlin::{Field, Scalar};

/// `Hom_{B-}(M, B)` (side `Left`) or `Hom_{-B}(M, B)` (side `Right`) as a
/// bimodule. For the left dual `(b·f)(x) = f(x·b)` and `(f·b)(x) = f(x)·b`;
/// for the right dual `(b·f)(x) = b·f(x)` and `(f·b)(x) = f(b·x)`.
#[derive(Clone, Debug)]
pub struct Dual {
    side: Side,
    source: Arc<Bimodule>,
    module: Arc<Bimodule>,
    space: SparseBasis,
    maps: Vec<SparseMatrix>,
}

pub type LeftDual = Dual;

/// `D(M) = Hom_{B-}(M, B)`.
pub fn left_dual(m: Arc<Bimodule>) -> Dual {
    Dual::new(m, Side::Left)
}

/// `Hom_{-B}(M, B)`.
pub fn right_dual(m: Arc<Bimodule>) -> Dual {
    Dual::new(m, Side::Right)
}

impl Dual {
    fn new(m: Arc<Bimodule>, side: Side) -> Dual {
        assert!(side != Side::Both);
        let base = m.base().clone();
        let field = base.field();
        let reg = super::regular_bimodule(base.clone());
        let (dm, db) = (m.dim(), base.dim());
        let space = sparse::kernel_of_rows(field, dm * db, hom_equations(&m, &reg, side));
        let maps: Vec<SparseMatrix> = space.vectors.iter().map(|v| flat_to_matrix(v, dm, db, field)).collect();
        let d = maps.len();
        let mut left = Vec::with_capacity(db);
        let mut right = Vec::with_capacity(db);
        for i in 0..db {
            let mut lc = Vec::with_capacity(d);
            let mut rc = Vec::with_capacity(d);
            for f in &maps {
                let (lv, rv): (Vec<SparseVec>, Vec<SparseVec>) = match side {
                    Side::Left => (
                        (0..dm).map(|x| f.apply(m.right(i).col(x))).collect(),
                        (0..dm).map(|x| reg.right(i).apply(f.col(x))).collect(),
                    ),
                    _ => (
                        (0..dm).map(|x| reg.left(i).apply(f.col(x))).collect(),
                        (0..dm).map(|x| f.apply(m.left(i).col(x))).collect(),
                    ),
                };
                lc.push(read_coords(&space, &lv, db));
                rc.push(read_coords(&space, &rv, db));
            }
            left.push(SparseMatrix::new(field, d, lc));
            right.push(SparseMatrix::new(field, d, rc));
        }
        let module = Arc::new(Bimodule::from_sparse_unchecked(base, d, left, right));
        Dual {
            side,
            source: m,
            module,
            space,
            maps,
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }
    pub fn source(&self) -> &Arc<Bimodule> {
        &self.source
    }
    pub fn module(&self) -> &Arc<Bimodule> {
        &self.module
    }
    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    /// The `k`-th basis functional as a matrix `M → B`.
    pub fn functional(&self, k: usize) -> &SparseMatrix {
        &self.maps[k]
    }

    /// `φ(x)` for `φ` given in dual coordinates.
    pub fn eval(&self, phi: &[(u32, Scalar)], x: &[(u32, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (k, s) in phi {
            acc.add_scaled(s, &self.maps[*k as usize].apply(x));
        }
        acc.finish()
    }

    /// Dual coordinates of the functional with `values[x] = φ(e_x)`, if it lies in the dual.
    pub fn coordinates(&self, values: &[SparseVec]) -> Option<SparseVec> {
        let flat = flatten(values, self.module.base().dim());
        let c = self.space.coordinates(&flat)?;
        Some(sparse::from_dense(&c))
    }

    /// Functional as a matrix from dual coordinates.
    pub fn to_matrix(&self, phi: &[(u32, Scalar)]) -> SparseMatrix {
        let f = self.module.field();
        let mut out = SparseMatrix::zeros(f, self.module.base().dim(), self.source.dim());
        for (k, s) in phi {
            out = out.add(&self.maps[*k as usize].scale(s));
        }
        out
    }
}

fn flatten(values: &[SparseVec], db: usize) -> SparseVec {
    let mut flat = Vec::new();
    for (x, v) in values.iter().enumerate() {
        for (y, s) in v {
            flat.push(((x * db) as u32 + *y, s.clone()));
        }
    }
    flat
}

fn read_coords(space: &SparseBasis, values: &[SparseVec], db: usize) -> SparseVec {
    sparse::from_dense(&space.read_coordinates(&flatten(values, db)))
}

/// A finite dual basis `{f_i, a_i}`: `x = Σ f_i(x)·a_i` for the left side,
/// `x = Σ a_i·f_i(x)` for the right side.
#[derive(Clone, Debug)]
pub struct DualBasis {
    pub dual: Dual,
    /// `f_i` in dual coordinates.
    pub functionals: Vec<SparseVec>,
    /// `a_i` as vectors of the module.
    pub elements: Vec<SparseVec>,
}

impl DualBasis {
    pub fn side(&self) -> Side {
        self.dual.side
    }

    /// `Σ f_i(x)·a_i` (or the right-handed sum).
    pub fn reconstruct(&self, x: &[(u32, Scalar)]) -> SparseVec {
        let m = &self.dual.source;
        let mut acc = Accumulator::new();
        for (f, a) in self.functionals.iter().zip(&self.elements) {
            let fx = self.dual.eval(f, x);
            let term = match self.dual.side {
                Side::Left => m.act_left(&fx, a),
                _ => m.act_right(a, &fx),
            };
            acc.add_scaled(&m.field().one(), &term);
        }
        acc.finish()
    }

    pub fn verify(&self) -> bool {
        let f = self.dual.source.field();
        (0..self.dual.source.dim()).all(|x| self.reconstruct(&sparse::unit(x, f)) == sparse::unit(x, f))
    }
}

/// Dual basis over the full k-basis of `m`; `NotProjective` when none exists.
pub fn dual_basis(m: Arc<Bimodule>, side: Side) -> Result<DualBasis> {
    let dual = Dual::new(m.clone(), side);
    let field = m.field();
    let (dm, dd) = (m.dim(), dual.dim());
    let db = m.base().dim();
    let act_rows: Vec<Vec<SparseVec>> = (0..db)
        .map(|y| match side {
            Side::Left => m.left(y).rows(),
            _ => m.right(y).rows(),
        })
        .collect();
    let mut rows = Vec::with_capacity(dm * dm);
    for x in 0..dm {
        let mut eqs: Vec<Accumulator> = (0..dm).map(|_| Accumulator::new()).collect();
        for (k, fk) in dual.maps.iter().enumerate() {
            for (y, c) in fk.col(x) {
                for (z, row) in act_rows[*y as usize].iter().enumerate() {
                    for (i, coef) in row {
                        eqs[z].add(*i * dd as u32 + k as u32, c * coef);
                    }
                }
            }
        }
        for (z, acc) in eqs.into_iter().enumerate() {
            let rhs = if z == x { field.one() } else { field.zero() };
            rows.push((acc.finish(), rhs));
        }
    }
    let sol = sparse::solve_rows(field, dm * dd, rows).ok_or(Error::NotProjective)?;
    let functionals = (0..dm)
        .map(|i| sparse::from_dense(&sol[i * dd..(i + 1) * dd]))
        .collect();
    let elements = (0..dm).map(|i| sparse::unit(i, field)).collect();
    let db = DualBasis {
        dual,
        functionals,
        elements,
    };
    debug_assert!(db.verify());
    Ok(db)
}

/// `γ: D(N) ⊗_B D(M) → D(M ⊗_B N)`, `γ(φ ⊗ χ)(m ⊗ n) = χ(m·φ(n))`, with its
/// inverse `σ ↦ Σ f_i ⊗ σ(− ⊗ a_i)` when `N` has a left dual basis.
#[derive(Clone, Debug)]
pub struct Gamma {
    pub dual_m: Dual,
    pub dual_n: Dual,
    pub tensor_mn: TensorOverB,
    pub source: TensorOverB,
    pub target: Dual,
    pub map: BimoduleMap,
    pub inverse: Option<BimoduleMap>,
}

pub fn gamma(m: Arc<Bimodule>, n: Arc<Bimodule>) -> Result<Gamma> {
    let field = m.field();
    let dual_m = left_dual(m.clone());
    let dual_n = left_dual(n.clone());
    let tensor_mn = tensor_over_b(m.clone(), n.clone())?;
    let source = tensor_over_b(dual_n.module.clone(), dual_m.module.clone())?;
    let target = left_dual(tensor_mn.result().clone());
    let eval_pair = |phi: &[(u32, Scalar)], chi: &[(u32, Scalar)], x: &[(u32, Scalar)], y: &[(u32, Scalar)]| {
        let phin = dual_n.eval(phi, y);
        dual_m.eval(chi, &m.act_right(x, &phin))
    };
    // balanced in the M ⊗ N variable: evaluating on every pure tensor agrees
    // with evaluating through the projection
    let mut cols = Vec::with_capacity(source.dim());
    for t in 0..source.dim() {
        let (p, q) = source.rep(t);
        let (phi, chi) = (sparse::unit(p, field), sparse::unit(q, field));
        let values: Vec<SparseVec> = (0..tensor_mn.dim())
            .map(|u| {
                let (x, y) = tensor_mn.rep(u);
                eval_pair(&phi, &chi, &sparse::unit(x, field), &sparse::unit(y, field))
            })
            .collect();
        for x in 0..m.dim() {
            for y in 0..n.dim() {
                let direct = eval_pair(&phi, &chi, &sparse::unit(x, field), &sparse::unit(y, field));
                let mut via = Accumulator::new();
                for (u, s) in tensor_mn.project_pair(x, y) {
                    via.add_scaled(s, &values[*u as usize]);
                }
                if via.finish() != direct {
                    return Err(Error::IsoCheckFailed("γ is not balanced".into()));
                }
            }
        }
        let c = target
            .coordinates(&values)
            .ok_or_else(|| Error::IsoCheckFailed("γ value is not left linear".into()))?;
        cols.push(c);
    }
    let map = BimoduleMap::from_sparse(
        source.result().clone(),
        target.module.clone(),
        SparseMatrix::new(field, target.dim(), cols),
    )?;
    // balanced in the D(N) ⊗ D(M) variable: relations vanish
    let dnn = dual_n.dim();
    for p in 0..dnn {
        for q in 0..dual_m.dim() {
            let direct: Vec<SparseVec> = (0..tensor_mn.dim())
                .map(|u| {
                    let (x, y) = tensor_mn.rep(u);
                    eval_pair(&sparse::unit(p, field), &sparse::unit(q, field), &sparse::unit(x, field), &sparse::unit(y, field))
                })
                .collect();
            let via = map.apply(source.project_pair(p, q));
            if target.coordinates(&direct) != Some(via) {
                return Err(Error::IsoCheckFailed("γ is not balanced on the dual side".into()));
            }
        }
    }
    let inverse = match dual_basis(n.clone(), Side::Left) {
        Err(_) => None,
        Ok(db) => {
            let mut cols = Vec::with_capacity(target.dim());
            for s in 0..target.dim() {
                let sigma = target.functional(s);
                let mut acc = Accumulator::new();
                for (fi, ai) in db.functionals.iter().zip(&db.elements) {
                    let values: Vec<SparseVec> = (0..m.dim())
                        .map(|x| sigma.apply(&tensor_mn.project(&sparse::unit(x, field), ai)))
                        .collect();
                    let chi = dual_m
                        .coordinates(&values)
                        .ok_or_else(|| Error::IsoCheckFailed("σ(− ⊗ a) not left linear".into()))?;
                    acc.add_scaled(&field.one(), &source.project(fi, &chi));
                }
                cols.push(acc.finish());
            }
            let inv = BimoduleMap::from_sparse(
                target.module.clone(),
                source.result().clone(),
                SparseMatrix::new(field, source.dim(), cols),
            )?;
            let id_t = SparseMatrix::identity(field, target.dim());
            let id_s = SparseMatrix::identity(field, source.dim());
            if map.sparse().compose(inv.sparse()) != id_t || inv.sparse().compose(map.sparse()) != id_s {
                return Err(Error::IsoCheckFailed("γ and its inverse do not compose to the identity".into()));
            }
            Some(inv)
        }
    };
    Ok(Gamma {
        dual_m,
        dual_n,
        tensor_mn,
        source,
        target,
        map,
        inverse,
    })
}

/// Field-level helper for tests and callers holding dense functionals.
pub fn functional_values(dual: &Dual, phi: &[Scalar]) -> Vec<SparseVec> {
    let f: Field = dual.module.field();
    let m = dual.to_matrix(&sparse::from_dense(phi));
    (0..dual.source.dim()).map(|x| m.apply(&sparse::unit(x, f))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{field_algebra, group_algebra, cyclic_table, truncated_polynomial};
    use crate::bimodule::{regular_bimodule, validate_bimodule};
    use crate::exactlin::Matrix;

    #[test]
    fn left_dual_dimensions() {
        let f = Field::prime(2).unwrap();
        let d = Arc::new(truncated_polynomial(f, 2).unwrap());
        let r = Arc::new(regular_bimodule(d));
        let dr = left_dual(r.clone());
        assert_eq!(dr.dim(), 2);
        validate_bimodule(dr.module()).unwrap();
        let k = Arc::new(field_algebra(f));
        let k3 = Arc::new(
            regular_bimodule(k.clone())
                .direct_sum(&regular_bimodule(k.clone()))
                .unwrap()
                .direct_sum(&regular_bimodule(k))
                .unwrap(),
        );
        assert_eq!(left_dual(k3).dim(), 3);
    }

    #[test]
    fn double_dual_of_free_module() {
        let f = Field::prime(2).unwrap();
        let d = Arc::new(truncated_polynomial(f, 2).unwrap());
        let r = regular_bimodule(d);
        let free = Arc::new(r.direct_sum(&r).unwrap());
        let dd = left_dual(left_dual(free.clone()).module().clone());
        assert_eq!(dd.dim(), free.dim());
    }

    #[test]
    fn dual_basis_examples() {
        let f = Field::prime(2).unwrap();
        let d = Arc::new(truncated_polynomial(f, 2).unwrap());
        let r = regular_bimodule(d.clone());
        let db = dual_basis(Arc::new(r.clone()), Side::Left).unwrap();
        assert!(db.verify());
        let free = Arc::new(r.direct_sum(&r).unwrap());
        assert!(dual_basis(free, Side::Left).unwrap().verify());
        let zero = Matrix::zeros(f, 1, 1);
        let one = Matrix::identity(f, 1);
        let simple = Arc::new(Bimodule::new(d, vec![one.clone(), zero.clone()], vec![one, zero]).unwrap());
        assert_eq!(dual_basis(simple, Side::Left).unwrap_err(), Error::NotProjective);
    }

    #[test]
    fn gamma_is_invertible_on_free_modules() {
        let q = Field::Rational;
        let c2 = Arc::new(group_algebra(q, &cyclic_table(2)).unwrap());
        let r = Arc::new(regular_bimodule(c2));
        let g = gamma(r.clone(), r).unwrap();
        assert!(g.inverse.is_some());
        let k = Arc::new(field_algebra(q));
        let k2 = Arc::new(regular_bimodule(k.clone()).direct_sum(&regular_bimodule(k.clone())).unwrap());
        let g = gamma(k2.clone(), k2).unwrap();
        assert_eq!(g.target.dim(), 4);
        assert!(g.inverse.is_some());
        let z = Arc::new(Bimodule::zero(k.clone()));
        let g = gamma(z, Arc::new(regular_bimodule(k))).unwrap();
        assert_eq!((g.source.dim(), g.target.dim()), (0, 0));
    }

    #[test]
    fn dual_basis_transfers_to_right_dual_basis_of_dual() {
        let f = Field::prime(3).unwrap();
        let d = Arc::new(truncated_polynomial(f, 2).unwrap());
        let r = regular_bimodule(d);
        let m = Arc::new(r.direct_sum(&r).unwrap());
        let db = dual_basis(m.clone(), Side::Left).unwrap();
        let dual = &db.dual;
        // φ = Σ f_i · φ(a_i) for every φ in D(M)
        for k in 0..dual.dim() {
            let phi = sparse::unit(k, f);
            let mut acc = Accumulator::new();
            for (fi, ai) in db.functionals.iter().zip(&db.elements) {
                let b = dual.eval(&phi, ai);
                acc.add_scaled(&f.one(), &dual.module().act_right(fi, &b));
            }
            assert_eq!(acc.finish(), phi);
        }
    }
}
