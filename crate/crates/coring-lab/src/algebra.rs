//! Finite-dimensional unital algebras given by structure constants.
//!
//! Convention: `e_i · e_j = Σ_k c[i][j][k] e_k`.

use std::sync::Arc;

use crate::error::{violation, Error, Result};
use crate::exactlin::sparse::{self, Accumulator, SparseMatrix, SparseVec};
use crate::exactlin::{kernel_basis, rank, Field, Matrix, Scalar, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    /// `products[i*dim + j] = e_i · e_j`
    products: Vec<SparseVec>,
    unit: SparseVec,
}

impl Algebra {
    /// Builds and validates an algebra from `products[i*dim+j] = e_i e_j`.
    pub fn from_products(field: Field, dim: usize, products: Vec<SparseVec>, unit: SparseVec) -> Result<Algebra> {
        if products.len() != dim * dim {
            return Err(Error::Incompatible(format!(
                "expected {} products, found {}",
                dim * dim,
                products.len()
            )));
        }
        let a = Algebra {
            field,
            dim,
            products,
            unit,
        };
        validate_algebra(&a)?;
        Ok(a)
    }

    /// `c[(i*dim + j)*dim + k]` is the coefficient of `e_k` in `e_i e_j`.
    pub fn from_structure_constants(field: Field, dim: usize, c: &[Scalar], unit: &[Scalar]) -> Result<Algebra> {
        if c.len() != dim * dim * dim || unit.len() != dim {
            return Err(Error::Incompatible("structure constant shape".into()));
        }
        let products = (0..dim * dim).map(|ij| sparse::from_dense(&c[ij * dim..(ij + 1) * dim])).collect();
        Algebra::from_products(field, dim, products, sparse::from_dense(unit))
    }

    pub(crate) fn from_products_unchecked(field: Field, dim: usize, products: Vec<SparseVec>, unit: SparseVec) -> Algebra {
        Algebra {
            field,
            dim,
            products,
            unit,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn unit_dense(&self) -> Vec<Scalar> {
        sparse::to_dense(&self.unit, self.dim, self.field)
    }

    /// `e_i · e_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        sparse::get(self.product(i, j), k as u32)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn mul(&self, x: &[(u32, Scalar)], y: &[(u32, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x {
            for (j, b) in y {
                acc.add_scaled(&(a * b), self.product(*i as usize, *j as usize));
            }
        }
        acc.finish()
    }

    pub fn mul_dense(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let p = self.mul(&sparse::from_dense(x), &sparse::from_dense(y));
        sparse::to_dense(&p, self.dim, self.field)
    }

    /// Left multiplication by `e_i` as a linear map.
    pub fn left_mult(&self, i: usize) -> SparseMatrix {
        SparseMatrix::new(self.field, self.dim, (0..self.dim).map(|j| self.product(i, j).clone()).collect())
    }

    /// Right multiplication by `e_i`.
    pub fn right_mult(&self, i: usize) -> SparseMatrix {
        SparseMatrix::new(self.field, self.dim, (0..self.dim).map(|j| self.product(j, i).clone()).collect())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Minimal generating set chosen greedily among basis elements.
    pub fn algebra_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = sparse::Echelon::new(self.field, self.dim);
        let mut members: Vec<SparseVec> = Vec::new();
        if span.insert(self.unit.clone()).is_some() {
            members.push(self.unit.clone());
        }
        for g in 0..self.dim {
            let e = sparse::unit(g, self.field);
            if span.contains(&e) {
                continue;
            }
            gens.push(g);
            let mut frontier = vec![e];
            while let Some(v) = frontier.pop() {
                if span.insert(v.clone()).is_none() {
                    continue;
                }
                members.push(v.clone());
                for m in members.clone() {
                    frontier.push(self.mul(&v, &m));
                    frontier.push(self.mul(&m, &v));
                }
            }
        }
        gens
    }

    /// Full structure constant tensor, flattened as in
    /// [`Algebra::from_structure_constants`].
    pub fn structure_constants(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.dim.pow(3));
        for ij in 0..self.dim * self.dim {
            out.extend(sparse::to_dense(&self.products[ij], self.dim, self.field));
        }
        out
    }
}

/// Checks associativity and the unit law on all basis elements.
pub fn validate_algebra(a: &Algebra) -> Result<()> {
    let n = a.dim;
    for (ij, p) in a.products.iter().enumerate() {
        if p.iter().any(|(k, s)| *k as usize >= n || !a.field.contains(s)) {
            return Err(violation("algebra", "structure constants", vec![ij / n, ij % n]));
        }
    }
    if a.unit.iter().any(|(k, s)| *k as usize >= n || !a.field.contains(s)) {
        return Err(violation("algebra", "unit", vec![]));
    }
    for j in 0..n {
        let e = sparse::unit(j, a.field);
        if a.mul(&a.unit, &e) != e || a.mul(&e, &a.unit) != e {
            return Err(violation("algebra", "unit", vec![j]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ij = a.product(i, j);
            for k in 0..n {
                let left = a.mul(ij, &sparse::unit(k, a.field));
                let right = a.mul(&sparse::unit(i, a.field), a.product(j, k));
                if left != right {
                    return Err(violation("algebra", "associativity", vec![i, j, k]));
                }
            }
        }
    }
    Ok(())
}

/// The ground field as a one-dimensional algebra.
pub fn field_algebra(field: Field) -> Algebra {
    Algebra::from_products_unchecked(field, 1, vec![sparse::unit(0, field)], sparse::unit(0, field))
}

/// Group algebra from a multiplication table `table[i][j] = index of g_i g_j`.
pub fn group_algebra(field: Field, table: &[Vec<usize>]) -> Result<Algebra> {
    let n = table.len();
    if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(Error::NotAGroup("table must be square with entries in range".into()));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAGroup(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
    for g in 0..n {
        if !(0..n).any(|h| table[g][h] == e && table[h][g] == e) {
            return Err(Error::NotAGroup(format!("element {g} has no inverse")));
        }
    }
    let products = (0..n * n).map(|ij| sparse::unit(table[ij / n][ij % n], field)).collect();
    Algebra::from_products(field, n, products, sparse::unit(e, field))
}

/// Multiplication table of the cyclic group of order `n`.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// Multiplication table of the symmetric group on `n` letters; permutations
/// in lexicographic order, composed as functions `(στ)(x) = σ(τ(x))`.
pub fn symmetric_table(n: usize) -> Vec<Vec<usize>> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q: Vec<usize> = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out.sort();
        out
    }
    let ps = perms(n);
    let idx = |p: &Vec<usize>| ps.iter().position(|q| q == p).unwrap();
    ps.iter()
        .map(|s| {
            ps.iter()
                .map(|t| idx(&(0..n).map(|x| s[t[x]]).collect()))
                .collect()
        })
        .collect()
}

/// `k[x]/(x^n)` with basis `1, x, …, x^{n-1}`.
pub fn truncated_polynomial(field: Field, n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::Incompatible("truncation degree must be at least 1".into()));
    }
    let products = (0..n * n)
        .map(|ij| {
            let d = ij / n + ij % n;
            if d < n {
                sparse::unit(d, field)
            } else {
                Vec::new()
            }
        })
        .collect();
    Algebra::from_products(field, n, products, sparse::unit(0, field))
}

/// `M_n(k)` with basis `e_{ij}` at index `i*n + j`.
pub fn matrix_algebra(field: Field, n: usize) -> Algebra {
    let d = n * n;
    let mut products = vec![Vec::new(); d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                products[(i * n + j) * d + j * n + l] = sparse::unit(i * n + l, field);
            }
        }
    }
    let unit = (0..n).map(|i| ((i * n + i) as u32, field.one())).collect();
    Algebra::from_products_unchecked(field, d, products, unit)
}

fn matrix_subalgebra(field: Field, n: usize, pairs: Vec<(usize, usize)>) -> Algebra {
    let d = pairs.len();
    let pos = |p: (usize, usize)| pairs.iter().position(|&q| q == p);
    let mut products = vec![Vec::new(); d * d];
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            if j == k {
                products[a * d + b] = sparse::unit(pos((i, l)).expect("closed"), field);
            }
        }
    }
    let mut unit: SparseVec = (0..n).map(|i| (pos((i, i)).unwrap() as u32, field.one())).collect();
    unit.sort_unstable_by_key(|e| e.0);
    Algebra::from_products_unchecked(field, d, products, unit)
}

/// Upper triangular `n×n` matrices, basis `e_{ij}` (i ≤ j) in row-major order.
pub fn upper_triangular(field: Field, n: usize) -> Algebra {
    let pairs = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    matrix_subalgebra(field, n, pairs)
}

/// Lower triangular `n×n` matrices, basis `e_{ij}` (i ≥ j) in row-major order.
pub fn lower_triangular(field: Field, n: usize) -> Algebra {
    let pairs = (0..n).flat_map(|i| (0..=i).map(move |j| (i, j))).collect();
    matrix_subalgebra(field, n, pairs)
}

/// Diagonal `n×n` matrices.
pub fn diagonal(field: Field, n: usize) -> Algebra {
    matrix_subalgebra(field, n, (0..n).map(|i| (i, i)).collect())
}

pub fn opposite(a: &Algebra) -> Algebra {
    let n = a.dim;
    let products = (0..n * n).map(|ij| a.product(ij % n, ij / n).clone()).collect();
    Algebra::from_products_unchecked(a.field, n, products, a.unit.clone())
}

/// `a ⊗ c` with basis `e_i ⊗ f_j` at index `i*dim(c) + j`.
pub fn tensor_algebra(a: &Algebra, c: &Algebra) -> Result<Algebra> {
    if a.field != c.field {
        return Err(Error::Incompatible("tensor factors over different fields".into()));
    }
    let (n, m) = (a.dim, c.dim);
    let d = n * m;
    let mut products = Vec::with_capacity(d * d);
    for x in 0..d {
        for y in 0..d {
            products.push(tensor_vec(a.product(x / m, y / m), c.product(x % m, y % m), m));
        }
    }
    let unit = tensor_vec(&a.unit, &c.unit, m);
    Ok(Algebra::from_products_unchecked(a.field, d, products, unit))
}

pub(crate) fn tensor_vec(u: &[(u32, Scalar)], v: &[(u32, Scalar)], m: usize) -> SparseVec {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for (i, a) in u {
        for (j, b) in v {
            out.push((*i * m as u32 + *j, a * b));
        }
    }
    out
}

/// Center as a subspace of the algebra.
pub fn center(a: &Algebra) -> Subspace {
    let n = a.dim;
    let mut m = Matrix::zeros(a.field, n * n, n);
    for i in 0..n {
        for z in 0..n {
            let d = sparse::sub(a.product(i, z), a.product(z, i));
            for (k, s) in d {
                m.set(i * n + k as usize, z, s);
            }
        }
    }
    kernel_basis(&m)
}

/// Smash product on `first ⊗ second` (basis `f*dim(second) + s`) from
/// `phi: second ⊗ first → first ⊗ second`, product `(a#b)(c#d) = a c_Φ # b_Φ d`.
pub fn smash_product(first: &Algebra, second: &Algebra, phi: &Matrix) -> Result<Algebra> {
    let (na, nb) = (first.dim, second.dim);
    let field = first.field;
    if phi.rows() != na * nb || phi.cols() != na * nb || phi.field() != field || second.field != field {
        return Err(Error::Incompatible("smash map shape".into()));
    }
    let phi = SparseMatrix::from_dense(phi);
    // second ⊗ first index: s*na + f; first ⊗ second index: f*nb + s
    let phi_on = |s: &[(u32, Scalar)], f: &[(u32, Scalar)]| phi.apply(&tensor_vec(s, f, na));
    for s in 0..nb {
        if phi_on(&sparse::unit(s, field), &first.unit) != tensor_vec(&first.unit, &sparse::unit(s, field), nb) {
            return Err(Error::PhiAxiomViolation(1));
        }
    }
    for f in 0..na {
        if phi_on(&second.unit, &sparse::unit(f, field)) != tensor_vec(&sparse::unit(f, field), &second.unit, nb) {
            return Err(Error::PhiAxiomViolation(2));
        }
    }
    // axiom 3: Φ(b b' ⊗ a) = a_{Φφ} ⊗ b_φ b'_Φ
    for b in 0..nb {
        for b2 in 0..nb {
            for a in 0..na {
                let lhs = phi_on(second.product(b, b2), &sparse::unit(a, field));
                let mut acc = Accumulator::new();
                for (x, c) in phi_on(&sparse::unit(b2, field), &sparse::unit(a, field)) {
                    let (ap, b2p) = (x as usize / nb, x as usize % nb);
                    for (y, c2) in phi_on(&sparse::unit(b, field), &sparse::unit(ap, field)) {
                        let (app, bp) = (y as usize / nb, y as usize % nb);
                        let prod = second.product(bp, b2p);
                        acc.add_scaled(&(&c * &c2), &tensor_vec(&sparse::unit(app, field), prod, nb));
                    }
                }
                if lhs != acc.finish() {
                    return Err(Error::PhiAxiomViolation(3));
                }
            }
        }
    }
    // axiom 4: Φ(b ⊗ a a') = a_Φ a'_φ ⊗ b_{Φφ}
    for b in 0..nb {
        for a in 0..na {
            for a2 in 0..na {
                let lhs = phi_on(&sparse::unit(b, field), first.product(a, a2));
                let mut acc = Accumulator::new();
                for (x, c) in phi_on(&sparse::unit(b, field), &sparse::unit(a, field)) {
                    let (ap, bp) = (x as usize / nb, x as usize % nb);
                    for (y, c2) in phi_on(&sparse::unit(bp, field), &sparse::unit(a2, field)) {
                        let (a2p, bpp) = (y as usize / nb, y as usize % nb);
                        let prod = first.product(ap, a2p);
                        acc.add_scaled(&(&c * &c2), &tensor_vec(prod, &sparse::unit(bpp, field), nb));
                    }
                }
                if lhs != acc.finish() {
                    return Err(Error::PhiAxiomViolation(4));
                }
            }
        }
    }
    let d = na * nb;
    let mut products = Vec::with_capacity(d * d);
    for x in 0..d {
        let (f1, s1) = (x / nb, x % nb);
        for y in 0..d {
            let (f2, s2) = (y / nb, y % nb);
            let mut acc = Accumulator::new();
            for (z, c) in phi_on(&sparse::unit(s1, field), &sparse::unit(f2, field)) {
                let (fp, sp) = (z as usize / nb, z as usize % nb);
                acc.add_scaled(&c, &tensor_vec(first.product(f1, fp), second.product(sp, s2), nb));
            }
            products.push(acc.finish());
        }
    }
    let unit = tensor_vec(&first.unit, &second.unit, nb);
    Algebra::from_products(field, d, products, unit)
}

/// The swap `second ⊗ first → first ⊗ second`.
pub fn swap_matrix(field: Field, first_dim: usize, second_dim: usize) -> Matrix {
    let mut m = Matrix::zeros(field, first_dim * second_dim, first_dim * second_dim);
    for s in 0..second_dim {
        for f in 0..first_dim {
            m.set(f * second_dim + s, s * first_dim + f, field.one());
        }
    }
    m
}

/// A unital multiplicative linear map; column `j` of `matrix` is the image of `e_j`.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub matrix: Matrix,
}

impl AlgebraMap {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Result<AlgebraMap> {
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::Incompatible("algebra map shape".into()));
        }
        let m = SparseMatrix::from_dense(&matrix);
        if m.apply(&source.unit) != target.unit {
            return Err(violation("algebra map", "unital", vec![]));
        }
        for i in 0..source.dim {
            for j in 0..source.dim {
                let lhs = m.apply(source.product(i, j));
                let rhs = target.mul(m.col(i), m.col(j));
                if lhs != rhs {
                    return Err(violation("algebra map", "multiplicative", vec![i, j]));
                }
            }
        }
        Ok(AlgebraMap { source, target, matrix })
    }

    pub fn is_injective(&self) -> bool {
        rank(&self.matrix) == self.source.dim
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim == self.target.dim && self.is_injective()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }
}

/// A unital subalgebra `B ⊆ A` presented by an injective algebra map.
#[derive(Clone, Debug)]
pub struct AlgebraExtension {
    sub: Arc<Algebra>,
    big: Arc<Algebra>,
    embed: Matrix,
    embed_sparse: SparseMatrix,
}

impl AlgebraExtension {
    pub fn new(sub: Arc<Algebra>, big: Arc<Algebra>, embed: Matrix) -> Result<AlgebraExtension> {
        if sub.field != big.field {
            return Err(Error::Incompatible("extension over different fields".into()));
        }
        let map = AlgebraMap::new(sub.clone(), big.clone(), embed)?;
        if !map.is_injective() {
            return Err(violation("extension", "injective embedding", vec![]));
        }
        let embed_sparse = SparseMatrix::from_dense(&map.matrix);
        Ok(AlgebraExtension {
            sub,
            big,
            embed: map.matrix,
            embed_sparse,
        })
    }

    /// `k ⊆ A` through the unit.
    pub fn over_field(big: Arc<Algebra>) -> AlgebraExtension {
        let field = big.field;
        let embed = Matrix::from_columns(field, big.dim, &[big.unit_dense()]);
        AlgebraExtension::new(Arc::new(field_algebra(field)), big, embed).expect("unit embedding")
    }

    /// `A ⊆ A`.
    pub fn identity(a: Arc<Algebra>) -> AlgebraExtension {
        let embed = Matrix::identity(a.field, a.dim);
        AlgebraExtension::new(a.clone(), a, embed).expect("identity embedding")
    }

    pub fn sub(&self) -> &Arc<Algebra> {
        &self.sub
    }
    pub fn big(&self) -> &Arc<Algebra> {
        &self.big
    }
    pub fn embed(&self) -> &Matrix {
        &self.embed
    }
    pub fn embed_sparse(&self) -> &SparseMatrix {
        &self.embed_sparse
    }
    pub fn field(&self) -> Field {
        self.big.field
    }

    /// `A⊗C ⊇ B⊗D`.
    pub fn tensor(&self, other: &AlgebraExtension) -> Result<AlgebraExtension> {
        let sub = tensor_algebra(&self.sub, &other.sub)?;
        let big = tensor_algebra(&self.big, &other.big)?;
        AlgebraExtension::new(Arc::new(sub), Arc::new(big), self.embed.kron(&other.embed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn constructors_validate() {
        validate_algebra(&truncated_polynomial(gf(2), 2).unwrap()).unwrap();
        validate_algebra(&group_algebra(gf(2), &cyclic_table(2)).unwrap()).unwrap();
        let c4 = group_algebra(Field::Rational, &cyclic_table(4)).unwrap();
        assert!(c4.is_commutative());
        validate_algebra(&matrix_algebra(Field::Rational, 2)).unwrap();
        validate_algebra(&upper_triangular(Field::Rational, 3)).unwrap();
        validate_algebra(&lower_triangular(Field::Rational, 2)).unwrap();
        validate_algebra(&diagonal(gf(3), 2)).unwrap();
        let s3 = group_algebra(Field::Rational, &symmetric_table(3)).unwrap();
        assert!(!s3.is_commutative());
        assert_eq!(group_algebra(gf(2), &[vec![0]]).unwrap().dim(), 1);
    }

    #[test]
    fn non_unital_table_is_rejected() {
        let f = gf(2);
        // e1 e1 = e1 with e0 declared the unit but e0 e1 = 0
        let products = vec![sparse::unit(0, f), Vec::new(), Vec::new(), sparse::unit(1, f)];
        let err = Algebra::from_products(f, 2, products, sparse::unit(0, f)).unwrap_err();
        assert!(matches!(err, Error::Violation { .. }));
        assert!(matches!(group_algebra(f, &[vec![0, 0], vec![0, 1]]), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn dual_numbers_are_group_algebra_in_char_two() {
        let f = gf(2);
        let dual = Arc::new(truncated_polynomial(f, 2).unwrap());
        let c2 = Arc::new(group_algebra(f, &cyclic_table(2)).unwrap());
        let m = Matrix::from_i64(f, &[&[1, 1], &[0, 1]]);
        let iso = AlgebraMap::new(dual, c2, m).unwrap();
        assert!(iso.is_isomorphism());
    }

    #[test]
    fn opposite_and_center() {
        let q = Field::Rational;
        let t2 = upper_triangular(q, 2);
        assert_eq!(opposite(&opposite(&t2)), t2);
        assert_eq!(center(&t2).dim(), 1);
        assert_eq!(center(&opposite(&t2)).dim(), 1);
        assert_eq!(center(&matrix_algebra(q, 2)).dim(), 1);
        let c4 = group_algebra(q, &cyclic_table(4)).unwrap();
        assert_eq!(opposite(&c4), c4);
        assert_eq!(center(&c4).dim(), 4);
        // transpose identifies the opposite of T_2 with lower triangular matrices
        let l2 = lower_triangular(q, 2);
        // upper basis e00,e01,e11; lower basis e00,e10,e11
        let m = Matrix::from_i64(q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(AlgebraMap::new(Arc::new(opposite(&t2)), Arc::new(l2), m).unwrap().is_isomorphism());
    }

    #[test]
    fn tensor_of_cyclic_groups_is_klein_group_algebra() {
        let f = gf(3);
        let c2 = group_algebra(f, &cyclic_table(2)).unwrap();
        let t = tensor_algebra(&c2, &c2).unwrap();
        validate_algebra(&t).unwrap();
        let klein: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
        let v4 = group_algebra(f, &klein).unwrap();
        assert_eq!(t, v4);
        let k = field_algebra(f);
        assert_eq!(tensor_algebra(&k, &c2).unwrap(), c2);
    }

    #[test]
    fn smash_with_swap_is_tensor() {
        let f = gf(2);
        let a = truncated_polynomial(f, 2).unwrap();
        let b = group_algebra(f, &cyclic_table(2)).unwrap();
        let s = smash_product(&a, &b, &swap_matrix(f, 2, 2)).unwrap();
        assert_eq!(s, tensor_algebra(&a, &b).unwrap());
        let zero = Matrix::zeros(f, 4, 4);
        assert_eq!(smash_product(&a, &b, &zero), Err(Error::PhiAxiomViolation(1)));
    }

    #[test]
    fn generators_are_found() {
        let q = Field::Rational;
        let s3 = group_algebra(q, &symmetric_table(3)).unwrap();
        assert_eq!(s3.algebra_generators().len(), 2);
        assert!(field_algebra(q).algebra_generators().is_empty());
        assert_eq!(truncated_polynomial(q, 4).unwrap().algebra_generators(), vec![1]);
    }
}
