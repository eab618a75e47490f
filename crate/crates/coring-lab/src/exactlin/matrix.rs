//! Dense row-major matrices and canonical echelon subspaces.

use std::fmt;

use super::{Field, LinError, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, LinError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinError::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            for s in row {
                if !field.contains(&s) {
                    return Err(LinError::FieldMismatch(field.label()));
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Rows given as integers, reduced into the field.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(*v));
            }
        }
        m
    }

    /// Columns are the given vectors.
    pub fn from_columns(field: Field, nrows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, s) in c.iter().enumerate() {
                m.set(i, j, s.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        self.data[r * self.cols + c] = s;
    }

    pub fn add_at(&mut self, r: usize, c: usize, s: &Scalar) {
        let i = r * self.cols + c;
        self.data[i] += s;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// `self · other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if !rv.is_zero() {
                        let v = m.get(i, j) - &(&f * rv);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Kronecker product; row index `i*other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            m.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        m
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `field^ambient_dim` held by its canonical reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        Subspace::span(field, ambient_dim, Matrix::identity(field, ambient_dim).to_rows())
    }

    pub fn span(field: Field, ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient_dim);
        }
        let m = Matrix::from_rows(field, vectors).expect("vectors of equal length");
        assert_eq!(m.cols(), ambient_dim, "span vector length");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            field,
            ambient_dim,
            basis,
            pivots,
        }
    }

    /// Trusts that `basis` is already in canonical reduced echelon form.
    pub(crate) fn from_rref_rows(
        field: Field,
        ambient_dim: usize,
        basis: Vec<Vec<Scalar>>,
        pivots: Vec<usize>,
    ) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim);
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        if self.combine(&coords) == v {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `Σ coeffs[i] · basis[i]`.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coeffs.len(), self.dim());
        let mut out = vec![self.field.zero(); self.ambient_dim];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient_dim, v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Basis as the columns of an `ambient_dim × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient_dim, &self.basis)
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rref().1.len()
}

/// Canonical basis of the right null space.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let (r, pivots) = m.rref();
    let field = m.field();
    let n = m.cols();
    let mut is_pivot = vec![None; n];
    for (i, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(i);
    }
    let mut vecs = Vec::new();
    for f in 0..n {
        if is_pivot[f].is_some() {
            continue;
        }
        let mut v = vec![field.zero(); n];
        v[f] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, f);
        }
        vecs.push(v);
    }
    Subspace::span(field, n, vecs)
}

/// Some `x` with `m·x = b`; free variables of the echelon form are set to zero.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Vec<Scalar>, LinError> {
    if b.len() != m.rows() {
        return Err(LinError::DimensionMismatch {
            expected: m.rows(),
            found: b.len(),
        });
    }
    let field = m.field();
    let n = m.cols();
    let mut aug = Matrix::zeros(field, m.rows(), n + 1);
    for i in 0..m.rows() {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n, b[i].clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Err(LinError::NoSolution);
    }
    let mut x = vec![field.zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r.get(i, n).clone();
    }
    Ok(x)
}

/// Projection onto `field^ambient / relations` and a linear section of it.
/// The quotient basis is the images of the non-pivot standard vectors.
pub fn quotient_basis(ambient_dim: usize, relations: &Subspace) -> (Matrix, Matrix) {
    assert_eq!(relations.ambient_dim(), ambient_dim);
    let field = relations.field();
    let mut row_of_pivot = vec![None; ambient_dim];
    for (i, &p) in relations.pivots().iter().enumerate() {
        row_of_pivot[p] = Some(i);
    }
    let free: Vec<usize> = (0..ambient_dim).filter(|&c| row_of_pivot[c].is_none()).collect();
    let q = free.len();
    let mut section = Matrix::zeros(field, ambient_dim, q);
    let mut projection = Matrix::zeros(field, q, ambient_dim);
    for (j, &f) in free.iter().enumerate() {
        section.set(f, j, field.one());
        projection.set(j, f, field.one());
    }
    for (t, row) in row_of_pivot.iter().enumerate() {
        if let Some(r) = row {
            for (j, &f) in free.iter().enumerate() {
                projection.set(j, t, -&relations.basis()[*r][f]);
            }
        }
    }
    (projection, section)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(gf2(), 2)), 2);
        assert_eq!(rank(&Matrix::from_i64(gf2(), &[&[1, 1], &[1, 1]])), 1);
        assert_eq!(rank(&Matrix::from_i64(Field::Rational, &[&[2, 4], &[1, 2]])), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = gf2();
        let k = kernel_basis(&Matrix::from_i64(f, &[&[1, 1], &[1, 1]]));
        assert_eq!(k.basis(), &[vec![f.one(), f.one()]]);
        assert_eq!(kernel_basis(&Matrix::identity(Field::Rational, 3)).dim(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(Field::Rational, 3, 3)).dim(), 3);
    }

    #[test]
    fn solve_examples() {
        let q = Field::Rational;
        let x = solve(&Matrix::from_i64(q, &[&[2]]), &[q.one()]).unwrap();
        assert_eq!(x, vec![q.parse("1/2").unwrap()]);
        let f = gf2();
        let x = solve(&Matrix::from_i64(f, &[&[1, 1]]), &[f.one()]).unwrap();
        assert_eq!(x, vec![f.one(), f.zero()]);
        assert_eq!(
            solve(&Matrix::from_i64(q, &[&[0]]), &[q.one()]),
            Err(LinError::NoSolution)
        );
    }

    #[test]
    fn quotient_examples() {
        let f = gf2();
        let rel = Subspace::span(f, 2, vec![vec![f.one(), f.one()]]);
        let (p, s) = quotient_basis(2, &rel);
        assert_eq!(p.rows(), 1);
        assert_eq!(p.mul(&s), Matrix::identity(f, 1));
        assert_eq!(p.mul_vec(&rel.basis()[0]), vec![f.zero()]);

        let (p, s) = quotient_basis(3, &Subspace::zero(f, 3));
        assert_eq!(p, Matrix::identity(f, 3));
        assert_eq!(s, Matrix::identity(f, 3));

        let (p, _) = quotient_basis(4, &Subspace::full(Field::Rational, 4));
        assert_eq!(p.rows(), 0);
    }

    #[test]
    fn inverse_roundtrip() {
        let q = Field::Rational;
        let m = Matrix::from_i64(q, &[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q, 2));
        assert!(Matrix::from_i64(q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
