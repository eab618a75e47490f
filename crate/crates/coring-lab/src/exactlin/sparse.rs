//! Sparse vectors, column-sparse matrices and incremental echelon forms.
//!
//! Tensor powers of even modest bimodules reach thousands of dimensions, so
//! everything above the public dense API runs on these.

use std::collections::HashMap;

use super::{Field, Matrix, Scalar, Subspace};

/// Sorted by index, no stored zeros.
pub type SparseVec = Vec<(u32, Scalar)>;

pub fn unit(i: usize, field: Field) -> SparseVec {
    vec![(i as u32, field.one())]
}

pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i as u32, s.clone()))
        .collect()
}

pub fn to_dense(v: &[(u32, Scalar)], n: usize, field: Field) -> Vec<Scalar> {
    let mut out = vec![field.zero(); n];
    for (i, s) in v {
        out[*i as usize] = s.clone();
    }
    out
}

pub fn scale(v: &[(u32, Scalar)], a: &Scalar) -> SparseVec {
    if a.is_zero() {
        return Vec::new();
    }
    if a.is_one() {
        return v.to_vec();
    }
    v.iter().map(|(i, s)| (*i, s * a)).collect()
}

/// `y + a·x`.
pub fn axpy(y: &[(u32, Scalar)], a: &Scalar, x: &[(u32, Scalar)]) -> SparseVec {
    if a.is_zero() || x.is_empty() {
        return y.to_vec();
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut p, mut q) = (0, 0);
    while p < y.len() || q < x.len() {
        if q == x.len() || (p < y.len() && y[p].0 < x[q].0) {
            out.push(y[p].clone());
            p += 1;
        } else if p == y.len() || x[q].0 < y[p].0 {
            out.push((x[q].0, a * &x[q].1));
            q += 1;
        } else {
            let s = &y[p].1 + &(a * &x[q].1);
            if !s.is_zero() {
                out.push((y[p].0, s));
            }
            p += 1;
            q += 1;
        }
    }
    out
}

pub fn add(y: &[(u32, Scalar)], x: &[(u32, Scalar)]) -> SparseVec {
    match x.first() {
        None => y.to_vec(),
        Some((_, s)) => axpy(y, &s.field().one(), x),
    }
}

pub fn sub(y: &[(u32, Scalar)], x: &[(u32, Scalar)]) -> SparseVec {
    match x.first() {
        None => y.to_vec(),
        Some((_, s)) => axpy(y, &-s.field().one(), x),
    }
}

pub fn get(v: &[(u32, Scalar)], i: u32) -> Option<&Scalar> {
    v.binary_search_by_key(&i, |e| e.0).ok().map(|p| &v[p].1)
}

/// Collects unordered contributions into a sparse vector.
#[derive(Default)]
pub struct Accumulator {
    map: HashMap<u32, Scalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator::default()
    }

    pub fn add(&mut self, i: u32, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.map.entry(i) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &s;
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(s);
            }
        }
    }

    pub fn add_scaled(&mut self, a: &Scalar, v: &[(u32, Scalar)]) {
        if a.is_zero() {
            return;
        }
        for (i, s) in v {
            self.add(*i, a * s);
        }
    }

    pub fn finish(self) -> SparseVec {
        let mut v: SparseVec = self.map.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    }
}

/// Linear map stored by columns: `cols[j]` is the image of the j-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(field: Field, nrows: usize, cols: Vec<SparseVec>) -> SparseMatrix {
        debug_assert!(cols.iter().all(|c| c.iter().all(|(i, _)| (*i as usize) < nrows)));
        SparseMatrix { field, nrows, cols }
    }

    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> SparseMatrix {
        SparseMatrix::new(field, nrows, vec![Vec::new(); ncols])
    }

    pub fn identity(field: Field, n: usize) -> SparseMatrix {
        SparseMatrix::new(field, n, (0..n).map(|i| unit(i, field)).collect())
    }

    pub fn from_dense(m: &Matrix) -> SparseMatrix {
        let cols = (0..m.cols()).map(|j| from_dense(&m.column(j))).collect();
        SparseMatrix::new(m.field(), m.rows(), cols)
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.nrows, self.cols.len());
        for (j, c) in self.cols.iter().enumerate() {
            for (i, s) in c {
                m.set(*i as usize, j, s.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn nrows(&self) -> usize {
        self.nrows
    }
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }
    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }
    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &[(u32, Scalar)]) -> SparseVec {
        match v {
            [] => Vec::new(),
            [(j, s)] => scale(&self.cols[*j as usize], s),
            _ => {
                let mut acc = Accumulator::new();
                for (j, s) in v {
                    acc.add_scaled(s, &self.cols[*j as usize]);
                }
                acc.finish()
            }
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), inner.nrows, "composition shape");
        let cols = inner.cols.iter().map(|c| self.apply(c)).collect();
        SparseMatrix::new(self.field, self.nrows, cols)
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()));
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| add(a, b)).collect();
        SparseMatrix::new(self.field, self.nrows, cols)
    }

    pub fn scale(&self, a: &Scalar) -> SparseMatrix {
        let cols = self.cols.iter().map(|c| scale(c, a)).collect();
        SparseMatrix::new(self.field, self.nrows, cols)
    }

    /// Rows of the matrix as sparse vectors.
    pub fn rows(&self) -> Vec<SparseVec> {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, s) in c {
                rows[*i as usize].push((j as u32, s.clone()));
            }
        }
        rows
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::new(self.field, self.ncols(), self.rows())
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field, self.nrows);
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.rank()
    }
}

/// Row echelon form built one vector at a time. Rows are normalized to a
/// leading 1 and only have entries to the right of their pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    rows: Vec<SparseVec>,
    hist: Vec<SparseVec>,
    pivot_row: HashMap<u32, usize>,
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Echelon {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            hist: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, c: u32) -> bool {
        self.pivot_row.contains_key(&c)
    }

    fn reduce_inner(&self, mut v: SparseVec, mut h: Option<SparseVec>) -> (SparseVec, Option<SparseVec>) {
        let mut pos = 0;
        while pos < v.len() {
            let c = v[pos].0;
            match self.pivot_row.get(&c) {
                Some(&r) => {
                    let coef = -&v[pos].1;
                    v = axpy(&v, &coef, &self.rows[r]);
                    if let Some(hv) = h.as_mut() {
                        *hv = axpy(hv, &coef, &self.hist[r]);
                    }
                }
                None => pos += 1,
            }
        }
        (v, h)
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        self.reduce_inner(v, None).0
    }

    pub fn contains(&self, v: &[(u32, Scalar)]) -> bool {
        self.reduce(v.to_vec()).is_empty()
    }

    fn push(&mut self, v: SparseVec, h: SparseVec) -> u32 {
        let lead = v[0].0;
        let inv = v[0].1.inv();
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(scale(&v, &inv));
        self.hist.push(scale(&h, &inv));
        lead
    }

    /// Adds `v`; returns its new pivot column, or `None` if dependent.
    pub fn insert(&mut self, v: SparseVec) -> Option<u32> {
        let r = self.reduce(v);
        if r.is_empty() {
            None
        } else {
            Some(self.push(r, Vec::new()))
        }
    }

    /// Like [`Echelon::insert`] but tracks `v` as the combination `label`.
    /// When `v` is dependent, returns the history combination that vanishes.
    pub fn insert_tracked(&mut self, v: SparseVec, label: SparseVec) -> Result<u32, SparseVec> {
        let (r, h) = self.reduce_inner(v, Some(label));
        let h = h.unwrap_or_default();
        if r.is_empty() {
            Err(h)
        } else {
            Ok(self.push(r, h))
        }
    }

    /// Reduces `v` to zero and returns `h` with `v = Σ h_k · label_k`, or
    /// `None` when `v` is outside the span.
    pub fn express(&self, v: SparseVec) -> Option<SparseVec> {
        let (r, h) = self.reduce_inner(v, Some(Vec::new()));
        if r.is_empty() {
            let h = h.unwrap_or_default();
            Some(h.into_iter().map(|(i, s)| (i, -s)).collect())
        } else {
            None
        }
    }

    /// Canonical reduced echelon form.
    pub fn into_rref(self) -> Rref {
        let mut order: Vec<(u32, usize)> = self.pivot_row.iter().map(|(c, r)| (*c, *r)).collect();
        order.sort_unstable();
        let mut done: HashMap<u32, SparseVec> = HashMap::new();
        let mut rows = self.rows;
        for &(c, r) in order.iter().rev() {
            let row = std::mem::take(&mut rows[r]);
            let mut acc = Accumulator::new();
            for (i, s) in &row {
                acc.add(*i, s.clone());
                if *i != c {
                    if let Some(other) = done.get(i) {
                        acc.add_scaled(&-s, other);
                    }
                }
            }
            done.insert(c, acc.finish());
        }
        let pivots: Vec<u32> = order.iter().map(|e| e.0).collect();
        let rows = pivots.iter().map(|c| done.remove(c).unwrap()).collect();
        Rref {
            field: self.field,
            ncols: self.ncols,
            pivots,
            rows,
        }
    }
}

/// Reduced row echelon form with pivots in increasing order.
#[derive(Clone, Debug)]
pub struct Rref {
    pub field: Field,
    pub ncols: usize,
    pub pivots: Vec<u32>,
    pub rows: Vec<SparseVec>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn free_columns(&self) -> Vec<u32> {
        let mut is_pivot = vec![false; self.ncols];
        for p in &self.pivots {
            is_pivot[*p as usize] = true;
        }
        (0..self.ncols as u32).filter(|c| !is_pivot[*c as usize]).collect()
    }

    /// Null space of the rows, parametrized by the free columns.
    pub fn kernel(&self) -> SparseBasis {
        let free = self.free_columns();
        let mut slot = vec![u32::MAX; self.ncols];
        for (k, f) in free.iter().enumerate() {
            slot[*f as usize] = k as u32;
        }
        let mut vecs: Vec<SparseVec> = vec![Vec::new(); free.len()];
        for (p, row) in self.pivots.iter().zip(&self.rows) {
            for (c, s) in row {
                if c != p {
                    vecs[slot[*c as usize] as usize].push((*p, -s));
                }
            }
        }
        let one = self.field.one();
        for (k, f) in free.iter().enumerate() {
            vecs[k].push((*f, one.clone()));
            vecs[k].sort_unstable_by_key(|e| e.0);
        }
        SparseBasis {
            field: self.field,
            ambient: self.ncols,
            vectors: vecs,
            coord_cols: free,
        }
    }

    pub fn to_subspace(&self) -> Subspace {
        let basis = self.rows.iter().map(|r| to_dense(r, self.ncols, self.field)).collect();
        let pivots = self.pivots.iter().map(|p| *p as usize).collect();
        Subspace::from_rref_rows(self.field, self.ncols, basis, pivots)
    }
}

/// Basis of a subspace where the coordinates of any member are its entries
/// at `coord_cols` (each basis vector is 1 at its own column and 0 at the others).
#[derive(Clone, Debug)]
pub struct SparseBasis {
    pub field: Field,
    pub ambient: usize,
    pub vectors: Vec<SparseVec>,
    pub coord_cols: Vec<u32>,
}

impl SparseBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Whole ambient space.
    pub fn full(field: Field, ambient: usize) -> SparseBasis {
        SparseBasis {
            field,
            ambient,
            vectors: (0..ambient).map(|i| unit(i, field)).collect(),
            coord_cols: (0..ambient as u32).collect(),
        }
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            acc.add_scaled(c, v);
        }
        acc.finish()
    }

    /// Coordinates read off the parameter columns, without a membership check.
    pub fn read_coordinates(&self, v: &[(u32, Scalar)]) -> Vec<Scalar> {
        self.coord_cols
            .iter()
            .map(|c| get(v, *c).cloned().unwrap_or_else(|| self.field.zero()))
            .collect()
    }

    pub fn coordinates(&self, v: &[(u32, Scalar)]) -> Option<Vec<Scalar>> {
        let c = self.read_coordinates(v);
        if self.combine(&c) == v {
            Some(c)
        } else {
            None
        }
    }

    pub fn to_subspace(&self) -> Subspace {
        let mut e = Echelon::new(self.field, self.ambient);
        for v in &self.vectors {
            e.insert(v.clone());
        }
        e.into_rref().to_subspace()
    }
}

/// Null space of the system whose equations are `rows`.
pub fn kernel_of_rows<I: IntoIterator<Item = SparseVec>>(field: Field, ncols: usize, rows: I) -> SparseBasis {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        if !r.is_empty() {
            e.insert(r);
        }
    }
    e.into_rref().kernel()
}

/// Solves the equations `row · x = rhs`; free variables of the canonical
/// echelon form are set to zero. `None` when inconsistent.
pub fn solve_rows(field: Field, ncols: usize, rows: Vec<(SparseVec, Scalar)>) -> Option<Vec<Scalar>> {
    let mut e = Echelon::new(field, ncols + 1);
    for (mut r, b) in rows {
        if !b.is_zero() {
            r.push((ncols as u32, b));
        }
        if !r.is_empty() {
            e.insert(r);
        }
    }
    let rref = e.into_rref();
    let mut x = vec![field.zero(); ncols];
    for (p, row) in rref.pivots.iter().zip(&rref.rows) {
        if *p as usize == ncols {
            return None;
        }
        if let Some(v) = get(row, ncols as u32) {
            x[*p as usize] = v.clone();
        }
    }
    Some(x)
}
