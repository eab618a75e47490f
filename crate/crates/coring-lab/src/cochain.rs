//! Relative Hochschild and Cartier cochain complexes and their cohomology.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraExtension};
use crate::bimodule::frame::HomFrame;
use crate::bimodule::{regular_bimodule, Bimodule, TensorChain};
use crate::coring::{Bicomodule, Coring};
use crate::error::{violation, Error, Result};
use crate::exactlin::sparse::{self, Accumulator, Echelon, SparseBasis, SparseMatrix, SparseVec};
use crate::exactlin::{Field, Matrix, Scalar};

/// Default bound on tensor-power and cochain-coordinate dimensions.
pub const DEFAULT_MAX_SPACE: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexOptions {
    pub max_space: usize,
}

impl Default for ComplexOptions {
    fn default() -> Self {
        ComplexOptions {
            max_space: DEFAULT_MAX_SPACE,
        }
    }
}

fn cap(what: String, dim: usize, limit: usize) -> Result<()> {
    if dim > limit {
        Err(Error::DegreeCapExceeded { what, dim, limit })
    } else {
        Ok(())
    }
}

/// Left-associated tensor powers `F^{⊗_B n}` with `F^{⊗0} = B`.
#[derive(Clone, Debug)]
pub struct Powers {
    base: Arc<Bimodule>,
    chain: TensorChain,
}

impl Powers {
    pub fn new(factor: Arc<Bimodule>) -> Powers {
        Powers {
            base: Arc::new(regular_bimodule(factor.base().clone())),
            chain: TensorChain::new(factor),
        }
    }

    /// Extends the chain so that powers up to `n` exist.
    pub fn extend_to(&mut self, n: usize, max_space: usize) -> Result<()> {
        while self.chain.len() < n {
            let k = self.chain.len() + 1;
            let prev = self.chain.object(k - 1).dim();
            cap(format!("tensor power {k} ambient"), prev * self.factor().dim(), max_space.max(1) * 8)?;
            self.chain.push(self.factor().clone())?;
            cap(format!("tensor power {k}"), self.dim(k), max_space)?;
        }
        Ok(())
    }

    pub fn available(&self) -> usize {
        self.chain.len()
    }

    pub fn factor(&self) -> &Arc<Bimodule> {
        self.chain.factor(0)
    }

    pub fn base_module(&self) -> &Arc<Bimodule> {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn object(&self, n: usize) -> &Arc<Bimodule> {
        if n == 0 {
            &self.base
        } else {
            self.chain.object(n)
        }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.object(n).dim()
    }

    /// Representing tuple of a basis vector of the `n`-th power, `n ≥ 1`.
    pub fn rep(&self, n: usize, t: usize) -> &[u32] {
        self.chain.rep_tuple(n, t)
    }

    /// Class of a pure tensor of basis vectors; the empty tuple is `1_B`.
    pub fn project(&self, tuple: &[u32]) -> SparseVec {
        if tuple.is_empty() {
            self.base.base().unit().clone()
        } else {
            self.chain.project_tuple(tuple)
        }
    }

    /// Class of `v_1 ⊗ … ⊗ v_k` with each `v_i` in the factor.
    pub fn project_vecs(&self, vecs: &[SparseVec]) -> SparseVec {
        if vecs.is_empty() {
            self.base.base().unit().clone()
        } else {
            self.chain.project_vecs(vecs)
        }
    }

    /// `e_x ⊗ v` for `v` in the `n`-th power.
    pub fn prepend(&self, x: usize, v: &[(u32, Scalar)], n: usize) -> SparseVec {
        let f = self.field();
        if n == 0 {
            return self.factor().act_right(&sparse::unit(x, f), v);
        }
        let mut acc = Accumulator::new();
        let mut tuple = Vec::with_capacity(n + 1);
        for (u, s) in v {
            tuple.clear();
            tuple.push(x as u32);
            tuple.extend_from_slice(self.rep(n, *u as usize));
            acc.add_scaled(s, &self.chain.project_tuple(&tuple));
        }
        acc.finish()
    }

    /// `v ⊗ e_x` for `v` in the `n`-th power.
    pub fn append(&self, v: &[(u32, Scalar)], n: usize, x: usize) -> SparseVec {
        let f = self.field();
        match n {
            0 => self.factor().act_left(v, &sparse::unit(x, f)),
            _ => self.chain.level(n + 1).project(v, &sparse::unit(x, f)),
        }
    }

    /// Replaces position `pos` of `tuple` by `v`, an element of the `k`-th power.
    pub fn substitute(&self, tuple: &[u32], pos: usize, v: &[(u32, Scalar)], k: usize) -> SparseVec {
        let f = self.field();
        if k == 0 {
            if tuple.len() == 1 {
                return v.to_vec();
            }
            let mut vecs: Vec<SparseVec> = tuple.iter().map(|t| sparse::unit(*t as usize, f)).collect();
            vecs.remove(pos);
            if pos > 0 {
                vecs[pos - 1] = self.factor().act_right(&vecs[pos - 1], v);
            } else {
                vecs[0] = self.factor().act_left(v, &vecs[0]);
            }
            return self.project_vecs(&vecs);
        }
        let mut acc = Accumulator::new();
        let mut buf = Vec::with_capacity(tuple.len() + k);
        for (u, s) in v {
            buf.clear();
            buf.extend_from_slice(&tuple[..pos]);
            buf.extend_from_slice(self.rep(k, *u as usize));
            buf.extend_from_slice(&tuple[pos + 1..]);
            acc.add_scaled(s, &self.chain.project_tuple(&buf));
        }
        acc.finish()
    }
}

/// Applies a map given by its values on a basis.
pub(crate) fn apply_values(values: &[SparseVec], v: &[(u32, Scalar)]) -> SparseVec {
    let mut acc = Accumulator::new();
    for (u, s) in v {
        acc.add_scaled(s, &values[*u as usize]);
    }
    acc.finish()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexKind {
    RelativeHochschild,
    Cartier,
}

#[derive(Clone, Debug)]
enum Source {
    Hochschild { ext: AlgebraExtension, coeff: Arc<Bimodule> },
    Cartier { bicomodule: Arc<Bicomodule> },
}

/// Cochain spaces `0..=top` with differentials `d^n` for `n < top`.
#[derive(Debug)]
pub struct CochainComplex {
    kind: ComplexKind,
    source: Source,
    powers: Powers,
    /// Fixed side of every hom space: coefficients (Hochschild) or `M` (Cartier).
    fixed: Arc<Bimodule>,
    frames: Vec<HomFrame>,
    differentials: Vec<SparseMatrix>,
}

/// `C^m(A|B, M) = Hom_{B-B}(A^{⊗_B m}, M)`.
pub fn relative_hochschild_complex(ext: &AlgebraExtension, coeff: Arc<Bimodule>, top: usize) -> Result<CochainComplex> {
    relative_hochschild_complex_with(ext, coeff, top, &ComplexOptions::default())
}

pub fn relative_hochschild_complex_with(
    ext: &AlgebraExtension,
    coeff: Arc<Bimodule>,
    top: usize,
    opts: &ComplexOptions,
) -> Result<CochainComplex> {
    let factor = Arc::new(regular_bimodule(ext.big().clone()).restrict(ext)?);
    let fixed = Arc::new(coeff.restrict(ext)?);
    let mut powers = Powers::new(factor);
    powers.extend_to(top + 1, opts.max_space)?;
    let source = Source::Hochschild {
        ext: ext.clone(),
        coeff,
    };
    CochainComplex::build(ComplexKind::RelativeHochschild, source, powers, fixed, top, opts)
}

/// `C^n(C, M) = Hom_{B-B}(M, C^{⊗_B n})`.
pub fn cartier_complex(m: Arc<Bicomodule>, top: usize) -> Result<CochainComplex> {
    cartier_complex_with(m, top, &ComplexOptions::default())
}

pub fn cartier_complex_with(m: Arc<Bicomodule>, top: usize, opts: &ComplexOptions) -> Result<CochainComplex> {
    let mut powers = Powers::new(m.coring().carrier().clone());
    powers.extend_to(top.max(1), opts.max_space)?;
    let fixed = m.carrier().clone();
    let source = Source::Cartier { bicomodule: m };
    CochainComplex::build(ComplexKind::Cartier, source, powers, fixed, top, opts)
}

/// Cartier complex of a coring with coefficients in itself.
pub fn cartier_complex_regular(c: Arc<Coring>, top: usize, opts: &ComplexOptions) -> Result<CochainComplex> {
    cartier_complex_with(Arc::new(Bicomodule::regular(c)), top, opts)
}

impl CochainComplex {
    fn build(
        kind: ComplexKind,
        source: Source,
        powers: Powers,
        fixed: Arc<Bimodule>,
        top: usize,
        opts: &ComplexOptions,
    ) -> Result<CochainComplex> {
        let mut frames = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let frame = match kind {
                ComplexKind::RelativeHochschild => HomFrame::new(powers.object(n).clone(), fixed.clone()),
                ComplexKind::Cartier => HomFrame::new(fixed.clone(), powers.object(n).clone()),
            };
            cap(format!("cochain space in degree {n}"), frame.ambient(), opts.max_space)?;
            frames.push(frame);
        }
        let mut cx = CochainComplex {
            kind,
            source,
            powers,
            fixed,
            frames,
            differentials: Vec::new(),
        };
        for n in 0..top {
            let d = cx.compute_differential(n)?;
            cx.differentials.push(d);
        }
        Ok(cx)
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn field(&self) -> Field {
        self.fixed.field()
    }

    /// Highest degree with a cochain space.
    pub fn top(&self) -> usize {
        self.frames.len() - 1
    }

    pub fn base(&self) -> &Arc<Algebra> {
        self.fixed.base()
    }

    pub fn powers(&self) -> &Powers {
        &self.powers
    }

    /// Dimensions of the tensor powers used in degrees `0..=top`.
    pub fn tensor_dims(&self) -> Vec<usize> {
        (0..=self.top()).map(|n| self.powers.dim(n)).collect()
    }

    pub fn space_dim(&self, n: usize) -> usize {
        self.frames[n].space().dim()
    }

    pub fn space_dims(&self) -> Vec<usize> {
        (0..=self.top()).map(|n| self.space_dim(n)).collect()
    }

    /// Basis of the degree-`n` space in generator coordinates.
    pub fn space_basis(&self, n: usize) -> &SparseBasis {
        self.frames[n].space()
    }

    pub fn domain(&self, n: usize) -> &Arc<Bimodule> {
        &self.frames[n].domain
    }

    pub fn codomain(&self, n: usize) -> &Arc<Bimodule> {
        &self.frames[n].codomain
    }

    /// Coordinates in the degree-`n` basis → values on the domain basis.
    pub fn values(&self, n: usize, coeffs: &[Scalar]) -> Vec<SparseVec> {
        let fr = &self.frames[n];
        fr.values(&fr.space().combine(coeffs))
    }

    /// Coordinates → the cochain as a `dim codomain × dim domain` matrix.
    pub fn map_matrix(&self, n: usize, coeffs: &[Scalar]) -> Matrix {
        let fr = &self.frames[n];
        SparseMatrix::new(self.field(), fr.codomain.dim(), self.values(n, coeffs)).to_dense()
    }

    /// Coordinates of the bimodule map with the given values, or `None` when the
    /// values do not define an element of the degree-`n` space.
    pub fn coordinates_of(&self, n: usize, values: &[SparseVec]) -> Option<Vec<Scalar>> {
        let fr = &self.frames[n];
        if values.len() != fr.domain.dim() {
            return None;
        }
        let amb = fr.from_values(values);
        let c = fr.space().coordinates(&amb)?;
        if fr.values(&amb) != values {
            return None;
        }
        Some(c)
    }

    pub fn differential(&self, n: usize) -> &SparseMatrix {
        &self.differentials[n]
    }

    pub fn differential_dense(&self, n: usize) -> Matrix {
        self.differentials[n].to_dense()
    }

    pub fn apply_differential(&self, n: usize, coeffs: &[Scalar]) -> Vec<Scalar> {
        let d = &self.differentials[n];
        sparse::to_dense(&d.apply(&sparse::from_dense(coeffs)), d.nrows(), self.field())
    }

    /// Values of `d f` on the listed basis vectors of the degree-`n+1` domain,
    /// for `f` given by its values on the degree-`n` domain.
    pub fn eval_differential(&self, n: usize, fv: &[SparseVec], targets: &[u32]) -> Vec<SparseVec> {
        self.eval_differential_with(&self.powers, n, fv, targets)
    }

    /// As [`CochainComplex::eval_differential`] with a longer copy of the
    /// tensor powers, for degrees above `top`.
    pub fn eval_differential_with(&self, p: &Powers, n: usize, fv: &[SparseVec], targets: &[u32]) -> Vec<SparseVec> {
        match &self.source {
            Source::Hochschild { ext, coeff } => targets
                .iter()
                .map(|t| self.hochschild_at(p, ext.big(), coeff, n, fv, *t as usize))
                .collect(),
            Source::Cartier { bicomodule } => targets
                .iter()
                .map(|t| self.cartier_at(p, bicomodule, n, fv, *t as usize))
                .collect(),
        }
    }

    /// `d f` on the full degree-`n+1` domain.
    pub fn differential_values(&self, n: usize, fv: &[SparseVec]) -> Vec<SparseVec> {
        self.differential_values_with(&self.powers, n, fv)
    }

    pub fn differential_values_with(&self, p: &Powers, n: usize, fv: &[SparseVec]) -> Vec<SparseVec> {
        let dim = match self.kind {
            ComplexKind::RelativeHochschild => p.dim(n + 1),
            ComplexKind::Cartier => self.fixed.dim(),
        };
        let targets: Vec<u32> = (0..dim as u32).collect();
        self.eval_differential_with(p, n, fv, &targets)
    }

    fn hochschild_at(&self, p: &Powers, a: &Arc<Algebra>, coeff: &Bimodule, m: usize, fv: &[SparseVec], t: usize) -> SparseVec {
        let field = self.field();
        let tuple = p.rep(m + 1, t);
        let mut acc = Accumulator::new();
        let first = apply_values(fv, &p.project(&tuple[1..]));
        acc.add_scaled(&field.one(), &coeff.act_left(&sparse::unit(tuple[0] as usize, field), &first));
        let mut vecs: Vec<SparseVec> = Vec::with_capacity(m);
        for i in 0..m {
            let prod = a.product(tuple[i] as usize, tuple[i + 1] as usize);
            if prod.is_empty() {
                continue;
            }
            vecs.clear();
            for (j, x) in tuple.iter().enumerate() {
                if j == i {
                    vecs.push(prod.clone());
                } else if j != i + 1 {
                    vecs.push(sparse::unit(*x as usize, field));
                }
            }
            let v = apply_values(fv, &p.project_vecs(&vecs));
            acc.add_scaled(&field.one().signed(i % 2 == 0), &v);
        }
        let last = apply_values(fv, &p.project(&tuple[..m]));
        let v = coeff.act_right(&last, &sparse::unit(tuple[m] as usize, field));
        acc.add_scaled(&field.one().signed(m % 2 == 0), &v);
        acc.finish()
    }

    fn cartier_at(&self, p: &Powers, b: &Bicomodule, n: usize, fv: &[SparseVec], m: usize) -> SparseVec {
        let field = self.field();
        let c = b.coring();
        let mut acc = Accumulator::new();
        for (t, s) in b.lambda(m) {
            let (cc, mp) = b.cm().rep(*t as usize);
            acc.add_scaled(s, &p.prepend(cc, &fv[mp], n));
        }
        if n >= 1 {
            let mut buf = Vec::with_capacity(n + 1);
            for (u, s) in &fv[m] {
                let tuple = p.rep(n, *u as usize);
                for k in 1..=n {
                    let sign = s.clone().signed(k % 2 == 1);
                    for (w, s2) in c.comult(tuple[k - 1] as usize) {
                        let (x, y) = c.square().rep(*w as usize);
                        buf.clear();
                        buf.extend_from_slice(&tuple[..k - 1]);
                        buf.push(x as u32);
                        buf.push(y as u32);
                        buf.extend_from_slice(&tuple[k..]);
                        acc.add_scaled(&(&sign * s2), &p.project(&buf));
                    }
                }
            }
        }
        let last_sign = field.one().signed(n % 2 == 0);
        for (t, s) in b.rho(m) {
            let (mp, cc) = b.mc().rep(*t as usize);
            acc.add_scaled(&(s * &last_sign), &p.append(&fv[mp], n, cc));
        }
        acc.finish()
    }

    fn compute_differential(&self, n: usize) -> Result<SparseMatrix> {
        let src = &self.frames[n];
        let dst = &self.frames[n + 1];
        let dy = dst.codomain.dim() as u32;
        let mut cols = Vec::with_capacity(src.space().dim());
        for v in &src.space().vectors {
            let fv = src.values(v);
            let vals = self.eval_differential(n, &fv, &dst.gens);
            let mut amb = Vec::new();
            for (g, val) in vals.iter().enumerate() {
                for (y, s) in val {
                    amb.push((g as u32 * dy + *y, s.clone()));
                }
            }
            let c = dst
                .space()
                .coordinates(&amb)
                .ok_or_else(|| violation("cochain complex", "differential preserves cochain space", vec![n]))?;
            cols.push(sparse::from_dense(&c));
        }
        Ok(SparseMatrix::new(self.field(), dst.space().dim(), cols))
    }

    /// Checks `d f` against its bilinear extension on every domain basis vector.
    pub fn verify_differential_full(&self, n: usize) -> bool {
        let src = &self.frames[n];
        (0..src.space().dim()).all(|k| {
            let mut e = vec![self.field().zero(); src.space().dim()];
            e[k] = self.field().one();
            let fv = self.values(n, &e);
            let full = self.differential_values(n, &fv);
            let img = self.apply_differential(n, &e);
            full == self.values(n + 1, &img)
        })
    }

    /// `d^{n+1} ∘ d^n = 0`.
    pub fn verify_square_zero(&self) -> bool {
        (0..self.differentials.len().saturating_sub(1))
            .all(|n| self.differentials[n + 1].compose(&self.differentials[n]).is_zero())
    }

    /// `h` with `d^{n-1} h = v`, or `None`. In degree 0 only `v = 0` is a coboundary.
    pub fn coboundary_preimage(&self, n: usize, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let field = self.field();
        if n == 0 {
            return v.iter().all(|s| s.is_zero()).then(Vec::new);
        }
        let d = &self.differentials[n - 1];
        let rows: Vec<(SparseVec, Scalar)> = d.rows().into_iter().zip(v.iter().cloned()).collect();
        sparse::solve_rows(field, d.ncols(), rows)
    }

    pub fn is_cocycle(&self, n: usize, v: &[Scalar]) -> bool {
        n >= self.differentials.len() || self.apply_differential(n, v).iter().all(|s| s.is_zero())
    }
}

/// Cohomology dimensions and representatives in degrees `0..top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub dims: Vec<usize>,
    pub representatives: Vec<Vec<Vec<Scalar>>>,
    pub space_dims: Vec<usize>,
    pub max_degree: usize,
}

/// `H^n`, needs `n < top`. Returns the dimension and cocycle representatives.
pub fn cohomology(cx: &CochainComplex, n: usize) -> Result<(usize, Vec<Vec<Scalar>>)> {
    if n >= cx.differentials.len() {
        return Err(Error::DegreeOutOfRange {
            degree: n,
            max: cx.differentials.len().saturating_sub(1),
        });
    }
    let field = cx.field();
    let dim = cx.space_dim(n);
    let ker = sparse::kernel_of_rows(field, dim, cx.differentials[n].rows());
    let mut ech = Echelon::new(field, dim);
    if n > 0 {
        for col in cx.differentials[n - 1].columns() {
            ech.insert(col.clone());
        }
    }
    let mut reps = Vec::new();
    for v in &ker.vectors {
        if ech.insert(v.clone()).is_some() {
            reps.push(sparse::to_dense(v, dim, field));
        }
    }
    Ok((reps.len(), reps))
}

pub fn cohomology_report(cx: &CochainComplex) -> Result<CohomologyReport> {
    let mut dims = Vec::new();
    let mut representatives = Vec::new();
    for n in 0..cx.differentials.len() {
        let (d, r) = cohomology(cx, n)?;
        dims.push(d);
        representatives.push(r);
    }
    Ok(CohomologyReport {
        dims,
        representatives,
        space_dims: cx.space_dims(),
        max_degree: cx.differentials.len().saturating_sub(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, truncated_polynomial};
    use crate::coring::trivial_coring;

    fn dual_numbers_hh(p: u64) -> Vec<usize> {
        let f = Field::prime(p).unwrap();
        let a = Arc::new(truncated_polynomial(f, 2).unwrap());
        let ext = AlgebraExtension::over_field(a.clone());
        let coeff = Arc::new(regular_bimodule(a));
        let cx = relative_hochschild_complex(&ext, coeff, 5).unwrap();
        assert!(cx.verify_square_zero());
        for n in 0..5 {
            assert!(cx.verify_differential_full(n));
        }
        cohomology_report(&cx).unwrap().dims
    }

    #[test]
    fn dual_numbers_hochschild() {
        assert_eq!(dual_numbers_hh(2), vec![2, 2, 2, 2, 2]);
        assert_eq!(dual_numbers_hh(3), vec![2, 1, 1, 1, 1]);
    }

    #[test]
    fn relative_to_itself_collapses() {
        let q = Field::Rational;
        let a = Arc::new(matrix_algebra(q, 2));
        let ext = AlgebraExtension::identity(a.clone());
        let cx = relative_hochschild_complex(&ext, Arc::new(regular_bimodule(a)), 3).unwrap();
        assert_eq!(cohomology_report(&cx).unwrap().dims, vec![1, 0, 0]);
    }

    #[test]
    fn trivial_coring_cartier() {
        let q = Field::Rational;
        let c = Arc::new(trivial_coring(Arc::new(matrix_algebra(q, 2))));
        let cx = cartier_complex_regular(c, 3, &ComplexOptions::default()).unwrap();
        assert!(cx.verify_square_zero());
        assert_eq!(cohomology_report(&cx).unwrap().dims, vec![1, 0, 0]);
        assert!(matches!(cohomology(&cx, 3), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn guardrail_refuses_large_spaces() {
        let q = Field::Rational;
        let a = Arc::new(matrix_algebra(q, 2));
        let ext = AlgebraExtension::over_field(a.clone());
        let opts = ComplexOptions { max_space: 50 };
        let err = relative_hochschild_complex_with(&ext, Arc::new(regular_bimodule(a)), 4, &opts).unwrap_err();
        assert!(matches!(err, Error::DegreeCapExceeded { .. }));
    }
}
