//! Coalgebras, group Hopf algebras, entwining structures, their associated
//! corings, twisted convolution algebras, smash products and equivariant
//! cohomology.
//!
//! Index conventions: `C ⊗ A` has basis `c*dim A + a`, `A ⊗ C` has basis
//! `a*dim C + c`, `Hom_k(C, A)` has basis `f_{c,a} = e_c^* ⊗ e_a` at `c*dim A + a`.

use std::sync::Arc;

use crate::algebra::{center, field_algebra, opposite, smash_product, tensor_vec, Algebra, AlgebraExtension, AlgebraMap};
use crate::bimodule::{regular_bimodule, Bimodule, Dual};
use crate::cochain::{
    cartier_complex_regular, cohomology_report, relative_hochschild_complex_with, CohomologyReport, ComplexOptions,
};
use crate::coring::{right_algebra, Coring};
use crate::duality::{verify_cochain_isomorphism, CochainIsoReport, DualityContext};
use crate::error::{violation, Error, Result};
use crate::exactlin::sparse::{self, Accumulator, SparseMatrix, SparseVec};
use crate::exactlin::{Field, Matrix, Scalar};

/// A finite-dimensional coalgebra; `comult[i]` is `Δ(e_i)` at flat index `j*dim + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    field: Field,
    dim: usize,
    comult: Vec<SparseVec>,
    counit: Vec<Scalar>,
}

impl Coalgebra {
    /// From `d[(i*dim + j)*dim + k]`, the coefficient of `e_j ⊗ e_k` in `Δ(e_i)`.
    pub fn new(field: Field, dim: usize, d: &[Scalar], counit: Vec<Scalar>) -> Result<Coalgebra> {
        if d.len() != dim * dim * dim {
            return Err(Error::Incompatible("comultiplication tensor shape".into()));
        }
        let comult = (0..dim).map(|i| sparse::from_dense(&d[i * dim * dim..(i + 1) * dim * dim])).collect();
        Coalgebra::from_comult(field, dim, comult, counit)
    }

    pub fn from_comult(field: Field, dim: usize, comult: Vec<SparseVec>, counit: Vec<Scalar>) -> Result<Coalgebra> {
        if comult.len() != dim || counit.len() != dim {
            return Err(Error::Incompatible("one coproduct and counit value per basis vector".into()));
        }
        let c = Coalgebra {
            field,
            dim,
            comult,
            counit,
        };
        validate_coalgebra(&c)?;
        Ok(c)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn comult(&self, i: usize) -> &SparseVec {
        &self.comult[i]
    }
    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    /// `Δ(e_i)` as `(j, k, coefficient)` triples.
    pub fn comult_pairs(&self, i: usize) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        let n = self.dim;
        self.comult[i].iter().map(move |(x, s)| (*x as usize / n, *x as usize % n, s))
    }

    pub fn comult_vec(&self, v: &[(u32, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, s) in v {
            acc.add_scaled(s, &self.comult[*i as usize]);
        }
        acc.finish()
    }

    pub fn counit_vec(&self, v: &[(u32, Scalar)]) -> Scalar {
        let mut acc = Accumulator::new();
        for (i, s) in v {
            acc.add(0, s * &self.counit[*i as usize]);
        }
        sparse::get(&acc.finish(), 0).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `(Δ⊗id)Δ(e_i)` at flat index `(x*dim + y)*dim + z`.
    pub fn double_comult(&self, i: usize) -> SparseVec {
        let n = self.dim as u32;
        let mut acc = Accumulator::new();
        for (jk, s) in &self.comult[i] {
            let (j, k) = (jk / n, jk % n);
            for (pq, t) in &self.comult[j as usize] {
                acc.add(pq * n + k, s * t);
            }
        }
        acc.finish()
    }
}

pub fn validate_coalgebra(c: &Coalgebra) -> Result<()> {
    let n = c.dim as u32;
    let f = c.field;
    for i in 0..c.dim {
        if c.comult[i].iter().any(|(x, _)| *x >= n * n) {
            return Err(violation("coalgebra", "coproduct index in range", vec![i]));
        }
    }
    for i in 0..c.dim {
        let mut right = Accumulator::new();
        for (jk, s) in &c.comult[i] {
            let (j, k) = (jk / n, jk % n);
            for (pq, t) in &c.comult[k as usize] {
                right.add(j * n * n + pq, s * t);
            }
        }
        if c.double_comult(i) != right.finish() {
            return Err(violation("coalgebra", "coassociativity", vec![i]));
        }
        let mut left_counit = Accumulator::new();
        let mut right_counit = Accumulator::new();
        for (j, k, s) in c.comult_pairs(i) {
            left_counit.add(k as u32, s * &c.counit[j]);
            right_counit.add(j as u32, s * &c.counit[k]);
        }
        let e = sparse::unit(i, f);
        if left_counit.finish() != e || right_counit.finish() != e {
            return Err(violation("coalgebra", "counit", vec![i]));
        }
    }
    Ok(())
}

/// Group-like coalgebra on `n` points: `Δ(g) = g⊗g`, `ε(g) = 1`.
pub fn group_like_coalgebra(field: Field, n: usize) -> Coalgebra {
    let comult = (0..n).map(|g| sparse::unit(g * n + g, field)).collect();
    Coalgebra {
        field,
        dim: n,
        comult,
        counit: vec![field.one(); n],
    }
}

/// The linear dual of an algebra, on the dual basis `e_k^*`.
pub fn dual_coalgebra(a: &Algebra) -> Coalgebra {
    let n = a.dim();
    let field = a.field();
    let mut acc: Vec<Accumulator> = (0..n).map(|_| Accumulator::new()).collect();
    for i in 0..n {
        for j in 0..n {
            for (k, s) in a.product(i, j) {
                acc[*k as usize].add((i * n + j) as u32, s.clone());
            }
        }
    }
    Coalgebra {
        field,
        dim: n,
        comult: acc.into_iter().map(Accumulator::finish).collect(),
        counit: a.unit_dense(),
    }
}

/// `C^∨` with `(ξη)(c) = ξ(c₁)η(c₂)` and unit `ε`.
pub fn convolution_algebra(c: &Coalgebra) -> Result<Algebra> {
    let n = c.dim;
    let mut products: Vec<Accumulator> = (0..n * n).map(|_| Accumulator::new()).collect();
    for k in 0..n {
        for (i, j, s) in c.comult_pairs(k) {
            products[i * n + j].add(k as u32, s.clone());
        }
    }
    Algebra::from_products(
        c.field,
        n,
        products.into_iter().map(Accumulator::finish).collect(),
        sparse::from_dense(&c.counit),
    )
}

/// Multiplication in `A ⊗ A'` on flat tensors.
fn tensor_mul(a: &Algebra, b: &Algebra, x: &[(u32, Scalar)], y: &[(u32, Scalar)]) -> SparseVec {
    let nb = b.dim() as u32;
    let mut acc = Accumulator::new();
    for (u, s) in x {
        for (v, t) in y {
            let l = a.product((u / nb) as usize, (v / nb) as usize);
            let r = b.product((u % nb) as usize, (v % nb) as usize);
            acc.add_scaled(&(s * t), &tensor_vec(l, r, b.dim()));
        }
    }
    acc.finish()
}

/// An algebra and a coalgebra on the same carrier with an antipode.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    pub algebra: Arc<Algebra>,
    pub coalgebra: Arc<Coalgebra>,
    pub antipode: Matrix,
}

impl HopfAlgebra {
    pub fn new(algebra: Arc<Algebra>, coalgebra: Arc<Coalgebra>, antipode: Matrix) -> Result<HopfAlgebra> {
        let h = HopfAlgebra {
            algebra,
            coalgebra,
            antipode,
        };
        validate_hopf(&h)?;
        Ok(h)
    }

    /// `kG` with `Δ(g) = g⊗g`, `ε(g) = 1`, `S(g) = g⁻¹`.
    pub fn group(field: Field, table: &[Vec<usize>]) -> Result<HopfAlgebra> {
        let a = crate::algebra::group_algebra(field, table)?;
        let n = a.dim();
        let e = a.unit()[0].0 as usize;
        let mut s = Matrix::zeros(field, n, n);
        for g in 0..n {
            let inv = (0..n).find(|&h| table[g][h] == e).expect("validated group");
            s.set(inv, g, field.one());
        }
        HopfAlgebra::new(Arc::new(a), Arc::new(group_like_coalgebra(field, n)), s)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

pub fn validate_hopf(h: &HopfAlgebra) -> Result<()> {
    let (a, c) = (&h.algebra, &h.coalgebra);
    let n = a.dim();
    let field = a.field();
    if c.dim != n || c.field != field || h.antipode.rows() != n || h.antipode.cols() != n {
        return Err(Error::Incompatible("Hopf algebra carriers differ".into()));
    }
    let unit = a.unit();
    if c.comult_vec(unit) != tensor_vec(unit, unit, n) {
        return Err(violation("Hopf algebra", "comultiplication is unital", vec![]));
    }
    if !c.counit_vec(unit).is_one() {
        return Err(violation("Hopf algebra", "counit is unital", vec![]));
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = c.comult_vec(a.product(i, j));
            let rhs = tensor_mul(a, a, &c.comult[i], &c.comult[j]);
            if lhs != rhs {
                return Err(violation("Hopf algebra", "comultiplication is multiplicative", vec![i, j]));
            }
            if c.counit_vec(a.product(i, j)) != &c.counit[i] * &c.counit[j] {
                return Err(violation("Hopf algebra", "counit is multiplicative", vec![i, j]));
            }
        }
    }
    let s = SparseMatrix::from_dense(&h.antipode);
    for i in 0..n {
        let mut left = Accumulator::new();
        let mut right = Accumulator::new();
        for (x, y, t) in c.comult_pairs(i) {
            left.add_scaled(t, &a.mul(s.col(x), &sparse::unit(y, field)));
            right.add_scaled(t, &a.mul(&sparse::unit(x, field), s.col(y)));
        }
        let target = sparse::scale(unit, &c.counit[i]);
        if left.finish() != target || right.finish() != target {
            return Err(violation("Hopf algebra", "antipode", vec![i]));
        }
    }
    Ok(())
}

/// `ψ: C⊗A → A⊗C`, written `ψ(c⊗a) = a_α ⊗ c^α`.
#[derive(Clone, Debug)]
pub struct Entwining {
    pub alg: Arc<Algebra>,
    pub coalg: Arc<Coalgebra>,
    psi: SparseMatrix,
}

impl Entwining {
    pub fn new(alg: Arc<Algebra>, coalg: Arc<Coalgebra>, psi: &Matrix) -> Result<Entwining> {
        let e = Entwining::unchecked(alg, coalg, psi)?;
        validate_entwining(&e)?;
        Ok(e)
    }

    /// Shape checks only; the axioms are left to [`validate_entwining`].
    pub fn unchecked(alg: Arc<Algebra>, coalg: Arc<Coalgebra>, psi: &Matrix) -> Result<Entwining> {
        let d = alg.dim() * coalg.dim;
        if alg.field() != coalg.field || psi.rows() != d || psi.cols() != d || psi.field() != alg.field() {
            return Err(Error::Incompatible("entwining map shape".into()));
        }
        Ok(Entwining {
            alg,
            coalg,
            psi: SparseMatrix::from_dense(psi),
        })
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn psi_matrix(&self) -> Matrix {
        self.psi.to_dense()
    }

    /// `ψ(e_c ⊗ e_a)` as `(a', c', coefficient)` triples.
    pub fn psi_pairs(&self, c: usize, a: usize) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        let (na, nc) = (self.alg.dim(), self.coalg.dim);
        self.psi.col(c * na + a).iter().map(move |(x, s)| (*x as usize / nc, *x as usize % nc, s))
    }

    fn psi_on(&self, c: usize, a: &[(u32, Scalar)]) -> SparseVec {
        let na = self.alg.dim() as u32;
        let mut acc = Accumulator::new();
        for (x, s) in a {
            acc.add_scaled(s, self.psi.col((c as u32 * na + x) as usize));
        }
        acc.finish()
    }
}

/// Checks the four entwining axioms in order.
pub fn validate_entwining(e: &Entwining) -> Result<()> {
    let (na, nc) = (e.alg.dim(), e.coalg.dim);
    let field = e.field();
    // 1: ψ(c⊗aa') = a_α a'_β ⊗ c^{αβ}
    for c in 0..nc {
        for a in 0..na {
            for a2 in 0..na {
                let lhs = e.psi_on(c, e.alg.product(a, a2));
                let mut acc = Accumulator::new();
                for (ap, cp, s) in e.psi_pairs(c, a) {
                    for (a2p, cpp, t) in e.psi_pairs(cp, a2) {
                        acc.add_scaled(&(s * t), &tensor_vec(e.alg.product(ap, a2p), &sparse::unit(cpp, field), nc));
                    }
                }
                if lhs != acc.finish() {
                    return Err(Error::AxiomViolation(1));
                }
            }
        }
    }
    // 2: (id⊗Δ)ψ(c⊗a) = a_{αβ} ⊗ c₁^β ⊗ c₂^α on A⊗C⊗C at (a*nc + x)*nc + y
    let nc32 = nc as u32;
    for c in 0..nc {
        for a in 0..na {
            let mut lhs = Accumulator::new();
            for (ap, cp, s) in e.psi_pairs(c, a) {
                for (xy, t) in e.coalg.comult(cp) {
                    lhs.add(ap as u32 * nc32 * nc32 + xy, s * t);
                }
            }
            let mut rhs = Accumulator::new();
            for (c1, c2, s) in e.coalg.comult_pairs(c) {
                for (ap, c2p, t) in e.psi_pairs(c2, a) {
                    for (app, c1p, u) in e.psi_pairs(c1, ap) {
                        rhs.add(((app * nc + c1p) * nc + c2p) as u32, &(s * t) * u);
                    }
                }
            }
            if lhs.finish() != rhs.finish() {
                return Err(Error::AxiomViolation(2));
            }
        }
    }
    // 3: ψ(c⊗1) = 1⊗c
    for c in 0..nc {
        if e.psi_on(c, e.alg.unit()) != tensor_vec(e.alg.unit(), &sparse::unit(c, field), nc) {
            return Err(Error::AxiomViolation(3));
        }
    }
    // 4: (id⊗ε)ψ(c⊗a) = ε(c)a
    for c in 0..nc {
        for a in 0..na {
            let mut acc = Accumulator::new();
            for (ap, cp, s) in e.psi_pairs(c, a) {
                acc.add(ap as u32, s * &e.coalg.counit[cp]);
            }
            if acc.finish() != sparse::scale(&sparse::unit(a, field), &e.coalg.counit[c]) {
                return Err(Error::AxiomViolation(4));
            }
        }
    }
    Ok(())
}

/// `ψ(c⊗a) = a⊗c`.
pub fn trivial_entwining(a: Arc<Algebra>, c: Arc<Coalgebra>) -> Result<Entwining> {
    let psi = crate::algebra::swap_matrix(a.field(), a.dim(), c.dim);
    Entwining::new(a, c, &psi)
}

/// `ψ(h'⊗h) = h₂ ⊗ S(h₁)h'h₃` on `C = A = H`.
pub fn yd_entwining(h: &HopfAlgebra) -> Result<Entwining> {
    validate_hopf(h)?;
    let n = h.dim();
    let field = h.algebra.field();
    let s = SparseMatrix::from_dense(&h.antipode);
    let a = &h.algebra;
    let mut psi = Matrix::zeros(field, n * n, n * n);
    for x in 0..n {
        let three = h.coalgebra.double_comult(x);
        for hp in 0..n {
            let mut acc = Accumulator::new();
            for (idx, t) in &three {
                let idx = *idx as usize;
                let (h1, h2, h3) = (idx / (n * n), (idx / n) % n, idx % n);
                let left = a.mul(s.col(h1), &sparse::unit(hp, field));
                let conj = a.mul(&left, &sparse::unit(h3, field));
                acc.add_scaled(t, &tensor_vec(&sparse::unit(h2, field), &conj, n));
            }
            for (row, v) in acc.finish() {
                psi.set(row as usize, hp * n + x, v);
            }
        }
    }
    Entwining::new(h.algebra.clone(), h.coalgebra.clone(), &psi)
}

/// `A ⊗ C` over `A` with `a'(a⊗c) = a'a⊗c`, `(a⊗c)a' = a a'_α ⊗ c^α`,
/// `Δ = id⊗Δ_C` and `ε = id⊗ε_C`.
pub fn associated_coring(e: &Entwining) -> Result<Coring> {
    let (na, nc) = (e.alg.dim(), e.coalg.dim);
    let field = e.field();
    let a = &e.alg;
    let n = na * nc;
    let mut left = Vec::with_capacity(na);
    let mut right = Vec::with_capacity(na);
    for i in 0..na {
        let mut lcols = Vec::with_capacity(n);
        let mut rcols = Vec::with_capacity(n);
        for x in 0..na {
            for c in 0..nc {
                lcols.push(tensor_vec(a.product(i, x), &sparse::unit(c, field), nc));
                let mut acc = Accumulator::new();
                for (ap, cp, s) in e.psi_pairs(c, i) {
                    acc.add_scaled(s, &tensor_vec(a.product(x, ap), &sparse::unit(cp, field), nc));
                }
                rcols.push(acc.finish());
            }
        }
        left.push(SparseMatrix::new(field, n, lcols));
        right.push(SparseMatrix::new(field, n, rcols));
    }
    let carrier = Arc::new(Bimodule::from_sparse(a.clone(), left, right)?);
    let mut delta = Vec::with_capacity(n);
    let mut counit = Vec::with_capacity(n);
    for x in 0..na {
        for c in 0..nc {
            let mut acc = Accumulator::new();
            for (j, k, s) in e.coalg.comult_pairs(c) {
                let first = x * nc + j;
                for (u, t) in a.unit() {
                    acc.add((first * n + *u as usize * nc + k) as u32, s * t);
                }
            }
            delta.push(acc.finish());
            counit.push(sparse::scale(&sparse::unit(x, field), &e.coalg.counit[c]));
        }
    }
    Coring::new(carrier, &delta, &counit)
}

/// A coalgebra as a coring over the ground field.
pub fn coalgebra_coring(c: Arc<Coalgebra>) -> Result<Coring> {
    let k = Arc::new(field_algebra(c.field));
    associated_coring(&trivial_entwining(k, c)?)
}

/// `Hom_ψ(C, A)` with `(f*g)(c) = g(c₂)_α f(c₁^α)` and unit `ι∘ε`.
pub fn twisted_convolution_algebra(e: &Entwining) -> Result<Algebra> {
    let (na, nc) = (e.alg.dim(), e.coalg.dim);
    let field = e.field();
    let d = na * nc;
    let mut products = Vec::with_capacity(d * d);
    for p in 0..d {
        let (c1, a1) = (p / na, p % na);
        for q in 0..d {
            let (c2, a2) = (q / na, q % na);
            let mut acc = Accumulator::new();
            for x in 0..nc {
                for (x1, x2, s) in e.coalg.comult_pairs(x) {
                    if x2 != c2 {
                        continue;
                    }
                    for (ap, cp, t) in e.psi_pairs(x1, a2) {
                        if cp != c1 {
                            continue;
                        }
                        acc.add_scaled(&(s * t), &tensor_vec(&sparse::unit(x, field), e.alg.product(ap, a1), na));
                    }
                }
            }
            products.push(acc.finish());
        }
    }
    let unit = tensor_vec(&sparse::from_dense(&e.coalg.counit), e.alg.unit(), na);
    Algebra::from_products(field, d, products, unit)
}

/// `a ↦ (c ↦ ε(c)a)` as a matrix `A → Hom_k(C, A)`.
pub fn counit_embedding(e: &Entwining) -> Matrix {
    let (na, nc) = (e.alg.dim(), e.coalg.dim);
    let field = e.field();
    let eps = sparse::from_dense(&e.coalg.counit);
    let cols: Vec<SparseVec> = (0..na).map(|a| tensor_vec(&eps, &sparse::unit(a, field), na)).collect();
    SparseMatrix::new(field, na * nc, cols).to_dense()
}

/// Output of [`smash_from_entwining`].
#[derive(Clone, Debug)]
pub struct SmashResult {
    /// `Φ: A ⊗ (C^∨)^op → (C^∨)^op ⊗ A`.
    pub phi: Matrix,
    pub first: Arc<Algebra>,
    pub smash: Arc<Algebra>,
    pub convolution: Arc<Algebra>,
    /// `θ(ξ#a)(c) = ξ(c)a`; the identity in the shared basis.
    pub theta: Matrix,
    /// θ as an algebra isomorphism onto `Hom_ψ(C, A)`, when it is one.
    pub iso: Option<AlgebraMap>,
    /// θ as an algebra isomorphism onto `Hom_ψ(C, A)^op`, when it is one.
    pub iso_to_opposite: Option<AlgebraMap>,
}

impl SmashResult {
    pub fn theta_is_iso(&self) -> bool {
        self.iso.is_some()
    }
    pub fn theta_is_anti_iso(&self) -> bool {
        self.iso_to_opposite.is_some()
    }
}

/// Builds `Φ(a⊗ξ) = Σ_j c_j^* ⊗ ξ(c_j^α) a_α`, the smash product
/// `(C^∨)^op # A` and checks `θ` against `Hom_ψ(C, A)` and its opposite.
/// Fails with `IsoCheckFailed` only when θ is neither.
pub fn smash_from_entwining(e: &Entwining) -> Result<SmashResult> {
    let (na, nc) = (e.alg.dim(), e.coalg.dim);
    let field = e.field();
    let first = Arc::new(opposite(&convolution_algebra(&e.coalg)?));
    let mut phi = Matrix::zeros(field, na * nc, na * nc);
    for a in 0..na {
        for j in 0..nc {
            for (ap, xi, s) in e.psi_pairs(j, a) {
                let (row, col) = (j * na + ap, a * nc + xi);
                let v = phi.get(row, col).clone() + s.clone();
                phi.set(row, col, v);
            }
        }
    }
    let smash = Arc::new(smash_product(&first, &e.alg, &phi)?);
    let convolution = Arc::new(twisted_convolution_algebra(e)?);
    let theta = Matrix::identity(field, na * nc);
    let iso = AlgebraMap::new(smash.clone(), convolution.clone(), theta.clone()).ok();
    let iso_to_opposite = AlgebraMap::new(smash.clone(), Arc::new(opposite(&convolution)), theta.clone()).ok();
    if iso.is_none() && iso_to_opposite.is_none() {
        return Err(Error::IsoCheckFailed(
            "θ is multiplicative into neither Hom_ψ(C,A) nor its opposite".into(),
        ));
    }
    Ok(SmashResult {
        phi,
        first,
        smash,
        convolution,
        theta,
        iso,
        iso_to_opposite,
    })
}

/// Cartier cohomology of the regular bicomodule of the associated coring, degrees `0..=max_degree`.
pub fn equivariant_cohomology(e: &Entwining, max_degree: usize, opts: &ComplexOptions) -> Result<CohomologyReport> {
    let c = Arc::new(associated_coring(e)?);
    let cx = cartier_complex_regular(c, max_degree + 1, opts)?;
    cohomology_report(&cx).map(|mut r| {
        r.dims.truncate(max_degree + 1);
        r.representatives.truncate(max_degree + 1);
        r
    })
}

/// The right algebra of the associated coring against `Hom_ψ(C, A)` through
/// `φ ↦ (c ↦ φ(1⊗c))`.
#[derive(Clone, Debug)]
pub struct SweedlerComparison {
    pub matrix: Matrix,
    pub right_algebra_iso: Option<AlgebraMap>,
    pub left_algebra_iso: Option<AlgebraMap>,
    /// `{1⊗c_j, a⊗c ↦ a·c_j^*(c)}` is a left dual basis of the associated coring.
    pub explicit_dual_basis: bool,
}

impl SweedlerComparison {
    pub fn ok(&self) -> bool {
        self.explicit_dual_basis && self.right_algebra_iso.as_ref().is_some_and(AlgebraMap::is_isomorphism)
    }
}

pub fn compare_right_algebra(e: &Entwining) -> Result<SweedlerComparison> {
    let (na, nc) = (e.alg.dim(), e.coalg.dim);
    let field = e.field();
    let coring = associated_coring(e)?;
    let ra = right_algebra(&coring)?;
    let explicit_dual_basis = explicit_dual_basis(e, &coring, &ra.dual);
    let conv = Arc::new(twisted_convolution_algebra(e)?);
    let d = ra.dual.dim();
    let cols: Vec<SparseVec> = (0..d)
        .map(|k| {
            let mut acc = Accumulator::new();
            for c in 0..nc {
                let x = tensor_vec(e.alg.unit(), &sparse::unit(c, field), nc);
                let v = ra.dual.eval(&sparse::unit(k, field), &x);
                acc.add_scaled(&field.one(), &tensor_vec(&sparse::unit(c, field), &v, na));
            }
            acc.finish()
        })
        .collect();
    let matrix = SparseMatrix::new(field, na * nc, cols).to_dense();
    let right_algebra_iso = AlgebraMap::new(ra.right_algebra.clone(), conv.clone(), matrix.clone()).ok();
    let left_algebra_iso = AlgebraMap::new(ra.left_dual_algebra.clone(), conv, matrix.clone()).ok();
    Ok(SweedlerComparison {
        matrix,
        right_algebra_iso,
        left_algebra_iso,
        explicit_dual_basis,
    })
}

fn explicit_dual_basis(e: &Entwining, coring: &Coring, dual: &Dual) -> bool {
    let (na, nc) = (e.alg.dim(), e.coalg.dim);
    let field = e.field();
    let carrier = coring.carrier();
    let functional = |j: usize| -> Vec<SparseVec> {
        (0..na * nc)
            .map(|x| if x % nc == j { sparse::unit(x / nc, field) } else { Vec::new() })
            .collect()
    };
    if (0..nc).any(|j| dual.coordinates(&functional(j)).is_none()) {
        return false;
    }
    (0..na * nc).all(|x| {
        let mut acc = Accumulator::new();
        for j in 0..nc {
            let elem = tensor_vec(e.alg.unit(), &sparse::unit(j, field), nc);
            acc.add_scaled(&field.one(), &carrier.act_left(&functional(j)[x], &elem));
        }
        acc.finish() == sparse::unit(x, field)
    })
}

/// Equivariant cohomology against relative Hochschild cohomology of the
/// twisted convolution algebra.
#[derive(Clone, Debug)]
pub struct EquivariantReport {
    pub equivariant: Vec<usize>,
    /// `HH(Hom_ψ | A^op)` with `A^op` embedded through `a ↦ ε(−)a`.
    pub convolution_hochschild: Vec<usize>,
    /// The cochain-level comparison on the associated coring.
    pub cochain_iso: CochainIsoReport,
    pub smash: SmashResult,
    pub sweedler: SweedlerComparison,
}

impl EquivariantReport {
    pub fn dims_agree(&self) -> bool {
        self.equivariant == self.convolution_hochschild && self.equivariant == self.cochain_iso.cartier_cohomology
    }
    pub fn ok(&self) -> bool {
        self.dims_agree() && self.cochain_iso.ok() && self.smash.theta_is_iso() && self.sweedler.ok()
    }
}

pub fn equivariant_theorem(e: &Entwining, max_degree: usize, opts: &ComplexOptions) -> Result<EquivariantReport> {
    let coring = Arc::new(associated_coring(e)?);
    let ctx = DualityContext::new(coring, max_degree + 1, opts)?;
    let cochain_iso = verify_cochain_isomorphism(&ctx, max_degree + 1)?;
    let mut equivariant = cochain_iso.cartier_cohomology.clone();
    equivariant.truncate(max_degree + 1);
    let conv = Arc::new(twisted_convolution_algebra(e)?);
    let aop = Arc::new(opposite(&e.alg));
    let ext = AlgebraExtension::new(aop, conv.clone(), counit_embedding(e))?;
    let hh = relative_hochschild_complex_with(&ext, Arc::new(regular_bimodule(conv)), max_degree + 1, opts)?;
    let mut convolution_hochschild = cohomology_report(&hh)?.dims;
    convolution_hochschild.truncate(max_degree + 1);
    Ok(EquivariantReport {
        equivariant,
        convolution_hochschild,
        cochain_iso,
        smash: smash_from_entwining(e)?,
        sweedler: compare_right_algebra(e)?,
    })
}

/// Trivial entwining: equivariant dims against Cartier-of-`C` dims times `dim Z(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialEntwiningReport {
    pub equivariant: Vec<usize>,
    pub coalgebra_cartier: Vec<usize>,
    pub center_dim: usize,
    pub algebra_dim: usize,
}

impl TrivialEntwiningReport {
    /// The form with `Z(A)`.
    pub fn ok(&self) -> bool {
        self.equivariant.len() == self.coalgebra_cartier.len()
            && self
                .equivariant
                .iter()
                .zip(&self.coalgebra_cartier)
                .all(|(e, c)| *e == c * self.center_dim)
    }
    /// The form with `A` in place of `Z(A)`.
    pub fn holds_with_algebra(&self) -> bool {
        self.equivariant.len() == self.coalgebra_cartier.len()
            && self
                .equivariant
                .iter()
                .zip(&self.coalgebra_cartier)
                .all(|(e, c)| *e == c * self.algebra_dim)
    }
}

pub fn trivial_entwining_check(
    a: Arc<Algebra>,
    c: Arc<Coalgebra>,
    max_degree: usize,
    opts: &ComplexOptions,
) -> Result<TrivialEntwiningReport> {
    let e = trivial_entwining(a.clone(), c.clone())?;
    let equivariant = equivariant_cohomology(&e, max_degree, opts)?.dims;
    let cx = cartier_complex_regular(Arc::new(coalgebra_coring(c)?), max_degree + 1, opts)?;
    let mut coalgebra_cartier = cohomology_report(&cx)?.dims;
    coalgebra_cartier.truncate(max_degree + 1);
    Ok(TrivialEntwiningReport {
        equivariant,
        coalgebra_cartier,
        center_dim: center(&a).dim(),
        algebra_dim: a.dim(),
    })
}

/// Relative HH of a tensor product extension against the convolution of factor dims.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethReport {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub tensor: Vec<usize>,
    pub convolution: Vec<usize>,
}

impl KunnethReport {
    pub fn ok(&self) -> bool {
        self.tensor == self.convolution
    }
}

pub fn kunneth_check(
    first: &AlgebraExtension,
    second: &AlgebraExtension,
    max_degree: usize,
    opts: &ComplexOptions,
) -> Result<KunnethReport> {
    let dims = |ext: &AlgebraExtension| -> Result<Vec<usize>> {
        let cx = relative_hochschild_complex_with(ext, Arc::new(regular_bimodule(ext.big().clone())), max_degree + 1, opts)?;
        let mut d = cohomology_report(&cx)?.dims;
        d.truncate(max_degree + 1);
        Ok(d)
    };
    let a = dims(first)?;
    let b = dims(second)?;
    let t = dims(&first.tensor(second)?)?;
    let convolution = (0..=max_degree)
        .map(|n| (0..=n).map(|i| a[i] * b[n - i]).sum())
        .collect();
    Ok(KunnethReport {
        first: a,
        second: b,
        tensor: t,
        convolution,
    })
}
