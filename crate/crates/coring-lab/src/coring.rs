//! Corings over a base algebra, bicomodules, the right algebra of a coring
//! and the right dual coring of an extension.

use std::sync::Arc;

use crate::algebra::{opposite, Algebra, AlgebraExtension, AlgebraMap};
use crate::bimodule::{
    dual_basis, left_dual, regular_bimodule, right_dual, tensor_over_b, Bimodule, BimoduleMap, Dual, Side,
    TensorChain, TensorOverB,
};
use crate::error::{violation, Error, Result};
use crate::exactlin::sparse::{self, Accumulator, SparseMatrix, SparseVec};
use crate::exactlin::{Field, Matrix, Scalar};

/// A comonoid in bimodules over `base`. The comultiplication lands in the
/// quotient basis of `C ⊗_B C` held by `chain`.
#[derive(Clone, Debug)]
pub struct Coring {
    carrier: Arc<Bimodule>,
    chain: TensorChain,
    comult: SparseMatrix,
    counit: SparseMatrix,
    counit_left: SparseMatrix,
    counit_right: SparseMatrix,
}

/// Pure-tensor input: `delta[c]` lists `Σ s·(e_x ⊗ e_y)` at flat index `x*dim + y`.
fn project_pure(t: &TensorOverB, flat: &[SparseVec]) -> SparseMatrix {
    let dn = t.right().dim();
    let cols = flat
        .iter()
        .map(|v| {
            let mut acc = Accumulator::new();
            for (idx, s) in v {
                acc.add_scaled(s, t.project_pair(*idx as usize / dn, *idx as usize % dn));
            }
            acc.finish()
        })
        .collect();
    SparseMatrix::new(t.result().field(), t.dim(), cols)
}

impl Coring {
    /// Builds and validates a coring from comultiplication values given on
    /// pure tensors and counit values in the base.
    pub fn new(carrier: Arc<Bimodule>, delta: &[SparseVec], counit: &[SparseVec]) -> Result<Coring> {
        let n = carrier.dim();
        if delta.len() != n || counit.len() != n {
            return Err(Error::Incompatible("one comultiplication and counit value per basis vector".into()));
        }
        let mut chain = TensorChain::new(carrier.clone());
        chain.push(carrier.clone())?;
        let comult = project_pure(chain.level(2), delta);
        let counit = SparseMatrix::new(carrier.field(), carrier.base().dim(), counit.to_vec());
        let c = Coring::assemble(chain, comult, counit)?;
        validate_coring(&c)?;
        Ok(c)
    }

    fn assemble(mut chain: TensorChain, comult: SparseMatrix, counit: SparseMatrix) -> Result<Coring> {
        let carrier = chain.factor(0).clone();
        if chain.len() < 3 {
            chain.push(carrier.clone())?;
        }
        let lvl = chain.level(2);
        let base = carrier.base().clone();
        let counit_left = SparseMatrix::new(
            carrier.field(),
            carrier.dim(),
            (0..lvl.dim())
                .map(|t| {
                    let (x, y) = lvl.rep(t);
                    carrier.act_left(counit.col(x), &sparse::unit(y, carrier.field()))
                })
                .collect(),
        );
        let counit_right = SparseMatrix::new(
            carrier.field(),
            carrier.dim(),
            (0..lvl.dim())
                .map(|t| {
                    let (x, y) = lvl.rep(t);
                    carrier.act_right(&sparse::unit(x, carrier.field()), counit.col(y))
                })
                .collect(),
        );
        let _ = base;
        Ok(Coring {
            carrier,
            chain,
            comult,
            counit,
            counit_left,
            counit_right,
        })
    }

    pub fn base(&self) -> &Arc<Algebra> {
        self.carrier.base()
    }
    pub fn carrier(&self) -> &Arc<Bimodule> {
        &self.carrier
    }
    pub fn field(&self) -> Field {
        self.carrier.field()
    }
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// `C ⊗_B C`.
    pub fn square(&self) -> &TensorOverB {
        self.chain.level(2)
    }

    /// `C`, `C ⊗ C`, `(C ⊗ C) ⊗ C`.
    pub fn chain(&self) -> &TensorChain {
        &self.chain
    }

    /// `Δ(e_c)` in the basis of `C ⊗_B C`.
    pub fn comult(&self, c: usize) -> &SparseVec {
        self.comult.col(c)
    }

    pub fn comult_sparse(&self) -> &SparseMatrix {
        &self.comult
    }

    /// `ε(e_c)` in the base.
    pub fn counit(&self, c: usize) -> &SparseVec {
        self.counit.col(c)
    }

    pub fn counit_sparse(&self) -> &SparseMatrix {
        &self.counit
    }

    pub fn comult_matrix(&self) -> Matrix {
        self.comult.to_dense()
    }

    pub fn counit_matrix(&self) -> Matrix {
        self.counit.to_dense()
    }

    /// `C ⊗_B C → C`, `x ⊗ y ↦ ε(x)·y`.
    pub fn counit_left_identification(&self) -> &SparseMatrix {
        &self.counit_left
    }

    /// `C ⊗_B C → C`, `x ⊗ y ↦ x·ε(y)`.
    pub fn counit_right_identification(&self) -> &SparseMatrix {
        &self.counit_right
    }

    /// `Δ(e_c)` as pure tensors `(x, y, coefficient)`.
    pub fn comult_pure(&self, c: usize) -> Vec<(usize, usize, Scalar)> {
        self.comult(c)
            .iter()
            .map(|(t, s)| {
                let (x, y) = self.square().rep(*t as usize);
                (x, y, s.clone())
            })
            .collect()
    }
}

/// Coassociativity, counit laws and bilinearity of `Δ` and `ε`.
pub fn validate_coring(c: &Coring) -> Result<()> {
    let field = c.field();
    let reg = Arc::new(regular_bimodule(c.base().clone()));
    BimoduleMap::from_sparse(c.carrier.clone(), c.square().result().clone(), c.comult.clone())
        .map_err(|_| violation("coring", "comultiplication bilinearity", vec![]))?;
    BimoduleMap::from_sparse(c.carrier.clone(), reg, c.counit.clone())
        .map_err(|_| violation("coring", "counit bilinearity", vec![]))?;
    let lvl2 = c.square();
    let lvl3 = c.chain.level(3);
    for x in 0..c.dim() {
        let e = sparse::unit(x, field);
        let d = c.comult(x);
        if c.counit_left.apply(d) != e || c.counit_right.apply(d) != e {
            return Err(violation("coring", "counit", vec![x]));
        }
        let mut lhs = Accumulator::new();
        let mut rhs = Accumulator::new();
        for (t, s) in d {
            let (p, q) = lvl2.rep(*t as usize);
            lhs.add_scaled(s, &lvl3.project(c.comult(p), &sparse::unit(q, field)));
            for (u, s2) in c.comult(q) {
                let (a, b) = lvl2.rep(*u as usize);
                let v = lvl3.project(lvl2.project_pair(p, a), &sparse::unit(b, field));
                rhs.add_scaled(&(s * s2), &v);
            }
        }
        if lhs.finish() != rhs.finish() {
            return Err(violation("coring", "coassociativity", vec![x]));
        }
    }
    Ok(())
}

/// `C = B` with `Δ(b) = 1 ⊗ b` and `ε = id`.
pub fn trivial_coring(b: Arc<Algebra>) -> Coring {
    let field = b.field();
    let reg = Arc::new(regular_bimodule(b.clone()));
    let n = b.dim();
    let delta: Vec<SparseVec> = (0..n)
        .map(|x| b.unit().iter().map(|(u, s)| (*u * n as u32 + x as u32, s.clone())).collect())
        .collect();
    let counit: Vec<SparseVec> = (0..n).map(|x| sparse::unit(x, field)).collect();
    Coring::new(reg, &delta, &counit).expect("trivial coring validates")
}

/// Two-sided comodule over a coring.
#[derive(Clone, Debug)]
pub struct Bicomodule {
    coring: Arc<Coring>,
    carrier: Arc<Bimodule>,
    cm: TensorOverB,
    mc: TensorOverB,
    lambda: SparseMatrix,
    rho: SparseMatrix,
}

impl Bicomodule {
    /// `lambda[m]` uses flat indices `c*dim(M) + m'` of `C ⊗_k M`, `rho[m]`
    /// flat indices `m'*dim(C) + c` of `M ⊗_k C`.
    pub fn new(coring: Arc<Coring>, carrier: Arc<Bimodule>, lambda: &[SparseVec], rho: &[SparseVec]) -> Result<Bicomodule> {
        if carrier.base() != coring.base() {
            return Err(Error::Incompatible("bicomodule over a different base".into()));
        }
        if lambda.len() != carrier.dim() || rho.len() != carrier.dim() {
            return Err(Error::Incompatible("one coaction value per basis vector".into()));
        }
        let cm = tensor_over_b(coring.carrier.clone(), carrier.clone())?;
        let mc = tensor_over_b(carrier.clone(), coring.carrier.clone())?;
        let lambda = project_pure(&cm, lambda);
        let rho = project_pure(&mc, rho);
        let b = Bicomodule {
            coring,
            carrier,
            cm,
            mc,
            lambda,
            rho,
        };
        validate_bicomodule(&b)?;
        Ok(b)
    }

    /// `C` over itself with `λ = ρ = Δ`.
    pub fn regular(coring: Arc<Coring>) -> Bicomodule {
        let sq = coring.square().clone();
        Bicomodule {
            carrier: coring.carrier.clone(),
            lambda: coring.comult.clone(),
            rho: coring.comult.clone(),
            cm: sq.clone(),
            mc: sq,
            coring,
        }
    }

    pub fn coring(&self) -> &Arc<Coring> {
        &self.coring
    }
    pub fn carrier(&self) -> &Arc<Bimodule> {
        &self.carrier
    }
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }
    /// `C ⊗_B M`.
    pub fn cm(&self) -> &TensorOverB {
        &self.cm
    }
    /// `M ⊗_B C`.
    pub fn mc(&self) -> &TensorOverB {
        &self.mc
    }
    pub fn lambda(&self, m: usize) -> &SparseVec {
        self.lambda.col(m)
    }
    pub fn rho(&self, m: usize) -> &SparseVec {
        self.rho.col(m)
    }
    pub fn lambda_sparse(&self) -> &SparseMatrix {
        &self.lambda
    }
    pub fn rho_sparse(&self) -> &SparseMatrix {
        &self.rho
    }
}

/// The five bicomodule diagrams and bilinearity of both coactions.
pub fn validate_bicomodule(b: &Bicomodule) -> Result<()> {
    let c = &b.coring;
    let field = c.field();
    let e = |i: usize| sparse::unit(i, field);
    BimoduleMap::from_sparse(b.carrier.clone(), b.cm.result().clone(), b.lambda.clone())
        .map_err(|_| violation("bicomodule", "left coaction bilinearity", vec![]))?;
    BimoduleMap::from_sparse(b.carrier.clone(), b.mc.result().clone(), b.rho.clone())
        .map_err(|_| violation("bicomodule", "right coaction bilinearity", vec![]))?;
    let m = &b.carrier;
    let sq = c.square();
    let mcc = tensor_over_b(b.mc.result().clone(), c.carrier.clone())?;
    let ccm = tensor_over_b(sq.result().clone(), m.clone())?;
    let cmc = tensor_over_b(b.cm.result().clone(), c.carrier.clone())?;
    for x in 0..m.dim() {
        let (lam, rho) = (b.lambda(x), b.rho(x));
        let mut acc = Accumulator::new();
        for (t, s) in rho {
            let (mp, cc) = b.mc.rep(*t as usize);
            acc.add_scaled(s, &m.act_right(&e(mp), c.counit(cc)));
        }
        if acc.finish() != e(x) {
            return Err(violation("bicomodule", "right counit", vec![x]));
        }
        let mut acc = Accumulator::new();
        for (t, s) in lam {
            let (cc, mp) = b.cm.rep(*t as usize);
            acc.add_scaled(s, &m.act_left(c.counit(cc), &e(mp)));
        }
        if acc.finish() != e(x) {
            return Err(violation("bicomodule", "left counit", vec![x]));
        }
        let (mut l, mut r) = (Accumulator::new(), Accumulator::new());
        for (t, s) in rho {
            let (mp, cc) = b.mc.rep(*t as usize);
            l.add_scaled(s, &mcc.project(b.rho(mp), &e(cc)));
            for (u, s2) in c.comult(cc) {
                let (p, q) = sq.rep(*u as usize);
                r.add_scaled(&(s * s2), &mcc.project(b.mc.project_pair(mp, p), &e(q)));
            }
        }
        if l.finish() != r.finish() {
            return Err(violation("bicomodule", "right coassociativity", vec![x]));
        }
        let (mut l, mut r) = (Accumulator::new(), Accumulator::new());
        for (t, s) in lam {
            let (cc, mp) = b.cm.rep(*t as usize);
            l.add_scaled(s, &ccm.project(c.comult(cc), &e(mp)));
            for (u, s2) in b.lambda(mp) {
                let (p, q) = b.cm.rep(*u as usize);
                r.add_scaled(&(s * s2), &ccm.project(sq.project_pair(cc, p), &e(q)));
            }
        }
        if l.finish() != r.finish() {
            return Err(violation("bicomodule", "left coassociativity", vec![x]));
        }
        let (mut l, mut r) = (Accumulator::new(), Accumulator::new());
        for (t, s) in rho {
            let (mp, cc) = b.mc.rep(*t as usize);
            l.add_scaled(s, &cmc.project(b.lambda(mp), &e(cc)));
        }
        for (t, s) in lam {
            let (cc, mp) = b.cm.rep(*t as usize);
            for (u, s2) in b.rho(mp) {
                let (p, q) = b.mc.rep(*u as usize);
                r.add_scaled(&(s * s2), &cmc.project(b.cm.project_pair(cc, p), &e(q)));
            }
        }
        if l.finish() != r.finish() {
            return Err(violation("bicomodule", "compatibility", vec![x]));
        }
    }
    Ok(())
}

/// Kernel of a bicomodule map `f: M → N` whose kernel is split by a bimodule
/// retraction; the restricted coactions are computed and validated.
pub fn split_kernel(m: &Bicomodule, f: &SparseMatrix) -> Result<(Bicomodule, SparseMatrix)> {
    let field = m.carrier.field();
    let dm = m.dim();
    if f.ncols() != dm {
        return Err(Error::Incompatible("map does not start at the bicomodule".into()));
    }
    let rows = f.rows();
    let ker = sparse::kernel_of_rows(field, dm, rows);
    let k = ker.dim();
    let incl = SparseMatrix::new(field, dm, ker.vectors.clone());
    let coords = |v: &SparseVec| -> Result<SparseVec> {
        ker.coordinates(v)
            .map(|c| sparse::from_dense(&c))
            .ok_or_else(|| violation("kernel", "sub-bimodule", vec![]))
    };
    let base = m.carrier.base().clone();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..base.dim() {
        let l: Result<Vec<_>> = ker.vectors.iter().map(|v| coords(&m.carrier.left(i).apply(v))).collect();
        let r: Result<Vec<_>> = ker.vectors.iter().map(|v| coords(&m.carrier.right(i).apply(v))).collect();
        left.push(SparseMatrix::new(field, k, l?));
        right.push(SparseMatrix::new(field, k, r?));
    }
    let kmod = Arc::new(Bimodule::from_sparse(base, left, right)?);
    // a bimodule retraction r with r ∘ incl = id
    let frame = crate::bimodule::frame::HomFrame::new(m.carrier.clone(), kmod.clone());
    let space = frame.space();
    let mut eqs = Vec::new();
    let images: Vec<SparseMatrix> = space.vectors.iter().map(|v| frame.to_matrix(v).compose(&incl)).collect();
    for col in 0..k {
        for row in 0..k {
            let mut r = Vec::new();
            for (s, img) in images.iter().enumerate() {
                if let Some(v) = sparse::get(img.col(col), row as u32) {
                    r.push((s as u32, v.clone()));
                }
            }
            let rhs = if row == col { field.one() } else { field.zero() };
            eqs.push((r, rhs));
        }
    }
    let sol = sparse::solve_rows(field, space.dim(), eqs)
        .ok_or_else(|| violation("kernel", "bimodule splitting", vec![]))?;
    let retraction = frame.to_matrix(&space.combine(&sol));
    let c = &m.coring;
    let ck = tensor_over_b(c.carrier.clone(), kmod.clone())?;
    let kc = tensor_over_b(kmod.clone(), c.carrier.clone())?;
    let dk = kmod.dim() as u32;
    let dc = c.dim() as u32;
    let mut lambda = Vec::new();
    let mut rho = Vec::new();
    for v in &ker.vectors {
        let lam = m.lambda_sparse().apply(v);
        let mut acc = Accumulator::new();
        for (t, s) in &lam {
            let (cc, mp) = m.cm.rep(*t as usize);
            for (kk, s2) in retraction.col(mp) {
                acc.add(cc as u32 * dk + *kk, s * s2);
            }
        }
        lambda.push(acc.finish());
        let rh = m.rho_sparse().apply(v);
        let mut acc = Accumulator::new();
        for (t, s) in &rh {
            let (mp, cc) = m.mc.rep(*t as usize);
            for (kk, s2) in retraction.col(mp) {
                acc.add(*kk * dc + cc as u32, s * s2);
            }
        }
        rho.push(acc.finish());
    }
    // the coactions of kernel vectors must already land in C ⊗ K and K ⊗ C
    let _ = (&ck, &kc);
    for (idx, v) in ker.vectors.iter().enumerate() {
        let mut back = Accumulator::new();
        for (flat, s) in &lambda[idx] {
            let (cc, kk) = (*flat / dk, *flat % dk);
            back.add_scaled(s, &m.cm.project(&sparse::unit(cc as usize, field), &ker.vectors[kk as usize]));
        }
        if back.finish() != m.lambda_sparse().apply(v) {
            return Err(violation("kernel", "left coaction closed", vec![idx]));
        }
        let mut back = Accumulator::new();
        for (flat, s) in &rho[idx] {
            let (kk, cc) = (*flat / dc, *flat % dc);
            back.add_scaled(s, &m.mc.project(&ker.vectors[kk as usize], &sparse::unit(cc as usize, field)));
        }
        if back.finish() != m.rho_sparse().apply(v) {
            return Err(violation("kernel", "right coaction closed", vec![idx]));
        }
    }
    let kb = Bicomodule::new(m.coring.clone(), kmod, &lambda, &rho)?;
    Ok((kb, incl))
}

/// Which candidate embedding of the base into the right algebra validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConventionFlag {
    /// `"b·ε"` or `"ε·b"`.
    pub candidate: String,
    /// `"B"` or `"B^op"`.
    pub source: String,
    /// Both candidates are the same linear map.
    pub candidates_agree: bool,
    /// Every (candidate, source) pair that is an algebra map into R.
    pub validated: Vec<String>,
}

impl ConventionFlag {
    pub fn label(&self) -> String {
        format!("{} -> R via {}", self.source, self.candidate)
    }
}

/// `L = Hom_{B-}(C, B)` with `(φ·χ)(c) = χ(c₁·φ(c₂))`, its opposite `R`, and
/// the embedding of the base.
#[derive(Clone, Debug)]
pub struct RightAlgebraResult {
    pub dual: Dual,
    pub left_dual_algebra: Arc<Algebra>,
    pub right_algebra: Arc<Algebra>,
    pub base_embedding: AlgebraMap,
    /// `b ↦ ε·b` as an extension `B → L`, when it is multiplicative.
    pub left_extension: Option<AlgebraExtension>,
    pub convention_flag: ConventionFlag,
}

/// `φ·χ` in `L` for dual coordinates.
pub(crate) fn l_product(c: &Coring, dual: &Dual, phi: &[(u32, Scalar)], chi: &[(u32, Scalar)]) -> Option<SparseVec> {
    let field = c.field();
    let values: Vec<SparseVec> = (0..c.dim())
        .map(|x| {
            let mut acc = Accumulator::new();
            for (t, s) in c.comult(x) {
                let (p, q) = c.square().rep(*t as usize);
                let b = dual.eval(phi, &sparse::unit(q, field));
                let y = c.carrier.act_right(&sparse::unit(p, field), &b);
                acc.add_scaled(s, &dual.eval(chi, &y));
            }
            acc.finish()
        })
        .collect();
    dual.coordinates(&values)
}

pub fn right_algebra(c: &Coring) -> Result<RightAlgebraResult> {
    let field = c.field();
    let dual = left_dual(c.carrier.clone());
    let d = dual.dim();
    let mut products = Vec::with_capacity(d * d);
    for p in 0..d {
        for q in 0..d {
            let v = l_product(c, &dual, &sparse::unit(p, field), &sparse::unit(q, field))
                .ok_or_else(|| Error::IsoCheckFailed("product leaves the left dual".into()))?;
            products.push(v);
        }
    }
    let eps_values: Vec<SparseVec> = (0..c.dim()).map(|x| c.counit(x).clone()).collect();
    let unit = dual
        .coordinates(&eps_values)
        .ok_or_else(|| Error::IsoCheckFailed("counit is not left linear".into()))?;
    let l = Arc::new(Algebra::from_products(field, d, products, unit.clone())?);
    let r = Arc::new(opposite(&l));
    let b = c.base().clone();
    let bop = Arc::new(opposite(&b));
    let nb = b.dim();
    let left_cand: Vec<SparseVec> = (0..nb)
        .map(|i| dual.module().act_left(&sparse::unit(i, field), &unit))
        .collect();
    let right_cand: Vec<SparseVec> = (0..nb)
        .map(|i| dual.module().act_right(&unit, &sparse::unit(i, field)))
        .collect();
    let agree = left_cand == right_cand;
    let to_dense = |cols: &[SparseVec]| SparseMatrix::new(field, d, cols.to_vec()).to_dense();
    let mut validated = Vec::new();
    let mut chosen: Option<(AlgebraMap, String, String)> = None;
    for (cand, name) in [(&left_cand, "b·ε"), (&right_cand, "ε·b")] {
        for (src, sname) in [(&b, "B"), (&bop, "B^op")] {
            if let Ok(map) = AlgebraMap::new(src.clone(), r.clone(), to_dense(cand)) {
                validated.push(format!("{sname} via {name}"));
                if chosen.is_none() {
                    chosen = Some((map, name.to_string(), sname.to_string()));
                }
            }
        }
    }
    let (base_embedding, candidate, source) = chosen.ok_or(Error::NoValidEmbedding)?;
    // b ↦ ε·b is multiplicative into L exactly when the B^op source validates for R
    let left_extension = AlgebraExtension::new(b.clone(), l.clone(), to_dense(&right_cand)).ok();
    Ok(RightAlgebraResult {
        dual,
        left_dual_algebra: l,
        right_algebra: r,
        base_embedding,
        left_extension,
        convention_flag: ConventionFlag {
            candidate,
            source,
            candidates_agree: agree,
            validated,
        },
    })
}

/// Result of [`dual_coring`]: the coring together with the data used to build it.
#[derive(Clone, Debug)]
pub struct DualCoring {
    pub coring: Arc<Coring>,
    /// `Hom_{-B}(A, B)`, the carrier.
    pub dual: Dual,
    pub extension: AlgebraExtension,
}

impl DualCoring {
    /// `a ↦ (f ↦ f(a))`, from `A` into the left dual of the coring.
    pub fn evaluation_values(&self, a: &[(u32, Scalar)]) -> Vec<SparseVec> {
        (0..self.dual.dim())
            .map(|k| self.dual.eval(&sparse::unit(k, self.coring.field()), a))
            .collect()
    }
}

/// `C = Hom_{-B}(A, B)` with `Δ(f) = Σ f(a_i ·) ⊗ f_i` over a right dual
/// basis of `A` and `ε(f) = f(1)`.
pub fn dual_coring(ext: &AlgebraExtension) -> Result<DualCoring> {
    let field = ext.field();
    let a_as_b = Arc::new(regular_bimodule(ext.big().clone()).restrict(ext)?);
    let db = dual_basis(a_as_b.clone(), Side::Right)?;
    let dual = right_dual(a_as_b.clone());
    let carrier = dual.module().clone();
    let big = ext.big();
    let n = dual.dim();
    let mut chain = TensorChain::new(carrier.clone());
    chain.push(carrier.clone())?;
    let sq = chain.level(2).clone();
    let mut comult_cols = Vec::with_capacity(n);
    for k in 0..n {
        let phi = sparse::unit(k, field);
        let mut acc = Accumulator::new();
        for (fi, ai) in db.functionals.iter().zip(&db.elements) {
            // y ↦ f(a_i y)
            let values: Vec<SparseVec> = (0..big.dim())
                .map(|y| dual.eval(&phi, &big.mul(ai, &sparse::unit(y, field))))
                .collect();
            let g = dual
                .coordinates(&values)
                .ok_or_else(|| Error::IsoCheckFailed("f(a_i ·) is not right linear".into()))?;
            acc.add_scaled(&field.one(), &sq.project(&g, fi));
        }
        comult_cols.push(acc.finish());
    }
    let comult = SparseMatrix::new(field, sq.dim(), comult_cols);
    let unit_a = big.unit().clone();
    let counit = SparseMatrix::new(
        field,
        ext.sub().dim(),
        (0..n).map(|k| dual.eval(&sparse::unit(k, field), &unit_a)).collect(),
    );
    // Δ(f) pairs with x ⊗ y to f(xy) under (g ⊗ h)(x ⊗ y) = g(h(x)·y)
    for k in 0..n {
        for x in 0..big.dim() {
            for y in 0..big.dim() {
                let ex = sparse::unit(x, field);
                let ey = sparse::unit(y, field);
                let want = dual.eval(&sparse::unit(k, field), &big.mul(&ex, &ey));
                let mut got = Accumulator::new();
                for (t, s) in comult.col(k) {
                    let (g, h) = sq.rep(*t as usize);
                    let hx = dual.eval(&sparse::unit(h, field), &ex);
                    let emb = ext.embed_sparse().apply(&hx);
                    got.add_scaled(s, &dual.eval(&sparse::unit(g, field), &big.mul(&emb, &ey)));
                }
                if got.finish() != want {
                    return Err(Error::IsoCheckFailed("comultiplication does not dualize the product".into()));
                }
            }
        }
    }
    let coring = Coring::assemble(chain, comult, counit)?;
    validate_coring(&coring)?;
    Ok(DualCoring {
        coring: Arc::new(coring),
        dual,
        extension: ext.clone(),
    })
}

/// The evaluation map `A → L`, `a ↦ (f ↦ f(a))`, as a matrix (columns are images).
pub fn sweedler_evaluation(dc: &DualCoring, ra: &RightAlgebraResult) -> Result<Matrix> {
    let field = dc.coring.field();
    let big = dc.extension.big();
    let mut cols = Vec::with_capacity(big.dim());
    for a in 0..big.dim() {
        let values = dc.evaluation_values(&sparse::unit(a, field));
        let c = ra
            .dual
            .coordinates(&values)
            .ok_or_else(|| Error::IsoCheckFailed("evaluation is not left linear".into()))?;
        cols.push(c);
    }
    Ok(SparseMatrix::new(field, ra.dual.dim(), cols).to_dense())
}
