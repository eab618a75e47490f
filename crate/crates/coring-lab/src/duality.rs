//! The operad map `CoEnd(C) → End(L)`, `f ↦ D(f)∘γ`, with `L = Hom_{B-}(C, B)`,
//! and its comparison with the transpose on `End(L^op)`.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{opposite, AlgebraExtension};
use crate::bimodule::{dual_basis, left_dual, BimoduleMap, Dual, Side};
use crate::cochain::{apply_values, cohomology, ComplexOptions};
use crate::coring::{right_algebra, Coring, RightAlgebraResult};
use crate::error::{Error, Result};
use crate::exactlin::sparse::{self, Accumulator, SparseMatrix, SparseVec};
use crate::exactlin::{Matrix, Scalar};
use crate::operadic::{odd, IdentityTally, OperadContext, OperadElement};

/// `D(f): D(Y) → D(X)` for `f: X → Y`, together with both duals.
#[derive(Clone, Debug)]
pub struct DualizedMap {
    /// `D(Y)`.
    pub source: Dual,
    /// `D(X)`.
    pub target: Dual,
    pub map: BimoduleMap,
}

/// Precomposition `ψ ↦ ψ∘f` on left duals.
pub fn dualize_map(f: &BimoduleMap) -> Result<DualizedMap> {
    let field = f.source().field();
    let source = left_dual(f.target().clone());
    let target = left_dual(f.source().clone());
    let mut cols = Vec::with_capacity(source.dim());
    for k in 0..source.dim() {
        let psi = sparse::unit(k, field);
        let values: Vec<SparseVec> = (0..f.source().dim())
            .map(|x| source.eval(&psi, &f.apply(&sparse::unit(x, field))))
            .collect();
        cols.push(
            target
                .coordinates(&values)
                .ok_or_else(|| Error::IsoCheckFailed("ψ∘f is not left linear".into()))?,
        );
    }
    let map = BimoduleMap::from_sparse(
        source.module().clone(),
        target.module().clone(),
        SparseMatrix::new(field, target.dim(), cols),
    )?;
    Ok(DualizedMap { source, target, map })
}

/// `D(C)^{⊗n}` read against `C^{⊗n}`: column `t` holds the left-dual
/// coordinates of `γ^{(n)}` applied to the `t`-th basis tensor.
#[derive(Clone, Debug)]
pub struct IteratedGamma {
    pub arity: usize,
    pub target: Dual,
    pub map: BimoduleMap,
}

impl IteratedGamma {
    pub fn is_invertible(&self) -> bool {
        let m = self.map.matrix();
        m.is_square() && m.inverse().is_some()
    }
}

/// Both operads, `γ^{(n)}` for `n ≤ top`, and the right algebra data.
pub struct DualityContext {
    coring: Arc<Coring>,
    right: RightAlgebraResult,
    extension: AlgebraExtension,
    coend: OperadContext,
    end: OperadContext,
    gammas: Vec<IteratedGamma>,
    left_projective: bool,
    opts: ComplexOptions,
}

impl DualityContext {
    pub fn new(coring: Arc<Coring>, top: usize, opts: &ComplexOptions) -> Result<DualityContext> {
        let right = right_algebra(&coring)?;
        let extension = right.left_extension.clone().ok_or(Error::NoValidEmbedding)?;
        let coend = OperadContext::coendomorphism(coring.clone(), top, opts)?;
        let end = OperadContext::endomorphism(&extension, top, opts)?;
        let left_projective = dual_basis(coring.carrier().clone(), Side::Left).is_ok();
        let mut ctx = DualityContext {
            coring,
            right,
            extension,
            coend,
            end,
            gammas: Vec::new(),
            left_projective,
            opts: opts.clone(),
        };
        for n in 1..=top {
            let g = ctx.iterated_gamma(n)?;
            ctx.gammas.push(g);
        }
        Ok(ctx)
    }

    pub fn coring(&self) -> &Arc<Coring> {
        &self.coring
    }
    pub fn right_algebra(&self) -> &RightAlgebraResult {
        &self.right
    }
    /// `B → L`, the base the `End` side is relative to.
    pub fn extension(&self) -> &AlgebraExtension {
        &self.extension
    }
    pub fn coend(&self) -> &OperadContext {
        &self.coend
    }
    pub fn end(&self) -> &OperadContext {
        &self.end
    }
    /// `γ^{(n)}` for `1 ≤ n ≤ top`; `γ^{(0)}` is evaluation at `1`.
    pub fn gammas(&self) -> &[IteratedGamma] {
        &self.gammas
    }
    pub fn is_left_projective(&self) -> bool {
        self.left_projective
    }
    pub fn top(&self) -> usize {
        self.coend.complex().top()
    }

    /// Makes arity-`n` elements available on both sides.
    pub fn ensure_arity(&mut self, n: usize) -> Result<()> {
        self.coend.ensure_arity(n)?;
        self.end.ensure_arity(n)
    }

    /// `f_n(c_1·f_{n−1}(c_2 ⋯ f_1(c_n)))` for basis functionals and basis elements.
    fn gamma_eval(&self, phis: &[u32], cs: &[u32]) -> SparseVec {
        let field = self.coring.field();
        let dual = &self.right.dual;
        let n = phis.len();
        let mut b = dual.eval(&sparse::unit(phis[0] as usize, field), &sparse::unit(cs[n - 1] as usize, field));
        for k in 1..n {
            if b.is_empty() {
                return b;
            }
            let x = self.coring.carrier().act_right(&sparse::unit(cs[n - 1 - k] as usize, field), &b);
            b = dual.eval(&sparse::unit(phis[k] as usize, field), &x);
        }
        b
    }

    fn iterated_gamma(&mut self, n: usize) -> Result<IteratedGamma> {
        self.ensure_arity(n)?;
        let field = self.coring.field();
        let cp = self.coend.powers();
        let lp = self.end.powers();
        let target = left_dual(cp.object(n).clone());
        let mut cols = Vec::with_capacity(lp.dim(n));
        for t in 0..lp.dim(n) {
            let phis = lp.rep(n, t);
            let values: Vec<SparseVec> = (0..cp.dim(n)).map(|u| self.gamma_eval(phis, cp.rep(n, u))).collect();
            cols.push(
                target
                    .coordinates(&values)
                    .ok_or_else(|| Error::IsoCheckFailed(format!("γ^({n}) value is not left linear")))?,
            );
        }
        let map = BimoduleMap::from_sparse(
            lp.object(n).clone(),
            target.module().clone(),
            SparseMatrix::new(field, target.dim(), cols),
        )?;
        Ok(IteratedGamma { arity: n, target, map })
    }

    /// `rop(f) = D(f)∘γ^{(n)}`, an arity-`n` element of `End(L)`.
    pub fn rop_map(&self, f: &OperadElement) -> Result<OperadElement> {
        let field = self.coring.field();
        let n = f.arity;
        let dual = &self.right.dual;
        let base = self.coring.base();
        let cdim = self.coring.dim();
        let lp = self.end.powers();
        if n > lp.available() || n > self.coend.powers().available() {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                max: lp.available().min(self.coend.powers().available()),
            });
        }
        let to_l = |values: Vec<SparseVec>| {
            dual.coordinates(&values)
                .ok_or_else(|| Error::IsoCheckFailed("rop value is not left linear".into()))
        };
        let mut out = Vec::with_capacity(lp.dim(n));
        if n == 0 {
            // b ↦ (c ↦ f(c)·b)
            for i in 0..base.dim() {
                let bi = sparse::unit(i, field);
                out.push(to_l((0..cdim).map(|c| base.mul(&f.values[c], &bi)).collect())?);
            }
        } else {
            let cp = self.coend.powers();
            for t in 0..lp.dim(n) {
                let phis = lp.rep(n, t);
                let values: Vec<SparseVec> = f
                    .values
                    .iter()
                    .map(|fc| {
                        let mut acc = Accumulator::new();
                        for (u, s) in fc {
                            acc.add_scaled(s, &self.gamma_eval(phis, cp.rep(n, *u as usize)));
                        }
                        acc.finish()
                    })
                    .collect();
                out.push(to_l(values)?);
            }
        }
        Ok(OperadElement { arity: n, values: out })
    }

    /// Matrix of `rop` from the Cartier cochain space to the Hochschild one in degree `n`.
    pub fn rop_matrix(&self, n: usize) -> Result<Matrix> {
        let field = self.coring.field();
        let (cx, hx) = (self.coend.complex(), self.end.complex());
        let mut cols = Vec::with_capacity(cx.space_dim(n));
        for k in 0..cx.space_dim(n) {
            let mut e = vec![field.zero(); cx.space_dim(n)];
            e[k] = field.one();
            let r = self.rop_map(&self.coend.from_coords(n, &e))?;
            cols.push(
                self.end
                    .coords(&r)
                    .ok_or_else(|| Error::IsoCheckFailed(format!("rop leaves the degree-{n} cochain space")))?,
            );
        }
        Ok(Matrix::from_columns(field, hx.space_dim(n), &cols))
    }
}

/// Differential comparison in one degree, on every basis cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CochainMapAgreement {
    pub degree: usize,
    /// `rop([Δ, f]) = [μ, rop f]`.
    pub b_infinity: bool,
    /// `rop(d_Ca f) = d_Hoch(rop f)`.
    pub literal: bool,
    /// `rop(d_Ca f) = (−1)^{|f|} d_Hoch(rop f)`.
    pub degree_signed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictMorphismReport {
    pub partial_compositions: IdentityTally,
    pub total_compositions: IdentityTally,
    pub braces: IdentityTally,
    pub cup: IdentityTally,
    pub multiplication: bool,
    pub units: bool,
    pub differentials: Vec<CochainMapAgreement>,
}

impl StrictMorphismReport {
    /// Strictness for the B∞ structures, whose differential is `[m, −]` on both sides.
    pub fn ok(&self) -> bool {
        self.partial_compositions.ok()
            && self.total_compositions.ok()
            && self.braces.ok()
            && self.cup.ok()
            && self.multiplication
            && self.units
            && self.differentials.iter().all(|a| a.b_infinity)
    }

    pub fn literal_cochain_map(&self) -> bool {
        self.differentials.iter().all(|a| a.literal)
    }
}

/// Sampled strictness checks, arguments of arity `≤ max_arity`; instances whose
/// result power exceeds `max_result_dim` are skipped and counted.
pub fn verify_strict_morphism<R: Rng>(
    ctx: &mut DualityContext,
    max_arity: usize,
    samples: usize,
    max_result_dim: usize,
    rng: &mut R,
) -> Result<StrictMorphismReport> {
    let top = ctx.top().min(max_arity);
    let field = ctx.coring.field();
    loop {
        let have = ctx.end.powers().available().min(ctx.coend.powers().available());
        if have >= 2 * top + 1 {
            break;
        }
        let next = ctx.end.powers().dim(have) * ctx.end.powers().factor().dim();
        if next > max_result_dim {
            break;
        }
        ctx.ensure_arity(have + 1)?;
    }
    let ctx = &*ctx;
    let fits = |r: usize| ctx.end.power_dim(r).map_or(false, |d| d <= max_result_dim) && ctx.coend.power_dim(r).is_some();

    let multiplication = ctx.rop_map(&ctx.coend.multiplication())? == ctx.end.multiplication();
    let units = ctx.rop_map(&ctx.coend.identity())? == ctx.end.identity()
        && ctx.rop_map(&ctx.coend.unit_element())? == ctx.end.unit_element();

    let mut partial_compositions = IdentityTally::new("partial compositions");
    let mut attempts = 0;
    while partial_compositions.passed + partial_compositions.failed < samples && attempts < samples * 40 {
        attempts += 1;
        let f = ctx.coend.sample(rng.gen_range(1..=top.max(1)), rng);
        let g = ctx.coend.sample(rng.gen_range(0..=top), rng);
        if !fits(f.arity + g.arity - 1) {
            partial_compositions.skipped += 1;
            continue;
        }
        let i = rng.gen_range(0..f.arity);
        let lhs = ctx.rop_map(&ctx.coend.partial_compose(&f, i, &g)?)?;
        let rhs = ctx.end.partial_compose(&ctx.rop_map(&f)?, i, &ctx.rop_map(&g)?)?;
        partial_compositions.record(lhs == rhs);
    }

    let mut total_compositions = IdentityTally::new("total compositions");
    attempts = 0;
    while total_compositions.passed + total_compositions.failed < samples && attempts < samples * 40 {
        attempts += 1;
        let f = ctx.coend.sample(rng.gen_range(1..=top.clamp(1, 2)), rng);
        let gs: Vec<OperadElement> = (0..f.arity).map(|_| ctx.coend.sample(rng.gen_range(0..=top.min(2)), rng)).collect();
        let r: usize = gs.iter().map(|g| g.arity).sum();
        if !fits(r.max(f.arity + 1)) {
            total_compositions.skipped += 1;
            continue;
        }
        let lhs = ctx.rop_map(&ctx.coend.total_compose(&f, &gs)?)?;
        let rg = gs.iter().map(|g| ctx.rop_map(g)).collect::<Result<Vec<_>>>()?;
        let rhs = ctx.end.total_compose(&ctx.rop_map(&f)?, &rg)?;
        total_compositions.record(lhs == rhs);
    }

    let mut braces = IdentityTally::new("braces");
    attempts = 0;
    while braces.passed + braces.failed < samples && attempts < samples * 40 {
        attempts += 1;
        let f = ctx.coend.sample(rng.gen_range(1..=top.max(1)), rng);
        let p = rng.gen_range(1..=f.arity.min(2));
        let gs: Vec<OperadElement> = (0..p).map(|_| ctx.coend.sample(rng.gen_range(0..=top), rng)).collect();
        let r = f.arity + gs.iter().map(|g| g.arity).sum::<usize>() - p;
        if !fits(r.max(f.arity)) {
            braces.skipped += 1;
            continue;
        }
        let lhs = ctx.rop_map(&ctx.coend.brace(&f, &gs)?)?;
        let rg = gs.iter().map(|g| ctx.rop_map(g)).collect::<Result<Vec<_>>>()?;
        let rhs = ctx.end.brace(&ctx.rop_map(&f)?, &rg)?;
        braces.record(lhs == rhs);
    }

    let mut cup = IdentityTally::new("cup");
    attempts = 0;
    while cup.passed + cup.failed < samples && attempts < samples * 40 {
        attempts += 1;
        let f = ctx.coend.sample(rng.gen_range(0..=top), rng);
        let g = ctx.coend.sample(rng.gen_range(0..=top), rng);
        if !fits((f.arity + g.arity).max(2)) {
            cup.skipped += 1;
            continue;
        }
        let lhs = ctx.rop_map(&ctx.coend.m2(&f, &g)?)?;
        let rhs = ctx.end.m2(&ctx.rop_map(&f)?, &ctx.rop_map(&g)?)?;
        cup.record(lhs == rhs);
    }

    let mut differentials = Vec::new();
    for n in 0..ctx.top() {
        let dim = ctx.coend.complex().space_dim(n);
        let mut a = CochainMapAgreement {
            degree: n,
            b_infinity: true,
            literal: true,
            degree_signed: true,
        };
        for k in 0..dim {
            let mut e = vec![field.zero(); dim];
            e[k] = field.one();
            let f = ctx.coend.from_coords(n, &e);
            let rf = ctx.rop_map(&f)?;
            a.b_infinity &= ctx.rop_map(&ctx.coend.m1(&f)?)? == ctx.end.m1(&rf)?;
            let lhs = ctx.rop_map(&ctx.coend.complex_differential(&f)?)?;
            let dh = ctx.end.complex_differential(&rf)?;
            a.degree_signed &= lhs == dh.signed(odd(f.degree()));
            a.literal &= lhs == dh;
        }
        differentials.push(a);
    }

    Ok(StrictMorphismReport {
        partial_compositions,
        total_compositions,
        braces,
        cup,
        multiplication,
        units,
        differentials,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeIsomorphism {
    pub degree: usize,
    pub cartier_dim: usize,
    pub hochschild_dim: usize,
    pub invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainIsoReport {
    /// False when the coring is not left finitely generated projective; nothing else is filled.
    pub applicable: bool,
    pub gamma_invertible: Vec<bool>,
    pub degrees: Vec<DegreeIsomorphism>,
    pub cartier_cohomology: Vec<usize>,
    pub hochschild_cohomology: Vec<usize>,
}

impl CochainIsoReport {
    pub fn ok(&self) -> bool {
        self.applicable
            && self.gamma_invertible.iter().all(|b| *b)
            && self.degrees.iter().all(|d| d.invertible)
            && self.cartier_cohomology == self.hochschild_cohomology
    }
}

/// `rop` on cochain spaces in degrees `≤ max_degree`, and cohomology on both sides below the top.
pub fn verify_cochain_isomorphism(ctx: &DualityContext, max_degree: usize) -> Result<CochainIsoReport> {
    if !ctx.left_projective {
        return Ok(CochainIsoReport {
            applicable: false,
            gamma_invertible: Vec::new(),
            degrees: Vec::new(),
            cartier_cohomology: Vec::new(),
            hochschild_cohomology: Vec::new(),
        });
    }
    let top = ctx.top();
    let last = max_degree.min(top);
    let gamma_invertible = ctx.gammas.iter().take(last).map(|g| g.is_invertible()).collect();
    let mut degrees = Vec::new();
    for n in 0..=last {
        let m = ctx.rop_matrix(n)?;
        degrees.push(DegreeIsomorphism {
            degree: n,
            cartier_dim: m.cols(),
            hochschild_dim: m.rows(),
            invertible: m.is_square() && m.inverse().is_some(),
        });
    }
    let mut cartier_cohomology = Vec::new();
    let mut hochschild_cohomology = Vec::new();
    for n in 0..=last.min(top.saturating_sub(1)) {
        cartier_cohomology.push(cohomology(ctx.coend.complex(), n)?.0);
        hochschild_cohomology.push(cohomology(ctx.end.complex(), n)?.0);
    }
    Ok(CochainIsoReport {
        applicable: true,
        gamma_invertible,
        degrees,
        cartier_cohomology,
        hochschild_cohomology,
    })
}

/// `End(R)` relative to `B^op`, `R = L^op`, and the transpose
/// `T(f)(a_1⊗…⊗a_n) = (−1)^{ε_n} f(a_n⊗…⊗a_1)`, `ε_n = (n+1)(n−2)/2`.
pub struct TransposeContext {
    pub right: OperadContext,
}

impl TransposeContext {
    pub fn new(ctx: &DualityContext) -> Result<TransposeContext> {
        let b = ctx.extension.sub().clone();
        let bop = Arc::new(opposite(&b));
        let r = ctx.right.right_algebra.clone();
        let ext = AlgebraExtension::new(bop, r, ctx.extension.embed().clone())?;
        let right = OperadContext::endomorphism(&ext, ctx.top(), &ctx.opts)?;
        Ok(TransposeContext { right })
    }

    pub fn sign_exponent(n: usize) -> i64 {
        let n = n as i64;
        (n + 1) * (n - 2) / 2
    }

    pub fn transpose(&self, left: &OperadContext, f: &OperadElement) -> Result<OperadElement> {
        let n = f.arity;
        let neg = odd(Self::sign_exponent(n));
        let rp = self.right.powers();
        let lp = left.powers();
        if n > rp.available() || n > lp.available() {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                max: rp.available().min(lp.available()),
            });
        }
        let values = if n == 0 {
            f.values.clone()
        } else {
            let mut rev = Vec::with_capacity(n);
            (0..rp.dim(n))
                .map(|t| {
                    rev.clear();
                    rev.extend(rp.rep(n, t).iter().rev().copied());
                    apply_values(&f.values, &lp.project(&rev))
                })
                .collect()
        };
        Ok(OperadElement { arity: n, values }.signed(neg))
    }
}

/// `s` with `T∘x = s·y∘T` holding on every instance, when one sign fits all.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniformSign {
    Plus,
    Minus,
    /// Both sides vanished on every instance.
    Vacuous,
    Neither,
}

impl UniformSign {
    fn merge(self, plus: bool, minus: bool) -> UniformSign {
        use UniformSign::*;
        let here = match (plus, minus) {
            (true, true) => Vacuous,
            (true, false) => Plus,
            (false, true) => Minus,
            (false, false) => Neither,
        };
        match (self, here) {
            (Neither, _) | (_, Neither) => Neither,
            (Vacuous, x) | (x, Vacuous) => x,
            (x, y) if x == y => x,
            _ => Neither,
        }
    }
    pub fn is_uniform(self) -> bool {
        self != UniformSign::Neither
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GerstenhaberReport {
    pub cartier_cohomology: Vec<usize>,
    /// `rop(f ⌣ g) = rop f ⌣ rop g` on representative pairs.
    pub cup: IdentityTally,
    /// `rop[f, g] ≡ [rop f, rop g]` modulo coboundaries.
    pub bracket: IdentityTally,
    /// `T` is invertible on each cochain space.
    pub transpose_invertible: Vec<bool>,
    /// `T∘m1 = s·m1∘T`; the transpose structure has `m1^tr = −m1`.
    pub transpose_m1: UniformSign,
    /// `T(a{b_1..b_p}) = s·(Ta){Tb_1..Tb_p}^tr` on samples.
    pub transpose_braces: UniformSign,
    /// `T m2(a, b) = s·m2^tr(Ta, Tb)` on samples.
    pub transpose_m2: UniformSign,
    /// `T[x, y] ≡ [Tx, Ty]^op = −[Ty, Tx]` on images of representatives.
    pub opposite_bracket: IdentityTally,
    /// Brackets of degree-0 classes vanish and the degree-0 dimensions agree.
    pub degree_zero: bool,
}

impl GerstenhaberReport {
    /// The `rop` correspondences, plus `T` being invertible and relating each
    /// operation to its transpose by one sign.
    pub fn ok(&self) -> bool {
        self.cup.ok()
            && self.bracket.ok()
            && self.transpose_invertible.iter().all(|b| *b)
            && self.transpose_m1.is_uniform()
            && self.transpose_braces.is_uniform()
            && self.transpose_m2.is_uniform()
            && self.degree_zero
    }

    /// `T` is a strict B∞ map onto the transpose structure with no sign corrections.
    pub fn transpose_strict(&self) -> bool {
        use UniformSign::*;
        matches!(self.transpose_m1, Minus | Vacuous)
            && matches!(self.transpose_braces, Plus | Vacuous)
            && matches!(self.transpose_m2, Plus | Vacuous)
    }
}

fn equal_mod_coboundaries(ctx: &OperadContext, x: &OperadElement, y: &OperadElement) -> Result<bool> {
    let n = x.arity;
    let cx = ctx.coords(x).ok_or_else(|| Error::IsoCheckFailed("value outside the cochain space".into()))?;
    let cy = ctx.coords(y).ok_or_else(|| Error::IsoCheckFailed("value outside the cochain space".into()))?;
    let diff: Vec<Scalar> = cx.iter().zip(&cy).map(|(a, b)| a.clone() - b.clone()).collect();
    Ok(ctx.complex().coboundary_preimage(n, &diff).is_some())
}

/// Cup and bracket of Cartier representatives against their images under `rop`,
/// and the transpose `T` from `End(L)` to `End(R)` relative to `B^op` compared
/// with the transpose B∞ operations on `samples` random cochains.
pub fn verify_gerstenhaber_opposite<R: Rng>(
    ctx: &DualityContext,
    max_degree: usize,
    samples: usize,
    rng: &mut R,
) -> Result<GerstenhaberReport> {
    let field = ctx.coring.field();
    let top = ctx.top();
    let hi = max_degree.min(top.saturating_sub(1));
    let mut tc = TransposeContext::new(ctx)?;
    let mut left = OperadContext::endomorphism(&ctx.extension, top, &ctx.opts)?;
    let reach = 2 * top.min(2);
    left.ensure_arity(reach)?;
    tc.right.ensure_arity(reach)?;
    let right = &tc.right;
    let left = &left;

    let mut reps: Vec<Vec<OperadElement>> = Vec::new();
    let mut cartier_cohomology = Vec::new();
    for n in 0..=hi {
        let (d, r) = cohomology(ctx.coend.complex(), n)?;
        cartier_cohomology.push(d);
        reps.push(r.iter().map(|v| ctx.coend.from_coords(n, v)).collect());
    }

    let mut transpose_invertible = Vec::new();
    let mut transpose_m1 = UniformSign::Vacuous;
    for n in 0..=top {
        let dim = left.complex().space_dim(n);
        let mut cols = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut e = vec![field.zero(); dim];
            e[k] = field.one();
            let f = left.from_coords(n, &e);
            let tf = tc.transpose(left, &f)?;
            cols.push(right.coords(&tf).ok_or_else(|| Error::IsoCheckFailed(format!("T leaves the degree-{n} space")))?);
            if n < top {
                let a = tc.transpose(left, &left.m1(&f)?)?;
                let b = right.m1(&tf)?;
                transpose_m1 = transpose_m1.merge(a == b, a == b.signed(true));
            }
        }
        let m = Matrix::from_columns(field, right.complex().space_dim(n), &cols);
        transpose_invertible.push(m.is_square() && m.inverse().is_some());
    }

    let small = top.min(2);
    let mut transpose_braces = UniformSign::Vacuous;
    let mut transpose_m2 = UniformSign::Vacuous;
    for _ in 0..samples {
        let x = left.sample(rng.gen_range(0..=small), rng);
        let y = left.sample(rng.gen_range(0..=small), rng);
        let (tx, ty) = (tc.transpose(left, &x)?, tc.transpose(left, &y)?);
        let a = tc.transpose(left, &left.m2(&x, &y)?)?;
        let b = crate::operadic::transpose_m2(right, &tx, &ty)?;
        transpose_m2 = transpose_m2.merge(a == b, a == b.signed(true));
        if x.arity >= 1 {
            let a = tc.transpose(left, &left.brace(&x, std::slice::from_ref(&y))?)?;
            let b = crate::operadic::transpose_brace(right, &tx, std::slice::from_ref(&ty))?;
            transpose_braces = transpose_braces.merge(a == b, a == b.signed(true));
        }
    }

    let mut cup = IdentityTally::new("cup under rop");
    let mut bracket = IdentityTally::new("bracket under rop");
    let mut opposite_bracket = IdentityTally::new("transpose sends bracket to opposite bracket");
    for (p, rp) in reps.iter().enumerate() {
        for (q, rq) in reps.iter().enumerate() {
            for f in rp {
                for g in rq {
                    let (rf, rg) = (ctx.rop_map(f)?, ctx.rop_map(g)?);
                    if p + q <= hi {
                        let lhs = ctx.rop_map(&ctx.coend.m2(f, g)?)?;
                        cup.record(lhs == left.m2(&rf, &rg)?);
                    }
                    if p + q >= 1 && p + q - 1 <= hi {
                        let lhs = ctx.rop_map(&ctx.coend.bracket(f, g)?)?;
                        let br = left.bracket(&rf, &rg)?;
                        bracket.record(equal_mod_coboundaries(left, &lhs, &br)?);
                        let tbr = tc.transpose(left, &br)?;
                        let op = right
                            .bracket(&tc.transpose(left, &rg)?, &tc.transpose(left, &rf)?)?
                            .signed(true);
                        opposite_bracket.record(equal_mod_coboundaries(right, &tbr, &op)?);
                    }
                }
            }
        }
    }
    let degree_zero = {
        let h0_left = cohomology(left.complex(), 0)?.0;
        let mut ok = cartier_cohomology.first().copied() == Some(h0_left);
        if let Some(r0) = reps.first() {
            for f in r0 {
                for g in r0 {
                    ok &= ctx.coend.bracket(f, g)?.is_zero();
                }
            }
        }
        ok
    };
    Ok(GerstenhaberReport {
        cartier_cohomology,
        cup,
        bracket,
        transpose_invertible,
        transpose_m1,
        transpose_braces,
        transpose_m2,
        opposite_bracket,
        degree_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{diagonal, matrix_algebra, truncated_polynomial, upper_triangular};
    use crate::coring::{dual_coring, trivial_coring};
    use crate::exactlin::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dual_numbers_coring(p: u64) -> Arc<Coring> {
        let f = if p == 0 { Field::Rational } else { Field::prime(p).unwrap() };
        let a = Arc::new(truncated_polynomial(f, 2).unwrap());
        dual_coring(&AlgebraExtension::over_field(a)).unwrap().coring
    }

    fn context(c: Arc<Coring>, top: usize) -> DualityContext {
        DualityContext::new(c, top, &ComplexOptions::default()).unwrap()
    }

    #[test]
    fn dual_numbers_char_two_all_pass() {
        let mut ctx = context(dual_numbers_coring(2), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = verify_strict_morphism(&mut ctx, 3, 20, 4096, &mut rng).unwrap();
        assert!(s.ok(), "{s:?}");
        assert!(s.literal_cochain_map());
        let iso = verify_cochain_isomorphism(&ctx, 4).unwrap();
        assert!(iso.ok(), "{iso:?}");
        assert_eq!(iso.cartier_cohomology, vec![2, 2, 2, 2]);
        assert_eq!(iso.degrees.iter().map(|d| d.cartier_dim).collect::<Vec<_>>(), vec![2, 4, 8, 16, 32]);
    }

    #[test]
    fn dual_numbers_odd_characteristic_signs() {
        let mut ctx = context(dual_numbers_coring(3), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let s = verify_strict_morphism(&mut ctx, 3, 15, 4096, &mut rng).unwrap();
        assert!(s.ok(), "{s:?}");
        // the two complex differentials differ from [m, −] by different signs
        assert!(s.differentials.iter().all(|a| a.degree_signed));
        assert!(!s.literal_cochain_map());
        let iso = verify_cochain_isomorphism(&ctx, 3).unwrap();
        assert!(iso.ok());
        assert_eq!(iso.hochschild_cohomology, vec![2, 1, 1]);
        let g = verify_gerstenhaber_opposite(&ctx, 2, 20, &mut rng).unwrap();
        assert!(g.ok(), "{g:?}");
        assert_eq!(g.transpose_m1, UniformSign::Minus);
        assert_eq!(g.transpose_braces, UniformSign::Plus);
        assert_eq!(g.transpose_m2, UniformSign::Minus);
        assert!(!g.transpose_strict());
    }

    #[test]
    fn matrix_coalgebra_and_triangular_dual_coring() {
        let f = Field::Rational;
        let m2 = Arc::new(matrix_algebra(f, 2));
        let mut ctx = context(dual_coring(&AlgebraExtension::over_field(m2)).unwrap().coring, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = verify_strict_morphism(&mut ctx, 2, 8, 256, &mut rng).unwrap();
        assert!(s.ok(), "{s:?}");
        let iso = verify_cochain_isomorphism(&ctx, 2).unwrap();
        assert!(iso.ok());
        assert_eq!(iso.cartier_cohomology, vec![1, 0]);

        let t2 = Arc::new(upper_triangular(f, 2));
        let d2 = Arc::new(diagonal(f, 2));
        let ext = AlgebraExtension::new(d2, t2, Matrix::from_i64(f, &[&[1, 0], &[0, 0], &[0, 1]])).unwrap();
        let mut ctx = context(dual_coring(&ext).unwrap().coring, 3);
        let s = verify_strict_morphism(&mut ctx, 3, 10, 4096, &mut rng).unwrap();
        assert!(s.ok(), "{s:?}");
        let iso = verify_cochain_isomorphism(&ctx, 3).unwrap();
        assert!(iso.ok());
        assert_eq!(iso.cartier_cohomology, vec![1, 0, 0]);
    }

    #[test]
    fn trivial_coring_collapses() {
        let m = Arc::new(matrix_algebra(Field::prime(2).unwrap(), 2));
        let mut ctx = context(Arc::new(trivial_coring(m)), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        assert!(verify_strict_morphism(&mut ctx, 3, 10, 4096, &mut rng).unwrap().ok());
        let iso = verify_cochain_isomorphism(&ctx, 3).unwrap();
        assert!(iso.ok());
        assert_eq!(iso.cartier_cohomology, vec![1, 0, 0]);
        let g = verify_gerstenhaber_opposite(&ctx, 2, 10, &mut rng).unwrap();
        assert!(g.ok() && g.degree_zero);
    }

    #[test]
    fn rop_of_comultiplication_is_the_product_of_l() {
        let ctx = context(dual_numbers_coring(3), 2);
        let mu = ctx.rop_map(&ctx.coend().multiplication()).unwrap();
        let l = &ctx.right_algebra().left_dual_algebra;
        let p = ctx.end().powers();
        for t in 0..p.dim(2) {
            let tu = p.rep(2, t);
            assert_eq!(&mu.values[t], l.product(tu[0] as usize, tu[1] as usize));
        }
    }

    #[test]
    fn second_iterated_gamma_matches_the_pairing_map() {
        let ctx = context(dual_numbers_coring(3), 2);
        let c = ctx.coring().carrier().clone();
        let g = crate::bimodule::gamma(c.clone(), c).unwrap();
        let ours = &ctx.gammas()[1];
        assert!(ours.is_invertible());
        let field = ctx.coring().field();
        let p = ctx.end().powers();
        // compare functionals through their values on pure tensors
        for t in 0..p.dim(2) {
            let tu = p.rep(2, t);
            let theirs = g.map.apply(g.source.project_pair(tu[0] as usize, tu[1] as usize));
            let mine = ours.map.apply(&sparse::unit(t, field));
            for x in 0..c_dim(&ctx) {
                for y in 0..c_dim(&ctx) {
                    let u = g.tensor_mn.project_pair(x, y);
                    let v = ctx.coend().powers().project(&[x as u32, y as u32]);
                    assert_eq!(g.target.eval(&theirs, u), ours.target.eval(&mine, &v));
                }
            }
        }
    }

    fn c_dim(ctx: &DualityContext) -> usize {
        ctx.coring().dim()
    }

    #[test]
    fn non_projective_coring_is_not_applicable() {
        // C = B ⊕ k over the dual numbers, e ∈ k primitive: k is not projective
        let f = Field::prime(3).unwrap();
        let b = Arc::new(truncated_polynomial(f, 2).unwrap());
        let act = Matrix::from_i64(f, &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
        let one = Matrix::identity(f, 3);
        let carrier = Arc::new(
            crate::bimodule::Bimodule::new(b, vec![one.clone(), act.clone()], vec![one, act]).unwrap(),
        );
        let u = |i: usize| sparse::unit(i, f);
        let delta = vec![u(0), u(3), sparse::add(&u(2 * 3), &u(2))];
        let counit = vec![u(0), u(1), Vec::new()];
        let c = Arc::new(Coring::new(carrier, &delta, &counit).unwrap());
        let ctx = context(c, 2);
        assert!(!ctx.is_left_projective());
        assert!(!verify_cochain_isomorphism(&ctx, 2).unwrap().applicable);
    }

    #[test]
    fn dualize_map_functoriality_and_splittings() {
        let f = Field::prime(3).unwrap();
        let b = Arc::new(truncated_polynomial(f, 2).unwrap());
        let reg = Arc::new(crate::bimodule::regular_bimodule(b.clone()));
        let id = BimoduleMap::identity(reg.clone());
        let did = dualize_map(&id).unwrap();
        assert_eq!(did.map.matrix(), Matrix::identity(f, did.source.dim()));
        // B ⊕ B → B, (x, y) ↦ x + y, split by x ↦ (x, 0)
        let sum = Arc::new(reg.direct_sum(&reg).unwrap());
        let proj = BimoduleMap::new(sum.clone(), reg.clone(), Matrix::from_i64(f, &[&[1, 0, 1, 0], &[0, 1, 0, 1]])).unwrap();
        let sec = BimoduleMap::new(reg.clone(), sum.clone(), Matrix::from_i64(f, &[&[1, 0], &[0, 1], &[0, 0], &[0, 0]])).unwrap();
        let dp = dualize_map(&proj).unwrap();
        let ds = dualize_map(&sec).unwrap();
        // D(p∘s) = D(s)∘D(p) = id, so D(p) is a split mono with splitting D(s)
        let comp = ds.map.compose(&dp.map).unwrap();
        assert_eq!(comp.matrix(), Matrix::identity(f, dp.source.dim()));
        let dps = dualize_map(&proj.compose(&sec).unwrap()).unwrap();
        assert_eq!(dps.map.matrix(), comp.matrix());
    }

    #[test]
    fn dualize_over_the_field_is_the_transpose() {
        let f = Field::prime(5).unwrap();
        let k = Arc::new(crate::algebra::field_algebra(f));
        let mk = |d: usize| {
            let one = Matrix::identity(f, d);
            Arc::new(crate::bimodule::Bimodule::new(k.clone(), vec![one.clone()], vec![one]).unwrap())
        };
        let m = Matrix::from_i64(f, &[&[1, 2, 0], &[0, 3, 4]]);
        let map = BimoduleMap::new(mk(3), mk(2), m.clone()).unwrap();
        let d = dualize_map(&map).unwrap();
        // dual bases of k^n are coordinate functionals up to the chosen kernel basis
        let x = d.target.to_matrix(&d.map.apply(&sparse::unit(0, f))).to_dense();
        let y = d.source.to_matrix(&sparse::unit(0, f)).to_dense().mul(&m);
        assert_eq!(x, y);
    }
}
