//! Endomorphism and coendomorphism operads: partial composition, braces,
//! cup product, bracket, and the brace B∞ identities.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{Algebra, AlgebraExtension};
use crate::bimodule::regular_bimodule;
use crate::cochain::{
    apply_values, cartier_complex_regular, relative_hochschild_complex_with, CochainComplex, ComplexOptions, Powers,
};
use crate::coring::Coring;
use crate::error::{Error, Result};
use crate::exactlin::sparse::{self, Accumulator, SparseVec};
use crate::exactlin::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperadKind {
    /// `Hom_{B-B}(A^{⊗n}, A)`.
    End,
    /// `Hom_{B-B}(C, C^{⊗n})`.
    CoEnd,
}

/// A cochain of a fixed arity, stored by its values on a domain basis:
/// the `n`-th tensor power for `End`, the coring for `CoEnd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadElement {
    pub arity: usize,
    pub values: Vec<SparseVec>,
}

impl OperadElement {
    /// Operadic degree `arity − 1`.
    pub fn degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_empty())
    }

    pub fn add(&self, other: &OperadElement) -> OperadElement {
        assert_eq!(self.arity, other.arity);
        OperadElement {
            arity: self.arity,
            values: self.values.iter().zip(&other.values).map(|(a, b)| sparse::add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &OperadElement) -> OperadElement {
        assert_eq!(self.arity, other.arity);
        OperadElement {
            arity: self.arity,
            values: self.values.iter().zip(&other.values).map(|(a, b)| sparse::sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> OperadElement {
        OperadElement {
            arity: self.arity,
            values: self.values.iter().map(|a| sparse::scale(a, s)).collect(),
        }
    }

    /// `(−1)^odd · self`.
    pub fn signed(&self, odd: bool) -> OperadElement {
        if odd {
            OperadElement {
                arity: self.arity,
                values: self
                    .values
                    .iter()
                    .map(|a| a.iter().map(|(i, s)| (*i, -s.clone())).collect())
                    .collect(),
            }
        } else {
            self.clone()
        }
    }
}

pub(crate) fn odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

/// The operad attached to an extension (`End`) or a coring (`CoEnd`), with the
/// cochain complex it lives in.
#[derive(Debug)]
pub struct OperadContext {
    kind: OperadKind,
    complex: CochainComplex,
    powers: Powers,
    algebra: Option<Arc<Algebra>>,
    coring: Option<Arc<Coring>>,
    max_space: usize,
}

impl OperadContext {
    /// `End(A)` relative to `B`, with cochain spaces through degree `top`.
    pub fn endomorphism(ext: &AlgebraExtension, top: usize, opts: &ComplexOptions) -> Result<OperadContext> {
        let coeff = Arc::new(regular_bimodule(ext.big().clone()));
        let complex = relative_hochschild_complex_with(ext, coeff, top, opts)?;
        let powers = complex.powers().clone();
        Ok(OperadContext {
            kind: OperadKind::End,
            complex,
            powers,
            algebra: Some(ext.big().clone()),
            coring: None,
            max_space: opts.max_space,
        })
    }

    /// `CoEnd(C)`, with cochain spaces through degree `top`.
    pub fn coendomorphism(c: Arc<Coring>, top: usize, opts: &ComplexOptions) -> Result<OperadContext> {
        let complex = cartier_complex_regular(c.clone(), top, opts)?;
        let powers = complex.powers().clone();
        Ok(OperadContext {
            kind: OperadKind::CoEnd,
            complex,
            powers,
            algebra: None,
            coring: Some(c),
            max_space: opts.max_space,
        })
    }

    pub fn kind(&self) -> OperadKind {
        self.kind
    }

    pub fn field(&self) -> Field {
        self.complex.field()
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn powers(&self) -> &Powers {
        &self.powers
    }

    pub fn coring(&self) -> Option<&Arc<Coring>> {
        self.coring.as_ref()
    }

    pub fn algebra(&self) -> Option<&Arc<Algebra>> {
        self.algebra.as_ref()
    }

    /// Makes tensor powers up to `n` available.
    pub fn ensure_arity(&mut self, n: usize) -> Result<()> {
        self.powers.extend_to(n.max(1), self.max_space)
    }

    /// Dimension of the tensor power an arity-`n` element touches.
    pub fn power_dim(&self, n: usize) -> Option<usize> {
        (n <= self.powers.available()).then(|| self.powers.dim(n))
    }

    fn domain_dim(&self, n: usize) -> usize {
        match self.kind {
            OperadKind::End => self.powers.dim(n),
            OperadKind::CoEnd => self.powers.factor().dim(),
        }
    }

    fn need(&self, n: usize) -> Result<()> {
        if n > self.powers.available() {
            Err(Error::DegreeOutOfRange {
                degree: n,
                max: self.powers.available(),
            })
        } else {
            Ok(())
        }
    }

    pub fn zero(&self, n: usize) -> OperadElement {
        OperadElement {
            arity: n,
            values: vec![Vec::new(); self.domain_dim(n)],
        }
    }

    /// `η`, the identity in arity 1.
    pub fn identity(&self) -> OperadElement {
        let f = self.field();
        OperadElement {
            arity: 1,
            values: (0..self.powers.dim(1)).map(|i| sparse::unit(i, f)).collect(),
        }
    }

    /// `μ` (End) or `Δ` (CoEnd).
    pub fn multiplication(&self) -> OperadElement {
        let values = match self.kind {
            OperadKind::End => {
                let a = self.algebra.as_ref().unwrap();
                (0..self.powers.dim(2))
                    .map(|t| {
                        let tu = self.powers.rep(2, t);
                        a.product(tu[0] as usize, tu[1] as usize).clone()
                    })
                    .collect()
            }
            OperadKind::CoEnd => {
                let c = self.coring.as_ref().unwrap();
                (0..c.dim())
                    .map(|x| {
                        let mut acc = Accumulator::new();
                        for (p, q, s) in c.comult_pure(x) {
                            acc.add_scaled(&s, &self.powers.project(&[p as u32, q as u32]));
                        }
                        acc.finish()
                    })
                    .collect()
            }
        };
        OperadElement { arity: 2, values }
    }

    /// The arity-0 unit: the base embedding (End) or the counit (CoEnd).
    pub fn unit_element(&self) -> OperadElement {
        let f = self.field();
        let values = match self.kind {
            OperadKind::End => {
                let one = self.algebra.as_ref().unwrap().unit();
                (0..self.powers.base_module().dim())
                    .map(|i| self.powers.factor().act_left(&sparse::unit(i, f), one))
                    .collect()
            }
            OperadKind::CoEnd => {
                let c = self.coring.as_ref().unwrap();
                (0..c.dim()).map(|x| c.counit(x).clone()).collect()
            }
        };
        OperadElement { arity: 0, values }
    }

    /// Element with the given coordinates in the degree-`n` cochain space.
    pub fn from_coords(&self, n: usize, coeffs: &[Scalar]) -> OperadElement {
        OperadElement {
            arity: n,
            values: self.complex.values(n, coeffs),
        }
    }

    /// Coordinates in the cochain space, when the arity is within the complex.
    pub fn coords(&self, f: &OperadElement) -> Option<Vec<Scalar>> {
        if f.arity > self.complex.top() {
            return None;
        }
        self.complex.coordinates_of(f.arity, &f.values)
    }

    /// Random element of the degree-`n` cochain space with coefficients in `-2..=2`.
    pub fn sample<R: Rng>(&self, n: usize, rng: &mut R) -> OperadElement {
        let f = self.field();
        let dim = self.complex.space_dim(n);
        let coeffs: Vec<Scalar> = (0..dim).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect();
        self.from_coords(n, &coeffs)
    }

    /// `f ∘_i g`; zero when `i` is outside `0..arity(f)`.
    pub fn partial_compose(&self, f: &OperadElement, i: usize, g: &OperadElement) -> Result<OperadElement> {
        let m = f.arity;
        let n = g.arity;
        if i >= m {
            return Ok(self.zero((m + n).saturating_sub(1)));
        }
        let r = m + n - 1;
        self.need(r.max(m).max(n))?;
        let field = self.field();
        let p = &self.powers;
        let values = match self.kind {
            OperadKind::End => {
                if r == 0 {
                    // f has arity 1, g arity 0
                    g.values.iter().map(|v| apply_values(&f.values, v)).collect()
                } else {
                    let mut vecs: Vec<SparseVec> = Vec::with_capacity(m);
                    (0..p.dim(r))
                        .map(|t| {
                            let tu = p.rep(r, t);
                            let inner = apply_values(&g.values, &p.project(&tu[i..i + n]));
                            if inner.is_empty() {
                                return Vec::new();
                            }
                            vecs.clear();
                            vecs.extend(tu[..i].iter().map(|x| sparse::unit(*x as usize, field)));
                            vecs.push(inner);
                            vecs.extend(tu[i + n..].iter().map(|x| sparse::unit(*x as usize, field)));
                            apply_values(&f.values, &p.project_vecs(&vecs))
                        })
                        .collect()
                }
            }
            OperadKind::CoEnd => {
                let pos = m - i - 1;
                f.values
                    .iter()
                    .map(|fv| {
                        let mut acc = Accumulator::new();
                        for (u, s) in fv {
                            let tu = p.rep(m, *u as usize);
                            let gv = &g.values[tu[pos] as usize];
                            if gv.is_empty() {
                                continue;
                            }
                            acc.add_scaled(s, &p.substitute(tu, pos, gv, n));
                        }
                        acc.finish()
                    })
                    .collect()
            }
        };
        Ok(OperadElement { arity: r, values })
    }

    /// `f{g_1,…,g_p}`, signs `(−1)^{Σ|g_k| i_k}` with `i_k` the inputs left of `g_k`.
    pub fn brace(&self, f: &OperadElement, gs: &[OperadElement]) -> Result<OperadElement> {
        let p = gs.len();
        let m = f.arity;
        if p > m {
            return Err(Error::ArityUnderflow { arity: m, args: p });
        }
        if p == 0 {
            return Ok(f.clone());
        }
        let r = m + gs.iter().map(|g| g.arity).sum::<usize>() - p;
        self.need(r)?;
        let mut total = self.zero(r);
        let mut slots: Vec<usize> = (0..p).collect();
        loop {
            let mut eps = 0i64;
            let mut shift = 0i64;
            for (k, g) in gs.iter().enumerate() {
                let ik = slots[k] as i64 + shift;
                eps += g.degree() * ik;
                shift += g.degree();
            }
            let mut h = f.clone();
            for k in (0..p).rev() {
                h = self.partial_compose(&h, slots[k], &gs[k])?;
            }
            total = total.add(&h.signed(odd(eps)));
            // next increasing slot sequence
            let mut k = p;
            loop {
                if k == 0 {
                    return Ok(total);
                }
                k -= 1;
                if slots[k] < m - (p - k) {
                    slots[k] += 1;
                    for j in k + 1..p {
                        slots[j] = slots[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Brace that is zero when there are more arguments than inputs.
    pub fn brace_or_zero(&self, f: &OperadElement, gs: &[OperadElement]) -> Result<OperadElement> {
        match self.brace(f, gs) {
            Err(Error::ArityUnderflow { .. }) => {
                let r = (f.arity + gs.iter().map(|g| g.arity).sum::<usize>()).saturating_sub(gs.len());
                Ok(self.zero(r))
            }
            other => other,
        }
    }

    /// Total composition `γ(f; g_1, …, g_n)`, grafting `g_k` onto input `k`.
    pub fn total_compose(&self, f: &OperadElement, gs: &[OperadElement]) -> Result<OperadElement> {
        if gs.len() != f.arity {
            return Err(Error::Incompatible(format!("{} inputs for arity {}", gs.len(), f.arity)));
        }
        let mut acc = f.clone();
        for (k, g) in gs.iter().enumerate().rev() {
            acc = self.partial_compose(&acc, k, g)?;
        }
        Ok(acc)
    }

    /// `f ⌣ g = γ(m; f, g)`, no sign.
    pub fn cup(&self, f: &OperadElement, g: &OperadElement) -> Result<OperadElement> {
        let m = self.multiplication();
        let h = self.partial_compose(&m, 1, g)?;
        self.partial_compose(&h, 0, f)
    }

    /// `[f,g] = f{g} − (−1)^{|f||g|} g{f}`.
    pub fn bracket(&self, f: &OperadElement, g: &OperadElement) -> Result<OperadElement> {
        let a = self.brace_or_zero(f, std::slice::from_ref(g))?;
        let b = self.brace_or_zero(g, std::slice::from_ref(f))?;
        Ok(a.sub(&b.signed(odd(f.degree() * g.degree()))))
    }

    /// `[m, f]`.
    pub fn differential_via_bracket(&self, f: &OperadElement) -> Result<OperadElement> {
        self.bracket(&self.multiplication(), f)
    }

    /// The cochain-complex differential at any arity covered by the powers.
    pub fn complex_differential(&self, f: &OperadElement) -> Result<OperadElement> {
        let r = f.arity + 1;
        self.need(r)?;
        Ok(OperadElement {
            arity: r,
            values: self.complex.differential_values_with(&self.powers, f.arity, &f.values),
        })
    }

    /// `m1 = [m, −]`, the differential of the operad with multiplication.
    pub fn m1(&self, f: &OperadElement) -> Result<OperadElement> {
        self.differential_via_bracket(f)
    }

    /// `m2(f, g) = (−1)^{|f||g|} f ⌣ g` in cochain degrees (arities).
    pub fn m2(&self, f: &OperadElement, g: &OperadElement) -> Result<OperadElement> {
        let (a, b) = (f.arity as i64, g.arity as i64);
        Ok(self.cup(f, g)?.signed(odd(a * b)))
    }

    /// Sign `s` with `d_complex(f) = (−1)^{s·|f|}[m, f]`: 1 for `End`, 0 for `CoEnd`.
    pub fn differential_sign_exponent(&self) -> i64 {
        match self.kind {
            OperadKind::End => 1,
            OperadKind::CoEnd => 0,
        }
    }

    /// Opposite B∞ brace: `a{b}^op = (−1)^{1+|a|+|b|+|a||b|} b{a}` in cochain
    /// degrees, zero for two or more arguments.
    pub fn opposite_brace(&self, a: &OperadElement, bs: &[OperadElement]) -> Result<OperadElement> {
        match bs.len() {
            0 => Ok(a.clone()),
            1 => {
                let (x, y) = (a.arity as i64, bs[0].arity as i64);
                Ok(self
                    .brace_or_zero(&bs[0], std::slice::from_ref(a))?
                    .signed(odd(1 + x + y + x * y)))
            }
            _ => {
                let r = (a.arity + bs.iter().map(|g| g.arity).sum::<usize>()).saturating_sub(bs.len());
                Ok(self.zero(r))
            }
        }
    }
}

/// `a{b_1..b_p}` sign relating it to `μ_{1,p}`: `p|a| + Σ (p−k)|b_k|`.
pub(crate) fn brace_mu_sign(a: i64, bs: &[i64]) -> i64 {
    let p = bs.len() as i64;
    p * a + bs.iter().enumerate().map(|(k, b)| (p - 1 - k as i64) * b).sum::<i64>()
}

/// Transposed brace `a{b_1..b_q}^tr` built from `μ^tr_{1,q}(a; b) = (−1)^ε μ_{1,q}(a; b_q..b_1)`,
/// degrees are cochain degrees.
pub fn transpose_brace(ctx: &OperadContext, a: &OperadElement, bs: &[OperadElement]) -> Result<OperadElement> {
    let q = bs.len() as i64;
    if q == 0 {
        return Ok(a.clone());
    }
    let da = a.arity as i64;
    let db: Vec<i64> = bs.iter().map(|b| b.arity as i64).collect();
    let mut eps = 1 + 1 + q * (q + 1) / 2;
    for j in 0..db.len() {
        eps += db[j] * db[j + 1..].iter().sum::<i64>();
    }
    let rev: Vec<OperadElement> = bs.iter().rev().cloned().collect();
    let rdb: Vec<i64> = rev.iter().map(|b| b.arity as i64).collect();
    let total = brace_mu_sign(da, &db) + eps + brace_mu_sign(da, &rdb);
    Ok(ctx.brace_or_zero(a, &rev)?.signed(odd(total)))
}

/// Transposed `m_2`: `m2^tr(a, b) = (−1)^{|a||b|} m2(b, a)`.
pub fn transpose_m2(ctx: &OperadContext, a: &OperadElement, b: &OperadElement) -> Result<OperadElement> {
    Ok(ctx.m2(b, a)?.signed(odd(a.arity as i64 * b.arity as i64)))
}

/// Tally of one identity family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityTally {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl IdentityTally {
    pub(crate) fn new(name: &str) -> Self {
        IdentityTally {
            name: name.to_string(),
            ..Default::default()
        }
    }
    pub(crate) fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Operations a brace B∞ check is run against: the structure itself or its transpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraceStructure {
    Standard,
    Transpose,
}

/// Outcome of [`check_brace_identities`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceReport {
    pub tallies: Vec<IdentityTally>,
    pub differential_degrees: Vec<DifferentialAgreement>,
    /// Exponent `s` of the context: `d_complex(f) = (−1)^{s·|f|}[m, f]` is what `ok` requires.
    pub sign_exponent: i64,
    pub multiplication_square_zero: bool,
}

/// Comparison of the complex differential with `[m, f]` on a full cochain space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DifferentialAgreement {
    pub degree: usize,
    /// `d(f) = (−1)^{|f|}[m, f]` for every basis cochain.
    pub twisted: bool,
    /// `d(f) = [m, f]` for every basis cochain.
    pub plain: bool,
}

impl BraceReport {
    pub fn ok(&self) -> bool {
        self.multiplication_square_zero && self.tallies.iter().all(|t| t.ok()) && self.differential_matches_context()
    }

    pub fn differential_matches_context(&self) -> bool {
        self.differential_degrees
            .iter()
            .all(|a| if self.sign_exponent == 1 { a.twisted } else { a.plain })
    }

    /// Whether `d = (−1)^{|f|}[m, f]` held in every computed degree.
    pub fn twisted_differential_everywhere(&self) -> bool {
        self.differential_degrees.iter().all(|a| a.twisted)
    }
}

struct Ops<'a> {
    ctx: &'a OperadContext,
    structure: BraceStructure,
}

/// A sum of terms where a brace with too many arguments contributes nothing.
type Term = Option<OperadElement>;

fn plus(acc: Term, t: Term) -> Term {
    match (acc, t) {
        (Some(a), Some(b)) => Some(a.add(&b)),
        (a, None) => a,
        (None, b) => b,
    }
}

fn neg_if(t: Term, odd_sign: bool) -> Term {
    t.map(|x| x.signed(odd_sign))
}

fn same(a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x == y,
        (Some(x), None) | (None, Some(x)) => x.is_zero(),
        (None, None) => true,
    }
}

impl Ops<'_> {
    fn brace(&self, a: &Term, bs: &[Term]) -> Result<Term> {
        let Some(a) = a else { return Ok(None) };
        let mut args = Vec::with_capacity(bs.len());
        for b in bs {
            match b {
                Some(b) => args.push(b.clone()),
                None => return Ok(None),
            }
        }
        if args.len() > a.arity {
            return Ok(None);
        }
        Ok(Some(match self.structure {
            BraceStructure::Standard => self.ctx.brace(a, &args)?,
            BraceStructure::Transpose => transpose_brace(self.ctx, a, &args)?,
        }))
    }
    fn m2(&self, a: &Term, b: &Term) -> Result<Term> {
        let (Some(a), Some(b)) = (a, b) else { return Ok(None) };
        Ok(Some(match self.structure {
            BraceStructure::Standard => self.ctx.m2(a, b)?,
            BraceStructure::Transpose => transpose_m2(self.ctx, a, b)?,
        }))
    }
    fn m1(&self, a: &Term) -> Result<Term> {
        match a {
            Some(a) => Ok(Some(self.ctx.m1(a)?)),
            None => Ok(None),
        }
    }
}

fn wrap(xs: &[OperadElement]) -> Vec<Term> {
    xs.iter().cloned().map(Some).collect()
}

fn deg(t: &OperadElement) -> i64 {
    t.arity as i64
}

fn arity_sum(xs: &[&OperadElement]) -> usize {
    xs.iter().map(|x| x.arity).sum()
}

/// `(a{b_1..b_p}){c_1..c_q}` against the grafting sum.
fn pre_jacobi(ops: &Ops, a: &OperadElement, bs: &[OperadElement], cs: &[OperadElement]) -> Result<bool> {
    let at = Some(a.clone());
    let lhs = ops.brace(&ops.brace(&at, &wrap(bs))?, &wrap(cs))?;
    let mut rhs: Term = None;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        ops: &Ops,
        a: &Term,
        bs: &[OperadElement],
        cs: &[OperadElement],
        start: usize,
        stack: &mut Vec<(usize, usize)>,
        rhs: &mut Term,
    ) -> Result<()> {
        let p = bs.len();
        let q = cs.len();
        if stack.len() == p {
            let mut args: Vec<Term> = Vec::new();
            let mut eps = 0i64;
            let mut pos = 0;
            for (l, &(i, len)) in stack.iter().enumerate() {
                args.extend(wrap(&cs[pos..i]));
                args.push(ops.brace(&Some(bs[l].clone()), &wrap(&cs[i..i + len]))?);
                pos = i + len;
                let before: i64 = cs[..i].iter().map(|c| deg(c) - 1).sum();
                eps += (deg(&bs[l]) - 1) * before;
            }
            args.extend(wrap(&cs[pos..]));
            let term = neg_if(ops.brace(a, &args)?, odd(eps));
            *rhs = plus(rhs.take(), term);
            return Ok(());
        }
        for i in start..=q {
            for len in 0..=(q - i) {
                stack.push((i, len));
                rec(ops, a, bs, cs, i + len, stack, rhs)?;
                stack.pop();
            }
        }
        Ok(())
    }
    rec(ops, &at, bs, cs, 0, &mut stack, &mut rhs)?;
    Ok(same(&lhs, &rhs))
}

fn distributivity(ops: &Ops, a1: &OperadElement, a2: &OperadElement, bs: &[OperadElement]) -> Result<bool> {
    let (t1, t2) = (Some(a1.clone()), Some(a2.clone()));
    let lhs = ops.brace(&ops.m2(&t1, &t2)?, &wrap(bs))?;
    let mut rhs: Term = None;
    for j in 0..=bs.len() {
        let s: i64 = bs[..j].iter().map(|b| deg(b) - 1).sum();
        let t = ops.m2(&ops.brace(&t1, &wrap(&bs[..j]))?, &ops.brace(&t2, &wrap(&bs[j..]))?)?;
        rhs = plus(rhs, neg_if(t, odd(deg(a2) * s)));
    }
    Ok(same(&lhs, &rhs))
}

fn higher_homotopy(ops: &Ops, a: &OperadElement, bs: &[OperadElement]) -> Result<bool> {
    let p = bs.len();
    let da = deg(a);
    let at = Some(a.clone());
    let b = wrap(bs);
    let eps = |i: usize| da + bs[..i].iter().map(|b| deg(b) - 1).sum::<i64>();
    let mut lhs = ops.m1(&ops.brace(&at, &b)?)?;
    lhs = plus(lhs, neg_if(ops.m2(&b[0], &ops.brace(&at, &b[1..])?)?, !odd(da * (deg(&bs[0]) - 1))));
    lhs = plus(lhs, neg_if(ops.m2(&ops.brace(&at, &b[..p - 1])?, &b[p - 1])?, odd(eps(p - 1))));
    let mut rhs = ops.brace(&ops.m1(&at)?, &b)?;
    for i in 0..p {
        let mut args: Vec<Term> = b[..i].to_vec();
        args.push(ops.m1(&b[i])?);
        args.extend(b[i + 1..].iter().cloned());
        rhs = plus(rhs, neg_if(ops.brace(&at, &args)?, !odd(eps(i))));
    }
    for i in 0..p.saturating_sub(1) {
        let mut args: Vec<Term> = b[..i].to_vec();
        args.push(ops.m2(&b[i], &b[i + 1])?);
        args.extend(b[i + 2..].iter().cloned());
        rhs = plus(rhs, neg_if(ops.brace(&at, &args)?, odd(eps(i + 1))));
    }
    Ok(same(&lhs, &rhs))
}

/// Configuration of [`check_brace_identities`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BraceCheckConfig {
    /// Largest arity of a sampled element.
    pub max_arity: usize,
    /// Instances per identity family.
    pub samples: usize,
    /// Instances whose result power exceeds this dimension are skipped.
    pub max_result_dim: usize,
    pub structure: BraceStructure,
}

impl Default for BraceCheckConfig {
    fn default() -> Self {
        BraceCheckConfig {
            max_arity: 3,
            samples: 50,
            max_result_dim: 4096,
            structure: BraceStructure::Standard,
        }
    }
}

/// Evaluates higher pre-Jacobi, distributivity and higher homotopy on random
/// elements, plus `m{m} = 0` and the comparison of `d` with `[m, f]` on every computed space.
pub fn check_brace_identities<R: Rng>(ctx: &mut OperadContext, cfg: &BraceCheckConfig, rng: &mut R) -> Result<BraceReport> {
    let top = ctx.complex().top().min(cfg.max_arity);
    let fdim = ctx.powers().factor().dim().max(1);
    loop {
        let have = ctx.powers().available();
        if have >= 3 * top + 2 || ctx.powers().dim(have) * fdim > cfg.max_result_dim {
            break;
        }
        ctx.ensure_arity(have + 1)?;
    }
    let fits = |ctx: &OperadContext, r: usize| ctx.power_dim(r).map_or(false, |d| d <= cfg.max_result_dim);

    let m = ctx.multiplication();
    let mm = ctx.brace(&m, std::slice::from_ref(&m))?;
    let multiplication_square_zero = mm.is_zero();

    let mut differential_degrees = Vec::new();
    for n in 0..ctx.complex().top() {
        let (mut twisted, mut plain) = (true, true);
        for k in 0..ctx.complex().space_dim(n) {
            let mut e = vec![ctx.field().zero(); ctx.complex().space_dim(n)];
            e[k] = ctx.field().one();
            let f = ctx.from_coords(n, &e);
            let d = ctx.complex_differential(&f)?;
            let b = ctx.differential_via_bracket(&f)?;
            plain &= d == b;
            twisted &= d == b.signed(odd(f.degree()));
        }
        differential_degrees.push(DifferentialAgreement { degree: n, twisted, plain });
    }

    let ops = Ops {
        ctx,
        structure: cfg.structure,
    };
    let mut pj = IdentityTally::new("higher pre-Jacobi");
    let mut di = IdentityTally::new("distributivity");
    let mut hh = IdentityTally::new("higher homotopy");
    let sample = |rng: &mut R, lo: usize| -> OperadElement {
        let n = rng.gen_range(lo..=top);
        ctx.sample(n, rng)
    };
    let mut attempts = 0;
    while (pj.passed + pj.failed < cfg.samples) && attempts < cfg.samples * 40 {
        attempts += 1;
        let a = sample(rng, 1);
        let p = rng.gen_range(1..=a.arity.min(2));
        let bs: Vec<OperadElement> = (0..p).map(|_| sample(rng, 0)).collect();
        let q = rng.gen_range(1..=2);
        let cs: Vec<OperadElement> = (0..q).map(|_| sample(rng, 0)).collect();
        let mut all: Vec<&OperadElement> = vec![&a];
        all.extend(bs.iter());
        all.extend(cs.iter());
        let widest = arity_sum(&all);
        if !fits(ctx, widest) {
            pj.skipped += 1;
            continue;
        }
        pj.record(pre_jacobi(&ops, &a, &bs, &cs)?);
    }
    attempts = 0;
    while (di.passed + di.failed < cfg.samples) && attempts < cfg.samples * 40 {
        attempts += 1;
        let a1 = sample(rng, 0);
        let a2 = sample(rng, 0);
        let q = rng.gen_range(1..=2);
        let bs: Vec<OperadElement> = (0..q).map(|_| sample(rng, 0)).collect();
        let mut all: Vec<&OperadElement> = vec![&a1, &a2];
        all.extend(bs.iter());
        if !fits(ctx, arity_sum(&all) + 2) {
            di.skipped += 1;
            continue;
        }
        di.record(distributivity(&ops, &a1, &a2, &bs)?);
    }
    attempts = 0;
    while (hh.passed + hh.failed < cfg.samples) && attempts < cfg.samples * 40 {
        attempts += 1;
        let a = sample(rng, 1);
        let p = rng.gen_range(1..=a.arity.min(2));
        let bs: Vec<OperadElement> = (0..p).map(|_| sample(rng, 0)).collect();
        let mut all: Vec<&OperadElement> = vec![&a];
        all.extend(bs.iter());
        if !fits(ctx, arity_sum(&all) + 2) {
            hh.skipped += 1;
            continue;
        }
        hh.record(higher_homotopy(&ops, &a, &bs)?);
    }
    Ok(BraceReport {
        tallies: vec![pj, di, hh],
        differential_degrees,
        sign_exponent: ctx.differential_sign_exponent(),
        multiplication_square_zero,
    })
}

/// Operad axioms (2)–(4) on random triples.
pub fn check_operad_axioms<R: Rng>(ctx: &OperadContext, samples: usize, max_result_dim: usize, rng: &mut R) -> Result<IdentityTally> {
    let top = ctx.complex().top();
    let mut t = IdentityTally::new("operad axioms");
    let id = ctx.identity();
    let mut attempts = 0;
    while t.passed + t.failed < samples && attempts < samples * 40 {
        attempts += 1;
        let f = ctx.sample(rng.gen_range(1..=top), rng);
        let g = ctx.sample(rng.gen_range(0..=top), rng);
        let h = ctx.sample(rng.gen_range(0..=top), rng);
        let r = f.arity + g.arity + h.arity;
        if ctx.power_dim(r).map_or(true, |d| d > max_result_dim) {
            t.skipped += 1;
            continue;
        }
        let (m, n, l) = (f.arity, g.arity, h.arity);
        let i = rng.gen_range(0..m);
        let mut ok = ctx.partial_compose(&f, i, &id)? == f && ctx.partial_compose(&id, 0, &f)? == f;
        let fg = ctx.partial_compose(&f, i, &g)?;
        if n > 0 {
            let j = i + rng.gen_range(0..n);
            ok &= ctx.partial_compose(&fg, j, &h)? == ctx.partial_compose(&f, i, &ctx.partial_compose(&g, j - i, &h)?)?;
        }
        if i > 0 {
            let j = rng.gen_range(0..i);
            let lhs = ctx.partial_compose(&fg, j, &h)?;
            let rhs = ctx.partial_compose(&ctx.partial_compose(&f, j, &h)?, i + l - 1, &g)?;
            ok &= lhs == rhs;
        }
        t.record(ok);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_polynomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn end_dual(p: u64, top: usize) -> OperadContext {
        let f = Field::prime(p).unwrap();
        let a = Arc::new(truncated_polynomial(f, 2).unwrap());
        OperadContext::endomorphism(&AlgebraExtension::over_field(a), top, &ComplexOptions::default()).unwrap()
    }

    #[test]
    fn mu_brace_mu_vanishes_and_identity_units() {
        let ctx = end_dual(3, 3);
        let m = ctx.multiplication();
        assert!(ctx.brace(&m, &[m.clone()]).unwrap().is_zero());
        let id = ctx.identity();
        assert_eq!(ctx.partial_compose(&m, 0, &id).unwrap(), m);
        assert_eq!(ctx.partial_compose(&id, 0, &m).unwrap(), m);
        assert!(matches!(ctx.brace(&id, &[m.clone(), m]), Err(Error::ArityUnderflow { .. })));
    }

    #[test]
    fn unit_element_is_a_unit_for_m() {
        let ctx = end_dual(3, 2);
        let (m, u, id) = (ctx.multiplication(), ctx.unit_element(), ctx.identity());
        assert_eq!(ctx.partial_compose(&m, 0, &u).unwrap(), id);
        assert_eq!(ctx.partial_compose(&m, 1, &u).unwrap(), id);
        let f = Field::prime(3).unwrap();
        let a = Arc::new(truncated_polynomial(f, 2).unwrap());
        let c = crate::coring::dual_coring(&AlgebraExtension::over_field(a)).unwrap().coring;
        let ctx = OperadContext::coendomorphism(c, 2, &ComplexOptions::default()).unwrap();
        let (m, u, id) = (ctx.multiplication(), ctx.unit_element(), ctx.identity());
        assert_eq!(ctx.partial_compose(&m, 0, &u).unwrap(), id);
        assert_eq!(ctx.partial_compose(&m, 1, &u).unwrap(), id);
    }

    #[test]
    fn bracket_with_mu_at_arity_one() {
        let ctx = end_dual(3, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = ctx.sample(1, &mut rng);
        let d = ctx.differential_via_bracket(&f).unwrap();
        let a = ctx.algebra().unwrap().clone();
        let p = ctx.powers();
        for t in 0..p.dim(2) {
            let tu = p.rep(2, t);
            let (x, y) = (sparse::unit(tu[0] as usize, a.field()), sparse::unit(tu[1] as usize, a.field()));
            let fx = apply_values(&f.values, &x);
            let fy = apply_values(&f.values, &y);
            let want = sparse::sub(
                &sparse::add(&a.mul(&fx, &y), &a.mul(&x, &fy)),
                &apply_values(&f.values, &a.mul(&x, &y)),
            );
            assert_eq!(d.values[t], want);
        }
    }

    #[test]
    fn brace_identities_end_dual_numbers() {
        let mut ctx = end_dual(2, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = BraceCheckConfig {
            samples: 20,
            ..Default::default()
        };
        let r = check_brace_identities(&mut ctx, &cfg, &mut rng).unwrap();
        assert!(r.ok(), "{r:?}");
        let ax = check_operad_axioms(&ctx, 20, 4096, &mut rng).unwrap();
        assert!(ax.ok());
    }
}

#[cfg(test)]
mod sign_tests {
    use super::*;
    use crate::algebra::truncated_polynomial;
    use crate::coring::dual_coring;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn run(ctx: &mut OperadContext, structure: BraceStructure) -> BraceReport {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cfg = BraceCheckConfig {
            samples: 30,
            structure,
            ..Default::default()
        };
        check_brace_identities(ctx, &cfg, &mut rng).unwrap()
    }

    #[test]
    fn identities_and_differential_signs_odd_characteristic() {
        for f in [Field::prime(3).unwrap(), Field::Rational] {
            let a = Arc::new(truncated_polynomial(f, 2).unwrap());
            let ext = AlgebraExtension::over_field(a);
            let mut end = OperadContext::endomorphism(&ext, 3, &ComplexOptions::default()).unwrap();
            let c = dual_coring(&ext).unwrap().coring;
            let mut co = OperadContext::coendomorphism(c, 3, &ComplexOptions::default()).unwrap();
            for st in [BraceStructure::Standard, BraceStructure::Transpose] {
                let r = run(&mut end, st);
                assert!(r.ok(), "{r:?}");
                assert!(r.twisted_differential_everywhere());
                let r = run(&mut co, st);
                assert!(r.ok(), "{r:?}");
                assert!(r.differential_degrees.iter().all(|a| a.plain));
                // Hochschild-style sign breaks at the first degree where |f| is odd and d is nonzero.
                assert!(!r.differential_degrees[2].twisted);
            }
        }
    }
}
