//! Truncated Maurer–Cartan elements of the relative Hochschild dg Lie algebra
//! and truncated relative formal deformations of an algebra.
//!
//! The dg Lie structure is `d = [μ, −]` with the Gerstenhaber bracket, so
//! `d(x) + ½[x,x] = 0` for `x = Σ x_i t^i` is associativity of `μ + x`.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{opposite, AlgebraExtension};
use crate::cochain::apply_values;
use crate::error::{violation, Error, Result};
use crate::exactlin::sparse::{self, Accumulator, SparseVec};
use crate::exactlin::{kernel_basis, Field, Matrix, Scalar};
use crate::operadic::{OperadContext, OperadElement, OperadKind};

/// Outcome of an order-by-order check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Ok,
    /// The first order `k` in `t` at which the equation fails.
    Failure(usize),
}

impl CheckStatus {
    pub fn is_ok(self) -> bool {
        self == CheckStatus::Ok
    }
}

/// `x = x_1 t + … + x_N t^N` with each `x_i` a degree-2 relative Hochschild cochain.
#[derive(Clone, Debug)]
pub struct TruncatedElement {
    coefficients: Vec<OperadElement>,
}

impl TruncatedElement {
    pub fn new(ctx: &OperadContext, coefficients: Vec<OperadElement>) -> Result<TruncatedElement> {
        if ctx.kind() != OperadKind::End {
            return Err(Error::Incompatible("Maurer-Cartan elements live in an endomorphism operad".into()));
        }
        for (i, x) in coefficients.iter().enumerate() {
            if x.arity != 2 || ctx.coords(x).is_none() {
                return Err(violation("truncated element", "coefficient is a degree-2 cochain", vec![i + 1]));
            }
        }
        Ok(TruncatedElement { coefficients })
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[OperadElement] {
        &self.coefficients
    }
}

/// Checks `[μ, x_k] + ½ Σ_{i+j=k} [x_i, x_j] = 0` for `k = 1..=N`.
/// The context must carry cochains through degree 3.
pub fn mc_check(ctx: &OperadContext, x: &TruncatedElement) -> Result<CheckStatus> {
    let field = ctx.field();
    if field.characteristic() == 2 {
        return Err(Error::CharTwoUnsupported);
    }
    let half = field.from_i64(2).inv();
    for k in 1..=x.order() {
        let mut total = ctx.m1(&x.coefficients[k - 1])?;
        for i in 1..k {
            let b = ctx.bracket(&x.coefficients[i - 1], &x.coefficients[k - i - 1])?;
            total = total.add(&b.scale(&half));
        }
        if !total.is_zero() {
            return Ok(CheckStatus::Failure(k));
        }
    }
    Ok(CheckStatus::Ok)
}

/// `μ_t = μ + μ_1 t + … + μ_N t^N` on an extension `B → A`. Each correction is
/// stored by its values `μ_i(e_p, e_q)` at `p*dim A + q`.
#[derive(Clone, Debug)]
pub struct TruncatedDeformation {
    ext: AlgebraExtension,
    corrections: Vec<Vec<SparseVec>>,
}

impl TruncatedDeformation {
    /// Validates that every correction is `B`-bilinear and vanishes when either argument lies in `B`.
    pub fn new(ext: AlgebraExtension, corrections: Vec<Vec<SparseVec>>) -> Result<TruncatedDeformation> {
        let n = ext.big().dim();
        let rows = relative_constraints(&ext);
        for (i, mu) in corrections.iter().enumerate() {
            if mu.len() != n * n {
                return Err(Error::Incompatible(format!("correction {} needs {} values", i + 1, n * n)));
            }
            let flat = flatten(ext.field(), n, mu);
            if rows.iter().any(|r| !dot(r, &flat).is_zero()) {
                return Err(violation("deformation", "correction is B-bilinear and B-relative", vec![i + 1]));
            }
        }
        Ok(TruncatedDeformation { ext, corrections })
    }

    pub fn extension(&self) -> &AlgebraExtension {
        &self.ext
    }

    pub fn order(&self) -> usize {
        self.corrections.len()
    }

    pub fn corrections(&self) -> &[Vec<SparseVec>] {
        &self.corrections
    }

    fn mu(&self, i: usize, x: &[(u32, Scalar)], y: &[(u32, Scalar)]) -> SparseVec {
        let a = self.ext.big();
        if i == 0 {
            return a.mul(x, y);
        }
        let n = a.dim() as u32;
        let mut acc = Accumulator::new();
        for (p, s) in x {
            for (q, t) in y {
                acc.add_scaled(&(s * t), &self.corrections[i - 1][(p * n + q) as usize]);
            }
        }
        acc.finish()
    }
}

fn flatten(field: Field, n: usize, mu: &[SparseVec]) -> Vec<Scalar> {
    mu.iter().flat_map(|v| sparse::to_dense(v, n, field)).collect()
}

fn dot(r: &[Scalar], v: &[Scalar]) -> Scalar {
    let mut acc = Accumulator::new();
    for (a, b) in r.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc.add(0, a * b);
        }
    }
    sparse::get(&acc.finish(), 0).cloned().unwrap_or_else(|| r[0].zero_like())
}

/// Linear conditions on the `n³` coefficients of a bilinear map `A × A → A`
/// for `B`-bilinearity and `B`-relativity.
fn relative_constraints(ext: &AlgebraExtension) -> Vec<Vec<Scalar>> {
    let a = ext.big();
    let n = a.dim();
    let field = a.field();
    let embed = ext.embed_sparse();
    // μ applied to (x, y) as a linear form in the unknowns, one per output coordinate
    let form = |x: &SparseVec, y: &SparseVec| -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![field.zero(); n * n * n]; n];
        for (p, s) in x {
            for (q, t) in y {
                for (k, row) in rows.iter_mut().enumerate() {
                    let idx = (*p as usize * n + *q as usize) * n + k;
                    row[idx] = row[idx].clone() + s * t;
                }
            }
        }
        rows
    };
    // v · μ(x, y) and μ(x, y) · v as forms
    let act = |v: &SparseVec, left: bool, x: &SparseVec, y: &SparseVec| -> Vec<Vec<Scalar>> {
        let base = form(x, y);
        let mut rows = vec![vec![field.zero(); n * n * n]; n];
        for m in 0..n {
            let prod = if left { a.mul(v, &sparse::unit(m, field)) } else { a.mul(&sparse::unit(m, field), v) };
            for (k, s) in prod {
                for (idx, c) in base[m].iter().enumerate() {
                    if !c.is_zero() {
                        let r = &mut rows[k as usize][idx];
                        *r = r.clone() + c * &s;
                    }
                }
            }
        }
        rows
    };
    let sub = |u: Vec<Vec<Scalar>>, w: Vec<Vec<Scalar>>| -> Vec<Vec<Scalar>> {
        u.into_iter()
            .zip(w)
            .map(|(a, b)| a.into_iter().zip(b).map(|(s, t)| s - t).collect())
            .collect()
    };
    let mut out = Vec::new();
    for bi in 0..ext.sub().dim() {
        let v = embed.col(bi).clone();
        for i in 0..n {
            let ei = sparse::unit(i, field);
            out.extend(form(&v, &ei));
            out.extend(form(&ei, &v));
            for j in 0..n {
                let ej = sparse::unit(j, field);
                out.extend(sub(form(&a.mul(&v, &ei), &ej), act(&v, true, &ei, &ej)));
                out.extend(sub(form(&a.mul(&ei, &v), &ej), form(&ei, &a.mul(&v, &ej))));
                out.extend(sub(form(&ei, &a.mul(&ej, &v)), act(&v, false, &ei, &ej)));
            }
        }
    }
    out.retain(|r| r.iter().any(|s| !s.is_zero()));
    out
}

/// A basis of the `B`-bilinear, `B`-relative bilinear maps `A × A → A`.
pub fn relative_correction_basis(ext: &AlgebraExtension) -> Result<Vec<Vec<SparseVec>>> {
    let n = ext.big().dim();
    let field = ext.field();
    let rows = relative_constraints(ext);
    let ker = if rows.is_empty() {
        Matrix::identity(field, n * n * n).to_rows()
    } else {
        kernel_basis(&Matrix::from_rows(field, rows)?).basis().to_vec()
    };
    Ok(ker
        .iter()
        .map(|v| (0..n * n).map(|pq| sparse::from_dense(&v[pq * n..(pq + 1) * n])).collect())
        .collect())
}

/// A random combination of [`relative_correction_basis`] with coefficients in `-2..=2`.
pub fn random_relative_correction<R: Rng>(ext: &AlgebraExtension, rng: &mut R) -> Result<Vec<SparseVec>> {
    let n = ext.big().dim();
    let field = ext.field();
    let mut acc: Vec<Accumulator> = (0..n * n).map(|_| Accumulator::new()).collect();
    for b in relative_correction_basis(ext)? {
        let c = field.from_i64(rng.gen_range(-2..=2));
        for (slot, v) in acc.iter_mut().zip(&b) {
            slot.add_scaled(&c, v);
        }
    }
    Ok(acc.into_iter().map(Accumulator::finish).collect())
}

/// Associativity of `μ_t` modulo `t^{N+1}`, order by order. Runs in any characteristic.
pub fn deformation_check(d: &TruncatedDeformation) -> CheckStatus {
    let a = d.ext.big();
    let n = a.dim();
    let field = a.field();
    for k in 1..=d.order() {
        for x in 0..n {
            let ex = sparse::unit(x, field);
            for y in 0..n {
                let ey = sparse::unit(y, field);
                for z in 0..n {
                    let ez = sparse::unit(z, field);
                    let mut acc = Accumulator::new();
                    for i in 0..=k {
                        let j = k - i;
                        acc.add_scaled(&field.one(), &d.mu(i, &d.mu(j, &ex, &ey), &ez));
                        acc.add_scaled(&-field.one(), &d.mu(i, &ex, &d.mu(j, &ey, &ez)));
                    }
                    if !acc.finish().is_empty() {
                        return CheckStatus::Failure(k);
                    }
                }
            }
        }
    }
    CheckStatus::Ok
}

/// `μ_i^op(a, b) = μ_i(b, a)` on `B^op → A^op`.
pub fn opposite_deformation(d: &TruncatedDeformation) -> Result<TruncatedDeformation> {
    let ext = AlgebraExtension::new(
        Arc::new(opposite(d.ext.sub())),
        Arc::new(opposite(d.ext.big())),
        d.ext.embed().clone(),
    )?;
    let n = d.ext.big().dim();
    let corrections = d
        .corrections
        .iter()
        .map(|mu| (0..n * n).map(|pq| mu[(pq % n) * n + pq / n].clone()).collect())
        .collect();
    TruncatedDeformation::new(ext, corrections)
}

/// The corrections of `d` as cochains in an endomorphism operad on the same extension.
pub fn deformation_to_element(ctx: &OperadContext, d: &TruncatedDeformation) -> Result<TruncatedElement> {
    let p = ctx.powers();
    let coeffs = d
        .corrections
        .iter()
        .map(|mu| {
            let n = d.ext.big().dim() as u32;
            let values = (0..p.dim(2))
                .map(|t| {
                    let tu = p.rep(2, t);
                    mu[(tu[0] * n + tu[1]) as usize].clone()
                })
                .collect();
            OperadElement { arity: 2, values }
        })
        .collect();
    TruncatedElement::new(ctx, coeffs)
}

/// The bilinear maps underlying the coefficients of `x`.
pub fn element_to_deformation(ext: &AlgebraExtension, ctx: &OperadContext, x: &TruncatedElement) -> Result<TruncatedDeformation> {
    let n = ext.big().dim();
    let p = ctx.powers();
    let corrections = x
        .coefficients
        .iter()
        .map(|f| {
            (0..n * n)
                .map(|pq| apply_values(&f.values, &p.project(&[(pq / n) as u32, (pq % n) as u32])))
                .collect()
        })
        .collect();
    TruncatedDeformation::new(ext.clone(), corrections)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, truncated_polynomial};
    use crate::cochain::ComplexOptions;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dual_numbers(p: u64) -> AlgebraExtension {
        let f = Field::prime(p).unwrap();
        AlgebraExtension::over_field(Arc::new(truncated_polynomial(f, 2).unwrap()))
    }

    /// `μ_1(x, x) = 1`, zero elsewhere.
    fn x_squared_to_one(f: Field) -> Vec<SparseVec> {
        vec![vec![], vec![], vec![], sparse::unit(0, f)]
    }

    #[test]
    fn relative_space_of_dual_numbers() {
        let ext = dual_numbers(3);
        assert_eq!(relative_correction_basis(&ext).unwrap().len(), 2);
        let f = ext.field();
        let bad = vec![sparse::unit(1, f), vec![], vec![], vec![]];
        assert!(TruncatedDeformation::new(ext, vec![bad]).is_err());
    }

    #[test]
    fn zero_and_cocycle_deformations() {
        let ext = dual_numbers(3);
        let f = ext.field();
        let ctx = OperadContext::endomorphism(&ext, 3, &ComplexOptions::default()).unwrap();
        let zero = TruncatedElement::new(&ctx, vec![ctx.zero(2), ctx.zero(2)]).unwrap();
        assert_eq!(mc_check(&ctx, &zero).unwrap(), CheckStatus::Ok);
        let d = TruncatedDeformation::new(ext.clone(), vec![x_squared_to_one(f), vec![vec![]; 4]]).unwrap();
        assert_eq!(deformation_check(&d), CheckStatus::Ok);
        let x = deformation_to_element(&ctx, &d).unwrap();
        assert_eq!(mc_check(&ctx, &x).unwrap(), CheckStatus::Ok);
        let back = element_to_deformation(&ext, &ctx, &x).unwrap();
        assert_eq!(back.corrections(), d.corrections());
        let op = opposite_deformation(&d).unwrap();
        assert_eq!(deformation_check(&op), CheckStatus::Ok);
        assert_eq!(opposite_deformation(&op).unwrap().corrections(), d.corrections());
    }

    #[test]
    fn first_order_obstruction() {
        let f = Field::prime(3).unwrap();
        let ext = AlgebraExtension::over_field(Arc::new(matrix_algebra(f, 2)));
        let ctx = OperadContext::endomorphism(&ext, 3, &ComplexOptions::default()).unwrap();
        // μ_1(e_01, e_10) = e_01 is not a cocycle
        let mut mu = vec![vec![]; 16];
        mu[4 + 2] = sparse::unit(1, f);
        let d = TruncatedDeformation::new(ext, vec![mu]).unwrap();
        assert_eq!(deformation_check(&d), CheckStatus::Failure(1));
        let x = deformation_to_element(&ctx, &d).unwrap();
        assert_eq!(mc_check(&ctx, &x).unwrap(), CheckStatus::Failure(1));
    }

    #[test]
    fn random_corrections_agree() {
        let f = Field::prime(3).unwrap();
        let ext = AlgebraExtension::over_field(Arc::new(truncated_polynomial(f, 3).unwrap()));
        let ctx = OperadContext::endomorphism(&ext, 3, &ComplexOptions::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen = std::collections::BTreeSet::new();
        for s in 0..24 {
            let mut cs = Vec::new();
            for i in 0..3 {
                // leave low orders undeformed in some samples to reach later obstructions
                if i < s % 3 {
                    cs.push(vec![vec![]; 9]);
                } else {
                    cs.push(random_relative_correction(&ext, &mut rng).unwrap());
                }
            }
            let d = TruncatedDeformation::new(ext.clone(), cs).unwrap();
            let st = deformation_check(&d);
            assert_eq!(st, mc_check(&ctx, &deformation_to_element(&ctx, &d).unwrap()).unwrap());
            assert_eq!(st, deformation_check(&opposite_deformation(&d).unwrap()));
            seen.insert(format!("{st:?}"));
        }
        assert!(seen.len() >= 3, "{seen:?}");
    }

    #[test]
    fn dual_numbers_relative_deformations_are_unobstructed() {
        let ext = dual_numbers(3);
        let f = ext.field();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let cs = vec![x_squared_to_one(f), random_relative_correction(&ext, &mut rng).unwrap()];
            assert!(deformation_check(&TruncatedDeformation::new(ext.clone(), cs).unwrap()).is_ok());
        }
    }

    #[test]
    fn char_two_rejected_for_mc_only() {
        let ext = dual_numbers(2);
        let ctx = OperadContext::endomorphism(&ext, 3, &ComplexOptions::default()).unwrap();
        let x = TruncatedElement::new(&ctx, vec![ctx.zero(2)]).unwrap();
        assert_eq!(mc_check(&ctx, &x), Err(Error::CharTwoUnsupported));
        let d = TruncatedDeformation::new(ext, vec![vec![vec![]; 4]]).unwrap();
        assert_eq!(deformation_check(&d), CheckStatus::Ok);
    }

    #[test]
    fn matrix_algebra_over_itself_has_no_room() {
        let a = Arc::new(matrix_algebra(Field::Rational, 2));
        let ext = AlgebraExtension::identity(a);
        assert!(relative_correction_basis(&ext).unwrap().is_empty());
    }
}
