//! Coordinates for spaces of bimodule maps `X → Y`.
//!
//! A map is recorded by its values on a set of bimodule generators of `X`;
//! every basis vector of `X` carries a fixed expansion `Σ c·e_i·g·e_j`, and the
//! admissible generator values form the kernel of the linearity equations.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use super::Bimodule;
use crate::exactlin::sparse::{self, Accumulator, Echelon, SparseBasis, SparseMatrix, SparseVec};
use crate::exactlin::{Field, Scalar};

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub coef: Scalar,
    pub i: u32,
    pub g: u32,
    pub j: u32,
}

#[derive(Debug)]
pub(crate) struct HomFrame {
    pub domain: Arc<Bimodule>,
    pub codomain: Arc<Bimodule>,
    pub gens: Vec<u32>,
    pub expansions: Vec<Vec<Term>>,
    ops: OnceLock<Vec<SparseMatrix>>,
    space: OnceLock<SparseBasis>,
}

impl HomFrame {
    pub fn new(domain: Arc<Bimodule>, codomain: Arc<Bimodule>) -> HomFrame {
        let base = domain.base().clone();
        let field = base.field();
        let nb = base.dim();
        let n = domain.dim();
        let mut ech = Echelon::new(field, n);
        let mut labels: Vec<(u32, u32, u32)> = Vec::new();
        let mut gens: Vec<u32> = Vec::new();
        for t in 0..n {
            let e = sparse::unit(t, field);
            if ech.contains(&e) {
                continue;
            }
            let g = gens.len() as u32;
            gens.push(t as u32);
            for i in 0..nb {
                let li = domain.left(i).col(t);
                for j in 0..nb {
                    let v = domain.right(j).apply(li);
                    if v.is_empty() {
                        continue;
                    }
                    let label = labels.len();
                    labels.push((i as u32, g, j as u32));
                    let _ = ech.insert_tracked(v, sparse::unit(label, field));
                }
            }
        }
        let unit = base.unit().clone();
        let mut gen_of = HashMap::new();
        for (k, t) in gens.iter().enumerate() {
            gen_of.insert(*t, k as u32);
        }
        let expansions = (0..n)
            .map(|t| match gen_of.get(&(t as u32)) {
                Some(&g) => {
                    let mut terms = Vec::new();
                    for (i, a) in &unit {
                        for (j, b) in &unit {
                            terms.push(Term {
                                coef: a * b,
                                i: *i,
                                g,
                                j: *j,
                            });
                        }
                    }
                    terms
                }
                None => {
                    let h = ech.express(sparse::unit(t, field)).expect("generators span the domain");
                    h.into_iter()
                        .map(|(l, coef)| {
                            let (i, g, j) = labels[l as usize];
                            Term { coef, i, g, j }
                        })
                        .collect()
                }
            })
            .collect();
        HomFrame {
            domain,
            codomain,
            gens,
            expansions,
            ops: OnceLock::new(),
            space: OnceLock::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.domain.field()
    }

    /// Number of generator-value coordinates.
    pub fn ambient(&self) -> usize {
        self.gens.len() * self.codomain.dim()
    }

    /// `L_i ∘ R_j` on the codomain, index `i*dim(B) + j`.
    fn ops(&self) -> &Vec<SparseMatrix> {
        self.ops.get_or_init(|| {
            let nb = self.domain.base().dim();
            let y = &self.codomain;
            (0..nb * nb)
                .map(|ij| y.left(ij / nb).compose(y.right(ij % nb)))
                .collect()
        })
    }

    /// Admissible generator values, i.e. the bimodule maps.
    pub fn space(&self) -> &SparseBasis {
        self.space.get_or_init(|| self.compute_space())
    }

    fn compute_space(&self) -> SparseBasis {
        let field = self.field();
        let base = self.domain.base().clone();
        let nb = base.dim();
        let dy = self.codomain.dim();
        let ops = self.ops();
        let op_rows: Vec<Vec<SparseVec>> = ops.iter().map(|m| m.rows()).collect();
        let mut ech = Echelon::new(field, self.ambient());
        let gens = base.algebra_generators();
        let mut terms: HashMap<(u32, u32, u32), Scalar> = HashMap::new();
        for t in 0..self.domain.dim() {
            for &a in &gens {
                for left in [true, false] {
                    terms.clear();
                    let act = if left { self.domain.left(a) } else { self.domain.right(a) };
                    for (s, c) in act.col(t) {
                        for term in &self.expansions[*s as usize] {
                            let e = terms.entry((term.i, term.g, term.j)).or_insert_with(|| field.zero());
                            *e += &(c * &term.coef);
                        }
                    }
                    for term in &self.expansions[t] {
                        let prod = if left {
                            base.product(a, term.i as usize)
                        } else {
                            base.product(term.j as usize, a)
                        };
                        for (m, c) in prod {
                            let key = if left { (*m, term.g, term.j) } else { (term.i, term.g, *m) };
                            let e = terms.entry(key).or_insert_with(|| field.zero());
                            *e -= &(c * &term.coef);
                        }
                    }
                    let mut live: Vec<((u32, u32, u32), Scalar)> =
                        terms.drain().filter(|(_, c)| !c.is_zero()).collect();
                    if live.is_empty() {
                        continue;
                    }
                    live.sort_unstable_by_key(|e| e.0);
                    for y in 0..dy {
                        let mut acc = Accumulator::new();
                        for ((i, g, j), c) in &live {
                            let row = &op_rows[*i as usize * nb + *j as usize][y];
                            for (yp, s) in row {
                                acc.add(*g * dy as u32 + *yp, c * s);
                            }
                        }
                        let r = acc.finish();
                        if !r.is_empty() {
                            ech.insert(r);
                        }
                    }
                }
            }
        }
        ech.into_rref().kernel()
    }

    /// Values `f(e_t)` on every basis vector of the domain.
    pub fn values(&self, coords: &[(u32, Scalar)]) -> Vec<SparseVec> {
        let dy = self.codomain.dim() as u32;
        let nb = self.domain.base().dim();
        let mut per_gen: Vec<SparseVec> = vec![Vec::new(); self.gens.len()];
        for (c, s) in coords {
            per_gen[(*c / dy) as usize].push((*c % dy, s.clone()));
        }
        let ops = self.ops();
        let mut cache: HashMap<(u32, u32, u32), SparseVec> = HashMap::new();
        self.expansions
            .iter()
            .map(|terms| {
                let mut acc = Accumulator::new();
                for term in terms {
                    let v = &per_gen[term.g as usize];
                    if v.is_empty() {
                        continue;
                    }
                    let w = cache
                        .entry((term.i, term.g, term.j))
                        .or_insert_with(|| ops[term.i as usize * nb + term.j as usize].apply(v));
                    acc.add_scaled(&term.coef, w);
                }
                acc.finish()
            })
            .collect()
    }

    /// The map as a matrix `dim Y × dim X`.
    pub fn to_matrix(&self, coords: &[(u32, Scalar)]) -> SparseMatrix {
        SparseMatrix::new(self.field(), self.codomain.dim(), self.values(coords))
    }

    /// Generator coordinates of a map given by its values on all basis vectors.
    pub fn from_values(&self, values: &[SparseVec]) -> SparseVec {
        let dy = self.codomain.dim() as u32;
        let mut out = Vec::new();
        for (g, t) in self.gens.iter().enumerate() {
            for (y, s) in &values[*t as usize] {
                out.push((g as u32 * dy + *y, s.clone()));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_table, group_algebra, matrix_algebra, truncated_polynomial};
    use crate::bimodule::{hom_space, regular_bimodule, Side};

    fn check(x: Bimodule, y: Bimodule) {
        let expected = hom_space(&x, &y, Side::Both).unwrap().dim();
        let fr = HomFrame::new(Arc::new(x), Arc::new(y));
        let sp = fr.space();
        assert_eq!(sp.dim(), expected);
        for v in &sp.vectors {
            let m = fr.to_matrix(v);
            for i in 0..fr.domain.base().dim() {
                assert_eq!(m.compose(fr.domain.left(i)), fr.codomain.left(i).compose(&m));
                assert_eq!(m.compose(fr.domain.right(i)), fr.codomain.right(i).compose(&m));
            }
            assert_eq!(&fr.from_values(&fr.values(v)), v);
        }
    }

    #[test]
    fn frame_matches_flat_hom_space() {
        let q = Field::Rational;
        let m2 = Arc::new(matrix_algebra(q, 2));
        let r = regular_bimodule(m2);
        check(r.clone(), r.direct_sum(&r).unwrap());
        let c2 = Arc::new(group_algebra(q, &cyclic_table(2)).unwrap());
        let r = regular_bimodule(c2);
        check(r.direct_sum(&r).unwrap(), r.clone());
        let d = Arc::new(truncated_polynomial(Field::prime(2).unwrap(), 3).unwrap());
        let r = regular_bimodule(d);
        let t = crate::bimodule::tensor_over_b(Arc::new(r.clone()), Arc::new(r.clone())).unwrap();
        check((**t.result()).clone(), r);
    }
}
