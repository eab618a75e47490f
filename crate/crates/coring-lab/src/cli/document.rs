//! Workspace documents: JSON files naming algebras, coalgebras, extensions,
//! bimodules, corings, entwinings and deformations. Scalars are JSON integers
//! or strings such as `"-3/4"`; matrices are row-major.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::algebra::{
    cyclic_table, diagonal, field_algebra, group_algebra, lower_triangular, matrix_algebra, opposite, symmetric_table,
    tensor_algebra, truncated_polynomial, upper_triangular, Algebra, AlgebraExtension,
};
use crate::bimodule::{regular_bimodule, Bimodule};
use crate::coring::{dual_coring, trivial_coring, Coring, DualCoring};
use crate::deform::TruncatedDeformation;
use crate::entwining::{
    associated_coring, coalgebra_coring, dual_coalgebra, group_like_coalgebra, trivial_entwining, yd_entwining,
    Coalgebra, Entwining, HopfAlgebra,
};
use crate::exactlin::sparse::{self, SparseVec};
use crate::exactlin::{Field, Matrix, Scalar};

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ScalarInput {
    Int(i64),
    Text(String),
}

type RawMatrix = Vec<Vec<ScalarInput>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AlgebraSpec {
    /// `products[i][j]` lists the coordinates of `e_i e_j`.
    Structure {
        dim: usize,
        products: Vec<Vec<Vec<ScalarInput>>>,
        unit: Vec<ScalarInput>,
    },
    Field,
    TruncatedPolynomial { n: usize },
    Matrix { n: usize },
    UpperTriangular { n: usize },
    LowerTriangular { n: usize },
    Diagonal { n: usize },
    Group { table: Vec<Vec<usize>> },
    Cyclic { n: usize },
    Symmetric { n: usize },
    Opposite { of: String },
    Tensor { factors: Vec<String> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CoalgebraSpec {
    /// `comult[i][j][k]` is the coefficient of `e_j ⊗ e_k` in `Δ(e_i)`.
    Structure {
        dim: usize,
        comult: Vec<Vec<Vec<ScalarInput>>>,
        counit: Vec<ScalarInput>,
    },
    Dual { of: String },
    GroupLike { n: usize },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum HopfSpec {
    Group { table: Vec<Vec<usize>> },
    Cyclic { n: usize },
    Symmetric { n: usize },
    Structure {
        algebra: String,
        coalgebra: String,
        antipode: RawMatrix,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ExtensionSpec {
    /// `embed` has `dim big` rows and `dim sub` columns.
    Structure { sub: String, big: String, embed: RawMatrix },
    OverField { big: String },
    Identity { algebra: String },
    Tensor { factors: Vec<String> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BimoduleSpec {
    /// One action matrix per basis vector of the base.
    Structure {
        base: String,
        left: Vec<RawMatrix>,
        right: Vec<RawMatrix>,
    },
    Regular { base: String },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CoringSpec {
    /// `delta[c]` has `dim²` entries at `x*dim + y` for `e_x ⊗ e_y`; `counit[c]` lies in the base.
    Structure {
        carrier: String,
        delta: Vec<Vec<ScalarInput>>,
        counit: Vec<Vec<ScalarInput>>,
    },
    Trivial { base: String },
    DualCoring { extension: String },
    Coalgebra { coalgebra: String },
    Associated { entwining: String },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EntwiningSpec {
    /// `psi` maps `C ⊗ A` (column `c*dim A + a`) to `A ⊗ C` (row `a*dim C + c`).
    Structure {
        algebra: String,
        coalgebra: String,
        psi: RawMatrix,
    },
    Trivial { algebra: String, coalgebra: String },
    Yd { hopf: String },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationSpec {
    pub extension: String,
    /// `corrections[i][p][q]` lists the coordinates of `μ_{i+1}(e_p, e_q)`.
    pub corrections: Vec<Vec<Vec<Vec<ScalarInput>>>>,
}

/// A command with its target and parameters, run when the command line names no target.
#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub id: String,
    pub command: String,
    pub extension: Option<String>,
    pub coring: Option<String>,
    pub entwining: Option<String>,
    pub deformation: Option<String>,
    pub max_degree: Option<usize>,
    pub samples: Option<usize>,
    pub max_arity: Option<usize>,
    pub structure: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    /// `"Q"` or `"GF(p)"`.
    pub field: String,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default)]
    pub coalgebras: BTreeMap<String, CoalgebraSpec>,
    #[serde(default)]
    pub hopf_algebras: BTreeMap<String, HopfSpec>,
    #[serde(default)]
    pub extensions: BTreeMap<String, ExtensionSpec>,
    #[serde(default)]
    pub bimodules: BTreeMap<String, BimoduleSpec>,
    #[serde(default)]
    pub corings: BTreeMap<String, CoringSpec>,
    #[serde(default)]
    pub entwinings: BTreeMap<String, EntwiningSpec>,
    #[serde(default)]
    pub deformations: BTreeMap<String, DeformationSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadError {
    Io(String),
    Parse(String),
    Unresolved { kind: &'static str, id: String },
    Cycle { kind: &'static str, id: String },
    Validation { object: String, message: String },
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(m) => write!(f, "cannot read document: {m}"),
            LoadError::Parse(m) => write!(f, "parse error: {m}"),
            LoadError::Unresolved { kind, id } => write!(f, "parse error: unresolved {kind} {id:?}"),
            LoadError::Cycle { kind, id } => write!(f, "parse error: {kind} {id:?} refers to itself"),
            LoadError::Validation { object, message } => write!(f, "validation error in {object}: {message}"),
        }
    }
}

/// All load errors of a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadErrors(pub Vec<LoadError>);

impl fmt::Display for LoadErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for LoadErrors {}

/// A loaded document; every object has been built and validated.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub field: Field,
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub coalgebras: BTreeMap<String, Arc<Coalgebra>>,
    pub hopf_algebras: BTreeMap<String, HopfAlgebra>,
    pub extensions: BTreeMap<String, AlgebraExtension>,
    pub bimodules: BTreeMap<String, Arc<Bimodule>>,
    pub corings: BTreeMap<String, Arc<Coring>>,
    /// Corings built as right dual corings, kept with their construction data.
    pub dual_corings: BTreeMap<String, DualCoring>,
    pub entwinings: BTreeMap<String, Entwining>,
    pub deformations: BTreeMap<String, TruncatedDeformation>,
    pub raw: RawDocument,
}

impl Workspace {
    /// `(kind, id)` for every object, in document order by kind.
    pub fn objects(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        out.extend(self.algebras.keys().map(|k| ("algebra", k.clone())));
        out.extend(self.coalgebras.keys().map(|k| ("coalgebra", k.clone())));
        out.extend(self.hopf_algebras.keys().map(|k| ("hopf_algebra", k.clone())));
        out.extend(self.extensions.keys().map(|k| ("extension", k.clone())));
        out.extend(self.bimodules.keys().map(|k| ("bimodule", k.clone())));
        out.extend(self.corings.keys().map(|k| ("coring", k.clone())));
        out.extend(self.entwinings.keys().map(|k| ("entwining", k.clone())));
        out.extend(self.deformations.keys().map(|k| ("deformation", k.clone())));
        out
    }
}

pub fn parse_field(text: &str) -> Result<Field, LoadError> {
    let t = text.trim();
    match t {
        "Q" | "QQ" | "rational" | "rationals" => return Ok(Field::Rational),
        _ => {}
    }
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| LoadError::Parse(format!("field must be \"Q\" or \"GF(p)\", found {t:?}")))?;
    let p: u64 = inner.trim().parse().map_err(|_| LoadError::Parse(format!("bad prime in {t:?}")))?;
    Field::prime(p).map_err(|e| LoadError::Parse(e.to_string()))
}

pub fn load_document(path: &Path) -> Result<Workspace, LoadErrors> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadErrors(vec![LoadError::Io(format!("{}: {e}", path.display()))]))?;
    load_str(&text)
}

pub fn load_str(text: &str) -> Result<Workspace, LoadErrors> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| LoadErrors(vec![LoadError::Parse(e.to_string())]))?;
    let field = parse_field(&raw.field).map_err(|e| LoadErrors(vec![e]))?;
    let mut b = Builder::new(field, &raw);
    b.build_all();
    if !b.errors.is_empty() {
        return Err(LoadErrors(b.errors));
    }
    Ok(Workspace {
        field,
        algebras: b.algebras.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))).collect(),
        coalgebras: b.coalgebras.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))).collect(),
        hopf_algebras: b.hopf.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))).collect(),
        extensions: b.extensions.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))).collect(),
        bimodules: b.bimodules.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))).collect(),
        corings: b.corings.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))).collect(),
        dual_corings: b.dual_corings,
        entwinings: b.entwinings.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))).collect(),
        deformations: b.deformations.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))).collect(),
        raw,
    })
}

/// Builds objects on demand; `None` in a cache marks an object that failed.
struct Builder<'a> {
    field: Field,
    raw: &'a RawDocument,
    errors: Vec<LoadError>,
    visiting: BTreeSet<(&'static str, String)>,
    algebras: BTreeMap<String, Option<Arc<Algebra>>>,
    coalgebras: BTreeMap<String, Option<Arc<Coalgebra>>>,
    hopf: BTreeMap<String, Option<HopfAlgebra>>,
    extensions: BTreeMap<String, Option<AlgebraExtension>>,
    bimodules: BTreeMap<String, Option<Arc<Bimodule>>>,
    corings: BTreeMap<String, Option<Arc<Coring>>>,
    dual_corings: BTreeMap<String, DualCoring>,
    entwinings: BTreeMap<String, Option<Entwining>>,
    deformations: BTreeMap<String, Option<TruncatedDeformation>>,
}

/// Failure already recorded in `errors`.
struct Failed;

type Built<T> = Result<T, Failed>;

impl<'a> Builder<'a> {
    fn new(field: Field, raw: &'a RawDocument) -> Self {
        Builder {
            field,
            raw,
            errors: Vec::new(),
            visiting: BTreeSet::new(),
            algebras: BTreeMap::new(),
            coalgebras: BTreeMap::new(),
            hopf: BTreeMap::new(),
            extensions: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            corings: BTreeMap::new(),
            dual_corings: BTreeMap::new(),
            entwinings: BTreeMap::new(),
            deformations: BTreeMap::new(),
        }
    }

    fn build_all(&mut self) {
        let raw = self.raw;
        for id in raw.algebras.keys() {
            let _ = self.algebra(id);
        }
        for id in raw.coalgebras.keys() {
            let _ = self.coalgebra(id);
        }
        for id in raw.hopf_algebras.keys() {
            let _ = self.hopf(id);
        }
        for id in raw.extensions.keys() {
            let _ = self.extension(id);
        }
        for id in raw.bimodules.keys() {
            let _ = self.bimodule(id);
        }
        for id in raw.corings.keys() {
            let _ = self.coring(id);
        }
        for id in raw.entwinings.keys() {
            let _ = self.entwining(id);
        }
        for id in raw.deformations.keys() {
            let _ = self.deformation(id);
        }
        for t in &raw.tasks {
            let refs = [
                ("extension", &t.extension, raw.extensions.contains_key(t.extension.as_deref().unwrap_or(""))),
                ("coring", &t.coring, raw.corings.contains_key(t.coring.as_deref().unwrap_or(""))),
                ("entwining", &t.entwining, raw.entwinings.contains_key(t.entwining.as_deref().unwrap_or(""))),
                ("deformation", &t.deformation, raw.deformations.contains_key(t.deformation.as_deref().unwrap_or(""))),
            ];
            for (kind, id, present) in refs {
                if let Some(id) = id {
                    if !present {
                        self.errors.push(LoadError::Unresolved { kind, id: id.clone() });
                    }
                }
            }
        }
    }

    fn invalid<T>(&mut self, kind: &str, id: &str, message: impl fmt::Display) -> Built<T> {
        self.errors.push(LoadError::Validation {
            object: format!("{kind} {id:?}"),
            message: message.to_string(),
        });
        Err(Failed)
    }

    fn scalar(&mut self, kind: &str, id: &str, s: &ScalarInput) -> Built<Scalar> {
        let r = match s {
            ScalarInput::Int(n) => Ok(self.field.from_i64(*n)),
            ScalarInput::Text(t) => self.field.parse(t),
        };
        match r {
            Ok(v) => Ok(v),
            Err(e) => {
                self.errors.push(LoadError::Parse(format!("{kind} {id:?}: {e}")));
                Err(Failed)
            }
        }
    }

    fn vector(&mut self, kind: &str, id: &str, v: &[ScalarInput], len: usize) -> Built<Vec<Scalar>> {
        if v.len() != len {
            self.errors.push(LoadError::Parse(format!("{kind} {id:?}: expected {len} entries, found {}", v.len())));
            return Err(Failed);
        }
        v.iter().map(|s| self.scalar(kind, id, s)).collect()
    }

    fn matrix(&mut self, kind: &str, id: &str, m: &RawMatrix, rows: usize, cols: usize) -> Built<Matrix> {
        if m.len() != rows {
            self.errors.push(LoadError::Parse(format!("{kind} {id:?}: expected {rows} matrix rows, found {}", m.len())));
            return Err(Failed);
        }
        let rows_v = m.iter().map(|r| self.vector(kind, id, r, cols)).collect::<Built<Vec<_>>>()?;
        if rows == 0 {
            return Ok(Matrix::zeros(self.field, 0, cols));
        }
        Matrix::from_rows(self.field, rows_v).or_else(|e| self.invalid(kind, id, e))
    }

    /// Shared cycle guard and cache lookup.
    fn enter(&mut self, kind: &'static str, id: &str, exists: bool) -> Built<()> {
        if !exists {
            self.errors.push(LoadError::Unresolved { kind, id: id.to_string() });
            return Err(Failed);
        }
        if !self.visiting.insert((kind, id.to_string())) {
            self.errors.push(LoadError::Cycle { kind, id: id.to_string() });
            return Err(Failed);
        }
        Ok(())
    }

    fn leave(&mut self, kind: &'static str, id: &str) {
        self.visiting.remove(&(kind, id.to_string()));
    }

    fn algebra(&mut self, id: &str) -> Built<Arc<Algebra>> {
        if let Some(v) = self.algebras.get(id) {
            return v.clone().ok_or(Failed);
        }
        let raw = self.raw;
        self.enter("algebra", id, raw.algebras.contains_key(id))?;
        let r = self.build_algebra(id, &raw.algebras[id]);
        self.leave("algebra", id);
        self.algebras.insert(id.to_string(), r.as_ref().ok().cloned());
        r
    }

    fn build_algebra(&mut self, id: &str, spec: &AlgebraSpec) -> Built<Arc<Algebra>> {
        let f = self.field;
        let k = "algebra";
        let res = match spec {
            AlgebraSpec::Structure { dim, products, unit } => {
                let n = *dim;
                if products.len() != n || products.iter().any(|r| r.len() != n) {
                    self.errors.push(LoadError::Parse(format!("algebra {id:?}: products must be {n}×{n}")));
                    return Err(Failed);
                }
                let mut flat = Vec::with_capacity(n * n);
                for row in products {
                    for v in row {
                        flat.push(sparse::from_dense(&self.vector(k, id, v, n)?));
                    }
                }
                let u = self.vector(k, id, unit, n)?;
                Algebra::from_products(f, n, flat, sparse::from_dense(&u))
            }
            AlgebraSpec::Field => Ok(field_algebra(f)),
            AlgebraSpec::TruncatedPolynomial { n } => truncated_polynomial(f, *n),
            AlgebraSpec::Matrix { n } => Ok(matrix_algebra(f, *n)),
            AlgebraSpec::UpperTriangular { n } => Ok(upper_triangular(f, *n)),
            AlgebraSpec::LowerTriangular { n } => Ok(lower_triangular(f, *n)),
            AlgebraSpec::Diagonal { n } => Ok(diagonal(f, *n)),
            AlgebraSpec::Group { table } => group_algebra(f, table),
            AlgebraSpec::Cyclic { n } => group_algebra(f, &cyclic_table(*n)),
            AlgebraSpec::Symmetric { n } => group_algebra(f, &symmetric_table(*n)),
            AlgebraSpec::Opposite { of } => Ok(opposite(&*self.algebra(of)?)),
            AlgebraSpec::Tensor { factors } => {
                if factors.is_empty() {
                    return self.invalid(k, id, "tensor needs at least one factor");
                }
                let mut acc = (*self.algebra(&factors[0])?).clone();
                for name in &factors[1..] {
                    let next = self.algebra(name)?;
                    acc = match tensor_algebra(&acc, &next) {
                        Ok(a) => a,
                        Err(e) => return self.invalid(k, id, e),
                    };
                }
                Ok(acc)
            }
        };
        match res {
            Ok(a) => Ok(Arc::new(a)),
            Err(e) => self.invalid(k, id, e),
        }
    }

    fn coalgebra(&mut self, id: &str) -> Built<Arc<Coalgebra>> {
        if let Some(v) = self.coalgebras.get(id) {
            return v.clone().ok_or(Failed);
        }
        let raw = self.raw;
        self.enter("coalgebra", id, raw.coalgebras.contains_key(id))?;
        let r = self.build_coalgebra(id, &raw.coalgebras[id]);
        self.leave("coalgebra", id);
        self.coalgebras.insert(id.to_string(), r.as_ref().ok().cloned());
        r
    }

    fn build_coalgebra(&mut self, id: &str, spec: &CoalgebraSpec) -> Built<Arc<Coalgebra>> {
        let f = self.field;
        let k = "coalgebra";
        let res = match spec {
            CoalgebraSpec::Structure { dim, comult, counit } => {
                let n = *dim;
                if comult.len() != n || comult.iter().any(|r| r.len() != n) {
                    self.errors.push(LoadError::Parse(format!("coalgebra {id:?}: comult must be {n}×{n}×{n}")));
                    return Err(Failed);
                }
                let mut d = Vec::with_capacity(n * n * n);
                for plane in comult {
                    for row in plane {
                        d.extend(self.vector(k, id, row, n)?);
                    }
                }
                let eps = self.vector(k, id, counit, n)?;
                Coalgebra::new(f, n, &d, eps)
            }
            CoalgebraSpec::Dual { of } => Ok(dual_coalgebra(&*self.algebra(of)?)),
            CoalgebraSpec::GroupLike { n } => Ok(group_like_coalgebra(f, *n)),
        };
        match res {
            Ok(c) => Ok(Arc::new(c)),
            Err(e) => self.invalid(k, id, e),
        }
    }

    fn hopf(&mut self, id: &str) -> Built<HopfAlgebra> {
        if let Some(v) = self.hopf.get(id) {
            return v.clone().ok_or(Failed);
        }
        let raw = self.raw;
        self.enter("hopf_algebra", id, raw.hopf_algebras.contains_key(id))?;
        let f = self.field;
        let res = match &raw.hopf_algebras[id] {
            HopfSpec::Group { table } => Ok(HopfAlgebra::group(f, table)),
            HopfSpec::Cyclic { n } => Ok(HopfAlgebra::group(f, &cyclic_table(*n))),
            HopfSpec::Symmetric { n } => Ok(HopfAlgebra::group(f, &symmetric_table(*n))),
            HopfSpec::Structure {
                algebra,
                coalgebra,
                antipode,
            } => (|| {
                let a = self.algebra(algebra)?;
                let c = self.coalgebra(coalgebra)?;
                let s = self.matrix("hopf_algebra", id, antipode, a.dim(), a.dim())?;
                Ok(HopfAlgebra::new(a, c, s))
            })(),
        };
        self.leave("hopf_algebra", id);
        let r = match res {
            Ok(Ok(h)) => Ok(h),
            Ok(Err(e)) => self.invalid("hopf_algebra", id, e),
            Err(Failed) => Err(Failed),
        };
        self.hopf.insert(id.to_string(), r.as_ref().ok().cloned());
        r
    }

    fn extension(&mut self, id: &str) -> Built<AlgebraExtension> {
        if let Some(v) = self.extensions.get(id) {
            return v.clone().ok_or(Failed);
        }
        let raw = self.raw;
        self.enter("extension", id, raw.extensions.contains_key(id))?;
        let res = (|| -> Built<crate::Result<AlgebraExtension>> {
            Ok(match &raw.extensions[id] {
                ExtensionSpec::Structure { sub, big, embed } => {
                    let s = self.algebra(sub)?;
                    let b = self.algebra(big)?;
                    let m = self.matrix("extension", id, embed, b.dim(), s.dim())?;
                    AlgebraExtension::new(s, b, m)
                }
                ExtensionSpec::OverField { big } => Ok(AlgebraExtension::over_field(self.algebra(big)?)),
                ExtensionSpec::Identity { algebra } => Ok(AlgebraExtension::identity(self.algebra(algebra)?)),
                ExtensionSpec::Tensor { factors } => {
                    if factors.len() != 2 {
                        return Ok(Err(crate::Error::Incompatible("tensor extension takes two factors".into())));
                    }
                    let a = self.extension(&factors[0])?;
                    let b = self.extension(&factors[1])?;
                    a.tensor(&b)
                }
            })
        })();
        self.leave("extension", id);
        let r = match res {
            Ok(Ok(x)) => Ok(x),
            Ok(Err(e)) => self.invalid("extension", id, e),
            Err(Failed) => Err(Failed),
        };
        self.extensions.insert(id.to_string(), r.as_ref().ok().cloned());
        r
    }

    fn bimodule(&mut self, id: &str) -> Built<Arc<Bimodule>> {
        if let Some(v) = self.bimodules.get(id) {
            return v.clone().ok_or(Failed);
        }
        let raw = self.raw;
        self.enter("bimodule", id, raw.bimodules.contains_key(id))?;
        let res = (|| -> Built<crate::Result<Bimodule>> {
            Ok(match &raw.bimodules[id] {
                BimoduleSpec::Structure { base, left, right } => {
                    let b = self.algebra(base)?;
                    let dim = left.first().or(right.first()).map_or(0, |m| m.len());
                    let l = left.iter().map(|m| self.matrix("bimodule", id, m, dim, dim)).collect::<Built<Vec<_>>>()?;
                    let r = right.iter().map(|m| self.matrix("bimodule", id, m, dim, dim)).collect::<Built<Vec<_>>>()?;
                    Bimodule::new(b, l, r)
                }
                BimoduleSpec::Regular { base } => Ok(regular_bimodule(self.algebra(base)?)),
            })
        })();
        self.leave("bimodule", id);
        let r = match res {
            Ok(Ok(x)) => Ok(Arc::new(x)),
            Ok(Err(e)) => self.invalid("bimodule", id, e),
            Err(Failed) => Err(Failed),
        };
        self.bimodules.insert(id.to_string(), r.as_ref().ok().cloned());
        r
    }

    fn coring(&mut self, id: &str) -> Built<Arc<Coring>> {
        if let Some(v) = self.corings.get(id) {
            return v.clone().ok_or(Failed);
        }
        let raw = self.raw;
        self.enter("coring", id, raw.corings.contains_key(id))?;
        let res = (|| -> Built<crate::Result<Coring>> {
            Ok(match &raw.corings[id] {
                CoringSpec::Structure { carrier, delta, counit } => {
                    let m = self.bimodule(carrier)?;
                    let (n, nb) = (m.dim(), m.base().dim());
                    if delta.len() != n || counit.len() != n {
                        self.errors.push(LoadError::Parse(format!(
                            "coring {id:?}: expected {n} comultiplication and counit values"
                        )));
                        return Err(Failed);
                    }
                    let d = delta
                        .iter()
                        .map(|v| self.vector("coring", id, v, n * n).map(|v| sparse::from_dense(&v)))
                        .collect::<Built<Vec<SparseVec>>>()?;
                    let e = counit
                        .iter()
                        .map(|v| self.vector("coring", id, v, nb).map(|v| sparse::from_dense(&v)))
                        .collect::<Built<Vec<SparseVec>>>()?;
                    Coring::new(m, &d, &e)
                }
                CoringSpec::Trivial { base } => Ok(trivial_coring(self.algebra(base)?)),
                CoringSpec::DualCoring { extension } => {
                    let ext = self.extension(extension)?;
                    dual_coring(&ext).map(|dc| {
                        let c = (*dc.coring).clone();
                        self.dual_corings.insert(id.to_string(), dc);
                        c
                    })
                }
                CoringSpec::Coalgebra { coalgebra } => coalgebra_coring(self.coalgebra(coalgebra)?),
                CoringSpec::Associated { entwining } => associated_coring(&self.entwining(entwining)?),
            })
        })();
        self.leave("coring", id);
        let r = match res {
            Ok(Ok(x)) => Ok(Arc::new(x)),
            Ok(Err(e)) => self.invalid("coring", id, e),
            Err(Failed) => Err(Failed),
        };
        self.corings.insert(id.to_string(), r.as_ref().ok().cloned());
        r
    }

    fn entwining(&mut self, id: &str) -> Built<Entwining> {
        if let Some(v) = self.entwinings.get(id) {
            return v.clone().ok_or(Failed);
        }
        let raw = self.raw;
        self.enter("entwining", id, raw.entwinings.contains_key(id))?;
        let res = (|| -> Built<crate::Result<Entwining>> {
            Ok(match &raw.entwinings[id] {
                EntwiningSpec::Structure { algebra, coalgebra, psi } => {
                    let a = self.algebra(algebra)?;
                    let c = self.coalgebra(coalgebra)?;
                    let d = a.dim() * c.dim();
                    let m = self.matrix("entwining", id, psi, d, d)?;
                    Entwining::new(a, c, &m)
                }
                EntwiningSpec::Trivial { algebra, coalgebra } => {
                    trivial_entwining(self.algebra(algebra)?, self.coalgebra(coalgebra)?)
                }
                EntwiningSpec::Yd { hopf } => yd_entwining(&self.hopf(hopf)?),
            })
        })();
        self.leave("entwining", id);
        let r = match res {
            Ok(Ok(x)) => Ok(x),
            Ok(Err(e)) => self.invalid("entwining", id, e),
            Err(Failed) => Err(Failed),
        };
        self.entwinings.insert(id.to_string(), r.as_ref().ok().cloned());
        r
    }

    fn deformation(&mut self, id: &str) -> Built<TruncatedDeformation> {
        if let Some(v) = self.deformations.get(id) {
            return v.clone().ok_or(Failed);
        }
        let raw = self.raw;
        self.enter("deformation", id, raw.deformations.contains_key(id))?;
        let res = (|| -> Built<crate::Result<TruncatedDeformation>> {
            let spec = &raw.deformations[id];
            let ext = self.extension(&spec.extension)?;
            let n = ext.big().dim();
            let mut corrections = Vec::new();
            for mu in &spec.corrections {
                if mu.len() != n || mu.iter().any(|r| r.len() != n) {
                    self.errors.push(LoadError::Parse(format!("deformation {id:?}: corrections must be {n}×{n}")));
                    return Err(Failed);
                }
                let mut flat = Vec::with_capacity(n * n);
                for row in mu {
                    for v in row {
                        flat.push(sparse::from_dense(&self.vector("deformation", id, v, n)?));
                    }
                }
                corrections.push(flat);
            }
            Ok(TruncatedDeformation::new(ext, corrections))
        })();
        self.leave("deformation", id);
        let r = match res {
            Ok(Ok(x)) => Ok(x),
            Ok(Err(e)) => self.invalid("deformation", id, e),
            Err(Failed) => Err(Failed),
        };
        self.deformations.insert(id.to_string(), r.as_ref().ok().cloned());
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_numbers_document() {
        let w = load_str(
            r#"{"field": "GF(2)",
                "algebras": {"dn": {"type": "truncated_polynomial", "n": 2}},
                "coalgebras": {"dnc": {"type": "dual", "of": "dn"}}}"#,
        )
        .unwrap();
        assert_eq!(w.algebras.len(), 1);
        assert_eq!(w.coalgebras.len(), 1);
    }

    #[test]
    fn non_associative_table_is_a_validation_error() {
        // xy = x, yx = y, y² = 0: (xy)y = x but x(yy) = 0
        let err = load_str(
            r#"{"field": "Q", "algebras": {"bad": {"type": "structure", "dim": 3,
                "products": [[[1,0,0],[0,1,0],[0,0,1]],
                             [[0,1,0],[0,0,0],[0,1,0]],
                             [[0,0,1],[0,0,1],[0,0,0]]],
                "unit": [1,0,0]}}}"#,
        )
        .unwrap_err();
        assert!(matches!(err.0[0], LoadError::Validation { .. }), "{err}");
    }

    #[test]
    fn missing_reference_is_unresolved() {
        let err = load_str(r#"{"field": "Q", "corings": {"c": {"type": "trivial", "base": "nope"}}}"#).unwrap_err();
        assert_eq!(
            err.0,
            vec![LoadError::Unresolved {
                kind: "algebra",
                id: "nope".into()
            }]
        );
    }

    #[test]
    fn self_reference_is_a_cycle() {
        let err = load_str(r#"{"field": "Q", "algebras": {"a": {"type": "opposite", "of": "a"}}}"#).unwrap_err();
        assert!(matches!(err.0[0], LoadError::Cycle { .. }));
    }

    #[test]
    fn rational_strings_parse() {
        let w = load_str(
            r#"{"field": "Q", "algebras": {"k": {"type": "structure", "dim": 1, "products": [[["1"]]], "unit": ["2/2"]}}}"#,
        )
        .unwrap();
        assert_eq!(w.algebras["k"].dim(), 1);
        assert!(parse_field("GF(4)").is_err());
    }
}
