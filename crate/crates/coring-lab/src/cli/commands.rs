//! Command dispatch from a loaded workspace to the checks, producing reports.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::document::{ExtensionSpec, TaskSpec, Workspace};
use super::report::{Report, Status, TaskReport};
use crate::algebra::{AlgebraExtension, AlgebraMap};
use crate::bimodule::{dual_basis, validate_bimodule, Side};
use crate::cochain::{cartier_complex_regular, cohomology_report, relative_hochschild_complex_with, ComplexOptions};
use crate::coring::{dual_coring, right_algebra, sweedler_evaluation, validate_coring, Coring, DualCoring};
use crate::deform::{
    deformation_check, deformation_to_element, mc_check, opposite_deformation, CheckStatus, TruncatedDeformation,
};
use crate::duality::{verify_cochain_isomorphism, verify_gerstenhaber_opposite, verify_strict_morphism, DualityContext};
use crate::entwining::{
    associated_coring, compare_right_algebra, equivariant_theorem, kunneth_check, smash_from_entwining,
    trivial_entwining, trivial_entwining_check, validate_entwining, validate_hopf, Entwining,
};
use crate::error::Error;
use crate::operadic::{check_brace_identities, BraceCheckConfig, BraceStructure, OperadContext, OperadKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Hochschild,
    Cartier,
    RightAlgebra,
    DualCoring,
    VerifyDuality,
    VerifyGerstenhaber,
    Entwine,
    Equivariant,
    BracesCheck,
    McCheck,
}

impl Command {
    pub const ALL: [Command; 11] = [
        Command::Validate,
        Command::Hochschild,
        Command::Cartier,
        Command::RightAlgebra,
        Command::DualCoring,
        Command::VerifyDuality,
        Command::VerifyGerstenhaber,
        Command::Entwine,
        Command::Equivariant,
        Command::BracesCheck,
        Command::McCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Hochschild => "hochschild",
            Command::Cartier => "cartier",
            Command::RightAlgebra => "right-algebra",
            Command::DualCoring => "dual-coring",
            Command::VerifyDuality => "verify-duality",
            Command::VerifyGerstenhaber => "verify-gerstenhaber",
            Command::Entwine => "entwine",
            Command::Equivariant => "equivariant",
            Command::BracesCheck => "braces-check",
            Command::McCheck => "mc-check",
        }
    }
}

impl FromStr for Command {
    type Err = RunError;
    fn from_str(s: &str) -> Result<Command, RunError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| RunError::Input(format!("unknown command {s:?}")))
    }
}

/// Input problems (exit code 2); mathematical failures are carried by the report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunError {
    Input(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Input(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for RunError {}

/// Command-line parameters; `None` falls back to the task entry, then the default.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub extension: Option<String>,
    pub coring: Option<String>,
    pub entwining: Option<String>,
    pub deformation: Option<String>,
    pub max_degree: Option<usize>,
    pub samples: Option<usize>,
    pub max_arity: Option<usize>,
    pub structure: Option<String>,
    pub seed: u64,
    pub max_space: usize,
    pub timing: bool,
}

pub const DEFAULT_MAX_DEGREE: usize = 3;
pub const DEFAULT_SAMPLES: usize = 50;
pub const DEFAULT_MAX_ARITY: usize = 3;
const MAX_RESULT_DIM: usize = 1024;

/// Resolved parameters of one task.
struct Job {
    id: String,
    target: String,
    max_degree: usize,
    samples: usize,
    max_arity: usize,
    structure: BraceStructure,
    stream: u64,
}

fn parse_structure(s: Option<&str>) -> Result<BraceStructure, RunError> {
    match s.unwrap_or("standard") {
        "standard" => Ok(BraceStructure::Standard),
        "transpose" => Ok(BraceStructure::Transpose),
        other => Err(RunError::Input(format!("structure must be \"standard\" or \"transpose\", found {other:?}"))),
    }
}

/// Which object kind a command targets.
fn target_kind(cmd: Command) -> &'static str {
    match cmd {
        Command::Validate => "object",
        Command::Hochschild | Command::DualCoring => "extension",
        Command::Cartier | Command::RightAlgebra | Command::VerifyDuality | Command::VerifyGerstenhaber => "coring",
        Command::Entwine | Command::Equivariant => "entwining",
        Command::BracesCheck => "extension or coring",
        Command::McCheck => "deformation",
    }
}

fn task_target(cmd: Command, t: &TaskSpec) -> Option<String> {
    match cmd {
        Command::Hochschild | Command::DualCoring => t.extension.clone(),
        Command::Cartier | Command::RightAlgebra | Command::VerifyDuality | Command::VerifyGerstenhaber => {
            t.coring.clone()
        }
        Command::Entwine | Command::Equivariant => t.entwining.clone(),
        Command::BracesCheck => t.extension.clone().map(|e| format!("extension:{e}")).or(t.coring.clone().map(|c| format!("coring:{c}"))),
        Command::McCheck => t.deformation.clone(),
        Command::Validate => None,
    }
}

fn jobs(cmd: Command, ws: &Workspace, o: &RunOptions) -> Result<Vec<Job>, RunError> {
    let make = |id: String, target: String, t: Option<&TaskSpec>, stream: u64| -> Result<Job, RunError> {
        Ok(Job {
            id,
            target,
            max_degree: o.max_degree.or(t.and_then(|t| t.max_degree)).unwrap_or(DEFAULT_MAX_DEGREE),
            samples: o.samples.or(t.and_then(|t| t.samples)).unwrap_or(DEFAULT_SAMPLES),
            max_arity: o.max_arity.or(t.and_then(|t| t.max_arity)).unwrap_or(DEFAULT_MAX_ARITY),
            structure: parse_structure(o.structure.as_deref().or(t.and_then(|t| t.structure.as_deref())))?,
            stream,
        })
    };
    if cmd == Command::Validate {
        return ws
            .objects()
            .into_iter()
            .enumerate()
            .map(|(i, (kind, id))| make(format!("{kind}:{id}"), format!("{kind}:{id}"), None, i as u64))
            .collect();
    }
    let flag = match cmd {
        Command::Hochschild | Command::DualCoring => o.extension.clone(),
        Command::Cartier | Command::RightAlgebra | Command::VerifyDuality | Command::VerifyGerstenhaber => {
            o.coring.clone()
        }
        Command::Entwine | Command::Equivariant => o.entwining.clone(),
        Command::BracesCheck => o
            .extension
            .clone()
            .map(|e| format!("extension:{e}"))
            .or(o.coring.clone().map(|c| format!("coring:{c}"))),
        Command::McCheck => o.deformation.clone(),
        Command::Validate => None,
    };
    if let Some(target) = flag {
        return Ok(vec![make(format!("{}:{target}", cmd.name()), target, None, 0)?]);
    }
    let tasks: Vec<&TaskSpec> = ws.raw.tasks.iter().filter(|t| t.command == cmd.name()).collect();
    if !tasks.is_empty() {
        return tasks
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                let target = task_target(cmd, t)
                    .ok_or_else(|| RunError::Input(format!("task {:?} names no {}", t.id, target_kind(cmd))))?;
                make(t.id.clone(), target, Some(t), i as u64)
            })
            .collect();
    }
    let all: Vec<String> = match cmd {
        Command::Hochschild | Command::DualCoring => ws.extensions.keys().cloned().collect(),
        Command::Cartier | Command::RightAlgebra | Command::VerifyDuality | Command::VerifyGerstenhaber => {
            ws.corings.keys().cloned().collect()
        }
        Command::Entwine | Command::Equivariant => ws.entwinings.keys().cloned().collect(),
        Command::BracesCheck => ws
            .extensions
            .keys()
            .map(|e| format!("extension:{e}"))
            .chain(ws.corings.keys().map(|c| format!("coring:{c}")))
            .collect(),
        Command::McCheck => ws.deformations.keys().cloned().collect(),
        Command::Validate => Vec::new(),
    };
    if all.is_empty() {
        return Err(RunError::Input(format!("the document has no {} for {}", target_kind(cmd), cmd.name())));
    }
    all.into_iter()
        .enumerate()
        .map(|(i, t)| make(format!("{}:{t}", cmd.name()), t, None, i as u64))
        .collect()
}

/// Errors that mean the input cannot be processed as asked.
fn input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::DegreeCapExceeded { .. } | Error::DegreeOutOfRange { .. } | Error::Incompatible(_) | Error::Lin(_)
    )
}

pub fn run(cmd: Command, document: &str, ws: &Workspace, o: &RunOptions) -> Result<Report, RunError> {
    let start = Instant::now();
    let opts = ComplexOptions { max_space: o.max_space };
    let mut tasks = Vec::new();
    for job in jobs(cmd, ws, o)? {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
        rng.set_stream(job.stream);
        let mut rep = TaskReport::new(&job.id, &job.target);
        let r = dispatch(cmd, ws, &job, &opts, &mut rng, &mut rep);
        if let Err(e) = r {
            if input_error(&e) {
                return Err(RunError::Input(format!("{}: {e}", job.id)));
            }
            rep.check("computation completes", "-", false, e.to_string());
        }
        tasks.push(rep.finish());
    }
    let status = Status::from_bool(tasks.iter().all(|t| t.status == Status::Pass));
    Ok(Report {
        tool: "coring-lab".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: cmd.name().into(),
        document: document.into(),
        field: ws.field.label(),
        seed: o.seed,
        rng: "ChaCha8, one stream per task in task order".into(),
        max_space: o.max_space,
        status,
        tasks,
        timing_ms: o.timing.then(|| start.elapsed().as_millis()),
    })
}

fn lookup<'a, T>(map: &'a std::collections::BTreeMap<String, T>, kind: &str, id: &str) -> Result<&'a T, Error> {
    map.get(id)
        .ok_or_else(|| Error::Incompatible(format!("no {kind} named {id:?} in the document")))
}

fn dispatch(
    cmd: Command,
    ws: &Workspace,
    job: &Job,
    opts: &ComplexOptions,
    rng: &mut ChaCha8Rng,
    rep: &mut TaskReport,
) -> crate::Result<()> {
    match cmd {
        Command::Validate => validate(ws, &job.target, rep),
        Command::Hochschild => hochschild(ws, job, opts, rep),
        Command::Cartier => {
            let c = lookup(&ws.corings, "coring", &job.target)?;
            cartier(c.clone(), job, opts, rep)
        }
        Command::RightAlgebra => {
            let c = lookup(&ws.corings, "coring", &job.target)?;
            right_algebra_task(c, ws.dual_corings.get(&job.target), rep)
        }
        Command::DualCoring => {
            let ext = lookup(&ws.extensions, "extension", &job.target)?;
            let dc = dual_coring(ext)?;
            validate_coring(&dc.coring)?;
            rep.check("dual coring validates", "Prop-dualcoring", true, format!("dimension {}", dc.coring.dim()));
            right_algebra_task(&dc.coring.clone(), Some(&dc), rep)
        }
        Command::VerifyDuality => {
            let c = lookup(&ws.corings, "coring", &job.target)?;
            verify_duality(c.clone(), job, opts, rng, rep)
        }
        Command::VerifyGerstenhaber => {
            let c = lookup(&ws.corings, "coring", &job.target)?;
            verify_gerstenhaber(c.clone(), job, opts, rng, rep)
        }
        Command::Entwine => entwine(lookup(&ws.entwinings, "entwining", &job.target)?, rep),
        Command::Equivariant => equivariant(lookup(&ws.entwinings, "entwining", &job.target)?, job, opts, rep),
        Command::BracesCheck => braces(ws, job, opts, rng, rep),
        Command::McCheck => mc(lookup(&ws.deformations, "deformation", &job.target)?, rep),
    }
}

fn validate(ws: &Workspace, target: &str, rep: &mut TaskReport) -> crate::Result<()> {
    let (kind, id) = target.split_once(':').unwrap_or(("", target));
    let (tag, detail) = match kind {
        "algebra" => ("Def-algebra", format!("dimension {}", ws.algebras[id].dim())),
        "coalgebra" => ("Def-coalgebra", format!("dimension {}", ws.coalgebras[id].dim())),
        "hopf_algebra" => {
            validate_hopf(&ws.hopf_algebras[id])?;
            ("Def-Hopf", format!("dimension {}", ws.hopf_algebras[id].dim()))
        }
        "extension" => {
            let e = &ws.extensions[id];
            ("Def-extension", format!("{} in {}", e.sub().dim(), e.big().dim()))
        }
        "bimodule" => {
            validate_bimodule(&ws.bimodules[id])?;
            ("Def-bimodule", format!("dimension {}", ws.bimodules[id].dim()))
        }
        "coring" => {
            validate_coring(&ws.corings[id])?;
            ("Def-coring", format!("dimension {}", ws.corings[id].dim()))
        }
        "entwining" => {
            validate_entwining(&ws.entwinings[id])?;
            ("Def-entwining", String::new())
        }
        "deformation" => ("Def-deformation", format!("order {}", ws.deformations[id].order())),
        _ => ("-", String::new()),
    };
    rep.check("validates", tag, true, detail);
    Ok(())
}

fn truncated(mut v: Vec<usize>, n: usize) -> Vec<usize> {
    v.truncate(n);
    v
}

fn hochschild(ws: &Workspace, job: &Job, opts: &ComplexOptions, rep: &mut TaskReport) -> crate::Result<()> {
    let ext = lookup(&ws.extensions, "extension", &job.target)?;
    let n = job.max_degree;
    let cx = relative_hochschild_complex_with(ext, Arc::new(crate::bimodule::regular_bimodule(ext.big().clone())), n + 1, opts)?;
    let dims = truncated(cohomology_report(&cx)?.dims, n + 1);
    rep.table("HH", &dims);
    rep.table("cochains", &truncated(cx.space_dims(), n + 1));
    rep.check("d∘d = 0", "Def-relativeHochschild", cx.verify_square_zero(), "");
    if let Some(ExtensionSpec::Tensor { factors }) = ws.raw.extensions.get(&job.target) {
        if let [a, b] = factors.as_slice() {
            let k = kunneth_check(&ws.extensions[a], &ws.extensions[b], n, opts)?;
            rep.check(
                "tensor dims are the convolution of factor dims",
                "Thm-tensorDecomp",
                k.ok(),
                format!("{:?} * {:?} = {:?}, found {:?}", k.first, k.second, k.convolution, k.tensor),
            );
        }
    }
    Ok(())
}

fn cartier(c: Arc<Coring>, job: &Job, opts: &ComplexOptions, rep: &mut TaskReport) -> crate::Result<()> {
    let n = job.max_degree;
    let cx = cartier_complex_regular(c, n + 1, opts)?;
    let dims = truncated(cohomology_report(&cx)?.dims, n + 1);
    rep.table("H_Ca", &dims);
    rep.table("cochains", &truncated(cx.space_dims(), n + 1));
    rep.check("d∘d = 0", "Def-Cartier", cx.verify_square_zero(), "");
    Ok(())
}

fn right_algebra_task(c: &Coring, dc: Option<&DualCoring>, rep: &mut TaskReport) -> crate::Result<()> {
    let ra = right_algebra(c)?;
    rep.convention_flags.push(ra.convention_flag.label());
    rep.convention_flags.extend(ra.convention_flag.validated.iter().map(|v| format!("validated {v}")));
    rep.check(
        "right algebra with base embedding",
        "Thm-rightalgebra",
        true,
        format!("dim L = dim R = {}", ra.right_algebra.dim()),
    );
    rep.info(
        "left finitely generated projective",
        "Lemma-fingenproj",
        dual_basis(c.carrier().clone(), Side::Left).is_ok(),
        "",
    );
    if let Some(dc) = dc {
        let ev = sweedler_evaluation(dc, &ra)?;
        let iso = AlgebraMap::new(dc.extension.big().clone(), ra.left_dual_algebra.clone(), ev)
            .map(|m| m.is_isomorphism())
            .unwrap_or(false);
        rep.check(
            "evaluation A → L is an algebra isomorphism (R ≅ A^op)",
            "Thm-rightalgebra",
            iso,
            "",
        );
    }
    Ok(())
}

fn verify_duality(
    c: Arc<Coring>,
    job: &Job,
    opts: &ComplexOptions,
    rng: &mut ChaCha8Rng,
    rep: &mut TaskReport,
) -> crate::Result<()> {
    let n = job.max_degree;
    let mut ctx = DualityContext::new(c, n + 1, opts)?;
    let iso = verify_cochain_isomorphism(&ctx, n + 1)?;
    rep.check("left finitely generated projective", "Lemma-fingenproj", iso.applicable, "");
    if !iso.applicable {
        rep.note("rop is only defined for left finitely generated projective corings");
        return Ok(());
    }
    rep.table("H_Ca", &iso.cartier_cohomology);
    rep.table("HH(L|B)", &iso.hochschild_cohomology);
    for (k, g) in iso.gamma_invertible.iter().enumerate() {
        rep.check(&format!("gamma^({}) invertible", k + 1), "Thm-extduality", *g, "");
    }
    for d in &iso.degrees {
        rep.check(
            &format!("rop invertible in degree {}", d.degree),
            "Thm-coringtoalg",
            d.invertible,
            format!("{} → {}", d.cartier_dim, d.hochschild_dim),
        );
    }
    rep.check(
        "cohomology dimensions agree",
        "Thm-coringtoalg",
        iso.cartier_cohomology == iso.hochschild_cohomology,
        "",
    );
    let s = verify_strict_morphism(&mut ctx, job.max_arity.min(n + 1), job.samples, MAX_RESULT_DIM, rng)?;
    rep.tally(&s.partial_compositions, "Lemma-compAlg");
    rep.tally(&s.total_compositions, "Lemma-compAlg");
    rep.tally(&s.braces, "Prop-endopRight");
    rep.tally(&s.cup, "Prop-endopRight");
    rep.check("rop(Δ) = μ", "Prop-endopRight", s.multiplication, "");
    rep.check("rop preserves units", "Prop-endopRight", s.units, "");
    for d in &s.differentials {
        rep.check(
            &format!("rop(m1 f) = m1(rop f) in degree {}", d.degree),
            "Thm-coringtoalg",
            d.b_infinity,
            "",
        );
        rep.info(
            &format!("rop(d_Ca f) = d_Hoch(rop f) in degree {}", d.degree),
            "Thm-coringtoalg",
            d.literal,
            if d.degree_signed { "holds up to (-1)^|f|" } else { "" },
        );
    }
    Ok(())
}

fn verify_gerstenhaber(
    c: Arc<Coring>,
    job: &Job,
    opts: &ComplexOptions,
    rng: &mut ChaCha8Rng,
    rep: &mut TaskReport,
) -> crate::Result<()> {
    let n = job.max_degree;
    let ctx = DualityContext::new(c, n + 1, opts)?;
    if !ctx.is_left_projective() {
        rep.check("left finitely generated projective", "Lemma-fingenproj", false, "");
        return Ok(());
    }
    let g = verify_gerstenhaber_opposite(&ctx, n, job.samples, rng)?;
    rep.table("H_Ca", &g.cartier_cohomology);
    rep.tally(&g.cup, "Cor-B-infty");
    rep.tally(&g.bracket, "Cor-B-infty");
    rep.check(
        "transpose invertible on cochains",
        "Def-trBinfinity",
        g.transpose_invertible.iter().all(|b| *b),
        format!("{:?}", g.transpose_invertible),
    );
    rep.check("T∘m1 = ±m1∘T", "Def-trBinfinity", g.transpose_m1.is_uniform(), format!("{:?}", g.transpose_m1));
    rep.check("T(a{b}) = ±(Ta){Tb}^tr", "Def-trBinfinity", g.transpose_braces.is_uniform(), format!("{:?}", g.transpose_braces));
    rep.check("T m2 = ±m2^tr(T, T)", "Def-trBinfinity", g.transpose_m2.is_uniform(), format!("{:?}", g.transpose_m2));
    rep.check("degree-zero classes", "Cor-B-infty", g.degree_zero, "");
    rep.info("T is strict onto the transpose structure", "Def-trBinfinity", g.transpose_strict(), "");
    rep.info(
        "T[x,y] = [Tx,Ty]^op",
        "Def-opBinfinity",
        g.opposite_bracket.ok(),
        format!("{} passed, {} failed", g.opposite_bracket.passed, g.opposite_bracket.failed),
    );
    Ok(())
}

fn entwine(e: &Entwining, rep: &mut TaskReport) -> crate::Result<()> {
    let c = associated_coring(e)?;
    validate_coring(&c)?;
    rep.check("associated coring validates", "Def-associatedcoring", true, format!("dimension {}", c.dim()));
    let swap = trivial_entwining(e.alg.clone(), e.coalg.clone())?;
    if swap.psi_matrix() == e.psi_matrix() {
        rep.note("ψ is the swap");
    }
    let cmp = compare_right_algebra(e)?;
    rep.check("explicit dual basis of size dim C", "Lemma-fingenproj", cmp.explicit_dual_basis, "");
    rep.check(
        "R ≅ Hom_ψ(C,A) through φ ↦ φ(1⊗−)",
        "Lemma-rightalgebraent",
        cmp.right_algebra_iso.as_ref().is_some_and(AlgebraMap::is_isomorphism),
        "",
    );
    let s = smash_from_entwining(e)?;
    rep.check("Φ satisfies the smash axioms", "Lemma-smashproduct", true, format!("dimension {}", s.smash.dim()));
    rep.check("θ: (C^∨)^op # A → Hom_ψ(C,A) is an algebra isomorphism", "Lemma-smashproduct", s.theta_is_iso(), "");
    rep.info(
        "θ: (C^∨)^op # A → Hom_ψ(C,A)^op is an algebra isomorphism",
        "Lemma-smashproduct",
        s.theta_is_anti_iso(),
        "",
    );
    Ok(())
}

fn equivariant(e: &Entwining, job: &Job, opts: &ComplexOptions, rep: &mut TaskReport) -> crate::Result<()> {
    let n = job.max_degree;
    let r = equivariant_theorem(e, n, opts)?;
    rep.table("H_psi-e", &r.equivariant);
    rep.table("HH(Hom_psi|A^op)", &r.convolution_hochschild);
    rep.check(
        "equivariant dims = HH of the twisted convolution algebra",
        "Thm-equivariantcohomology",
        r.dims_agree(),
        "",
    );
    rep.check("rop is a cochain isomorphism", "Thm-equivariantcohomology", r.cochain_iso.ok(), "");
    rep.check("R ≅ Hom_ψ(C,A)", "Lemma-rightalgebraent", r.sweedler.ok(), "");
    let swap = trivial_entwining(e.alg.clone(), e.coalg.clone())?;
    if swap.psi_matrix() == e.psi_matrix() {
        let t = trivial_entwining_check(e.alg.clone(), e.coalg.clone(), n, opts)?;
        rep.table("H_Ca(C)", &t.coalgebra_cartier);
        rep.check(
            "H_psi-e = H_Ca(C) ⊗ Z(A) dimensionwise",
            "Prop-trivialentwining",
            t.ok(),
            format!("dim Z(A) = {}", t.center_dim),
        );
        rep.info(
            "H_psi-e = H_Ca(C) ⊗ A dimensionwise",
            "Prop-trivialentwining",
            t.holds_with_algebra(),
            format!("dim A = {}", t.algebra_dim),
        );
    }
    Ok(())
}

fn braces(ws: &Workspace, job: &Job, opts: &ComplexOptions, rng: &mut ChaCha8Rng, rep: &mut TaskReport) -> crate::Result<()> {
    let (kind, id) = job.target.split_once(':').unwrap_or(("extension", job.target.as_str()));
    let mut ctx = match kind {
        "coring" => OperadContext::coendomorphism(lookup(&ws.corings, "coring", id)?.clone(), job.max_arity, opts)?,
        _ => {
            let ext: &AlgebraExtension = lookup(&ws.extensions, "extension", id)?;
            OperadContext::endomorphism(ext, job.max_arity, opts)?
        }
    };
    let tag = if ctx.kind() == OperadKind::End { "Thm-OperadB" } else { "Prop-CartierBinfinity" };
    let cfg = BraceCheckConfig {
        max_arity: job.max_arity,
        samples: job.samples,
        max_result_dim: MAX_RESULT_DIM,
        structure: job.structure,
    };
    let r = check_brace_identities(&mut ctx, &cfg, rng)?;
    rep.note(format!("structure {:?}, {} samples per identity, arity ≤ {}", job.structure, job.samples, job.max_arity));
    for t in &r.tallies {
        rep.tally(t, tag);
    }
    rep.check("m{m} = 0", tag, r.multiplication_square_zero, "");
    let expected = if r.sign_exponent == 1 { "d = (-1)^|f| [m, f]" } else { "d = [m, f]" };
    rep.check(
        &format!("{expected} on full cochain spaces"),
        tag,
        r.differential_matches_context(),
        format!("degrees 0..{}", r.differential_degrees.len()),
    );
    rep.info(
        "d = (-1)^|f| [m, f] on full cochain spaces",
        tag,
        r.twisted_differential_everywhere(),
        r.differential_degrees
            .iter()
            .map(|d| format!("{}:{}", d.degree, if d.twisted { "y" } else { "n" }))
            .collect::<Vec<_>>()
            .join(" "),
    );
    Ok(())
}

fn mc(d: &TruncatedDeformation, rep: &mut TaskReport) -> crate::Result<()> {
    let st = deformation_check(d);
    let label = |s: CheckStatus| match s {
        CheckStatus::Ok => "ok".to_string(),
        CheckStatus::Failure(k) => format!("fails at order {k}"),
    };
    rep.info(
        &format!("μ_t associative mod t^{}", d.order() + 1),
        "Prop-deformationMC",
        st.is_ok(),
        label(st),
    );
    let op = opposite_deformation(d)?;
    let st_op = deformation_check(&op);
    rep.check("opposite deformation has the same status", "Prop-opMC", st == st_op, label(st_op));
    if d.extension().field().characteristic() == 2 {
        rep.note("characteristic 2: the Maurer-Cartan equation needs 1/2, comparison skipped");
        return Ok(());
    }
    let ctx = OperadContext::endomorphism(d.extension(), 3, &ComplexOptions::default())?;
    let x = deformation_to_element(&ctx, d)?;
    let mc_st = mc_check(&ctx, &x)?;
    rep.check("Maurer-Cartan status equals deformation status", "Prop-deformationMC", mc_st == st, label(mc_st));
    Ok(())
}
