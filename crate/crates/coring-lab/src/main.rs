use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use coring_lab::cli::{self, Command, RunError, RunOptions};

#[derive(Parser)]
#[command(name = "coring-lab", version, about = "Exact checks for relative Hochschild and Cartier cohomology")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Load the document and validate every object.
    Validate(Common),
    /// Relative Hochschild cohomology of an extension.
    Hochschild(Common),
    /// Cartier cohomology of a coring with coefficients in itself.
    Cartier(Common),
    /// Left dual and right algebra of a coring.
    RightAlgebra(Common),
    /// Dual coring of an extension and its evaluation isomorphism.
    DualCoring(Common),
    /// Compare Cartier cochains with Hochschild cochains of the left dual.
    VerifyDuality(Common),
    /// Cup and bracket compatibility, transpose and opposite structures.
    VerifyGerstenhaber(Common),
    /// Associated coring, twisted convolution algebra and smash product.
    Entwine(Common),
    /// Equivariant cohomology of an entwining.
    Equivariant(Common),
    /// Sampled brace identities on End or CoEnd.
    BracesCheck(Common),
    /// Deformation and Maurer-Cartan agreement.
    McCheck(Common),
}

#[derive(Args)]
struct Common {
    /// Workspace document (JSON).
    document: PathBuf,
    /// Write the structured report here.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    max_arity: Option<usize>,
    /// standard or transpose
    #[arg(long)]
    structure: Option<String>,
    #[arg(long)]
    extension: Option<String>,
    #[arg(long)]
    coring: Option<String>,
    #[arg(long)]
    entwining: Option<String>,
    #[arg(long)]
    deformation: Option<String>,
    /// Include wall-clock time in the report (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
}

impl Cmd {
    fn split(self) -> (Command, Common) {
        match self {
            Cmd::Validate(c) => (Command::Validate, c),
            Cmd::Hochschild(c) => (Command::Hochschild, c),
            Cmd::Cartier(c) => (Command::Cartier, c),
            Cmd::RightAlgebra(c) => (Command::RightAlgebra, c),
            Cmd::DualCoring(c) => (Command::DualCoring, c),
            Cmd::VerifyDuality(c) => (Command::VerifyDuality, c),
            Cmd::VerifyGerstenhaber(c) => (Command::VerifyGerstenhaber, c),
            Cmd::Entwine(c) => (Command::Entwine, c),
            Cmd::Equivariant(c) => (Command::Equivariant, c),
            Cmd::BracesCheck(c) => (Command::BracesCheck, c),
            Cmd::McCheck(c) => (Command::McCheck, c),
        }
    }
}

fn execute(cmd: Command, c: Common) -> Result<bool, RunError> {
    let max_space = cli::max_space_from_env()?;
    let ws = cli::load_document(&c.document).map_err(|e| RunError::Input(e.to_string()))?;
    let opts = RunOptions {
        extension: c.extension,
        coring: c.coring,
        entwining: c.entwining,
        deformation: c.deformation,
        max_degree: c.max_degree,
        samples: c.samples,
        max_arity: c.max_arity,
        structure: c.structure,
        seed: c.seed,
        max_space,
        timing: c.timing,
    };
    let report = cli::run(cmd, &c.document.display().to_string(), &ws, &opts)?;
    print!("{}", report.render());
    if let Some(path) = c.json {
        std::fs::write(&path, report.to_json())
            .map_err(|e| RunError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let (cmd, common) = args.command.split();
    match execute(cmd, common) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
