//! The `nsimplex` command line: argument parsing, dispatch and exit codes.
//! Every subcommand produces a [`RunReport`].

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use simplex_core::chain::{Limits, Normalization, SignConvention};
use simplex_core::cocycle::{Cocycle, Potential};
use simplex_core::linalg::Field;
use simplex_core::relation::RMap;
use simplex_core::{format, Error};

mod commands;
pub mod paper;
pub mod report;

pub use report::RunReport;

#[derive(Debug, Parser)]
#[command(name = "nsimplex", version, about = "Set-theoretic n-simplex relations, their homology, cocycles and twisted tetrahedron solutions")]
pub struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Cap on nonzero entries of a boundary matrix.
    #[arg(long, global = true, env = "SIMPLEX_MAX_NNZ")]
    pub max_nnz: Option<u128>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List faces of the N-cube.
    Faces(FacesArgs),
    /// The face graph between n- and (n-1)-faces of I^N.
    Graph {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        arity: usize,
    },
    /// The equation graph on the n-faces of I^{n+1}.
    EquationGraph {
        #[arg(long)]
        arity: usize,
    },
    /// Check that an R-map solves the n-simplex equation.
    Verify {
        #[arg(long)]
        rmap: PathBuf,
        #[arg(long, value_enum, default_value_t = VerifyMode::Consistency)]
        mode: VerifyMode,
        /// Also run the other formulation and require the verdicts to agree.
        #[arg(long)]
        strict: bool,
    },
    /// The permitted coloring of I^N with given absolutely incoming colors.
    Propagate {
        #[arg(long)]
        rmap: PathBuf,
        #[arg(long)]
        dim: usize,
        /// Comma-separated colors in slot order.
        #[arg(long)]
        input: String,
        /// Derive every face from all its n-faces and fail on conflicts.
        #[arg(long)]
        strict: bool,
    },
    /// Homology ranks and Betti numbers.
    Homology(HomologyArgs),
    /// Cohomology ranks, optionally with a cocycle basis.
    Cohomology {
        #[command(flatten)]
        common: HomologyArgs,
        /// Degree whose cocycle space basis is reported.
        #[arg(long)]
        cocycle_degree: Option<usize>,
    },
    /// Multiplicative 3-cocycles.
    Cocycle {
        #[command(subcommand)]
        action: CocycleAction,
    },
    /// The electric solution restricted to residues x = ε mod p in Z/p^k.
    Electric(ElectricArgs),
    /// Quantum tetrahedron equation for (twisted) permutation operators.
    Qte {
        #[command(subcommand)]
        action: QteAction,
    },
    /// Rerun the Z/25 and Z/8 examples and compare with golden values.
    ReproducePaper {
        /// Also write the generated R-maps and cocycles here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Compare the printed d_3/d_4 formulas with every sign convention.
    Audit {
        #[arg(long)]
        rmap: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// Basis elements compared per degree.
        #[arg(long, default_value_t = 20000)]
        samples: usize,
    },
}

#[derive(Debug, Args)]
pub struct FacesArgs {
    #[arg(long)]
    pub dim: usize,
    /// Face dimension to list.
    #[arg(long, required_unless_present = "absolute")]
    pub k: Option<usize>,
    /// List absolutely incoming/outgoing (n-1)-faces instead.
    #[arg(long, value_enum, requires = "arity")]
    pub absolute: Option<Absolute>,
    #[arg(long)]
    pub arity: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Absolute {
    In,
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Consistency,
    Composition,
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    #[arg(long)]
    pub rmap: PathBuf,
    #[arg(long)]
    pub max_dim: usize,
    /// `q` or `fp:<p>`.
    #[arg(long, default_value = "q")]
    pub field: Field,
    /// Quotient by degenerate colorings (`opposite` when given bare).
    #[arg(long, num_args = 0..=1, default_missing_value = "opposite")]
    pub normalized: Option<Normalization>,
    /// `alt`, `paper` or `inpos`.
    #[arg(long, default_value = "alt")]
    pub convention: SignConvention,
    /// Write every boundary matrix as `d_<N>.mtx` into this directory.
    #[arg(long)]
    pub export_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CocycleAction {
    /// Check the multiplicative cocycle condition on all of X^6.
    Check(CocycleFiles),
    /// Solve for a potential ψ with δψ = φ, or certify that none exists.
    Solve {
        #[command(flatten)]
        files: CocycleFiles,
        /// Write the potential here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fixed triples of R where φ is nonzero.
    Obstruct(CocycleFiles),
}

#[derive(Debug, Args)]
pub struct CocycleFiles {
    #[arg(long)]
    pub rmap: PathBuf,
    #[arg(long)]
    pub cocycle: PathBuf,
}

#[derive(Debug, Args)]
pub struct ElectricArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub k: u32,
    /// Square root of -1 mod p (default: the smallest).
    #[arg(long)]
    pub epsilon: Option<u64>,
    #[command(subcommand)]
    pub action: ElectricAction,
}

#[derive(Debug, Subcommand)]
pub enum ElectricAction {
    /// Write the R-map (stdout when no file is given).
    EmitRmap {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write c1_eta<j>.cocycle and c2_eta<j>.cocycle.
    EmitCocycles {
        /// Character index or `all`.
        #[arg(long, default_value = "all")]
        character: CharacterChoice,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// List the characters of the unit group.
    Characters,
    /// Coboundary verdicts for c1 and c2.
    Report {
        #[arg(long, default_value = "all")]
        character: CharacterChoice,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacterChoice {
    All,
    Index(usize),
}

impl std::str::FromStr for CharacterChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(CharacterChoice::All);
        }
        s.parse()
            .map(CharacterChoice::Index)
            .map_err(|_| format!("expected a character index or `all`, got {s:?}"))
    }
}

#[derive(Debug, Subcommand)]
pub enum QteAction {
    /// Compare both sides of Φ₁₂₃Φ₁₄₅Φ₂₄₆Φ₃₅₆ = Φ₃₅₆Φ₂₄₆Φ₁₄₅Φ₁₂₃.
    Verify {
        #[arg(long)]
        rmap: PathBuf,
        /// Twist by this cocycle (untwisted when absent).
        #[arg(long)]
        cocycle: Option<PathBuf>,
        /// Write the operator in the simplex-operator format.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Decide diagonal gauge equivalence of two twists.
    Gauge {
        #[arg(long)]
        rmap: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        cocycle2: PathBuf,
        /// Potential to test; solved for when absent.
        #[arg(long)]
        psi: Option<PathBuf>,
    },
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    False = 1,
    Usage = 2,
    Resource = 3,
    Invariant = 4,
}

impl From<Exit> for ExitCode {
    fn from(e: Exit) -> ExitCode {
        ExitCode::from(e as u8)
    }
}

#[derive(Debug)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::Resource { .. } => Exit::Resource,
            Error::Invariant(_) => Exit::Invariant,
            Error::SimplexViolation { .. } | Error::Precondition(_) | Error::Singular(_) => Exit::False,
            Error::Domain(_) | Error::Parse { .. } => Exit::Usage,
        };
        CliError {
            exit,
            message: e.to_string(),
        }
    }
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            exit: Exit::Usage,
            message: message.into(),
        }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        CliError {
            exit: Exit::Invariant,
            message: message.into(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a command printed: its report, or raw file content for emitters
/// writing to stdout.
#[derive(Debug)]
pub struct Output {
    pub report: RunReport,
    pub raw: Option<String>,
}

impl Output {
    pub fn exit(&self) -> Exit {
        match self.report.verdict {
            Some(false) => Exit::False,
            _ => Exit::Success,
        }
    }
}

impl From<RunReport> for Output {
    fn from(report: RunReport) -> Self {
        Output { report, raw: None }
    }
}

/// Shared per-run settings.
#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub limits: Limits,
}

pub fn run(cli: Cli, echo: String) -> CliResult<Output> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::usage("--threads must be positive"));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::usage(format!("cannot start thread pool: {e}")))?;
    let ctx = Context {
        limits: cli.max_nnz.map(|max_nnz| Limits { max_nnz }).unwrap_or_default(),
    };
    let start = Instant::now();
    let mut out = pool.install(|| commands::dispatch(&cli.command, ctx, echo))?;
    out.report.time("total", start.elapsed());
    Ok(out)
}

/// Parses `args` (program name first) and runs; the entry point of `main`.
pub fn main_with_args(args: Vec<String>) -> (Exit, String, String) {
    let echo = echo_args(&args[1.min(args.len())..]);
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let exit = if e.use_stderr() { Exit::Usage } else { Exit::Success };
            let text = e.render().to_string();
            return if exit == Exit::Success { (exit, text, String::new()) } else { (exit, String::new(), text) };
        }
    };
    match run(cli, echo) {
        Ok(out) => {
            let exit = out.exit();
            let stdout = match out.raw {
                Some(raw) => raw,
                None => out.report.to_string(),
            };
            (exit, stdout, String::new())
        }
        Err(e) => (e.exit, String::new(), format!("error: {e}\n")),
    }
}

/// The command line as echoed in reports, minus `--threads`, which never
/// changes results.
fn echo_args(args: &[String]) -> String {
    let mut kept = Vec::new();
    let mut skip = false;
    for a in args {
        if std::mem::take(&mut skip) {
            continue;
        }
        if a == "--threads" {
            skip = true;
        } else if !a.starts_with("--threads=") {
            kept.push(a.as_str());
        }
    }
    kept.join(" ")
}

pub(crate) fn read_input(report: &mut RunReport, role: &str, path: &Path) -> CliResult<String> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    report.input(role, &path.display().to_string(), &bytes);
    String::from_utf8(bytes).map_err(|_| CliError::usage(format!("{} is not UTF-8", path.display())))
}

fn with_file<T>(path: &Path, parsed: Result<T, Error>) -> CliResult<T> {
    parsed.map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    })
}

pub(crate) fn load_rmap(report: &mut RunReport, path: &Path) -> CliResult<RMap> {
    let text = read_input(report, "rmap", path)?;
    with_file(path, format::parse_rmap(&text))
}

pub(crate) fn load_cocycle(report: &mut RunReport, role: &str, path: &Path) -> CliResult<Cocycle> {
    let text = read_input(report, role, path)?;
    with_file(path, format::parse_cocycle(&text))
}

pub(crate) fn load_potential(report: &mut RunReport, path: &Path) -> CliResult<Potential> {
    let text = read_input(report, "psi", path)?;
    with_file(path, format::parse_potential(&text))
}

pub(crate) fn write_output(path: &Path, contents: &str) -> CliResult<String> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .map_err(|e| CliError::usage(format!("cannot create {}: {e}", parent.display())))?;
    }
    std::fs::write(path, contents)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
    Ok(report::sha256_hex(contents.as_bytes()))
}
