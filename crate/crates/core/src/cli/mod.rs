//! `disthom` command line. Machine output goes to stdout (or `--out`),
//! summaries to stderr.
//!
//! Exit codes: 0 success / true, 1 not found / false, 2 usage or parse
//! error, 3 search budget or group cap exceeded.

mod commands;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::construction::ConstructionError;
use crate::graph::GraphError;
use crate::hom::HomError;
use crate::oracle::OracleError;
use crate::symmetry::{SymmetryError, DEFAULT_GROUP_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "disthom", version, about = "Graph homomorphisms, symmetry breaking and c.e.c. constructions")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Write machine output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; `dot` only for graph-valued results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest automorphism group held explicitly.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_CAP)]
    pub group_cap: usize,
    /// Suppress the stderr summary.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Homomorphism search and checking.
    #[command(subcommand)]
    Hom(HomCmd),
    /// Distinguishing homomorphisms.
    #[command(subcommand)]
    Dist(DistCmd),
    /// Automorphism groups.
    #[command(subcommand)]
    Aut(AutCmd),
    /// χ, χ_D and D.
    Invariant {
        which: Invariant,
        #[arg(long)]
        g: PathBuf,
    },
    /// Is the graph a core?
    #[command(subcommand)]
    Core(GraphOnly),
    /// Unique H-colourability.
    #[command(subcommand)]
    Unique(PairOnly),
    /// The fixation G(f); `f` defaults to the first homomorphism.
    Fixation {
        #[command(flatten)]
        pair: GraphPair,
        #[arg(long)]
        f: Option<PathBuf>,
    },
    /// Fibre-preserving subgroup and distinguishing property suite.
    #[command(subcommand)]
    Lemma1(Lemma1Cmd),
    /// Connected-existential-closure witnesses.
    #[command(subcommand)]
    Cec(CecCmd),
    /// The streaming tree construction over an oracle.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// The labelling into H ∨ K₂ induced by a construction state.
    #[command(subcommand)]
    Gs(GsCmd),
}

#[derive(Debug, Args)]
pub struct GraphPair {
    #[arg(long)]
    pub g: PathBuf,
    #[arg(long)]
    pub h: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum HomCmd {
    Find(GraphPair),
    Check {
        #[command(flatten)]
        pair: GraphPair,
        #[arg(long)]
        f: PathBuf,
    },
    Enumerate {
        #[command(flatten)]
        pair: GraphPair,
        /// Stop after this many maps.
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DistCmd {
    Check {
        #[command(flatten)]
        pair: GraphPair,
        #[arg(long)]
        f: PathBuf,
    },
    Search(GraphPair),
}

#[derive(Debug, Subcommand)]
pub enum AutCmd {
    Group {
        #[arg(long)]
        g: PathBuf,
        /// List every element, not just generators.
        #[arg(long)]
        elements: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Invariant {
    Chi,
    ChiD,
    D,
}

#[derive(Debug, Subcommand)]
pub enum GraphOnly {
    Check {
        #[arg(long)]
        g: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum PairOnly {
    Check(GraphPair),
}

#[derive(Debug, Subcommand)]
pub enum Lemma1Cmd {
    /// Run the built-in corpus.
    RunSuite {
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Oracle spec JSON file.
    #[arg(long)]
    pub oracle: PathBuf,
    /// Replace the oracle's seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest vertex id scanned by witness searches.
    #[arg(long, default_value_t = crate::oracle::DEFAULT_CAP)]
    pub cap: u64,
}

#[derive(Debug, Subcommand)]
pub enum CecCmd {
    /// A path u … v avoiding a finite set.
    Witness {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long)]
        u: u64,
        #[arg(long)]
        v: u64,
        /// Comma-separated vertex ids.
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<u64>,
    },
    /// Exhaustive check on a finite graph for all T with |T| ≤ t-max.
    BoundedCheck {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        t_max: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructCmd {
    Run {
        #[command(flatten)]
        oracle: OracleArgs,
        /// Branch lengths: odd | even | arith:<a>,<d> | set:<l1>,…
        #[arg(long)]
        s: String,
        /// Total processed pairs wanted.
        #[arg(long)]
        steps: usize,
        /// Continue from a saved state instead of starting afresh.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Exit 1 unless every check passes on the final state.
        #[arg(long)]
        verify: bool,
    },
    Verify {
        #[arg(long)]
        state: PathBuf,
        /// Use this oracle instead of the one named in the state.
        #[arg(long)]
        oracle: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GsCmd {
    Emit {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        h: PathBuf,
    },
    Rigidity {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        h: PathBuf,
    },
}

/// What a subcommand produced: machine output plus the exit code it implies.
pub struct Outcome {
    pub output: String,
    pub summary: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String, summary: impl Into<String>) -> Self {
        Outcome { output, summary: summary.into(), code: EXIT_OK }
    }

    fn verdict(pass: bool, output: String, summary: impl Into<String>) -> Self {
        Outcome { output, summary: summary.into(), code: if pass { EXIT_OK } else { EXIT_FALSE } }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
    Io(PathBuf, std::io::Error),
    /// Exit-1 failure carrying output (e.g. a partial state).
    False(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Budget(m) | CliError::False(m) => f.write_str(m),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::False(_) => EXIT_FALSE,
            CliError::Usage(_) | CliError::Io(..) => EXIT_USAGE,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<HomError> for CliError {
    fn from(e: HomError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::GroupTooLarge { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::SearchExhausted { .. } => CliError::Budget(e.to_string()),
            OracleError::AdjacentEndpoints { .. } | OracleError::EndpointAvoided(_) => CliError::False(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Oracle(o) => o.into(),
            ConstructionError::Symmetry(s) => s.into(),
            ConstructionError::InvariantViolated { .. }
            | ConstructionError::BranchSpecExhausted(_)
            | ConstructionError::MissingColourMap
            | ConstructionError::ColourOutOfRange { .. }
            | ConstructionError::ColourViolation { .. } => CliError::False(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub(crate) fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(p.to_path_buf(), e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            Ok(())
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let quiet = cli.common.quiet;
    let out = cli.common.out.clone();
    match commands::dispatch(&cli) {
        Ok(outcome) => {
            if let Err(e) = write_output(out.as_deref(), &outcome.output) {
                eprintln!("error: {e}");
                return e.code();
            }
            if !quiet && !outcome.summary.is_empty() {
                eprintln!("{}", outcome.summary);
            }
            outcome.code
        }
        Err((e, partial)) => {
            if let Some(text) = partial {
                if let Err(w) = write_output(out.as_deref(), &text) {
                    eprintln!("error: {w}");
                }
            }
            eprintln!("error: {e}");
            e.code()
        }
    }
}
