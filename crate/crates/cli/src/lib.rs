//! Command-line front end: parses arguments and configuration, dispatches to
//! the core library and writes reports.
//!
//! Exit codes: 0 on success, 1 for invalid input, 2 when the parameters are
//! valid but outside the regime a model is trusted in.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod config;

pub use config::RunConfig;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(dotqubit_core::Error),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<dotqubit_core::Error> for CliError {
    fn from(e: dotqubit_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_regime() => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "dotqubit", version, about = "Coupled-dot qubit simulator and budget calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override one configuration value, e.g. `budget.delta1=2`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mixing of a tunnel-coupled dot pair.
    Spectrum {
        /// Tunnel coupling (meV).
        #[arg(long)]
        t: f64,
        /// Dot level separation (meV).
        #[arg(long)]
        delta: f64,
        #[arg(long, value_enum, default_value_t = SimpleFormat::Text)]
        format: SimpleFormat,
        #[command(flatten)]
        common: Common,
    },
    /// Coherence and operation-time budget.
    Budget {
        #[arg(long, value_enum, default_value_t = BudgetFormat::Text)]
        format: BudgetFormat,
        #[command(flatten)]
        common: Common,
    },
    /// Gate sequences.
    Gate {
        #[command(subcommand)]
        op: GateOp,
    },
    /// Population trajectory of one model as CSV.
    Evolve {
        #[arg(long, value_enum)]
        model: ModelKind,
        #[command(flatten)]
        common: Common,
    },
    /// Side-by-side evolution of two models as a JSON error report.
    Compare {
        #[arg(value_enum)]
        which: CompareKind,
        #[command(flatten)]
        common: Common,
    },
    /// π-pulse fidelity against emission rate as CSV.
    Decohere {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum GateOp {
    /// Verify the conditional-phase sequence and search for variants.
    VerifyCps {
        #[command(flatten)]
        common: Common,
    },
    /// Compose a sequence into its matrix.
    Compile {
        /// Sequence JSON; the conditional-phase sequence when omitted.
        #[arg(long)]
        sequence: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive variant search.
    Search {
        #[arg(long)]
        sequence: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SpaceArg::Signs)]
        space: SpaceArg,
        #[arg(long, value_enum, default_value_t = TargetArg::Cps)]
        target: TargetArg,
        /// Number of ranked candidates to print.
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[command(flatten)]
        common: Common,
    },
    /// CNOT from a conditional-phase gate.
    Cnot {
        #[arg(long, value_enum, default_value_t = CnotInput::Ideal)]
        input: CnotInput,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SimpleFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum BudgetFormat {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModelKind {
    Raman,
    Jc,
    Xy,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum CompareKind {
    RamanJc,
    JcXy,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SpaceArg {
    Signs,
    SignsAndHalfAngles,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TargetArg {
    Cps,
    Cnot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum CnotInput {
    Ideal,
    Literal,
}

/// Runs the tool with process stdout/stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((text, dest)) => match emit(&text, dest.as_deref(), out) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(text: &str, dest: Option<&std::path::Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match dest {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

type Output = (String, Option<PathBuf>);

fn dispatch(cmd: Command) -> Result<Output, CliError> {
    use commands as c;
    let (text, common) = match cmd {
        Command::Spectrum { t, delta, format, common } => {
            (c::spectrum(t, delta, format == SimpleFormat::Json)?, common)
        }
        Command::Budget { format, common } => {
            let cfg = load(&common)?;
            let fmt = match format {
                BudgetFormat::Json => dotqubit_core::budget::ReportFormat::Json,
                BudgetFormat::Csv => dotqubit_core::budget::ReportFormat::Csv,
                BudgetFormat::Text => dotqubit_core::budget::ReportFormat::Text,
            };
            (c::budget(&cfg, fmt)?, common)
        }
        Command::Gate { op } => match op {
            GateOp::VerifyCps { common } => (c::verify_cps()?, common),
            GateOp::Compile { sequence, common } => (c::compile(sequence.as_deref())?, common),
            GateOp::Search { sequence, space, target, top, common } => {
                let space = match space {
                    SpaceArg::Signs => dotqubit_core::gates::SearchSpace::Signs,
                    SpaceArg::SignsAndHalfAngles => {
                        dotqubit_core::gates::SearchSpace::SignsAndHalfAngles
                    }
                };
                let text = c::search(sequence.as_deref(), space, target == TargetArg::Cnot, top)?;
                (text, common)
            }
            GateOp::Cnot { input, common } => (c::cnot(input == CnotInput::Literal)?, common),
        },
        Command::Evolve { model, common } => {
            let cfg = load(&common)?;
            let m = match model {
                ModelKind::Raman => c::Model::Raman,
                ModelKind::Jc => c::Model::Jc,
                ModelKind::Xy => c::Model::Xy,
            };
            (c::evolve(&cfg, m)?, common)
        }
        Command::Compare { which, common } => {
            let cfg = load(&common)?;
            (c::compare(&cfg, which == CompareKind::JcXy)?, common)
        }
        Command::Decohere { common } => {
            let cfg = load(&common)?;
            (c::decohere(&cfg)?, common)
        }
    };
    Ok((text, common.out))
}

fn load(common: &Common) -> Result<RunConfig, CliError> {
    RunConfig::load(common.config.as_deref(), &common.set)
}
