use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use ocoh_cli::{commands, emit_report, parse_workspace, run_command, CliError, Command, ComplexKind, Format};

/// Exact checks, cohomology and deformations of compatible O-operators.
///
/// Exit status: 0 all verdicts pass, 1 some check failed, 2 input or usage
/// error, 3 internal logic error. The thread count of the parallel parts is
/// read from OCOH_THREADS.
#[derive(Parser, Debug)]
#[command(name = "ocoh", version)]
struct Cli {
    /// Workspace document; standard input when omitted.
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Run every structural check the document allows.
    Check,
    /// Cohomology dimension of one complex in one degree.
    Cohomology {
        #[arg(long, value_enum)]
        complex: ComplexKind,
        #[arg(long)]
        degree: usize,
    },
    /// Maurer-Cartan defect of the operator pair.
    Mc,
    /// Obstruction to extending the deformation block.
    Obstruct {
        /// Use the first N terms; all of them by default.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Extend the deformation by one order, or certify that it cannot be.
    Extend,
    /// Yang-Baxter verdicts for the tensors block and the induced operators.
    Aybe,
    /// Axioms, differentials and cohomology of the compatible dendriform algebra.
    Dendriform {
        /// Highest cohomology degree computed.
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Induced compatible algebra, bimodule and dendriform structures.
    Induce {
        /// Also write the document with the induced dendriform block here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
        }
        None => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("OCOH_THREADS") else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| CliError::Usage(format!("OCOH_THREADS must be a number, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    configure_threads()?;
    let start = Instant::now();
    let parsed = parse_workspace(&read_input(&cli.input)?).map_err(CliError::Schema)?;
    let parse_ms = start.elapsed().as_secs_f64() * 1e3;
    let cmd = match &cli.cmd {
        Sub::Check => Command::Check,
        Sub::Cohomology { complex, degree } => Command::Cohomology { complex: *complex, degree: *degree },
        Sub::Mc => Command::Mc,
        Sub::Obstruct { order } => Command::Obstruct { order: *order },
        Sub::Extend => Command::Extend,
        Sub::Aybe => Command::Aybe,
        Sub::Dendriform { degree } => Command::Dendriform { max_degree: *degree },
        Sub::Induce { .. } => Command::Induce,
    };
    let mut report = run_command(&cmd, &parsed.doc)?;
    report.warnings = parsed.warnings;
    if let Sub::Induce { output: Some(path) } = &cli.cmd {
        let doc = commands::induced_document(&parsed.doc)?;
        std::fs::write(path, doc.to_json_string() + "\n")
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        report.arg("output", path.display().to_string());
    }
    if cli.timing {
        report.timing.insert("parse_ms".into(), parse_ms.into());
        report.timing.insert("total_ms".into(), (start.elapsed().as_secs_f64() * 1e3).into());
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    println!("{}", emit_report(&report, cli.format));
    Ok(report.passed())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
