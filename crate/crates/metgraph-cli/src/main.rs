//! `metgraph`: compute on metrized graphs from the command line.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 on a failed internal
//! assertion. Diagnostics go to stderr; reports go to stdout with LF line
//! endings and floats at 12 significant digits.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use metgraph_cli::report::{self, OutputFormat};
use metgraph_cli::{parse, CliError};

#[derive(Parser)]
#[command(
    name = "metgraph",
    version,
    about = "Metrized graphs: Laplacians, resistance, canonical measure, spectra",
    after_help = "Points are written `<vertex>` or `<edge>:<t>` (arclength from the edge's \
                  first endpoint). The env var METGRAPH_TOL overrides the default verdict \
                  tolerance of 1e-9; an explicit --tol wins over both."
)]
struct Cli {
    /// Tolerance gating PASS/FAIL verdict lines (advisory only)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Output shape for scalar reports
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Plain => OutputFormat::Plain,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a graph file and print a structural invariants report
    Validate { graph: PathBuf },
    /// Effective resistance between two points
    Resistance {
        graph: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// The j-function j_z(·, y): grounded potential of a unit current
    Jfun {
        graph: PathBuf,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
        /// Evaluate at a single point instead of listing vertices
        #[arg(long)]
        at: Option<String>,
    },
    /// Potential and per-edge currents of a steady flow
    Current {
        graph: PathBuf,
        #[arg(long)]
        source: String,
        #[arg(long)]
        sink: String,
        #[arg(long)]
        amps: f64,
        #[arg(long)]
        ground: String,
    },
    /// The canonical measure, in measure CSV form
    Canonical { graph: PathBuf },
    /// Foster's sum Σ r(e)/L_e against #V − 1
    Foster { graph: PathBuf },
    /// The cycle-rank sum Σ L_e/(R_e + L_e) against #E − #V + 1
    Cyclerank { graph: PathBuf },
    /// The tau invariant ½∫ r(x, y) dμ_can(x)
    Tau {
        graph: PathBuf,
        /// Anchor point (default: first vertex; the result is independent)
        #[arg(long)]
        at: Option<String>,
    },
    /// Eigenvalues (and optionally eigenfunctions) anchored at δ_z
    Spectrum {
        graph: PathBuf,
        #[arg(long)]
        z: String,
        /// Number of eigenpairs
        #[arg(long, default_value_t = metgraph::spectral::DEFAULT_TERMS)]
        terms: usize,
        /// Mesh step (maximum fine-segment length)
        #[arg(long, default_value_t = metgraph::spectral::DEFAULT_STEP)]
        step: f64,
        /// Also dump eigenvector values per fine-model vertex
        #[arg(long)]
        eigenvectors: bool,
    },
    /// Analytic partial sum of the min{x,y} sine identity on the unit interval
    Identity {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        /// Number of odd-index terms
        #[arg(long, default_value_t = 2001)]
        terms: usize,
    },
}

fn resolve_tolerance(flag: Option<f64>) -> Result<f64, CliError> {
    if let Some(t) = flag {
        if t <= 0.0 || !t.is_finite() {
            return Err(CliError::Input(format!("--tol must be positive, got {t}")));
        }
        return Ok(t);
    }
    match std::env::var("METGRAPH_TOL") {
        Ok(raw) => raw
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0 && t.is_finite())
            .ok_or_else(|| CliError::Input(format!("METGRAPH_TOL is not a tolerance: `{raw}`"))),
        Err(_) => Ok(1e-9),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let tol = resolve_tolerance(cli.tol)?;
    let format: OutputFormat = cli.format.into();
    let load = |path: &PathBuf| parse::parse_graph_file(path).map(Arc::new);
    match &cli.command {
        Command::Validate { graph } => Ok(report::validate(&load(graph)?, format)),
        Command::Resistance { graph, from, to } => {
            report::resistance(&load(graph)?, from, to, format)
        }
        Command::Jfun { graph, y, z, at } => {
            report::jfun(&load(graph)?, y, z, at.as_deref(), format)
        }
        Command::Current {
            graph,
            source,
            sink,
            amps,
            ground,
        } => report::current(&load(graph)?, source, sink, *amps, ground, format),
        Command::Canonical { graph } => Ok(report::canonical(&load(graph)?)),
        Command::Foster { graph } => Ok(report::foster(&load(graph)?, tol, format)),
        Command::Cyclerank { graph } => Ok(report::cyclerank(&load(graph)?, tol, format)),
        Command::Tau { graph, at } => report::tau_report(&load(graph)?, at.as_deref(), format),
        Command::Spectrum {
            graph,
            z,
            terms,
            step,
            eigenvectors,
        } => report::spectrum(&load(graph)?, z, *terms, *step, *eigenvectors),
        Command::Identity { x, y, terms } => report::identity(*x, *y, *terms, tol, format),
    }
}

fn main() -> ExitCode {
    // Exit codes: 0 success, 1 input error, 2 internal assertion. Flag
    // mistakes are input errors, so clap's default code 2 is remapped.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    // Violated internal assertions (solver residuals, measure checks) panic
    // inside the library; report them as such rather than aborting. The
    // default hook would print its own trace, so silence it first.
    std::panic::set_hook(Box::new(|_| {}));
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli)));
    match outcome {
        Ok(Ok(stdout)) => {
            print!("{stdout}");
            ExitCode::SUCCESS
        }
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            eprintln!("error: internal assertion failed: {message}");
            ExitCode::from(2)
        }
    }
}
