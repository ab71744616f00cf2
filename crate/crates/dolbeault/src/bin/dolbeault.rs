//! Command-line front end: analyze curves, compute cohomology tables, run
//! the local weighted-disk checks, and execute the verification suite.

use clap::{Args, Parser, Subcommand};
use dolbeault::cohomology::Mode;
use dolbeault::run::{execute, Command, Format, RunConfig, RunError, TRUNCATION_CAP_ENV};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dolbeault",
    version,
    about = "L2-Dolbeault cohomology of compact singular complex curves",
    long_about = "Computes singularity invariants by exact Newton-Puiseux expansion, the full \
                  table of L2-Dolbeault dimensions for the weak and strong dbar-extensions, and \
                  the numerical weighted-disk verification suite."
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a curve: singular points, invariants, genus, components.
    Analyze(CommonArgs),
    /// Compute the h_{w/s}^{p,q} table and check the identities.
    Cohomology(CommonArgs),
    /// Local weighted-disk theory at a unibranch model point.
    Local(CommonArgs),
    /// Run the full verification suite.
    Verify(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input file: curve spec JSON, plane-curve JSON, or local parameters.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Bundle degrees: "c1=3,c2=-1", positional "3,-1", or "@bundle.json".
    #[arg(long = "bundle-degree")]
    bundle_degree: Option<String>,

    /// Truncation order for Puiseux expansions.
    #[arg(long)]
    truncation: Option<usize>,

    /// Grid size for the Cauchy solver (power of two in [64, 1024]).
    #[arg(long, default_value_t = 128)]
    grid: usize,

    /// Class handling: exact (intervals where class-dependent) or generic.
    #[arg(long, default_value = "exact")]
    mode: String,

    /// Output format: structured (JSON) or table (human-readable).
    #[arg(long, default_value = "structured")]
    format: String,

    /// Seed for the fuzz corpora.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Ramification index for the local command.
    #[arg(long)]
    s: Option<u32>,
}

fn build_config(command: Command, args: &CommonArgs) -> Result<RunConfig, RunError> {
    let mode = match args.mode.as_str() {
        "exact" => Mode::Exact,
        "generic" => Mode::Generic,
        other => return Err(RunError::Input(format!("unknown mode '{}'", other))),
    };
    let format = match args.format.as_str() {
        "structured" => Format::Structured,
        "table" => Format::Table,
        other => return Err(RunError::Input(format!("unknown format '{}'", other))),
    };
    let truncation_cap = match std::env::var(TRUNCATION_CAP_ENV) {
        Ok(v) => Some(v.parse().map_err(|_| {
            RunError::Input(format!("{} must be a positive integer", TRUNCATION_CAP_ENV))
        })?),
        Err(_) => None,
    };
    Ok(RunConfig {
        command,
        input: args.input.clone(),
        bundle_degree: args.bundle_degree.clone(),
        truncation: args.truncation,
        truncation_cap,
        grid: args.grid,
        mode,
        format,
        seed: args.seed,
        s_param: args.s,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match &cli.command {
        Cmd::Analyze(a) => (Command::Analyze, a),
        Cmd::Cohomology(a) => (Command::Cohomology, a),
        Cmd::Local(a) => (Command::Local, a),
        Cmd::Verify(a) => (Command::Verify, a),
    };
    let cfg = match build_config(command, args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("{}", e);
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match execute(&cfg) {
        Ok((report, all_pass)) => {
            match cfg.format {
                Format::Structured => print!("{}", report.to_structured()),
                Format::Table => print!("{}", report.to_table()),
            }
            if command == Command::Verify {
                for id in &report.identities {
                    eprintln!(
                        "{} [{}] {}",
                        id.name,
                        if id.pass { "PASS" } else { "FAIL" },
                        id.rhs
                    );
                }
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
