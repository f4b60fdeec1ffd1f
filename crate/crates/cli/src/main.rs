use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use norm_attain::TolerancePolicy;
use norm_attain_cli::config::DEFAULT_SEED;
use norm_attain_cli::{run_paper_check, run_scenario_file, CliError, Config, OutputFormat, Report};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Debug, Parser)]
#[command(name = "norm-attain", version, about = "Norm-attainment checks for idempotents, compressed shifts, Toeplitz and structured operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run only scenarios whose id matches this glob.
    #[arg(long, global = true)]
    only: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Absolute tolerance.
    #[arg(long = "tol.abs", global = true)]
    tol_abs: Option<f64>,
    /// Relative tolerance.
    #[arg(long = "tol.rel", global = true)]
    tol_rel: Option<f64>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Validation prefix for structured operators.
    #[arg(long, global = true)]
    prefix: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the built-in scenario registry.
    PaperCheck,
    /// Run a JSON array of scenarios.
    Run { file: PathBuf },
}

fn config(cli: &Cli) -> Config {
    let base = TolerancePolicy::default();
    let defaults = Config::default();
    Config {
        tolerance: TolerancePolicy {
            abs_eps: cli.tol_abs.unwrap_or(base.abs_eps),
            rel_eps: cli.tol_rel.unwrap_or(base.rel_eps),
            ..base
        },
        seed: cli.seed,
        prefix: cli.prefix.unwrap_or(defaults.prefix),
        only: cli.only.clone(),
    }
}

fn emit(report: &Report, cli: &Cli) -> Result<(), CliError> {
    let format = match cli.format {
        Format::Json => OutputFormat::Json,
        Format::Md => OutputFormat::Md,
    };
    let text = match format {
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Md => report.to_markdown(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|source| CliError::Write { path: path.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = config(&cli);
    let report = match &cli.command {
        Command::PaperCheck => run_paper_check(&cfg),
        Command::Run { file } => run_scenario_file(file, &cfg),
    };
    let result = report.and_then(|r| emit(&r, &cli).map(|_| r));
    match result {
        Ok(r) => {
            eprintln!(
                "{} scenarios: {} passed, {} failed, {} errored",
                r.summary.total, r.summary.passed, r.summary.failed, r.summary.errored
            );
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("norm-attain: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
