use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dimredkc_cli::{
    bench_scaling, init_threads, run, write_bench_csv, Algorithm, BenchConfig, CliError, CliResult,
    Format, MetricArg, ReportFormat, RunConfig,
};

/// ℓ-center, minimum-diameter and outlier clustering via random projection.
#[derive(Parser)]
#[command(name = "dimredkc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on a point file.
    Run(RunArgs),
    /// Time the projected pipeline against plain Gonzalez on Gaussian data.
    Bench(BenchArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, value_enum, default_value = "euclidean")]
    metric: MetricArg,
    #[arg(long, value_enum)]
    algo: Algorithm,
    /// Number of centers (clusters).
    #[arg(long = "l")]
    ell: usize,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Number of points that may be discarded (outliers only).
    #[arg(long)]
    z: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long)]
    seed: Option<u64>,
    /// Repeat with seeds seed, seed+1, …; more than one trial adds an oracle check.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Report destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    report: ReportFormat,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "5000")]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1000,4000")]
    d: Vec<usize>,
    #[arg(long = "l", value_delimiter = ',', default_value = "50")]
    ell: Vec<usize>,
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn execute(cli: Cli) -> CliResult<()> {
    init_threads()?;
    match cli.command {
        Command::Run(a) => {
            let config = RunConfig {
                input: a.input,
                format: a.format,
                metric: a.metric,
                algo: a.algo,
                ell: a.ell,
                epsilon: a.epsilon,
                z: a.z,
                beta: a.beta,
                seed: a.seed,
                trials: a.trials,
                out: a.out,
                report: a.report,
            };
            let report = run(&config)?;
            report.write(output(&config.out)?, config.report)
        }
        Command::Bench(a) => {
            if !(a.epsilon > 0.0 && a.epsilon < 0.5) {
                return Err(CliError::Config(format!(
                    "--epsilon must lie in (0, 0.5), got {}",
                    a.epsilon
                )));
            }
            let config = BenchConfig::grid(&a.n, &a.d, &a.ell, a.epsilon, a.seed, a.reps);
            let rows = bench_scaling(&config)?;
            write_bench_csv(output(&a.out)?, &rows)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dimredkc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
