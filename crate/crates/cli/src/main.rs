use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use meanlik::commands::{self, Table};
use meanlik::fit::{fit, FitModel};
use meanlik::output::write_csv;
use meanlik::{CliError, Result};
use meanlik_core::compare::{theta_grid, SimConfig, DEFAULT_SEED};
use meanlik_core::PriorSpec;

#[derive(Parser, Debug)]
#[command(name = "meanlik", version, about = "Compare maximum, mean-likelihood and Bayes estimators; figure data as CSV")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

use clap::Args;

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact relative efficiency and closeness for Bernoulli trials.
    Binomial {
        /// Number of trials (repeatable). Defaults to 10 and 30.
        #[arg(long = "n")]
        n: Vec<u64>,
        #[arg(long, default_value_t = commands::BINOMIAL_STEP)]
        grid_step: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Closed-form comparisons for exponential lifetimes.
    Exponential {
        /// Sample size (repeatable). Defaults to 3..=100.
        #[arg(long = "n")]
        n: Vec<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Exact comparisons for MA(1) series of length two.
    #[command(name = "ma1-exact2")]
    Ma1Exact2 {
        #[arg(long, default_value_t = commands::MA1_STEP)]
        grid_step: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Monte Carlo comparison for MA(1) series.
    #[command(name = "ma1-sim")]
    Ma1Sim {
        /// Series length.
        #[arg(long = "n", default_value_t = 50)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        n_rep: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Prior::Jeffreys)]
        prior: Prior,
        /// Subtract the sample mean from each simulated series.
        #[arg(long)]
        estimate_mean: bool,
        #[arg(long, default_value_t = commands::MA1_STEP)]
        grid_step: f64,
        /// Worker threads; 0 picks the number of cores.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Estimate a parameter from a data file.
    Fit {
        /// Numbers separated by whitespace, commas or newlines.
        data: PathBuf,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, value_enum, default_value_t = Prior::Jeffreys)]
        prior: Prior,
        /// Print CSV instead of aligned text.
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Prior {
    Uniform,
    Jeffreys,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModelArg {
    Binomial,
    Exponential,
    Ma1,
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(table: Table, output: &Output) -> Result<()> {
    write_csv(sink(&output.out)?, &table.rows, &table.footer)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Binomial { n, grid_step, output } => {
            let ns = if n.is_empty() { commands::BINOMIAL_NS.to_vec() } else { n };
            emit(commands::binomial(&ns, grid_step)?, &output)
        }
        Command::Exponential { n, output } => {
            let ns = if n.is_empty() { commands::EXPONENTIAL_NS.collect() } else { n };
            emit(commands::exponential(&ns)?, &output)
        }
        Command::Ma1Exact2 { grid_step, output } => emit(commands::ma1_exact2(grid_step)?, &output),
        Command::Ma1Sim { n, n_rep, seed, prior, estimate_mean, grid_step, threads, output } => {
            if !(grid_step > 0.0 && grid_step <= 0.5) {
                return Err(CliError::Usage(format!("--grid-step must lie in (0, 0.5], got {grid_step}")));
            }
            let cfg = SimConfig {
                thetas: theta_grid(grid_step).map_err(|e| CliError::Usage(e.to_string()))?,
                n,
                n_rep,
                seed,
                prior: match prior {
                    Prior::Uniform => PriorSpec::UNIFORM,
                    Prior::Jeffreys => PriorSpec::JEFFREYS_MA1,
                },
                estimate_mean,
                ..SimConfig::default()
            };
            cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            emit(commands::ma1_sim(&cfg, threads)?, &output)
        }
        Command::Fit { data, model, prior, csv, output } => {
            let text = std::fs::read_to_string(&data)
                .map_err(|e| CliError::Data(format!("cannot read {}: {e}", data.display())))?;
            let model = match model {
                ModelArg::Binomial => FitModel::Binomial,
                ModelArg::Exponential => FitModel::Exponential,
                ModelArg::Ma1 => FitModel::Ma1,
            };
            let prior = match prior {
                Prior::Uniform => PriorSpec::UNIFORM,
                Prior::Jeffreys => PriorSpec::JEFFREYS_MA1,
            };
            let report = fit(&text, model, prior)?;
            let mut out = sink(&output.out)?;
            out.write_all(if csv { report.to_csv() } else { report.to_text() }.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
