use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cxga::experiment::{compare, run_experiment, AggregateReport, AlgorithmSpec, ExperimentSpec};
use cxga::{brute_force_optimum, load_instance, Error, Execution, GaConfig, Rounding};

/// Output directory override for `bench`.
const OUTPUT_DIR_ENV: &str = "CXGA_OUTPUT_DIR";

const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cxga",
    version,
    about = "Genetic algorithms for the Euclidean TSP"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm once on one instance.
    Solve {
        instance: PathBuf,
        /// GA1, GA2, GA3 or CXGA.
        #[arg(long, default_value = "CXGA")]
        algo: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value = "nint")]
        rounding: Rounding,
        /// Print the full run report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run an experiment described by a TOML file and write its reports.
    Bench {
        config: PathBuf,
        /// Overrides `output_dir` from the file.
        #[arg(long, env = OUTPUT_DIR_ENV)]
        output_dir: Option<PathBuf>,
        /// Run the jobs one after another.
        #[arg(long)]
        sequential: bool,
    },
    /// Per-instance percentage improvement of one algorithm over another.
    Compare {
        /// aggregate.json or the directory containing it.
        report: PathBuf,
        #[arg(long, default_value = "GA3")]
        baseline: String,
        #[arg(long, default_value = "CXGA")]
        challenger: String,
        #[arg(long)]
        json: bool,
    },
    /// Exact optimum by exhaustive search (at most 11 cities).
    Exact {
        instance: PathBuf,
        #[arg(long, default_value = "nint")]
        rounding: Rounding,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::UnknownAlgorithm { .. } | Error::TooLargeForOracle { .. } => {
            EXIT_CONFIG
        }
        _ => EXIT_IO,
    }
}

fn load(path: &Path, rounding: Rounding) -> Result<cxga::Instance, Error> {
    load_instance(path, rounding).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Solve {
            instance,
            algo,
            seed,
            budget,
            rounding,
            json,
        } => {
            let spec = AlgorithmSpec::preset(&algo)?;
            let inst = load(&instance, rounding)?;
            let cfg = GaConfig {
                seed,
                budget,
                ..GaConfig::default()
            };
            let report = spec.run(&inst, &cfg)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).map_err(report_error)?
                );
            } else {
                println!("instance     {} ({} cities)", inst.name(), inst.n());
                println!("algorithm    {}", spec.name);
                println!("seed         {seed}");
                println!("best_cost    {}", report.best_cost);
                println!("evaluations  {}", report.evaluations_used);
                println!("generations  {}", report.generations);
                println!("wall_seconds {:.3}", report.wall_seconds);
                println!("tour         {}", report.best_tour);
            }
        }
        Command::Bench {
            config,
            output_dir,
            sequential,
        } => {
            let mut spec = ExperimentSpec::from_toml_file(&config)?;
            if let Some(dir) = output_dir {
                spec.output_dir = dir;
            }
            if sequential {
                spec.execution = Execution::Sequential;
            }
            let report = run_experiment(&spec)?;
            print!("{}", report.summary_table());
            println!("reports written to {}", spec.output_dir.display());
        }
        Command::Compare {
            report,
            baseline,
            challenger,
            json,
        } => {
            let report = AggregateReport::read_json(&report)?;
            let deltas = compare(&report, &baseline, &challenger)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&deltas).map_err(report_error)?
                );
            } else {
                println!("{challenger} vs {baseline} (positive: {challenger} better)");
                println!("{:<12} {:>10} {:>10}", "Instance", "Mean %", "Min %");
                for d in &deltas {
                    println!(
                        "{:<12} {:>10.3} {:>10.3}",
                        d.instance, d.mean_delta_pct, d.min_delta_pct
                    );
                }
            }
        }
        Command::Exact { instance, rounding } => {
            let inst = load(&instance, rounding)?;
            let (cost, tour) = brute_force_optimum(&inst)?;
            println!("optimum {cost}");
            println!("tour    {tour}");
        }
    }
    Ok(())
}

fn report_error(e: serde_json::Error) -> Error {
    Error::Report(e.to_string())
}
