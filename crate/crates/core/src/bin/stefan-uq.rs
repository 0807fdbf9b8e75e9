use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use enthalpy_uq::config::RunConfig;
use enthalpy_uq::error::Error;
use enthalpy_uq::output::ToleranceFile;
use enthalpy_uq::plotdata::plotdata;
use enthalpy_uq::runner::{run_file, RunOptions};

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_TOLERANCE: u8 = 4;

#[derive(Parser)]
#[command(version, about = "Enthalpy-method Stefan solvers with gPC uncertainty quantification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configuration and write its run directory.
    Run {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Run directory (default: `output` from the config, else runs/<config name>).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Tolerance file checked against summary.json.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Parse and resolve a configuration; prints the resolved echo.
    Validate { config: PathBuf },
    /// Write plot-ready tables into <run-dir>/plot.
    Plotdata { run_dir: PathBuf },
}

fn exit_for(e: &Error) -> ExitCode {
    eprintln!("error [{}]: {e}", e.code());
    if e.is_config_error() || matches!(e, Error::MissingArtifacts { .. }) {
        ExitCode::from(EXIT_CONFIG)
    } else {
        ExitCode::from(EXIT_NUMERICAL)
    }
}

fn load(path: &Path) -> Result<RunConfig, Error> {
    RunConfig::load(path)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { config } => match load(&config).and_then(|c| {
            let r = c.resolve()?;
            c.resolved_echo(&r)
        }) {
            Ok(echo) => {
                print!("{echo}");
                ExitCode::SUCCESS
            }
            Err(e) => exit_for(&e),
        },
        Command::Plotdata { run_dir } => match plotdata(&run_dir) {
            Ok(files) => {
                for f in files {
                    println!("{}", f.display());
                }
                ExitCode::SUCCESS
            }
            Err(e) => exit_for(&e),
        },
        Command::Run { config, seed, out, threads, check } => {
            let tol = match check.as_deref().map(ToleranceFile::load).transpose() {
                Ok(t) => t,
                Err(e) => return exit_for(&e),
            };
            let out_dir = match out {
                Some(o) => o,
                None => match load(&config) {
                    Ok(c) => c.output.unwrap_or_else(|| {
                        let stem = config.file_stem().map_or("run".into(), |s| s.to_string_lossy().into_owned());
                        PathBuf::from("runs").join(stem)
                    }),
                    Err(e) => return exit_for(&e),
                },
            };
            let outcome = match run_file(&config, &RunOptions { out_dir, seed, threads }) {
                Ok(o) => o,
                Err(e) => return exit_for(&e),
            };
            println!(
                "{} finished in {:.2}s on {} thread(s): {}",
                outcome.manifest.mode,
                outcome.manifest.wall_time_s,
                outcome.manifest.threads,
                outcome.dir.display()
            );
            let Some(tol) = tol else {
                return ExitCode::SUCCESS;
            };
            let results = tol.evaluate(&outcome.summary.metrics);
            for r in &results {
                println!("{} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.key, r.detail);
            }
            if results.iter().all(|r| r.pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_TOLERANCE)
            }
        }
    }
}
