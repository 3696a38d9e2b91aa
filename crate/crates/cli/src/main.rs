use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use uplift_cli::commands::{self, Mode};
use uplift_cli::config::{load, DirichletConfigFile, EvalConfig, NormalConfigFile};
use uplift_cli::manifest::MANIFEST_FILE;
use uplift_cli::parallel::thread_pool;
use uplift_cli::CliError;

/// Evaluate uplift models with profit curves and run the comparison
/// experiments between uplift and predictive targeting.
#[derive(Parser)]
#[command(name = "uplift", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Uplift and empirical profit curves of a scored CSV dataset.
    Eval {
        /// CSV with columns y, t, score and optionally cb00, cb01, cb10, cb11.
        data: PathBuf,
        /// Ignore per-row cost-benefit columns and use the unitary matrix.
        #[arg(long)]
        unitary: bool,
        /// Write curve values multiplied by k rather than divided by N.
        #[arg(long)]
        raw: bool,
        #[arg(long, default_value = "results")]
        out: PathBuf,
    },
    /// Normal-feature experiment with trained logistic models.
    SimNormal {
        /// TOML configuration; defaults apply when omitted.
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "results")]
        out: PathBuf,
    },
    /// Dirichlet experiment with emulated estimators.
    SimDirichlet {
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "grid")]
        mode: Mode,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "results")]
        out: PathBuf,
    },
    /// Expected conditional entropies for Dirichlet parameters a b c d.
    Entropy {
        #[arg(allow_negative_numbers = true)]
        a: f64,
        #[arg(allow_negative_numbers = true)]
        b: f64,
        #[arg(allow_negative_numbers = true)]
        c: f64,
        #[arg(allow_negative_numbers = true)]
        d: f64,
    },
    /// Rerun a recorded run and verify that its outputs are reproduced.
    Replay {
        manifest: PathBuf,
        #[arg(long, default_value = "replay")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval { data, unitary, raw, out } => {
            let outcome = commands::eval(&EvalConfig { data, unitary, raw }, &out)?;
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            outcome.manifest.write(&out)
        }
        Command::SimNormal { config, seed, out } => {
            let mut file: NormalConfigFile = load(config.as_deref())?;
            if let Some(seed) = seed {
                file.master_seed = seed;
            }
            commands::sim_normal(&file, &out, &thread_pool(cli.threads)?)?.write(&out)
        }
        Command::SimDirichlet { config, mode, seed, out } => {
            let mut file: DirichletConfigFile = load(config.as_deref())?;
            if let Some(seed) = seed {
                file.master_seed = seed;
            }
            commands::sim_dirichlet(&file, mode, &out, &thread_pool(cli.threads)?)?.write(&out)
        }
        Command::Entropy { a, b, c, d } => {
            print!("{}", commands::entropy(a, b, c, d)?);
            Ok(())
        }
        Command::Replay { manifest, out } => {
            let fresh = commands::replay(&manifest, &out, &thread_pool(cli.threads)?)?;
            fresh.write(&out)?;
            println!("reproduced {} output file(s) in {}", fresh.outputs.len(), out.join(MANIFEST_FILE).display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
