//! Reproducible experiment front end.
//!
//! Each subcommand resolves a scenario config (JSON file plus flag
//! overrides), runs the experiment, and writes artifacts stamped with the
//! config hash and seed. Exit codes: 0 success, 1 validation error,
//! 2 runtime error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use aqs_core::cli::{run, ExperimentKind, RunError, ScenarioConfig};

#[derive(Parser)]
#[command(
    name = "aqslab",
    version,
    about = "Noncommutative operator dynamics laboratory: seeded simulations, \
             C-value landscapes, order-effect and interference analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct CommonArgs {
    /// Scenario config JSON; flags below override its fields one-for-one.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed for all random substreams.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for artifacts.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Number of Fock modes.
    #[arg(long)]
    modes: Option<usize>,
    /// Per-mode occupation cutoff.
    #[arg(long)]
    cutoff: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the two-layer evolution loop and record the trajectory.
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of evolution steps.
        #[arg(long)]
        steps: Option<usize>,
        /// Gaussian perturbation scale on the starting state.
        #[arg(long)]
        jitter: Option<f64>,
    },
    /// Pairwise C-value matrix and Robertson gaps for a portfolio at a state.
    Cvalue {
        #[command(flatten)]
        common: CommonArgs,
        /// Operator portfolio JSON (default: canonical ladder observables).
        #[arg(long)]
        portfolio: Option<PathBuf>,
        /// State JSON (default: the configured basis state).
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Order-effect test between two embedding sets.
    OrderTest {
        #[command(flatten)]
        common: CommonArgs,
        /// First embedding set (JSON or CSV).
        #[arg(long)]
        set_a: Option<PathBuf>,
        /// Second embedding set (JSON or CSV).
        #[arg(long)]
        set_b: Option<PathBuf>,
        /// Synthesize both sets from swapped-order simulations.
        #[arg(long)]
        synthesize: bool,
        /// Label permutations for the significance test.
        #[arg(long)]
        permutations: Option<usize>,
        /// Simulated runs per order when synthesizing.
        #[arg(long)]
        runs: Option<usize>,
        /// Gaussian perturbation scale on synthesized starting states.
        #[arg(long)]
        jitter: Option<f64>,
    },
    /// Interference correlation reports for (Y, Y', X) triples.
    Interference {
        #[command(flatten)]
        common: CommonArgs,
        /// Triples JSON file.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Reference shuffles per triple.
        #[arg(long)]
        shuffles: Option<usize>,
    },
    /// Co-creativity scores and T-scores from an evaluation-table CSV.
    Cci {
        #[command(flatten)]
        common: CommonArgs,
        /// Evaluation table CSV.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run the built-in end-to-end verification suite.
    Demo {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn load_config(kind: ExperimentKind, common: &CommonArgs) -> Result<ScenarioConfig, RunError> {
    let mut config = match &common.config {
        Some(path) => {
            let content = std::fs::read_to_string(path).map_err(|e| {
                RunError::Validation(format!("cannot read config {}: {e}", path.display()))
            })?;
            let mut cfg = ScenarioConfig::from_json(&content)
                .map_err(|e| RunError::Validation(e.to_string()))?;
            cfg.experiment = kind;
            cfg
        }
        None => {
            let seed = common.seed.ok_or_else(|| {
                RunError::Validation("seed: required (pass --seed or a config file)".into())
            })?;
            ScenarioConfig::new(kind, seed)
        }
    };
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    if let Some(out_dir) = &common.out_dir {
        config.out_dir = out_dir.clone();
    }
    if let Some(modes) = common.modes {
        config.modes = modes;
    }
    if let Some(cutoff) = common.cutoff {
        config.cutoff = cutoff;
    }
    Ok(config)
}

fn build_config(command: &Command) -> Result<ScenarioConfig, RunError> {
    match command {
        Command::Simulate {
            common,
            steps,
            jitter,
        } => {
            let mut cfg = load_config(ExperimentKind::Simulate, common)?;
            if let Some(steps) = steps {
                cfg.steps = *steps;
            }
            if let Some(jitter) = jitter {
                cfg.jitter = *jitter;
            }
            Ok(cfg)
        }
        Command::Cvalue {
            common,
            portfolio,
            state,
        } => {
            let mut cfg = load_config(ExperimentKind::Cvalue, common)?;
            if portfolio.is_some() {
                cfg.portfolio = portfolio.clone();
            }
            if state.is_some() {
                cfg.state = state.clone();
            }
            Ok(cfg)
        }
        Command::OrderTest {
            common,
            set_a,
            set_b,
            synthesize,
            permutations,
            runs,
            jitter,
        } => {
            let mut cfg = load_config(ExperimentKind::OrderTest, common)?;
            if set_a.is_some() {
                cfg.set_a = set_a.clone();
            }
            if set_b.is_some() {
                cfg.set_b = set_b.clone();
            }
            if *synthesize {
                cfg.synthesize = true;
            }
            if let Some(n) = permutations {
                cfg.n_permutations = *n;
            }
            if let Some(runs) = runs {
                cfg.runs_per_order = *runs;
            }
            if let Some(jitter) = jitter {
                cfg.jitter = *jitter;
            }
            Ok(cfg)
        }
        Command::Interference {
            common,
            input,
            shuffles,
        } => {
            let mut cfg = load_config(ExperimentKind::Interference, common)?;
            if input.is_some() {
                cfg.input = input.clone();
            }
            if let Some(n) = shuffles {
                cfg.n_shuffles = *n;
            }
            Ok(cfg)
        }
        Command::Cci { common, input } => {
            let mut cfg = load_config(ExperimentKind::Cci, common)?;
            if input.is_some() {
                cfg.input = input.clone();
            }
            Ok(cfg)
        }
        Command::Demo { common } => load_config(ExperimentKind::Demo, common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match build_config(&cli.command) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&config) {
        Ok(artifacts) => {
            for path in artifacts {
                println!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
