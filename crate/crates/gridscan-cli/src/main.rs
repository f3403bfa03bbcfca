//! `gridscan`: simulate synthetic grid measurement records, identify the
//! dq impedance with the local-parametric estimator or the baselines, and
//! evaluate everything against the stored truth.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gridscan::harness::{self, files, ExperimentConfig};
use gridscan::io;
use gridscan::Error;

#[derive(Parser)]
#[command(name = "gridscan", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Experiment config JSON.
    #[arg(long)]
    config: PathBuf,
    /// Output / dataset directory; defaults to the config's `output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Force the measurement-noise accuracy class to zero.
    #[arg(long)]
    no_noise: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a dataset: records, truth FRF, initial state, manifest.
    Simulate(CommonArgs),
    /// Run every configured method on an existing dataset.
    Identify(CommonArgs),
    /// Evaluate existing estimates against the dataset truth.
    Evaluate(CommonArgs),
    /// Simulate, identify and evaluate in one pass; writes report and table.
    Compare(CommonArgs),
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::InvalidSpec(_) | Error::Construction(_)
        | Error::UnderDetermined(_) => 2,
        Error::MissingInput(_) => 3,
        Error::Incompatible(_) | Error::ShapeMismatch(_) | Error::Parse(_)
        | Error::Singular(_) => 4,
        Error::Io(_) => 1,
    }
}

fn load_config(args: &CommonArgs) -> Result<(ExperimentConfig, PathBuf, PathBuf), Error> {
    let text = io::read_file(&args.config)?;
    let mut config = io::parse_experiment_config(&text)?;
    if args.no_noise {
        config.noise = config.noise.noiseless();
    }
    let base_dir = args
        .config
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    let out_dir = match (&args.out, &config.output_dir) {
        (Some(out), _) => out.clone(),
        (None, Some(out)) => base_dir.join(out),
        (None, None) => {
            return Err(Error::Config(
                "no output directory: pass --out or set output_dir".into(),
            ))
        }
    };
    Ok((config, base_dir, out_dir))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Simulate(args) => {
            let (config, base_dir, out_dir) = load_config(&args)?;
            harness::run_simulate(&config, &base_dir, &out_dir)?;
            println!("dataset written to {}", out_dir.display());
        }
        Command::Identify(args) => {
            let (config, _, out_dir) = load_config(&args)?;
            for method in &config.methods {
                let outcome = harness::run_identify(&out_dir, method)?;
                for w in &outcome.warnings {
                    eprintln!("warning [{}]: {w}", outcome.label);
                }
                println!("estimate written to {}", outcome.estimate_dir.display());
            }
        }
        Command::Evaluate(args) => {
            let (config, _, out_dir) = load_config(&args)?;
            let truth = out_dir.join(files::TRUTH_FRF);
            let mut entries = Vec::new();
            for method in &config.methods {
                let est = out_dir
                    .join(files::ESTIMATES_DIR)
                    .join(method.label())
                    .join(files::Z_FRF);
                entries.extend(harness::evaluate_frf_file(
                    &est,
                    &truth,
                    &config.bands,
                    method,
                )?);
            }
            let report = harness::CompareReport { entries };
            io::write_file(
                &out_dir.join(files::REPORT),
                &serde_json::to_string_pretty(&report).expect("report serializes"),
            )?;
            print!("{}", harness::render_table(&report));
        }
        Command::Compare(args) => {
            let (config, base_dir, out_dir) = load_config(&args)?;
            let report = harness::run_compare(&config, &base_dir, &out_dir, false)?;
            print!("{}", harness::render_table(&report));
            println!("report written to {}", out_dir.join(files::REPORT).display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
