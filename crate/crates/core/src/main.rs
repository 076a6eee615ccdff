use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use qdenoise::encoding::{read_signal, write_signal};
use qdenoise::harness::{run_experiment_to_dir, selftest::run_selftest, snr_db, ExperimentConfig, Profile};
use qdenoise::pipeline::{denoise, Method};

#[derive(Parser)]
#[command(name = "qdenoise", version, about = "Adaptive frequency-domain quantum signal denoising simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Smoke,
    Desk,
    Full,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Self {
        match p {
            ProfileArg::Smoke => Profile::Smoke,
            ProfileArg::Desk => Profile::Desk,
            ProfileArg::Full => Profile::Full,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Denoise one signal file.
    Denoise {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value = "proposed")]
        method: String,
        /// Experiment config whose [experiment] section supplies the denoiser settings.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum)]
        profile: Option<ProfileArg>,
        /// Reference signal for reporting SNR.
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// Run a config-driven batch experiment.
    Experiment {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum)]
        profile: Option<ProfileArg>,
    },
    /// Run the oracle-equivalence checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load_config(config: Option<PathBuf>, profile: Option<ProfileArg>) -> anyhow::Result<ExperimentConfig> {
    let mut cfg = match config {
        Some(path) => ExperimentConfig::load(&path)?,
        None => ExperimentConfig::for_profile(profile.map_or(Profile::Desk, Into::into)),
    };
    if let Some(p) = profile {
        cfg.apply_profile(p.into());
    }
    Ok(cfg)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Denoise { input, output, method, config, profile, reference } => {
            let cfg = load_config(config, profile)?;
            let method: Method = method.parse()?;
            let y = read_signal(&input).with_context(|| format!("reading {}", input.display()))?;
            let r = denoise(method, &y, &cfg.denoise)?;
            write_signal(&output, &r.denoised)?;
            eprintln!(
                "{method}: {} samples, {} amplification rounds, {} clamped",
                r.denoised.len(),
                r.iterations_used,
                r.clamped_samples
            );
            if let Some(path) = reference {
                let clean = read_signal(&path)?;
                eprintln!("snr in {:.3} dB, out {:.3} dB", snr_db(&clean, &y)?, snr_db(&clean, &r.denoised)?);
            }
            Ok(true)
        }
        Command::Experiment { config, out, seed, threads, profile } => {
            let mut cfg = load_config(config, profile)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(t) = threads {
                cfg.threads = t;
            }
            let report = run_experiment_to_dir(&cfg, &out)?;
            print!("{}", qdenoise::harness::summary_text(&report));
            if !report.errors.is_empty() {
                for e in &report.errors {
                    eprintln!("error: {} trial {}: {}", e.scenario, e.trial, e.message);
                }
                bail!("{} trial(s) failed", report.errors.len());
            }
            Ok(true)
        }
        Command::Selftest { seed } => {
            let checks = run_selftest(seed);
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            Ok(checks.iter().all(|c| c.passed))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
