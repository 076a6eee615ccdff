//! Metrics, synthetic signals, configuration, experiments and plot data.

mod config;
mod experiment;
mod metrics;
mod plot;
pub mod selftest;
mod signals;

pub use config::{default_scenarios, parse_config, ExperimentConfig, Profile, ScenarioConfig};
pub use experiment::{
    fmt_num, run_experiment, run_experiment_to_dir, summary_text, write_report, AggregateRow, ExperimentReport,
    GridRow, Trace, TrialError, TrialRow,
};
pub use metrics::{mean_std, psnr_db, psnr_peak, snr_db};
pub use plot::emit_plot_data;
pub use signals::{generate_signal, SignalKind, TestSignalSpec, Tone};
