use std::collections::BTreeMap;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{ExperimentConfig, ScenarioConfig};
use super::metrics::{mean_std, psnr_db, psnr_peak, snr_db};
use super::signals::{generate_signal, TestSignalSpec};
use crate::encoding::segment_and_quantize;
use crate::error::Result;
use crate::pipeline::{denoise, DenoiseConfig, Method};

/// Generator stream of the classical noise for scenario index `s`.
fn classical_stream(s: usize) -> u64 {
    1 + s as u64
}

/// Seed of the gate-noise hooks for a trial and scenario.
fn hook_seed(trial_seed: u64, s: usize) -> u64 {
    trial_seed ^ ((s as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRow {
    pub scenario: String,
    pub noise_kind: String,
    pub method: Method,
    pub trial: usize,
    pub seed: u64,
    pub keep_fraction: Option<f64>,
    pub snr_in_db: f64,
    pub psnr_in_db: f64,
    pub snr_out_db: f64,
    pub psnr_out_db: f64,
    pub iterations_used: usize,
    pub marked_probability_before: f64,
    pub marked_probability_after: f64,
    pub clamped_samples: usize,
    pub runtime_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub scenario: String,
    pub noise_kind: String,
    pub method: Method,
    pub keep_fraction: Option<f64>,
    pub trials: usize,
    pub mean_snr_in_db: f64,
    pub mean_snr_out_db: f64,
    pub std_snr_out_db: f64,
    pub mean_psnr_in_db: f64,
    pub mean_psnr_out_db: f64,
    pub std_psnr_out_db: f64,
}

/// Mean scores of one baseline keep fraction.
#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub scenario: String,
    pub method: Method,
    pub keep_fraction: f64,
    pub trials: usize,
    pub mean_snr_out_db: f64,
    pub mean_psnr_out_db: f64,
    pub selected: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialError {
    pub scenario: String,
    pub method: Option<Method>,
    pub trial: usize,
    pub keep_fraction: Option<f64>,
    pub message: String,
}

/// Signals of one representative trial.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub scenario: String,
    pub clean: Vec<f64>,
    pub noisy: Vec<f64>,
    pub outputs: BTreeMap<Method, Vec<f64>>,
    /// Quantization offset and step of the noisy signal.
    pub scale_offset: f64,
    pub scale_factor: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub rows: Vec<TrialRow>,
    pub aggregates: Vec<AggregateRow>,
    pub grid: Vec<GridRow>,
    pub errors: Vec<TrialError>,
    pub traces: Vec<Trace>,
}

impl ExperimentReport {
    pub fn aggregate(&self, scenario: &str, method: Method) -> Option<&AggregateRow> {
        self.aggregates.iter().find(|a| a.scenario == scenario && a.method == method)
    }
}

struct Job {
    scenario: usize,
    trial: usize,
    method: Method,
    keep_fraction: Option<f64>,
}

struct JobOutput {
    denoised: Vec<f64>,
    iterations_used: usize,
    p_before: f64,
    p_after: f64,
    clamped: usize,
    runtime_ms: f64,
}

struct TrialInput {
    clean: Vec<f64>,
    noisy: Vec<f64>,
}

fn trial_seed(cfg: &ExperimentConfig, trial: usize) -> u64 {
    cfg.seed.wrapping_add(trial as u64)
}

fn prepare_inputs(cfg: &ExperimentConfig) -> Vec<Vec<Result<TrialInput>>> {
    let spec = TestSignalSpec {
        kind: cfg.signal.clone(),
        n: cfg.denoise.signal_len(),
        segment_len: 1 << cfg.denoise.m,
    };
    let clean: Vec<Result<Vec<f64>>> = (0..cfg.trials)
        .map(|t| generate_signal(&spec, &mut ChaCha8Rng::seed_from_u64(trial_seed(cfg, t))))
        .collect();
    cfg.scenarios
        .iter()
        .enumerate()
        .map(|(s, sc)| {
            clean
                .iter()
                .enumerate()
                .map(|(t, c)| {
                    let c = c.clone()?;
                    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg, t));
                    rng.set_stream(classical_stream(s));
                    let noisy = sc.noise.apply_classical(&c, &mut rng)?;
                    Ok(TrialInput { clean: c, noisy })
                })
                .collect()
        })
        .collect()
}

fn method_config(cfg: &ExperimentConfig, sc: &ScenarioConfig, s: usize, trial: usize, keep: Option<f64>) -> DenoiseConfig {
    let mut d = cfg.denoise.clone();
    d.noise = sc.noise;
    d.noise.classical = None;
    d.noise.seed = hook_seed(trial_seed(cfg, trial), s);
    if let Some(f) = keep {
        d.keep_fraction = f;
    }
    d
}

fn run_job(cfg: &ExperimentConfig, inputs: &[Vec<Result<TrialInput>>], job: &Job) -> Result<JobOutput> {
    let input = inputs[job.scenario][job.trial].as_ref().map_err(Clone::clone)?;
    let sc = &cfg.scenarios[job.scenario];
    let d = method_config(cfg, sc, job.scenario, job.trial, job.keep_fraction);
    let start = Instant::now();
    let r = denoise(job.method, &input.noisy, &d)?;
    Ok(JobOutput {
        denoised: r.denoised,
        iterations_used: r.iterations_used,
        p_before: r.marked_probability_before,
        p_after: r.marked_probability_after,
        clamped: r.clamped_samples,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn baseline_fractions(cfg: &ExperimentConfig) -> Vec<f64> {
    if cfg.keep_fraction_grid.is_empty() {
        vec![cfg.denoise.keep_fraction]
    } else {
        cfg.keep_fraction_grid.clone()
    }
}

fn build_jobs(cfg: &ExperimentConfig) -> Vec<Job> {
    let mut methods = cfg.methods.clone();
    methods.sort();
    methods.dedup();
    let mut jobs = Vec::new();
    for s in 0..cfg.scenarios.len() {
        for &method in &methods {
            let keeps: Vec<Option<f64>> = if method.is_baseline() {
                baseline_fractions(cfg).into_iter().map(Some).collect()
            } else {
                vec![None]
            };
            for keep_fraction in keeps {
                for trial in 0..cfg.trials {
                    jobs.push(Job { scenario: s, trial, method, keep_fraction });
                }
            }
        }
    }
    jobs
}

fn execute(cfg: &ExperimentConfig, inputs: &[Vec<Result<TrialInput>>], jobs: &[Job]) -> Vec<Result<JobOutput>> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<JobOutput>>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());
    let threads = cfg.threads.clamp(1, jobs.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let j = &jobs[i];
                log::debug!(
                    "job {}/{}: {} {} trial {}",
                    i + 1,
                    jobs.len(),
                    cfg.scenarios[j.scenario].name,
                    j.method,
                    j.trial
                );
                let out = run_job(cfg, inputs, j);
                slots.lock().expect("result lock")[i] = Some(out);
            });
        }
    });
    slots
        .into_inner()
        .expect("result lock")
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect()
}

/// Runs every (scenario, method, trial) and scores it against the clean signal.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let inputs = prepare_inputs(cfg);
    let jobs = build_jobs(cfg);
    log::info!(
        "{} jobs over {} scenarios x {} trials",
        jobs.len(),
        cfg.scenarios.len(),
        cfg.trials
    );
    let outputs = execute(cfg, &inputs, &jobs);

    let mut errors = Vec::new();
    let mut candidate_rows: BTreeMap<(usize, Method), BTreeMap<u64, Vec<TrialRow>>> = BTreeMap::new();
    let mut trace_outputs: BTreeMap<(usize, Method, u64), Vec<f64>> = BTreeMap::new();
    for (job, out) in jobs.iter().zip(outputs) {
        let sc = &cfg.scenarios[job.scenario];
        let key_frac = job.keep_fraction.map_or(0, f64::to_bits);
        let scored = out.and_then(|o| {
            let input = inputs[job.scenario][job.trial].as_ref().map_err(Clone::clone)?;
            let row = TrialRow {
                scenario: sc.name.clone(),
                noise_kind: sc.noise_kind(),
                method: job.method,
                trial: job.trial,
                seed: trial_seed(cfg, job.trial),
                keep_fraction: job.keep_fraction,
                snr_in_db: snr_db(&input.clean, &input.noisy)?,
                psnr_in_db: psnr_db(&input.clean, &input.noisy)?,
                snr_out_db: snr_db(&input.clean, &o.denoised)?,
                psnr_out_db: psnr_db(&input.clean, &o.denoised)?,
                iterations_used: o.iterations_used,
                marked_probability_before: o.p_before,
                marked_probability_after: o.p_after,
                clamped_samples: o.clamped,
                runtime_ms: cfg.record_runtime.then_some(o.runtime_ms),
            };
            Ok((row, o.denoised))
        });
        match scored {
            Ok((row, denoised)) => {
                if job.trial == cfg.trace_trial {
                    trace_outputs.insert((job.scenario, job.method, key_frac), denoised);
                }
                candidate_rows
                    .entry((job.scenario, job.method))
                    .or_default()
                    .entry(key_frac)
                    .or_default()
                    .push(row);
            }
            Err(e) => errors.push(TrialError {
                scenario: sc.name.clone(),
                method: Some(job.method),
                trial: job.trial,
                keep_fraction: job.keep_fraction,
                message: e.to_string(),
            }),
        }
    }

    let mut rows = Vec::new();
    let mut grid = Vec::new();
    let mut aggregates = Vec::new();
    let mut chosen: BTreeMap<(usize, Method), u64> = BTreeMap::new();
    for ((s, method), by_frac) in &candidate_rows {
        let mut best: Option<(u64, f64)> = None;
        if method.is_baseline() {
            for frac in baseline_fractions(cfg) {
                let Some(rs) = by_frac.get(&frac.to_bits()) else { continue };
                let psnr: Vec<f64> = rs.iter().map(|r| r.psnr_out_db).collect();
                let (mean, _) = mean_std(&psnr);
                if best.is_none_or(|(_, b)| mean > b) {
                    best = Some((frac.to_bits(), mean));
                }
            }
            for frac in baseline_fractions(cfg) {
                let Some(rs) = by_frac.get(&frac.to_bits()) else { continue };
                grid.push(GridRow {
                    scenario: cfg.scenarios[*s].name.clone(),
                    method: *method,
                    keep_fraction: frac,
                    trials: rs.len(),
                    mean_snr_out_db: mean_std(&rs.iter().map(|r| r.snr_out_db).collect::<Vec<_>>()).0,
                    mean_psnr_out_db: mean_std(&rs.iter().map(|r| r.psnr_out_db).collect::<Vec<_>>()).0,
                    selected: best.map(|(b, _)| b) == Some(frac.to_bits()),
                });
            }
        } else {
            best = by_frac.keys().next().map(|&k| (k, 0.0));
        }
        let Some((key, _)) = best else { continue };
        chosen.insert((*s, *method), key);
        let rs = &by_frac[&key];
        let col = |f: fn(&TrialRow) -> f64| mean_std(&rs.iter().map(f).collect::<Vec<_>>());
        let (snr_out, snr_sd) = col(|r| r.snr_out_db);
        let (psnr_out, psnr_sd) = col(|r| r.psnr_out_db);
        aggregates.push(AggregateRow {
            scenario: cfg.scenarios[*s].name.clone(),
            noise_kind: cfg.scenarios[*s].noise_kind(),
            method: *method,
            keep_fraction: rs[0].keep_fraction,
            trials: rs.len(),
            mean_snr_in_db: col(|r| r.snr_in_db).0,
            mean_snr_out_db: snr_out,
            std_snr_out_db: snr_sd,
            mean_psnr_in_db: col(|r| r.psnr_in_db).0,
            mean_psnr_out_db: psnr_out,
            std_psnr_out_db: psnr_sd,
        });
        rows.extend(rs.iter().cloned());
    }

    let mut traces = Vec::new();
    if cfg.trace_trial < cfg.trials {
        for (s, sc) in cfg.scenarios.iter().enumerate() {
            let Ok(input) = &inputs[s][cfg.trace_trial] else { continue };
            let mut outputs = BTreeMap::new();
            for (&(ss, method), &key) in &chosen {
                if ss == s {
                    if let Some(v) = trace_outputs.get(&(s, method, key)) {
                        outputs.insert(method, v.clone());
                    }
                }
            }
            let d = &cfg.denoise;
            let q = segment_and_quantize(&input.noisy, 1 << d.p, 1 << d.m, d.a)?;
            traces.push(Trace {
                scenario: sc.name.clone(),
                clean: input.clean.clone(),
                noisy: input.noisy.clone(),
                outputs,
                scale_offset: q.scale_offset(),
                scale_factor: q.scale_factor(),
            });
        }
    }
    Ok(ExperimentReport { config: cfg.clone(), rows, aggregates, grid, errors, traces })
}

/// Shortest round-trip decimal; `inf`, `-inf` and `nan` for non-finite values.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        x.to_string()
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, fmt_num)
}

/// Writes trials.csv, aggregate.csv, grid.csv, errors.csv and summary.txt.
pub fn write_report(report: &ExperimentReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let runtime = report.config.record_runtime;

    let mut w = csv::Writer::from_path(dir.join("trials.csv"))?;
    let mut header = vec![
        "scenario", "noise_kind", "method", "trial", "seed", "keep_fraction", "snr_in_db", "psnr_in_db",
        "snr_out_db", "psnr_out_db", "iterations_used", "marked_probability_before",
        "marked_probability_after", "clamped_samples",
    ];
    if runtime {
        header.push("runtime_ms");
    }
    w.write_record(&header)?;
    for r in &report.rows {
        let mut rec = vec![
            r.scenario.clone(),
            r.noise_kind.clone(),
            r.method.to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            fmt_opt(r.keep_fraction),
            fmt_num(r.snr_in_db),
            fmt_num(r.psnr_in_db),
            fmt_num(r.snr_out_db),
            fmt_num(r.psnr_out_db),
            r.iterations_used.to_string(),
            fmt_num(r.marked_probability_before),
            fmt_num(r.marked_probability_after),
            r.clamped_samples.to_string(),
        ];
        if runtime {
            rec.push(fmt_opt(r.runtime_ms));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;

    let mut w = csv::Writer::from_path(dir.join("aggregate.csv"))?;
    w.write_record([
        "scenario", "noise_kind", "method", "keep_fraction", "trials", "mean_snr_in_db", "mean_snr_out_db",
        "std_snr_out_db", "mean_psnr_in_db", "mean_psnr_out_db", "std_psnr_out_db",
    ])?;
    for a in &report.aggregates {
        w.write_record([
            a.scenario.clone(),
            a.noise_kind.clone(),
            a.method.to_string(),
            fmt_opt(a.keep_fraction),
            a.trials.to_string(),
            fmt_num(a.mean_snr_in_db),
            fmt_num(a.mean_snr_out_db),
            fmt_num(a.std_snr_out_db),
            fmt_num(a.mean_psnr_in_db),
            fmt_num(a.mean_psnr_out_db),
            fmt_num(a.std_psnr_out_db),
        ])?;
    }
    w.flush()?;

    let mut w = csv::Writer::from_path(dir.join("grid.csv"))?;
    w.write_record(["scenario", "method", "keep_fraction", "trials", "mean_snr_out_db", "mean_psnr_out_db", "selected"])?;
    for g in &report.grid {
        w.write_record([
            g.scenario.clone(),
            g.method.to_string(),
            fmt_num(g.keep_fraction),
            g.trials.to_string(),
            fmt_num(g.mean_snr_out_db),
            fmt_num(g.mean_psnr_out_db),
            g.selected.to_string(),
        ])?;
    }
    w.flush()?;

    let mut w = csv::Writer::from_path(dir.join("errors.csv"))?;
    w.write_record(["scenario", "method", "trial", "keep_fraction", "error"])?;
    for e in &report.errors {
        w.write_record([
            e.scenario.clone(),
            e.method.map_or_else(String::new, |m| m.to_string()),
            e.trial.to_string(),
            fmt_opt(e.keep_fraction),
            e.message.clone(),
        ])?;
    }
    w.flush()?;

    std::fs::write(dir.join("summary.txt"), summary_text(report))?;
    Ok(())
}

/// Human-readable report header and per-scenario means.
pub fn summary_text(report: &ExperimentReport) -> String {
    use std::fmt::Write;
    let c = &report.config;
    let d = &c.denoise;
    let mut s = String::new();
    let _ = writeln!(s, "layout: m={} p={} a={} b={} (N={}, M={})", d.m, d.p, d.a, d.b, d.signal_len(), 1 << d.m);
    let _ = writeln!(s, "trials: {}  seed: {}  signal: {}", c.trials, c.seed, c.signal.name());
    let _ = writeln!(
        s,
        "threshold rule: {:?}  oracle: {:?}  iterations: {:?}  schedule: {:?}",
        d.threshold_rule, d.oracle_mode, d.iteration_mode, d.schedule
    );
    let _ = writeln!(
        s,
        "PSNR convention: peak = max |clean - min(0, min clean)| on the original scale; \
         PSNR = 10 log10(peak^2 N / sum err^2); SNR = 10 log10(sum clean^2 / sum err^2); inf marks an exact match"
    );
    let _ = writeln!(
        s,
        "quantization: codes 0..={} (a={}), theta = pi*s/2^{}; code = round((y - offset)/step)",
        1u64 << (d.a - 1),
        d.a,
        d.a
    );
    for t in &report.traces {
        let _ = writeln!(
            s,
            "  {} trial {}: offset {} step {} peak {}",
            t.scenario,
            c.trace_trial,
            fmt_num(t.scale_offset),
            fmt_num(t.scale_factor),
            fmt_num(psnr_peak(&t.clean))
        );
    }
    let _ = writeln!(s, "scenario, method, keep_fraction, mean psnr_out, mean snr_in -> mean snr_out");
    for a in &report.aggregates {
        let _ = writeln!(
            s,
            "  {}, {}, {}, {:.3}, {:.3} -> {:.3}",
            a.scenario,
            a.method,
            fmt_opt(a.keep_fraction),
            a.mean_psnr_out_db,
            a.mean_snr_in_db,
            a.mean_snr_out_db
        );
    }
    let _ = writeln!(s, "errors: {}", report.errors.len());
    s
}

/// Runs `cfg` and writes every output file into `out`.
pub fn run_experiment_to_dir(cfg: &ExperimentConfig, out: &Path) -> Result<ExperimentReport> {
    let report = run_experiment(cfg)?;
    write_report(&report, out)?;
    super::plot::emit_plot_data(&report, out)?;
    if !report.errors.is_empty() {
        log::error!("{} trial(s) failed; see errors.csv", report.errors.len());
    }
    Ok(report)
}
