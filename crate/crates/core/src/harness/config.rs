//! Experiment configuration files.
//!
//! ```text
//! # comment
//! [experiment]
//! profile = desk
//! trials = 50
//! methods = proposed, qft, qwt
//!
//! [scenario awgn]
//! awgn_snr_db = 15
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::circuits::OracleMode;
use crate::encoding::ThresholdRule;
use crate::error::{Error, Result};
use crate::noise::{ClassicalNoise, NoiseSpec, PhaseNoiseMode};
use crate::pipeline::{AmplifySchedule, DenoiseConfig, IterationMode, Method};

use super::signals::SignalKind;

/// Named layout presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Smoke,
    Desk,
    Full,
}

impl Profile {
    pub fn sizes(&self) -> (usize, usize, usize, usize) {
        let c = match self {
            Profile::Smoke => DenoiseConfig::smoke(),
            Profile::Desk => DenoiseConfig::desk(),
            Profile::Full => DenoiseConfig::full(),
        };
        (c.m, c.p, c.a, c.b)
    }
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smoke" => Ok(Profile::Smoke),
            "desk" => Ok(Profile::Desk),
            "full" => Ok(Profile::Full),
            _ => Err(Error::Input(format!("unknown profile `{s}` (expected smoke, desk or full)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    /// Noise of the scenario; its seed is replaced per trial.
    pub noise: NoiseSpec,
}

impl ScenarioConfig {
    /// Label such as `awgn+phase`, or `clean`.
    pub fn noise_kind(&self) -> String {
        let mut parts = Vec::new();
        match self.noise.classical {
            Some(ClassicalNoise::Awgn { .. }) => parts.push("awgn"),
            Some(ClassicalNoise::Poisson { .. }) => parts.push("poisson"),
            None => {}
        }
        if self.noise.phase_epsilon.is_some() {
            parts.push("phase");
        }
        if self.noise.bit_flip.is_some() {
            parts.push("bitflip");
        }
        if parts.is_empty() {
            "clean".into()
        } else {
            parts.join("+")
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub denoise: DenoiseConfig,
    pub trials: usize,
    pub seed: u64,
    pub signal: SignalKind,
    pub methods: Vec<Method>,
    /// Baseline keep fractions searched per scenario; empty means `denoise.keep_fraction` only.
    pub keep_fraction_grid: Vec<f64>,
    pub record_runtime: bool,
    pub threads: usize,
    /// Trial whose signals are written as traces.
    pub trace_trial: usize,
    pub scenarios: Vec<ScenarioConfig>,
}

fn scenario(name: &str, classical: Option<ClassicalNoise>, eps: Option<f64>, flip: Option<f64>) -> ScenarioConfig {
    ScenarioConfig {
        name: name.into(),
        noise: NoiseSpec { classical, phase_epsilon: eps, bit_flip: flip, ..NoiseSpec::default() },
    }
}

/// AWGN 15 dB, phase ε = 0.1, their mix, bit flip, Poisson and Poisson mixed with phase noise.
pub fn default_scenarios() -> Vec<ScenarioConfig> {
    let awgn = Some(ClassicalNoise::Awgn { snr_db: 15.0 });
    let poisson = Some(ClassicalNoise::Poisson { peak: 30.0 });
    vec![
        scenario("awgn", awgn, None, None),
        scenario("phase", None, Some(0.1), None),
        scenario("mixed", awgn, Some(0.1), None),
        scenario("bitflip", None, Some(0.1), Some(0.05)),
        scenario("poisson", poisson, None, None),
        scenario("mixed-poisson", poisson, Some(0.1), None),
    ]
}

impl ExperimentConfig {
    pub fn for_profile(profile: Profile) -> Self {
        let (m, p, a, b) = profile.sizes();
        ExperimentConfig {
            denoise: DenoiseConfig::new(m, p, a, b),
            trials: 50,
            seed: 0,
            signal: SignalKind::piecewise_smooth(),
            methods: vec![Method::Proposed, Method::Qft, Method::Qwt],
            keep_fraction_grid: vec![0.125, 0.25, 0.5],
            record_runtime: false,
            threads: 1,
            trace_trial: 0,
            scenarios: default_scenarios(),
        }
    }

    /// Replaces the register sizes and re-derives the default threshold rule.
    pub fn apply_profile(&mut self, profile: Profile) {
        let (m, p, a, b) = profile.sizes();
        let rule_was_default = self.denoise.threshold_rule == ThresholdRule::default_for(1 << self.denoise.m);
        self.denoise.m = m;
        self.denoise.p = p;
        self.denoise.a = a;
        self.denoise.b = b;
        if rule_was_default {
            self.denoise.threshold_rule = ThresholdRule::default_for(1 << m);
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.denoise.validate()?;
        if self.trials == 0 {
            return Err(Error::Input("trials must be positive".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Input("no methods selected".into()));
        }
        if self.threads == 0 {
            return Err(Error::Input("threads must be positive".into()));
        }
        for f in &self.keep_fraction_grid {
            if !(*f > 0.0 && *f <= 1.0) {
                return Err(Error::Input(format!("keep fraction {f} outside (0, 1]")));
            }
        }
        for s in &self.scenarios {
            s.noise.validate()?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        parse_config(&text, base)
    }
}

struct Entry {
    key: String,
    value: String,
    line: usize,
}

struct Section {
    scenario: Option<String>,
    entries: Vec<Entry>,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Config { line, message: message.into() }
}

fn parse_num<T: FromStr>(e: &Entry) -> Result<T> {
    e.value
        .parse::<T>()
        .map_err(|_| err(e.line, format!("key `{}`: cannot parse `{}`", e.key, e.value)))
}

fn parse_bool(e: &Entry) -> Result<bool> {
    match e.value.as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(err(e.line, format!("key `{}`: expected true or false, got `{}`", e.key, e.value))),
    }
}

fn parse_list<T: FromStr>(e: &Entry) -> Result<Vec<T>> {
    e.value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|_| err(e.line, format!("key `{}`: cannot parse `{s}`", e.key))))
        .collect()
}

fn sections(text: &str) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split(['#', ';']).next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(head) = body.strip_prefix('[') {
            let head = head
                .strip_suffix(']')
                .ok_or_else(|| err(line, format!("unterminated section header `{body}`")))?
                .trim();
            let scenario = if head == "experiment" {
                None
            } else if let Some(name) = head.strip_prefix("scenario") {
                let name = name.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(err(line, format!("scenario header needs a single-word name: `[{head}]`")));
                }
                Some(name.to_string())
            } else {
                return Err(err(line, format!("unknown section `[{head}]`")));
            };
            out.push(Section { scenario, entries: Vec::new() });
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| err(line, format!("expected `key = value`, got `{body}`")))?;
        let section = out
            .last_mut()
            .ok_or_else(|| err(line, "key outside of any section".to_string()))?;
        let key = key.trim().to_string();
        if section.entries.iter().any(|e| e.key == key) {
            return Err(err(line, format!("duplicate key `{key}`")));
        }
        section.entries.push(Entry { key, value: value.trim().to_string(), line });
    }
    Ok(out)
}

fn parse_signal_kind(e: &Entry, base: &Path) -> Result<SignalKind> {
    let v = e.value.as_str();
    if let Some(path) = v.strip_prefix("file:") {
        let p = PathBuf::from(path.trim());
        return Ok(SignalKind::File(if p.is_absolute() { p } else { base.join(p) }));
    }
    match v {
        "piecewise-smooth" => Ok(SignalKind::piecewise_smooth()),
        "multi-tone" => Ok(SignalKind::MultiTone { tones: Vec::new() }),
        "blocks" => Ok(SignalKind::Blocks { block_len: 0 }),
        _ => Err(err(
            e.line,
            format!("key `signal`: unknown kind `{v}` (piecewise-smooth, multi-tone, blocks, file:PATH)"),
        )),
    }
}

fn parse_rule_kind(e: &Entry) -> Result<(String, Option<String>)> {
    let (kind, arg) = match e.value.split_once(':') {
        Some((k, a)) => (k.trim().to_string(), Some(a.trim().to_string())),
        None => (e.value.clone(), None),
    };
    match (kind.as_str(), &arg) {
        ("linear", None) | ("constant", Some(_)) | ("table", Some(_)) => Ok((kind, arg)),
        _ => Err(err(
            e.line,
            format!("key `threshold_rule`: expected linear, constant:T or table:T0,T1,..., got `{}`", e.value),
        )),
    }
}

/// Parses a configuration; relative `file:` paths resolve against `base`.
pub fn parse_config(text: &str, base: &Path) -> Result<ExperimentConfig> {
    let secs = sections(text)?;
    let mut cfg = ExperimentConfig::for_profile(Profile::Desk);
    let mut explicit_scenarios = Vec::new();
    let mut rule: Option<(String, Option<String>, usize)> = None;
    let (mut tau_min, mut tau_max, mut reference_max) = (None, None, None);
    let mut sizes: [Option<usize>; 4] = [None; 4];
    let mut keep_fraction_set = false;

    for sec in &secs {
        if let Some(name) = &sec.scenario {
            if explicit_scenarios.iter().any(|s: &ScenarioConfig| &s.name == name) {
                let line = sec.entries.first().map_or(0, |e| e.line);
                return Err(err(line, format!("duplicate scenario `{name}`")));
            }
            let mut noise = NoiseSpec::default();
            for e in &sec.entries {
                match e.key.as_str() {
                    "awgn_snr_db" | "poisson_peak" => {
                        if noise.classical.is_some() {
                            return Err(err(e.line, format!("key `{}`: scenario already has classical noise", e.key)));
                        }
                        let v: f64 = parse_num(e)?;
                        noise.classical = Some(if e.key == "awgn_snr_db" {
                            ClassicalNoise::Awgn { snr_db: v }
                        } else {
                            ClassicalNoise::Poisson { peak: v }
                        });
                    }
                    "epsilon" => noise.phase_epsilon = Some(parse_num(e)?),
                    "p_flip" => noise.bit_flip = Some(parse_num(e)?),
                    "phase_mode" => {
                        noise.phase_mode = match e.value.as_str() {
                            "post-rotation" => PhaseNoiseMode::PostRotation,
                            "perturb-angle" => PhaseNoiseMode::PerturbAngle,
                            _ => return Err(err(e.line, format!("key `phase_mode`: unknown mode `{}`", e.value))),
                        }
                    }
                    other => return Err(err(e.line, format!("unknown scenario key `{other}`"))),
                }
            }
            noise
                .validate()
                .map_err(|x| err(sec.entries.first().map_or(0, |e| e.line), format!("scenario `{name}`: {x}")))?;
            explicit_scenarios.push(ScenarioConfig { name: name.clone(), noise });
            continue;
        }
        // Profile first so explicit sizes override it regardless of order.
        if let Some(e) = sec.entries.iter().find(|e| e.key == "profile") {
            let p: Profile = e.value.parse().map_err(|x: Error| err(e.line, format!("key `profile`: {x}")))?;
            cfg.apply_profile(p);
        }
        for e in &sec.entries {
            let d = &mut cfg.denoise;
            match e.key.as_str() {
                "profile" => {}
                "m" => sizes[0] = Some(parse_num(e)?),
                "p" => sizes[1] = Some(parse_num(e)?),
                "a" => sizes[2] = Some(parse_num(e)?),
                "b" => sizes[3] = Some(parse_num(e)?),
                "trials" => cfg.trials = parse_num(e)?,
                "seed" => cfg.seed = parse_num(e)?,
                "threads" => cfg.threads = parse_num(e)?,
                "trace_trial" => cfg.trace_trial = parse_num(e)?,
                "max_qubits" => d.max_qubits = parse_num(e)?,
                "signal" => cfg.signal = parse_signal_kind(e, base)?,
                "methods" => {
                    cfg.methods = parse_list::<String>(e)?
                        .iter()
                        .map(|s| s.parse::<Method>().map_err(|x| err(e.line, format!("key `methods`: {x}"))))
                        .collect::<Result<_>>()?
                }
                "threshold_rule" => {
                    let (k, a) = parse_rule_kind(e)?;
                    rule = Some((k, a, e.line));
                }
                "tau_min" => tau_min = Some(parse_num::<i64>(e)?),
                "tau_max" => tau_max = Some(parse_num::<i64>(e)?),
                "reference_max" => reference_max = Some(parse_num::<u64>(e)?),
                "oracle_mode" => {
                    d.oracle_mode = match e.value.as_str() {
                        "symmetric" => OracleMode::Symmetric,
                        "literal" => OracleMode::Literal,
                        _ => return Err(err(e.line, format!("key `oracle_mode`: unknown mode `{}`", e.value))),
                    }
                }
                "iteration_mode" => {
                    d.iteration_mode = match e.value.as_str() {
                        "oracle-exact" => IterationMode::OracleExact,
                        "count-formula" => IterationMode::CountFormula,
                        v => match v.strip_prefix("fixed:").map(|r| r.trim().parse::<usize>()) {
                            Some(Ok(r)) => IterationMode::Fixed(r),
                            _ => {
                                return Err(err(
                                    e.line,
                                    format!("key `iteration_mode`: expected oracle-exact, count-formula or fixed:R, got `{v}`"),
                                ))
                            }
                        },
                    }
                }
                "schedule" => {
                    d.schedule = match e.value.as_str() {
                        "phase-matched" => AmplifySchedule::PhaseMatched,
                        "standard" => AmplifySchedule::Standard,
                        _ => return Err(err(e.line, format!("key `schedule`: unknown schedule `{}`", e.value))),
                    }
                }
                "keep_fraction" => {
                    d.keep_fraction = parse_num(e)?;
                    keep_fraction_set = true;
                }
                "keep_fraction_grid" => cfg.keep_fraction_grid = parse_list(e)?,
                "qwt_levels" => d.qwt_levels = Some(parse_num(e)?),
                "record_runtime" => cfg.record_runtime = parse_bool(e)?,
                other => return Err(err(e.line, format!("unknown experiment key `{other}`"))),
            }
        }
    }

    let d = &mut cfg.denoise;
    for (slot, val) in [&mut d.m, &mut d.p, &mut d.a, &mut d.b].into_iter().zip(sizes) {
        if let Some(v) = val {
            *slot = v;
        }
    }
    if d.m == 0 || d.m > 20 {
        return Err(err(0, format!("key `m`: {} outside 1..=20", d.m)));
    }
    let mm = 1i64 << d.m;
    d.threshold_rule = match rule {
        None | Some((_, None, _)) => ThresholdRule::Linear {
            tau_min: tau_min.unwrap_or(1),
            tau_max: tau_max.unwrap_or((mm / 4).max(1)),
            reference_max,
        },
        Some((k, Some(arg), line)) if k == "constant" => ThresholdRule::Constant(
            arg.parse().map_err(|_| err(line, format!("key `threshold_rule`: bad constant `{arg}`")))?,
        ),
        Some((_, Some(arg), line)) => ThresholdRule::Table(
            arg.split(',')
                .map(|s| s.trim().parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| err(line, format!("key `threshold_rule`: bad table `{arg}`")))?,
        ),
    };
    if keep_fraction_set && !secs.iter().any(|s| s.scenario.is_none() && s.entries.iter().any(|e| e.key == "keep_fraction_grid")) {
        cfg.keep_fraction_grid = Vec::new();
    }
    if let SignalKind::Blocks { block_len } = &mut cfg.signal {
        if *block_len == 0 {
            *block_len = 1 << cfg.denoise.m;
        }
    }
    if !explicit_scenarios.is_empty() {
        cfg.scenarios = explicit_scenarios;
    }
    cfg.validate().map_err(|e| match e {
        Error::Config { .. } => e,
        other => err(0, other.to_string()),
    })?;
    Ok(cfg)
}
