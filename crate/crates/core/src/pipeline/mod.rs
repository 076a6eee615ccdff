//! End-to-end denoisers.

mod baselines;
mod config;
mod proposed;

pub use baselines::{denoise_baseline_qft, denoise_baseline_qwt, qft_keeps, qwt_kept_count};
pub use config::{AmplifySchedule, DenoiseConfig, IterationMode};
pub use proposed::{denoise_proposed, frequency_state, FrequencyState, HOOK_STREAM};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DenoiseResult {
    pub denoised: Vec<f64>,
    /// M_j per window (one entry for the global baselines).
    pub marked_counts: Vec<usize>,
    pub iterations_used: usize,
    pub marked_probability_before: f64,
    pub marked_probability_after: f64,
    pub registers_discarded: bool,
    pub clamped_samples: usize,
    pub keep_fraction: Option<f64>,
    pub noise_injections: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Proposed,
    Qft,
    Qwt,
    /// Returns the noisy input.
    None,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Proposed, Method::Qft, Method::Qwt, Method::None];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Proposed => "proposed",
            Method::Qft => "qft",
            Method::Qwt => "qwt",
            Method::None => "none",
        }
    }

    pub fn is_baseline(&self) -> bool {
        matches!(self, Method::Qft | Method::Qwt)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown method `{s}` (expected proposed, qft, qwt or none)")))
    }
}

/// Runs `method` on `y`.
pub fn denoise(method: Method, y: &[f64], cfg: &DenoiseConfig) -> Result<DenoiseResult> {
    match method {
        Method::Proposed => denoise_proposed(y, cfg),
        Method::Qft => denoise_baseline_qft(y, cfg),
        Method::Qwt => denoise_baseline_qwt(y, cfg),
        Method::None => {
            cfg.check_len(y)?;
            Ok(DenoiseResult {
                denoised: y.to_vec(),
                marked_counts: Vec::new(),
                iterations_used: 0,
                marked_probability_before: 1.0,
                marked_probability_after: 1.0,
                registers_discarded: false,
                clamped_samples: 0,
                keep_fraction: None,
                noise_injections: 0,
            })
        }
    }
}
