use std::f64::consts::PI;
use std::path::PathBuf;

use rand::Rng;

use crate::encoding::read_signal;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tone {
    /// Cycles over the whole signal.
    pub k: f64,
    pub amplitude: f64,
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SignalKind {
    /// Window-aligned pieces with random levels and level-dependent ripple.
    PiecewiseSmooth {
        min_windows: usize,
        max_windows: usize,
        max_cycles: f64,
        ripple: f64,
    },
    /// Sum of at most four cosines; random when `tones` is empty.
    MultiTone { tones: Vec<Tone> },
    /// Piecewise constant with random levels in `[0, 1]`.
    Blocks { block_len: usize },
    File(PathBuf),
}

impl SignalKind {
    pub fn piecewise_smooth() -> Self {
        SignalKind::PiecewiseSmooth { min_windows: 1, max_windows: 4, max_cycles: 4.0, ripple: 0.4 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SignalKind::PiecewiseSmooth { .. } => "piecewise-smooth",
            SignalKind::MultiTone { .. } => "multi-tone",
            SignalKind::Blocks { .. } => "blocks",
            SignalKind::File(_) => "file",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestSignalSpec {
    pub kind: SignalKind,
    /// Signal length N.
    pub n: usize,
    /// Window length M, used to align pieces.
    pub segment_len: usize,
}

/// Minimum gap between consecutive piece levels.
const MIN_LEVEL_GAP: f64 = 0.1;

pub fn generate_signal<R: Rng + ?Sized>(spec: &TestSignalSpec, rng: &mut R) -> Result<Vec<f64>> {
    let n = spec.n;
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::Dimension(format!("signal length {n} must be a power of two >= 2")));
    }
    let y = match &spec.kind {
        SignalKind::PiecewiseSmooth { min_windows, max_windows, max_cycles, ripple } => {
            let mm = spec.segment_len.max(1);
            if *min_windows < 1 || max_windows < min_windows {
                return Err(Error::Input("piece lengths need 1 <= min_windows <= max_windows".into()));
            }
            let mut y = vec![0.0; n];
            let mut start = 0;
            let mut prev = f64::NAN;
            while start < n {
                let len = mm * rng.random_range(*min_windows..=*max_windows);
                let end = (start + len).min(n);
                let mut level = rng.random::<f64>();
                while (level - prev).abs() < MIN_LEVEL_GAP {
                    level = rng.random::<f64>();
                }
                prev = level;
                let tones = 1 + (3.0 * level) as usize;
                let mut piece = vec![level; end - start];
                for _ in 0..tones {
                    let f = rng.random_range(0.2..1.0) * max_cycles * level / mm as f64;
                    let phase = rng.random_range(0.0..2.0 * PI);
                    let amp = ripple * level / tones as f64;
                    for (off, v) in piece.iter_mut().enumerate() {
                        *v += amp * (2.0 * PI * f * (start + off) as f64 + phase).cos();
                    }
                }
                y[start..end].copy_from_slice(&piece);
                start = end;
            }
            y
        }
        SignalKind::MultiTone { tones } => {
            if tones.len() > 4 {
                return Err(Error::Input(format!("multi-tone allows at most 4 tones, got {}", tones.len())));
            }
            let tones = if tones.is_empty() {
                let count = rng.random_range(1..=4);
                (0..count)
                    .map(|_| Tone {
                        k: rng.random_range(1..=4) as f64,
                        amplitude: rng.random_range(0.2..1.0),
                        phase: rng.random_range(0.0..2.0 * PI),
                    })
                    .collect()
            } else {
                tones.clone()
            };
            (0..n)
                .map(|i| {
                    tones
                        .iter()
                        .map(|t| t.amplitude * (2.0 * PI * t.k * i as f64 / n as f64 + t.phase).cos())
                        .sum()
                })
                .collect()
        }
        SignalKind::Blocks { block_len } => {
            if *block_len == 0 {
                return Err(Error::Input("block_len must be positive".into()));
            }
            let mut y = Vec::with_capacity(n);
            let mut prev = f64::NAN;
            while y.len() < n {
                let mut level = rng.random::<f64>();
                while (level - prev).abs() < MIN_LEVEL_GAP {
                    level = rng.random::<f64>();
                }
                prev = level;
                let take = (*block_len).min(n - y.len());
                y.extend(std::iter::repeat_n(level, take));
            }
            y
        }
        SignalKind::File(path) => {
            let y = read_signal(path)?;
            if y.len() != n {
                return Err(Error::Dimension(format!(
                    "{} holds {} samples, expected {n}",
                    path.display(),
                    y.len()
                )));
            }
            y
        }
    };
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Input("generated signal is not finite".into()));
    }
    let first = y[0];
    if y.iter().all(|&v| v == first) {
        return Err(Error::Input("generated signal is constant".into()));
    }
    Ok(y)
}
