use crate::circuits::{OracleMode, ReflectionReference};
use crate::encoding::ThresholdRule;
use crate::error::{Error, Result};
use crate::noise::NoiseSpec;
use crate::sim::DEFAULT_MAX_QUBITS;

/// Source of the marked probability used to size the amplification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IterationMode {
    /// Probability read from the simulated state.
    #[default]
    OracleExact,
    /// `sum_j M_j / (P M)` from the marked counts alone.
    CountFormula,
    /// A fixed number of standard rounds.
    Fixed(usize),
}

/// Amplification round sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AmplifySchedule {
    /// Phase-matched rounds that reach marked probability one exactly.
    #[default]
    PhaseMatched,
    /// Sign-flip oracle and reflection, `grover_iteration_count` rounds.
    Standard,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenoiseConfig {
    pub m: usize,
    pub p: usize,
    pub a: usize,
    pub b: usize,
    pub threshold_rule: ThresholdRule,
    pub oracle_mode: OracleMode,
    pub iteration_mode: IterationMode,
    pub schedule: AmplifySchedule,
    /// Reflection axis for standard rounds; phase-matched rounds always use the input state.
    pub reflection: ReflectionReference,
    pub keep_fraction: f64,
    /// Haar levels for the wavelet baseline; `None` means full depth.
    pub qwt_levels: Option<usize>,
    pub noise: NoiseSpec,
    pub max_qubits: usize,
}

impl DenoiseConfig {
    pub fn new(m: usize, p: usize, a: usize, b: usize) -> Self {
        DenoiseConfig {
            m,
            p,
            a,
            b,
            threshold_rule: ThresholdRule::default_for(1 << m),
            oracle_mode: OracleMode::Symmetric,
            iteration_mode: IterationMode::default(),
            schedule: AmplifySchedule::default(),
            reflection: ReflectionReference::Initial,
            keep_fraction: 0.25,
            qwt_levels: None,
            noise: NoiseSpec::default(),
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }

    /// 13-qubit layout.
    pub fn smoke() -> Self {
        Self::new(3, 2, 4, 3)
    }

    /// 24-qubit layout, N = 1024.
    pub fn desk() -> Self {
        Self::new(5, 5, 8, 5)
    }

    /// 26-qubit layout, N = 4096.
    pub fn full() -> Self {
        Self::new(5, 7, 8, 5)
    }

    pub fn signal_len(&self) -> usize {
        1 << (self.m + self.p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 || self.a < 2 {
            return Err(Error::Input(format!("need m >= 1 and a >= 2 (m={}, a={})", self.m, self.a)));
        }
        if self.b < self.m {
            return Err(Error::Input(format!(
                "threshold register needs b >= m (b={}, m={})",
                self.b, self.m
            )));
        }
        if !(self.keep_fraction > 0.0 && self.keep_fraction <= 1.0) {
            return Err(Error::Input(format!(
                "keep_fraction must lie in (0, 1], got {}",
                self.keep_fraction
            )));
        }
        if let Some(l) = self.qwt_levels {
            if l < 1 || l > self.m + self.p {
                return Err(Error::Input(format!(
                    "qwt_levels must lie in 1..={}, got {l}",
                    self.m + self.p
                )));
            }
        }
        self.noise.validate()
    }

    pub(crate) fn check_len(&self, y: &[f64]) -> Result<()> {
        if y.len() != self.signal_len() {
            return Err(Error::Dimension(format!(
                "signal length {} differs from 2^(m+p) = {}",
                y.len(),
                self.signal_len()
            )));
        }
        Ok(())
    }
}
