use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::classical::{add_awgn, add_poisson};
use super::hooks::{NoiseHook, NoiseRule, PhaseNoiseMode};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassicalNoise {
    Awgn { snr_db: f64 },
    Poisson { peak: f64 },
}

/// Classical and quantum noise of one scenario.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseSpec {
    pub classical: Option<ClassicalNoise>,
    pub phase_epsilon: Option<f64>,
    pub phase_mode: PhaseNoiseMode,
    pub bit_flip: Option<f64>,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn validate(&self) -> Result<()> {
        match self.classical {
            Some(ClassicalNoise::Awgn { snr_db }) if !snr_db.is_finite() => {
                return Err(Error::Domain(format!("snr_db must be finite, got {snr_db}")))
            }
            Some(ClassicalNoise::Poisson { peak }) if !(peak > 0.0 && peak.is_finite()) => {
                return Err(Error::Domain(format!("poisson peak must be positive, got {peak}")))
            }
            _ => {}
        }
        if let Some(e) = self.phase_epsilon {
            if !(e >= 0.0 && e.is_finite()) {
                return Err(Error::Domain(format!("epsilon must be >= 0, got {e}")));
            }
        }
        if let Some(p) = self.bit_flip {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Domain(format!("p_flip must lie in [0, 1], got {p}")));
            }
        }
        Ok(())
    }

    pub fn has_quantum(&self) -> bool {
        self.phase_epsilon.is_some() || self.bit_flip.is_some()
    }

    /// Applies the classical component (identity when absent).
    pub fn apply_classical(&self, y: &[f64], rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
        match self.classical {
            None => Ok(y.to_vec()),
            Some(ClassicalNoise::Awgn { snr_db }) => add_awgn(y, snr_db, rng),
            Some(ClassicalNoise::Poisson { peak }) => add_poisson(y, peak, rng),
        }
    }

    /// Hook for the quantum components on generator stream `stream`, or `None` if there are none.
    pub fn hook(&self, stream: u64) -> Result<Option<NoiseHook>> {
        let mut rules = Vec::new();
        if let Some(epsilon) = self.phase_epsilon {
            rules.push(NoiseRule::Phase { epsilon, mode: self.phase_mode });
        }
        if let Some(p_flip) = self.bit_flip {
            rules.push(NoiseRule::BitFlip { p_flip });
        }
        if rules.is_empty() {
            return Ok(None);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        NoiseHook::new(rules, rng).map(Some)
    }
}
