//! Classical signal noise and stochastic gate-noise hooks.

mod classical;
mod hooks;
mod spec;

pub use classical::{add_awgn, add_poisson};
pub use hooks::{bit_flip_hook, phase_noise_hook, NoiseHook, NoiseRule, PhaseNoiseMode};
pub use spec::{ClassicalNoise, NoiseSpec};
