//! Simulation of adaptive frequency-domain quantum signal denoising.
//!
//! A noisy 1-D signal is split into windows, angle-encoded into a state
//! vector, moved to the frequency basis with a QFT, amplified toward the
//! low-frequency subspace selected by a per-window threshold, and decoded
//! after the inverse QFT. QFT and Haar-wavelet thresholding baselines, four
//! noise processes and an experiment harness are included.

pub mod circuits;
pub mod encoding;
pub mod error;
pub mod harness;
pub mod noise;
pub mod pipeline;
pub mod sim;

pub use error::{Error, Result};
