//! Structured circuits: QFT, Haar wavelet, threshold oracle, amplification.

mod amplify;
mod circuit;
mod oracle;
mod qft;
mod qwt;

pub use amplify::{
    amplify_phase_matched, amplitude_amplify, amplitude_amplify_with, grover_iteration_count,
    phase_matched_plan, two_level_amplitudes, PhaseMatchedPlan, ReflectionReference, Schedule,
};
pub use circuit::Circuit;
pub use oracle::{apply_oracle, apply_phase_oracle, marked_probability, OracleMode, OraclePredicate};
pub use qft::{build_qft, build_qft_on};
pub use qwt::{build_qwt_haar, build_qwt_haar_on};
