//! Segmentation, quantization, state preparation, mean estimation and decoding.

mod io;
mod prepare;
mod quantize;
mod sampling;
mod stats;

pub use io::{parse_signal, read_signal, write_signal};
pub use prepare::{
    decode_signal, encoding_angle, layout_for, prepare_state, prepare_state_with_max,
    preparation_circuit, Decoded,
};
pub use quantize::{round_half_up, segment_and_quantize, SegmentedSignal};
pub use sampling::estimate_means_by_sampling;
pub use stats::{compute_stats, SegmentStats, ThresholdRule};
