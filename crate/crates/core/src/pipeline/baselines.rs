use super::config::DenoiseConfig;
use super::proposed::{hook_ref, HOOK_STREAM};
use super::DenoiseResult;
use crate::circuits::{build_qft, build_qwt_haar, Circuit};
use crate::encoding::{compute_stats, decode_signal, prepare_state_with_max, segment_and_quantize, ThresholdRule};
use crate::error::Result;
use crate::sim::RegisterLayout;

/// Frequencies `k` with `min(k, N-k) <= f N / 2` are kept.
pub fn qft_keeps(k: usize, n: usize, keep_fraction: f64) -> bool {
    (k.min(n - k) as f64) <= keep_fraction * n as f64 / 2.0
}

/// Number of leading wavelet coefficients kept.
pub fn qwt_kept_count(n: usize, keep_fraction: f64) -> usize {
    ((keep_fraction * n as f64).round() as usize).clamp(1, n)
}

/// One global window, transform, projection onto kept coefficients, inverse, decode.
fn global_threshold<F, K>(y: &[f64], cfg: &DenoiseConfig, transform: F, keep: K) -> Result<DenoiseResult>
where
    F: Fn(&RegisterLayout, bool) -> Result<Circuit>,
    K: Fn(usize) -> bool,
{
    cfg.validate()?;
    cfg.check_len(y)?;
    let n = cfg.signal_len();
    let signal = segment_and_quantize(y, 1, n, cfg.a)?.with_threshold_bits(1)?;
    let stats = compute_stats(&signal, &ThresholdRule::Constant(0))?;
    let mut state = prepare_state_with_max(&signal, &stats, cfg.max_qubits)?;
    let layout = *state.layout().expect("prepared state has a layout");
    let mut hook = cfg.noise.hook(HOOK_STREAM)?;
    state.apply_circuit(&transform(&layout, false)?, hook_ref(&mut hook))?;
    let kept = state.project(|idx| keep(layout.i_of(idx)))?;
    state.apply_circuit(&transform(&layout, true)?, hook_ref(&mut hook))?;
    let decoded = decode_signal(&state, &signal, &stats)?;
    Ok(DenoiseResult {
        denoised: decoded.values,
        marked_counts: vec![(0..n).filter(|&k| keep(k)).count()],
        iterations_used: 0,
        marked_probability_before: kept,
        marked_probability_after: 1.0,
        registers_discarded: true,
        clamped_samples: decoded.clamped,
        keep_fraction: Some(cfg.keep_fraction),
        noise_injections: hook.map_or(0, |h| h.injected()),
    })
}

/// Global QFT with symmetric hard low-pass projection.
pub fn denoise_baseline_qft(y: &[f64], cfg: &DenoiseConfig) -> Result<DenoiseResult> {
    let n = cfg.signal_len();
    let f = cfg.keep_fraction;
    global_threshold(y, cfg, |l, inv| Ok(build_qft(l, inv)), |k| qft_keeps(k, n, f))
}

/// Global Haar wavelet transform keeping the leading coefficients.
pub fn denoise_baseline_qwt(y: &[f64], cfg: &DenoiseConfig) -> Result<DenoiseResult> {
    let n = cfg.signal_len();
    let levels = cfg.qwt_levels.unwrap_or(cfg.m + cfg.p);
    let kept = qwt_kept_count(n, cfg.keep_fraction);
    global_threshold(y, cfg, |l, inv| build_qwt_haar(l, levels, inv), |k| k < kept)
}
