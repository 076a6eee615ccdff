use super::config::{AmplifySchedule, DenoiseConfig, IterationMode};
use super::DenoiseResult;
use crate::circuits::{
    amplify_phase_matched, amplitude_amplify_with, build_qft, grover_iteration_count,
    marked_probability, phase_matched_plan, two_level_amplitudes, OraclePredicate, ReflectionReference,
    Schedule,
};
use crate::encoding::{
    compute_stats, decode_signal, prepare_state_with_max, segment_and_quantize, SegmentStats,
    SegmentedSignal,
};
use crate::error::{Error, Result};
use crate::noise::NoiseHook;
use crate::sim::{GateHook, StateVector};

/// Generator stream reserved for gate-noise hooks.
pub const HOOK_STREAM: u64 = 1;

pub(crate) fn hook_ref(h: &mut Option<NoiseHook>) -> Option<&mut dyn GateHook> {
    h.as_mut().map(|h| h as &mut dyn GateHook)
}

/// Encoded, prepared and Fourier-transformed state, before thresholding.
pub struct FrequencyState {
    pub state: StateVector,
    pub signal: SegmentedSignal,
    pub stats: SegmentStats,
    pub hook: Option<NoiseHook>,
}

/// Quantizes, prepares and applies the (possibly noisy) QFT.
pub fn frequency_state(y: &[f64], cfg: &DenoiseConfig) -> Result<FrequencyState> {
    cfg.validate()?;
    cfg.check_len(y)?;
    let signal = segment_and_quantize(y, 1 << cfg.p, 1 << cfg.m, cfg.a)?.with_threshold_bits(cfg.b)?;
    let stats = compute_stats(&signal, &cfg.threshold_rule)?;
    let mut state = prepare_state_with_max(&signal, &stats, cfg.max_qubits)?;
    let layout = *state.layout().expect("prepared state has a layout");
    let mut hook = cfg.noise.hook(HOOK_STREAM)?;
    state.apply_circuit(&build_qft(&layout, false), hook_ref(&mut hook))?;
    Ok(FrequencyState { state, signal, stats, hook })
}

/// Windowed QFT, threshold-oracle amplification, inverse QFT and decode.
pub fn denoise_proposed(y: &[f64], cfg: &DenoiseConfig) -> Result<DenoiseResult> {
    let FrequencyState { mut state, signal, stats, mut hook } = frequency_state(y, cfg)?;
    let layout = *state.layout().expect("prepared state has a layout");
    let pred = OraclePredicate::new(cfg.oracle_mode, layout);
    let marked_counts: Vec<usize> = stats.thresholds.iter().map(|&t| pred.marked_count(t as usize)).collect();

    let p_before = marked_probability(&state, &pred)?;
    let p_plan = match cfg.iteration_mode {
        IterationMode::CountFormula => {
            marked_counts.iter().sum::<usize>() as f64 / (signal.segments() * signal.segment_len()) as f64
        }
        _ => p_before,
    };
    let schedule = match (cfg.iteration_mode, cfg.schedule) {
        (IterationMode::Fixed(r), _) => Schedule::Standard(r),
        (_, AmplifySchedule::Standard) => Schedule::Standard(grover_iteration_count(p_plan)?),
        (_, AmplifySchedule::PhaseMatched) => Schedule::PhaseMatched(phase_matched_plan(p_plan)?),
    };
    let iterations_used = match schedule {
        Schedule::Standard(r) => {
            amplitude_amplify_with(&mut state, &pred, r, cfg.reflection)?;
            r
        }
        Schedule::PhaseMatched(plan) => {
            amplify_phase_matched(&mut state, &pred, plan)?;
            plan.rounds
        }
    };
    let p_after = marked_probability(&state, &pred)?;
    if iterations_used > 0 {
        // Restore the physical scale of the marked components.
        let gain = if cfg.reflection == ReflectionReference::Initial {
            let (am, _) = two_level_amplitudes(p_before, schedule);
            state.apply_global_phase(-am.arg());
            am.norm()
        } else {
            p_after.sqrt()
        };
        if gain < 1e-12 {
            return Err(Error::Domain("amplification left no marked amplitude".into()));
        }
        let s = state.norm_scale() * p_before.sqrt() / gain;
        state.set_norm_scale(s);
    }

    state.apply_circuit(&build_qft(&layout, true), hook_ref(&mut hook))?;
    let decoded = decode_signal(&state, &signal, &stats)?;
    Ok(DenoiseResult {
        denoised: decoded.values,
        marked_counts,
        iterations_used,
        marked_probability_before: p_before,
        marked_probability_after: p_after,
        registers_discarded: true,
        clamped_samples: decoded.clamped,
        keep_fraction: None,
        noise_injections: hook.map_or(0, |h| h.injected()),
    })
}
