use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::quantize::SegmentedSignal;
use super::stats::SegmentStats;
use crate::circuits::Circuit;
use crate::error::{Error, Result};
use crate::sim::{
    controls_for_value, BasisIndex, GateKind, GateOp, RegisterLayout, StateVector, DEFAULT_MAX_QUBITS,
};

/// Layout sized for `sig`.
pub fn layout_for(sig: &SegmentedSignal, max_qubits: usize) -> Result<RegisterLayout> {
    RegisterLayout::with_max_qubits(sig.m(), sig.a(), sig.p(), sig.b(), true, max_qubits)
}

/// Encoding angle of code `s`: `pi * s / 2^a`.
pub fn encoding_angle(s: u64, a: usize) -> f64 {
    PI * s as f64 / (1u64 << a) as f64
}

fn check_stats(sig: &SegmentedSignal, stats: &SegmentStats) -> Result<()> {
    if stats.means.len() != sig.segments() || stats.thresholds.len() != sig.segments() {
        return Err(Error::Dimension(format!(
            "stats cover {} / {} segments, signal has {}",
            stats.means.len(),
            stats.thresholds.len(),
            sig.segments()
        )));
    }
    Ok(())
}

/// Hadamards on I and J followed by the value-setting unitary.
pub fn preparation_circuit(
    sig: &SegmentedSignal,
    stats: &SegmentStats,
    layout: &RegisterLayout,
) -> Result<Circuit> {
    check_stats(sig, stats)?;
    let anc = layout
        .ancilla_qubit()
        .ok_or_else(|| Error::Input("preparation needs an ancilla qubit".into()))?;
    let i_q = layout.i_qubits();
    let j_q = layout.j_qubits();
    let mut c = Circuit::new("prepare");
    for &q in i_q.iter().chain(&j_q) {
        c.push(GateOp::h(q));
    }
    for j in 0..sig.segments() {
        let seg = sig.segment(j);
        let j_ctl = controls_for_value(&j_q, j);
        for (i, &s) in seg.iter().enumerate() {
            if s == 0 {
                continue;
            }
            let mut controls = controls_for_value(&i_q, i);
            controls.extend(j_ctl.iter().copied());
            c.push(
                GateKind::MultiControlledRy {
                    controls,
                    target: anc,
                    angle: 2.0 * encoding_angle(s, sig.a()),
                }
                .into(),
            );
        }
        let mut targets = layout.mean_qubits();
        targets.extend(layout.thre_qubits());
        let pattern = stats.means[j] | (stats.thresholds[j] << layout.a);
        if pattern != 0 {
            c.push(GateKind::MultiControlledSet { controls: j_ctl, targets, pattern }.into());
        }
    }
    Ok(c)
}

/// Prepares the encoded state and keeps the ancilla-0 branch.
pub fn prepare_state(sig: &SegmentedSignal, stats: &SegmentStats) -> Result<StateVector> {
    prepare_state_with_max(sig, stats, DEFAULT_MAX_QUBITS)
}

pub fn prepare_state_with_max(
    sig: &SegmentedSignal,
    stats: &SegmentStats,
    max_qubits: usize,
) -> Result<StateVector> {
    let layout = layout_for(sig, max_qubits)?;
    let circuit = preparation_circuit(sig, stats, &layout)?;
    let mut state = StateVector::zero_qubits(layout.total_qubits(), max_qubits)?.with_layout(layout)?;
    state.apply_circuit(&circuit, None)?;
    let anc = layout.ancilla_qubit().expect("layout has ancilla");
    // The forced branch never consults the generator.
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    state.measure_qubit(anc, Some(false), &mut rng)?;
    Ok(state)
}

/// Below every nonzero code's distance from 1 for a <= 20.
const UNIT_SNAP: f64 = 1e-12;

/// Clamps to [-1, 1] and rounds values within `UNIT_SNAP` of 1 to exactly 1,
/// where arccos is too ill-conditioned to resolve rounding error.
fn snap_unit(c: f64) -> f64 {
    if c >= 1.0 - UNIT_SNAP {
        1.0
    } else {
        c.max(-1.0)
    }
}

/// Decoded signal with diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    /// Original-scale estimates.
    pub values: Vec<f64>,
    /// Fractional code estimates ŝ.
    pub codes: Vec<f64>,
    /// Samples whose amplitude exceeded the encoding range by more than 1%.
    pub clamped: usize,
}

/// Reads the (anc=0, i, A_j, j, τ_j) slots and inverts the angle encoding.
pub fn decode_signal(state: &StateVector, sig: &SegmentedSignal, stats: &SegmentStats) -> Result<Decoded> {
    check_stats(sig, stats)?;
    let layout = *state
        .layout()
        .ok_or_else(|| Error::Input("decode needs a pipeline-layout state".into()))?;
    if layout.m != sig.m() || layout.p != sig.p() || layout.a != sig.a() {
        return Err(Error::Dimension("state layout does not match signal".into()));
    }
    let kappa = 1.0 / (sig.segments() * sig.segment_len()) as f64;
    let scale = state.norm_scale() / kappa.sqrt();
    let mut codes = Vec::with_capacity(sig.segments() * sig.segment_len());
    let mut clamped = 0;
    let full = (1u64 << sig.a()) as f64 / PI;
    for j in 0..sig.segments() {
        for i in 0..sig.segment_len() {
            let idx = layout.compose(BasisIndex {
                ancilla: 0,
                i,
                mean: stats.means[j] as usize,
                j,
                thre: stats.thresholds[j] as usize,
            })?;
            let c = state.amplitude(idx).re * scale;
            if c.abs() > 1.01 {
                clamped += 1;
            }
            codes.push(full * snap_unit(c).acos());
        }
    }
    if clamped > 0 {
        log::warn!("{clamped} decoded amplitudes exceeded the encoding range and were clamped");
    }
    let values = codes.iter().map(|&s| sig.dequantize(s)).collect();
    Ok(Decoded { values, codes, clamped })
}
