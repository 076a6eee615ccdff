use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::oracle::{apply_oracle, apply_phase_oracle, OraclePredicate};
use crate::error::{Error, Result};
use crate::sim::StateVector;

/// Summed probabilities may overshoot 1 by rounding.
const PROBABILITY_SLACK: f64 = 1e-9;

fn check_probability(p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0 + PROBABILITY_SLACK) {
        return Err(Error::Domain(format!("marked probability must lie in (0, 1], got {p}")));
    }
    Ok(p.min(1.0))
}

/// Standard round count `max(0, round(pi/(4 asin sqrt p) - 1/2))`, rounding half up.
pub fn grover_iteration_count(p: f64) -> Result<usize> {
    let p = check_probability(p)?;
    let theta = p.sqrt().asin();
    // round(x - 1/2) with halves rounded up is floor(x); the slack absorbs asin error.
    let r = (PI / (4.0 * theta) + 1e-9).floor();
    Ok(r.max(0.0) as usize)
}

/// State used as the reflection axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReflectionReference {
    /// The state as passed in.
    #[default]
    Initial,
    /// Equal superposition over the support of the state as passed in.
    Uniform,
}

fn reference_state(state: &StateVector, which: ReflectionReference) -> StateVector {
    let mut r = state.clone();
    if which == ReflectionReference::Uniform {
        let support = state
            .support_slices()
            .iter()
            .flat_map(|(_, s)| s.iter())
            .filter(|z| z.norm_sqr() > 0.0)
            .count();
        let v = C64::new(1.0 / (support as f64).sqrt(), 0.0);
        r.for_each_support_mut(|_, z| *z = if z.norm_sqr() > 0.0 { v } else { C64::new(0.0, 0.0) });
    }
    r
}

/// `iterations` rounds of [oracle; reflect about the input state].
pub fn amplitude_amplify(state: &mut StateVector, pred: &OraclePredicate, iterations: usize) -> Result<()> {
    amplitude_amplify_with(state, pred, iterations, ReflectionReference::Initial)
}

pub fn amplitude_amplify_with(
    state: &mut StateVector,
    pred: &OraclePredicate,
    iterations: usize,
    reference: ReflectionReference,
) -> Result<()> {
    if iterations == 0 {
        return Ok(());
    }
    let r = reference_state(state, reference);
    for _ in 0..iterations {
        apply_oracle(state, pred)?;
        state.reflect_about(&r)?;
    }
    Ok(())
}

/// Rounds and phase of a zero-failure phase-matched search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseMatchedPlan {
    pub rounds: usize,
    pub phase: f64,
}

/// Plan that drives marked probability `p` to exactly one.
pub fn phase_matched_plan(p: f64) -> Result<PhaseMatchedPlan> {
    let p = check_probability(p)?;
    if p >= 1.0 - 1e-12 {
        return Ok(PhaseMatchedPlan { rounds: 0, phase: 0.0 });
    }
    let theta = p.sqrt().asin();
    let mut j = ((PI / theta - 6.0) / 4.0).ceil().max(0.0) as usize;
    while j > 0 && PI / (4.0 * (j - 1) as f64 + 6.0) <= theta {
        j -= 1;
    }
    while PI / (4.0 * j as f64 + 6.0) > theta {
        j += 1;
    }
    let ratio = ((PI / (4.0 * j as f64 + 6.0)).sin() / theta.sin()).min(1.0);
    Ok(PhaseMatchedPlan { rounds: j + 1, phase: 2.0 * ratio.asin() })
}

/// Rounds of [marked phase e^{i phi}; partial reflection about the input state].
pub fn amplify_phase_matched(
    state: &mut StateVector,
    pred: &OraclePredicate,
    plan: PhaseMatchedPlan,
) -> Result<()> {
    if plan.rounds == 0 {
        return Ok(());
    }
    let r = state.clone();
    for _ in 0..plan.rounds {
        apply_phase_oracle(state, pred, plan.phase)?;
        state.partial_reflect_about(&r, plan.phase)?;
    }
    Ok(())
}

/// Round sequence tracked by [`two_level_amplitudes`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Schedule {
    Standard(usize),
    PhaseMatched(PhaseMatchedPlan),
}

/// Marked and unmarked components of the normalized marked/unmarked axes
/// after running `schedule` from marked probability `p`.
pub fn two_level_amplitudes(p: f64, schedule: Schedule) -> (C64, C64) {
    let s = p.sqrt();
    let c = (1.0 - p).max(0.0).sqrt();
    let mut am = C64::new(s, 0.0);
    let mut au = C64::new(c, 0.0);
    match schedule {
        Schedule::Standard(r) => {
            for _ in 0..r {
                am = -am;
                let ip = s * am + c * au;
                am = 2.0 * ip * s - am;
                au = 2.0 * ip * c - au;
            }
        }
        Schedule::PhaseMatched(plan) => {
            let w = C64::from_polar(1.0, plan.phase);
            for _ in 0..plan.rounds {
                am *= w;
                let ip = s * am + c * au;
                am += (w - 1.0) * ip * s;
                au += (w - 1.0) * ip * c;
            }
        }
    }
    (am, au)
}
