use super::quantize::{round_half_up, SegmentedSignal};
use crate::error::{Error, Result};

/// Maps a window mean code to a threshold τ in `[0, M-1]`.
#[derive(Debug, Clone, PartialEq)]
pub enum ThresholdRule {
    /// `clamp(round(tau_min + (tau_max - tau_min) * A / reference_max), 0, M-1)`;
    /// `reference_max` defaults to `2^(a-1)`.
    Linear { tau_min: i64, tau_max: i64, reference_max: Option<u64> },
    Constant(u64),
    /// τ = table[A].
    Table(Vec<u64>),
}

impl ThresholdRule {
    /// Linear rule from 1 to M/4.
    pub fn default_for(segment_len: usize) -> Self {
        ThresholdRule::Linear {
            tau_min: 1,
            tau_max: (segment_len / 4).max(1) as i64,
            reference_max: None,
        }
    }

    pub fn threshold(&self, mean: u64, segment_len: usize, a: usize) -> Result<u64> {
        let hi = segment_len as i64 - 1;
        match self {
            ThresholdRule::Linear { tau_min, tau_max, reference_max } => {
                let r = reference_max.unwrap_or(1 << (a - 1));
                if r == 0 {
                    return Err(Error::Input("reference_max must be positive".into()));
                }
                let v = *tau_min as f64 + (tau_max - tau_min) as f64 * mean as f64 / r as f64;
                Ok((round_half_up(v) as i64).clamp(0, hi) as u64)
            }
            ThresholdRule::Constant(t) => Ok(*t),
            ThresholdRule::Table(t) => t.get(mean as usize).copied().ok_or_else(|| {
                Error::Input(format!("threshold table has no entry for mean {mean}"))
            }),
        }
    }
}

/// Per-window mean codes A_j and thresholds τ_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentStats {
    pub means: Vec<u64>,
    pub thresholds: Vec<u64>,
}

/// A_j = round(mean of window j), τ_j = rule(A_j); τ must fit in b bits.
pub fn compute_stats(sig: &SegmentedSignal, rule: &ThresholdRule) -> Result<SegmentStats> {
    let means: Vec<u64> = (0..sig.segments())
        .map(|j| {
            let seg = sig.segment(j);
            round_half_up(seg.iter().sum::<u64>() as f64 / seg.len() as f64) as u64
        })
        .collect();
    stats_from_means(sig, rule, means)
}

pub(crate) fn stats_from_means(
    sig: &SegmentedSignal,
    rule: &ThresholdRule,
    means: Vec<u64>,
) -> Result<SegmentStats> {
    let mut thresholds = Vec::with_capacity(means.len());
    for (j, &mean) in means.iter().enumerate() {
        let t = rule.threshold(mean, sig.segment_len(), sig.a())?;
        if sig.b() < 64 && t >> sig.b() != 0 {
            return Err(Error::Capacity(format!(
                "threshold {t} of segment {j} does not fit in {} bits",
                sig.b()
            )));
        }
        thresholds.push(t);
    }
    Ok(SegmentStats { means, thresholds })
}
