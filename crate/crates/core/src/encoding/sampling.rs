use std::f64::consts::PI;

use rand::Rng;

use super::quantize::{round_half_up, SegmentedSignal};
use super::stats::{stats_from_means, SegmentStats, ThresholdRule};
use crate::error::{Error, Result};
use crate::sim::StateVector;

/// Estimates window means by repeatedly preparing a state and sampling (I, J).
///
/// `generator` is called once per window; each call contributes
/// `shots_per_segment` samples drawn from the full basis distribution. `sig`
/// supplies only the structure (P, M, a, b); its codes are not consulted.
pub fn estimate_means_by_sampling<G, R>(
    mut generator: G,
    sig: &SegmentedSignal,
    rule: &ThresholdRule,
    shots_per_segment: usize,
    rng: &mut R,
) -> Result<SegmentStats>
where
    G: FnMut() -> Result<StateVector>,
    R: Rng + ?Sized,
{
    if shots_per_segment == 0 {
        return Err(Error::Sampling("shots_per_segment must be positive".into()));
    }
    let (pp, mm) = (sig.segments(), sig.segment_len());
    let mut counts = vec![0u64; pp * mm];
    let mut norm_scale = 1.0;
    for _ in 0..pp {
        let state = generator()?;
        let layout = *state
            .layout()
            .ok_or_else(|| Error::Input("generator must produce pipeline-layout states".into()))?;
        if layout.m != sig.m() || layout.p != sig.p() {
            return Err(Error::Dimension("generated layout does not match signal".into()));
        }
        norm_scale = state.norm_scale();
        let mut cdf = Vec::new();
        let mut index = Vec::new();
        let mut acc = 0.0;
        for (start, slice) in state.support_slices() {
            for (k, z) in slice.iter().enumerate() {
                if z.norm_sqr() > 0.0 {
                    acc += z.norm_sqr();
                    cdf.push(acc);
                    index.push(start + k);
                }
            }
        }
        if cdf.is_empty() {
            return Err(Error::Sampling("state has no support".into()));
        }
        for _ in 0..shots_per_segment {
            let u = rng.random::<f64>() * acc;
            let idx = index[cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)];
            counts[layout.j_of(idx) * mm + layout.i_of(idx)] += 1;
        }
    }
    let total = (pp * shots_per_segment) as f64;
    let full = (1u64 << sig.a()) as f64 / PI;
    let mut means = Vec::with_capacity(pp);
    for j in 0..pp {
        let seg = &counts[j * mm..(j + 1) * mm];
        if seg.iter().all(|&c| c == 0) {
            return Err(Error::Sampling(format!("segment {j} received no samples")));
        }
        let mean_code: f64 = seg
            .iter()
            .map(|&c| {
                let cos = ((c as f64 / total) * (pp * mm) as f64).sqrt() * norm_scale;
                full * cos.min(1.0).acos()
            })
            .sum::<f64>()
            / mm as f64;
        means.push((round_half_up(mean_code) as u64).min(sig.code_max()));
    }
    stats_from_means(sig, rule, means)
}
