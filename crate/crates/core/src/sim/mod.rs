//! Dense state-vector simulation.

mod gate;
pub(crate) mod kernels;
mod layout;

pub use gate::{controls_for_value, Control, GateKind, GateOp, NoiseTag};
pub use layout::{BasisIndex, RegisterLayout, DEFAULT_MAX_QUBITS};

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::circuits::Circuit;
use crate::error::{Error, Result};

/// Runs of gates confined to the low `FUSE_BITS` qubits are applied chunk by chunk.
const FUSE_BITS: usize = 12;

/// Observer that may rewrite a gate or append gates after it.
pub trait GateHook {
    /// Replacement for `gate`, or `None` to keep it.
    fn replace(&mut self, _gate: &GateOp) -> Option<GateOp> {
        None
    }
    /// Gates to run right after `gate`.
    fn after(&mut self, gate: &GateOp, out: &mut Vec<GateOp>);
}

/// Outcome of a single-qubit measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub outcome: bool,
    pub probability: f64,
}

#[derive(Debug, Clone)]
pub struct StateVector {
    amps: Vec<C64>,
    num_qubits: usize,
    layout: Option<RegisterLayout>,
    norm_scale: f64,
    touched: u64,
    /// Sorted chunks of `2^FUSE_BITS` amplitudes that may be nonzero; `None` means unknown.
    live: Option<Vec<usize>>,
}

impl StateVector {
    /// |0...0> over a pipeline layout.
    pub fn new_zero(layout: RegisterLayout) -> Result<Self> {
        let mut s = Self::zero_qubits(layout.total_qubits(), DEFAULT_MAX_QUBITS)?;
        s.layout = Some(layout);
        Ok(s)
    }

    /// |0...0> over `n` generic qubits.
    pub fn zero_qubits(n: usize, max_qubits: usize) -> Result<Self> {
        if n > max_qubits {
            return Err(Error::Capacity(format!("{n} qubits exceeds limit {max_qubits}")));
        }
        let mut amps = Vec::new();
        amps.try_reserve_exact(1usize << n)
            .map_err(|e| Error::Capacity(format!("cannot allocate 2^{n} amplitudes: {e}")))?;
        amps.resize(1usize << n, C64::new(0.0, 0.0));
        amps[0] = C64::new(1.0, 0.0);
        Ok(StateVector { amps, num_qubits: n, layout: None, norm_scale: 1.0, touched: 0, live: Some(vec![0]) })
    }

    /// Generic state from explicit amplitudes; must be unit norm within 1e-10.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Dimension(format!("length {len} is not a power of two")));
        }
        let n = len.trailing_zeros() as usize;
        let s = StateVector { amps, num_qubits: n, layout: None, norm_scale: 1.0, touched: 0, live: None };
        let norm = s.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Domain(format!("amplitudes have norm {norm}, expected 1")));
        }
        Ok(s)
    }

    pub fn with_layout(mut self, layout: RegisterLayout) -> Result<Self> {
        if layout.total_qubits() != self.num_qubits {
            return Err(Error::Dimension(format!(
                "layout has {} qubits, state has {}",
                layout.total_qubits(),
                self.num_qubits
            )));
        }
        self.layout = Some(layout);
        Ok(self)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }
    pub fn len(&self) -> usize {
        self.amps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }
    pub fn layout(&self) -> Option<&RegisterLayout> {
        self.layout.as_ref()
    }
    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }
    #[cfg(test)]
    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        self.live = None;
        &mut self.amps
    }

    fn chunk_bits(&self) -> usize {
        FUSE_BITS.min(self.num_qubits)
    }

    fn chunk_ranges(&self, chunks: Option<&[usize]>) -> Vec<std::ops::Range<usize>> {
        let bits = self.chunk_bits();
        match chunks {
            Some(list) => list.iter().map(|&c| c << bits..(c + 1) << bits).collect(),
            None => vec![0..self.amps.len()],
        }
    }

    /// Slices, with their starting index, that hold every nonzero amplitude.
    pub fn support_slices(&self) -> Vec<(usize, &[C64])> {
        self.chunk_ranges(self.live.as_deref())
            .into_iter()
            .map(|r| (r.start, &self.amps[r]))
            .collect()
    }

    /// Calls `f(index, amplitude)` on a superset of the nonzero amplitudes;
    /// `f` must map zero to zero.
    pub(crate) fn for_each_support_mut<F: FnMut(usize, &mut C64)>(&mut self, mut f: F) {
        for r in self.chunk_ranges(self.live.as_deref()) {
            let start = r.start;
            for (k, z) in self.amps[r].iter_mut().enumerate() {
                f(start + k, z);
            }
        }
    }

    /// Chunks live in `self` or `other`, or `None` if either is unknown.
    fn live_union(&self, other: &StateVector) -> Option<Vec<usize>> {
        let (a, b) = (self.live.as_ref()?, other.live.as_ref()?);
        let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
        u.sort_unstable();
        u.dedup();
        Some(u)
    }
    pub fn amplitude(&self, idx: usize) -> C64 {
        self.amps[idx]
    }
    pub fn norm_scale(&self) -> f64 {
        self.norm_scale
    }
    pub(crate) fn set_norm_scale(&mut self, s: f64) {
        self.norm_scale = s;
    }

    /// Amplitudes written by gate kernels since creation.
    pub fn touched_amplitudes(&self) -> u64 {
        self.touched
    }

    pub fn norm(&self) -> f64 {
        self.support_slices()
            .iter()
            .flat_map(|(_, s)| s.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// <self|other>
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        self.check_dims(other)?;
        let union = self.live_union(other);
        Ok(self
            .chunk_ranges(union.as_deref())
            .into_iter()
            .map(|r| self.amps[r.clone()].iter().zip(&other.amps[r]).map(|(a, b)| a.conj() * b).sum::<C64>())
            .sum())
    }

    fn check_dims(&self, other: &StateVector) -> Result<()> {
        if self.amps.len() != other.amps.len() {
            return Err(Error::Dimension(format!(
                "{} vs {} amplitudes",
                self.amps.len(),
                other.amps.len()
            )));
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &GateOp) -> Result<()> {
        gate.validate(self.num_qubits)?;
        if gate.max_qubit() >= self.chunk_bits() {
            self.live = None;
        }
        self.touched += kernels::apply_kind(&mut self.amps, &gate.kind);
        Ok(())
    }

    /// Applies `circuit`, letting `hook` rewrite gates or inject gates after each one.
    pub fn apply_circuit(&mut self, circuit: &Circuit, hook: Option<&mut dyn GateHook>) -> Result<()> {
        for g in circuit.gates() {
            g.validate(self.num_qubits)?;
        }
        let realized: Vec<GateOp> = match hook {
            None => circuit.gates().to_vec(),
            Some(h) => {
                let mut out = Vec::with_capacity(circuit.len() * 2);
                for g in circuit.gates() {
                    out.push(h.replace(g).unwrap_or_else(|| g.clone()));
                    h.after(g, &mut out);
                }
                for g in &out {
                    g.validate(self.num_qubits)?;
                }
                out
            }
        };
        self.apply_ops(&realized);
        Ok(())
    }

    /// Applies pre-validated gates, fusing runs that fit inside one chunk.
    fn apply_ops(&mut self, ops: &[GateOp]) {
        let fuse = FUSE_BITS.min(self.num_qubits);
        let mut start = 0;
        while start < ops.len() {
            if ops[start].max_qubit() >= fuse || fuse == self.num_qubits {
                if fuse < self.num_qubits {
                    self.live = None;
                }
                let run = kernels::batchable_run(&ops[start..]);
                if run > 1 {
                    self.touched += kernels::apply_controlled_batch(&mut self.amps, &ops[start..start + run]);
                    start += run;
                    continue;
                }
                self.touched += kernels::apply_kind(&mut self.amps, &ops[start].kind);
                start += 1;
                continue;
            }
            let mut end = start;
            while end < ops.len() && ops[end].max_qubit() < fuse {
                end += 1;
            }
            let run = &ops[start..end];
            let zero = C64::new(0.0, 0.0);
            let chunks = match self.live.take() {
                Some(list) => list,
                None => (0..self.amps.len() >> fuse)
                    .filter(|&c| self.amps[c << fuse..(c + 1) << fuse].iter().any(|z| *z != zero))
                    .collect(),
            };
            for &c in &chunks {
                let chunk = &mut self.amps[c << fuse..(c + 1) << fuse];
                for op in run {
                    self.touched += kernels::apply_kind(chunk, &op.kind);
                }
            }
            self.live = Some(chunks);
            start = end;
        }
    }

    /// In place: `self <- (2|r><r| - I) self`.
    pub fn reflect_about(&mut self, reference: &StateVector) -> Result<()> {
        let ov = reference.inner(self)?;
        let two = 2.0 * ov;
        let union = self.live_union(reference);
        for range in self.chunk_ranges(union.as_deref()) {
            for (s, r) in self.amps[range.clone()].iter_mut().zip(&reference.amps[range]) {
                *s = two * r - *s;
            }
        }
        self.live = union;
        Ok(())
    }

    /// In place: `self <- (I + (e^{i phase} - 1)|r><r|) self`.
    pub fn partial_reflect_about(&mut self, reference: &StateVector, phase: f64) -> Result<()> {
        let ov = reference.inner(self)?;
        let k = (C64::from_polar(1.0, phase) - 1.0) * ov;
        let union = self.live_union(reference);
        for range in self.chunk_ranges(union.as_deref()) {
            for (s, r) in self.amps[range.clone()].iter_mut().zip(&reference.amps[range]) {
                *s += k * r;
            }
        }
        self.live = union;
        Ok(())
    }

    /// Probability that `qubit` reads 1.
    pub fn probability_one(&self, qubit: usize) -> Result<f64> {
        if qubit >= self.num_qubits {
            return Err(Error::Index(format!("qubit {qubit} out of range")));
        }
        let bit = 1usize << qubit;
        Ok(self
            .support_slices()
            .iter()
            .flat_map(|(start, s)| s.iter().enumerate().map(move |(k, z)| (start + k, z)))
            .filter(|(i, _)| i & bit != 0)
            .map(|(_, z)| z.norm_sqr())
            .sum())
    }

    /// Measures `qubit`, optionally forcing the outcome, and collapses the state.
    pub fn measure_qubit<R: Rng + ?Sized>(
        &mut self,
        qubit: usize,
        forced: Option<bool>,
        rng: &mut R,
    ) -> Result<Measurement> {
        let p1 = self.probability_one(qubit)?;
        let total = self.norm().powi(2);
        let p1 = (p1 / total).clamp(0.0, 1.0);
        let outcome = match forced {
            Some(o) => o,
            None => rng.random::<f64>() < p1,
        };
        let probability = if outcome { p1 } else { 1.0 - p1 };
        if probability <= 0.0 {
            return Err(Error::Measurement(format!(
                "outcome {} of qubit {qubit} has zero probability",
                u8::from(outcome)
            )));
        }
        let bit = 1usize << qubit;
        let scale = 1.0 / (probability * total).sqrt();
        self.for_each_support_mut(|i, z| {
            if ((i & bit) != 0) == outcome {
                *z *= scale;
            } else {
                *z = C64::new(0.0, 0.0);
            }
        });
        self.norm_scale *= probability.sqrt();
        Ok(Measurement { outcome, probability })
    }

    /// Keeps only basis states accepted by `keep`, renormalizes, and returns the kept probability.
    pub fn project<F: Fn(usize) -> bool>(&mut self, keep: F) -> Result<f64> {
        let mut kept = 0.0;
        self.for_each_support_mut(|i, z| {
            if keep(i) {
                kept += z.norm_sqr();
            } else {
                *z = C64::new(0.0, 0.0);
            }
        });
        if kept <= 0.0 {
            return Err(Error::Measurement("projection keeps zero probability".into()));
        }
        let s = 1.0 / kept.sqrt();
        self.for_each_support_mut(|_, z| *z *= s);
        self.norm_scale *= kept.sqrt();
        Ok(kept)
    }

    /// Multiplies every amplitude by `e^{i phase}`.
    pub fn apply_global_phase(&mut self, phase: f64) {
        let w = C64::from_polar(1.0, phase);
        self.for_each_support_mut(|_, z| *z *= w);
    }
}
