use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::sim::{RegisterLayout, StateVector};

/// Which I-register values count as "low frequency" for a threshold τ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// k <= τ
    Literal,
    /// min(k, M-k) <= τ
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OraclePredicate {
    pub mode: OracleMode,
    pub layout: RegisterLayout,
}

impl OraclePredicate {
    pub fn new(mode: OracleMode, layout: RegisterLayout) -> Self {
        OraclePredicate { mode, layout }
    }

    #[inline]
    pub fn marks(&self, k: usize, tau: usize) -> bool {
        match self.mode {
            OracleMode::Literal => k <= tau,
            OracleMode::Symmetric => k.min(self.layout.segment_len() - k) <= tau,
        }
    }

    #[inline]
    pub fn is_marked_index(&self, idx: usize) -> bool {
        self.marks(self.layout.i_of(idx), self.layout.thre_of(idx))
    }

    /// Number of marked I values for threshold `tau`.
    pub fn marked_count(&self, tau: usize) -> usize {
        (0..self.layout.segment_len()).filter(|&k| self.marks(k, tau)).count()
    }

    fn check(&self, state: &StateVector) -> Result<()> {
        if state.len() != self.layout.dim() {
            return Err(Error::Dimension(format!(
                "state has {} amplitudes, layout expects {}",
                state.len(),
                self.layout.dim()
            )));
        }
        Ok(())
    }
}

/// Flips the sign of every marked basis state.
pub fn apply_oracle(state: &mut StateVector, pred: &OraclePredicate) -> Result<()> {
    pred.check(state)?;
    state.for_each_support_mut(|idx, z| {
        if pred.is_marked_index(idx) {
            *z = -*z;
        }
    });
    Ok(())
}

/// Multiplies every marked basis state by `e^{i phase}`.
pub fn apply_phase_oracle(state: &mut StateVector, pred: &OraclePredicate, phase: f64) -> Result<()> {
    pred.check(state)?;
    let w = C64::from_polar(1.0, phase);
    state.for_each_support_mut(|idx, z| {
        if pred.is_marked_index(idx) {
            *z *= w;
        }
    });
    Ok(())
}

/// Total probability of the marked subspace.
pub fn marked_probability(state: &StateVector, pred: &OraclePredicate) -> Result<f64> {
    pred.check(state)?;
    Ok(state
        .support_slices()
        .iter()
        .flat_map(|(start, s)| s.iter().enumerate().map(move |(k, z)| (start + k, z)))
        .filter(|(idx, _)| pred.is_marked_index(*idx))
        .map(|(_, z)| z.norm_sqr())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::BasisIndex;

    fn layout() -> RegisterLayout {
        RegisterLayout::new(3, 1, 0, 3).unwrap()
    }

    #[test]
    fn marked_sets() {
        let sym = OraclePredicate::new(OracleMode::Symmetric, layout());
        let lit = OraclePredicate::new(OracleMode::Literal, layout());
        let s: Vec<usize> = (0..8).filter(|&k| sym.marks(k, 1)).collect();
        assert_eq!(s, vec![0, 1, 7]);
        assert_eq!(sym.marked_count(1), 3);
        let l: Vec<usize> = (0..8).filter(|&k| lit.marks(k, 1)).collect();
        assert_eq!(l, vec![0, 1]);
        assert_eq!(lit.marked_count(1), 2);
        assert_eq!(sym.marked_count(0), 1);
        assert_eq!(lit.marked_count(7), 8);
        assert_eq!(sym.marked_count(7), 8);
    }

    #[test]
    fn full_threshold_is_global_sign() {
        let l = layout();
        let pred = OraclePredicate::new(OracleMode::Symmetric, l);
        let mut s = StateVector::new_zero(l).unwrap();
        let idx = l.compose(BasisIndex { i: 5, thre: 7, ..Default::default() }).unwrap();
        s.amplitudes_mut()[0] = C64::new(0.0, 0.0);
        s.amplitudes_mut()[idx] = C64::new(1.0, 0.0);
        apply_oracle(&mut s, &pred).unwrap();
        assert_eq!(s.amplitude(idx), C64::new(-1.0, 0.0));
        apply_oracle(&mut s, &pred).unwrap();
        assert_eq!(s.amplitude(idx), C64::new(1.0, 0.0));
    }
}
