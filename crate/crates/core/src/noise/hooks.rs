use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sim::{GateHook, GateKind, GateOp, NoiseTag};

/// How phase noise reaches a gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseNoiseMode {
    /// Rz(δ) on the target after the gate.
    #[default]
    PostRotation,
    /// Controlled-phase gates get δ added to their own angle; other gates use a post rotation.
    PerturbAngle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseRule {
    Phase { epsilon: f64, mode: PhaseNoiseMode },
    BitFlip { p_flip: f64 },
}

/// Stochastic unitary noise attached to transform-tagged gates.
#[derive(Debug, Clone)]
pub struct NoiseHook {
    rules: Vec<NoiseRule>,
    rng: ChaCha8Rng,
    injected: usize,
}

pub fn phase_noise_hook(epsilon: f64, rng: ChaCha8Rng) -> Result<NoiseHook> {
    NoiseHook::new(vec![NoiseRule::Phase { epsilon, mode: PhaseNoiseMode::PostRotation }], rng)
}

pub fn bit_flip_hook(p_flip: f64, rng: ChaCha8Rng) -> Result<NoiseHook> {
    NoiseHook::new(vec![NoiseRule::BitFlip { p_flip }], rng)
}

impl NoiseHook {
    pub fn new(rules: Vec<NoiseRule>, rng: ChaCha8Rng) -> Result<Self> {
        for r in &rules {
            match *r {
                NoiseRule::Phase { epsilon, .. } if !(epsilon >= 0.0 && epsilon.is_finite()) => {
                    return Err(Error::Domain(format!("epsilon must be >= 0, got {epsilon}")))
                }
                NoiseRule::BitFlip { p_flip } if !(0.0..=1.0).contains(&p_flip) => {
                    return Err(Error::Domain(format!("p_flip must lie in [0, 1], got {p_flip}")))
                }
                _ => {}
            }
        }
        Ok(NoiseHook { rules, rng, injected: 0 })
    }

    /// Number of gates injected or perturbed so far.
    pub fn injected(&self) -> usize {
        self.injected
    }

    pub fn rules(&self) -> &[NoiseRule] {
        &self.rules
    }

    fn draw(&mut self, epsilon: f64) -> f64 {
        self.rng.random_range(-epsilon..=epsilon)
    }
}

impl GateHook for NoiseHook {
    fn replace(&mut self, gate: &GateOp) -> Option<GateOp> {
        if gate.noise_tag != Some(NoiseTag::Transform) {
            return None;
        }
        let GateKind::ControlledPhase { control, target, angle } = gate.kind else {
            return None;
        };
        for i in 0..self.rules.len() {
            if let NoiseRule::Phase { epsilon, mode: PhaseNoiseMode::PerturbAngle } = self.rules[i] {
                if epsilon > 0.0 {
                    let d = self.draw(epsilon);
                    self.injected += 1;
                    return Some(GateOp::cp(control, target, angle + d).tagged(NoiseTag::Transform));
                }
            }
        }
        None
    }

    fn after(&mut self, gate: &GateOp, out: &mut Vec<GateOp>) {
        if gate.noise_tag != Some(NoiseTag::Transform) {
            return;
        }
        let is_cp = matches!(gate.kind, GateKind::ControlledPhase { .. });
        for i in 0..self.rules.len() {
            match self.rules[i] {
                NoiseRule::Phase { epsilon, mode } => {
                    if epsilon == 0.0 || (is_cp && mode == PhaseNoiseMode::PerturbAngle) {
                        continue;
                    }
                    let d = self.draw(epsilon);
                    out.push(GateOp::rz(gate.target(), d));
                    self.injected += 1;
                }
                NoiseRule::BitFlip { p_flip } => {
                    if !gate.is_hadamard() || p_flip == 0.0 {
                        continue;
                    }
                    if self.rng.random::<f64>() < p_flip {
                        out.push(GateOp::x(gate.target()));
                        self.injected += 1;
                    }
                }
            }
        }
    }
}
