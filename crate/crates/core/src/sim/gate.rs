use crate::error::{Error, Result};

/// A control qubit together with the value it must hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub value: bool,
}

impl Control {
    pub fn on(qubit: usize) -> Self {
        Control { qubit, value: true }
    }
    pub fn off(qubit: usize) -> Self {
        Control { qubit, value: false }
    }
}

/// Builds controls that match `value` on `qubits` (qubit k holds bit k of `value`).
pub fn controls_for_value(qubits: &[usize], value: usize) -> Vec<Control> {
    qubits
        .iter()
        .enumerate()
        .map(|(k, &q)| Control { qubit: q, value: (value >> k) & 1 == 1 })
        .collect()
}

/// Elementary operation kinds.
///
/// `Ry(φ) = [[cos φ/2, -sin φ/2], [sin φ/2, cos φ/2]]`,
/// `Rz(δ) = diag(e^{-iδ/2}, e^{iδ/2})`.
#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    Hadamard { target: usize },
    Ry { target: usize, angle: f64 },
    Rz { target: usize, angle: f64 },
    PauliX { target: usize },
    ControlledPhase { control: usize, target: usize, angle: f64 },
    Swap { a: usize, b: usize },
    MultiControlledRy { controls: Vec<Control>, target: usize, angle: f64 },
    MultiControlledHadamard { controls: Vec<Control>, target: usize },
    MultiControlledSwap { controls: Vec<Control>, a: usize, b: usize },
    /// XORs `pattern` onto `targets` (bit k onto `targets[k]`) when the controls match.
    MultiControlledSet { controls: Vec<Control>, targets: Vec<usize>, pattern: u64 },
}

/// Marker consulted by noise hooks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseTag {
    /// Gate belongs to a transform circuit (QFT, IQFT, QWT).
    Transform,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    pub kind: GateKind,
    pub noise_tag: Option<NoiseTag>,
}

impl From<GateKind> for GateOp {
    fn from(kind: GateKind) -> Self {
        GateOp { kind, noise_tag: None }
    }
}

impl GateOp {
    pub fn h(target: usize) -> Self {
        GateKind::Hadamard { target }.into()
    }
    pub fn x(target: usize) -> Self {
        GateKind::PauliX { target }.into()
    }
    pub fn ry(target: usize, angle: f64) -> Self {
        GateKind::Ry { target, angle }.into()
    }
    pub fn rz(target: usize, angle: f64) -> Self {
        GateKind::Rz { target, angle }.into()
    }
    pub fn cp(control: usize, target: usize, angle: f64) -> Self {
        GateKind::ControlledPhase { control, target, angle }.into()
    }
    pub fn swap(a: usize, b: usize) -> Self {
        GateKind::Swap { a, b }.into()
    }

    pub fn tagged(mut self, tag: NoiseTag) -> Self {
        self.noise_tag = Some(tag);
        self
    }

    /// Qubit the gate acts on (first swap qubit for swaps, first target for sets).
    pub fn target(&self) -> usize {
        match &self.kind {
            GateKind::Hadamard { target }
            | GateKind::Ry { target, .. }
            | GateKind::Rz { target, .. }
            | GateKind::PauliX { target }
            | GateKind::ControlledPhase { target, .. }
            | GateKind::MultiControlledRy { target, .. }
            | GateKind::MultiControlledHadamard { target, .. } => *target,
            GateKind::Swap { a, .. } | GateKind::MultiControlledSwap { a, .. } => *a,
            GateKind::MultiControlledSet { targets, .. } => targets.first().copied().unwrap_or(0),
        }
    }

    pub fn is_hadamard(&self) -> bool {
        matches!(
            self.kind,
            GateKind::Hadamard { .. } | GateKind::MultiControlledHadamard { .. }
        )
    }

    /// Every qubit the gate reads or writes.
    pub fn qubits(&self) -> Vec<usize> {
        match &self.kind {
            GateKind::Hadamard { target }
            | GateKind::Ry { target, .. }
            | GateKind::Rz { target, .. }
            | GateKind::PauliX { target } => vec![*target],
            GateKind::ControlledPhase { control, target, .. } => vec![*control, *target],
            GateKind::Swap { a, b } => vec![*a, *b],
            GateKind::MultiControlledRy { controls, target, .. }
            | GateKind::MultiControlledHadamard { controls, target } => {
                let mut v: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
                v.push(*target);
                v
            }
            GateKind::MultiControlledSwap { controls, a, b } => {
                let mut v: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
                v.extend([*a, *b]);
                v
            }
            GateKind::MultiControlledSet { controls, targets, .. } => {
                let mut v: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
                v.extend(targets.iter().copied());
                v
            }
        }
    }

    pub fn max_qubit(&self) -> usize {
        self.qubits().into_iter().max().unwrap_or(0)
    }

    fn angle(&self) -> Option<f64> {
        match &self.kind {
            GateKind::Ry { angle, .. }
            | GateKind::Rz { angle, .. }
            | GateKind::ControlledPhase { angle, .. }
            | GateKind::MultiControlledRy { angle, .. } => Some(*angle),
            _ => None,
        }
    }

    /// Checks index range, distinctness and angle finiteness.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for (k, &q) in qs.iter().enumerate() {
            if q >= num_qubits {
                return Err(Error::Index(format!(
                    "qubit {q} out of range for {num_qubits} qubits"
                )));
            }
            if qs[..k].contains(&q) {
                return Err(Error::Index(format!("qubit {q} used twice in {:?}", self.kind)));
            }
        }
        if let GateKind::MultiControlledSet { targets, pattern, .. } = &self.kind {
            if targets.len() < 64 && (*pattern >> targets.len()) != 0 {
                return Err(Error::Index(format!(
                    "pattern {pattern} wider than {} targets",
                    targets.len()
                )));
            }
        }
        if let Some(a) = self.angle() {
            if !a.is_finite() {
                return Err(Error::Domain(format!("non-finite angle {a}")));
            }
        }
        Ok(())
    }

    /// The inverse operation.
    pub fn inverse(&self) -> GateOp {
        let kind = match &self.kind {
            GateKind::Ry { target, angle } => GateKind::Ry { target: *target, angle: -angle },
            GateKind::Rz { target, angle } => GateKind::Rz { target: *target, angle: -angle },
            GateKind::ControlledPhase { control, target, angle } => GateKind::ControlledPhase {
                control: *control,
                target: *target,
                angle: -angle,
            },
            GateKind::MultiControlledRy { controls, target, angle } => {
                GateKind::MultiControlledRy {
                    controls: controls.clone(),
                    target: *target,
                    angle: -angle,
                }
            }
            other => other.clone(),
        };
        GateOp { kind, noise_tag: self.noise_tag }
    }
}
