use crate::sim::{GateKind, GateOp};

/// Ordered gate list.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    gates: Vec<GateOp>,
    label: String,
    qubit_span: Vec<usize>,
}

impl Circuit {
    pub fn new(label: impl Into<String>) -> Self {
        Circuit { gates: Vec::new(), label: label.into(), qubit_span: Vec::new() }
    }

    pub fn push(&mut self, gate: GateOp) {
        for q in gate.qubits() {
            if let Err(pos) = self.qubit_span.binary_search(&q) {
                self.qubit_span.insert(pos, q);
            }
        }
        self.gates.push(gate);
    }

    pub fn gates(&self) -> &[GateOp] {
        &self.gates
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    /// Sorted qubits touched by any gate.
    pub fn qubit_span(&self) -> &[usize] {
        &self.qubit_span
    }
    pub fn len(&self) -> usize {
        self.gates.len()
    }
    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Reversed gate list with every gate inverted.
    pub fn inverse(&self, label: impl Into<String>) -> Circuit {
        let mut c = Circuit::new(label);
        for g in self.gates.iter().rev() {
            c.push(g.inverse());
        }
        c
    }

    pub fn count_where<F: Fn(&GateKind) -> bool>(&self, f: F) -> usize {
        self.gates.iter().filter(|g| f(&g.kind)).count()
    }

    pub fn hadamard_count(&self) -> usize {
        self.count_where(|k| matches!(k, GateKind::Hadamard { .. }))
    }
    pub fn controlled_phase_count(&self) -> usize {
        self.count_where(|k| matches!(k, GateKind::ControlledPhase { .. }))
    }
    pub fn swap_count(&self) -> usize {
        self.count_where(|k| matches!(k, GateKind::Swap { .. }))
    }
}
