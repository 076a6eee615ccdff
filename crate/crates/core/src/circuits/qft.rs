use std::f64::consts::PI;

use super::Circuit;
use crate::sim::{GateOp, NoiseTag, RegisterLayout};

/// QFT (or inverse) on the I register.
///
/// Basis state |i> maps to `(1/sqrt M) sum_k exp(+2 pi i ik/M) |k>`; the inverse
/// flips the sign. Gate count: m Hadamards, m(m-1)/2 controlled phases and
/// floor(m/2) swaps, each swap counted as one primitive.
pub fn build_qft(layout: &RegisterLayout, inverse: bool) -> Circuit {
    build_qft_on(&layout.i_qubits(), inverse)
}

/// QFT on an arbitrary qubit list, qubit `qubits[t]` holding bit t.
pub fn build_qft_on(qubits: &[usize], inverse: bool) -> Circuit {
    let m = qubits.len();
    let mut c = Circuit::new(format!("qft{m}"));
    let tag = NoiseTag::Transform;
    for t in (0..m).rev() {
        c.push(GateOp::h(qubits[t]).tagged(tag));
        for ctl in (0..t).rev() {
            let angle = PI / (1u64 << (t - ctl)) as f64;
            c.push(GateOp::cp(qubits[ctl], qubits[t], angle).tagged(tag));
        }
    }
    for s in 0..m / 2 {
        c.push(GateOp::swap(qubits[s], qubits[m - 1 - s]).tagged(tag));
    }
    if inverse {
        c.inverse(format!("iqft{m}"))
    } else {
        c
    }
}
