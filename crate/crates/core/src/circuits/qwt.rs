use super::Circuit;
use crate::error::{Error, Result};
use crate::sim::{Control, GateKind, GateOp, NoiseTag, RegisterLayout};

/// Orthonormal Haar wavelet transform (or inverse) on the I register.
///
/// Each level pairs neighbours with a Hadamard on the lowest qubit and then
/// rotates the active bits so approximations land in the low half and details
/// in the high half. Later levels act only where the already-finished detail
/// bits are zero. Output order is `[a_L | d_L | d_{L-1} | ... | d_1]`.
pub fn build_qwt_haar(layout: &RegisterLayout, levels: usize, inverse: bool) -> Result<Circuit> {
    build_qwt_haar_on(&layout.i_qubits(), levels, inverse)
}

pub fn build_qwt_haar_on(qubits: &[usize], levels: usize, inverse: bool) -> Result<Circuit> {
    let m = qubits.len();
    if levels < 1 || levels > m {
        return Err(Error::Input(format!("levels must lie in 1..={m}, got {levels}")));
    }
    let tag = NoiseTag::Transform;
    let mut c = Circuit::new(format!("qwt{m}x{levels}"));
    for level in 0..levels {
        let width = m - level;
        let controls: Vec<Control> = qubits[width..].iter().map(|&q| Control::off(q)).collect();
        let h = if controls.is_empty() {
            GateOp::h(qubits[0])
        } else {
            GateKind::MultiControlledHadamard { controls: controls.clone(), target: qubits[0] }.into()
        };
        c.push(h.tagged(tag));
        for k in 0..width.saturating_sub(1) {
            let (a, b) = (qubits[k], qubits[k + 1]);
            let sw = if controls.is_empty() {
                GateOp::swap(a, b)
            } else {
                GateKind::MultiControlledSwap { controls: controls.clone(), a, b }.into()
            };
            c.push(sw.tagged(tag));
        }
    }
    if inverse {
        Ok(c.inverse(format!("iqwt{m}x{levels}")))
    } else {
        Ok(c)
    }
}
