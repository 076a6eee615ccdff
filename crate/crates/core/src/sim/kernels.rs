//! Gate kernels over raw amplitude slices.
//!
//! Every kernel works on a slice whose length is a power of two and treats
//! qubit `q` as bit `q` of the slice index. Each returns the number of
//! amplitudes it wrote.

use num_complex::Complex64 as C64;
use std::f64::consts::FRAC_1_SQRT_2;

use super::gate::{Control, GateKind, GateOp};

/// Spreads the bits of `x` so that every position in `fixed` (ascending) is zero.
#[inline(always)]
fn deposit(mut x: usize, fixed: &[usize]) -> usize {
    for &pos in fixed {
        let low = x & ((1usize << pos) - 1);
        x = ((x >> pos) << (pos + 1)) | low;
    }
    x
}

fn sorted_positions(controls: &[Control], extra: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = controls.iter().map(|c| c.qubit).chain(extra.iter().copied()).collect();
    v.sort_unstable();
    v
}

fn control_mask(controls: &[Control]) -> usize {
    controls
        .iter()
        .filter(|c| c.value)
        .fold(0, |acc, c| acc | (1 << c.qubit))
}

type Mat2 = [[C64; 2]; 2];

fn real_mat(m: [[f64; 2]; 2]) -> Mat2 {
    [
        [C64::new(m[0][0], 0.0), C64::new(m[0][1], 0.0)],
        [C64::new(m[1][0], 0.0), C64::new(m[1][1], 0.0)],
    ]
}

fn hadamard_mat() -> Mat2 {
    real_mat([[FRAC_1_SQRT_2, FRAC_1_SQRT_2], [FRAC_1_SQRT_2, -FRAC_1_SQRT_2]])
}

fn ry_mat(angle: f64) -> Mat2 {
    let (s, c) = (angle / 2.0).sin_cos();
    real_mat([[c, -s], [s, c]])
}

#[inline(always)]
fn mix(u: &Mat2, a: C64, b: C64) -> (C64, C64) {
    (u[0][0] * a + u[0][1] * b, u[1][0] * a + u[1][1] * b)
}

fn one_qubit(amps: &mut [C64], target: usize, u: &Mat2) -> u64 {
    let half = 1usize << target;
    for block in amps.chunks_exact_mut(half << 1) {
        let (lo, hi) = block.split_at_mut(half);
        for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
            let (nx, ny) = mix(u, *x, *y);
            *x = nx;
            *y = ny;
        }
    }
    amps.len() as u64
}

fn controlled_one_qubit(amps: &mut [C64], controls: &[Control], target: usize, u: &Mat2) -> u64 {
    if controls.is_empty() {
        return one_qubit(amps, target, u);
    }
    let fixed = sorted_positions(controls, &[target]);
    let base = control_mask(controls);
    let bit = 1usize << target;
    let count = amps.len() >> fixed.len();
    for x in 0..count {
        let i0 = deposit(x, &fixed) | base;
        let i1 = i0 | bit;
        let (a, b) = mix(u, amps[i0], amps[i1]);
        amps[i0] = a;
        amps[i1] = b;
    }
    2 * count as u64
}

fn pauli_x(amps: &mut [C64], target: usize) -> u64 {
    let half = 1usize << target;
    for block in amps.chunks_exact_mut(half << 1) {
        let (lo, hi) = block.split_at_mut(half);
        lo.swap_with_slice(hi);
    }
    amps.len() as u64
}

fn rz(amps: &mut [C64], target: usize, angle: f64) -> u64 {
    let p0 = C64::from_polar(1.0, -angle / 2.0);
    let p1 = C64::from_polar(1.0, angle / 2.0);
    let half = 1usize << target;
    for block in amps.chunks_exact_mut(half << 1) {
        let (lo, hi) = block.split_at_mut(half);
        lo.iter_mut().for_each(|z| *z *= p0);
        hi.iter_mut().for_each(|z| *z *= p1);
    }
    amps.len() as u64
}

fn controlled_phase(amps: &mut [C64], control: usize, target: usize, angle: f64) -> u64 {
    let w = C64::from_polar(1.0, angle);
    let mut fixed = [control, target];
    fixed.sort_unstable();
    let base = (1usize << control) | (1usize << target);
    let count = amps.len() >> 2;
    for x in 0..count {
        amps[deposit(x, &fixed) | base] *= w;
    }
    count as u64
}

fn controlled_swap(amps: &mut [C64], controls: &[Control], a: usize, b: usize) -> u64 {
    let fixed = sorted_positions(controls, &[a, b]);
    let base = control_mask(controls);
    let count = amps.len() >> fixed.len();
    for x in 0..count {
        let idx = deposit(x, &fixed) | base;
        amps.swap(idx | (1 << a), idx | (1 << b));
    }
    2 * count as u64
}

fn controlled_set(amps: &mut [C64], controls: &[Control], targets: &[usize], pattern: u64) -> u64 {
    if pattern == 0 {
        return 0;
    }
    let fixed = sorted_positions(controls, targets);
    let base = control_mask(controls);
    let k = targets.len();
    let offsets: Vec<usize> = (0..1usize << k)
        .map(|v| {
            targets
                .iter()
                .enumerate()
                .filter(|(t, _)| (v >> t) & 1 == 1)
                .fold(0, |acc, (_, &q)| acc | (1 << q))
        })
        .collect();
    let pat = pattern as usize;
    let pairs: Vec<(usize, usize)> = (0..1usize << k)
        .filter(|&v| v < v ^ pat)
        .map(|v| (offsets[v], offsets[v ^ pat]))
        .collect();
    let count = amps.len() >> fixed.len();
    for x in 0..count {
        let idx = deposit(x, &fixed) | base;
        for &(s, d) in &pairs {
            amps.swap(idx | s, idx | d);
        }
    }
    (2 * pairs.len() * count) as u64
}

/// Control-qubit set, target and matrix of a controlled one-qubit gate.
fn controlled_parts(kind: &GateKind) -> Option<(&[Control], usize, Mat2)> {
    match kind {
        GateKind::MultiControlledRy { controls, target, angle } => Some((controls, *target, ry_mat(*angle))),
        GateKind::MultiControlledHadamard { controls, target } => Some((controls, *target, hadamard_mat())),
        _ => None,
    }
}

fn same_shape(a: &[Control], b: &[Control]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.qubit == y.qubit)
}

/// Length of the leading run of controlled one-qubit gates that share a
/// target and a control-qubit set (control values may differ).
pub(crate) fn batchable_run(ops: &[GateOp]) -> usize {
    let Some((c0, t0, _)) = ops.first().and_then(|g| controlled_parts(&g.kind)) else {
        return 0;
    };
    if c0.is_empty() {
        return 0;
    }
    ops.iter()
        .take_while(|g| controlled_parts(&g.kind).is_some_and(|(c, t, _)| t == t0 && same_shape(c, c0)))
        .count()
}

/// Applies a run accepted by `batchable_run`, visiting each free index once.
pub(crate) fn apply_controlled_batch(amps: &mut [C64], ops: &[GateOp]) -> u64 {
    let parts: Vec<(&[Control], usize, Mat2)> = ops.iter().filter_map(|g| controlled_parts(&g.kind)).collect();
    let (c0, target, _) = parts[0];
    let fixed = sorted_positions(c0, &[target]);
    let bit = 1usize << target;
    let gates: Vec<(usize, Mat2)> = parts.iter().map(|(c, _, u)| (control_mask(c), *u)).collect();
    let count = amps.len() >> fixed.len();
    for x in 0..count {
        let free = deposit(x, &fixed);
        for (base, u) in &gates {
            let i0 = free | base;
            let i1 = i0 | bit;
            let (a, b) = mix(u, amps[i0], amps[i1]);
            amps[i0] = a;
            amps[i1] = b;
        }
    }
    2 * (count * gates.len()) as u64
}

/// Applies `kind` to `amps`; indices in `kind` must be below `log2(amps.len())`.
pub(crate) fn apply_kind(amps: &mut [C64], kind: &GateKind) -> u64 {
    match kind {
        GateKind::Hadamard { target } => one_qubit(amps, *target, &hadamard_mat()),
        GateKind::Ry { target, angle } => one_qubit(amps, *target, &ry_mat(*angle)),
        GateKind::Rz { target, angle } => rz(amps, *target, *angle),
        GateKind::PauliX { target } => pauli_x(amps, *target),
        GateKind::ControlledPhase { control, target, angle } => {
            controlled_phase(amps, *control, *target, *angle)
        }
        GateKind::Swap { a, b } => controlled_swap(amps, &[], *a, *b),
        GateKind::MultiControlledRy { controls, target, angle } => {
            controlled_one_qubit(amps, controls, *target, &ry_mat(*angle))
        }
        GateKind::MultiControlledHadamard { controls, target } => {
            controlled_one_qubit(amps, controls, *target, &hadamard_mat())
        }
        GateKind::MultiControlledSwap { controls, a, b } => controlled_swap(amps, controls, *a, *b),
        GateKind::MultiControlledSet { controls, targets, pattern } => {
            controlled_set(amps, controls, targets, *pattern)
        }
    }
}
