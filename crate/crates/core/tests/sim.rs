use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qdenoise::circuits::{build_qft_on, Circuit};
use qdenoise::sim::{BasisIndex, Control, GateKind, GateOp, RegisterLayout, StateVector};
use qdenoise::Error;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn state(amps: &[C64]) -> StateVector {
    StateVector::from_amplitudes(amps.to_vec()).unwrap()
}

fn random_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let mut v: Vec<C64> = (0..1 << n)
        .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    state(&v)
}

fn random_gate(n: usize, rng: &mut ChaCha8Rng) -> GateOp {
    let t = rng.random_range(0..n);
    let other = |rng: &mut ChaCha8Rng| loop {
        let q = rng.random_range(0..n);
        if q != t {
            break q;
        }
    };
    let angle = rng.random_range(-PI..PI);
    match rng.random_range(0..8) {
        0 => GateOp::h(t),
        1 => GateOp::x(t),
        2 => GateOp::ry(t, angle),
        3 => GateOp::rz(t, angle),
        4 if n > 1 => GateOp::cp(other(rng), t, angle),
        5 if n > 1 => GateOp::swap(other(rng), t),
        6 if n > 1 => GateKind::MultiControlledRy {
            controls: vec![Control { qubit: other(rng), value: rng.random() }],
            target: t,
            angle,
        }
        .into(),
        7 if n > 1 => GateKind::MultiControlledSet {
            controls: vec![],
            targets: vec![t, other(rng)],
            pattern: rng.random_range(1..4),
        }
        .into(),
        _ => GateOp::h(t),
    }
}

#[test]
fn zero_state_lengths() {
    let s = StateVector::new_zero(RegisterLayout::new(1, 1, 0, 1).unwrap()).unwrap();
    assert_eq!(s.len(), 16);
    assert_eq!(s.amplitude(0), c(1.0, 0.0));
    assert!(s.amplitudes()[1..].iter().all(|z| *z == c(0.0, 0.0)));
    assert_eq!(s.norm_scale(), 1.0);

    let s = StateVector::new_zero(RegisterLayout::new(2, 2, 1, 2).unwrap()).unwrap();
    assert_eq!(s.len(), 256);
    assert_eq!(s.amplitude(0), c(1.0, 0.0));
}

#[test]
fn layout_over_capacity() {
    let err = RegisterLayout::new(8, 8, 4, 6).unwrap_err();
    assert!(matches!(err, Error::Capacity(_)), "{err:?}");
    assert!(RegisterLayout::new(8, 8, 4, 5).is_ok());
}

#[test]
fn single_gate_examples() {
    let mut s = state(&[c(1.0, 0.0), c(0.0, 0.0)]);
    s.apply_gate(&GateOp::h(0)).unwrap();
    assert!((s.amplitude(0).re - FRAC_1_SQRT_2).abs() < 1e-15);
    assert!((s.amplitude(1).re - FRAC_1_SQRT_2).abs() < 1e-15);
    s.apply_gate(&GateOp::x(0)).unwrap();
    assert!((s.amplitude(0).re - FRAC_1_SQRT_2).abs() < 1e-15);
    assert!((s.amplitude(1).re - FRAC_1_SQRT_2).abs() < 1e-15);

    let mut s = state(&[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    s.apply_gate(&GateOp::cp(1, 0, PI)).unwrap();
    assert!((s.amplitude(3) - c(-1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn out_of_range_gate() {
    let mut s = state(&[c(1.0, 0.0), c(0.0, 0.0)]);
    assert!(matches!(s.apply_gate(&GateOp::h(1)), Err(Error::Index(_))));
    assert!(matches!(s.apply_gate(&GateOp::cp(0, 0, 1.0)), Err(Error::Index(_))));
    assert!(s.apply_gate(&GateOp::ry(0, f64::NAN)).is_err());
}

#[test]
fn circuit_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let before = random_state(3, &mut rng);
    let mut s = before.clone();
    s.apply_circuit(&Circuit::new("empty"), None).unwrap();
    assert_eq!(s.amplitudes(), before.amplitudes());

    let mut hh = Circuit::new("hh");
    hh.push(GateOp::h(0));
    hh.push(GateOp::h(0));
    let mut s = StateVector::zero_qubits(1, 26).unwrap();
    s.apply_circuit(&hh, None).unwrap();
    assert!((s.amplitude(0) - c(1.0, 0.0)).norm() < 1e-12);
    assert!(s.amplitude(1).norm() < 1e-12);

    let mut s = StateVector::zero_qubits(3, 26).unwrap();
    s.apply_circuit(&build_qft_on(&[0, 1, 2], false), None).unwrap();
    for z in s.amplitudes() {
        assert!((z - c(8f64.sqrt().recip(), 0.0)).norm() < 1e-12);
    }
}

#[test]
fn reflection_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let r = random_state(4, &mut rng);
    let mut s = r.clone();
    s.reflect_about(&r).unwrap();
    for (a, b) in s.amplitudes().iter().zip(r.amplitudes()) {
        assert!((a - b).norm() < 1e-12);
    }

    let zero = state(&[c(1.0, 0.0), c(0.0, 0.0)]);
    let mut one = state(&[c(0.0, 0.0), c(1.0, 0.0)]);
    one.reflect_about(&zero).unwrap();
    assert_eq!(one.amplitudes(), &[c(0.0, 0.0), c(-1.0, 0.0)]);

    let mut s = state(&[c(0.6, 0.0), c(0.8, 0.0)]);
    s.reflect_about(&zero).unwrap();
    assert!((s.amplitude(0) - c(0.6, 0.0)).norm() < 1e-15);
    assert!((s.amplitude(1) - c(-0.8, 0.0)).norm() < 1e-15);

    let wide = StateVector::zero_qubits(2, 26).unwrap();
    assert!(matches!(s.reflect_about(&wide), Err(Error::Dimension(_))));
}

#[test]
fn measurement_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut s = state(&[c(1.0, 0.0), c(0.0, 0.0)]);
    let m = s.measure_qubit(0, Some(false), &mut rng).unwrap();
    assert!(!m.outcome);
    assert_eq!(m.probability, 1.0);
    assert_eq!(s.amplitude(0), c(1.0, 0.0));

    let mut s = state(&[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]);
    let m = s.measure_qubit(0, Some(false), &mut rng).unwrap();
    assert!((m.probability - 0.5).abs() < 1e-15);
    assert!((s.amplitude(0) - c(1.0, 0.0)).norm() < 1e-15);
    assert_eq!(s.amplitude(1), c(0.0, 0.0));
    assert!((s.norm_scale() - FRAC_1_SQRT_2).abs() < 1e-15);

    let mut s = state(&[c(1.0, 0.0), c(0.0, 0.0)]);
    assert!(matches!(s.measure_qubit(0, Some(true), &mut rng), Err(Error::Measurement(_))));
}

#[test]
fn one_qubit_gate_touches_every_amplitude() {
    for n in 1..=10 {
        let mut s = StateVector::zero_qubits(n, 26).unwrap();
        s.apply_gate(&GateOp::h(n - 1)).unwrap();
        assert_eq!(s.touched_amplitudes(), 1 << n);
        s.apply_gate(&GateOp::ry(0, 0.3)).unwrap();
        assert_eq!(s.touched_amplitudes(), 2 << n);
    }
}

#[test]
fn fused_and_unfused_application_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 14;
    let start = random_state(n, &mut rng);
    let gates: Vec<GateOp> = (0..60).map(|_| random_gate(n, &mut rng)).collect();
    let mut circuit = Circuit::new("mix");
    for g in &gates {
        circuit.push(g.clone());
    }
    let mut fused = start.clone();
    fused.apply_circuit(&circuit, None).unwrap();
    let mut single = start;
    for g in &gates {
        single.apply_gate(g).unwrap();
    }
    for (a, b) in fused.amplitudes().iter().zip(single.amplitudes()) {
        assert!((a - b).norm() < 1e-12);
    }
}

#[test]
fn batched_controlled_rotations_match_gatewise() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let n = 14;
    let start = random_state(n, &mut rng);
    let mut circuit = Circuit::new("rotations");
    for v in 0..8 {
        let mut controls = qdenoise::sim::controls_for_value(&[0, 1, 2], v);
        controls.push(Control::on(12));
        circuit.push(GateKind::MultiControlledRy { controls, target: 13, angle: 0.1 + v as f64 }.into());
    }
    let mut batched = start.clone();
    batched.apply_circuit(&circuit, None).unwrap();
    let mut single = start;
    for g in circuit.gates() {
        single.apply_gate(g).unwrap();
    }
    for (a, b) in batched.amplitudes().iter().zip(single.amplitudes()) {
        assert!((a - b).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_circuits_preserve_norm(seed in any::<u64>(), n in 1usize..=12, len in 1usize..=1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = random_state(n, &mut rng);
        let mut circuit = Circuit::new("random");
        for _ in 0..len {
            circuit.push(random_gate(n, &mut rng));
        }
        s.apply_circuit(&circuit, None).unwrap();
        prop_assert!((s.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn reflection_is_an_involution(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = random_state(n, &mut rng);
        let s0 = random_state(n, &mut rng);
        let mut s = s0.clone();
        s.reflect_about(&r).unwrap();
        s.reflect_about(&r).unwrap();
        for (a, b) in s.amplitudes().iter().zip(s0.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn measurement_probabilities_sum_to_one(seed in any::<u64>(), n in 1usize..=8, q in 0usize..8) {
        let q = q % n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_state(n, &mut rng);
        let p0 = s.clone().measure_qubit(q, Some(false), &mut rng).unwrap().probability;
        let p1 = s.clone().measure_qubit(q, Some(true), &mut rng).unwrap().probability;
        prop_assert!((p0 + p1 - 1.0).abs() < 1e-12);
        let mut collapsed = s;
        collapsed.measure_qubit(q, None, &mut rng).unwrap();
        prop_assert!((collapsed.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn layout_index_round_trip(m in 1usize..=4, a in 1usize..=4, p in 0usize..=3, b in 1usize..=4, raw in any::<usize>()) {
        let l = RegisterLayout::new(m, a, p, b).unwrap();
        let idx = raw % l.dim();
        let parts = l.decompose(idx);
        prop_assert_eq!(l.compose(parts).unwrap(), idx);
        prop_assert_eq!(parts, BasisIndex {
            ancilla: l.ancilla_of(idx),
            i: l.i_of(idx),
            mean: l.mean_of(idx),
            j: l.j_of(idx),
            thre: l.thre_of(idx),
        });
    }
}
