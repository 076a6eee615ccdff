use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qdenoise::circuits::{
    amplitude_amplify, apply_oracle, build_qft, build_qft_on, build_qwt_haar, build_qwt_haar_on,
    grover_iteration_count, marked_probability, OracleMode, OraclePredicate,
};
use qdenoise::harness::selftest::circuit_columns;
use qdenoise::sim::{BasisIndex, RegisterLayout, StateVector};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn random_amps(len: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    let mut v: Vec<C64> = (0..len)
        .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    v
}

fn random_state(len: usize, rng: &mut ChaCha8Rng) -> StateVector {
    StateVector::from_amplitudes(random_amps(len, rng)).unwrap()
}

/// Orthonormal Haar analysis, coefficients as [a_L | d_L | ... | d_1].
fn haar(x: &[C64], levels: usize) -> Vec<C64> {
    let mut out = x.to_vec();
    let mut len = x.len();
    for _ in 0..levels {
        let cur = out[..len].to_vec();
        for t in 0..len / 2 {
            out[t] = (cur[2 * t] + cur[2 * t + 1]) / SQRT_2;
            out[len / 2 + t] = (cur[2 * t] - cur[2 * t + 1]) / SQRT_2;
        }
        len /= 2;
    }
    out
}

#[test]
fn qft_matches_dft_matrix() {
    for m in 1..=6 {
        let q: Vec<usize> = (0..m).collect();
        let size = 1usize << m;
        let cols = circuit_columns(&build_qft_on(&q, false), m).unwrap();
        for (i, col) in cols.iter().enumerate() {
            for (k, z) in col.iter().enumerate() {
                let mut want = c(0.0, 0.0);
                // Direct O(M^2) sum of the DFT applied to basis vector |i>.
                for x in 0..size {
                    let e = if x == i { 1.0 } else { 0.0 };
                    want += C64::from_polar(e / (size as f64).sqrt(), 2.0 * PI * (x * k) as f64 / size as f64);
                }
                assert!((z - want).norm() < 1e-10, "m={m} i={i} k={k}");
            }
        }
        let inv = circuit_columns(&build_qft_on(&q, true), m).unwrap();
        for (i, col) in inv.iter().enumerate() {
            for (k, z) in col.iter().enumerate() {
                let want = C64::from_polar((size as f64).sqrt().recip(), -2.0 * PI * (i * k) as f64 / size as f64);
                assert!((z - want).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn qft_small_examples() {
    let c1 = build_qft_on(&[0], false);
    assert_eq!(c1.len(), 1);
    assert!(c1.gates()[0].is_hadamard());

    let cols = circuit_columns(&build_qft_on(&[0, 1], false), 2).unwrap();
    let want = [c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)];
    for (z, w) in cols[1].iter().zip(want) {
        assert!((z - w).norm() < 1e-12);
    }
}

#[test]
fn qft_round_trip_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for m in 1..=6 {
        let q: Vec<usize> = (0..m).collect();
        let s0 = random_state(1 << m, &mut rng);
        let mut s = s0.clone();
        s.apply_circuit(&build_qft_on(&q, false), None).unwrap();
        s.apply_circuit(&build_qft_on(&q, true), None).unwrap();
        for (a, b) in s.amplitudes().iter().zip(s0.amplitudes()) {
            assert!((a - b).norm() < 1e-10);
        }
    }
}

#[test]
fn qft_gate_counts() {
    for m in 1..=10 {
        let layout = RegisterLayout::with_max_qubits(m, 1, 0, m, true, 64).unwrap();
        let qft = build_qft(&layout, false);
        assert_eq!(qft.hadamard_count(), m);
        assert_eq!(qft.controlled_phase_count(), m * (m - 1) / 2);
        assert_eq!(qft.swap_count(), m / 2);
        assert_eq!(qft.len(), m * (m + 1) / 2 + m / 2);
        assert!(qft.qubit_span().iter().all(|&q| q < m));
        assert_eq!(build_qft(&layout, true).len(), qft.len());
    }
}

#[test]
fn qwt_matches_haar_matrix() {
    for m in 1..=6 {
        let q: Vec<usize> = (0..m).collect();
        for levels in 1..=m {
            let cols = circuit_columns(&build_qwt_haar_on(&q, levels, false).unwrap(), m).unwrap();
            for (i, col) in cols.iter().enumerate() {
                let mut e = vec![c(0.0, 0.0); 1 << m];
                e[i] = c(1.0, 0.0);
                let want = haar(&e, levels);
                for (z, w) in col.iter().zip(&want) {
                    assert!((z - w).norm() < 1e-10, "m={m} levels={levels} column {i}");
                }
            }
        }
    }
}

#[test]
fn qwt_examples() {
    let mut s = StateVector::from_amplitudes(vec![c(SQRT_2.recip(), 0.0); 2]).unwrap();
    s.apply_circuit(&build_qwt_haar_on(&[0], 1, false).unwrap(), None).unwrap();
    assert!((s.amplitude(0) - c(1.0, 0.0)).norm() < 1e-12);
    assert!(s.amplitude(1).norm() < 1e-12);

    let (a, b, cc, d) = (0.1, 0.7, -0.2, 0.4);
    let norm = (a * a + b * b + cc * cc + d * d as f64).sqrt();
    let amps: Vec<C64> = [a, b, cc, d].iter().map(|&x| c(x / norm, 0.0)).collect();
    let mut s = StateVector::from_amplitudes(amps).unwrap();
    s.apply_circuit(&build_qwt_haar_on(&[0, 1], 1, false).unwrap(), None).unwrap();
    let want = [(a + b) / SQRT_2, (cc + d) / SQRT_2, (a - b) / SQRT_2, (cc - d) / SQRT_2];
    for (z, w) in s.amplitudes().iter().zip(want) {
        assert!((z.re - w / norm).abs() < 1e-12);
    }

    assert!(build_qwt_haar_on(&[0, 1], 0, false).is_err());
    assert!(build_qwt_haar_on(&[0, 1], 3, false).is_err());
    let layout = RegisterLayout::new(3, 1, 0, 3).unwrap();
    assert!(build_qwt_haar(&layout, 4, false).is_err());
}

#[test]
fn qwt_round_trip_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for m in 1..=6 {
        let q: Vec<usize> = (0..m).collect();
        for levels in 1..=m {
            let s0 = random_state(1 << m, &mut rng);
            let mut s = s0.clone();
            s.apply_circuit(&build_qwt_haar_on(&q, levels, false).unwrap(), None).unwrap();
            s.apply_circuit(&build_qwt_haar_on(&q, levels, true).unwrap(), None).unwrap();
            for (x, y) in s.amplitudes().iter().zip(s0.amplitudes()) {
                assert!((x - y).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn oracle_marked_sets() {
    let layout = RegisterLayout::new(3, 1, 0, 3).unwrap();
    let sym = OraclePredicate::new(OracleMode::Symmetric, layout);
    let lit = OraclePredicate::new(OracleMode::Literal, layout);
    let marked = |p: &OraclePredicate, tau| (0..8).filter(|&k| p.marks(k, tau)).collect::<Vec<_>>();
    assert_eq!(marked(&sym, 1), vec![0, 1, 7]);
    assert_eq!(sym.marked_count(1), 3);
    assert_eq!(marked(&lit, 1), vec![0, 1]);
    assert_eq!(lit.marked_count(1), 2);
    assert_eq!(sym.marked_count(7), 8);
    assert_eq!(lit.marked_count(7), 8);
    for tau in 0..8 {
        assert!(sym.marks(0, tau) && lit.marks(0, tau));
    }
}

#[test]
fn oracle_with_top_threshold_is_global_sign() {
    let layout = RegisterLayout::new(2, 1, 0, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut amps = vec![c(0.0, 0.0); layout.dim()];
    for i in 0..4 {
        let idx = layout.compose(BasisIndex { i, thre: 3, ..Default::default() }).unwrap();
        amps[idx] = c(rng.random(), rng.random());
    }
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|z| *z /= norm);
    for mode in [OracleMode::Symmetric, OracleMode::Literal] {
        let s0 = StateVector::from_amplitudes(amps.clone()).unwrap().with_layout(layout).unwrap();
        let mut s = s0.clone();
        apply_oracle(&mut s, &OraclePredicate::new(mode, layout)).unwrap();
        for (x, y) in s.amplitudes().iter().zip(s0.amplitudes()) {
            assert_eq!(*x, -*y);
        }
    }
}

#[test]
fn grover_counts() {
    assert_eq!(grover_iteration_count(1.0).unwrap(), 0);
    assert_eq!(grover_iteration_count(0.25).unwrap(), 1);
    assert_eq!(grover_iteration_count(0.5).unwrap(), 1);
    assert!(grover_iteration_count(0.0).is_err());
    // Scan r in {0, 1, 2} for the best success at p = 0.5.
    let theta = 0.5f64.sqrt().asin();
    let best = (0..3)
        .map(|r| ((2 * r + 1) as f64 * theta).sin().powi(2))
        .fold(f64::MIN, f64::max);
    assert!((((3.0 * theta).sin().powi(2)) - best).abs() < 1e-12);
}

#[test]
fn grover_textbook_cases() {
    // Two I qubits, one marked value (k=0, literal, tau=0): N=4, t=1.
    let layout = RegisterLayout::new(2, 1, 0, 2).unwrap();
    let pred = OraclePredicate::new(OracleMode::Literal, layout);
    let mut amps = vec![c(0.0, 0.0); layout.dim()];
    for i in 0..4 {
        amps[layout.compose(BasisIndex { i, ..Default::default() }).unwrap()] = c(0.5, 0.0);
    }
    let mut s = StateVector::from_amplitudes(amps).unwrap().with_layout(layout).unwrap();
    let before = s.clone();
    amplitude_amplify(&mut s, &pred, 0).unwrap();
    assert_eq!(s.amplitudes(), before.amplitudes());
    amplitude_amplify(&mut s, &pred, 1).unwrap();
    assert!((marked_probability(&s, &pred).unwrap() - 1.0).abs() < 1e-12);
    let idx0 = layout.compose(BasisIndex::default()).unwrap();
    assert!((s.amplitude(idx0).norm() - 1.0).abs() < 1e-12);

    // Three I qubits, literal tau=1 marks two of eight.
    let layout = RegisterLayout::new(3, 1, 0, 3).unwrap();
    let pred = OraclePredicate::new(OracleMode::Literal, layout);
    let mut amps = vec![c(0.0, 0.0); layout.dim()];
    for i in 0..8 {
        amps[layout.compose(BasisIndex { i, thre: 1, ..Default::default() }).unwrap()] = c(8f64.sqrt().recip(), 0.0);
    }
    let mut s = StateVector::from_amplitudes(amps).unwrap().with_layout(layout).unwrap();
    let p0 = marked_probability(&s, &pred).unwrap();
    assert!((p0 - 0.25).abs() < 1e-15);
    let r = grover_iteration_count(p0).unwrap();
    assert_eq!(r, 1);
    amplitude_amplify(&mut s, &pred, r).unwrap();
    let want = (3.0 * 0.5f64.asin()).sin().powi(2);
    assert!((marked_probability(&s, &pred).unwrap() - want).abs() < 1e-12);
    assert!((want - 1.0).abs() < 1e-12);
}

fn random_pipeline_state(rng: &mut ChaCha8Rng) -> (StateVector, OraclePredicate) {
    let m = rng.random_range(1..=4);
    let p = rng.random_range(0..=2);
    let layout = RegisterLayout::new(m, 1, p, m).unwrap();
    let mode = if rng.random() { OracleMode::Symmetric } else { OracleMode::Literal };
    let s = StateVector::from_amplitudes(random_amps(layout.dim(), rng))
        .unwrap()
        .with_layout(layout)
        .unwrap();
    (s, OraclePredicate::new(mode, layout))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn amplification_follows_closed_form(seed in any::<u64>(), r in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut s, pred) = random_pipeline_state(&mut rng);
        let p0 = marked_probability(&s, &pred).unwrap();
        amplitude_amplify(&mut s, &pred, r).unwrap();
        let want = ((2 * r + 1) as f64 * p0.sqrt().asin()).sin().powi(2);
        prop_assert!((marked_probability(&s, &pred).unwrap() - want).abs() < 1e-9);
        prop_assert!((s.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn amplification_preserves_marked_shape(seed in any::<u64>(), r in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s0, pred) = random_pipeline_state(&mut rng);
        let mut s = s0.clone();
        amplitude_amplify(&mut s, &pred, r).unwrap();
        for marked in [true, false] {
            let idx: Vec<usize> = (0..s.len())
                .filter(|&i| pred.is_marked_index(i) == marked)
                .collect();
            let pivot = *idx.iter().max_by(|&&a, &&b| {
                s0.amplitude(a).norm().total_cmp(&s0.amplitude(b).norm())
            }).unwrap();
            let ratio = s.amplitude(pivot) / s0.amplitude(pivot);
            for &i in &idx {
                prop_assert!((s.amplitude(i) - ratio * s0.amplitude(i)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn oracle_is_an_involution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s0, pred) = random_pipeline_state(&mut rng);
        let mut s = s0.clone();
        apply_oracle(&mut s, &pred).unwrap();
        apply_oracle(&mut s, &pred).unwrap();
        prop_assert_eq!(s.amplitudes(), s0.amplitudes());
    }
}
