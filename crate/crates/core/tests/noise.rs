use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qdenoise::circuits::{build_qft_on, Circuit};
use qdenoise::harness::snr_db;
use qdenoise::noise::{
    add_awgn, add_poisson, bit_flip_hook, phase_noise_hook, ClassicalNoise, NoiseHook, NoiseRule, NoiseSpec,
    PhaseNoiseMode,
};
use qdenoise::pipeline::{denoise_proposed, DenoiseConfig};
use qdenoise::sim::{GateOp, NoiseTag, StateVector};
use qdenoise::Error;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let mut v: Vec<C64> = (0..1 << n)
        .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    StateVector::from_amplitudes(v).unwrap()
}

fn wave(n: usize) -> Vec<f64> {
    (0..n).map(|i| (i as f64 * 0.01).sin() + 0.3 * (i as f64 * 0.003).cos()).collect()
}

#[test]
fn awgn_variance_and_limits() {
    let n = 1 << 16;
    // Unit power: alternating +-1.
    let y: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let out = add_awgn(&y, 20.0, &mut rng(1)).unwrap();
    let var = out.iter().zip(&y).map(|(o, v)| (o - v).powi(2)).sum::<f64>() / n as f64;
    assert!((var - 0.01).abs() < 0.01 * 0.03, "variance {var}");

    let y = wave(256);
    let out = add_awgn(&y, 300.0, &mut rng(2)).unwrap();
    for (o, v) in out.iter().zip(&y) {
        assert!((o - v).abs() <= 1e-10 * v.abs().max(1e-300) + 1e-12);
    }

    assert!(matches!(add_awgn(&[0.0; 8], 15.0, &mut rng(3)), Err(Error::Domain(_))));
}

#[test]
fn awgn_realized_snr_is_calibrated() {
    let y = wave(1 << 14);
    let mut r = rng(4);
    let mean = (0..100)
        .map(|_| snr_db(&y, &add_awgn(&y, 15.0, &mut r).unwrap()).unwrap())
        .sum::<f64>()
        / 100.0;
    assert!((mean - 15.0).abs() < 0.5, "mean snr {mean}");
}

#[test]
fn poisson_moments_and_limits() {
    // Shift by min 0, span 1, peak 4: the ones become Poisson(4) draws.
    let n = 100_001;
    let mut y = vec![1.0; n];
    y[0] = 0.0;
    let out = add_poisson(&y, 4.0, &mut rng(5)).unwrap();
    assert_eq!(out[0], 0.0);
    let draws: Vec<f64> = out[1..].iter().map(|v| v * 4.0).collect();
    let mean = draws.iter().sum::<f64>() / draws.len() as f64;
    let var = draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (draws.len() - 1) as f64;
    assert!((var - 4.0).abs() < 0.2, "variance {var}");
    assert!((mean - 4.0).abs() < 0.05, "mean {mean}");

    let y = wave(1024);
    let span = y.iter().copied().fold(f64::MIN, f64::max) - y.iter().copied().fold(f64::MAX, f64::min);
    let out = add_poisson(&y, 1e8, &mut rng(6)).unwrap();
    for (o, v) in out.iter().zip(&y) {
        assert!((o - v).abs() < 1e-3 * span);
    }

    assert!(matches!(add_poisson(&y, 0.0, &mut rng(7)), Err(Error::Domain(_))));
    assert!(add_poisson(&y, -1.0, &mut rng(7)).is_err());
}

#[test]
fn poisson_variance_grows_with_level() {
    let n = 4096;
    let y: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { 0.1 } else { 1.0 }).collect();
    let out = add_poisson(&y, 50.0, &mut rng(8)).unwrap();
    let var_at = |level: f64| {
        let e: Vec<f64> = out.iter().zip(&y).filter(|(_, v)| **v == level).map(|(o, v)| o - v).collect();
        e.iter().map(|x| x * x).sum::<f64>() / e.len() as f64
    };
    assert!(var_at(1.0) > var_at(0.1));
}

#[test]
fn zero_noise_hooks_match_clean_runs() {
    let mut cfg = DenoiseConfig::smoke();
    let y = wave(cfg.signal_len());
    let clean = denoise_proposed(&y, &cfg).unwrap();
    cfg.noise.phase_epsilon = Some(0.0);
    let phase = denoise_proposed(&y, &cfg).unwrap();
    assert_eq!(clean.denoised, phase.denoised);
    assert_eq!(phase.noise_injections, 0);
    cfg.noise.phase_epsilon = None;
    cfg.noise.bit_flip = Some(0.0);
    let flip = denoise_proposed(&y, &cfg).unwrap();
    assert_eq!(clean.denoised, flip.denoised);
    assert_eq!(flip.noise_injections, 0);
}

#[test]
fn certain_bit_flip_after_hadamard() {
    let mut c = Circuit::new("h");
    c.push(GateOp::h(0).tagged(NoiseTag::Transform));
    let mut s = StateVector::zero_qubits(1, 26).unwrap();
    let mut hook = bit_flip_hook(1.0, rng(0)).unwrap();
    s.apply_circuit(&c, Some(&mut hook)).unwrap();
    assert_eq!(hook.injected(), 1);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((s.amplitude(0).re - h).abs() < 1e-15 && (s.amplitude(1).re - h).abs() < 1e-15);
}

#[test]
fn untagged_gates_are_not_perturbed() {
    let mut c = Circuit::new("plain");
    c.push(GateOp::h(0));
    c.push(GateOp::cp(0, 1, 0.4));
    let mut hook = NoiseHook::new(
        vec![NoiseRule::Phase { epsilon: 0.5, mode: PhaseNoiseMode::PostRotation }, NoiseRule::BitFlip { p_flip: 1.0 }],
        rng(0),
    )
    .unwrap();
    let mut s = StateVector::zero_qubits(2, 26).unwrap();
    s.apply_circuit(&c, Some(&mut hook)).unwrap();
    assert_eq!(hook.injected(), 0);
}

#[test]
fn bit_flip_count_is_binomial() {
    let qft = build_qft_on(&[0, 1, 2, 3, 4, 5], false);
    let runs = 10_000;
    let mut hook = bit_flip_hook(0.1, rng(10)).unwrap();
    for _ in 0..runs {
        let mut s = StateVector::zero_qubits(6, 26).unwrap();
        s.apply_circuit(&qft, Some(&mut hook)).unwrap();
    }
    let mean = hook.injected() as f64 / runs as f64;
    assert!((mean - 0.6).abs() < 0.03, "mean flips {mean}");
}

#[test]
fn phase_noise_fidelity_band() {
    let q: Vec<usize> = (0..8).collect();
    let fwd = build_qft_on(&q, false);
    let inv = build_qft_on(&q, true);
    let mut fids = Vec::new();
    for seed in 0..100 {
        let mut r = rng(1000 + seed);
        let s0 = random_state(8, &mut r);
        let mut s = s0.clone();
        let mut hook = phase_noise_hook(0.1, rng(seed)).unwrap();
        s.apply_circuit(&fwd, Some(&mut hook)).unwrap();
        s.apply_circuit(&inv, Some(&mut hook)).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-9);
        fids.push(s0.inner(&s).unwrap().norm_sqr());
    }
    assert!(fids.iter().all(|&f| f < 1.0));
    let mean = fids.iter().sum::<f64>() / fids.len() as f64;
    assert!(mean > 0.9, "mean fidelity {mean}");
}

#[test]
fn perturb_angle_mode_touches_controlled_phases() {
    let q: Vec<usize> = (0..4).collect();
    let qft = build_qft_on(&q, false);
    let mut hook = NoiseHook::new(vec![NoiseRule::Phase { epsilon: 0.1, mode: PhaseNoiseMode::PerturbAngle }], rng(3)).unwrap();
    let mut s = StateVector::zero_qubits(4, 26).unwrap();
    s.apply_circuit(&qft, Some(&mut hook)).unwrap();
    // Every transform gate gets exactly one perturbation.
    assert_eq!(hook.injected(), qft.len());
}

#[test]
fn noise_spec_validation_and_streams() {
    let bad = NoiseSpec { phase_epsilon: Some(-0.1), ..Default::default() };
    assert!(bad.validate().is_err());
    let bad = NoiseSpec { bit_flip: Some(1.5), ..Default::default() };
    assert!(bad.validate().is_err());
    let bad = NoiseSpec { classical: Some(ClassicalNoise::Awgn { snr_db: f64::NAN }), ..Default::default() };
    assert!(bad.validate().is_err());
    assert!(NoiseSpec::default().hook(1).unwrap().is_none());

    let spec = NoiseSpec { phase_epsilon: Some(0.1), seed: 42, ..Default::default() };
    let q: Vec<usize> = (0..5).collect();
    let run = |stream| {
        let mut hook = spec.hook(stream).unwrap().unwrap();
        let mut s = StateVector::zero_qubits(5, 26).unwrap();
        s.apply_circuit(&build_qft_on(&q, false), Some(&mut hook)).unwrap();
        s.amplitudes().to_vec()
    };
    assert_eq!(run(1), run(1));
    assert_ne!(run(1), run(2));
}

#[test]
fn noisy_pipeline_is_deterministic() {
    let mut cfg = DenoiseConfig::smoke();
    cfg.noise = NoiseSpec {
        classical: None,
        phase_epsilon: Some(0.1),
        bit_flip: Some(0.05),
        seed: 77,
        ..Default::default()
    };
    let y = wave(cfg.signal_len());
    let a = denoise_proposed(&y, &cfg).unwrap();
    let b = denoise_proposed(&y, &cfg).unwrap();
    assert_eq!(a, b);
    cfg.noise.seed = 78;
    assert_ne!(a.denoised, denoise_proposed(&y, &cfg).unwrap().denoised);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn noisy_circuits_stay_normalized(seed in any::<u64>(), eps in 0.0f64..1.0, p_flip in 0.0f64..=1.0, n in 1usize..=8) {
        let q: Vec<usize> = (0..n).collect();
        let mut r = rng(seed);
        let mut s = random_state(n, &mut r);
        let mut hook = NoiseHook::new(
            vec![NoiseRule::Phase { epsilon: eps, mode: PhaseNoiseMode::PostRotation }, NoiseRule::BitFlip { p_flip }],
            r,
        ).unwrap();
        for _ in 0..4 {
            s.apply_circuit(&build_qft_on(&q, false), Some(&mut hook)).unwrap();
        }
        prop_assert!((s.norm() - 1.0).abs() < 1e-9);
    }
}
