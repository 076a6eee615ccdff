//! Oracle-equivalence checks runnable from the command line.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuits::{
    amplitude_amplify, build_qft_on, build_qwt_haar_on, grover_iteration_count, marked_probability, Circuit,
    OracleMode, OraclePredicate,
};
use crate::encoding::{compute_stats, decode_signal, prepare_state, SegmentedSignal, ThresholdRule};
use crate::error::Result;
use crate::sim::{BasisIndex, RegisterLayout, StateVector};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Columns of the unitary of `c` on `n` qubits.
pub fn circuit_columns(c: &Circuit, n: usize) -> Result<Vec<Vec<C64>>> {
    (0..1usize << n)
        .map(|col| {
            let mut v = vec![C64::new(0.0, 0.0); 1 << n];
            v[col] = C64::new(1.0, 0.0);
            let mut s = StateVector::from_amplitudes(v)?;
            s.apply_circuit(c, None)?;
            Ok(s.amplitudes().to_vec())
        })
        .collect()
}

fn haar_reference(x: &[C64], levels: usize) -> Vec<C64> {
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

fn qft_check() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for m in 1..=6 {
        let q: Vec<usize> = (0..m).collect();
        let size = 1usize << m;
        let cols = circuit_columns(&build_qft_on(&q, false), m)?;
        for (i, col) in cols.iter().enumerate() {
            for (k, z) in col.iter().enumerate() {
                let want = C64::from_polar(1.0 / (size as f64).sqrt(), 2.0 * PI * (i * k) as f64 / size as f64);
                worst = worst.max((z - want).norm());
            }
        }
    }
    Ok(worst)
}

fn qwt_check() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for m in 1..=6 {
        let q: Vec<usize> = (0..m).collect();
        for levels in 1..=m {
            let cols = circuit_columns(&build_qwt_haar_on(&q, levels, false)?, m)?;
            for (i, col) in cols.iter().enumerate() {
                let mut e = vec![C64::new(0.0, 0.0); 1 << m];
                e[i] = C64::new(1.0, 0.0);
                let want = haar_reference(&e, levels);
                for (a, b) in col.iter().zip(&want) {
                    worst = worst.max((a - b).norm());
                }
            }
        }
    }
    Ok(worst)
}

fn grover_check(rng: &mut ChaCha8Rng) -> Result<f64> {
    let layout = RegisterLayout::with_max_qubits(4, 1, 2, 4, true, 26)?;
    let pred = OraclePredicate::new(OracleMode::Symmetric, layout);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let mut v: Vec<C64> = (0..layout.dim())
            .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= n);
        let mut s = StateVector::from_amplitudes(v)?.with_layout(layout)?;
        let p0 = marked_probability(&s, &pred)?;
        let r = grover_iteration_count(p0)?;
        amplitude_amplify(&mut s, &pred, r)?;
        let want = ((2 * r + 1) as f64 * p0.sqrt().asin()).sin().powi(2);
        worst = worst.max((marked_probability(&s, &pred)? - want).abs());
    }
    Ok(worst)
}

fn roundtrip_check(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..40 {
        let (m, p, a) = (rng.random_range(1..=4), rng.random_range(0..=3), rng.random_range(2..=6));
        let top = 1u64 << (a - 1);
        let q: Vec<u64> = (0..1usize << (m + p)).map(|_| rng.random_range(0..=top)).collect();
        let sig = SegmentedSignal::from_quantized(&q, 1 << p, 1 << m, a)?;
        let stats = compute_stats(&sig, &ThresholdRule::default_for(1 << m))?;
        let s = prepare_state(&sig, &stats)?;
        let d = decode_signal(&s, &sig, &stats)?;
        for (x, y) in d.codes.iter().zip(&q) {
            worst = worst.max((x - *y as f64).abs());
        }
        let l = *s.layout().expect("layout");
        let _ = l.compose(BasisIndex::default())?;
    }
    Ok(worst)
}

/// Runs every check.
pub fn run_selftest(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut push = |name, res: Result<f64>, tol: f64| {
        out.push(match res {
            Ok(err) => Check { name, passed: err <= tol, detail: format!("max error {err:e} (tolerance {tol:e})") },
            Err(e) => Check { name, passed: false, detail: e.to_string() },
        })
    };
    push("qft-vs-dft", qft_check(), 1e-10);
    push("qwt-vs-haar", qwt_check(), 1e-10);
    push("grover-closed-form", grover_check(&mut rng), 1e-9);
    push("encode-decode-roundtrip", roundtrip_check(&mut rng), 1e-9);
    out
}
