//! C interface to the qdenoise simulator.
//!
//! Configurations and results are opaque heap handles released with their
//! `_free` functions. Every fallible call returns a [`QdnStatus`]; the message
//! of the last failure on the calling thread is available from
//! [`qdn_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qdenoise::circuits::OracleMode;
use qdenoise::encoding::ThresholdRule;
use qdenoise::harness::{psnr_db, snr_db};
use qdenoise::pipeline::{denoise, DenoiseConfig, DenoiseResult, Method};
use qdenoise::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Capacity = 3,
    Index = 4,
    Dimension = 5,
    Measurement = 6,
    Domain = 7,
    Sampling = 8,
    Config = 9,
    Io = 10,
    Panic = 11,
}

pub const QDN_METHOD_PROPOSED: u32 = 0;
pub const QDN_METHOD_QFT: u32 = 1;
pub const QDN_METHOD_QWT: u32 = 2;
pub const QDN_METHOD_NONE: u32 = 3;

/// Denoiser settings.
pub struct QdnConfig {
    inner: DenoiseConfig,
}

/// Output of one denoising run.
pub struct QdnResult {
    inner: DenoiseResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> QdnStatus {
    match e {
        Error::Capacity(_) => QdnStatus::Capacity,
        Error::Index(_) => QdnStatus::Index,
        Error::Dimension(_) => QdnStatus::Dimension,
        Error::Measurement(_) => QdnStatus::Measurement,
        Error::Domain(_) => QdnStatus::Domain,
        Error::Input(_) => QdnStatus::InvalidArgument,
        Error::Sampling(_) => QdnStatus::Sampling,
        Error::Config { .. } => QdnStatus::Config,
        Error::Io(_) => QdnStatus::Io,
    }
}

fn fail(status: QdnStatus, message: impl Into<String>) -> QdnStatus {
    set_error(message);
    status
}

fn guard<F: FnOnce() -> QdnStatus>(f: F) -> QdnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(QdnStatus::Panic, "internal panic"),
    }
}

fn from_result(r: qdenoise::Result<()>) -> QdnStatus {
    match r {
        Ok(()) => QdnStatus::Ok,
        Err(e) => fail(status_of(&e), e.to_string()),
    }
}

/// Message of the last failure on this thread, or NULL. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn qdn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qdn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a configuration for windows of `2^m` samples, `2^p` windows,
/// `a` amplitude bits and `b` mean bits.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn qdn_config_new(m: u32, p: u32, a: u32, b: u32, out: *mut *mut QdnConfig) -> QdnStatus {
    guard(|| {
        if out.is_null() {
            return fail(QdnStatus::NullPointer, "out is null");
        }
        let inner = DenoiseConfig::new(m as usize, p as usize, a as usize, b as usize);
        if let Err(e) = inner.validate() {
            return fail(status_of(&e), e.to_string());
        }
        *out = Box::into_raw(Box::new(QdnConfig { inner }));
        QdnStatus::Ok
    })
}

/// Creates a configuration from a named profile: "smoke", "desk" or "full".
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qdn_config_new_profile(name: *const c_char, out: *mut *mut QdnConfig) -> QdnStatus {
    guard(|| {
        if name.is_null() || out.is_null() {
            return fail(QdnStatus::NullPointer, "name or out is null");
        }
        let inner = match CStr::from_ptr(name).to_str() {
            Ok("smoke") => DenoiseConfig::smoke(),
            Ok("desk") => DenoiseConfig::desk(),
            Ok("full") => DenoiseConfig::full(),
            _ => return fail(QdnStatus::InvalidArgument, "unknown profile (expected smoke, desk or full)"),
        };
        *out = Box::into_raw(Box::new(QdnConfig { inner }));
        QdnStatus::Ok
    })
}

/// # Safety
/// `cfg` must come from a `qdn_config_new*` call and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qdn_config_free(cfg: *mut QdnConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

unsafe fn with_config<F: FnOnce(&mut DenoiseConfig) -> qdenoise::Result<()>>(cfg: *mut QdnConfig, f: F) -> QdnStatus {
    guard(|| match cfg.as_mut() {
        None => fail(QdnStatus::NullPointer, "config is null"),
        Some(c) => {
            let mut next = c.inner.clone();
            let r = f(&mut next).and_then(|()| next.validate());
            if r.is_ok() {
                c.inner = next;
            }
            from_result(r)
        }
    })
}

/// Uses the same threshold `tau` in every window.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qdn_config_set_threshold_constant(cfg: *mut QdnConfig, tau: u64) -> QdnStatus {
    with_config(cfg, |c| {
        c.threshold_rule = ThresholdRule::Constant(tau);
        Ok(())
    })
}

/// Interpolates the threshold linearly from `tau_min` to `tau_max` over the window mean.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qdn_config_set_threshold_linear(cfg: *mut QdnConfig, tau_min: i64, tau_max: i64) -> QdnStatus {
    with_config(cfg, |c| {
        c.threshold_rule = ThresholdRule::Linear { tau_min, tau_max, reference_max: None };
        Ok(())
    })
}

/// Marks `|k| <= tau` when `symmetric` is nonzero, `k <= tau` otherwise.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qdn_config_set_symmetric_oracle(cfg: *mut QdnConfig, symmetric: bool) -> QdnStatus {
    with_config(cfg, |c| {
        c.oracle_mode = if symmetric { OracleMode::Symmetric } else { OracleMode::Literal };
        Ok(())
    })
}

/// Fraction of coefficients the baselines keep, in (0, 1].
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qdn_config_set_keep_fraction(cfg: *mut QdnConfig, fraction: f64) -> QdnStatus {
    with_config(cfg, |c| {
        c.keep_fraction = fraction;
        Ok(())
    })
}

/// Gate phase noise of strength `epsilon`; a negative value disables it.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qdn_config_set_phase_noise(cfg: *mut QdnConfig, epsilon: f64) -> QdnStatus {
    with_config(cfg, |c| {
        c.noise.phase_epsilon = (epsilon >= 0.0 || epsilon.is_nan()).then_some(epsilon);
        Ok(())
    })
}

/// Bit-flip probability per transform gate; a negative value disables it.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qdn_config_set_bit_flip(cfg: *mut QdnConfig, p_flip: f64) -> QdnStatus {
    with_config(cfg, |c| {
        c.noise.bit_flip = (p_flip >= 0.0 || p_flip.is_nan()).then_some(p_flip);
        Ok(())
    })
}

/// Seed of the gate-noise generator.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qdn_config_set_noise_seed(cfg: *mut QdnConfig, seed: u64) -> QdnStatus {
    with_config(cfg, |c| {
        c.noise.seed = seed;
        Ok(())
    })
}

/// Number of samples a signal must have for this configuration.
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qdn_config_signal_len(cfg: *const QdnConfig, out: *mut usize) -> QdnStatus {
    guard(|| match (cfg.as_ref(), out.is_null()) {
        (Some(c), false) => {
            *out = c.inner.signal_len();
            QdnStatus::Ok
        }
        _ => fail(QdnStatus::NullPointer, "config or out is null"),
    })
}

/// Denoises `len` samples with one of the `QDN_METHOD_*` methods.
///
/// # Safety
/// `cfg` must be a live handle, `signal` must point to `len` doubles and
/// `out` must be writable. On success `*out` owns a result handle.
#[no_mangle]
pub unsafe extern "C" fn qdn_denoise(
    cfg: *const QdnConfig,
    method: u32,
    signal: *const f64,
    len: usize,
    out: *mut *mut QdnResult,
) -> QdnStatus {
    guard(|| {
        let Some(c) = cfg.as_ref() else {
            return fail(QdnStatus::NullPointer, "config is null");
        };
        if signal.is_null() || out.is_null() {
            return fail(QdnStatus::NullPointer, "signal or out is null");
        }
        let method = match method {
            QDN_METHOD_PROPOSED => Method::Proposed,
            QDN_METHOD_QFT => Method::Qft,
            QDN_METHOD_QWT => Method::Qwt,
            QDN_METHOD_NONE => Method::None,
            other => return fail(QdnStatus::InvalidArgument, format!("unknown method {other}")),
        };
        let y = std::slice::from_raw_parts(signal, len);
        match denoise(method, y, &c.inner) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(QdnResult { inner }));
                QdnStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `res` must come from `qdn_denoise` and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qdn_result_free(res: *mut QdnResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Number of denoised samples, 0 for NULL.
///
/// # Safety
/// `res` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qdn_result_len(res: *const QdnResult) -> usize {
    res.as_ref().map_or(0, |r| r.inner.denoised.len())
}

/// Copies the denoised samples into `dst`, which holds `capacity` doubles.
///
/// # Safety
/// `res` must be a live handle and `dst` must point to `capacity` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qdn_result_copy_denoised(res: *const QdnResult, dst: *mut f64, capacity: usize) -> QdnStatus {
    guard(|| {
        let Some(r) = res.as_ref() else {
            return fail(QdnStatus::NullPointer, "result is null");
        };
        if dst.is_null() {
            return fail(QdnStatus::NullPointer, "dst is null");
        }
        let v = &r.inner.denoised;
        if capacity < v.len() {
            return fail(QdnStatus::Dimension, format!("buffer holds {capacity} samples, need {}", v.len()));
        }
        std::ptr::copy_nonoverlapping(v.as_ptr(), dst, v.len());
        QdnStatus::Ok
    })
}

/// Amplification rounds used, 0 for NULL.
///
/// # Safety
/// `res` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qdn_result_iterations(res: *const QdnResult) -> usize {
    res.as_ref().map_or(0, |r| r.inner.iterations_used)
}

/// Marked-subspace probability before amplification, NaN for NULL.
///
/// # Safety
/// `res` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qdn_result_marked_probability_before(res: *const QdnResult) -> f64 {
    res.as_ref().map_or(f64::NAN, |r| r.inner.marked_probability_before)
}

/// Marked-subspace probability after amplification, NaN for NULL.
///
/// # Safety
/// `res` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qdn_result_marked_probability_after(res: *const QdnResult) -> f64 {
    res.as_ref().map_or(f64::NAN, |r| r.inner.marked_probability_after)
}

/// Decoded samples clamped to the encoding range, 0 for NULL.
///
/// # Safety
/// `res` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qdn_result_clamped_samples(res: *const QdnResult) -> usize {
    res.as_ref().map_or(0, |r| r.inner.clamped_samples)
}

unsafe fn metric(
    f: fn(&[f64], &[f64]) -> qdenoise::Result<f64>,
    reference: *const f64,
    estimate: *const f64,
    len: usize,
    out: *mut f64,
) -> QdnStatus {
    guard(|| {
        if reference.is_null() || estimate.is_null() || out.is_null() {
            return fail(QdnStatus::NullPointer, "reference, estimate or out is null");
        }
        let r = std::slice::from_raw_parts(reference, len);
        let e = std::slice::from_raw_parts(estimate, len);
        match f(r, e) {
            Ok(v) => {
                *out = v;
                QdnStatus::Ok
            }
            Err(err) => fail(status_of(&err), err.to_string()),
        }
    })
}

/// SNR of `estimate` against `reference` in dB; +inf for an exact match.
///
/// # Safety
/// Both arrays must hold `len` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qdn_snr_db(reference: *const f64, estimate: *const f64, len: usize, out: *mut f64) -> QdnStatus {
    metric(snr_db, reference, estimate, len, out)
}

/// PSNR of `estimate` against `reference` in dB; +inf for an exact match.
///
/// # Safety
/// Both arrays must hold `len` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qdn_psnr_db(reference: *const f64, estimate: *const f64, len: usize, out: *mut f64) -> QdnStatus {
    metric(psnr_db, reference, estimate, len, out)
}
