use crate::error::{Error, Result};

fn check(reference: &[f64], estimate: &[f64]) -> Result<()> {
    if reference.len() != estimate.len() {
        return Err(Error::Dimension(format!(
            "reference has {} samples, estimate has {}",
            reference.len(),
            estimate.len()
        )));
    }
    if reference.is_empty() {
        return Err(Error::Domain("empty signals".into()));
    }
    Ok(())
}

fn error_energy(reference: &[f64], estimate: &[f64]) -> f64 {
    reference.iter().zip(estimate).map(|(r, e)| (r - e).powi(2)).sum()
}

/// `10 log10(sum ref^2 / sum (ref - est)^2)`; `+inf` for an exact match.
pub fn snr_db(reference: &[f64], estimate: &[f64]) -> Result<f64> {
    check(reference, estimate)?;
    let power: f64 = reference.iter().map(|r| r * r).sum();
    if power <= 0.0 {
        return Err(Error::Domain("reference power is zero".into()));
    }
    let err = error_energy(reference, estimate);
    Ok(if err == 0.0 { f64::INFINITY } else { 10.0 * (power / err).log10() })
}

/// Peak used by [`psnr_db`]: largest magnitude of the reference after
/// shifting it up by `-min` when it has negative values.
pub fn psnr_peak(reference: &[f64]) -> f64 {
    let shift = reference.iter().copied().fold(0.0, f64::min);
    reference.iter().map(|r| (r - shift).abs()).fold(0.0, f64::max)
}

/// `10 log10(peak^2 N / sum (ref - est)^2)`; `+inf` for an exact match.
pub fn psnr_db(reference: &[f64], estimate: &[f64]) -> Result<f64> {
    check(reference, estimate)?;
    let peak = psnr_peak(reference);
    if peak <= 0.0 {
        return Err(Error::Domain("reference peak is zero".into()));
    }
    let err = error_energy(reference, estimate);
    let n = reference.len() as f64;
    Ok(if err == 0.0 { f64::INFINITY } else { 10.0 * (peak * peak * n / err).log10() })
}

/// Arithmetic mean and sample standard deviation (0 for a single value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 || !mean.is_finite() {
        return (mean, if mean.is_finite() { 0.0 } else { f64::NAN });
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
