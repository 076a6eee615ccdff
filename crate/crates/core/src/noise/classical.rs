use rand::Rng;
use rand_distr::{Distribution, Normal, Poisson};

use crate::error::{Error, Result};

/// Adds white Gaussian noise with variance `mean(y^2) / 10^(snr_db/10)`.
pub fn add_awgn<R: Rng + ?Sized>(y: &[f64], snr_db: f64, rng: &mut R) -> Result<Vec<f64>> {
    if !snr_db.is_finite() {
        return Err(Error::Domain(format!("snr_db must be finite, got {snr_db}")));
    }
    if y.is_empty() {
        return Err(Error::Domain("empty signal has no power".into()));
    }
    let power = y.iter().map(|v| v * v).sum::<f64>() / y.len() as f64;
    if power <= 0.0 {
        return Err(Error::Domain("signal power is zero".into()));
    }
    let sigma = (power / 10f64.powf(snr_db / 10.0)).sqrt();
    let normal = Normal::new(0.0, sigma).map_err(|e| Error::Domain(e.to_string()))?;
    Ok(y.iter().map(|v| v + normal.sample(rng)).collect())
}

/// Shift-scales `y` to `[0, peak]`, draws Poisson counts, and maps back.
pub fn add_poisson<R: Rng + ?Sized>(y: &[f64], peak: f64, rng: &mut R) -> Result<Vec<f64>> {
    if !(peak > 0.0 && peak.is_finite()) {
        return Err(Error::Domain(format!("peak level must be positive, got {peak}")));
    }
    let min = y.iter().copied().fold(f64::INFINITY, f64::min);
    let max = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let offset = min;
    let span = max - min;
    let scale = if span > 0.0 { peak / span } else { 1.0 };
    y.iter()
        .map(|&v| {
            let lambda = (v - offset) * scale;
            let k = if lambda > 0.0 {
                Poisson::new(lambda).map_err(|e| Error::Domain(e.to_string()))?.sample(rng)
            } else {
                0.0
            };
            Ok(k / scale + offset)
        })
        .collect()
}
