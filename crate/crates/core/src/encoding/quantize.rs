use crate::error::{Error, Result};

/// Rounds to the nearest integer, halves upward.
#[inline]
pub fn round_half_up(x: f64) -> f64 {
    (x + 0.5).floor()
}

/// Signal split into P windows of M samples and quantized to `[0, 2^(a-1)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentedSignal {
    samples: Vec<f64>,
    quantized: Vec<u64>,
    segments: usize,
    segment_len: usize,
    a: usize,
    b: usize,
    scale_offset: f64,
    scale_factor: f64,
}

fn log2_exact(n: usize, what: &str) -> Result<usize> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::Dimension(format!("{what} = {n} is not a power of two")));
    }
    Ok(n.trailing_zeros() as usize)
}

fn check_a(a: usize) -> Result<()> {
    if !(2..=30).contains(&a) {
        return Err(Error::Input(format!("mean register width a must lie in 2..=30, got {a}")));
    }
    Ok(())
}

/// Affine map of `[min y, max y]` onto the integers `[0, 2^(a-1)]`.
///
/// A constant signal maps to `2^(a-2)` everywhere.
pub fn segment_and_quantize(
    y: &[f64],
    segments: usize,
    segment_len: usize,
    a: usize,
) -> Result<SegmentedSignal> {
    let m = log2_exact(segment_len, "M")?;
    log2_exact(segments, "P")?;
    check_a(a)?;
    if y.len() != segments * segment_len {
        return Err(Error::Dimension(format!(
            "signal length {} differs from P*M = {}",
            y.len(),
            segments * segment_len
        )));
    }
    if let Some(i) = y.iter().position(|v| !v.is_finite()) {
        return Err(Error::Input(format!("sample {i} is not finite")));
    }
    let min = y.iter().copied().fold(f64::INFINITY, f64::min);
    let max = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let top = (1u64 << (a - 1)) as f64;
    let (offset, factor) = if max > min {
        (min, (max - min) / top)
    } else {
        (min - (1u64 << (a - 2)) as f64, 1.0)
    };
    let mut sig = SegmentedSignal {
        samples: y.to_vec(),
        quantized: Vec::new(),
        segments,
        segment_len,
        a,
        b: m,
        scale_offset: offset,
        scale_factor: factor,
    };
    sig.quantized = y.iter().map(|&v| sig.quantize_value(v)).collect();
    Ok(sig)
}

impl SegmentedSignal {
    /// Signal given directly by its quantized codes (offset 0, factor 1).
    pub fn from_quantized(q: &[u64], segments: usize, segment_len: usize, a: usize) -> Result<Self> {
        let m = log2_exact(segment_len, "M")?;
        log2_exact(segments, "P")?;
        check_a(a)?;
        if q.len() != segments * segment_len {
            return Err(Error::Dimension(format!(
                "length {} differs from P*M = {}",
                q.len(),
                segments * segment_len
            )));
        }
        let top = 1u64 << (a - 1);
        if let Some(i) = q.iter().position(|&v| v > top) {
            return Err(Error::Input(format!("code {} at {i} exceeds {top}", q[i])));
        }
        Ok(SegmentedSignal {
            samples: q.iter().map(|&v| v as f64).collect(),
            quantized: q.to_vec(),
            segments,
            segment_len,
            a,
            b: m,
            scale_offset: 0.0,
            scale_factor: 1.0,
        })
    }

    /// Sets the Thre register width.
    pub fn with_threshold_bits(mut self, b: usize) -> Result<Self> {
        if b < 1 {
            return Err(Error::Input("threshold register width b must be >= 1".into()));
        }
        self.b = b;
        Ok(self)
    }

    /// Code of `x`, clamped to the representable range.
    pub fn quantize_value(&self, x: f64) -> u64 {
        let top = (1u64 << (self.a - 1)) as f64;
        round_half_up((x - self.scale_offset) / self.scale_factor).clamp(0.0, top) as u64
    }

    /// Original-scale value of a (possibly fractional) code.
    pub fn dequantize(&self, s: f64) -> f64 {
        self.scale_offset + s * self.scale_factor
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }
    pub fn quantized(&self) -> &[u64] {
        &self.quantized
    }
    pub fn segment(&self, j: usize) -> &[u64] {
        &self.quantized[j * self.segment_len..(j + 1) * self.segment_len]
    }
    /// Number of windows P.
    pub fn segments(&self) -> usize {
        self.segments
    }
    /// Window length M.
    pub fn segment_len(&self) -> usize {
        self.segment_len
    }
    pub fn m(&self) -> usize {
        self.segment_len.trailing_zeros() as usize
    }
    pub fn p(&self) -> usize {
        self.segments.trailing_zeros() as usize
    }
    pub fn a(&self) -> usize {
        self.a
    }
    pub fn b(&self) -> usize {
        self.b
    }
    /// Largest code, `2^(a-1)`.
    pub fn code_max(&self) -> u64 {
        1 << (self.a - 1)
    }
    pub fn scale_offset(&self) -> f64 {
        self.scale_offset
    }
    pub fn scale_factor(&self) -> f64 {
        self.scale_factor
    }
}
