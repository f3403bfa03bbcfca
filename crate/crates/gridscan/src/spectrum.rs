//! DFT analysis layer: N-point DFT under the 1/sqrt(N) convention, the
//! frequency grid, conjugate-reversal indexing and windowing.
//!
//! The time-domain signals are complex, so Hermitian symmetry does not hold;
//! spectra are treated as periodic with period N throughout (all indexing is
//! modulo N).

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::DqTimeSeries;

/// N-point DFT values with the 1/sqrt(N) normalization, so that Parseval
/// holds as `sum |x_n|^2 = sum |X_k|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<Complex64>,
    sample_period: f64,
}

impl Spectrum {
    pub fn new(values: Vec<Complex64>, sample_period: f64) -> Result<Self> {
        if sample_period <= 0.0 || !sample_period.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "sample_period must be positive, got {sample_period}"
            )));
        }
        if values.is_empty() {
            return Err(Error::InvalidSpec("spectrum must be non-empty".into()));
        }
        Ok(Self {
            values,
            sample_period,
        })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn sample_period(&self) -> f64 {
        self.sample_period
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Forward DFT: `X_k = (1/sqrt(N)) sum_n x_n e^{-j 2 pi k n / N}`.
pub fn dft(series: &DqTimeSeries) -> Spectrum {
    let n = series.len();
    let mut buf: Vec<Complex64> = series.samples().to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / (n as f64).sqrt();
    for v in &mut buf {
        *v *= scale;
    }
    Spectrum {
        values: buf,
        sample_period: series.sample_period(),
    }
}

/// Inverse DFT under the same 1/sqrt(N) convention; `idft(dft(x)) = x`.
pub fn idft(spec: &Spectrum) -> DqTimeSeries {
    let n = spec.len();
    let mut buf: Vec<Complex64> = spec.values().to_vec();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / (n as f64).sqrt();
    for v in &mut buf {
        *v *= scale;
    }
    DqTimeSeries::new(buf, spec.sample_period()).expect("non-empty by construction")
}

/// `output[k] = conj(input[(N-k) mod N])`; this is the DFT of the conjugated
/// time signal.
pub fn conj_reversed(spec: &Spectrum) -> Spectrum {
    let n = spec.len();
    let values = (0..n)
        .map(|k| spec.values()[(n - k) % n].conj())
        .collect();
    Spectrum {
        values,
        sample_period: spec.sample_period(),
    }
}

/// Uniform grid `omega_k = 2 pi k / (N Ts)` for k in 0..N.
pub fn frequency_grid(n: usize, ts: f64) -> Vec<f64> {
    let base = 2.0 * std::f64::consts::PI / (n as f64 * ts);
    (0..n).map(|k| k as f64 * base).collect()
}

/// Continuous frequency a bin maps to: bins above N/2 are the negative
/// frequencies `omega_k - 2 pi / Ts`.
pub fn signed_omega(k: usize, n: usize, ts: f64) -> f64 {
    debug_assert!(k < n);
    let base = 2.0 * std::f64::consts::PI / (n as f64 * ts);
    if 2 * k <= n {
        k as f64 * base
    } else {
        (k as f64 - n as f64) * base
    }
}

/// Data window applied before the DFT.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowKind {
    Rectangular,
    Hamming,
}

/// Window weights; Hamming is `0.54 - 0.46 cos(2 pi n / (N-1))`.
pub fn window_weights(kind: WindowKind, n: usize) -> Result<Vec<f64>> {
    match kind {
        WindowKind::Rectangular => Ok(vec![1.0; n]),
        WindowKind::Hamming => {
            if n < 2 {
                return Err(Error::InvalidSpec(
                    "hamming window needs at least 2 samples".into(),
                ));
            }
            let denom = (n - 1) as f64;
            Ok((0..n)
                .map(|i| 0.54 - 0.46 * (2.0 * std::f64::consts::PI * i as f64 / denom).cos())
                .collect())
        }
    }
}

/// Elementwise multiply by the window; rectangular is the identity.
pub fn apply_window(series: &DqTimeSeries, kind: WindowKind) -> Result<DqTimeSeries> {
    let w = window_weights(kind, series.len())?;
    let samples = series
        .samples()
        .iter()
        .zip(&w)
        .map(|(x, &wi)| x * wi)
        .collect();
    DqTimeSeries::new(samples, series.sample_period())
}
