//! Time-domain signal layer: excitation generation, abc/dq frame conversion,
//! mean removal and complex packing of the dq channel pair.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const PERIOD_REL_TOL: f64 = 1e-12;

/// Uniformly sampled real-valued channel, in per-unit.
#[derive(Debug, Clone, PartialEq)]
pub struct RealTimeSeries {
    samples: Vec<f64>,
    sample_period: f64,
    channel_label: String,
}

impl RealTimeSeries {
    pub fn new(samples: Vec<f64>, sample_period: f64, channel_label: &str) -> Result<Self> {
        if sample_period <= 0.0 || !sample_period.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "sample_period must be positive, got {sample_period}"
            )));
        }
        if samples.is_empty() {
            return Err(Error::InvalidSpec("time series must be non-empty".into()));
        }
        Ok(Self {
            samples,
            sample_period,
            channel_label: channel_label.to_string(),
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_period(&self) -> f64 {
        self.sample_period
    }

    pub fn channel_label(&self) -> &str {
        &self.channel_label
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }
}

/// Uniformly sampled complex dq signal; `samples[n] = d[n] + j*q[n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DqTimeSeries {
    samples: Vec<Complex64>,
    sample_period: f64,
}

impl DqTimeSeries {
    pub fn new(samples: Vec<Complex64>, sample_period: f64) -> Result<Self> {
        if sample_period <= 0.0 || !sample_period.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "sample_period must be positive, got {sample_period}"
            )));
        }
        if samples.is_empty() {
            return Err(Error::InvalidSpec("time series must be non-empty".into()));
        }
        Ok(Self {
            samples,
            sample_period,
        })
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn sample_period(&self) -> f64 {
        self.sample_period
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn mean(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() / self.samples.len() as f64
    }
}

/// Parameters of a random binary excitation sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationSpec {
    /// Per-sample amplitude in per-unit; every sample is `+amplitude` or `-amplitude`.
    pub amplitude: f64,
    /// Number of samples N.
    pub duration_samples: usize,
    /// Seed of the deterministic generator.
    pub seed: u64,
    /// Distinct seeds for the d and q channels of a two-channel injection.
    pub channel_seeds: (u64, u64),
}

impl ExcitationSpec {
    pub fn new(amplitude: f64, duration_samples: usize, seed_d: u64, seed_q: u64) -> Self {
        Self {
            amplitude,
            duration_samples,
            seed: seed_d,
            channel_seeds: (seed_d, seed_q),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.amplitude > 0.0) || !self.amplitude.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "excitation amplitude must be positive, got {}",
                self.amplitude
            )));
        }
        if self.duration_samples == 0 {
            return Err(Error::InvalidSpec(
                "excitation duration must be at least one sample".into(),
            ));
        }
        if self.channel_seeds.0 == self.channel_seeds.1 {
            return Err(Error::InvalidSpec(
                "d and q channels must use distinct seeds".into(),
            ));
        }
        Ok(())
    }

    /// Spec for one channel of the pair, reusing amplitude and length.
    pub fn channel(&self, seed: u64) -> ExcitationSpec {
        ExcitationSpec {
            amplitude: self.amplitude,
            duration_samples: self.duration_samples,
            seed,
            channel_seeds: self.channel_seeds,
        }
    }
}

/// Zero-mean random binary sequence: every sample is an independent
/// equiprobable draw from {-amplitude, +amplitude}, one draw per sample
/// (sample-and-hold at `sample_period`). Identical seed gives an identical
/// sequence.
pub fn generate_rbs(spec: &ExcitationSpec, sample_period: f64) -> Result<RealTimeSeries> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let samples: Vec<f64> = (0..spec.duration_samples)
        .map(|_| {
            if rng.random::<bool>() {
                spec.amplitude
            } else {
                -spec.amplitude
            }
        })
        .collect();
    RealTimeSeries::new(samples, sample_period, "rbs")
}

fn check_pair_shape(x: &RealTimeSeries, y: &RealTimeSeries) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::ShapeMismatch(format!(
            "channel lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    let (p, q) = (x.sample_period(), y.sample_period());
    if (p - q).abs() > PERIOD_REL_TOL * p.abs() {
        return Err(Error::ShapeMismatch(format!(
            "sample periods differ: {p} vs {q}"
        )));
    }
    Ok(())
}

/// Synchronous-frame (Park) transform with angle `theta(t_n) = omega_g*t_n + theta0`,
/// amplitude-invariant convention: a balanced cosine triple of amplitude A
/// phase-aligned with theta maps to d = A, q = 0.
pub fn abc_to_dq(
    phase_a: &RealTimeSeries,
    phase_b: &RealTimeSeries,
    phase_c: &RealTimeSeries,
    omega_g: f64,
    theta0: f64,
) -> Result<(RealTimeSeries, RealTimeSeries)> {
    check_pair_shape(phase_a, phase_b)?;
    check_pair_shape(phase_a, phase_c)?;
    let ts = phase_a.sample_period();
    let n = phase_a.len();
    let third = 2.0 * std::f64::consts::PI / 3.0;
    let mut d = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    for i in 0..n {
        let theta = omega_g * (i as f64) * ts + theta0;
        let (a, b, c) = (
            phase_a.samples()[i],
            phase_b.samples()[i],
            phase_c.samples()[i],
        );
        d.push(
            (2.0 / 3.0)
                * (a * theta.cos() + b * (theta - third).cos() + c * (theta + third).cos()),
        );
        q.push(
            -(2.0 / 3.0)
                * (a * theta.sin() + b * (theta - third).sin() + c * (theta + third).sin()),
        );
    }
    Ok((
        RealTimeSeries::new(d, ts, "d")?,
        RealTimeSeries::new(q, ts, "q")?,
    ))
}

/// Inverse of [`abc_to_dq`] for balanced (zero-sequence-free) signals.
pub fn dq_to_abc(
    d: &RealTimeSeries,
    q: &RealTimeSeries,
    omega_g: f64,
    theta0: f64,
) -> Result<(RealTimeSeries, RealTimeSeries, RealTimeSeries)> {
    check_pair_shape(d, q)?;
    let ts = d.sample_period();
    let n = d.len();
    let third = 2.0 * std::f64::consts::PI / 3.0;
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut c = Vec::with_capacity(n);
    for i in 0..n {
        let theta = omega_g * (i as f64) * ts + theta0;
        let (dv, qv) = (d.samples()[i], q.samples()[i]);
        a.push(dv * theta.cos() - qv * theta.sin());
        b.push(dv * (theta - third).cos() - qv * (theta - third).sin());
        c.push(dv * (theta + third).cos() - qv * (theta + third).sin());
    }
    Ok((
        RealTimeSeries::new(a, ts, "a")?,
        RealTimeSeries::new(b, ts, "b")?,
        RealTimeSeries::new(c, ts, "c")?,
    ))
}

/// Subtract the complex mean; the removed mean plus the output reproduces the
/// input exactly.
pub fn remove_mean(series: &DqTimeSeries) -> DqTimeSeries {
    let mean = series.mean();
    let samples = series.samples().iter().map(|x| x - mean).collect();
    DqTimeSeries {
        samples,
        sample_period: series.sample_period(),
    }
}

/// Pack a (d, q) channel pair into the complex signal d + j*q.
pub fn pack_complex(d: &RealTimeSeries, q: &RealTimeSeries) -> Result<DqTimeSeries> {
    check_pair_shape(d, q)?;
    let samples = d
        .samples()
        .iter()
        .zip(q.samples())
        .map(|(&re, &im)| Complex64::new(re, im))
        .collect();
    DqTimeSeries::new(samples, d.sample_period())
}

/// Split a complex dq signal back into its real channel pair.
pub fn unpack_complex(series: &DqTimeSeries) -> (RealTimeSeries, RealTimeSeries) {
    let d = series.samples().iter().map(|x| x.re).collect();
    let q = series.samples().iter().map(|x| x.im).collect();
    (
        RealTimeSeries::new(d, series.sample_period(), "d").expect("non-empty by construction"),
        RealTimeSeries::new(q, series.sample_period(), "q").expect("non-empty by construction"),
    )
}
