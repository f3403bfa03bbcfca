//! Accuracy metrics: the squared-norm fit percentage, the relative H-infinity
//! error over a band, and the closed-form largest singular value of a 2x2
//! complex matrix.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::impedance::ImpedanceFrfEstimate;

/// Frequency band in Hz; mapped to bins via k = round(f * N * Ts).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandSelection {
    pub f_min_hz: f64,
    pub f_max_hz: f64,
}

impl BandSelection {
    pub fn new(f_min_hz: f64, f_max_hz: f64) -> Self {
        Self { f_min_hz, f_max_hz }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.f_min_hz >= 0.0 && self.f_min_hz < self.f_max_hz) {
            return Err(Error::InvalidSpec(format!(
                "band requires 0 <= f_min < f_max, got [{}, {}]",
                self.f_min_hz, self.f_max_hz
            )));
        }
        Ok(())
    }
}

/// Fit percentage: `(1 - ||est - truth||^2 / ||truth - mean(truth)||^2) * 100`
/// with squared Euclidean norms over complex vectors and a complex mean.
/// 100 is a perfect estimate; values can be arbitrarily negative.
pub fn fit_percent(estimate: &[Complex64], truth: &[Complex64]) -> Result<f64> {
    if estimate.len() != truth.len() {
        return Err(Error::ShapeMismatch(format!(
            "fit inputs differ in length: {} vs {}",
            estimate.len(),
            truth.len()
        )));
    }
    if truth.len() < 2 {
        return Err(Error::InvalidSpec(
            "fit needs at least two frequency samples".into(),
        ));
    }
    let mean = truth.iter().sum::<Complex64>() / truth.len() as f64;
    let dev: f64 = truth.iter().map(|z| (z - mean).norm_sqr()).sum();
    if dev == 0.0 {
        return Err(Error::InvalidSpec(
            "fit undefined for a constant truth vector".into(),
        ));
    }
    let err: f64 = estimate
        .iter()
        .zip(truth)
        .map(|(e, z)| (e - z).norm_sqr())
        .sum();
    Ok((1.0 - err / dev) * 100.0)
}

/// Largest singular value of a 2x2 complex matrix via the closed-form
/// eigenvalues of M^H M.
pub fn sigma_max_2x2(m: &Matrix2<Complex64>) -> f64 {
    let t: f64 = m.iter().map(|x| x.norm_sqr()).sum();
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let d = det.norm_sqr();
    let disc = (t * t - 4.0 * d).max(0.0).sqrt();
    (0.5 * (t + disc)).sqrt()
}

/// Smallest singular value, same closed form.
pub fn sigma_min_2x2(m: &Matrix2<Complex64>) -> f64 {
    let t: f64 = m.iter().map(|x| x.norm_sqr()).sum();
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let d = det.norm_sqr();
    let disc = (t * t - 4.0 * d).max(0.0).sqrt();
    (0.5 * (t - disc)).max(0.0).sqrt()
}

/// Relative H-infinity error over the supplied bins:
/// `max_k sigma_max(est_k - truth_k) / max_k sigma_max(truth_k)`.
pub fn relative_hinf_error(
    estimates: &[Matrix2<Complex64>],
    truths: &[Matrix2<Complex64>],
) -> Result<f64> {
    if estimates.len() != truths.len() {
        return Err(Error::ShapeMismatch(format!(
            "hinf inputs differ in length: {} vs {}",
            estimates.len(),
            truths.len()
        )));
    }
    if truths.is_empty() {
        return Err(Error::InvalidSpec("hinf needs at least one bin".into()));
    }
    let num = estimates
        .iter()
        .zip(truths)
        .map(|(e, z)| sigma_max_2x2(&(e - z)))
        .fold(0.0, f64::max);
    let den = truths.iter().map(sigma_max_2x2).fold(0.0, f64::max);
    if den == 0.0 {
        return Err(Error::InvalidSpec(
            "hinf undefined for an all-zero truth".into(),
        ));
    }
    Ok(num / den)
}

/// Contiguous bin range covered by a band on the estimate's own grid,
/// inclusive of both endpoints after rounding.
pub fn select_band(
    frf: &ImpedanceFrfEstimate,
    band: &BandSelection,
) -> Result<std::ops::RangeInclusive<usize>> {
    band.validate()?;
    let nyquist = 0.5 / frf.sample_period;
    if band.f_max_hz > nyquist * (1.0 + 1e-12) {
        return Err(Error::InvalidSpec(format!(
            "band upper edge {} Hz exceeds Nyquist {} Hz",
            band.f_max_hz, nyquist
        )));
    }
    let scale = frf.n as f64 * frf.sample_period;
    let k_min = (band.f_min_hz * scale).round_ties_even() as usize;
    let k_max =
        ((band.f_max_hz * scale).round_ties_even() as usize).min(frf.half_len().saturating_sub(1));
    if k_min > k_max {
        return Err(Error::InvalidSpec(format!(
            "band [{}, {}] Hz selects no bins",
            band.f_min_hz, band.f_max_hz
        )));
    }
    Ok(k_min..=k_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn fit_examples() {
        let truth = vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        assert_eq!(fit_percent(&truth, &truth).unwrap(), 100.0);

        let mean_est = vec![c(2.0, 0.0); 3];
        assert!((fit_percent(&mean_est, &truth).unwrap() - 0.0).abs() < 1e-12);

        // ||e||^2 = 1, ||dev||^2 = 2 -> 50.0
        let est = vec![c(1.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)];
        assert!((fit_percent(&est, &truth).unwrap() - 50.0).abs() < 1e-12);

        let constant = vec![c(1.0, 0.0); 3];
        assert!(fit_percent(&constant, &constant).is_err());
    }

    #[test]
    fn fit_reordering_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let truth: Vec<Complex64> = (0..10)
            .map(|_| c(rng.random::<f64>(), rng.random::<f64>()))
            .collect();
        let est: Vec<Complex64> = truth
            .iter()
            .map(|z| z + c(0.01 * rng.random::<f64>(), 0.0))
            .collect();
        let f1 = fit_percent(&est, &truth).unwrap();
        let mut idx: Vec<usize> = (0..10).collect();
        idx.reverse();
        let est2: Vec<Complex64> = idx.iter().map(|&i| est[i]).collect();
        let truth2: Vec<Complex64> = idx.iter().map(|&i| truth[i]).collect();
        let f2 = fit_percent(&est2, &truth2).unwrap();
        assert!((f1 - f2).abs() < 1e-12);
    }

    #[test]
    fn sigma_examples() {
        let eye = Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!((sigma_max_2x2(&eye) - 1.0).abs() < 1e-14);

        let nil = Matrix2::new(c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert!((sigma_max_2x2(&nil) - 2.0).abs() < 1e-14);
        assert!(sigma_min_2x2(&nil).abs() < 1e-14);
    }

    #[test]
    fn sigma_matches_full_svd() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let m = Matrix2::new(
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
            );
            let svd = nalgebra::DMatrix::from_fn(2, 2, |i, j| m[(i, j)]).svd(false, false);
            let reference = svd.singular_values.max();
            assert!((sigma_max_2x2(&m) - reference).abs() < 1e-10);
        }
    }

    #[test]
    fn sigma_is_operator_norm() {
        // randomized maximization of ||Mx|| over the unit sphere
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let m = Matrix2::new(c(0.3, 0.1), c(-0.7, 0.2), c(0.5, -0.9), c(0.05, 0.4));
        let sigma = sigma_max_2x2(&m);
        let mut best: f64 = 0.0;
        for _ in 0..200_000 {
            let x = nalgebra::Vector2::new(
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
            );
            let nx = (x[0].norm_sqr() + x[1].norm_sqr()).sqrt();
            if nx == 0.0 {
                continue;
            }
            let y = m * x;
            best = best.max((y[0].norm_sqr() + y[1].norm_sqr()).sqrt() / nx);
        }
        assert!(best <= sigma + 1e-12);
        assert!(sigma - best < 1e-6 * sigma.max(1.0));
    }

    #[test]
    fn hinf_examples() {
        let z = Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let truths = vec![z];
        assert_eq!(relative_hinf_error(&truths, &truths).unwrap(), 0.0);

        let doubled = vec![z * c(2.0, 0.0)];
        assert!((relative_hinf_error(&doubled, &truths).unwrap() - 1.0).abs() < 1e-14);

        let est = vec![Matrix2::new(
            c(0.5, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        )];
        assert!((relative_hinf_error(&est, &truths).unwrap() - 0.5).abs() < 1e-14);

        let zero = vec![Matrix2::zeros()];
        assert!(relative_hinf_error(&zero, &zero).is_err());
    }

    #[test]
    fn hinf_scale_covariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let truths: Vec<Matrix2<Complex64>> = (0..5)
            .map(|_| {
                Matrix2::new(
                    c(rng.random::<f64>(), 0.0),
                    c(rng.random::<f64>(), 0.0),
                    c(rng.random::<f64>(), 0.0),
                    c(rng.random::<f64>(), 0.0),
                )
            })
            .collect();
        let errs: Vec<Matrix2<Complex64>> = (0..5)
            .map(|_| {
                Matrix2::new(
                    c(rng.random::<f64>() - 0.5, 0.0),
                    c(rng.random::<f64>() - 0.5, 0.0),
                    c(rng.random::<f64>() - 0.5, 0.0),
                    c(rng.random::<f64>() - 0.5, 0.0),
                )
            })
            .collect();
        let est1: Vec<_> = truths.iter().zip(&errs).map(|(z, e)| z + e).collect();
        let alpha = 3.5;
        let est2: Vec<_> = truths
            .iter()
            .zip(&errs)
            .map(|(z, e)| z + e * c(alpha, 0.0))
            .collect();
        let h1 = relative_hinf_error(&est1, &truths).unwrap();
        let h2 = relative_hinf_error(&est2, &truths).unwrap();
        assert!((h2 - alpha * h1).abs() < 1e-12);
    }

    #[test]
    fn band_selection_examples() {
        let frf = ImpedanceFrfEstimate {
            z_dd: vec![c(0.0, 0.0); 5000],
            z_dq: vec![c(0.0, 0.0); 5000],
            z_qd: vec![c(0.0, 0.0); 5000],
            z_qq: vec![c(0.0, 0.0); 5000],
            n: 10_000,
            sample_period: 1e-4,
        };
        let r = select_band(&frf, &BandSelection::new(0.0, 2000.0)).unwrap();
        assert_eq!(r, 0..=2000);
        let r = select_band(&frf, &BandSelection::new(0.0, 4000.0)).unwrap();
        assert_eq!(r, 0..=4000);
        let r = select_band(&frf, &BandSelection::new(0.0, 0.5)).unwrap();
        assert_eq!(r, 0..=0);
        assert!(select_band(&frf, &BandSelection::new(0.0, 6000.0)).is_err());
        assert!(select_band(&frf, &BandSelection::new(3.0, 2.0)).is_err());
    }
}
