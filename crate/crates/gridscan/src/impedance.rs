//! Algebraic maps between the complex transfer-function pair (G+, G-) and
//! the 2x2 real-coefficient impedance FRF, in both directions.
//!
//! For a 2x2 impedance matrix at one frequency,
//!   G+ = (Z_dd + Z_qq + j(Z_qd - Z_dq)) / 2
//!   G- = (Z_dd - Z_qq + j(Z_dq + Z_qd)) / 2
//! and the inverse direction pairs each positive-frequency bin k with its
//! negative-frequency partner (N - k) mod N.

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lpm::ComplexTfEstimate;

/// Four-channel impedance FRF over the positive half grid k in 0..N/2.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpedanceFrfEstimate {
    pub z_dd: Vec<Complex64>,
    pub z_dq: Vec<Complex64>,
    pub z_qd: Vec<Complex64>,
    pub z_qq: Vec<Complex64>,
    /// Full record length N (the estimate arrays have length N/2).
    pub n: usize,
    pub sample_period: f64,
}

impl ImpedanceFrfEstimate {
    pub fn half_len(&self) -> usize {
        self.n / 2
    }

    /// Frequency of bin k in Hz.
    pub fn f_hz(&self, k: usize) -> f64 {
        k as f64 / (self.n as f64 * self.sample_period)
    }

    /// The 2x2 matrix at bin k.
    pub fn matrix_at(&self, k: usize) -> Matrix2<Complex64> {
        Matrix2::new(self.z_dd[k], self.z_dq[k], self.z_qd[k], self.z_qq[k])
    }
}

/// Map a 2x2 impedance matrix at one frequency to the complex pair.
pub fn impedance_to_complex_pair(z: &Matrix2<Complex64>) -> (Complex64, Complex64) {
    let j = Complex64::new(0.0, 1.0);
    let gplus = 0.5 * (z[(0, 0)] + z[(1, 1)] + j * (z[(1, 0)] - z[(0, 1)]));
    let gminus = 0.5 * (z[(0, 0)] - z[(1, 1)] + j * (z[(0, 1)] + z[(1, 0)]));
    (gplus, gminus)
}

fn check_even(n: usize) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::Incompatible(format!(
            "impedance extraction needs an even record length, got N = {n}"
        )));
    }
    Ok(())
}

/// Reconstruct the four real-TF channels from length-N estimates of G+ and
/// G-, reading the negative-frequency values from bin (N - k) mod N.
pub fn complex_pair_to_impedance(est: &ComplexTfEstimate) -> Result<ImpedanceFrfEstimate> {
    pair_arrays_to_impedance(&est.gplus, &est.gminus, est.sample_period)
}

/// Same as [`complex_pair_to_impedance`] but on raw arrays.
pub fn pair_arrays_to_impedance(
    gplus: &[Complex64],
    gminus: &[Complex64],
    sample_period: f64,
) -> Result<ImpedanceFrfEstimate> {
    let n = gplus.len();
    if gminus.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "gplus and gminus lengths differ: {} vs {}",
            n,
            gminus.len()
        )));
    }
    check_even(n)?;
    let half = n / 2;
    let j = Complex64::new(0.0, 1.0);
    let mut out = ImpedanceFrfEstimate {
        z_dd: Vec::with_capacity(half),
        z_dq: Vec::with_capacity(half),
        z_qd: Vec::with_capacity(half),
        z_qq: Vec::with_capacity(half),
        n,
        sample_period,
    };
    for k in 0..half {
        let rev = (n - k) % n;
        let gp = gplus[k];
        let gp_bar = gplus[rev].conj();
        let gm = gminus[k];
        let gm_bar = gminus[rev].conj();
        out.z_dd.push(0.5 * (gp + gp_bar + gm + gm_bar));
        out.z_qq.push(0.5 * (gp + gp_bar - gm - gm_bar));
        out.z_dq.push(0.5 * j * (gp - gp_bar - gm + gm_bar));
        out.z_qd.push(-0.5 * j * (gp - gp_bar + gm - gm_bar));
    }
    Ok(out)
}

/// Symmetric-grid special case: a single complex TF estimate of length N
/// yields z_qq = z_dd and z_dq = -z_qd by construction.
pub fn symmetric_complex_to_impedance(
    g: &[Complex64],
    sample_period: f64,
) -> Result<ImpedanceFrfEstimate> {
    let n = g.len();
    check_even(n)?;
    let half = n / 2;
    let j = Complex64::new(0.0, 1.0);
    let mut out = ImpedanceFrfEstimate {
        z_dd: Vec::with_capacity(half),
        z_dq: Vec::with_capacity(half),
        z_qd: Vec::with_capacity(half),
        z_qq: Vec::with_capacity(half),
        n,
        sample_period,
    };
    for k in 0..half {
        let rev = (n - k) % n;
        let gk = g[k];
        let g_bar = g[rev].conj();
        let z_dd = 0.5 * (gk + g_bar);
        let z_qd = -0.5 * j * (gk - g_bar);
        out.z_dd.push(z_dd);
        out.z_qq.push(z_dd);
        out.z_qd.push(z_qd);
        out.z_dq.push(-z_qd);
    }
    Ok(out)
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
    fn symmetric_matrix_maps_to_zero_gminus() {
        let (r, x) = (0.3, 1.7);
        let z = Matrix2::new(c(r, 0.0), c(-x, 0.0), c(x, 0.0), c(r, 0.0));
        let (gp, gm) = impedance_to_complex_pair(&z);
        assert!((gp - c(r, x)).norm() < 1e-15);
        assert!(gm.norm() < 1e-15);
    }

    #[test]
    fn unit_dd_matrix() {
        let z = Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let (gp, gm) = impedance_to_complex_pair(&z);
        assert!((gp - c(0.5, 0.0)).norm() < 1e-15);
        assert!((gm - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn constant_real_gplus_reconstruction() {
        let n = 16;
        let gp = vec![c(0.25, 0.0); n];
        let gm = vec![c(0.0, 0.0); n];
        let frf = pair_arrays_to_impedance(&gp, &gm, 1e-4).unwrap();
        for k in 0..n / 2 {
            assert!((frf.z_dd[k] - c(0.25, 0.0)).norm() < 1e-15);
            assert!((frf.z_qq[k] - c(0.25, 0.0)).norm() < 1e-15);
            assert!(frf.z_dq[k].norm() < 1e-15);
            assert!(frf.z_qd[k].norm() < 1e-15);
        }
    }

    #[test]
    fn zero_gminus_means_symmetric_output() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 32;
        let gp: Vec<Complex64> = (0..n)
            .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let gm = vec![c(0.0, 0.0); n];
        let frf = pair_arrays_to_impedance(&gp, &gm, 1e-4).unwrap();
        for k in 0..n / 2 {
            assert!((frf.z_dd[k] - frf.z_qq[k]).norm() < 1e-14);
            assert!((frf.z_dq[k] + frf.z_qd[k]).norm() < 1e-14);
        }
        // and coincides with the dedicated symmetric-case map
        let sym = symmetric_complex_to_impedance(&gp, 1e-4).unwrap();
        for k in 0..n / 2 {
            assert!((frf.z_dd[k] - sym.z_dd[k]).norm() < 1e-14);
            assert!((frf.z_qd[k] - sym.z_qd[k]).norm() < 1e-14);
        }
    }

    #[test]
    fn symmetric_map_pure_reactance() {
        let n = 8;
        let x = 0.4;
        let g = vec![c(0.0, x); n];
        let frf = symmetric_complex_to_impedance(&g, 1e-4).unwrap();
        for k in 0..n / 2 {
            assert!(frf.z_dd[k].norm() < 1e-15);
            assert!((frf.z_qd[k] - c(x, 0.0)).norm() < 1e-15);
        }
        let g = vec![c(0.9, 0.0); n];
        let frf = symmetric_complex_to_impedance(&g, 1e-4).unwrap();
        for k in 0..n / 2 {
            assert!((frf.z_dd[k] - c(0.9, 0.0)).norm() < 1e-15);
            assert!(frf.z_qd[k].norm() < 1e-15);
        }
    }

    #[test]
    fn odd_length_rejected() {
        let g = vec![c(1.0, 0.0); 7];
        assert!(symmetric_complex_to_impedance(&g, 1e-4).is_err());
        assert!(pair_arrays_to_impedance(&g, &g, 1e-4).is_err());
    }

    /// Round trip: sample a random real-rational 2x2 truth at paired
    /// frequencies +/- omega_k through the forward map, reconstruct, and
    /// compare against the truth samples.
    #[test]
    fn round_trip_through_random_rational_truth() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 64;
        // Z(s) = K0 + K1 * s/(s + p) entrywise: real-rational, so
        // Z(-j w) = conj(Z(j w)) holds exactly.
        let k0 = Matrix2::new(
            rng.random::<f64>(),
            rng.random::<f64>(),
            rng.random::<f64>(),
            rng.random::<f64>(),
        );
        let k1 = Matrix2::new(
            rng.random::<f64>(),
            rng.random::<f64>(),
            rng.random::<f64>(),
            rng.random::<f64>(),
        );
        let p = 3.0;
        let z_at = |w: f64| -> Matrix2<Complex64> {
            let s = c(0.0, w);
            let h = s / (s + p);
            Matrix2::new(
                c(k0[(0, 0)], 0.0) + h * k1[(0, 0)],
                c(k0[(0, 1)], 0.0) + h * k1[(0, 1)],
                c(k0[(1, 0)], 0.0) + h * k1[(1, 0)],
                c(k0[(1, 1)], 0.0) + h * k1[(1, 1)],
            )
        };
        let ts = 0.01;
        let mut gp = vec![c(0.0, 0.0); n];
        let mut gm = vec![c(0.0, 0.0); n];
        for k in 0..n {
            let w = crate::spectrum::signed_omega(k, n, ts);
            let (a, b) = impedance_to_complex_pair(&z_at(w));
            gp[k] = a;
            gm[k] = b;
        }
        let frf = pair_arrays_to_impedance(&gp, &gm, ts).unwrap();
        for k in 0..n / 2 {
            let w = crate::spectrum::signed_omega(k, n, ts);
            let truth = z_at(w);
            assert!((frf.z_dd[k] - truth[(0, 0)]).norm() < 1e-12);
            assert!((frf.z_dq[k] - truth[(0, 1)]).norm() < 1e-12);
            assert!((frf.z_qd[k] - truth[(1, 0)]).norm() < 1e-12);
            assert!((frf.z_qq[k] - truth[(1, 1)]).norm() < 1e-12);
        }
        // DC bin self-consistency: zero imaginary part at k = 0
        assert!(frf.z_dd[0].im.abs() < 1e-12);
        assert!(frf.z_qq[0].im.abs() < 1e-12);
    }

    /// The forward map is linear and invertible on arbitrary complex 2x2
    /// matrices: gp + gm = Z_dd + j*Z_qd and gp - gm = Z_qq - j*Z_dq, which
    /// pins all four entries when the +/- frequency pair is kept consistent.
    #[test]
    fn involution_on_arbitrary_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let j = c(0.0, 1.0);
        for _ in 0..1000 {
            let z = Matrix2::new(
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
            );
            let (gp, gm) = impedance_to_complex_pair(&z);
            assert!((gp + gm - (z[(0, 0)] + j * z[(1, 0)])).norm() < 1e-13);
            assert!((gp - gm - (z[(1, 1)] - j * z[(0, 1)])).norm() < 1e-13);
        }
    }
}
