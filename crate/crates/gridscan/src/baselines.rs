//! Comparison methods: the empirical transfer-function estimate, the
//! two-experiment sequential-perturbation solve with optional Hamming
//! window, and discrete-time MIMO ARX fitting.
//!
//! These operate on the real two-channel signals, matching how the methods
//! are formulated in the literature; dq records are unpacked first.

use nalgebra::{DMatrix, Matrix2, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::impedance::ImpedanceFrfEstimate;
use crate::metrics::{sigma_max_2x2, sigma_min_2x2};
use crate::signal::{pack_complex, unpack_complex, DqTimeSeries, RealTimeSeries};
use crate::spectrum::{dft, window_weights, Spectrum, WindowKind};

/// Per-bin ratio estimate with validity flags for unexcited bins.
#[derive(Debug, Clone)]
pub struct EtfeEstimate {
    pub values: Vec<Complex64>,
    /// False where the input magnitude fell below the floor; the value is
    /// zero-filled there instead of an infinity.
    pub valid: Vec<bool>,
    pub sample_period: f64,
}

/// Empirical transfer-function estimate `V_k / I_k`; unbiased only for
/// periodic steady-state symmetric data.
pub fn etfe(v: &Spectrum, i: &Spectrum) -> Result<EtfeEstimate> {
    let n = v.len();
    if i.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "spectra lengths differ: {} vs {}",
            n,
            i.len()
        )));
    }
    let max_i = i.values().iter().map(|x| x.norm()).fold(0.0, f64::max);
    let floor = 1e-12 * max_i;
    let mut values = Vec::with_capacity(n);
    let mut valid = Vec::with_capacity(n);
    for k in 0..n {
        let ik = i.values()[k];
        if ik.norm() <= floor {
            values.push(Complex64::new(0.0, 0.0));
            valid.push(false);
        } else {
            values.push(v.values()[k] / ik);
            valid.push(true);
        }
    }
    Ok(EtfeEstimate {
        values,
        valid,
        sample_period: v.sample_period(),
    })
}

/// Sequential-perturbation result: per-bin 2x2 solves from two experiments.
#[derive(Debug, Clone)]
pub struct SeqPertEstimate {
    pub frf: ImpedanceFrfEstimate,
    /// False where the two experiments were not linearly independent at the
    /// bin (current matrix condition number above 1e12).
    pub valid: Vec<bool>,
}

const SEQPERT_COND_LIMIT: f64 = 1e12;

fn windowed_channel_spectrum(x: &RealTimeSeries, weights: &[f64]) -> Spectrum {
    let samples: Vec<Complex64> = x
        .samples()
        .iter()
        .zip(weights)
        .map(|(&v, &w)| Complex64::new(v * w, 0.0))
        .collect();
    dft(&DqTimeSeries::new(samples, x.sample_period()).expect("non-empty by construction"))
}

/// Treat two records as independent experiments: window, DFT the d and q
/// channels separately, and solve `[V1 V2] = Z_k [I1 I2]` per bin.
pub fn sequential_perturbation_estimate(
    exp1: (&DqTimeSeries, &DqTimeSeries),
    exp2: (&DqTimeSeries, &DqTimeSeries),
    window: WindowKind,
) -> Result<SeqPertEstimate> {
    let (v1, i1) = exp1;
    let (v2, i2) = exp2;
    let n = v1.len();
    for s in [i1, v2, i2] {
        if s.len() != n {
            return Err(Error::ShapeMismatch(
                "experiments must share length".into(),
            ));
        }
        if (s.sample_period() - v1.sample_period()).abs() > 1e-12 * v1.sample_period() {
            return Err(Error::ShapeMismatch(
                "experiments must share sample period".into(),
            ));
        }
    }
    if n % 2 != 0 {
        return Err(Error::Incompatible(
            "sequential perturbation needs an even record length".into(),
        ));
    }
    let ts = v1.sample_period();
    let weights = window_weights(window, n)?;

    let spectra = |series: &DqTimeSeries| -> (Spectrum, Spectrum) {
        let (d, q) = unpack_complex(series);
        (
            windowed_channel_spectrum(&d, &weights),
            windowed_channel_spectrum(&q, &weights),
        )
    };
    let (v1d, v1q) = spectra(v1);
    let (i1d, i1q) = spectra(i1);
    let (v2d, v2q) = spectra(v2);
    let (i2d, i2q) = spectra(i2);

    let half = n / 2;
    let mut frf = ImpedanceFrfEstimate {
        z_dd: Vec::with_capacity(half),
        z_dq: Vec::with_capacity(half),
        z_qd: Vec::with_capacity(half),
        z_qq: Vec::with_capacity(half),
        n,
        sample_period: ts,
    };
    let mut valid = Vec::with_capacity(half);
    let zero = Complex64::new(0.0, 0.0);
    for k in 0..half {
        let i_mat = Matrix2::new(
            i1d.values()[k],
            i2d.values()[k],
            i1q.values()[k],
            i2q.values()[k],
        );
        let smax = sigma_max_2x2(&i_mat);
        let smin = sigma_min_2x2(&i_mat);
        if smin <= 0.0 || smax / smin > SEQPERT_COND_LIMIT {
            frf.z_dd.push(zero);
            frf.z_dq.push(zero);
            frf.z_qd.push(zero);
            frf.z_qq.push(zero);
            valid.push(false);
            continue;
        }
        let v_mat = Matrix2::new(
            v1d.values()[k],
            v2d.values()[k],
            v1q.values()[k],
            v2q.values()[k],
        );
        let det = i_mat[(0, 0)] * i_mat[(1, 1)] - i_mat[(0, 1)] * i_mat[(1, 0)];
        let i_inv = Matrix2::new(
            i_mat[(1, 1)] / det,
            -i_mat[(0, 1)] / det,
            -i_mat[(1, 0)] / det,
            i_mat[(0, 0)] / det,
        );
        let z = v_mat * i_inv;
        frf.z_dd.push(z[(0, 0)]);
        frf.z_dq.push(z[(0, 1)]);
        frf.z_qd.push(z[(1, 0)]);
        frf.z_qq.push(z[(1, 1)]);
        valid.push(true);
    }
    Ok(SeqPertEstimate { frf, valid })
}

/// Split one record into two half-length experiments, the treatment of a
/// single measurement cycle as two sequential perturbations.
pub fn split_record(
    v: &DqTimeSeries,
    i: &DqTimeSeries,
) -> Result<((DqTimeSeries, DqTimeSeries), (DqTimeSeries, DqTimeSeries))> {
    let n = v.len();
    if i.len() != n {
        return Err(Error::ShapeMismatch("records must share length".into()));
    }
    if n < 4 || n % 2 != 0 {
        return Err(Error::Incompatible(
            "record must have even length >= 4 to split".into(),
        ));
    }
    let ts = v.sample_period();
    let half = n / 2;
    let cut = |s: &DqTimeSeries, lo: usize, hi: usize| {
        DqTimeSeries::new(s.samples()[lo..hi].to_vec(), ts).expect("non-empty slice")
    };
    Ok((
        (cut(v, 0, half), cut(i, 0, half)),
        (cut(v, half, n), cut(i, half, n)),
    ))
}

/// Discrete-time MIMO ARX model
/// `y[n] + sum A_m y[n-m] = sum B_m u[n-m] + e[n]`.
#[derive(Debug, Clone)]
pub struct ArxModel {
    pub na: usize,
    pub nb: usize,
    pub a_coeffs: Vec<Matrix2<f64>>,
    pub b_coeffs: Vec<Matrix2<f64>>,
    pub sample_period: f64,
}

/// Least-squares ARX fit over rows `max(na, nb)..N`, both outputs jointly.
pub fn arx_fit(
    u: (&RealTimeSeries, &RealTimeSeries),
    y: (&RealTimeSeries, &RealTimeSeries),
    na: usize,
    nb: usize,
) -> Result<ArxModel> {
    let (ud, uq) = u;
    let (yd, yq) = y;
    let n = ud.len();
    for s in [uq, yd, yq] {
        if s.len() != n {
            return Err(Error::ShapeMismatch("channels must share length".into()));
        }
    }
    if na == 0 && nb == 0 {
        return Err(Error::InvalidSpec("na and nb cannot both be zero".into()));
    }
    let n0 = na.max(nb);
    if n <= n0 + 10 {
        return Err(Error::InvalidSpec(format!(
            "record of {n} samples too short for orders ({na}, {nb})"
        )));
    }
    let rows = n - n0;
    let cols = 2 * na + 2 * nb;
    let mut phi = DMatrix::<f64>::zeros(rows, cols);
    let mut rhs = DMatrix::<f64>::zeros(rows, 2);
    for t in 0..rows {
        let idx = t + n0;
        let mut col = 0;
        for m in 1..=na {
            phi[(t, col)] = -yd.samples()[idx - m];
            phi[(t, col + 1)] = -yq.samples()[idx - m];
            col += 2;
        }
        for m in 1..=nb {
            phi[(t, col)] = ud.samples()[idx - m];
            phi[(t, col + 1)] = uq.samples()[idx - m];
            col += 2;
        }
        rhs[(t, 0)] = yd.samples()[idx];
        rhs[(t, 1)] = yq.samples()[idx];
    }

    let svd = phi.svd(true, true);
    let sigma_max = svd.singular_values.max();
    let cutoff = 1e-10 * sigma_max;
    let rank = svd.singular_values.iter().filter(|&&s| s > cutoff).count();
    let rhs_zero = rhs.iter().all(|&x| x == 0.0);
    if rank < cols && !rhs_zero {
        return Err(Error::Singular(format!(
            "rank-deficient ARX regression: rank {rank} of {cols} columns \
             (smallest retained singular value ratio {:.3e})",
            svd.singular_values.min() / sigma_max.max(f64::MIN_POSITIVE)
        )));
    }
    // theta = V sigma^+ U^T rhs, truncated
    let u_mat = svd.u.as_ref().expect("requested U");
    let vt = svd.v_t.as_ref().expect("requested V^T");
    let utb = u_mat.transpose() * &rhs;
    let mut scaled = DMatrix::<f64>::zeros(vt.nrows(), 2);
    for j in 0..svd.singular_values.len() {
        let s = svd.singular_values[j];
        if s > cutoff {
            for out in 0..2 {
                scaled[(j, out)] = utb[(j, out)] / s;
            }
        }
    }
    let theta = vt.transpose() * scaled;

    let mut a_coeffs = Vec::with_capacity(na);
    for m in 0..na {
        a_coeffs.push(Matrix2::new(
            theta[(2 * m, 0)],
            theta[(2 * m + 1, 0)],
            theta[(2 * m, 1)],
            theta[(2 * m + 1, 1)],
        ));
    }
    let mut b_coeffs = Vec::with_capacity(nb);
    for m in 0..nb {
        let base = 2 * na + 2 * m;
        b_coeffs.push(Matrix2::new(
            theta[(base, 0)],
            theta[(base + 1, 0)],
            theta[(base, 1)],
            theta[(base + 1, 1)],
        ));
    }
    Ok(ArxModel {
        na,
        nb,
        a_coeffs,
        b_coeffs,
        sample_period: ud.sample_period(),
    })
}

/// One-step-ahead prediction of the model on given data; rows before
/// `max(na, nb)` are skipped.
pub fn arx_predict(
    model: &ArxModel,
    u: (&RealTimeSeries, &RealTimeSeries),
    y: (&RealTimeSeries, &RealTimeSeries),
) -> Vec<Vector2<f64>> {
    let n0 = model.na.max(model.nb);
    let n = u.0.len();
    let mut out = Vec::with_capacity(n.saturating_sub(n0));
    for idx in n0..n {
        let mut pred = Vector2::zeros();
        for (m, a) in model.a_coeffs.iter().enumerate() {
            let lag = Vector2::new(y.0.samples()[idx - m - 1], y.1.samples()[idx - m - 1]);
            pred -= a * lag;
        }
        for (m, b) in model.b_coeffs.iter().enumerate() {
            let lag = Vector2::new(u.0.samples()[idx - m - 1], u.1.samples()[idx - m - 1]);
            pred += b * lag;
        }
        out.push(pred);
    }
    out
}

/// Frequency response `Z(e^{jwTs}) = A(z)^{-1} B(z)` of an ARX model; a bin
/// where A(z) is singular comes back as None.
pub fn arx_frf(model: &ArxModel, omegas: &[f64]) -> Result<Vec<Option<Matrix2<Complex64>>>> {
    let nyquist = std::f64::consts::PI / model.sample_period;
    let mut out = Vec::with_capacity(omegas.len());
    for &w in omegas {
        if w.abs() > nyquist * (1.0 + 1e-12) {
            return Err(Error::Incompatible(format!(
                "frequency {w} rad/s above Nyquist {nyquist}"
            )));
        }
        let mut a = Matrix2::<Complex64>::identity();
        let mut b = Matrix2::<Complex64>::zeros();
        for (m, am) in model.a_coeffs.iter().enumerate() {
            let zm = zpow(-(m as i32 + 1), w, model.sample_period);
            for i in 0..2 {
                for j in 0..2 {
                    a[(i, j)] += Complex64::new(am[(i, j)], 0.0) * zm;
                }
            }
        }
        for (m, bm) in model.b_coeffs.iter().enumerate() {
            let zm = zpow(-(m as i32 + 1), w, model.sample_period);
            for i in 0..2 {
                for j in 0..2 {
                    b[(i, j)] += Complex64::new(bm[(i, j)], 0.0) * zm;
                }
            }
        }
        let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
        if det.norm() < 1e-300 {
            out.push(None);
            continue;
        }
        let a_inv = Matrix2::new(
            a[(1, 1)] / det,
            -a[(0, 1)] / det,
            -a[(1, 0)] / det,
            a[(0, 0)] / det,
        );
        out.push(Some(a_inv * b));
    }
    Ok(out)
}

fn zpow(p: i32, omega: f64, ts: f64) -> Complex64 {
    let ang = omega * ts * p as f64;
    Complex64::new(ang.cos(), ang.sin())
}

/// Simulate an ARX model driven by an input pair (zero initial lags);
/// test/data-generation helper.
pub fn arx_simulate(
    model: &ArxModel,
    u: (&RealTimeSeries, &RealTimeSeries),
) -> Result<(RealTimeSeries, RealTimeSeries)> {
    let n = u.0.len();
    if u.1.len() != n {
        return Err(Error::ShapeMismatch("channels must share length".into()));
    }
    let mut yd = vec![0.0; n];
    let mut yq = vec![0.0; n];
    for idx in 0..n {
        let mut val = Vector2::zeros();
        for (m, a) in model.a_coeffs.iter().enumerate() {
            if idx > m {
                let lag = Vector2::new(yd[idx - m - 1], yq[idx - m - 1]);
                val -= a * lag;
            }
        }
        for (m, b) in model.b_coeffs.iter().enumerate() {
            if idx > m {
                let lag = Vector2::new(u.0.samples()[idx - m - 1], u.1.samples()[idx - m - 1]);
                val += b * lag;
            }
        }
        yd[idx] = val[0];
        yq[idx] = val[1];
    }
    Ok((
        RealTimeSeries::new(yd, u.0.sample_period(), "yd")?,
        RealTimeSeries::new(yq, u.0.sample_period(), "yq")?,
    ))
}

/// Repack two real channels; helper for callers moving between the complex
/// and vector forms.
pub fn repack(d: &RealTimeSeries, q: &RealTimeSeries) -> Result<DqTimeSeries> {
    pack_complex(d, q)
}
