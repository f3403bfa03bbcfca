//! The local parametric estimator: for every DFT bin, fit a low-order
//! rational model of the complex transfer pair and the transient over a
//! short window of neighboring spectral lines, by least squares.
//!
//! The local polynomials are in the integer bin offset r (the j and
//! grid-spacing factors are absorbed into the complex coefficients), all
//! four share the degree R, the denominator is normalized to a_0 = 1, and
//! only the r = 0 numerator values are exported as the frequency-response
//! estimates.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

/// Estimator configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LpmConfig {
    /// Degree R of all local polynomials.
    pub order_r: usize,
    /// Radius of the local window in spectral lines.
    pub half_window_l: usize,
    /// Drop the conjugate-input columns (known dq-symmetric grid).
    pub assume_symmetric: bool,
    /// Drop the transient columns (periodic steady-state record).
    pub assume_periodic: bool,
    /// Relative singular-value cutoff of the pseudoinverse.
    pub rank_rel_tol: f64,
}

impl LpmConfig {
    /// Config with the default window radius l = 4R + 2.
    pub fn new(order_r: usize) -> Self {
        Self::with_window(order_r, 4 * order_r + 2)
    }

    pub fn with_window(order_r: usize, half_window_l: usize) -> Self {
        Self {
            order_r,
            half_window_l,
            assume_symmetric: false,
            assume_periodic: false,
            rank_rel_tol: 1e-10,
        }
    }

    /// Number of unknown complex parameters: 4R+3 with no flags, one block
    /// of R+1 removed per flag.
    pub fn unknown_count(&self) -> usize {
        let r = self.order_r;
        let mut count = r + (r + 1); // a_1..a_R and b+_0..b+_R
        if !self.assume_symmetric {
            count += r + 1;
        }
        if !self.assume_periodic {
            count += r + 1;
        }
        count
    }

    /// The window must carry at least as many lines as unknowns.
    pub fn validate(&self) -> Result<()> {
        let rows = 2 * self.half_window_l + 1;
        let cols = self.unknown_count();
        if rows < cols {
            return Err(Error::UnderDetermined(format!(
                "2l+1 = {rows} lines cannot determine {cols} unknowns (need l >= {})",
                cols / 2
            )));
        }
        if !(self.rank_rel_tol > 0.0 && self.rank_rel_tol < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "rank_rel_tol must be in (0, 1), got {}",
                self.rank_rel_tol
            )));
        }
        Ok(())
    }

    fn gplus_index(&self) -> usize {
        self.order_r // after a_1..a_R
    }

    fn gminus_index(&self) -> Option<usize> {
        if self.assume_symmetric {
            None
        } else {
            Some(2 * self.order_r + 1)
        }
    }

    fn transient_index(&self) -> Option<usize> {
        if self.assume_periodic {
            None
        } else {
            let mut idx = 2 * self.order_r + 1;
            if !self.assume_symmetric {
                idx += self.order_r + 1;
            }
            Some(idx)
        }
    }
}

/// Per-bin solve result.
#[derive(Debug, Clone)]
pub struct LocalSolution {
    /// Coefficients in the layout `[a_1..a_R | b+_0..b+_R | b-_0..b-_R |
    /// c_0..c_R]` with flagged blocks omitted; a_0 = 1 is implicit.
    pub theta: DVector<Complex64>,
    pub residual_norm: f64,
    /// sigma_max / sigma_min over the retained singular values.
    pub condition_number: f64,
    /// Number of singular values kept by the cutoff.
    pub effective_rank: usize,
}

/// Non-parametric estimate of the complex pair over all N bins, with
/// per-bin diagnostics.
#[derive(Debug, Clone)]
pub struct ComplexTfEstimate {
    pub gplus: Vec<Complex64>,
    /// All-zero when the symmetric flag removed the conjugate branch.
    pub gminus: Vec<Complex64>,
    /// All-zero when the periodic flag removed the transient branch.
    pub transient: Vec<Complex64>,
    pub n: usize,
    pub sample_period: f64,
    pub config: LpmConfig,
    pub residual_norms: Vec<f64>,
    pub condition_numbers: Vec<f64>,
    pub effective_ranks: Vec<usize>,
    /// Bins whose local system was rank-deficient at the cutoff.
    pub flagged: Vec<bool>,
}

/// Bins covered by the window of radius l centered on k, circular at both
/// spectrum edges.
pub fn local_window_indices(k: usize, l: usize, n: usize) -> Result<Vec<usize>> {
    if 2 * l + 1 > n {
        return Err(Error::InvalidSpec(format!(
            "window of 2l+1 = {} lines exceeds the {n}-point spectrum",
            2 * l + 1
        )));
    }
    if k >= n {
        return Err(Error::InvalidSpec(format!("bin {k} out of range 0..{n}")));
    }
    let ni = n as i64;
    Ok((-(l as i64)..=l as i64)
        .map(|r| ((k as i64 + r).rem_euclid(ni)) as usize)
        .collect())
}

/// Assemble the local regression `Y_k ~ Phi_k theta` for center bin k.
///
/// Row r concatenates `V_{k+r} (r..r^R)`, `I_{k+r} (1..r^R)`,
/// `conj(I_{(N-k-r) mod N}) (1..r^R)` and `(1..r^R)`, with the flagged
/// blocks omitted. The denominator terms sit on the regressor side, so the
/// stored a-coefficients are the negatives of the transfer-function
/// convention; only the b_0 values are exported, which the sign does not
/// touch.
pub fn build_local_system(
    v: &Spectrum,
    i: &Spectrum,
    k: usize,
    config: &LpmConfig,
) -> Result<(DVector<Complex64>, DMatrix<Complex64>)> {
    config.validate()?;
    let n = v.len();
    if i.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "spectra lengths differ: {} vs {}",
            n,
            i.len()
        )));
    }
    let l = config.half_window_l;
    let r_deg = config.order_r;
    let idxs = local_window_indices(k, l, n)?;
    let rows = 2 * l + 1;
    let cols = config.unknown_count();
    let mut phi = DMatrix::<Complex64>::zeros(rows, cols);
    let mut y = DVector::<Complex64>::zeros(rows);

    for (row, &bin) in idxs.iter().enumerate() {
        let r = row as f64 - l as f64;
        let v_bin = v.values()[bin];
        let i_bin = i.values()[bin];
        let i_rev = i.values()[(n - bin) % n].conj();
        y[row] = v_bin;

        let mut col = 0;
        // A block: r^1..r^R times V
        let mut p = 1.0;
        for _ in 0..r_deg {
            p *= r;
            phi[(row, col)] = v_bin * p;
            col += 1;
        }
        // B+ block: r^0..r^R times I
        let mut p = 1.0;
        for m in 0..=r_deg {
            phi[(row, col)] = i_bin * p;
            col += 1;
            if m < r_deg {
                p *= r;
            }
        }
        // B- block: conjugate-reversed input
        if !config.assume_symmetric {
            let mut p = 1.0;
            for m in 0..=r_deg {
                phi[(row, col)] = i_rev * p;
                col += 1;
                if m < r_deg {
                    p *= r;
                }
            }
        }
        // C block: transient polynomial
        if !config.assume_periodic {
            let mut p = 1.0;
            for m in 0..=r_deg {
                phi[(row, col)] = Complex64::new(p, 0.0);
                col += 1;
                if m < r_deg {
                    p *= r;
                }
            }
        }
        debug_assert_eq!(col, cols);
    }
    Ok((y, phi))
}

/// Truncated-SVD pseudoinverse solve with unit-norm column scaling.
///
/// Columns are scaled to unit Euclidean norm, singular values below
/// `rank_rel_tol * sigma_max` are truncated, and the solution is scaled
/// back. Dead (all-zero) columns are handled by the truncation and show up
/// as `effective_rank < columns`. The factorization runs on the scaled
/// normal equations, whose Hermitian eigenvalues are the squared singular
/// values.
pub fn solve_scaled_pinv(
    phi: &DMatrix<Complex64>,
    y: &DVector<Complex64>,
    rank_rel_tol: f64,
) -> Result<LocalSolution> {
    let rows = phi.nrows();
    let cols = phi.ncols();
    if rows < cols {
        return Err(Error::UnderDetermined(format!(
            "{rows} rows cannot determine {cols} columns"
        )));
    }
    if y.len() != rows {
        return Err(Error::ShapeMismatch(format!(
            "rhs length {} does not match {rows} rows",
            y.len()
        )));
    }

    let scales: Vec<f64> = (0..cols)
        .map(|j| {
            let norm = phi.column(j).norm();
            if norm > 0.0 {
                norm
            } else {
                1.0
            }
        })
        .collect();
    let mut phi_s = phi.clone();
    for (j, &s) in scales.iter().enumerate() {
        let inv = Complex64::new(1.0 / s, 0.0);
        for e in phi_s.column_mut(j).iter_mut() {
            *e *= inv;
        }
    }

    // Hermitian Gram matrix; eigenvalues are sigma^2 of the scaled matrix
    let gram = phi_s.adjoint() * &phi_s;
    let rhs = phi_s.adjoint() * y;
    let eig = nalgebra::SymmetricEigen::new(gram);
    let sigmas: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    let sigma_max = sigmas.iter().copied().fold(0.0, f64::max);

    let mut effective_rank = 0;
    let mut sigma_min_kept = f64::INFINITY;
    if sigma_max > 0.0 {
        let cutoff = rank_rel_tol * sigma_max;
        for &s in &sigmas {
            if s >= cutoff {
                effective_rank += 1;
                sigma_min_kept = sigma_min_kept.min(s);
            }
        }
    }
    let condition_number = if effective_rank == 0 {
        f64::INFINITY
    } else {
        sigma_max / sigma_min_kept
    };

    // full-rank solves go through QR (error ~ cond, not cond^2); truncated
    // pseudoinverse only where the cutoff dropped directions
    let mut theta_s = DVector::<Complex64>::zeros(cols);
    let mut solved = false;
    if effective_rank == cols {
        let qr = phi_s.clone().qr();
        let qtb = qr.q().adjoint() * y;
        if let Some(sol) = qr.r().solve_upper_triangular(&qtb) {
            theta_s = sol;
            solved = true;
        }
    }
    if !solved && sigma_max > 0.0 {
        let cutoff = rank_rel_tol * sigma_max;
        for j in 0..cols {
            let s = sigmas[j];
            if s < cutoff {
                continue;
            }
            let vj = eig.eigenvectors.column(j);
            let proj: Complex64 = vj.iter().zip(rhs.iter()).map(|(a, b)| a.conj() * b).sum();
            let coef = proj / (s * s);
            for (t, a) in theta_s.iter_mut().zip(vj.iter()) {
                *t += a * coef;
            }
        }
    }

    let theta = DVector::<Complex64>::from_fn(cols, |j, _| theta_s[j] / scales[j]);
    let residual_norm = (y - phi * &theta).norm();
    Ok(LocalSolution {
        theta,
        residual_norm,
        condition_number,
        effective_rank,
    })
}

/// Run the per-bin local fits over the whole spectrum. The least-squares
/// problems are independent over k; the sweep is parallel and the result is
/// identical whatever the execution order. Rank-deficient bins are flagged,
/// not fatal.
pub fn estimate_frf(v: &Spectrum, i: &Spectrum, config: &LpmConfig) -> Result<ComplexTfEstimate> {
    config.validate()?;
    let n = v.len();
    if i.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "spectra lengths differ: {} vs {}",
            n,
            i.len()
        )));
    }
    if (v.sample_period() - i.sample_period()).abs() > 1e-12 * v.sample_period() {
        return Err(Error::ShapeMismatch(
            "spectra sample periods differ".into(),
        ));
    }
    let cols = config.unknown_count();

    let per_bin: Vec<LocalSolution> = (0..n)
        .into_par_iter()
        .map(|k| {
            let (y, phi) = build_local_system(v, i, k, config)
                .expect("validated config and matching spectra");
            solve_scaled_pinv(&phi, &y, config.rank_rel_tol)
                .expect("window no smaller than unknown count")
        })
        .collect();

    let zero = Complex64::new(0.0, 0.0);
    let mut est = ComplexTfEstimate {
        gplus: Vec::with_capacity(n),
        gminus: Vec::with_capacity(n),
        transient: Vec::with_capacity(n),
        n,
        sample_period: v.sample_period(),
        config: *config,
        residual_norms: Vec::with_capacity(n),
        condition_numbers: Vec::with_capacity(n),
        effective_ranks: Vec::with_capacity(n),
        flagged: Vec::with_capacity(n),
    };
    for sol in per_bin {
        est.gplus.push(sol.theta[config.gplus_index()]);
        est.gminus
            .push(config.gminus_index().map_or(zero, |j| sol.theta[j]));
        est.transient
            .push(config.transient_index().map_or(zero, |j| sol.theta[j]));
        est.residual_norms.push(sol.residual_norm);
        est.condition_numbers.push(sol.condition_number);
        est.effective_ranks.push(sol.effective_rank);
        est.flagged.push(sol.effective_rank < cols);
    }
    Ok(est)
}
