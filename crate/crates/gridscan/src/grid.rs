//! Synthetic grids: continuous-time state-space realizations of ladder
//! networks in the dq frame (including dq-asymmetric variants), exact
//! time-domain simulation, measurement noise, and frequency-response /
//! leakage oracles.
//!
//! Element values are per-unit at base `omega_b = 2 pi f_b`: physical
//! inductance is `L_pu / omega_b`, capacitance `C_pu / omega_b`, resistance
//! `R_pu`; frequencies are physical rad/s throughout.

use nalgebra::{DMatrix, DVector, Matrix2, Vector2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::impedance::impedance_to_complex_pair;
use crate::signal::{pack_complex, unpack_complex, DqTimeSeries, RealTimeSeries};
use crate::spectrum::{dft, idft, signed_omega, Spectrum};

/// Continuous-time state-space model of a grid impedance: input is the
/// injected current (d, q), output the PCC voltage (d, q), both per-unit.
#[derive(Debug, Clone)]
pub struct StateSpaceGrid {
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    c: DMatrix<f64>,
    d: Matrix2<f64>,
    omega_g: f64,
}

impl StateSpaceGrid {
    /// Assemble from explicit matrices; rejects inconsistent dimensions and
    /// non-Hurwitz `A`.
    pub fn from_parts(
        a: DMatrix<f64>,
        b: DMatrix<f64>,
        c: DMatrix<f64>,
        d: Matrix2<f64>,
        omega_g: f64,
    ) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n {
            return Err(Error::ShapeMismatch("A must be square".into()));
        }
        if b.nrows() != n || b.ncols() != 2 {
            return Err(Error::ShapeMismatch(format!(
                "B must be {n}x2, got {}x{}",
                b.nrows(),
                b.ncols()
            )));
        }
        if c.nrows() != 2 || c.ncols() != n {
            return Err(Error::ShapeMismatch(format!(
                "C must be 2x{n}, got {}x{}",
                c.nrows(),
                c.ncols()
            )));
        }
        let model = Self {
            a,
            b,
            c,
            d,
            omega_g,
        };
        model.check_hurwitz()?;
        Ok(model)
    }

    fn check_hurwitz(&self) -> Result<()> {
        let eigs = self.a.complex_eigenvalues();
        let radius = eigs.iter().map(|e| e.norm()).fold(0.0, f64::max);
        let margin = -1e-9 * radius.max(1.0);
        for e in eigs.iter() {
            if e.re >= margin {
                return Err(Error::Construction(format!(
                    "A is not Hurwitz: eigenvalue {:.6e} + {:.6e}j has non-negative real part",
                    e.re, e.im
                )));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn c(&self) -> &DMatrix<f64> {
        &self.c
    }

    pub fn d(&self) -> &Matrix2<f64> {
        &self.d
    }

    pub fn omega_g(&self) -> f64 {
        self.omega_g
    }
}

/// One series R-L section with optional shunt elements at its far-end node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchConfig {
    pub series_r: f64,
    pub series_l_d: f64,
    pub series_l_q: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shunt_r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shunt_c: Option<f64>,
}

impl BranchConfig {
    fn has_shunt(&self) -> bool {
        self.shunt_r.is_some() || self.shunt_c.is_some()
    }
}

/// Ladder network seen from the PCC: a mandatory shunt capacitor at the port
/// (keeps the impedance proper), then series R-L branches separated by shunt
/// nodes. The far end of the last branch is the ideal (stiff) bus when the
/// branch declares no shunt elements; otherwise its shunts terminate the
/// ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderNetworkConfig {
    pub port_shunt_capacitance: f64,
    pub branches: Vec<BranchConfig>,
    pub base_frequency_hz: f64,
}

impl LadderNetworkConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.port_shunt_capacitance > 0.0) {
            return Err(Error::InvalidSpec(
                "port_shunt_capacitance must be positive".into(),
            ));
        }
        if !(self.base_frequency_hz > 0.0) {
            return Err(Error::InvalidSpec(
                "base_frequency_hz must be positive".into(),
            ));
        }
        for (i, br) in self.branches.iter().enumerate() {
            if !(br.series_r > 0.0 && br.series_l_d > 0.0 && br.series_l_q > 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "branch {i}: series elements must be positive"
                )));
            }
            if let Some(r) = br.shunt_r {
                if !(r > 0.0) {
                    return Err(Error::InvalidSpec(format!(
                        "branch {i}: shunt_r must be positive"
                    )));
                }
            }
            if let Some(c) = br.shunt_c {
                if !(c > 0.0) {
                    return Err(Error::InvalidSpec(format!(
                        "branch {i}: shunt_c must be positive"
                    )));
                }
            }
            let last = i + 1 == self.branches.len();
            if !last && !br.has_shunt() {
                return Err(Error::InvalidSpec(format!(
                    "branch {i}: interior nodes need at least one shunt element \
                     (two series inductors in a row have no state-space realization)"
                )));
            }
        }
        Ok(())
    }

    /// True when any branch has distinct d/q inductances.
    pub fn is_asymmetric(&self) -> bool {
        self.branches
            .iter()
            .any(|b| b.series_l_d != b.series_l_q)
    }
}

/// Default shipped grid: Table-style per-unit values on a two-branch ladder
/// with a salient (L_d != L_q) first branch so the impedance is
/// dq-asymmetric.
pub fn default_grid_config() -> LadderNetworkConfig {
    LadderNetworkConfig {
        port_shunt_capacitance: 0.05,
        branches: vec![
            BranchConfig {
                series_r: 0.015,
                series_l_d: 0.15,
                series_l_q: 0.12,
                shunt_r: Some(2.0),
                shunt_c: None,
            },
            BranchConfig {
                series_r: 0.015,
                series_l_d: 0.15,
                series_l_q: 0.15,
                shunt_r: None,
                shunt_c: Some(10.0),
            },
        ],
        base_frequency_hz: 50.0,
    }
}

/// Same ladder with the saliency removed (L_d = L_q everywhere).
pub fn default_symmetric_grid_config() -> LadderNetworkConfig {
    let mut cfg = default_grid_config();
    for b in &mut cfg.branches {
        b.series_l_q = b.series_l_d;
    }
    cfg
}

/// The shipped experiment grid: same two-branch ladder, lightly damped so
/// the resonances are a few hertz wide. Narrow peaks are what separate the
/// estimator from windowed-ratio methods, whose smearing across a resonance
/// is irrecoverable. Order 10 including the port capacitor.
pub fn lightly_damped_grid_config() -> LadderNetworkConfig {
    LadderNetworkConfig {
        port_shunt_capacitance: 0.05,
        branches: vec![
            BranchConfig {
                series_r: 0.001,
                series_l_d: 0.15,
                series_l_q: 0.12,
                shunt_r: Some(200.0),
                shunt_c: Some(0.02),
            },
            BranchConfig {
                series_r: 0.001,
                series_l_d: 0.15,
                series_l_q: 0.15,
                shunt_r: None,
                shunt_c: Some(10.0),
            },
        ],
        base_frequency_hz: 50.0,
    }
}

/// Build the dq-frame state space of a ladder network. Each inductor
/// contributes a state pair with the cross-coupling of the salient-element
/// equations `v_d = L_d di_d/dt - w_g L_q i_q`, `v_q = L_q di_q/dt + w_g L_d
/// i_d`; each capacitor contributes a pair dually. State order is
/// 2 (#L + #C) counting the port capacitor.
pub fn build_ladder_grid(config: &LadderNetworkConfig) -> Result<StateSpaceGrid> {
    config.validate()?;
    let omega_b = 2.0 * std::f64::consts::PI * config.base_frequency_hz;
    let omega_g = omega_b;
    let m = config.branches.len();

    // state layout: port cap (2), then per branch: inductor pair, shunt-cap
    // pair when present
    let mut cur_pos = Vec::with_capacity(m);
    let mut cap_pos: Vec<Option<usize>> = Vec::with_capacity(m);
    let mut n = 2;
    for br in &config.branches {
        cur_pos.push(n);
        n += 2;
        if br.shunt_c.is_some() {
            cap_pos.push(Some(n));
            n += 2;
        } else {
            cap_pos.push(None);
        }
    }

    // node voltage of node i (0 = PCC, i = far end of branch i-1) as a
    // linear form over d-axis states; the q-axis form is the same pattern
    // shifted by one state
    let node_form = |node: usize| -> Vec<(usize, f64)> {
        if node == 0 {
            return vec![(0, 1.0)];
        }
        let b = node - 1;
        let br = &config.branches[b];
        if br.shunt_c.is_some() {
            return vec![(cap_pos[b].unwrap(), 1.0)];
        }
        if let Some(r_sh) = br.shunt_r {
            let mut form = vec![(cur_pos[b], r_sh)];
            if b + 1 < m {
                form.push((cur_pos[b + 1], -r_sh));
            }
            return form;
        }
        // last branch without shunts: stiff bus
        vec![]
    };

    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut b_mat = DMatrix::<f64>::zeros(n, 2);

    // port capacitor: C' dv/dt = (u - i_1) with dq rotation
    let c_port = config.port_shunt_capacitance / omega_b;
    b_mat[(0, 0)] = 1.0 / c_port;
    b_mat[(1, 1)] = 1.0 / c_port;
    if m > 0 {
        a[(0, cur_pos[0])] -= 1.0 / c_port;
        a[(1, cur_pos[0] + 1)] -= 1.0 / c_port;
    }
    a[(0, 1)] += omega_g;
    a[(1, 0)] -= omega_g;

    for (bi, br) in config.branches.iter().enumerate() {
        let p = cur_pos[bi];
        let l_d = br.series_l_d / omega_b;
        let l_q = br.series_l_q / omega_b;
        let v_prev = node_form(bi);
        let v_next = node_form(bi + 1);
        // d axis
        for &(idx, coef) in &v_prev {
            a[(p, idx)] += coef / l_d;
        }
        for &(idx, coef) in &v_next {
            a[(p, idx)] -= coef / l_d;
        }
        a[(p, p)] -= br.series_r / l_d;
        a[(p, p + 1)] += omega_g * l_q / l_d;
        // q axis
        for &(idx, coef) in &v_prev {
            a[(p + 1, idx + 1)] += coef / l_q;
        }
        for &(idx, coef) in &v_next {
            a[(p + 1, idx + 1)] -= coef / l_q;
        }
        a[(p + 1, p + 1)] -= br.series_r / l_q;
        a[(p + 1, p)] -= omega_g * l_d / l_q;

        if let Some(w) = cap_pos[bi] {
            let c_sh = br.shunt_c.unwrap() / omega_b;
            let g_sh = br.shunt_r.map_or(0.0, |r| 1.0 / r);
            a[(w, p)] += 1.0 / c_sh;
            a[(w + 1, p + 1)] += 1.0 / c_sh;
            if bi + 1 < m {
                a[(w, cur_pos[bi + 1])] -= 1.0 / c_sh;
                a[(w + 1, cur_pos[bi + 1] + 1)] -= 1.0 / c_sh;
            }
            a[(w, w)] -= g_sh / c_sh;
            a[(w + 1, w + 1)] -= g_sh / c_sh;
            a[(w, w + 1)] += omega_g;
            a[(w + 1, w)] -= omega_g;
        }
    }

    let mut c_mat = DMatrix::<f64>::zeros(2, n);
    c_mat[(0, 0)] = 1.0;
    c_mat[(1, 1)] = 1.0;

    StateSpaceGrid::from_parts(a, b_mat, c_mat, Matrix2::zeros(), omega_g)
}

/// Exact frequency response `C (jwI - A)^{-1} B + D` at each requested
/// frequency (rad/s, may be negative).
pub fn true_frf(model: &StateSpaceGrid, omegas: &[f64]) -> Vec<Matrix2<Complex64>> {
    omegas.iter().map(|&w| frf_at(model, w)).collect()
}

fn frf_at(model: &StateSpaceGrid, omega: f64) -> Matrix2<Complex64> {
    let n = model.order();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = Complex64::new(-model.a[(i, j)], 0.0);
        }
        m[(i, i)] += Complex64::new(0.0, omega);
    }
    let rhs = DMatrix::<Complex64>::from_fn(n, 2, |i, j| Complex64::new(model.b[(i, j)], 0.0));
    let x = m
        .lu()
        .solve(&rhs)
        .expect("jwI - A is nonsingular for Hurwitz A and real w");
    let mut z = Matrix2::<Complex64>::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = Complex64::new(model.d[(i, j)], 0.0);
            for s in 0..n {
                acc += Complex64::new(model.c[(i, s)], 0.0) * x[(s, j)];
            }
            z[(i, j)] = acc;
        }
    }
    z
}

/// Truth FRF on the N-point DFT grid with bins above N/2 mapped to negative
/// frequencies. For even N the Nyquist line carries only the cosine
/// component of a real excitation, so the effective response there is the
/// real part of the FRF.
pub fn frf_on_grid(model: &StateSpaceGrid, n: usize, ts: f64) -> Vec<Matrix2<Complex64>> {
    (0..n)
        .map(|k| {
            let z = frf_at(model, signed_omega(k, n, ts));
            if n % 2 == 0 && k == n / 2 {
                z.map(|e| Complex64::new(e.re, 0.0))
            } else {
                z
            }
        })
        .collect()
}

/// (G+, G-) truth samples on the N-point grid, via [`frf_on_grid`].
pub fn complex_pair_on_grid(
    model: &StateSpaceGrid,
    n: usize,
    ts: f64,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut gp = Vec::with_capacity(n);
    let mut gm = Vec::with_capacity(n);
    for z in frf_on_grid(model, n, ts) {
        let (p, m) = impedance_to_complex_pair(&z);
        gp.push(p);
        gm.push(m);
    }
    (gp, gm)
}

/// Zero-order-hold exact discretization response: the hold assumes the input
/// constant over each sampling interval, and the state map is the matrix
/// exponential of the augmented [[A, B], [0, 0]] block, computed once per
/// sample period.
pub fn simulate(
    model: &StateSpaceGrid,
    injected_current: &DqTimeSeries,
    x0: &[f64],
) -> Result<DqTimeSeries> {
    let n = model.order();
    if x0.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "x0 has length {}, model order is {n}",
            x0.len()
        )));
    }
    let ts = injected_current.sample_period();
    let (ad, bd) = zoh_discretize(model, ts);
    let mut x = DVector::<f64>::from_column_slice(x0);
    let mut out = Vec::with_capacity(injected_current.len());
    for u in injected_current.samples() {
        let uv = Vector2::new(u.re, u.im);
        let y = &model.c * &x + model.d * uv;
        out.push(Complex64::new(y[0], y[1]));
        x = &ad * x + &bd * uv;
    }
    DqTimeSeries::new(out, ts)
}

fn zoh_discretize(model: &StateSpaceGrid, ts: f64) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = model.order();
    let mut aug = DMatrix::<f64>::zeros(n + 2, n + 2);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = model.a[(i, j)] * ts;
        }
        for j in 0..2 {
            aug[(i, n + j)] = model.b[(i, j)] * ts;
        }
    }
    let e = aug.exp();
    let ad = e.view((0, 0), (n, n)).into_owned();
    let bd = e.view((0, n), (n, 2)).into_owned();
    (ad, bd)
}

/// Initial state of the exactly periodic response to the band-limited
/// interpolant of the injected current; starting [`simulate_bandlimited`]
/// from this state yields a leakage-free record.
pub fn periodic_steady_state(
    model: &StateSpaceGrid,
    injected_current: &DqTimeSeries,
) -> DVector<f64> {
    let (x0, _, _) = periodic_solution(model, injected_current);
    x0
}

/// Per-bin particular solutions and the periodic output spectra.
fn periodic_solution(
    model: &StateSpaceGrid,
    current: &DqTimeSeries,
) -> (DVector<f64>, Vec<Complex64>, Vec<Complex64>) {
    let n_samples = current.len();
    let ts = current.sample_period();
    let n_states = model.order();
    let (d, q) = unpack_complex(current);
    let ud = dft(&real_as_complex(&d));
    let uq = dft(&real_as_complex(&q));

    let mut x0 = DVector::<Complex64>::zeros(n_states);
    let mut wd = Vec::with_capacity(n_samples);
    let mut wq = Vec::with_capacity(n_samples);
    let b_cplx = DMatrix::<Complex64>::from_fn(n_states, 2, |i, j| {
        Complex64::new(model.b[(i, j)], 0.0)
    });
    for k in 0..n_samples {
        let w = signed_omega(k, n_samples, ts);
        let u_k = nalgebra::Vector2::new(ud.values()[k], uq.values()[k]);
        let rhs = &b_cplx * u_k;
        let mut m = DMatrix::<Complex64>::zeros(n_states, n_states);
        for i in 0..n_states {
            for j in 0..n_states {
                m[(i, j)] = Complex64::new(-model.a[(i, j)], 0.0);
            }
            m[(i, i)] += Complex64::new(0.0, w);
        }
        let mut x_k = m
            .lu()
            .solve(&rhs)
            .expect("jwI - A is nonsingular for Hurwitz A");
        // even-N Nyquist line: a real excitation carries only the cosine
        // there, whose steady response is the real part of the phasor one
        if n_samples % 2 == 0 && k == n_samples / 2 {
            x_k = x_k.map(|e| Complex64::new(e.re, 0.0));
        }
        let scale = 1.0 / (n_samples as f64).sqrt();
        for i in 0..n_states {
            x0[i] += x_k[i] * scale;
        }
        let mut yd = Complex64::new(0.0, 0.0);
        let mut yq = Complex64::new(0.0, 0.0);
        for s in 0..n_states {
            yd += Complex64::new(model.c[(0, s)], 0.0) * x_k[s];
            yq += Complex64::new(model.c[(1, s)], 0.0) * x_k[s];
        }
        yd += Complex64::new(model.d[(0, 0)], 0.0) * u_k[0]
            + Complex64::new(model.d[(0, 1)], 0.0) * u_k[1];
        yq += Complex64::new(model.d[(1, 0)], 0.0) * u_k[0]
            + Complex64::new(model.d[(1, 1)], 0.0) * u_k[1];
        wd.push(yd);
        wq.push(yq);
    }
    let x0_real = DVector::<f64>::from_fn(n_states, |i, _| x0[i].re);
    (x0_real, wd, wq)
}

fn real_as_complex(series: &RealTimeSeries) -> DqTimeSeries {
    DqTimeSeries::new(
        series
            .samples()
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect(),
        series.sample_period(),
    )
    .expect("non-empty by construction")
}

/// Exact continuous-time response, sampled, to the band-limited periodic
/// interpolant of the injected current samples, from initial state `x0`.
///
/// The interpolant is the real trigonometric polynomial through the samples
/// on the grid `w_k` (bins above N/2 as negative frequencies, the Nyquist
/// line as a cosine), so the record contains no aliasing: the DFT spectra
/// satisfy the input-output relation with the continuous FRF exactly, up to
/// the leakage of the `x0` transient. A zero-order-hold staircase would
/// instead fold the hold's spectral images through the plant and bias the
/// apparent response toward the discrete-time FRF.
pub fn simulate_bandlimited(
    model: &StateSpaceGrid,
    injected_current: &DqTimeSeries,
    x0: &[f64],
) -> Result<DqTimeSeries> {
    let n_states = model.order();
    if x0.len() != n_states {
        return Err(Error::ShapeMismatch(format!(
            "x0 has length {}, model order is {n_states}",
            x0.len()
        )));
    }
    let n = injected_current.len();
    let ts = injected_current.sample_period();
    let (xp0, wd, wq) = periodic_solution(model, injected_current);

    let vd = idft(&Spectrum::new(wd, ts)?);
    let vq = idft(&Spectrum::new(wq, ts)?);

    // homogeneous part from the state offset
    let mut delta = DVector::<f64>::from_column_slice(x0) - xp0;
    let ad = (model.a.clone() * ts).exp();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let y = &model.c * &delta;
        out.push(Complex64::new(
            vd.samples()[i].re + y[0],
            vq.samples()[i].re + y[1],
        ));
        delta = &ad * delta;
    }
    DqTimeSeries::new(out, ts)
}

/// Measurement-device noise model: zero-mean Gaussian per channel per
/// sample with standard deviation `accuracy_class * reference_magnitude`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    pub accuracy_class: f64,
    pub reference_magnitude_v: f64,
    pub reference_magnitude_i: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn validate(&self) -> Result<()> {
        if self.accuracy_class < 0.0 {
            return Err(Error::InvalidSpec(
                "accuracy_class must be non-negative".into(),
            ));
        }
        Ok(())
    }

    pub fn noiseless(&self) -> NoiseSpec {
        NoiseSpec {
            accuracy_class: 0.0,
            ..*self
        }
    }
}

/// Which measurement a noise draw belongs to; selects the reference
/// magnitude and decorrelates the voltage and current streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseTarget {
    Voltage,
    Current,
}

/// Add seeded Gaussian measurement noise to both channels; deterministic,
/// and an exact bitwise copy when the accuracy class is zero.
pub fn add_measurement_noise(
    series: &DqTimeSeries,
    spec: &NoiseSpec,
    target: NoiseTarget,
) -> Result<DqTimeSeries> {
    spec.validate()?;
    let (reference, seed) = match target {
        NoiseTarget::Voltage => (spec.reference_magnitude_v, spec.seed),
        NoiseTarget::Current => (spec.reference_magnitude_i, spec.seed.wrapping_add(1)),
    };
    let sigma = spec.accuracy_class * reference;
    if sigma == 0.0 {
        return Ok(series.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = series
        .samples()
        .iter()
        .map(|x| {
            let nd: f64 = rng.sample(StandardNormal);
            let nq: f64 = rng.sample(StandardNormal);
            Complex64::new(x.re + sigma * nd, x.im + sigma * nq)
        })
        .collect();
    DqTimeSeries::new(samples, series.sample_period())
}

/// Random initial-state offset scaled so the initial output magnitude is
/// `magnitude` p.u.; the knob that injects a controlled transient.
pub fn draw_transient_state(
    model: &StateSpaceGrid,
    magnitude: f64,
    seed: u64,
) -> Result<DVector<f64>> {
    let n = model.order();
    if magnitude == 0.0 {
        return Ok(DVector::zeros(n));
    }
    if magnitude < 0.0 {
        return Err(Error::InvalidSpec(
            "transient magnitude must be non-negative".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = DVector::<f64>::from_fn(n, |_, _| rng.sample(StandardNormal));
    let y0 = &model.c * &x;
    let norm = (y0[0] * y0[0] + y0[1] * y0[1]).sqrt();
    if norm == 0.0 {
        return Err(Error::Construction(
            "drawn state is unobservable at the output".into(),
        ));
    }
    Ok(x * (magnitude / norm))
}

/// Ground-truth transient term of the spectral relation:
/// `T_k = V_k - G+(jw_k) I_k - G-(jw_k) conj(I_{(N-k) mod N})`,
/// computed from a noise-free simulation and the exact FRF oracle.
pub fn leakage_oracle(
    model: &StateSpaceGrid,
    injected_current: &DqTimeSeries,
    x0: &[f64],
) -> Result<Spectrum> {
    let v = simulate_bandlimited(model, injected_current, x0)?;
    let v_spec = dft(&v);
    let i_spec = dft(injected_current);
    let n = injected_current.len();
    let (gp, gm) = complex_pair_on_grid(model, n, injected_current.sample_period());
    let values = (0..n)
        .map(|k| {
            let i_rev = i_spec.values()[(n - k) % n].conj();
            v_spec.values()[k] - gp[k] * i_spec.values()[k] - gm[k] * i_rev
        })
        .collect();
    Spectrum::new(values, injected_current.sample_period())
}

/// Convenience: pack two real channels into the complex dq signal.
pub fn pack_channels(d: &RealTimeSeries, q: &RealTimeSeries) -> Result<DqTimeSeries> {
    pack_complex(d, q)
}
