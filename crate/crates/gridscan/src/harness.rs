//! Experiment orchestration: configuration, the simulate -> identify ->
//! evaluate -> compare pipeline, persistence, and report generation.
//!
//! All randomness (excitation, noise, initial state) flows from named seeds
//! in the configuration, so every output is a pure function of the config
//! file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::baselines::{
    arx_fit, arx_frf, etfe, sequential_perturbation_estimate, split_record,
};
use crate::error::{Error, Result};
use crate::grid::{
    add_measurement_noise, build_ladder_grid, draw_transient_state, frf_on_grid,
    periodic_steady_state, simulate_bandlimited, LadderNetworkConfig, NoiseSpec, NoiseTarget,
    StateSpaceGrid,
};
use crate::impedance::{
    complex_pair_to_impedance, symmetric_complex_to_impedance, ImpedanceFrfEstimate,
};
use crate::io;
use crate::lpm::{estimate_frf, LpmConfig};
use crate::metrics::{fit_percent, relative_hinf_error, BandSelection};
use crate::signal::{generate_rbs, pack_complex, remove_mean, unpack_complex, ExcitationSpec};
use crate::spectrum::{dft, WindowKind};

/// Excitation block of the experiment config; the record length comes from
/// `duration_s / ts_s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExcitationConfig {
    pub amplitude: f64,
    pub seed_d: u64,
    pub seed_q: u64,
}

/// Grid description: inline network object or a path to a network JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridRef {
    Inline(LadderNetworkConfig),
    Path(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LpmMethod {
    pub order_r: usize,
    /// Window radius; defaults to 4R + 2.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_window_l: Option<usize>,
    #[serde(default)]
    pub assume_symmetric: bool,
    #[serde(default)]
    pub assume_periodic: bool,
}

impl LpmMethod {
    pub fn to_config(&self) -> LpmConfig {
        let mut cfg = match self.half_window_l {
            Some(l) => LpmConfig::with_window(self.order_r, l),
            None => LpmConfig::new(self.order_r),
        };
        cfg.assume_symmetric = self.assume_symmetric;
        cfg.assume_periodic = self.assume_periodic;
        cfg
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArxMethod {
    pub order: usize,
}

fn default_window() -> WindowKind {
    WindowKind::Hamming
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeqpertMethod {
    #[serde(default = "default_window")]
    pub window: WindowKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtfeMethod {}

/// One identification method to run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodSpec {
    Lpm(LpmMethod),
    Arx(ArxMethod),
    Seqpert(SeqpertMethod),
    Etfe(EtfeMethod),
}

impl MethodSpec {
    /// Directory / table label, e.g. `lpm_r4`, `arx_10`, `seqpert`, `etfe`.
    pub fn label(&self) -> String {
        match self {
            MethodSpec::Lpm(m) => format!("lpm_r{}", m.order_r),
            MethodSpec::Arx(m) => format!("arx_{}", m.order),
            MethodSpec::Seqpert(_) => "seqpert".into(),
            MethodSpec::Etfe(_) => "etfe".into(),
        }
    }

    pub fn method_name(&self) -> &'static str {
        match self {
            MethodSpec::Lpm(_) => "lpm",
            MethodSpec::Arx(_) => "arx",
            MethodSpec::Seqpert(_) => "seqpert",
            MethodSpec::Etfe(_) => "etfe",
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            MethodSpec::Lpm(m) => Some(m.order_r),
            MethodSpec::Arx(m) => Some(m.order),
            _ => None,
        }
    }
}

/// Full experiment description; the schema of the CLI's `--config` JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub grid: GridRef,
    pub excitation: ExcitationConfig,
    /// Record length in seconds; 1 s by default.
    #[serde(default = "default_duration_s")]
    pub duration_s: f64,
    /// Sample period; 1e-4 s by default (10 kHz, 1 Hz resolution at 1 s).
    #[serde(default = "default_ts_s")]
    pub ts_s: f64,
    pub noise: NoiseSpec,
    /// Initial-output magnitude of the injected state transient, p.u.
    #[serde(default = "default_transient_magnitude")]
    pub transient_magnitude: f64,
    pub transient_seed: u64,
    pub methods: Vec<MethodSpec>,
    pub bands: Vec<BandSelection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

fn default_duration_s() -> f64 {
    1.0
}

fn default_ts_s() -> f64 {
    1e-4
}

fn default_transient_magnitude() -> f64 {
    0.1
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if let GridRef::Inline(g) = &self.grid {
            g.validate()?;
        }
        if !(self.excitation.amplitude > 0.0) {
            return Err(Error::Config("excitation.amplitude must be positive".into()));
        }
        if self.excitation.seed_d == self.excitation.seed_q {
            return Err(Error::Config(
                "excitation.seed_d and seed_q must differ".into(),
            ));
        }
        if !(self.ts_s > 0.0) {
            return Err(Error::Config("ts_s must be positive".into()));
        }
        self.n_samples()?;
        self.noise.validate().map_err(|e| Error::Config(e.to_string()))?;
        if self.transient_magnitude < 0.0 {
            return Err(Error::Config(
                "transient_magnitude must be non-negative".into(),
            ));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("at least one method is required".into()));
        }
        for m in &self.methods {
            if let MethodSpec::Lpm(l) = m {
                l.to_config()
                    .validate()
                    .map_err(|e| Error::Config(e.to_string()))?;
            }
        }
        for b in &self.bands {
            b.validate().map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }

    /// Record length; `duration_s / ts_s` must be an even integer.
    pub fn n_samples(&self) -> Result<usize> {
        let ratio = self.duration_s / self.ts_s;
        let n = ratio.round();
        if (ratio - n).abs() > 1e-9 * ratio.max(1.0) || n < 4.0 {
            return Err(Error::Config(format!(
                "duration_s / ts_s must be an integer >= 4, got {ratio}"
            )));
        }
        let n = n as usize;
        if n % 2 != 0 {
            return Err(Error::Config(format!(
                "duration_s / ts_s must be even, got {n}"
            )));
        }
        Ok(n)
    }

    /// Load the referenced network config, resolving relative paths against
    /// `base_dir`.
    pub fn resolve_grid(&self, base_dir: &Path) -> Result<LadderNetworkConfig> {
        match &self.grid {
            GridRef::Inline(g) => {
                g.validate()?;
                Ok(g.clone())
            }
            GridRef::Path(p) => {
                let path = base_dir.join(p);
                io::parse_network_config(&io::read_file(&path)?)
            }
        }
    }
}

/// Everything needed to reproduce a dataset byte for byte.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetManifest {
    /// The resolved configuration with the grid inlined.
    pub config: ExperimentConfig,
    pub n_samples: usize,
}

/// File names inside a dataset directory.
pub mod files {
    pub const MANIFEST: &str = "manifest.json";
    pub const I_NOISY: &str = "i.csv";
    pub const V_NOISY: &str = "v.csv";
    pub const I_CLEAN: &str = "i_clean.csv";
    pub const V_CLEAN: &str = "v_clean.csv";
    pub const I_SPECTRUM: &str = "i_spectrum.csv";
    pub const V_SPECTRUM: &str = "v_spectrum.csv";
    pub const TRUTH_FRF: &str = "truth_frf.csv";
    pub const X0: &str = "x0.json";
    pub const ESTIMATES_DIR: &str = "estimates";
    pub const Z_FRF: &str = "z_frf.csv";
    pub const GPLUS_GMINUS: &str = "gplus_gminus.csv";
    pub const REPORT: &str = "report.json";
    pub const TABLE: &str = "table.txt";
}

fn truth_frf_estimate(model: &StateSpaceGrid, n: usize, ts: f64) -> ImpedanceFrfEstimate {
    let grid_frf = frf_on_grid(model, n, ts);
    let half = n / 2;
    let mut out = ImpedanceFrfEstimate {
        z_dd: Vec::with_capacity(half),
        z_dq: Vec::with_capacity(half),
        z_qd: Vec::with_capacity(half),
        z_qq: Vec::with_capacity(half),
        n,
        sample_period: ts,
    };
    for z in grid_frf.iter().take(half) {
        out.z_dd.push(z[(0, 0)]);
        out.z_dq.push(z[(0, 1)]);
        out.z_qd.push(z[(1, 0)]);
        out.z_qq.push(z[(1, 1)]);
    }
    out
}

/// Generate and persist a dataset: noisy and clean records, the truth FRF,
/// the initial state and a manifest. Reruns with the same config are
/// byte-identical.
pub fn run_simulate(
    config: &ExperimentConfig,
    base_dir: &Path,
    out_dir: &Path,
) -> Result<DatasetManifest> {
    config.validate()?;
    let grid_cfg = config.resolve_grid(base_dir)?;
    let model = build_ladder_grid(&grid_cfg)?;
    let n = config.n_samples()?;
    let ts = config.ts_s;

    let spec = ExcitationSpec::new(
        config.excitation.amplitude,
        n,
        config.excitation.seed_d,
        config.excitation.seed_q,
    );
    let d = generate_rbs(&spec.channel(config.excitation.seed_d), ts)?;
    let q = generate_rbs(&spec.channel(config.excitation.seed_q), ts)?;
    let i_clean = pack_complex(&d, &q)?;

    let x_steady = periodic_steady_state(&model, &i_clean);
    let x_offset = draw_transient_state(&model, config.transient_magnitude, config.transient_seed)?;
    let x0 = &x_steady + &x_offset;
    let v_clean = simulate_bandlimited(&model, &i_clean, x0.as_slice())?;

    let v_noisy = add_measurement_noise(&v_clean, &config.noise, NoiseTarget::Voltage)?;
    let i_noisy = add_measurement_noise(&i_clean, &config.noise, NoiseTarget::Current)?;

    io::write_file(&out_dir.join(files::I_CLEAN), &io::write_dq_csv(&i_clean))?;
    io::write_file(&out_dir.join(files::V_CLEAN), &io::write_dq_csv(&v_clean))?;
    io::write_file(&out_dir.join(files::I_NOISY), &io::write_dq_csv(&i_noisy))?;
    io::write_file(&out_dir.join(files::V_NOISY), &io::write_dq_csv(&v_noisy))?;

    // spectra of the measured records as the identification sees them
    io::write_file(
        &out_dir.join(files::I_SPECTRUM),
        &io::write_spectrum_csv(&dft(&remove_mean(&i_noisy))),
    )?;
    io::write_file(
        &out_dir.join(files::V_SPECTRUM),
        &io::write_spectrum_csv(&dft(&remove_mean(&v_noisy))),
    )?;

    let truth = truth_frf_estimate(&model, n, ts);
    io::write_file(&out_dir.join(files::TRUTH_FRF), &io::write_frf_csv(&truth))?;

    let x0_vec: Vec<f64> = x0.iter().copied().collect();
    io::write_file(
        &out_dir.join(files::X0),
        &serde_json::to_string_pretty(&x0_vec).expect("vec serializes"),
    )?;

    let manifest = DatasetManifest {
        config: ExperimentConfig {
            grid: GridRef::Inline(grid_cfg),
            output_dir: None,
            ..config.clone()
        },
        n_samples: n,
    };
    io::write_file(
        &out_dir.join(files::MANIFEST),
        &serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
    )?;
    Ok(manifest)
}

pub fn read_manifest(dataset_dir: &Path) -> Result<DatasetManifest> {
    let text = io::read_file(&dataset_dir.join(files::MANIFEST))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("manifest: {e}")))
}

/// Result of one identify run.
#[derive(Debug, Clone)]
pub struct IdentifyOutcome {
    pub label: String,
    pub estimate_dir: PathBuf,
    pub warnings: Vec<String>,
}

/// Run one method on a persisted dataset, writing its estimate files under
/// `estimates/<label>/`.
pub fn run_identify(dataset_dir: &Path, method: &MethodSpec) -> Result<IdentifyOutcome> {
    let manifest = read_manifest(dataset_dir)?;
    let n = manifest.n_samples;
    let v_raw = io::read_dq_csv(&dataset_dir.join(files::V_NOISY))?;
    let i_raw = io::read_dq_csv(&dataset_dir.join(files::I_NOISY))?;
    if v_raw.len() != n || i_raw.len() != n {
        return Err(Error::Incompatible(format!(
            "dataset length {} does not match manifest ({n})",
            v_raw.len()
        )));
    }
    // deviations from the operating point: remove the record means
    let v = remove_mean(&v_raw);
    let i = remove_mean(&i_raw);
    let ts = v.sample_period();

    let label = method.label();
    let est_dir = dataset_dir.join(files::ESTIMATES_DIR).join(&label);
    let mut warnings = Vec::new();

    match method {
        MethodSpec::Lpm(m) => {
            let cfg = m.to_config();
            let est = estimate_frf(&dft(&v), &dft(&i), &cfg)?;
            io::write_file(
                &est_dir.join(files::GPLUS_GMINUS),
                &io::write_gplus_gminus_csv(&est),
            )?;
            let frf = complex_pair_to_impedance(&est)?;
            io::write_file(&est_dir.join(files::Z_FRF), &io::write_frf_csv(&frf))?;
        }
        MethodSpec::Arx(m) => {
            if m.order == 0 {
                return Err(Error::Config("arx order must be positive".into()));
            }
            let (vd, vq) = unpack_complex(&v);
            let (id, iq) = unpack_complex(&i);
            let model = arx_fit((&id, &iq), (&vd, &vq), m.order, m.order)?;
            let half = n / 2;
            let omegas: Vec<f64> = (0..half)
                .map(|k| 2.0 * std::f64::consts::PI * k as f64 / (n as f64 * ts))
                .collect();
            let responses = arx_frf(&model, &omegas)?;
            let zero = num_complex::Complex64::new(0.0, 0.0);
            let mut frf = ImpedanceFrfEstimate {
                z_dd: Vec::with_capacity(half),
                z_dq: Vec::with_capacity(half),
                z_qd: Vec::with_capacity(half),
                z_qq: Vec::with_capacity(half),
                n,
                sample_period: ts,
            };
            let mut singular = 0usize;
            for r in responses {
                match r {
                    Some(z) => {
                        frf.z_dd.push(z[(0, 0)]);
                        frf.z_dq.push(z[(0, 1)]);
                        frf.z_qd.push(z[(1, 0)]);
                        frf.z_qq.push(z[(1, 1)]);
                    }
                    None => {
                        singular += 1;
                        frf.z_dd.push(zero);
                        frf.z_dq.push(zero);
                        frf.z_qd.push(zero);
                        frf.z_qq.push(zero);
                    }
                }
            }
            if singular > 0 {
                warnings.push(format!("arx: {singular} bins had singular A(z)"));
            }
            io::write_file(&est_dir.join(files::Z_FRF), &io::write_frf_csv(&frf))?;
        }
        MethodSpec::Seqpert(m) => {
            // one record treated as two sequential measurements
            let (exp1, exp2) = split_record(&v, &i)?;
            let est = sequential_perturbation_estimate(
                (&exp1.0, &exp1.1),
                (&exp2.0, &exp2.1),
                m.window,
            )?;
            let invalid = est.valid.iter().filter(|&&ok| !ok).count();
            if invalid > 0 {
                warnings.push(format!("seqpert: {invalid} bins flagged singular"));
            }
            io::write_file(&est_dir.join(files::Z_FRF), &io::write_frf_csv(&est.frf))?;
        }
        MethodSpec::Etfe(_) => {
            if let GridRef::Inline(g) = &manifest.config.grid {
                if g.is_asymmetric() {
                    warnings.push(
                        "etfe assumes a dq-symmetric grid, but the dataset's grid is \
                         asymmetric; the estimate ignores the conjugate coupling"
                            .into(),
                    );
                }
            }
            let est = etfe(&dft(&v), &dft(&i))?;
            let invalid = est.valid.iter().filter(|&&ok| !ok).count();
            if invalid > 0 {
                warnings.push(format!("etfe: {invalid} bins below the excitation floor"));
            }
            let frf = symmetric_complex_to_impedance(&est.values, ts)?;
            io::write_file(&est_dir.join(files::Z_FRF), &io::write_frf_csv(&frf))?;
        }
    }
    Ok(IdentifyOutcome {
        label,
        estimate_dir: est_dir,
        warnings,
    })
}

/// Per-channel fit percentages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitChannels {
    pub dd: f64,
    pub dq: f64,
    pub qd: f64,
    pub qq: f64,
}

/// One (method, band) evaluation row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub method: String,
    pub order: Option<usize>,
    pub band_hz: (f64, f64),
    pub fit_pct: FitChannels,
    pub rel_hinf: f64,
}

/// Evaluate one estimate file against the truth file over the given bands.
/// Grids are matched row-by-row on frequency; an estimate frequency missing
/// from the truth grid is an error.
pub fn evaluate_frf_file(
    estimate_path: &Path,
    truth_path: &Path,
    bands: &[BandSelection],
    method: &MethodSpec,
) -> Result<Vec<ReportEntry>> {
    let est = io::parse_frf_csv(&io::read_file(estimate_path)?)?;
    let truth = io::parse_frf_csv(&io::read_file(truth_path)?)?;
    evaluate_tables(&est, &truth, bands, method)
}

fn match_truth_row(truth: &io::FrfTable, f: f64) -> Result<usize> {
    // truth rows are in increasing frequency order
    let idx = truth
        .f_hz
        .partition_point(|&t| t < f - 1e-6);
    if idx < truth.f_hz.len() && (truth.f_hz[idx] - f).abs() <= 1e-6 * f.abs().max(1.0) {
        Ok(idx)
    } else {
        Err(Error::Incompatible(format!(
            "estimate frequency {f} Hz not on the truth grid"
        )))
    }
}

pub fn evaluate_tables(
    est: &io::FrfTable,
    truth: &io::FrfTable,
    bands: &[BandSelection],
    method: &MethodSpec,
) -> Result<Vec<ReportEntry>> {
    let mut entries = Vec::new();
    for band in bands {
        band.validate()?;
        let mut est_rows = Vec::new();
        let mut truth_rows = Vec::new();
        for (row, &f) in est.f_hz.iter().enumerate() {
            if f >= band.f_min_hz - 1e-9 && f <= band.f_max_hz + 1e-9 {
                est_rows.push(row);
                truth_rows.push(match_truth_row(truth, f)?);
            }
        }
        if est_rows.len() < 2 {
            return Err(Error::Incompatible(format!(
                "band [{}, {}] Hz selects fewer than two estimate rows",
                band.f_min_hz, band.f_max_hz
            )));
        }
        let channel = |c: usize| -> Result<f64> {
            let e: Vec<_> = est_rows.iter().map(|&r| est.z[r][c]).collect();
            let t: Vec<_> = truth_rows.iter().map(|&r| truth.z[r][c]).collect();
            fit_percent(&e, &t)
        };
        let fit = FitChannels {
            dd: channel(0)?,
            dq: channel(1)?,
            qd: channel(2)?,
            qq: channel(3)?,
        };
        let to_mat = |z: &[num_complex::Complex64; 4]| {
            nalgebra::Matrix2::new(z[0], z[1], z[2], z[3])
        };
        let e_mats: Vec<_> = est_rows.iter().map(|&r| to_mat(&est.z[r])).collect();
        let t_mats: Vec<_> = truth_rows.iter().map(|&r| to_mat(&truth.z[r])).collect();
        let rel_hinf = relative_hinf_error(&e_mats, &t_mats)?;
        entries.push(ReportEntry {
            method: method.method_name().to_string(),
            order: method.order(),
            band_hz: (band.f_min_hz, band.f_max_hz),
            fit_pct: fit,
            rel_hinf,
        });
    }
    Ok(entries)
}

/// Consolidated comparison output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub entries: Vec<ReportEntry>,
}

/// Render the aligned-text table; fits rounded to a single digit after the
/// decimal point.
pub fn render_table(report: &CompareReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<10} {:>5} {:>14} {:>8} {:>8} {:>8} {:>8} {:>10}\n",
        "method", "order", "band_hz", "fit_dd", "fit_dq", "fit_qd", "fit_qq", "rel_hinf"
    ));
    for e in &report.entries {
        let order = e
            .order
            .map(|o| o.to_string())
            .unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "{:<10} {:>5} {:>14} {:>8.1} {:>8.1} {:>8.1} {:>8.1} {:>10.4}\n",
            e.method,
            order,
            format!("[{}, {}]", e.band_hz.0, e.band_hz.1),
            e.fit_pct.dd,
            e.fit_pct.dq,
            e.fit_pct.qd,
            e.fit_pct.qq,
            e.rel_hinf
        ));
    }
    out
}

/// Run the full pipeline: simulate once, identify with every configured
/// method, evaluate every band, and write `report.json` plus `table.txt`.
/// `no_noise` forces the accuracy class to zero.
pub fn run_compare(
    config: &ExperimentConfig,
    base_dir: &Path,
    out_dir: &Path,
    no_noise: bool,
) -> Result<CompareReport> {
    let mut config = config.clone();
    if no_noise {
        config.noise = config.noise.noiseless();
    }
    config.validate()?;
    run_simulate(&config, base_dir, out_dir)?;
    let truth_path = out_dir.join(files::TRUTH_FRF);
    let mut entries = Vec::new();
    for method in &config.methods {
        let outcome = run_identify(out_dir, method)?;
        for w in &outcome.warnings {
            eprintln!("warning [{}]: {w}", outcome.label);
        }
        let est_path = outcome.estimate_dir.join(files::Z_FRF);
        entries.extend(evaluate_frf_file(
            &est_path,
            &truth_path,
            &config.bands,
            method,
        )?);
    }
    let report = CompareReport { entries };
    io::write_file(
        &out_dir.join(files::REPORT),
        &serde_json::to_string_pretty(&report).expect("report serializes"),
    )?;
    io::write_file(&out_dir.join(files::TABLE), &render_table(&report))?;
    Ok(report)
}

/// The shipped default experiment at the reference scale: 1 s record at
/// Ts = 1e-4 (N = 10^4, 1 Hz resolution), RBS of 0.05 p.u., 0.5 %
/// accuracy-class noise, transient of 0.1 p.u.
pub fn default_experiment_config() -> ExperimentConfig {
    ExperimentConfig {
        grid: GridRef::Inline(crate::grid::lightly_damped_grid_config()),
        excitation: ExcitationConfig {
            amplitude: 0.05,
            seed_d: 1,
            seed_q: 2,
        },
        duration_s: 1.0,
        ts_s: 1e-4,
        noise: NoiseSpec {
            accuracy_class: 0.005,
            reference_magnitude_v: 1.0,
            reference_magnitude_i: 1.0,
            seed: 3,
        },
        transient_magnitude: 0.1,
        transient_seed: 4,
        methods: vec![
            MethodSpec::Lpm(LpmMethod {
                order_r: 2,
                half_window_l: None,
                assume_symmetric: false,
                assume_periodic: false,
            }),
            MethodSpec::Lpm(LpmMethod {
                order_r: 4,
                half_window_l: None,
                assume_symmetric: false,
                assume_periodic: false,
            }),
            MethodSpec::Lpm(LpmMethod {
                order_r: 6,
                half_window_l: None,
                assume_symmetric: false,
                assume_periodic: false,
            }),
            MethodSpec::Lpm(LpmMethod {
                order_r: 8,
                half_window_l: None,
                assume_symmetric: false,
                assume_periodic: false,
            }),
            MethodSpec::Lpm(LpmMethod {
                order_r: 10,
                half_window_l: None,
                assume_symmetric: false,
                assume_periodic: false,
            }),
            MethodSpec::Arx(ArxMethod { order: 2 }),
            MethodSpec::Arx(ArxMethod { order: 4 }),
            MethodSpec::Arx(ArxMethod { order: 6 }),
            MethodSpec::Arx(ArxMethod { order: 8 }),
            MethodSpec::Arx(ArxMethod { order: 10 }),
            MethodSpec::Arx(ArxMethod { order: 20 }),
            MethodSpec::Seqpert(SeqpertMethod {
                window: WindowKind::Hamming,
            }),
            MethodSpec::Etfe(EtfeMethod {}),
        ],
        bands: vec![
            BandSelection::new(0.0, 4000.0),
            BandSelection::new(0.0, 2000.0),
        ],
        output_dir: None,
    }
}
