//! File formats: strict CSV time-series / spectrum / FRF readers and
//! writers, and strict JSON config parsing. Floats are serialized with 17
//! significant digits so every f64 round-trips exactly.

use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::LadderNetworkConfig;
use crate::harness::ExperimentConfig;
use crate::impedance::ImpedanceFrfEstimate;
use crate::lpm::ComplexTfEstimate;
use crate::signal::{DqTimeSeries, RealTimeSeries};
use crate::spectrum::Spectrum;

/// Relative tolerance on time-column uniformity.
const TIME_UNIFORMITY_REL_TOL: f64 = 1e-9;

/// 17 significant digits; round-trip exact for f64.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// A parsed time-series file: single-channel `t,val` or two-channel `t,d,q`.
#[derive(Debug, Clone)]
pub enum ParsedTimeSeries {
    Single(RealTimeSeries),
    Dq(DqTimeSeries),
}

fn parse_field(field: &str, line: usize) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: not a number: {field:?}")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!(
            "line {line}: non-finite value {field:?}"
        )));
    }
    Ok(v)
}

/// Parse the CSV time-series format: header `t,val` or `t,d,q`, rows in
/// sample order, times uniform to one part in 1e9.
pub fn parse_timeseries_csv(text: &str) -> Result<ParsedTimeSeries> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty file".into()))?;
    let header = header.trim();
    let dq = match header {
        "t,val" => false,
        "t,d,q" => true,
        other => {
            return Err(Error::Parse(format!(
                "unknown header {other:?}; expected \"t,val\" or \"t,d,q\""
            )))
        }
    };
    let want = if dq { 3 } else { 2 };
    let mut times = Vec::new();
    let mut col1 = Vec::new();
    let mut col2 = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != want {
            return Err(Error::Parse(format!(
                "line {}: expected {want} fields, got {}",
                idx + 1,
                fields.len()
            )));
        }
        times.push(parse_field(fields[0], idx + 1)?);
        col1.push(parse_field(fields[1], idx + 1)?);
        if dq {
            col2.push(parse_field(fields[2], idx + 1)?);
        }
    }
    if times.len() < 2 {
        return Err(Error::Parse(
            "need at least two rows to establish the sample period".into(),
        ));
    }
    let dt0 = times[1] - times[0];
    if !(dt0 > 0.0) {
        return Err(Error::Parse("time column must be increasing".into()));
    }
    for w in times.windows(2) {
        let dt = w[1] - w[0];
        if (dt - dt0).abs() > TIME_UNIFORMITY_REL_TOL * dt0 {
            return Err(Error::Parse(format!(
                "non-uniform sampling: spacing {dt} deviates from {dt0}"
            )));
        }
    }
    if dq {
        let samples = col1
            .iter()
            .zip(&col2)
            .map(|(&d, &q)| Complex64::new(d, q))
            .collect();
        Ok(ParsedTimeSeries::Dq(DqTimeSeries::new(samples, dt0)?))
    } else {
        Ok(ParsedTimeSeries::Single(RealTimeSeries::new(
            col1, dt0, "val",
        )?))
    }
}

pub fn write_dq_csv(series: &DqTimeSeries) -> String {
    let ts = series.sample_period();
    let mut out = String::with_capacity(series.len() * 64 + 8);
    out.push_str("t,d,q\n");
    for (i, s) in series.samples().iter().enumerate() {
        out.push_str(&fmt_float(i as f64 * ts));
        out.push(',');
        out.push_str(&fmt_float(s.re));
        out.push(',');
        out.push_str(&fmt_float(s.im));
        out.push('\n');
    }
    out
}

pub fn write_real_csv(series: &RealTimeSeries) -> String {
    let ts = series.sample_period();
    let mut out = String::with_capacity(series.len() * 44 + 8);
    out.push_str("t,val\n");
    for (i, s) in series.samples().iter().enumerate() {
        out.push_str(&fmt_float(i as f64 * ts));
        out.push(',');
        out.push_str(&fmt_float(*s));
        out.push('\n');
    }
    out
}

pub fn read_dq_csv(path: &Path) -> Result<DqTimeSeries> {
    let text = read_file(path)?;
    match parse_timeseries_csv(&text)? {
        ParsedTimeSeries::Dq(s) => Ok(s),
        ParsedTimeSeries::Single(_) => Err(Error::Incompatible(format!(
            "{} is single-channel, expected t,d,q",
            path.display()
        ))),
    }
}

/// Spectrum export: columns k, omega_rad_s, re, im.
pub fn write_spectrum_csv(spec: &Spectrum) -> String {
    let n = spec.len();
    let base = 2.0 * std::f64::consts::PI / (n as f64 * spec.sample_period());
    let mut out = String::from("k,omega_rad_s,re,im\n");
    for (k, v) in spec.values().iter().enumerate() {
        out.push_str(&format!(
            "{k},{},{},{}\n",
            fmt_float(k as f64 * base),
            fmt_float(v.re),
            fmt_float(v.im)
        ));
    }
    out
}

const FRF_HEADER: &str =
    "k,f_hz,z_dd_re,z_dd_im,z_dq_re,z_dq_im,z_qd_re,z_qd_im,z_qq_re,z_qq_im";

/// Four-channel FRF export on the positive half grid.
pub fn write_frf_csv(frf: &ImpedanceFrfEstimate) -> String {
    let mut out = String::with_capacity(frf.half_len() * 200);
    out.push_str(FRF_HEADER);
    out.push('\n');
    for k in 0..frf.half_len() {
        out.push_str(&format!(
            "{k},{},{},{},{},{},{},{},{},{}\n",
            fmt_float(frf.f_hz(k)),
            fmt_float(frf.z_dd[k].re),
            fmt_float(frf.z_dd[k].im),
            fmt_float(frf.z_dq[k].re),
            fmt_float(frf.z_dq[k].im),
            fmt_float(frf.z_qd[k].re),
            fmt_float(frf.z_qd[k].im),
            fmt_float(frf.z_qq[k].re),
            fmt_float(frf.z_qq[k].im),
        ));
    }
    out
}

/// Rows of an FRF file keyed by frequency.
#[derive(Debug, Clone)]
pub struct FrfTable {
    pub f_hz: Vec<f64>,
    pub z: Vec<[Complex64; 4]>, // dd, dq, qd, qq
}

pub fn parse_frf_csv(text: &str) -> Result<FrfTable> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty file".into()))?;
    if header.trim() != FRF_HEADER {
        return Err(Error::Parse(format!(
            "unknown FRF header {:?}",
            header.trim()
        )));
    }
    let mut table = FrfTable {
        f_hz: Vec::new(),
        z: Vec::new(),
    };
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(Error::Parse(format!(
                "line {}: expected 10 fields, got {}",
                idx + 1,
                fields.len()
            )));
        }
        let nums: Result<Vec<f64>> = fields[1..]
            .iter()
            .map(|f| parse_field(f, idx + 1))
            .collect();
        let nums = nums?;
        table.f_hz.push(nums[0]);
        table.z.push([
            Complex64::new(nums[1], nums[2]),
            Complex64::new(nums[3], nums[4]),
            Complex64::new(nums[5], nums[6]),
            Complex64::new(nums[7], nums[8]),
        ]);
    }
    if table.f_hz.is_empty() {
        return Err(Error::Parse("FRF file has no rows".into()));
    }
    Ok(table)
}

/// Per-bin complex-pair estimate export with diagnostics columns.
pub fn write_gplus_gminus_csv(est: &ComplexTfEstimate) -> String {
    let scale = 1.0 / (est.n as f64 * est.sample_period);
    let mut out = String::from(
        "k,f_hz,gplus_re,gplus_im,gminus_re,gminus_im,transient_re,transient_im,\
         residual,condition,flagged\n",
    );
    for k in 0..est.n {
        out.push_str(&format!(
            "{k},{},{},{},{},{},{},{},{},{},{}\n",
            fmt_float(k as f64 * scale),
            fmt_float(est.gplus[k].re),
            fmt_float(est.gplus[k].im),
            fmt_float(est.gminus[k].re),
            fmt_float(est.gminus[k].im),
            fmt_float(est.transient[k].re),
            fmt_float(est.transient[k].im),
            fmt_float(est.residual_norms[k]),
            fmt_float(est.condition_numbers[k]),
            u8::from(est.flagged[k]),
        ));
    }
    out
}

/// Strict JSON parse of a network config; unknown keys rejected.
pub fn parse_network_config(text: &str) -> Result<LadderNetworkConfig> {
    let cfg: LadderNetworkConfig =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("network config: {e}")))?;
    cfg.validate()?;
    Ok(cfg)
}

/// Strict JSON parse of an experiment config; unknown keys rejected.
pub fn parse_experiment_config(text: &str) -> Result<ExperimentConfig> {
    let cfg: ExperimentConfig =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("experiment config: {e}")))?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Error::MissingInput(format!("{}", path.display()))
        } else {
            Error::Io(e)
        }
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, contents)?;
    Ok(())
}
