//! Identification of the small-signal dq-frame equivalent impedance of a
//! three-phase grid from a single short, non-periodic, noisy record.
//!
//! The estimator packs the dq perturbations into complex signals, relates
//! their DFT spectra through a pair of SISO complex transfer functions plus
//! a transient term, and fits low-order rational local models around every
//! spectral line by least squares. The crate also ships a synthetic
//! state-space grid for data generation and truth oracles, the comparison
//! baselines (ETFE, sequential perturbation, discrete-time ARX), accuracy
//! metrics, and the experiment harness behind the `gridscan` CLI.

pub mod baselines;
pub mod error;
pub mod grid;
pub mod harness;
pub mod impedance;
pub mod io;
pub mod lpm;
pub mod metrics;
pub mod signal;
pub mod spectrum;

pub use error::{Error, Result};
