//! File-level pipeline tests: simulate -> identify -> evaluate through the
//! persisted dataset layout.

use std::path::Path;

use gridscan::grid::{lightly_damped_grid_config, NoiseSpec};
use gridscan::harness::{
    self, default_experiment_config, evaluate_frf_file, files, run_identify, run_simulate,
    ArxMethod, EtfeMethod, ExperimentConfig, GridRef, LpmMethod, MethodSpec, SeqpertMethod,
};
use gridscan::io;
use gridscan::metrics::BandSelection;
use gridscan::spectrum::WindowKind;
use gridscan::Error;

fn small_config() -> ExperimentConfig {
    ExperimentConfig {
        grid: GridRef::Inline(lightly_damped_grid_config()),
        excitation: harness::ExcitationConfig {
            amplitude: 0.05,
            seed_d: 1,
            seed_q: 2,
        },
        duration_s: 0.1,
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
            MethodSpec::Arx(ArxMethod { order: 2 }),
            MethodSpec::Seqpert(SeqpertMethod {
                window: WindowKind::Hamming,
            }),
            MethodSpec::Etfe(EtfeMethod {}),
        ],
        bands: vec![BandSelection::new(0.0, 300.0)],
        output_dir: None,
    }
}

fn line_count(path: &Path) -> usize {
    std::fs::read_to_string(path).unwrap().lines().count()
}

#[test]
fn simulate_writes_complete_dataset() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config();
    let manifest = run_simulate(&cfg, dir.path(), dir.path()).unwrap();
    assert_eq!(manifest.n_samples, 1000);
    for (name, rows) in [
        (files::I_NOISY, 1001),
        (files::V_NOISY, 1001),
        (files::I_CLEAN, 1001),
        (files::V_CLEAN, 1001),
        (files::TRUTH_FRF, 501),
    ] {
        assert_eq!(line_count(&dir.path().join(name)), rows, "{name}");
    }
    let back = harness::read_manifest(dir.path()).unwrap();
    assert_eq!(back.n_samples, 1000);

    // same config twice is byte-identical
    let dir2 = tempfile::tempdir().unwrap();
    run_simulate(&cfg, dir2.path(), dir2.path()).unwrap();
    for name in [files::I_NOISY, files::V_NOISY, files::TRUTH_FRF, files::MANIFEST] {
        let a = std::fs::read(dir.path().join(name)).unwrap();
        let b = std::fs::read(dir2.path().join(name)).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn zero_noise_matches_clean_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config();
    cfg.noise = cfg.noise.noiseless();
    run_simulate(&cfg, dir.path(), dir.path()).unwrap();
    let v = std::fs::read(dir.path().join(files::V_NOISY)).unwrap();
    let v_clean = std::fs::read(dir.path().join(files::V_CLEAN)).unwrap();
    assert_eq!(v, v_clean);
    let i = std::fs::read(dir.path().join(files::I_NOISY)).unwrap();
    let i_clean = std::fs::read(dir.path().join(files::I_CLEAN)).unwrap();
    assert_eq!(i, i_clean);
}

#[test]
fn default_config_is_paper_scale() {
    let cfg = default_experiment_config();
    assert_eq!(cfg.n_samples().unwrap(), 10_000);
    // and it matches the shipped JSON file
    let mut shipped = io::parse_experiment_config(
        &std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../configs/default.json"
        ))
        .unwrap(),
    )
    .unwrap();
    shipped.output_dir = None;
    assert_eq!(shipped, cfg);
}

#[test]
fn identify_writes_estimates_for_every_method() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config();
    run_simulate(&cfg, dir.path(), dir.path()).unwrap();
    for method in &cfg.methods {
        let outcome = run_identify(dir.path(), method).unwrap();
        assert!(outcome.estimate_dir.join(files::Z_FRF).exists());
        match method {
            MethodSpec::Lpm(_) => {
                assert!(outcome.estimate_dir.join(files::GPLUS_GMINUS).exists());
                assert_eq!(
                    line_count(&outcome.estimate_dir.join(files::Z_FRF)),
                    501
                );
            }
            MethodSpec::Seqpert(_) => {
                // half-length record: 250 positive bins at doubled spacing
                assert_eq!(
                    line_count(&outcome.estimate_dir.join(files::Z_FRF)),
                    251
                );
            }
            MethodSpec::Etfe(_) => {
                // asymmetric dataset grid: symmetry warning expected
                assert!(outcome.warnings.iter().any(|w| w.contains("symmetric")));
            }
            MethodSpec::Arx(_) => {}
        }
    }
}

#[test]
fn perfect_estimate_scores_perfectly() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config();
    run_simulate(&cfg, dir.path(), dir.path()).unwrap();
    // inject the truth as an estimate
    let truth_path = dir.path().join(files::TRUTH_FRF);
    let est_path = dir.path().join("estimates/perfect/z_frf.csv");
    io::write_file(&est_path, &std::fs::read_to_string(&truth_path).unwrap()).unwrap();
    let method = MethodSpec::Etfe(EtfeMethod {});
    let entries =
        evaluate_frf_file(&est_path, &truth_path, &cfg.bands, &method).unwrap();
    assert_eq!(entries.len(), 1);
    let e = &entries[0];
    assert_eq!(e.fit_pct.dd, 100.0);
    assert_eq!(e.fit_pct.dq, 100.0);
    assert_eq!(e.fit_pct.qd, 100.0);
    assert_eq!(e.fit_pct.qq, 100.0);
    assert_eq!(e.rel_hinf, 0.0);
}

#[test]
fn evaluate_rejects_mismatched_grids() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config();
    run_simulate(&cfg, dir.path(), dir.path()).unwrap();
    let truth_path = dir.path().join(files::TRUTH_FRF);
    // an estimate on a grid the truth does not carry (2.5 Hz spacing)
    let est_path = dir.path().join("estimates/alien/z_frf.csv");
    let header = "k,f_hz,z_dd_re,z_dd_im,z_dq_re,z_dq_im,z_qd_re,z_qd_im,z_qq_re,z_qq_im";
    let mut text = String::from(header);
    text.push('\n');
    for k in 0..40 {
        text.push_str(&format!(
            "{k},{},1,0,0,0,0,0,1,0\n",
            2.5 * k as f64
        ));
    }
    io::write_file(&est_path, &text).unwrap();
    let err = evaluate_frf_file(
        &est_path,
        &truth_path,
        &cfg.bands,
        &MethodSpec::Etfe(EtfeMethod {}),
    )
    .unwrap_err();
    assert!(matches!(err, Error::Incompatible(_)), "{err}");
}

#[test]
fn identify_without_dataset_is_missing_input() {
    let dir = tempfile::tempdir().unwrap();
    let err = run_identify(
        dir.path(),
        &MethodSpec::Etfe(EtfeMethod {}),
    )
    .unwrap_err();
    assert!(matches!(err, Error::MissingInput(_)), "{err}");
}

#[test]
fn grid_path_reference_resolves() {
    let dir = tempfile::tempdir().unwrap();
    let grid_json = serde_json::to_string(&lightly_damped_grid_config()).unwrap();
    io::write_file(&dir.path().join("net.json"), &grid_json).unwrap();
    let mut cfg = small_config();
    cfg.grid = GridRef::Path("net.json".into());
    let resolved = cfg.resolve_grid(dir.path()).unwrap();
    assert_eq!(resolved, lightly_damped_grid_config());
    let missing = ExperimentConfig {
        grid: GridRef::Path("absent.json".into()),
        ..small_config()
    };
    assert!(matches!(
        missing.resolve_grid(dir.path()).unwrap_err(),
        Error::MissingInput(_)
    ));
}
