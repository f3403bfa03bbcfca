//! Cross-method consistency on synthetic records: where two estimators are
//! both unbiased they must agree, and where one is exact it must match the
//! truth oracle.

use num_complex::Complex64;

use gridscan::baselines::{etfe, sequential_perturbation_estimate};
use gridscan::grid::{
    build_ladder_grid, complex_pair_on_grid, default_symmetric_grid_config, frf_on_grid,
    periodic_steady_state, simulate_bandlimited,
};
use gridscan::lpm::{estimate_frf, LpmConfig};
use gridscan::signal::{generate_rbs, pack_complex, DqTimeSeries, ExcitationSpec, RealTimeSeries};
use gridscan::spectrum::{dft, WindowKind};

const TS: f64 = 1e-4;

fn rbs_pair(n: usize, seed_d: u64, seed_q: u64) -> (RealTimeSeries, RealTimeSeries) {
    let spec = ExcitationSpec::new(0.05, n, seed_d, seed_q);
    (
        generate_rbs(&spec.channel(seed_d), TS).unwrap(),
        generate_rbs(&spec.channel(seed_q), TS).unwrap(),
    )
}

/// Periodic steady-state record on a symmetric grid with measurement
/// noise: the per-bin ratio estimate and the local-parametric estimate
/// agree within ten times the per-bin noise floor at every excited bin.
#[test]
fn etfe_matches_lpm_on_periodic_symmetric_data() {
    use gridscan::grid::{add_measurement_noise, NoiseSpec, NoiseTarget};
    use gridscan::signal::remove_mean;

    let model = build_ladder_grid(&default_symmetric_grid_config()).unwrap();
    let n = 2000;
    let (d, q) = rbs_pair(n, 21, 22);
    let current = pack_complex(&d, &q).unwrap();
    let x0 = periodic_steady_state(&model, &current);
    let v = simulate_bandlimited(&model, &current, x0.as_slice()).unwrap();
    let noise = NoiseSpec {
        accuracy_class: 0.005,
        reference_magnitude_v: 1.0,
        reference_magnitude_i: 1.0,
        seed: 23,
    };
    let v = remove_mean(&add_measurement_noise(&v, &noise, NoiseTarget::Voltage).unwrap());
    let i = remove_mean(&add_measurement_noise(&current, &noise, NoiseTarget::Current).unwrap());

    let v_spec = dft(&v);
    let i_spec = dft(&i);
    let ratio = etfe(&v_spec, &i_spec).unwrap();

    // R = 4: windows near DC span the mirrored low-frequency resonance
    // pair, i.e. two pole pairs
    let mut cfg = LpmConfig::new(4);
    cfg.assume_symmetric = true;
    cfg.assume_periodic = true;
    let lpm = estimate_frf(&v_spec, &i_spec, &cfg).unwrap();

    // complex per-bin noise level under the 1/sqrt(N) convention
    let sigma_bin = 0.005 * 2.0f64.sqrt();
    let (gp_truth, _) = complex_pair_on_grid(&model, n, TS);
    for k in 1..n {
        let wrap_dist = (k as i64 - (n / 2) as i64).unsigned_abs() as usize;
        if wrap_dist <= cfg.half_window_l || !ratio.valid[k] {
            continue;
        }
        let i_mag = i_spec.values()[k].norm();
        let floor = sigma_bin * (1.0 + gp_truth[k].norm()) / i_mag;
        assert!(
            (ratio.values[k] - lpm.gplus[k]).norm() <= 10.0 * floor,
            "bin {k}: etfe {} vs lpm {} (floor {floor:.2e})",
            ratio.values[k],
            lpm.gplus[k]
        );
    }
}

/// Two genuinely independent periodic noise-free experiments (d-only and
/// q-only excitation), rectangular window: the per-bin 2x2 solve recovers
/// the exact impedance at every excited bin.
#[test]
fn seqpert_exact_on_independent_periodic_experiments() {
    let model = build_ladder_grid(&default_symmetric_grid_config()).unwrap();
    let n = 2000;
    let (d, _) = rbs_pair(n, 31, 32);
    let (_, q) = rbs_pair(n, 33, 34);
    let zeros = RealTimeSeries::new(vec![0.0; n], TS, "z").unwrap();

    let run = |cur: DqTimeSeries| -> (DqTimeSeries, DqTimeSeries) {
        let x0 = periodic_steady_state(&model, &cur);
        let v = simulate_bandlimited(&model, &cur, x0.as_slice()).unwrap();
        (v, cur)
    };
    let (v1, i1) = run(pack_complex(&d, &zeros).unwrap());
    let (v2, i2) = run(pack_complex(&zeros, &q).unwrap());

    let est = sequential_perturbation_estimate(
        (&v1, &i1),
        (&v2, &i2),
        WindowKind::Rectangular,
    )
    .unwrap();
    let truth = frf_on_grid(&model, n, TS);
    for k in 0..n / 2 {
        assert!(est.valid[k], "bin {k} flagged singular");
        let scale: f64 = truth[k].iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
        for (got, want) in [
            (est.frf.z_dd[k], truth[k][(0, 0)]),
            (est.frf.z_dq[k], truth[k][(0, 1)]),
            (est.frf.z_qd[k], truth[k][(1, 0)]),
            (est.frf.z_qq[k], truth[k][(1, 1)]),
        ] {
            assert!(
                (got - want).norm() <= 1e-6 * scale,
                "bin {k}: {got} vs {want}"
            );
        }
    }
}

/// On symmetric truth, running the full model and the reduced symmetric
/// model gives the same G+ up to the numerical floor, and the reduced model
/// zero-fills G-.
#[test]
fn symmetric_flag_consistent_with_full_model() {
    let model = build_ladder_grid(&default_symmetric_grid_config()).unwrap();
    let n = 2000;
    let (d, q) = rbs_pair(n, 41, 42);
    let current = pack_complex(&d, &q).unwrap();
    let x0 = periodic_steady_state(&model, &current);
    let v = simulate_bandlimited(&model, &current, x0.as_slice()).unwrap();
    let v_spec = dft(&v);
    let i_spec = dft(&current);

    let full = estimate_frf(&v_spec, &i_spec, &LpmConfig::new(4)).unwrap();
    let mut reduced_cfg = LpmConfig::new(4);
    reduced_cfg.assume_symmetric = true;
    let reduced = estimate_frf(&v_spec, &i_spec, &reduced_cfg).unwrap();

    assert!(reduced.gminus.iter().all(|g| g.norm() == 0.0));
    let (gp_truth, _) = complex_pair_on_grid(&model, n, TS);
    let scale = gp_truth.iter().map(|g| g.norm()).fold(0.0, f64::max);
    for k in 0..n {
        let wrap_dist = (k as i64 - (n / 2) as i64).unsigned_abs() as usize;
        if wrap_dist <= reduced_cfg.half_window_l {
            continue;
        }
        assert!(
            (full.gplus[k] - reduced.gplus[k]).norm() <= 1e-6 * scale,
            "bin {k}"
        );
        assert!(full.gminus[k].norm() <= 1e-6 * scale, "bin {k}");
    }
}
